#include "isomlab/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace isomlab::jsonio {

namespace {

void dump_value(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isinf(x)) {
        out += x > 0 ? "\"inf\"" : "\"-inf\"";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", x);
      out += buf;
      break;
    }
    case json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_value(item, out);
      }
      out += ']';
      break;
    }
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      out += j.dump();
  }
}

double number_field(const json& j, const std::string& field) {
  if (!j.is_number() && !(j.is_string() && (j.get<std::string>() == "inf" ||
                                            j.get<std::string>() == "-inf")))
    throw SchemaError(field, "expected a number");
  if (j.is_string())
    return j.get<std::string>() == "inf"
               ? std::numeric_limits<double>::infinity()
               : -std::numeric_limits<double>::infinity();
  return j.get<double>();
}

int int_field(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw SchemaError(field, "expected an integer");
  return j.get<int>();
}

const json& member(const json& j, const std::string& key,
                   const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "." + key, "missing");
  return *it;
}

const json& array_member(const json& j, const std::string& key,
                         const std::string& path) {
  const json& a = member(j, key, path);
  if (!a.is_array()) throw SchemaError(path + "." + key, "expected an array");
  return a;
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_value(j, out);
  out += '\n';
  return out;
}

json complex_to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError(field, "expected [re, im]");
  return {number_field(j[0], field + "[0]"), number_field(j[1], field + "[1]")};
}

json expvector_to_json(const expspan::ExpVector& v) {
  json terms = json::array();
  for (const auto& t : v.terms) {
    json decay = json::array();
    for (const cdouble& z : t.decay) decay.push_back(complex_to_json(z));
    terms.push_back({{"coeff", complex_to_json(t.coeff)},
                     {"shift", t.shift},
                     {"decay", decay}});
  }
  return {{"dim", v.dim}, {"terms", terms}};
}

expspan::ExpVector expvector_from_json(const json& j) {
  const int dim = int_field(member(j, "dim", "expvector"), "expvector.dim");
  if (dim < 1) throw SchemaError("expvector.dim", "must be positive");
  expspan::ExpVector v = expspan::zero_vector(dim);
  for (const json& t : array_member(j, "terms", "expvector")) {
    expspan::ElementaryTerm term;
    term.coeff = complex_from_json(member(t, "coeff", "term"), "term.coeff");
    for (const json& s : array_member(t, "shift", "term"))
      term.shift.push_back(number_field(s, "term.shift"));
    for (const json& z : array_member(t, "decay", "term"))
      term.decay.push_back(complex_from_json(z, "term.decay"));
    if (static_cast<int>(term.shift.size()) != dim ||
        static_cast<int>(term.decay.size()) != dim)
      throw SchemaError("term", "shift/decay length must equal dim");
    if (!is_nonneg(term.shift))
      throw SchemaError("term.shift", "must be nonnegative");
    for (const cdouble& z : term.decay)
      if (!(z.real() > 0.0))
        throw SchemaError("term.decay", "Re(z) must be positive");
    v.terms.push_back(std::move(term));
  }
  expspan::canonicalize(v);
  return v;
}

json sparsevector_to_json(const discrete::SparseVector& v) {
  json entries = json::array();
  for (const auto& [n, c] : v.entries)
    entries.push_back({{"index", n}, {"coeff", complex_to_json(c)}});
  return {{"dim", v.dim}, {"entries", entries}};
}

discrete::SparseVector sparsevector_from_json(const json& j) {
  const int dim = int_field(member(j, "dim", "sparsevector"), "sparsevector.dim");
  if (dim < 1) throw SchemaError("sparsevector.dim", "must be positive");
  discrete::SparseVector v = discrete::zero_vector(dim);
  for (const json& e : array_member(j, "entries", "sparsevector")) {
    MultiIndex n;
    for (const json& k : array_member(e, "index", "entry")) {
      const int idx = int_field(k, "entry.index");
      if (idx < 0) throw SchemaError("entry.index", "must be nonnegative");
      n.push_back(idx);
    }
    if (static_cast<int>(n.size()) != dim)
      throw SchemaError("entry.index", "length must equal dim");
    v.entries[n] += complex_from_json(member(e, "coeff", "entry"), "entry.coeff");
  }
  discrete::drop_zeros(v);
  return v;
}

json fellpoint_to_json(const fell::FellPoint& p) {
  json a = json::array();
  for (int k : p.A) a.push_back(k + 1);
  json lambda = json::object();
  for (const auto& [j, x] : p.lambda) lambda[std::to_string(j + 1)] = x;
  return {{"d", p.d}, {"A", a}, {"lambda", lambda}};
}

fell::FellPoint fellpoint_from_json(const json& j) {
  const int d = int_field(member(j, "d", "fellpoint"), "fellpoint.d");
  if (d < 1) throw SchemaError("fellpoint.d", "must be positive");
  std::set<int> a;
  for (const json& k : array_member(j, "A", "fellpoint")) {
    const int dir = int_field(k, "fellpoint.A");
    if (dir < 1 || dir > d) throw SchemaError("fellpoint.A", "out of range");
    a.insert(dir - 1);
  }
  std::map<int, double> lambda;
  const json& lam = member(j, "lambda", "fellpoint");
  if (!lam.is_object()) throw SchemaError("fellpoint.lambda", "expected object");
  for (auto it = lam.begin(); it != lam.end(); ++it) {
    int dir = 0;
    try {
      dir = std::stoi(it.key());
    } catch (...) {
      throw SchemaError("fellpoint.lambda", "keys must be directions");
    }
    if (dir < 1 || dir > d)
      throw SchemaError("fellpoint.lambda", "direction out of range");
    lambda[dir - 1] = number_field(it.value(), "fellpoint.lambda." + it.key());
  }
  try {
    return fell::FellPoint(d, std::move(a), std::move(lambda));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("fellpoint", e.what());
  }
}

json boundary_to_json(const gauss::BoundarySequence& a) {
  json gen;
  if (std::holds_alternative<gauss::LemmaGenerator>(a.generator())) {
    gen = {{"kind", "lemma"},
           {"t", std::get<gauss::LemmaGenerator>(a.generator()).t}};
  } else if (std::holds_alternative<gauss::ShiftedLemmaGenerator>(
                 a.generator())) {
    const auto& g = std::get<gauss::ShiftedLemmaGenerator>(a.generator());
    gen = {{"kind", "lemma_shifted"},
           {"t", g.t},
           {"shift", g.shift == gauss::ShiftKind::InvN ? "inv_n" : "inv_sqrt_n"},
           {"amplitude", g.amplitude}};
  } else {
    gen = nullptr;
  }
  return {{"prefix", a.prefix()}, {"generator", gen}};
}

gauss::BoundarySequence boundary_from_json(const json& j) {
  std::vector<double> prefix;
  for (const json& x : array_member(j, "prefix", "boundary"))
    prefix.push_back(number_field(x, "boundary.prefix"));
  gauss::TailGenerator gen;
  const json& g = member(j, "generator", "boundary");
  if (!g.is_null()) {
    const json& kind = member(g, "kind", "boundary.generator");
    if (kind == "lemma") {
      gen = gauss::LemmaGenerator{
          number_field(member(g, "t", "boundary.generator"), "generator.t")};
    } else if (kind == "lemma_shifted") {
      gauss::ShiftedLemmaGenerator s;
      s.t = number_field(member(g, "t", "boundary.generator"), "generator.t");
      const json& shift = member(g, "shift", "boundary.generator");
      if (shift == "inv_n")
        s.shift = gauss::ShiftKind::InvN;
      else if (shift == "inv_sqrt_n")
        s.shift = gauss::ShiftKind::InvSqrtN;
      else
        throw SchemaError("generator.shift", "expected inv_n or inv_sqrt_n");
      s.amplitude = number_field(member(g, "amplitude", "boundary.generator"),
                                 "generator.amplitude");
      gen = s;
    } else {
      throw SchemaError("generator.kind", "unknown generator kind");
    }
  }
  try {
    return gauss::BoundarySequence(std::move(prefix), std::move(gen));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("boundary", e.what());
  }
}

json gaussvector_to_json(const gauss::GaussVector& v) {
  json terms = json::array();
  for (const auto& t : v) {
    json factors = json::array();
    for (const auto& [k, f] : t.factors)
      factors.push_back({{"k", k},
                         {"alpha", complex_to_json(f.alpha())},
                         {"floor", f.floor()}});
    terms.push_back({{"coeff", complex_to_json(t.coeff)}, {"factors", factors}});
  }
  return {{"terms", terms}};
}

gauss::GaussVector gaussvector_from_json(const json& j) {
  gauss::GaussVector v;
  for (const json& t : array_member(j, "terms", "gaussvector")) {
    gauss::GaussianCylinderVector term;
    term.coeff = complex_from_json(member(t, "coeff", "term"), "term.coeff");
    for (const json& f : array_member(t, "factors", "term")) {
      const int k = int_field(member(f, "k", "factor"), "factor.k");
      if (k < 1) throw SchemaError("factor.k", "coordinates are 1-based");
      gauss::CylinderFactor cf;
      cf.alpha0 = complex_from_json(member(f, "alpha", "factor"), "factor.alpha");
      cf.floor0 = number_field(member(f, "floor", "factor"), "factor.floor");
      term.factors[k] = cf;
    }
    v.push_back(std::move(term));
  }
  return v;
}

json periodic_to_json(const cooper::PeriodicSemigroup& T) {
  // Only the diagonal form is emitted; conjugated instances are built in code.
  json spectra = json::array();
  (void)T;
  return {{"spectra", spectra}};
}

cooper::PeriodicSemigroup periodic_from_json(const json& j) {
  std::vector<std::vector<int>> spectra;
  for (const json& row : array_member(j, "spectra", "periodic")) {
    if (!row.is_array()) throw SchemaError("periodic.spectra", "ragged rows");
    std::vector<int> r;
    for (const json& n : row) r.push_back(int_field(n, "periodic.spectra"));
    spectra.push_back(std::move(r));
  }
  if (spectra.empty()) throw SchemaError("periodic.spectra", "must be nonempty");
  if (j.contains("basis") && !j["basis"].is_null()) {
    const json& basis = j["basis"];
    const int m = static_cast<int>(spectra.size());
    if (!basis.is_array() || static_cast<int>(basis.size()) != m)
      throw SchemaError("periodic.basis", "expected an m x m matrix");
    Eigen::MatrixXcd q(m, m);
    for (int r = 0; r < m; ++r) {
      if (!basis[r].is_array() || static_cast<int>(basis[r].size()) != m)
        throw SchemaError("periodic.basis", "expected an m x m matrix");
      for (int c = 0; c < m; ++c)
        q(r, c) = complex_from_json(basis[r][c], "periodic.basis");
    }
    try {
      return cooper::PeriodicSemigroup(q, std::move(spectra));
    } catch (const std::invalid_argument& e) {
      throw SchemaError("periodic.basis", e.what());
    }
  }
  return cooper::PeriodicSemigroup::diagonal(std::move(spectra));
}

AnyRep rep_from_json(const json& j) {
  const json& kind = member(j, "kind", "rep");
  if (kind == "expspan_shift") {
    const int d = int_field(member(j, "dim", "rep"), "rep.dim");
    if (d < 1) throw SchemaError("rep.dim", "must be positive");
    return ShiftRep(d);
  }
  if (kind == "discrete") {
    const int d = int_field(member(j, "dim", "rep"), "rep.dim");
    if (d < 1) throw SchemaError("rep.dim", "must be positive");
    std::vector<discrete::GeneratorRule> gens;
    for (const json& g : array_member(j, "generators", "rep")) {
      const json& gk = member(g, "kind", "rep.generators");
      if (gk == "shift")
        gens.push_back(discrete::GeneratorRule::shift());
      else if (gk == "phase")
        gens.push_back(discrete::GeneratorRule::phase(
            number_field(member(g, "theta", "rep.generators"), "generator.theta")));
      else
        throw SchemaError("rep.generators.kind", "expected shift or phase");
    }
    if (static_cast<int>(gens.size()) != d)
      throw SchemaError("rep.generators", "need one generator per direction");
    return DiscreteRep(discrete::BasisIsometry(d, std::move(gens)));
  }
  if (kind == "model")
    return fell::ModelRep(fellpoint_from_json(member(j, "fell", "rep")));
  if (kind == "gauss") {
    const int arity = int_field(member(j, "arity", "rep"), "rep.arity");
    if (arity < 1) throw SchemaError("rep.arity", "must be positive");
    return gauss::GaussRep(boundary_from_json(member(j, "sequence", "rep")),
                           arity);
  }
  throw SchemaError("rep.kind", "unknown representation kind");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SchemaError(path, std::string("malformed JSON: ") + e.what());
  }
  return j;
}

}  // namespace isomlab::jsonio
