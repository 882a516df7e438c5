#include "isomlab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "isomlab/jsonio.hpp"

namespace isomlab::cli {

namespace {

using jsonio::AnyRep;
using jsonio::json;
using jsonio::SchemaError;

constexpr std::uint64_t kDefaultSeed = 0x150317ab;

std::string opt(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.options.find(name);
  if (it == cfg.options.end()) throw SchemaError("--" + name, "missing");
  return it->second;
}

std::string opt_or(const RunConfig& cfg, const std::string& name,
                   const std::string& fallback) {
  auto it = cfg.options.find(name);
  return it == cfg.options.end() ? fallback : it->second;
}

double num_opt(const RunConfig& cfg, const std::string& name,
               const std::string& fallback = "") {
  const std::string raw =
      fallback.empty() ? opt(cfg, name) : opt_or(cfg, name, fallback);
  try {
    size_t pos = 0;
    const double x = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (...) {
    throw SchemaError("--" + name, "expected a number, got '" + raw + "'");
  }
}

int int_opt(const RunConfig& cfg, const std::string& name,
            const std::string& fallback = "") {
  const double x = num_opt(cfg, name, fallback);
  if (x != std::floor(x)) throw SchemaError("--" + name, "expected an integer");
  return static_cast<int>(x);
}

std::uint64_t seed_opt(const RunConfig& cfg) {
  return static_cast<std::uint64_t>(
      num_opt(cfg, "seed", std::to_string(kDefaultSeed)));
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json vec_to_json(const expspan::ExpVector& v) {
  return jsonio::expvector_to_json(v);
}
json vec_to_json(const discrete::SparseVector& v) {
  return jsonio::sparsevector_to_json(v);
}
json vec_to_json(const gauss::GaussVector& v) {
  return jsonio::gaussvector_to_json(v);
}

template <typename R>
typename R::Vector vec_from_json_for(const R&, const json& j) {
  if constexpr (std::is_same_v<typename R::Vector, expspan::ExpVector>)
    return jsonio::expvector_from_json(j);
  else if constexpr (std::is_same_v<typename R::Vector, discrete::SparseVector>)
    return jsonio::sparsevector_from_json(j);
  else
    return jsonio::gaussvector_from_json(j);
}

template <typename R>
std::vector<double> random_parameter(const R&, int dim, std::mt19937_64& rng) {
  std::vector<double> t(dim);
  if constexpr (std::is_same_v<R, DiscreteRep>) {
    std::uniform_int_distribution<int> lattice(0, 4);
    for (double& x : t) x = lattice(rng);
  } else {
    std::uniform_real_distribution<double> unif(0.0, 2.5);
    for (double& x : t) x = unif(rng);
  }
  return t;
}

struct Rendered {
  json doc;
  int exit_code = 0;
  std::string csv;  // optional tabular rendering
};

json certificate_with_exit(const Certificate& cert, int* exit_code) {
  if (!cert.passed()) *exit_code = 1;
  return certificate_to_json(cert);
}

std::string default_certificate_csv(const json& cert) {
  std::string out = "kind,claimed_bound,achieved,status\n";
  out += cert["kind"].get<std::string>() + "," +
         fmt17(cert["claimed_bound"].get<double>()) + "," +
         fmt17(cert["achieved"].get<double>()) + "," +
         cert["status"].get<std::string>() + "\n";
  return out;
}

Rendered run_gram(const RunConfig& cfg) {
  std::vector<expspan::ExpVector> vectors;
  std::stringstream paths(opt(cfg, "vectors"));
  std::string path;
  while (std::getline(paths, path, ';'))
    if (!path.empty())
      vectors.push_back(jsonio::expvector_from_json(jsonio::load_json_file(path)));
  if (vectors.empty()) throw SchemaError("--vectors", "no vectors given");

  const Eigen::MatrixXcd g = expspan::gram(vectors);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const double min_eig = es.eigenvalues().minCoeff();
  const double max_eig = es.eigenvalues().maxCoeff();

  Rendered out;
  Certificate cert;
  cert.kind = "gram_psd";
  cert.claimed_bound = cfg.tol * std::max(max_eig, 1e-300);
  cert.achieved = std::max(0.0, -min_eig);
  cert.status = cert.achieved <= cert.claimed_bound ? CertStatus::Pass
                                                    : CertStatus::Fail;
  json matrix = json::array();
  for (int r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < g.cols(); ++c)
      row.push_back(jsonio::complex_to_json(g(r, c)));
    matrix.push_back(row);
  }
  json eigs = json::array();
  for (int r = 0; r < g.rows(); ++r) eigs.push_back(es.eigenvalues()(r));
  out.doc = {{"gram", matrix},
             {"eigenvalues", eigs},
             {"certificate", certificate_with_exit(cert, &out.exit_code)}};
  std::string csv = "j,k,re,im\n";
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      csv += std::to_string(r) + "," + std::to_string(c) + "," +
             fmt17(g(r, c).real()) + "," + fmt17(g(r, c).imag()) + "\n";
  out.csv = csv;
  return out;
}

Rendered run_cooper_verify(const RunConfig& cfg) {
  AnyRep rep = jsonio::rep_from_json(jsonio::load_json_file(opt(cfg, "rep")));
  const json xi_json = jsonio::load_json_file(opt(cfg, "xi"));
  json z_json;
  try {
    z_json = json::parse(opt(cfg, "z"));
  } catch (...) {
    throw SchemaError("--z", "expected inline JSON like [[1,0],[2,0]]");
  }

  return std::visit(
      [&](const auto& r) -> Rendered {
        std::vector<cdouble> z;
        for (const json& zi : z_json)
          z.push_back(jsonio::complex_from_json(zi, "--z"));
        if (static_cast<int>(z.size()) != r.dim())
          throw SchemaError("--z", "length must equal the representation dim");
        const auto xi = vec_from_json_for(r, xi_json);

        std::mt19937_64 rng(seed_opt(cfg));
        const int count = int_opt(cfg, "count", "25");
        std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
        for (int k = 0; k < count; ++k)
          pairs.emplace_back(random_parameter(r, r.dim(), rng),
                             random_parameter(r, r.dim(), rng));

        cooper::CooperOptions opts;
        opts.eigen_tol = num_opt(cfg, "eigen-tol", "1e-8");
        opts.claimed_bound = num_opt(cfg, "claim", "1e-12");
        const Certificate cert = cooper::verify_cooper_gram(r, xi, z, pairs, opts);
        Rendered out;
        out.doc = certificate_with_exit(cert, &out.exit_code);
        out.csv = default_certificate_csv(out.doc);
        return out;
      },
      rep);
}

Rendered run_wold(const RunConfig& cfg) {
  AnyRep rep = jsonio::rep_from_json(jsonio::load_json_file(opt(cfg, "rep")));
  const json vec_json_in = jsonio::load_json_file(opt(cfg, "vector"));
  return std::visit(
      [&](const auto& r) -> Rendered {
        const auto v = vec_from_json_for(r, vec_json_in);
        wold::WoldParams params;
        params.tol = cfg.tol;
        params.horizon = num_opt(cfg, "horizon", "1e6");
        const auto result = wold::wold_decompose(r, v, params);

        Rendered out;
        json comps = json::array();
        for (size_t mask = 0; mask < result.components.size(); ++mask) {
          json alpha = json::array();
          for (int i = 0; i < result.dim; ++i)
            if (mask & (1ull << i)) alpha.push_back(i + 1);
          comps.push_back(
              {{"alpha", alpha},
               {"norm", rep_norm(r, result.components[mask])},
               {"vector", vec_to_json(result.components[mask])}});
        }
        json dir_status = json::array();
        for (const auto s : result.direction_status)
          dir_status.push_back(wold::to_string(s));
        out.doc = {{"dim", result.dim},
                   {"components", comps},
                   {"direction_status", dir_status},
                   {"recompose_error", result.recompose_error},
                   {"max_pair_overlap", result.max_pair_overlap},
                   {"max_class_defect", result.max_class_defect},
                   {"status", result.converged ? "CONVERGED" : "NONCONVERGED"}};
        const bool ok = result.converged &&
                        result.recompose_error <= cfg.tol &&
                        result.max_pair_overlap <= cfg.tol;
        if (!ok) out.exit_code = 1;
        return out;
      },
      rep);
}

Rendered run_wold_reconstruct(const RunConfig& cfg) {
  AnyRep rep = jsonio::rep_from_json(jsonio::load_json_file(opt(cfg, "rep")));
  auto* drep = std::get_if<DiscreteRep>(&rep);
  if (!drep)
    throw SchemaError("--rep", "wold-reconstruct needs a discrete representation");
  const auto v =
      jsonio::sparsevector_from_json(jsonio::load_json_file(opt(cfg, "vector")));
  const int box = int_opt(cfg, "box", "8");
  const Certificate cert =
      wold::wandering_reconstruct(drep->V, v, box, cfg.tol);
  Rendered out;
  out.doc = certificate_with_exit(cert, &out.exit_code);
  out.csv = default_certificate_csv(out.doc);
  return out;
}

Rendered run_periodic_modes(const RunConfig& cfg) {
  const cooper::PeriodicSemigroup T =
      jsonio::periodic_from_json(jsonio::load_json_file(opt(cfg, "semigroup")));
  auto parse_ints = [&](const std::string& name) {
    std::vector<int> out;
    std::stringstream ss(opt(cfg, name));
    std::string item;
    while (std::getline(ss, item, ','))
      try {
        out.push_back(std::stoi(item));
      } catch (...) {
        throw SchemaError("--" + name, "expected comma-separated integers");
      }
    if (static_cast<int>(out.size()) != T.params())
      throw SchemaError("--" + name, "length must equal the parameter count");
    return out;
  };
  const std::vector<int> lo = parse_ints("lo"), hi = parse_ints("hi");
  int max_abs = 0;
  for (size_t i = 0; i < lo.size(); ++i)
    max_abs = std::max({max_abs, std::abs(lo[i]), std::abs(hi[i])});
  const int quad = int_opt(cfg, "quad",
                           std::to_string(cooper::suggested_quad_points(max_abs)));

  Rendered out;
  cooper::PeriodicModes modes;
  try {
    modes = cooper::periodic_eigenmodes(T, lo, hi, quad);
  } catch (const std::runtime_error& e) {
    out.doc = {{"error", e.what()}};
    out.exit_code = 1;
    return out;
  }
  json projections = json::array();
  for (const auto& [n, p] : modes.projections) {
    json matrix = json::array();
    for (int r = 0; r < p.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < p.cols(); ++c)
        row.push_back(jsonio::complex_to_json(p(r, c)));
      matrix.push_back(row);
    }
    json freq = json::array();
    for (int x : n) freq.push_back(x);
    projections.push_back({{"n", freq}, {"matrix", matrix}});
  }
  const double tol = std::max(cfg.tol, 1e-9);
  const bool ok = modes.max_eigen_defect <= tol;
  out.doc = {{"total_rank", modes.total_rank},
             {"max_eigen_defect", modes.max_eigen_defect},
             {"max_cross_product", modes.max_cross_product},
             {"quad_points", quad},
             {"projections", projections},
             {"status", ok ? "PASS" : "FAIL"}};
  if (!ok) out.exit_code = 1;
  return out;
}

Rendered run_fell_separate(const RunConfig& cfg) {
  const fell::FellPoint p =
      jsonio::fellpoint_from_json(jsonio::load_json_file(opt(cfg, "p")));
  const fell::FellPoint q =
      jsonio::fellpoint_from_json(jsonio::load_json_file(opt(cfg, "q")));
  std::optional<expspan::ExpVector> xi;
  if (cfg.options.count("xi"))
    xi = jsonio::expvector_from_json(jsonio::load_json_file(opt(cfg, "xi")));

  const auto witness = fell::separation_witness(p, q, xi);
  Rendered out;
  if (!witness) {
    out.doc = {{"separated", false}, {"reason", "points are equal"}};
    return out;
  }
  const bool sound = witness->kind == fell::Witness::Kind::PureDecay
                         ? witness->achieved < witness->claimed_bound
                         : witness->achieved >= witness->claimed_bound;
  out.doc = {{"separated", true},
             {"kind", witness->kind == fell::Witness::Kind::PureDecay
                          ? "pure_decay"
                          : "phase_gap"},
             {"side", witness->side},
             {"direction", witness->direction + 1},
             {"t", witness->t},
             {"claimed_bound", witness->claimed_bound},
             {"achieved", witness->achieved},
             {"status", sound ? "PASS" : "FAIL"}};
  if (!sound) out.exit_code = 1;
  return out;
}

Rendered run_fell_closure(const RunConfig& cfg) {
  const fell::FellPoint p =
      jsonio::fellpoint_from_json(jsonio::load_json_file(opt(cfg, "p")));
  const fell::FellPoint q =
      jsonio::fellpoint_from_json(jsonio::load_json_file(opt(cfg, "q")));
  Rendered out;
  // The closure relation is asserted (not proved) in the source material;
  // certificates carry that caveat.
  out.doc = {{"member", fell::closure_member(p, q)},
             {"paper_asserted", true}};
  return out;
}

Rendered run_fell_density(const RunConfig& cfg) {
  const double lambda = num_opt(cfg, "lambda");
  const double eps = num_opt(cfg, "eps");
  const double a = num_opt(cfg, "a");
  const int grid = int_opt(cfg, "grid", "1000");
  const auto cert = fell::density_certificate(lambda, eps, a, grid);
  Rendered out;
  out.doc = {{"lambda", cert.lambda},
             {"epsilon", cert.epsilon},
             {"a", cert.a},
             {"delta", cert.delta},
             {"g", jsonio::expvector_to_json(cert.g)},
             {"max_deviation", cert.max_deviation},
             {"max_formula_error", cert.max_formula_error},
             {"status", to_string(cert.status)}};
  if (cert.status != CertStatus::Pass) out.exit_code = 1;
  return out;
}

Rendered run_xmember(const RunConfig& cfg) {
  const auto seq =
      jsonio::boundary_from_json(jsonio::load_json_file(opt(cfg, "seq")));
  const double tol = num_opt(cfg, "tol", fmt17(cfg.tol));
  const int depth = int_opt(cfg, "depth", "48");
  const Certificate cert = gauss::x_membership(seq, tol, depth);
  Rendered out;
  out.doc = certificate_with_exit(cert, &out.exit_code);
  out.csv = default_certificate_csv(out.doc);
  return out;
}

Rendered run_kakutani(const RunConfig& cfg) {
  const auto a = jsonio::boundary_from_json(jsonio::load_json_file(opt(cfg, "a")));
  const auto b = jsonio::boundary_from_json(jsonio::load_json_file(opt(cfg, "b")));
  const int n_max = int_opt(cfg, "nmax", "50");
  const double tol = num_opt(cfg, "threshold", "1e-6");
  const auto rep = gauss::kakutani_certify(a, b, n_max, tol);

  Rendered out;
  out.doc = {{"verdict", gauss::to_string(rep.verdict)},
             {"i_estimate", rep.i_estimate},
             {"i_lower", rep.i_lower},
             {"i_upper", rep.i_upper},
             {"threshold", rep.threshold},
             {"crossing_n", rep.crossing_n},
             {"mu_a", rep.mu_a},
             {"mu_b", rep.mu_b},
             {"monotone_ok", rep.monotone_ok},
             {"c_prefix", rep.c_prefix},
             {"partial_c2", rep.partial_c2},
             {"partial_products", rep.partial_products}};
  if (!rep.monotone_ok) out.exit_code = 1;
  std::string csv = "n,c,partial_c2,partial_product\n";
  for (size_t n = 0; n < rep.c_prefix.size(); ++n)
    csv += std::to_string(n + 1) + "," + fmt17(rep.c_prefix[n]) + "," +
           fmt17(rep.partial_c2[n]) + "," + fmt17(rep.partial_products[n]) + "\n";
  out.csv = csv;
  return out;
}

gauss::GaussianCylinderVector random_cylinder(const gauss::BoundarySequence& a,
                                              int arity, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  std::uniform_real_distribution<double> lift(0.0, 1.5);
  gauss::GaussianCylinderVector v;
  v.coeff = cdouble(unif(rng) + 1.2, unif(rng));
  for (int k = 1; k <= arity; ++k) {
    gauss::CylinderFactor f;
    f.alpha0 = cdouble(unif(rng), unif(rng));
    f.floor0 = a.at(k) + lift(rng);
    v.factors[k] = f;
  }
  return v;
}

Rendered run_va_check(const RunConfig& cfg) {
  const auto seq =
      jsonio::boundary_from_json(jsonio::load_json_file(opt(cfg, "seq")));
  const int arity = int_opt(cfg, "arity", "2");
  const int count = int_opt(cfg, "count", "20");
  for (int k = 1; k <= arity; ++k)
    if (!std::isfinite(seq.at(k)))
      throw SchemaError("--arity", "sequence unconstrained at coordinate " +
                                       std::to_string(k));
  std::mt19937_64 rng(seed_opt(cfg));
  std::uniform_real_distribution<double> unif(0.0, 2.0);

  double worst = 0.0;
  std::string worst_check = "none";
  for (int trial = 0; trial < count; ++trial) {
    const auto v = random_cylinder(seq, arity, rng);
    const double vnorm = gauss::cyl_norm(v, seq);
    std::vector<double> x(arity);
    for (double& xi : x) xi = unif(rng);

    const double iso_dev =
        std::abs(gauss::cyl_norm(gauss::vA_apply(seq, x, v), seq) - vnorm);
    if (iso_dev > worst) worst = iso_dev, worst_check = "isometry";

    if (arity >= 2) {
      const int i = trial % arity, j = (trial + 1) % arity;
      const auto ti = unit_direction(arity, i, unif(rng));
      const auto sj = unit_direction(arity, j, unif(rng));
      const auto lhs = gauss::vA_apply(seq, ti, gauss::vA_adjoint(seq, sj, v));
      const auto rhs = gauss::vA_adjoint(seq, sj, gauss::vA_apply(seq, ti, v));
      gauss::GaussVector diff{lhs};
      diff = gauss::gv_add(diff, gauss::gv_scale(-1.0, gauss::GaussVector{rhs}));
      const double comm_dev =
          std::sqrt(std::max(0.0, gauss::gv_inner(diff, diff, seq).real()));
      if (comm_dev > worst) worst = comm_dev, worst_check = "double_commutation";
    }

    // Strong purity: the adjoint flow kills the vector.
    double decay = vnorm;
    for (double T = 1.0; T <= 64.0; T *= 2.0) {
      decay = gauss::cyl_norm(
          gauss::vA_adjoint(seq, unit_direction(arity, trial % arity, T), v),
          seq);
      if (decay <= cfg.tol) break;
    }
    if (decay > worst) worst = decay, worst_check = "purity_decay";
  }

  Certificate cert;
  cert.kind = "va_check";
  cert.claimed_bound = cfg.tol;
  cert.achieved = worst;
  cert.status = worst <= cfg.tol ? CertStatus::Pass : CertStatus::Fail;
  cert.extra["worst_check"] = worst_check;
  cert.extra["count"] = count;
  cert.extra["arity"] = arity;
  Rendered out;
  out.doc = certificate_with_exit(cert, &out.exit_code);
  out.csv = default_certificate_csv(out.doc);
  return out;
}

Rendered run_restrict_equiv(const RunConfig& cfg) {
  const auto a = jsonio::boundary_from_json(jsonio::load_json_file(opt(cfg, "a")));
  const auto b = jsonio::boundary_from_json(jsonio::load_json_file(opt(cfg, "b")));
  const int n = int_opt(cfg, "n", "2");
  const int grid_points = int_opt(cfg, "grid-points", "5");
  const double grid_step = num_opt(cfg, "grid-step", "0.5");
  const int n_vectors = int_opt(cfg, "vectors", "5");

  std::vector<std::vector<double>> grid;
  grid.push_back(std::vector<double>(n, 0.0));
  for (int j = 1; j < grid_points; ++j) {
    auto t = unit_direction(n, (j - 1) % n, j * grid_step);
    grid.push_back(t);
  }
  std::mt19937_64 rng(seed_opt(cfg));
  std::vector<gauss::GaussianCylinderVector> vectors;
  for (int k = 0; k < n_vectors; ++k)
    vectors.push_back(random_cylinder(a, n, rng));

  const Certificate cert =
      gauss::finite_restriction_intertwiner(a, b, n, grid, vectors, cfg.tol);
  Rendered out;
  out.doc = certificate_with_exit(cert, &out.exit_code);
  out.csv = default_certificate_csv(out.doc);
  return out;
}

Rendered run_wold_failure(const RunConfig& cfg) {
  const double nu1 = num_opt(cfg, "nu1", "0.5");
  const double nu0 = num_opt(cfg, "nu0", fmt17(1.0 - nu1));
  const int d = int_opt(cfg, "d");
  const auto masses = gauss::wold_failure_masses(nu0, nu1, d);

  Rendered out;
  out.doc = {{"d", d},
             {"nu", {nu0, nu1}},
             {"max_mass", masses.max_mass},
             {"pieces", masses.masses.size()}};
  if (d <= 10) {
    json table = json::array();
    for (size_t g = 0; g < masses.masses.size(); ++g) {
      std::string bits(d, '0');
      for (int i = 0; i < d; ++i)
        if ((g >> i) & 1) bits[i] = '1';
      table.push_back({{"g", bits}, {"mass", masses.masses[g]}});
    }
    out.doc["masses"] = table;
  }
  if (d <= 16) {
    std::string csv = "g,mass\n";
    for (size_t g = 0; g < masses.masses.size(); ++g) {
      std::string bits(d, '0');
      for (int i = 0; i < d; ++i)
        if ((g >> i) & 1) bits[i] = '1';
      csv += bits + "," + fmt17(masses.masses[g]) + "\n";
    }
    out.csv = csv;
  }
  return out;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult result;
  Rendered rendered;
  try {
    if (cfg.command == "gram")
      rendered = run_gram(cfg);
    else if (cfg.command == "cooper-verify")
      rendered = run_cooper_verify(cfg);
    else if (cfg.command == "wold")
      rendered = run_wold(cfg);
    else if (cfg.command == "wold-reconstruct")
      rendered = run_wold_reconstruct(cfg);
    else if (cfg.command == "periodic-modes")
      rendered = run_periodic_modes(cfg);
    else if (cfg.command == "fell-separate")
      rendered = run_fell_separate(cfg);
    else if (cfg.command == "fell-closure")
      rendered = run_fell_closure(cfg);
    else if (cfg.command == "fell-density")
      rendered = run_fell_density(cfg);
    else if (cfg.command == "xmember")
      rendered = run_xmember(cfg);
    else if (cfg.command == "kakutani")
      rendered = run_kakutani(cfg);
    else if (cfg.command == "va-check")
      rendered = run_va_check(cfg);
    else if (cfg.command == "restrict-equiv")
      rendered = run_restrict_equiv(cfg);
    else if (cfg.command == "wold-failure")
      rendered = run_wold_failure(cfg);
    else
      throw SchemaError("command", "unknown command '" + cfg.command + "'");
  } catch (const SchemaError& e) {
    result.exit_code = 2;
    result.error = e.what();
    return result;
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.error = e.what();
    return result;
  }

  result.exit_code = rendered.exit_code;
  if (cfg.format == "json") {
    result.output = jsonio::dump_json(rendered.doc);
  } else if (cfg.format == "csv") {
    if (rendered.csv.empty()) {
      result.exit_code = 2;
      result.error = "field '--format': csv not supported for this command";
      return result;
    }
    result.output = rendered.csv;
  } else {
    result.exit_code = 2;
    result.error = "field '--format': expected json or csv";
    return result;
  }

  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      result.exit_code = 2;
      result.error = "cannot open output path " + cfg.out_path;
      return result;
    }
    out << result.output;
  }
  return result;
}

}  // namespace isomlab::cli
