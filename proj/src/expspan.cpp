#include "isomlab/expspan.hpp"

#include <algorithm>
#include <cmath>

namespace isomlab::expspan {

namespace {

constexpr double kDropRel = 1e-14;

int compare_term_keys(const ElementaryTerm& a, const ElementaryTerm& b) {
  for (size_t i = 0; i < a.shift.size(); ++i) {
    if (a.shift[i] != b.shift[i]) return a.shift[i] < b.shift[i] ? -1 : 1;
  }
  for (size_t i = 0; i < a.decay.size(); ++i) {
    if (a.decay[i].real() != b.decay[i].real())
      return a.decay[i].real() < b.decay[i].real() ? -1 : 1;
    if (a.decay[i].imag() != b.decay[i].imag())
      return a.decay[i].imag() < b.decay[i].imag() ? -1 : 1;
  }
  return 0;
}

void check_dim(const ExpVector& u, const ExpVector& v) {
  require(u.dim == v.dim, "expspan: dimension mismatch");
}

void check_param(const std::vector<double>& t, int dim, const char* op) {
  require(static_cast<int>(t.size()) == dim,
          std::string(op) + ": dimension mismatch");
  require(is_nonneg(t), std::string(op) + ": negative shift component");
}

}  // namespace

HalfPlanePoint::HalfPlanePoint(std::vector<cdouble> coords) : z(std::move(coords)) {
  for (const cdouble& zi : z)
    require(zi.real() > 0.0, "HalfPlanePoint: Re(z_i) must be positive");
}

ExpVector zero_vector(int dim) { return ExpVector{dim, {}}; }

ExpVector make_term(int dim, cdouble coeff, std::vector<double> shift,
                    std::vector<cdouble> decay) {
  require(static_cast<int>(shift.size()) == dim &&
              static_cast<int>(decay.size()) == dim,
          "make_term: dimension mismatch");
  require(is_nonneg(shift), "make_term: negative shift component");
  for (const cdouble& zi : decay)
    require(zi.real() > 0.0, "make_term: decay must lie in the half plane");
  ExpVector v{dim, {ElementaryTerm{coeff, std::move(shift), std::move(decay)}}};
  canonicalize(v);
  return v;
}

ExpVector unit_exponential(const HalfPlanePoint& z) {
  return make_term(z.dim(), 1.0, std::vector<double>(z.dim(), 0.0), z.z);
}

void canonicalize(ExpVector& v) {
  std::sort(v.terms.begin(), v.terms.end(),
            [](const ElementaryTerm& a, const ElementaryTerm& b) {
              return compare_term_keys(a, b) < 0;
            });
  std::vector<ElementaryTerm> merged;
  merged.reserve(v.terms.size());
  for (const ElementaryTerm& t : v.terms) {
    if (!merged.empty() && compare_term_keys(merged.back(), t) == 0)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(t);
  }
  double top = 0.0;
  for (const ElementaryTerm& t : merged) top = std::max(top, std::abs(t.coeff));
  v.terms.clear();
  for (ElementaryTerm& t : merged)
    if (std::abs(t.coeff) > kDropRel * top && t.coeff != 0.0)
      v.terms.push_back(std::move(t));
}

ExpVector add(const ExpVector& u, const ExpVector& v) {
  check_dim(u, v);
  ExpVector out{u.dim, u.terms};
  out.terms.insert(out.terms.end(), v.terms.begin(), v.terms.end());
  canonicalize(out);
  return out;
}

ExpVector scale(cdouble c, const ExpVector& v) {
  ExpVector out{v.dim, v.terms};
  for (ElementaryTerm& t : out.terms) t.coeff *= c;
  canonicalize(out);
  return out;
}

ExpVector sub(const ExpVector& u, const ExpVector& v) {
  return add(u, scale(-1.0, v));
}

cdouble term_inner(const ElementaryTerm& a, const ElementaryTerm& b) {
  cdouble k = std::conj(a.coeff) * b.coeff;
  for (size_t i = 0; i < a.shift.size(); ++i) {
    const cdouble z = a.decay[i], w = b.decay[i];
    const double s = a.shift[i], t = b.shift[i];
    const double m = std::max(s, t);
    // int_m^inf conj(f_z(x-s)) f_w(x-t) dx in closed form.
    k *= 2.0 * std::sqrt(z.real() * w.real()) / (std::conj(z) + w) *
         std::exp(-std::conj(z) * (m - s) - w * (m - t));
  }
  return k;
}

cdouble inner(const ExpVector& u, const ExpVector& v) {
  check_dim(u, v);
  cdouble sum = 0.0;
  for (const ElementaryTerm& a : u.terms)
    for (const ElementaryTerm& b : v.terms) sum += term_inner(a, b);
  return sum;
}

double norm(const ExpVector& v) {
  return std::sqrt(std::max(0.0, inner(v, v).real()));
}

ExpVector apply_shift(const std::vector<double>& t, const ExpVector& v) {
  check_param(t, v.dim, "apply_shift");
  ExpVector out{v.dim, v.terms};
  for (ElementaryTerm& term : out.terms)
    for (size_t i = 0; i < t.size(); ++i) term.shift[i] += t[i];
  canonicalize(out);
  return out;
}

ExpVector apply_adjoint(const std::vector<double>& t, const ExpVector& v) {
  check_param(t, v.dim, "apply_adjoint");
  ExpVector out{v.dim, v.terms};
  for (ElementaryTerm& term : out.terms) {
    // Deficient coordinates contribute exp(-z_i (t_i - s_i)); the exponent
    // is accumulated so a single exp() keeps the term-level rule exact.
    cdouble exponent = 0.0;
    bool deficient = false;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] <= term.shift[i]) {
        term.shift[i] -= t[i];
      } else {
        exponent += term.decay[i] * (t[i] - term.shift[i]);
        term.shift[i] = 0.0;
        deficient = true;
      }
    }
    if (deficient) term.coeff *= std::exp(-exponent);
  }
  canonicalize(out);
  return out;
}

ExpVector range_projection(const std::vector<double>& t, const ExpVector& v) {
  return apply_shift(t, apply_adjoint(t, v));
}

Eigen::MatrixXcd gram(const std::vector<ExpVector>& vs) {
  const int n = static_cast<int>(vs.size());
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      const cdouble val = inner(vs[j], vs[k]);
      g(j, k) = val;
      g(k, j) = std::conj(val);
    }
    g(j, j) = g(j, j).real();
  }
  return g;
}

SpanProjection shift_span_project(const ExpVector& target,
                                  const HalfPlanePoint& z2,
                                  const std::vector<std::vector<double>>& grid) {
  require(!grid.empty(), "shift_span_project: empty grid");
  require(z2.dim() == target.dim, "shift_span_project: dimension mismatch");
  const ExpVector fz = unit_exponential(z2);
  std::vector<ExpVector> basis;
  basis.reserve(grid.size());
  for (const auto& t : grid) basis.push_back(apply_shift(t, fz));

  const int n = static_cast<int>(basis.size());
  const Eigen::MatrixXcd g = gram(basis);
  Eigen::VectorXcd rhs(n);
  for (int j = 0; j < n; ++j) rhs(j) = inner(basis[j], target);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  const double floor = 1e-12 * g.trace().real() / n;
  Eigen::VectorXd lam = es.eigenvalues();
  int rank = 0;
  for (int j = 0; j < n; ++j) {
    if (lam(j) > floor) ++rank;
    lam(j) = std::max(lam(j), floor);
  }
  const Eigen::VectorXcd y = es.eigenvectors().adjoint() * rhs;
  const Eigen::VectorXcd c =
      es.eigenvectors() * (y.array() / lam.array()).matrix();

  // Residual from exact inner products so regularization cannot hide error.
  const cdouble ct_r = c.dot(rhs);  // conjugates c
  const cdouble quad = (c.adjoint() * g * c)(0, 0);
  const double res2 = inner(target, target).real() - 2.0 * ct_r.real() + quad.real();

  SpanProjection out;
  out.coeffs.assign(c.data(), c.data() + n);
  out.residual_norm = std::sqrt(std::max(0.0, res2));
  out.effective_rank = rank;
  return out;
}

}  // namespace isomlab::expspan
