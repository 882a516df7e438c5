#pragma once

#include <cmath>
#include <concepts>

#include "isomlab/common.hpp"
#include "isomlab/discrete.hpp"
#include "isomlab/expspan.hpp"

namespace isomlab {

// What a directional semigroup is known to do in the strong limit of its
// range projections.  Declared kinds let per-vector limits short-circuit.
enum class DirectionKind { Pure, Unitary, Unknown };

// Uniform interface over the concrete engines: apply/apply_adjoint take a
// parameter t in R_+^d, inner is conjugate-linear in the first slot, and
// add/scale give the ambient linear structure of the vector type.
template <typename R>
concept Representation =
    requires(const R& r, const typename R::Vector& v,
             const std::vector<double>& t, int i, cdouble c) {
      { r.dim() } -> std::convertible_to<int>;
      { r.apply(t, v) } -> std::same_as<typename R::Vector>;
      { r.apply_adjoint(t, v) } -> std::same_as<typename R::Vector>;
      { r.inner(v, v) } -> std::convertible_to<cdouble>;
      { r.add(v, v) } -> std::same_as<typename R::Vector>;
      { r.scale(c, v) } -> std::same_as<typename R::Vector>;
      { r.direction_kind(i) } -> std::same_as<DirectionKind>;
    };

template <typename R>
double rep_norm(const R& r, const typename R::Vector& v) {
  return std::sqrt(std::max(0.0, r.inner(v, v).real()));
}

template <typename R>
typename R::Vector rep_sub(const R& r, const typename R::Vector& u,
                           const typename R::Vector& v) {
  return r.add(u, r.scale(-1.0, v));
}

inline std::vector<double> unit_direction(int dim, int i, double t) {
  std::vector<double> out(dim, 0.0);
  out[i] = t;
  return out;
}

// The shift semigroup on L^2(R_+^d) acting on the exponential span.
struct ShiftRep {
  using Vector = expspan::ExpVector;

  explicit ShiftRep(int dim) : d(dim) {}

  int dim() const { return d; }
  Vector apply(const std::vector<double>& t, const Vector& v) const {
    return expspan::apply_shift(t, v);
  }
  Vector apply_adjoint(const std::vector<double>& t, const Vector& v) const {
    return expspan::apply_adjoint(t, v);
  }
  cdouble inner(const Vector& u, const Vector& v) const {
    return expspan::inner(u, v);
  }
  Vector add(const Vector& u, const Vector& v) const {
    return expspan::add(u, v);
  }
  Vector scale(cdouble c, const Vector& v) const { return expspan::scale(c, v); }
  DirectionKind direction_kind(int) const { return DirectionKind::Pure; }

  int d;
};

// A basis-isometry tuple viewed as a representation of R_+^d; parameters
// must sit on the integer lattice (the natural embedding of N_0^d).
struct DiscreteRep {
  using Vector = discrete::SparseVector;

  explicit DiscreteRep(discrete::BasisIsometry isometry)
      : V(std::move(isometry)) {}

  int dim() const { return V.dim(); }

  Vector apply(const std::vector<double>& t, const Vector& v) const {
    return discrete::apply_multi(V, to_lattice(t), v);
  }
  Vector apply_adjoint(const std::vector<double>& t, const Vector& v) const {
    return discrete::apply_multi_adjoint(V, to_lattice(t), v);
  }
  cdouble inner(const Vector& u, const Vector& v) const {
    return discrete::inner(u, v);
  }
  Vector add(const Vector& u, const Vector& v) const {
    return discrete::add(u, v);
  }
  Vector scale(cdouble c, const Vector& v) const {
    return discrete::scale(c, v);
  }
  DirectionKind direction_kind(int i) const {
    switch (V.generator(i).kind) {
      case discrete::GeneratorRule::Kind::Shift:
        return DirectionKind::Pure;
      case discrete::GeneratorRule::Kind::Phase:
        return DirectionKind::Unitary;
      default:
        return DirectionKind::Unknown;
    }
  }

  MultiIndex to_lattice(const std::vector<double>& t) const {
    require(static_cast<int>(t.size()) == V.dim(),
            "DiscreteRep: dimension mismatch");
    MultiIndex n(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      const double r = std::round(t[i]);
      require(r >= 0.0 && std::abs(t[i] - r) <= 1e-9,
              "DiscreteRep: parameter must lie on the nonnegative lattice");
      n[i] = static_cast<int>(r);
    }
    return n;
  }

  discrete::BasisIsometry V;
};

}  // namespace isomlab
