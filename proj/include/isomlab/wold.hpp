#pragma once

#include "isomlab/certificate.hpp"
#include "isomlab/representation.hpp"

namespace isomlab::wold {

enum class LimitStatus { Converged, ShortCircuit, NonConverged };

inline std::string to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::Converged:
      return "CONVERGED";
    case LimitStatus::ShortCircuit:
      return "SHORT_CIRCUIT";
    case LimitStatus::NonConverged:
      return "NONCONVERGED";
  }
  return "NONCONVERGED";
}

struct WoldParams {
  double tol = 1e-10;
  double horizon = 1e6;
  bool force_iterate = false;  // ignore declared direction kinds
};

template <typename VectorT>
struct LimitResult {
  VectorT value;
  LimitStatus status = LimitStatus::Converged;
  double horizon_used = 0.0;
};

// P_i v where P_i = lim_{T -> inf} V_{T e_i} V_{T e_i}^* in the strong
// topology, evaluated per vector (operator-norm limits do not converge).
// T doubles until successive iterates differ by < tol; engines declaring a
// direction pure or unitary short-circuit to the exact limit (0 resp. v).
template <Representation R>
LimitResult<typename R::Vector> limit_projection(const R& rep, int i,
                                                 const typename R::Vector& v,
                                                 const WoldParams& params = {}) {
  require(i >= 0 && i < rep.dim(), "limit_projection: direction out of range");
  require(params.horizon > 0.0, "limit_projection: horizon must be positive");
  if (!params.force_iterate) {
    switch (rep.direction_kind(i)) {
      case DirectionKind::Pure:
        return {rep.scale(0.0, v), LimitStatus::ShortCircuit, 0.0};
      case DirectionKind::Unitary:
        return {v, LimitStatus::ShortCircuit, 0.0};
      default:
        break;
    }
  }
  auto range_proj = [&](double T) {
    const auto t = unit_direction(rep.dim(), i, T);
    return rep.apply(t, rep.apply_adjoint(t, v));
  };
  double T = 1.0;
  typename R::Vector prev = range_proj(T);
  while (T <= params.horizon) {
    T *= 2.0;
    typename R::Vector cur = range_proj(T);
    const double diff = rep_norm(rep, rep_sub(rep, cur, prev));
    if (diff < params.tol)
      return {std::move(cur), LimitStatus::Converged, T};
    prev = std::move(cur);
  }
  return {std::move(prev), LimitStatus::NonConverged, T};
}

template <typename VectorT>
struct WoldResult {
  int dim = 0;
  // components[mask]: bit i set means direction i acts purely on the piece
  // (the alpha of P_alpha = prod_{i in alpha}(I - P_i) prod_{j not in alpha} P_j).
  std::vector<VectorT> components;
  std::vector<LimitStatus> direction_status;
  bool converged = true;
  double recompose_error = 0.0;   // || sum_alpha P_alpha v - v ||
  double max_pair_overlap = 0.0;  // max |<P_a v, P_b v>| over a != b
  double max_class_defect = 0.0;  // sampled pure/unitary classification check
};

// Splits v over the 2^d reducing pieces.  The per-direction limits are
// applied recursively: v = (I - P_i) v + P_i v in each direction.
template <Representation R>
WoldResult<typename R::Vector> wold_decompose(const R& rep,
                                              const typename R::Vector& v,
                                              const WoldParams& params = {}) {
  const int d = rep.dim();
  require(d >= 1 && d <= 16, "wold_decompose: dimension must be in [1,16]");

  WoldResult<typename R::Vector> out;
  out.dim = d;
  out.direction_status.assign(d, LimitStatus::Converged);
  out.components.assign(1, v);  // masks over processed directions
  for (int i = 0; i < d; ++i) {
    std::vector<typename R::Vector> next;
    next.reserve(out.components.size() * 2);
    LimitStatus dir_status = LimitStatus::ShortCircuit;
    for (const auto& w : out.components) {
      auto lim = limit_projection(rep, i, w, params);
      if (lim.status == LimitStatus::NonConverged) {
        dir_status = LimitStatus::NonConverged;
        out.converged = false;
      } else if (lim.status == LimitStatus::Converged &&
                 dir_status != LimitStatus::NonConverged) {
        dir_status = LimitStatus::Converged;
      }
      next.push_back(lim.value);  // bit i clear: P_i w  (unitary side)
      next.push_back(rep_sub(rep, w, lim.value));  // bit i set: (I-P_i) w
    }
    // Interleave so that component index equals the alpha bitmask.
    std::vector<typename R::Vector> ordered(next.size(), rep.scale(0.0, v));
    for (size_t k = 0; k < out.components.size(); ++k) {
      ordered[k] = std::move(next[2 * k]);
      ordered[k + out.components.size()] = std::move(next[2 * k + 1]);
    }
    out.components = std::move(ordered);
    out.direction_status[i] = dir_status;
  }

  // Resolution of identity and pairwise orthogonality.
  typename R::Vector sum = rep.scale(0.0, v);
  for (const auto& c : out.components) sum = rep.add(sum, c);
  out.recompose_error = rep_norm(rep, rep_sub(rep, sum, v));
  for (size_t a = 0; a < out.components.size(); ++a)
    for (size_t b = a + 1; b < out.components.size(); ++b)
      out.max_pair_overlap =
          std::max(out.max_pair_overlap,
                   std::abs(rep.inner(out.components[a], out.components[b])));

  // Sampled classification: on a pure direction the adjoints drive the
  // piece to zero (||V_t^* w|| is non-increasing, so double t until it
  // drops below tolerance); on a unitary direction every range projection
  // fixes the piece.
  const double vnorm = rep_norm(rep, v);
  const double scale = std::max(1.0, vnorm);
  for (size_t mask = 0; mask < out.components.size(); ++mask) {
    const auto& piece = out.components[mask];
    if (rep_norm(rep, piece) <= params.tol * scale) continue;
    for (int i = 0; i < d; ++i) {
      double defect = 0.0;
      if (mask & (1ull << i)) {
        double T = 1.0;
        while (true) {
          defect = rep_norm(rep, rep.apply_adjoint(unit_direction(d, i, T), piece));
          if (defect <= 0.1 * params.tol * scale || T > params.horizon) break;
          T *= 2.0;
        }
      } else {
        for (double T : {1.0, 8.0, 64.0}) {
          const auto t = unit_direction(d, i, T);
          const auto round_trip = rep.apply(t, rep.apply_adjoint(t, piece));
          defect = std::max(defect, rep_norm(rep, rep_sub(rep, round_trip, piece)));
        }
      }
      out.max_class_defect = std::max(out.max_class_defect, defect);
    }
  }
  return out;
}

// Expands v over the shifted copies of the joint wandering basis and
// certifies the reconstruction residual.  Requires every generator to be a
// pure shift so the expansion is exact at a finite box.
Certificate wandering_reconstruct(const discrete::BasisIsometry& V,
                                  const discrete::SparseVector& v, int box,
                                  double claimed_bound = 1e-12);

}  // namespace isomlab::wold
