#pragma once

#include <utility>
#include <vector>

#include "ordlab/dist.hpp"

namespace ordlab::maxent {

/// <E>_p = target over the outcome set of E.
struct LinearConstraint {
  ScoreVector energy;
  double target = 0.0;
};

struct Solution {
  Dist p;
  double beta = 0.0;
};

inline constexpr double kDefaultMomentTol = 1e-10;
inline constexpr double kBetaCap = 1e3;

/// Entropy maximizer on the constraint slice: p* prop exp(-beta E), with
/// beta found by bisection on the strictly decreasing map beta -> <E>.
/// Targets at an extreme of E return the uniform distribution over the
/// achieving support.
Solution solve_maxent(const LinearConstraint& constraint, double tol = kDefaultMomentTol);

struct Bound {
  enum class Kind { EntropyFloor, UtilityFloor } kind = Kind::EntropyFloor;
  double value = 0.0;

  static Bound entropy_floor(double h0) { return {Kind::EntropyFloor, h0}; }
  static Bound utility_floor(double u0) { return {Kind::UtilityFloor, u0}; }
};

/// Bounded-rational Boltzmann solution p* prop exp(beta U), beta >= 0 chosen
/// so the active constraint is met; beta capped at 1e3 when the bound stays
/// slack at pure maximization.
Solution solve_bounded_rational(const ScoreVector& utility, const Bound& bound,
                                double tol = kDefaultMomentTol);

/// Endpoints of the segment {p in simplex : <E>_p = target} (n = 3 slices
/// are segments; n = 2 gives a point).
std::pair<Dist, Dist> constraint_segment(const ScoreVector& energy, double target);

/// Grid scan of the constraint segment; returns the sampled points that are
/// maximal under the uncertainty preorder within the sample.
std::vector<Dist> maximal_on_segment(const ScoreVector& energy, double target,
                                     std::size_t grid);

}  // namespace ordlab::maxent
