#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ordlab/error.hpp"
#include "ordlab/rational.hpp"

namespace ordlab {

// Normalization tolerances: accepted at parse time vs held internally.
inline constexpr double kParseNormTol = 1e-9;
inline constexpr double kInternalNormTol = 1e-12;
// Tie tolerance for partial-sum comparisons in float mode.
inline constexpr double kOrderTol = 1e-12;

/// Probability vector over a finite outcome set. Entries are >= 0 and sum
/// to 1 within 1e-12 (inputs are accepted at 1e-9 and rescaled). Immutable
/// after construction.
class Dist {
 public:
  static Dist from_raw(std::vector<double> raw);
  static Dist uniform(std::size_t n);
  static Dist point_mass(std::size_t n, std::size_t at);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const Dist&) const = default;

 private:
  explicit Dist(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

/// Per-outcome real scores (utility or energy). Entries must be finite.
class ScoreVector {
 public:
  static ScoreVector from_raw(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  explicit ScoreVector(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

/// Exact-rational probability vector: entries >= 0, sum exactly 1.
class RatDist {
 public:
  static RatDist from_raw(std::vector<Rational> raw);
  static RatDist uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  const Rational& operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<Rational>& probs() const { return probs_; }

  bool operator==(const RatDist&) const = default;

 private:
  explicit RatDist(std::vector<Rational> probs) : probs_(std::move(probs)) {}
  std::vector<Rational> probs_;
};

Dist sorted_desc(const Dist& p);
RatDist sorted_desc(const RatDist& p);

/// Cumulative sums of the i largest entries, i = 1..n.
std::vector<double> top_sums(const Dist& p);
std::vector<Rational> top_sums(const RatDist& p);

/// u_i(p) = minus the sum of the i largest entries, i = 1..n-1.
std::vector<double> partial_sum_utilities(const Dist& p);

/// Shannon entropy in nats, with 0 log 0 = 0.
double shannon_entropy(const Dist& p);

/// p*(x) = e^{beta U(x)} / sum_y e^{beta U(y)}, max-shifted for overflow
/// safety. beta may be any finite real.
Dist boltzmann(const ScoreVector& utility, double beta);

Dist to_dist(const RatDist& p);

/// Entrywise continued-fraction snap of a float distribution; the snapped
/// entries must form an exact distribution.
RatDist snap_dist(const Dist& p, long max_denominator = 1024);

}  // namespace ordlab
