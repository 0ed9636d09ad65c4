#include "ordlab/maxent.hpp"

#include <algorithm>
#include <cmath>

#include "ordlab/majorization.hpp"

namespace ordlab::maxent {

namespace {

Dist gibbs(const ScoreVector& energy, double beta) {
  std::vector<double> negated(energy.size());
  for (std::size_t i = 0; i < energy.size(); ++i) negated[i] = -energy[i];
  return boltzmann(ScoreVector::from_raw(std::move(negated)), beta);
}

double moment(const ScoreVector& energy, const Dist& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < energy.size(); ++i) acc += energy[i] * p[i];
  return acc;
}

Dist uniform_over(const ScoreVector& energy, double level) {
  std::vector<double> raw(energy.size(), 0.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < energy.size(); ++i) {
    if (std::abs(energy[i] - level) <= 1e-12) {
      raw[i] = 1.0;
      ++hits;
    }
  }
  for (double& x : raw) x /= static_cast<double>(hits);
  return Dist::from_raw(std::move(raw));
}

}  // namespace

Solution solve_maxent(const LinearConstraint& constraint, double tol) {
  const ScoreVector& energy = constraint.energy;
  const double target = constraint.target;
  require(energy.size() >= 1, ErrorKind::NonFiniteScore, "empty energy vector");
  const double lo_e = *std::min_element(energy.values().begin(), energy.values().end());
  const double hi_e = *std::max_element(energy.values().begin(), energy.values().end());
  require(target >= lo_e - 1e-12 && target <= hi_e + 1e-12, ErrorKind::TargetOutOfRange,
          "target " + std::to_string(target) + " outside [" + std::to_string(lo_e) + ", " +
              std::to_string(hi_e) + "]");
  // Degenerate targets pin the support: entropy is maximized by the uniform
  // distribution over the achieving outcomes.
  if (target <= lo_e + 1e-12 && lo_e < hi_e) return {uniform_over(energy, lo_e), kBetaCap};
  if (target >= hi_e - 1e-12 && lo_e < hi_e) return {uniform_over(energy, hi_e), -kBetaCap};
  if (lo_e == hi_e) return {Dist::uniform(energy.size()), 0.0};

  // <E> is strictly decreasing in beta; bracket then bisect.
  double lo = -64.0, hi = 64.0;
  while (moment(energy, gibbs(energy, lo)) < target && lo > -1e7) lo *= 2.0;
  while (moment(energy, gibbs(energy, hi)) > target && hi < 1e7) hi *= 2.0;
  double mid = 0.0;
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = moment(energy, gibbs(energy, mid));
    if (std::abs(value - target) <= tol) break;
    if (value > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {gibbs(energy, mid), mid};
}

Solution solve_bounded_rational(const ScoreVector& utility, const Bound& bound, double tol) {
  require(utility.size() >= 1, ErrorKind::NonFiniteScore, "empty utility vector");
  const std::size_t n = utility.size();
  const double log_n = std::log(static_cast<double>(n));
  const auto at = [&](double beta) { return boltzmann(utility, beta); };

  if (bound.kind == Bound::Kind::EntropyFloor) {
    const double floor = bound.value;
    require(floor <= log_n + 1e-12, ErrorKind::InfeasibleBound,
            "entropy floor exceeds log n");
    if (floor >= log_n - 1e-12) return {Dist::uniform(n), 0.0};
    // H(p_beta) decreases from log n; stop where it hits the floor, or cap
    // when the floor stays slack all the way to pure maximization.
    if (shannon_entropy(at(kBetaCap)) >= floor) return {at(kBetaCap), kBetaCap};
    double lo = 0.0, hi = kBetaCap, mid = 0.0;
    for (int iter = 0; iter < 400; ++iter) {
      mid = 0.5 * (lo + hi);
      const double h = shannon_entropy(at(mid));
      if (std::abs(h - floor) <= tol) break;
      if (h > floor) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return {at(mid), mid};
  }

  const double floor = bound.value;
  const double hi_u = *std::max_element(utility.values().begin(), utility.values().end());
  double mean_uniform = 0.0;
  for (double u : utility.values()) mean_uniform += u / static_cast<double>(n);
  require(floor <= hi_u + 1e-12, ErrorKind::InfeasibleBound, "utility floor exceeds max U");
  if (floor <= mean_uniform) return {Dist::uniform(n), 0.0};
  const auto mean_at = [&](double beta) {
    const Dist p = at(beta);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += p[i] * utility[i];
    return acc;
  };
  if (mean_at(kBetaCap) <= floor) return {at(kBetaCap), kBetaCap};
  double lo = 0.0, hi = kBetaCap, mid = 0.0;
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = mean_at(mid);
    if (std::abs(value - floor) <= tol) break;
    if (value < floor) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {at(mid), mid};
}

std::pair<Dist, Dist> constraint_segment(const ScoreVector& energy, double target) {
  const std::size_t n = energy.size();
  require(n >= 2, ErrorKind::EmptyFeasibleSet, "need at least two outcomes");
  std::vector<std::vector<double>> points;
  const auto push_unique = [&](std::vector<double> p) {
    for (const auto& q : points) {
      double gap = 0.0;
      for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(p[i] - q[i]));
      if (gap <= 1e-12) return;
    }
    points.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<double> p(n, 0.0);
      if (energy[i] == energy[j]) {
        if (std::abs(energy[i] - target) <= 1e-12) {
          p[i] = 1.0;
          push_unique(p);
        }
        continue;
      }
      const double s = (target - energy[j]) / (energy[i] - energy[j]);
      if (s < -1e-12 || s > 1.0 + 1e-12) continue;
      p[i] = std::clamp(s, 0.0, 1.0);
      p[j] = 1.0 - p[i];
      push_unique(std::move(p));
    }
  }
  require(!points.empty(), ErrorKind::EmptyFeasibleSet,
          "no distribution meets the target moment");
  require(points.size() <= 2, ErrorKind::EmptyFeasibleSet,
          "feasible set is not a segment");
  std::sort(points.begin(), points.end());
  const Dist a = Dist::from_raw(points.front());
  const Dist b = Dist::from_raw(points.back());
  return {a, b};
}

std::vector<Dist> maximal_on_segment(const ScoreVector& energy, double target,
                                     std::size_t grid) {
  require(grid >= 2, ErrorKind::EmptyFeasibleSet, "grid needs at least two points");
  const auto [a, b] = constraint_segment(energy, target);
  const std::size_t n = energy.size();

  std::vector<Dist> samples;
  samples.reserve(grid);
  std::vector<std::vector<double>> sums;
  sums.reserve(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(grid - 1);
    std::vector<double> raw(n);
    for (std::size_t i = 0; i < n; ++i) {
      raw[i] = std::max(0.0, (1.0 - t) * a[i] + t * b[i]);
    }
    Dist p = Dist::from_raw(std::move(raw));
    if (!samples.empty()) {
      // A degenerate segment repeats the same point; keep one copy.
      double gap = 0.0;
      for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(p[i] - samples.back()[i]));
      if (gap <= 1e-12) continue;
    }
    sums.push_back(top_sums(p));
    samples.push_back(std::move(p));
  }

  // p is maximal iff no sample has pointwise smaller-or-equal top sums with
  // one strictly smaller (strictly less biased everywhere it matters).
  std::vector<Dist> maximal;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < samples.size() && !dominated; ++j) {
      if (i == j) continue;
      bool leq_all = true;
      bool strict_some = false;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        leq_all = leq_all && sums[j][k] <= sums[i][k] + kOrderTol;
        strict_some = strict_some || sums[j][k] < sums[i][k] - kOrderTol;
      }
      dominated = leq_all && strict_some;
    }
    if (!dominated) maximal.push_back(samples[i]);
  }
  return maximal;
}

}  // namespace ordlab::maxent
