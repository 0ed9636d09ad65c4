#include "ordlab/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "simplex.hpp"

namespace ordlab::majo {

namespace {

void check_same_length(std::size_t a, std::size_t b) {
  require(a == b, ErrorKind::LengthMismatch,
          "distributions have lengths " + std::to_string(a) + " and " + std::to_string(b));
}

// Generic Lorenz comparison: true iff every top-i sum of p is <= that of q
// (plus tol), i.e. p <=_M q.
template <typename Vec, typename Tol>
bool lorenz_below(const Vec& sp, const Vec& sq, Tol tol) {
  for (std::size_t i = 0; i + 1 < sp.size(); ++i) {
    if (!(sp[i] <= sq[i] + tol)) return false;
  }
  return true;
}

}  // namespace

const char* verdict_name(OrderVerdict v) {
  switch (v) {
    case OrderVerdict::StrictlyLess: return "StrictlyLess";
    case OrderVerdict::Equivalent: return "Equivalent";
    case OrderVerdict::StrictlyGreater: return "StrictlyGreater";
    case OrderVerdict::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

bool uncertainty_leq(const Dist& p, const Dist& q) {
  check_same_length(p.size(), q.size());
  return lorenz_below(top_sums(q), top_sums(p), kOrderTol);
}

bool uncertainty_leq(const RatDist& p, const RatDist& q) {
  check_same_length(p.size(), q.size());
  return lorenz_below(top_sums(q), top_sums(p), Rational(0));
}

bool majorized_by(const Dist& p, const Dist& q) {
  check_same_length(p.size(), q.size());
  return lorenz_below(top_sums(p), top_sums(q), kOrderTol);
}

bool majorized_by(const RatDist& p, const RatDist& q) {
  check_same_length(p.size(), q.size());
  return lorenz_below(top_sums(p), top_sums(q), Rational(0));
}

OrderVerdict compare(const Dist& p, const Dist& q, const Order& order) {
  bool forward = false;
  bool backward = false;
  switch (order.kind) {
    case Order::Kind::U:
      forward = uncertainty_leq(p, q);
      backward = uncertainty_leq(q, p);
      break;
    case Order::Kind::M:
      forward = majorized_by(p, q);
      backward = majorized_by(q, p);
      break;
    case Order::Kind::D: {
      require(order.d.has_value(), ErrorKind::ZeroReference, "order d needs a reference");
      const RatDist& d = *order.d;
      const RatDist rp = snap_dist(p);
      const RatDist rq = snap_dist(q);
      forward = d_majorization_leq(rp, rq, d);
      backward = d_majorization_leq(rq, rp, d);
      break;
    }
  }
  if (forward && backward) return OrderVerdict::Equivalent;
  if (forward) return OrderVerdict::StrictlyLess;
  if (backward) return OrderVerdict::StrictlyGreater;
  return OrderVerdict::Incomparable;
}

namespace {

// Hardy-Littlewood-Polya synthesis over either scalar type. tol = 0 in the
// exact lane. Returns nullopt when the precondition fails.
template <typename T, typename Step>
std::optional<std::vector<Step>> hlp_path(std::vector<T> work, const std::vector<T>& goal,
                                          std::size_t max_steps, T tol) {
  const std::size_t n = work.size();
  std::vector<Step> steps;

  std::vector<T> goal_sorted = goal;
  std::sort(goal_sorted.begin(), goal_sorted.end(), std::greater<>());

  while (true) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return work[a] > work[b]; });

    std::size_t j = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (work[order[k]] > goal_sorted[k] + tol) {
        j = k;
        break;
      }
    }
    if (j == n) break;
    std::size_t k = n;
    for (std::size_t m = j + 1; m < n; ++m) {
      if (work[order[m]] + tol < goal_sorted[m]) {
        k = m;
        break;
      }
    }
    if (k == n) return std::nullopt;  // partial sums said yes but no deficit index

    const T excess = work[order[j]] - goal_sorted[j];
    const T deficit = goal_sorted[k] - work[order[k]];
    const T delta = std::min(excess, deficit);
    if (steps.size() >= max_steps) {
      fail(ErrorKind::StepBudgetExceeded, "transfer budget " + std::to_string(max_steps));
    }
    steps.push_back(Step{order[j], order[k], delta});
    work[order[j]] -= delta;
    work[order[k]] += delta;
  }

  // The working vector now carries the goal multiset; route values to their
  // final positions with pure swaps.
  for (std::size_t i = 0; i < n; ++i) {
    const T want = goal[i];
    if (work[i] >= want ? work[i] - want <= tol : want - work[i] <= tol) continue;
    std::size_t match = n;
    for (std::size_t j2 = i + 1; j2 < n; ++j2) {
      if (work[j2] >= want ? work[j2] - want <= tol : want - work[j2] <= tol) {
        match = j2;
        break;
      }
    }
    if (match == n) return std::nullopt;
    if (steps.size() >= max_steps) {
      fail(ErrorKind::StepBudgetExceeded, "transfer budget " + std::to_string(max_steps));
    }
    const bool i_larger = work[i] > work[match];
    const std::size_t from = i_larger ? i : match;
    const std::size_t to = i_larger ? match : i;
    const T mass = work[from] - work[to];
    steps.push_back(Step{from, to, mass});
    std::swap(work[i], work[match]);
  }
  return steps;
}

}  // namespace

std::optional<std::vector<TransferStep>> pigou_dalton_path(const Dist& p, const Dist& q,
                                                           std::size_t max_steps) {
  check_same_length(p.size(), q.size());
  if (!uncertainty_leq(p, q)) return std::nullopt;
  return hlp_path<double, TransferStep>(p.probs(), q.probs(), max_steps, 1e-12);
}

std::optional<std::vector<RatTransferStep>> pigou_dalton_path(const RatDist& p,
                                                              const RatDist& q,
                                                              std::size_t max_steps) {
  check_same_length(p.size(), q.size());
  if (!uncertainty_leq(p, q)) return std::nullopt;
  return hlp_path<Rational, RatTransferStep>(p.probs(), q.probs(), max_steps, Rational(0));
}

RatDist lambda_d_embed(const RatDist& p, const RatDist& d) {
  check_same_length(p.size(), d.size());
  BigInt alpha = 1;
  for (std::size_t x = 0; x < d.size(); ++x) {
    require(d[x] > 0, ErrorKind::ZeroReference, "d(" + std::to_string(x) + ") = 0");
    alpha = boost::multiprecision::lcm(alpha, denominator(d[x]));
  }
  std::vector<Rational> cells;
  for (std::size_t x = 0; x < d.size(); ++x) {
    const BigInt count = numerator(d[x] * alpha);
    const Rational value = p[x] / Rational(count);
    for (BigInt c = 0; c < count; ++c) cells.push_back(value);
  }
  return RatDist::from_raw(std::move(cells));
}

Dist lambda_d_embed(const Dist& p, const Dist& d) {
  check_same_length(p.size(), d.size());
  const RatDist rd = snap_dist(d);
  BigInt alpha = 1;
  for (std::size_t x = 0; x < rd.size(); ++x) {
    require(rd[x] > 0, ErrorKind::ZeroReference, "d(" + std::to_string(x) + ") = 0");
    alpha = boost::multiprecision::lcm(alpha, denominator(rd[x]));
  }
  std::vector<double> cells;
  for (std::size_t x = 0; x < rd.size(); ++x) {
    const BigInt count = numerator(rd[x] * alpha);
    const double value = p[x] / count.convert_to<double>();
    for (BigInt c = 0; c < count; ++c) cells.push_back(value);
  }
  return Dist::from_raw(std::move(cells));
}

bool d_majorization_leq(const RatDist& p, const RatDist& q, const RatDist& d) {
  return majorized_by(lambda_d_embed(p, d), lambda_d_embed(q, d));
}

bool d_majorization_leq(const Dist& p, const Dist& q, const Dist& d) {
  const RatDist rd = snap_dist(d);
  return d_majorization_leq(snap_dist(p), snap_dist(q), rd);
}

bool d_majorization_oracle(const RatDist& p, const RatDist& q, const RatDist& d) {
  const std::size_t n = p.size();
  check_same_length(n, q.size());
  check_same_length(n, d.size());
  require(n <= kOracleMaxOutcomes, ErrorKind::SolverScaleExceeded,
          "oracle supports n <= " + std::to_string(kOracleMaxOutcomes));
  for (std::size_t x = 0; x < n; ++x) {
    require(d[x] > 0, ErrorKind::ZeroReference, "d(" + std::to_string(x) + ") = 0");
  }

  // Variables v[x*n+y] = Pi_xy >= 0. Constraints: columns sum to one,
  // Pi d = d, Pi q = p.
  const std::size_t vars = n * n;
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<Rational> row(vars, Rational(0));
    for (std::size_t x = 0; x < n; ++x) row[x * n + y] = 1;
    a.push_back(std::move(row));
    b.push_back(1);
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> row(vars, Rational(0));
    for (std::size_t y = 0; y < n; ++y) row[x * n + y] = d[y];
    a.push_back(std::move(row));
    b.push_back(d[x]);
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Rational> row(vars, Rational(0));
    for (std::size_t y = 0; y < n; ++y) row[x * n + y] = q[y];
    a.push_back(std::move(row));
    b.push_back(p[x]);
  }
  return detail::rational_system_feasible(a, b);
}

SecondLawsReport check_second_laws_family(const std::vector<ScalarFn>& family,
                                          const std::vector<std::pair<Dist, Dist>>& pairs,
                                          const Order& order) {
  SecondLawsReport report;
  report.pairs_checked = pairs.size();
  constexpr double tol = 1e-12;
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const Dist& p = pairs[idx].first;
    const Dist& q = pairs[idx].second;
    const OrderVerdict v = compare(p, q, order);
    std::vector<double> fp(family.size()), fq(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      fp[i] = family[i](p);
      fq[i] = family[i](q);
    }
    switch (v) {
      case OrderVerdict::Equivalent:
        for (std::size_t i = 0; i < family.size(); ++i) {
          if (std::abs(fp[i] - fq[i]) > tol) {
            report.violations.push_back(
                {idx, 1, v, "f[" + std::to_string(i) + "] differs on an equivalent pair"});
          }
        }
        break;
      case OrderVerdict::StrictlyLess:
        for (std::size_t i = 0; i < family.size(); ++i) {
          if (!(fq[i] - fp[i] > tol)) {
            report.violations.push_back(
                {idx, 2, v, "f[" + std::to_string(i) + "] fails to strictly increase"});
          }
        }
        break;
      case OrderVerdict::StrictlyGreater:
        for (std::size_t i = 0; i < family.size(); ++i) {
          if (!(fp[i] - fq[i] > tol)) {
            report.violations.push_back(
                {idx, 2, v, "f[" + std::to_string(i) + "] fails to strictly decrease"});
          }
        }
        break;
      case OrderVerdict::Incomparable: {
        bool some_up = false;
        bool some_down = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
          some_up = some_up || fq[i] - fp[i] > tol;
          some_down = some_down || fp[i] - fq[i] > tol;
        }
        if (!(some_up && some_down)) {
          report.violations.push_back(
              {idx, 3, v, "incomparable pair lacks an increasing and a decreasing member"});
        }
        break;
      }
    }
  }
  return report;
}

std::vector<Rational> positive_rationals(std::size_t count) {
  // Breadth-first walk of the Stern-Brocot tree.
  std::vector<Rational> out;
  out.reserve(count);
  struct Node {
    BigInt ln, ld, rn, rd;
  };
  std::deque<Node> queue;
  queue.push_back({0, 1, 1, 0});
  while (out.size() < count) {
    const Node node = queue.front();
    queue.pop_front();
    const BigInt mn = node.ln + node.rn;
    const BigInt md = node.ld + node.rd;
    out.emplace_back(mn, md);
    queue.push_back({node.ln, node.ld, mn, md});
    queue.push_back({mn, md, node.rn, node.rd});
  }
  return out;
}

std::vector<ScalarFn> ui_plus_rh_family(std::size_t n,
                                        const std::vector<Rational>& rationals) {
  require(n >= 2, ErrorKind::LengthMismatch, "family needs n >= 2 outcomes");
  std::vector<ScalarFn> family;
  for (std::size_t i = 1; i <= n - 1; ++i) {
    for (const Rational& r : rationals) {
      const double rd = to_double(r);
      family.push_back([i, rd](const Dist& p) {
        return partial_sum_utilities(p)[i - 1] + rd * shannon_entropy(p);
      });
    }
  }
  return family;
}

}  // namespace ordlab::majo
