#include "ordlab/fluct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "ordlab/rng.hpp"

namespace ordlab::fluct {

namespace {

void run_chunked(std::size_t count, unsigned jobs, const std::function<void(std::size_t, std::size_t)>& body) {
  jobs = std::max(1U, jobs);
  if (jobs == 1 || count < 2 * jobs) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + jobs - 1) / jobs;
  for (unsigned j = 0; j < jobs; ++j) {
    const std::size_t lo = std::min(count, j * chunk);
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

bool strongly_connected(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& edge) {
  const auto reaches_all = [&](bool reversed) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack = {0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < n; ++w) {
        if (seen[w]) continue;
        if (reversed ? edge(w, v) : edge(v, w)) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (char s : seen) {
      if (!s) return false;
    }
    return true;
  };
  return reaches_all(false) && reaches_all(true);
}

// Dense linear solve, shared by the float and rational lanes.
template <typename T>
std::optional<std::vector<T>> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    if constexpr (std::is_same_v<T, double>) {
      for (std::size_t r = col + 1; r < n; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
      }
      if (std::abs(a[pivot][col]) < 1e-300) return std::nullopt;
    } else {
      while (pivot < n && a[pivot][col] == 0) ++pivot;
      if (pivot == n) return std::nullopt;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == T(0)) continue;
      const T factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

void check_energy_shape(const MarkovChainSpec& spec, const EnergyFamily& family) {
  require(family.trials() == spec.steps() + 1, ErrorKind::LengthMismatch,
          "energy family must have N+1 entries");
  for (const auto& e : family.energies) {
    require(e.size() == spec.states(), ErrorKind::LengthMismatch, "energy vector length");
  }
}

std::vector<Dist> stationary_sequence(const MarkovChainSpec& spec) {
  std::vector<Dist> out = {spec.p0};
  for (const auto& m : spec.mats) out.push_back(stationary_dist(m));
  return out;
}

}  // namespace

TransitionMatrix TransitionMatrix::from_rows(std::vector<std::vector<double>> rows) {
  const std::size_t n = rows.size();
  require(n >= 1, ErrorKind::NotStochastic, "empty matrix");
  std::vector<double> a(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    require(rows[x].size() == n, ErrorKind::NotStochastic, "matrix is not square");
    for (std::size_t y = 0; y < n; ++y) {
      require(rows[x][y] >= 0.0 && std::isfinite(rows[x][y]), ErrorKind::NotStochastic,
              "entries must be finite and non-negative");
      a[x * n + y] = rows[x][y];
    }
  }
  for (std::size_t y = 0; y < n; ++y) {
    double sum = 0.0;
    for (std::size_t x = 0; x < n; ++x) sum += a[x * n + y];
    require(std::abs(sum - 1.0) <= 1e-9, ErrorKind::NotStochastic,
            "column " + std::to_string(y) + " sums to " + std::to_string(sum));
    for (std::size_t x = 0; x < n; ++x) a[x * n + y] /= sum;
  }
  return TransitionMatrix(n, std::move(a));
}

TransitionMatrix TransitionMatrix::identity(std::size_t n) {
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 1.0;
  return TransitionMatrix(n, std::move(a));
}

bool is_irreducible(const TransitionMatrix& m) {
  return strongly_connected(m.size(),
                            [&](std::size_t from, std::size_t to) { return m(to, from) > 0.0; });
}

Dist stationary_dist(const TransitionMatrix& m) {
  require(is_irreducible(m), ErrorKind::NotIrreducible, "matrix is not irreducible");
  const std::size_t n = m.size();
  // Rows 0..n-2 of (M - I), last row replaced by the normalization.
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  std::vector<double> b(n, 0.0);
  for (std::size_t x = 0; x + 1 < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) a[x][y] = m(x, y) - (x == y ? 1.0 : 0.0);
  }
  for (std::size_t y = 0; y < n; ++y) a[n - 1][y] = 1.0;
  b[n - 1] = 1.0;
  auto x = solve_linear(a, b);
  require(x.has_value(), ErrorKind::NotIrreducible, "singular stationary system");
  for (double& v : *x) v = std::max(v, 0.0);
  const Dist p = Dist::from_raw(*x);
  for (std::size_t row = 0; row < n; ++row) {
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) acc += m(row, y) * p[y];
    require(std::abs(acc - p[row]) <= 1e-12, ErrorKind::NotStationary,
            "stationary residual too large");
  }
  return p;
}

bool satisfies_detailed_balance(const TransitionMatrix& m, const Dist& p) {
  const std::size_t n = m.size();
  require(p.size() == n, ErrorKind::LengthMismatch, "distribution length");
  for (std::size_t row = 0; row < n; ++row) {
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) acc += m(row, y) * p[y];
    require(std::abs(acc - p[row]) <= 1e-9, ErrorKind::NotStationary,
            "p is not stationary for M");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (std::abs(m(y, x) * p[x] - m(x, y) * p[y]) > 1e-10) return false;
    }
  }
  return true;
}

EnergyFamily energy_family_from_chain(const MarkovChainSpec& spec, double beta) {
  require(beta > 0.0 && std::isfinite(beta), ErrorKind::NonFiniteScore,
          "beta must be positive");
  for (std::size_t x = 0; x < spec.states(); ++x) {
    require(spec.p0[x] > 0.0, ErrorKind::ZeroInitialMass,
            "p0(" + std::to_string(x) + ") = 0");
  }
  EnergyFamily family;
  family.beta = beta;
  for (const Dist& p : stationary_sequence(spec)) {
    std::vector<double> e(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) e[x] = -std::log(p[x]) / beta;
    family.energies.push_back(std::move(e));
    family.log_z.push_back(0.0);
  }
  return family;
}

EnergyFamily energy_family_from_energies(const MarkovChainSpec& spec, double beta,
                                         std::vector<std::vector<double>> energies) {
  require(beta > 0.0 && std::isfinite(beta), ErrorKind::NonFiniteScore,
          "beta must be positive");
  EnergyFamily family;
  family.beta = beta;
  family.energies = std::move(energies);
  check_energy_shape(spec, family);
  const auto stationary = stationary_sequence(spec);
  for (std::size_t n = 0; n < family.trials(); ++n) {
    double z = 0.0;
    for (double e : family.energies[n]) z += std::exp(-beta * e);
    for (std::size_t x = 0; x < spec.states(); ++x) {
      const double model = std::exp(-beta * family.energies[n][x]) / z;
      require(std::abs(model - stationary[n][x]) <= 1e-9, ErrorKind::NotStationary,
              "energies do not reproduce the stationary distribution at trial " +
                  std::to_string(n));
    }
    family.log_z.push_back(std::log(z));
  }
  return family;
}

double work_of_path(std::span<const std::size_t> path, const EnergyFamily& family) {
  require(path.size() == family.trials(), ErrorKind::BadPathLength,
          "path must have N+1 states");
  double w = 0.0;
  for (std::size_t n = 0; n + 1 < family.trials(); ++n) {
    const std::size_t x = path[n];
    require(x < family.energies[n].size(), ErrorKind::IndexOutOfRange, "state index");
    w += family.energies[n + 1][x] - family.energies[n][x];
  }
  return w;
}

double delta_F(const EnergyFamily& family) {
  return (family.log_z.front() - family.log_z.back()) / family.beta;
}

MarkovChainSpec reverse_chain(const MarkovChainSpec& spec) {
  MarkovChainSpec out{spec.mats.empty() ? spec.p0 : stationary_dist(spec.mats.back()), {}};
  out.mats.assign(spec.mats.rbegin(), spec.mats.rend());
  return out;
}

EnergyFamily reverse_energies(const EnergyFamily& family) {
  // The reverse process starts inside its initial landscape: its stationary
  // sequence is (p_N; p_N, p_{N-1}, ..., p_1), so E_N appears twice and E_0
  // drops off. This keeps the family invariant for the reversed chain and
  // makes the reversed work of a flipped path equal minus the forward work.
  EnergyFamily out;
  out.beta = family.beta;
  out.energies.push_back(family.energies.back());
  out.log_z.push_back(family.log_z.back());
  for (std::size_t n = family.trials(); n-- > 1;) {
    out.energies.push_back(family.energies[n]);
    out.log_z.push_back(family.log_z[n]);
  }
  return out;
}

namespace {

WorkDistribution group_works(std::vector<std::pair<double, double>> raw) {
  std::sort(raw.begin(), raw.end());
  WorkDistribution out;
  for (const auto& [w, prob] : raw) {
    if (!out.support.empty() && w - out.support.back().first <= kWorkGroupTol) {
      auto& [gw, gp] = out.support.back();
      gw = (gw * gp + w * prob) / (gp + prob);  // probability-weighted representative
      gp += prob;
    } else {
      out.support.emplace_back(w, prob);
    }
  }
  return out;
}

void enumerate_paths(const MarkovChainSpec& spec, const EnergyFamily& family,
                     std::vector<std::pair<double, double>>& out) {
  const std::size_t n = spec.states();
  const std::size_t steps = spec.steps();
  double scale = 1.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    scale *= static_cast<double>(n);
    require(scale <= static_cast<double>(kEnumerationCap), ErrorKind::ScaleExceeded,
            "path count exceeds enumeration cap");
  }
  std::vector<std::size_t> path(steps + 1);
  const std::function<void(std::size_t, double, double)> walk = [&](std::size_t depth,
                                                                    double prob, double work) {
    if (prob == 0.0) return;
    if (depth == steps) {
      out.emplace_back(work, prob);
      return;
    }
    const std::size_t here = path[depth];
    const double hop = family.energies[depth + 1][here] - family.energies[depth][here];
    for (std::size_t next = 0; next < n; ++next) {
      path[depth + 1] = next;
      walk(depth + 1, prob * spec.mats[depth](next, here), work + hop);
    }
  };
  for (std::size_t first = 0; first < n; ++first) {
    path[0] = first;
    if (steps == 0) {
      if (spec.p0[first] > 0.0) out.emplace_back(0.0, spec.p0[first]);
    } else {
      walk(0, spec.p0[first], 0.0);
    }
  }
}

}  // namespace

WorkDistribution exact_work_distribution(const MarkovChainSpec& spec,
                                         const EnergyFamily& family, Direction direction) {
  check_energy_shape(spec, family);
  std::vector<std::pair<double, double>> raw;
  if (direction == Direction::Forward) {
    enumerate_paths(spec, family, raw);
  } else {
    enumerate_paths(reverse_chain(spec), reverse_energies(family), raw);
  }
  return group_works(std::move(raw));
}

double jarzynski_exact(const MarkovChainSpec& spec, const EnergyFamily& family) {
  for (std::size_t x = 0; x < spec.states(); ++x) {
    require(spec.p0[x] > 0.0, ErrorKind::HypothesisViolated, "p0 has a zero entry");
  }
  for (const auto& m : spec.mats) {
    require(is_irreducible(m), ErrorKind::HypothesisViolated,
            "a transition matrix is not irreducible");
  }
  const WorkDistribution dist = exact_work_distribution(spec, family, Direction::Forward);
  const double df = delta_F(family);
  double acc = 0.0;
  for (const auto& [w, prob] : dist.support) {
    acc += prob * std::exp(-family.beta * (w - df));
  }
  return acc;
}

CrooksReport crooks_check(const MarkovChainSpec& spec, const EnergyFamily& family) {
  require(spec.steps() >= 1, ErrorKind::HypothesisViolated, "chain has no transitions");
  for (std::size_t x = 0; x < spec.states(); ++x) {
    require(spec.p0[x] > 0.0, ErrorKind::HypothesisViolated, "p0 has a zero entry");
  }
  for (const auto& m : spec.mats) {
    require(is_irreducible(m), ErrorKind::HypothesisViolated,
            "a transition matrix is not irreducible");
    require(satisfies_detailed_balance(m, stationary_dist(m)), ErrorKind::HypothesisViolated,
            "a transition matrix violates detailed balance");
  }
  const Dist p1 = stationary_dist(spec.mats.front());
  for (std::size_t x = 0; x < spec.states(); ++x) {
    require(std::abs(p1[x] - spec.p0[x]) <= 1e-9, ErrorKind::HypothesisViolated,
            "p0 is not the stationary distribution of M_1");
  }
  require(std::abs(family.log_z[0] - family.log_z[1]) <= 1e-9, ErrorKind::HypothesisViolated,
          "the family must give the repeated initial landscape one partition value");

  const WorkDistribution forward = exact_work_distribution(spec, family, Direction::Forward);
  const WorkDistribution backward = exact_work_distribution(spec, family, Direction::Backward);
  const double df = delta_F(family);
  CrooksReport report;
  for (const auto& [w, pf] : forward.support) {
    // Nearest backward point; support entries can sit only a few 1e-9 apart,
    // so first-within-window matching would grab the wrong partner.
    double pb = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [wb, prob] : backward.support) {
      const double gap = std::abs(wb + w);
      if (gap < best) {
        best = gap;
        pb = prob;
      }
    }
    if (best > kWorkGroupTol) pb = 0.0;
    CrooksPoint point;
    point.w = w;
    point.log_ratio = std::log(pf) - std::log(pb);  // -inf marks a missing partner
    point.beta_gap = family.beta * (w - df);
    report.points.push_back(point);
    const double gap = std::abs(point.log_ratio - point.beta_gap);
    report.max_gap = std::max(report.max_gap, gap);
  }
  return report;
}

TransitionMatrix metropolis_matrix(const Dist& target, const TransitionMatrix& proposal) {
  const std::size_t n = target.size();
  require(proposal.size() == n, ErrorKind::LengthMismatch, "proposal size");
  for (std::size_t x = 0; x < n; ++x) {
    require(target[x] > 0.0, ErrorKind::ZeroTargetMass,
            "target(" + std::to_string(x) + ") = 0");
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      require(std::abs(proposal(x, y) - proposal(y, x)) <= 1e-12, ErrorKind::NotStochastic,
              "proposal is not symmetric");
    }
  }
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t y = 0; y < n; ++y) {
    double stay = 1.0;
    for (std::size_t x = 0; x < n; ++x) {
      if (x == y) continue;
      const double accept = std::min(1.0, target[x] / target[y]);
      rows[x][y] = proposal(x, y) * accept;
      stay -= rows[x][y];
    }
    rows[y][y] = stay;
  }
  return TransitionMatrix::from_rows(std::move(rows));
}

std::vector<std::vector<std::size_t>> sample_paths(const MarkovChainSpec& spec,
                                                   std::size_t count, std::uint64_t seed,
                                                   unsigned jobs) {
  require(count >= 1, ErrorKind::EmptySamples, "count must be at least 1");
  const std::size_t n = spec.states();
  // Column-major copies so each step samples from a contiguous distribution.
  std::vector<std::vector<double>> cols(spec.steps(), std::vector<double>(n * n));
  for (std::size_t k = 0; k < spec.steps(); ++k) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) cols[k][y * n + x] = spec.mats[k](x, y);
    }
  }
  std::vector<std::vector<std::size_t>> paths(count);
  run_chunked(count, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Rng rng = Rng::stream(seed, i);
      std::vector<std::size_t> path(spec.steps() + 1);
      path[0] = rng.categorical(spec.p0.probs());
      for (std::size_t k = 0; k < spec.steps(); ++k) {
        const std::span<const double> column(cols[k].data() + path[k] * n, n);
        path[k + 1] = rng.categorical(column);
      }
      paths[i] = std::move(path);
    }
  });
  return paths;
}

double jarzynski_mc(const MarkovChainSpec& spec, const EnergyFamily& family,
                    std::size_t count, std::uint64_t seed, unsigned jobs) {
  check_energy_shape(spec, family);
  const auto paths = sample_paths(spec, count, seed, jobs);
  const double df = delta_F(family);
  std::vector<double> values(count);
  run_chunked(count, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      values[i] = std::exp(-family.beta * (work_of_path(paths[i], family) - df));
    }
  });
  double acc = 0.0;  // fixed-order reduction keeps the result jobs-independent
  for (double v : values) acc += v;
  return acc / static_cast<double>(count);
}

std::pair<double, double> bootstrap_ci(std::span<const double> samples,
                                       std::size_t resamples, double level,
                                       const Statistic& statistic, std::uint64_t seed) {
  require(!samples.empty(), ErrorKind::EmptySamples, "no samples");
  require(level > 0.0 && level < 1.0, ErrorKind::TargetOutOfRange, "level in (0,1)");
  require(resamples >= 1, ErrorKind::EmptySamples, "need at least one resample");
  const std::size_t m = samples.size();
  std::vector<double> stats(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    Rng rng = Rng::stream(seed, r);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double s = samples[rng.below(m)];
      acc += statistic.kind == Statistic::Kind::Mean ? s : std::exp(-statistic.beta * s);
    }
    stats[r] = acc / static_cast<double>(m);
  }
  std::sort(stats.begin(), stats.end());
  const auto quantile = [&](double q) {
    const double h = q * static_cast<double>(resamples - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(resamples - 1, lo + 1);
    const double frac = h - std::floor(h);
    return stats[lo] * (1.0 - frac) + stats[hi] * frac;
  };
  const double tail = (1.0 - level) / 2.0;
  return {quantile(tail), quantile(1.0 - tail)};
}

KdeDensity::KdeDensity(std::vector<double> samples, double bandwidth)
    : samples_(std::move(samples)), bandwidth_(bandwidth) {
  require(samples_.size() >= 2, ErrorKind::TooFewSamples, "kde needs at least 2 samples");
  require(bandwidth_ > 0.0 && std::isfinite(bandwidth_), ErrorKind::TooFewSamples,
          "bandwidth must be positive");
}

double KdeDensity::operator()(double x) const {
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  double acc = 0.0;
  for (double s : samples_) {
    const double z = (x - s) / bandwidth_;
    acc += std::exp(-0.5 * z * z);
  }
  return acc * inv_sqrt_2pi / (bandwidth_ * static_cast<double>(samples_.size()));
}

KdeDensity kde_density(std::span<const double> samples, std::optional<double> bandwidth) {
  require(samples.size() >= 2, ErrorKind::TooFewSamples, "kde needs at least 2 samples");
  double bw;
  if (bandwidth.has_value()) {
    bw = *bandwidth;
  } else {
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double s : samples) var += (s - mean) * (s - mean);
    var /= static_cast<double>(samples.size() - 1);
    bw = 1.06 * std::sqrt(var) * std::pow(static_cast<double>(samples.size()), -0.2);
    bw = std::max(bw, 1e-12);
  }
  return KdeDensity(std::vector<double>(samples.begin(), samples.end()), bw);
}

std::vector<CurvePoint> crooks_mc_curve(std::span<const double> forward_works,
                                        std::span<const double> backward_works, double beta,
                                        double delta_f, std::size_t grid) {
  require(!forward_works.empty() && !backward_works.empty(), ErrorKind::EmptySamples,
          "need forward and backward samples");
  require(grid >= 2, ErrorKind::EmptySamples, "grid needs at least two points");
  const KdeDensity rho_f = kde_density(forward_works);
  const KdeDensity rho_b = kde_density(backward_works);
  const auto [lo_it, hi_it] = std::minmax_element(forward_works.begin(), forward_works.end());
  const double lo = *lo_it, hi = *hi_it;
  std::vector<CurvePoint> out;
  out.reserve(grid);
  for (std::size_t k = 0; k < grid; ++k) {
    const double w = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid - 1);
    CurvePoint point;
    point.w = w;
    point.lhs = std::log(rho_f(w) / rho_b(-w)) / beta;  // may be non-finite off-support
    point.rhs = w - delta_f;
    out.push_back(point);
  }
  return out;
}

LossModel LossModel::mexican_hat(double sigma, std::vector<double> theta) {
  require(sigma > 0.0, ErrorKind::TargetOutOfRange, "sigma must be positive");
  return {Kind::MexicanHat, sigma, std::move(theta)};
}

double loss_energy(const LossModel& model, std::size_t n, double x) {
  require(n < model.theta.size(), ErrorKind::IndexOutOfRange,
          "trial " + std::to_string(n) + " outside the schedule");
  const double theta = model.theta[n];
  if (model.kind == LossModel::Kind::ExpQuadratic) {
    const double d = x - (theta + model.param);
    return 1.0 - std::exp(-d * d);
  }
  const double sigma = model.param;
  const double d = (x - theta) / sigma;
  const double front = 2.0 / (std::sqrt(3.0 * sigma) * std::pow(M_PI, 0.25));
  return front * (1.0 - d * d) * std::exp(-0.5 * d * d);
}

std::vector<double> triangular_schedule(std::size_t trials, double peak) {
  require(trials >= 3, ErrorKind::BadPathLength, "schedule needs at least 3 trials");
  std::vector<double> theta(trials, 0.0);
  for (std::size_t i = 1; i < trials; ++i) {
    const double t = static_cast<double>(i - 1) / static_cast<double>(trials - 2);
    theta[i] = peak * (1.0 - std::abs(2.0 * t - 1.0));
  }
  return theta;
}

Protocol build_protocol(const ProtocolConfig& config) {
  require(config.states >= 2, ErrorKind::ScaleExceeded, "need at least two angle states");
  require(config.loss.theta.size() >= 2, ErrorKind::BadPathLength,
          "schedule needs at least two trials");
  const std::size_t n = config.states;
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    angles[i] = config.angle_lo +
                (config.angle_hi - config.angle_lo) * static_cast<double>(i) /
                    static_cast<double>(n - 1);
  }
  // Symmetric nearest-neighbour random walk with reflecting self-loops.
  std::vector<std::vector<double>> proposal_rows(n, std::vector<double>(n, 0.0));
  for (std::size_t y = 0; y < n; ++y) {
    if (y > 0) proposal_rows[y - 1][y] = 0.5;
    if (y + 1 < n) proposal_rows[y + 1][y] = 0.5;
    proposal_rows[y][y] = 1.0 - (y > 0 ? 0.5 : 0.0) - (y + 1 < n ? 0.5 : 0.0);
  }
  const TransitionMatrix proposal = TransitionMatrix::from_rows(proposal_rows);

  const std::size_t trials = config.loss.theta.size();
  std::vector<std::vector<double>> energies(trials, std::vector<double>(n));
  std::vector<Dist> targets;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<double> negated(n);
    for (std::size_t i = 0; i < n; ++i) {
      energies[t][i] = loss_energy(config.loss, t, angles[i]);
      negated[i] = -energies[t][i];
    }
    targets.push_back(boltzmann(ScoreVector::from_raw(std::move(negated)), config.beta));
  }

  MarkovChainSpec chain{targets.front(), {}};
  for (std::size_t t = 1; t < trials; ++t) {
    chain.mats.push_back(metropolis_matrix(targets[t], proposal));
  }
  EnergyFamily family = energy_family_from_energies(chain, config.beta, std::move(energies));
  return Protocol{std::move(chain), std::move(family), std::move(angles)};
}

std::vector<double> simulate_works(const Protocol& protocol, Direction direction,
                                   std::size_t count, std::uint64_t seed, unsigned jobs) {
  const MarkovChainSpec chain =
      direction == Direction::Forward ? protocol.chain : reverse_chain(protocol.chain);
  const EnergyFamily family =
      direction == Direction::Forward ? protocol.energies : reverse_energies(protocol.energies);
  const auto paths = sample_paths(chain, count, seed, jobs);
  std::vector<double> works(paths.size());
  run_chunked(paths.size(), jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) works[i] = work_of_path(paths[i], family);
  });
  return works;
}

// --- exact-rational lane ---

RatTransitionMatrix rat_matrix(std::size_t n, std::vector<Rational> entries) {
  require(entries.size() == n * n, ErrorKind::NotStochastic, "matrix shape");
  for (const Rational& v : entries) {
    require(v >= 0, ErrorKind::NotStochastic, "entries must be non-negative");
  }
  for (std::size_t y = 0; y < n; ++y) {
    Rational sum = 0;
    for (std::size_t x = 0; x < n; ++x) sum += entries[x * n + y];
    require(sum == 1, ErrorKind::NotStochastic,
            "column " + std::to_string(y) + " does not sum to one");
  }
  return RatTransitionMatrix{n, std::move(entries)};
}

RatDist rat_stationary(const RatTransitionMatrix& m) {
  const std::size_t n = m.n;
  require(strongly_connected(
              n, [&](std::size_t from, std::size_t to) { return m.at(to, from) > 0; }),
          ErrorKind::NotIrreducible, "matrix is not irreducible");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b(n, Rational(0));
  for (std::size_t x = 0; x + 1 < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      a[x][y] = m.at(x, y) - (x == y ? Rational(1) : Rational(0));
    }
  }
  for (std::size_t y = 0; y < n; ++y) a[n - 1][y] = 1;
  b[n - 1] = 1;
  auto x = solve_linear(a, b);
  require(x.has_value(), ErrorKind::NotIrreducible, "singular stationary system");
  return RatDist::from_raw(*x);
}

namespace {

std::vector<RatDist> rat_stationary_sequence(const RatChainSpec& spec) {
  std::vector<RatDist> out = {spec.p0};
  for (const auto& m : spec.mats) out.push_back(rat_stationary(m));
  return out;
}

std::map<Rational, Rational> rat_enumerate(const RatDist& init,
                                           const std::vector<RatTransitionMatrix>& mats,
                                           const std::vector<RatDist>& levels) {
  const std::size_t n = init.size();
  const std::size_t steps = mats.size();
  double scale = 1.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    scale *= static_cast<double>(n);
    require(scale <= static_cast<double>(kEnumerationCap), ErrorKind::ScaleExceeded,
            "path count exceeds enumeration cap");
  }
  std::map<Rational, Rational> acc;
  std::vector<std::size_t> path(steps + 1);
  const std::function<void(std::size_t, Rational, Rational)> walk =
      [&](std::size_t depth, Rational prob, Rational ratio) {
        if (prob == 0) return;
        if (depth == steps) {
          acc[ratio] += prob;
          return;
        }
        const std::size_t here = path[depth];
        const Rational hop = levels[depth][here] / levels[depth + 1][here];
        for (std::size_t next = 0; next < n; ++next) {
          path[depth + 1] = next;
          walk(depth + 1, prob * mats[depth].at(next, here), ratio * hop);
        }
      };
  for (std::size_t first = 0; first < n; ++first) {
    path[0] = first;
    if (steps == 0) {
      if (init[first] > 0) acc[Rational(1)] += init[first];
    } else {
      walk(0, init[first], Rational(1));
    }
  }
  return acc;
}

}  // namespace

RatWorkDistribution exact_work_distribution(const RatChainSpec& spec, Direction direction) {
  const auto levels = rat_stationary_sequence(spec);
  std::map<Rational, Rational> acc;
  if (direction == Direction::Forward) {
    acc = rat_enumerate(spec.p0, spec.mats, levels);
  } else {
    std::vector<RatTransitionMatrix> reversed(spec.mats.rbegin(), spec.mats.rend());
    // Stationary sequence of the reversed chain: p_N twice, then down to p_1.
    std::vector<RatDist> rev_levels = {levels.back()};
    for (std::size_t n = levels.size(); n-- > 1;) rev_levels.push_back(levels[n]);
    acc = rat_enumerate(levels.back(), reversed, rev_levels);
  }
  RatWorkDistribution out;
  for (const auto& [ratio, prob] : acc) out.support.push_back({ratio, prob});
  return out;
}

Rational jarzynski_exact(const RatChainSpec& spec) {
  for (std::size_t x = 0; x < spec.p0.size(); ++x) {
    require(spec.p0[x] > 0, ErrorKind::HypothesisViolated, "p0 has a zero entry");
  }
  const RatWorkDistribution dist = exact_work_distribution(spec, Direction::Forward);
  Rational acc = 0;
  for (const auto& point : dist.support) acc += point.prob / point.ratio;
  return acc;
}

bool crooks_exact_check(const RatChainSpec& spec) {
  require(!spec.mats.empty(), ErrorKind::HypothesisViolated, "chain has no transitions");
  const auto levels = rat_stationary_sequence(spec);
  require(levels[1] == spec.p0, ErrorKind::HypothesisViolated,
          "p0 is not the stationary distribution of M_1");
  for (std::size_t k = 0; k < spec.mats.size(); ++k) {
    const auto& m = spec.mats[k];
    const RatDist& p = levels[k + 1];
    for (std::size_t x = 0; x < m.n; ++x) {
      for (std::size_t y = x + 1; y < m.n; ++y) {
        require(m.at(y, x) * p[x] == m.at(x, y) * p[y], ErrorKind::HypothesisViolated,
                "detailed balance fails at matrix " + std::to_string(k));
      }
    }
  }
  const RatWorkDistribution forward = exact_work_distribution(spec, Direction::Forward);
  const RatWorkDistribution backward = exact_work_distribution(spec, Direction::Backward);
  std::map<Rational, Rational> back;
  for (const auto& point : backward.support) back[point.ratio] = point.prob;
  for (const auto& point : forward.support) {
    const auto partner = back.find(1 / point.ratio);
    if (partner == back.end()) return false;
    if (point.prob != point.ratio * partner->second) return false;
  }
  return true;
}

}  // namespace ordlab::fluct
