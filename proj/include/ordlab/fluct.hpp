#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ordlab/dist.hpp"

namespace ordlab::fluct {

/// Column-stochastic matrix: entry(x, y) = P(next = x | prev = y), so every
/// column is a distribution.
class TransitionMatrix {
 public:
  static TransitionMatrix from_rows(std::vector<std::vector<double>> rows);
  static TransitionMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t x, std::size_t y) const { return a_[x * n_ + y]; }

 private:
  TransitionMatrix(std::size_t n, std::vector<double> a) : n_(n), a_(std::move(a)) {}
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Initial distribution plus N transition matrices.
struct MarkovChainSpec {
  Dist p0;
  std::vector<TransitionMatrix> mats;

  std::size_t states() const { return p0.size(); }
  std::size_t steps() const { return mats.size(); }
};

/// Unique stationary distribution of an irreducible matrix (null space of
/// M - I, normalized; residual <= 1e-12).
Dist stationary_dist(const TransitionMatrix& m);

/// Strong connectivity of the positive-entry digraph.
bool is_irreducible(const TransitionMatrix& m);

/// |M_yx p(x) - M_xy p(y)| <= 1e-10 for all pairs; p must be stationary.
bool satisfies_detailed_balance(const TransitionMatrix& m, const Dist& p);

/// beta with energies E_0..E_N and their log partition values; the family
/// reproduces the chain's stationary distributions by construction or by
/// validation.
struct EnergyFamily {
  double beta = 1.0;
  std::vector<std::vector<double>> energies;
  std::vector<double> log_z;

  std::size_t trials() const { return energies.size(); }
};

/// Z_n = 1 gauge: E_n = -(1/beta) log p_n with p_n the stationary
/// distribution of M_n (p_0 for n = 0).
EnergyFamily energy_family_from_chain(const MarkovChainSpec& spec, double beta);

/// Validates user-supplied energies against the chain's stationary
/// distributions (within 1e-9) and records the partition values.
EnergyFamily energy_family_from_energies(const MarkovChainSpec& spec, double beta,
                                         std::vector<std::vector<double>> energies);

double work_of_path(std::span<const std::size_t> path, const EnergyFamily& family);

/// (1/beta)(log Z_0 - log Z_N); zero in the Z = 1 gauge.
double delta_F(const EnergyFamily& family);

/// Initial distribution p_N with the matrices replayed in reverse order.
MarkovChainSpec reverse_chain(const MarkovChainSpec& spec);
EnergyFamily reverse_energies(const EnergyFamily& family);

struct WorkDistribution {
  std::vector<std::pair<double, double>> support;  // (work value, probability), ascending
};

enum class Direction { Forward, Backward };

inline constexpr double kWorkGroupTol = 1e-9;
inline constexpr std::size_t kEnumerationCap = 10000000;

/// Full path enumeration (n^(N+1) <= 1e7); work values grouped within 1e-9.
WorkDistribution exact_work_distribution(const MarkovChainSpec& spec,
                                         const EnergyFamily& family, Direction direction);

/// Sum of e^{-beta (w - dF)} over the forward work distribution; equals one
/// whenever p0 is strictly positive and all matrices are irreducible.
double jarzynski_exact(const MarkovChainSpec& spec, const EnergyFamily& family);

struct CrooksPoint {
  double w = 0.0;
  double log_ratio = 0.0;  // log P^F(w) - log P^B(-w)
  double beta_gap = 0.0;   // beta (w - dF)
};
struct CrooksReport {
  std::vector<CrooksPoint> points;
  double max_gap = 0.0;
};

/// Per-support-point comparison of log P^F(w) - log P^B(-w) against
/// beta (w - dF). Requires p_1 = p_0 and detailed balance throughout.
CrooksReport crooks_check(const MarkovChainSpec& spec, const EnergyFamily& family);

/// Metropolis-Hastings acceptance on a symmetric proposal; the target is
/// stationary and detailed balance holds by construction.
TransitionMatrix metropolis_matrix(const Dist& target, const TransitionMatrix& proposal);

/// i.i.d. path samples; stream-split per path index, so results do not
/// depend on the worker count.
std::vector<std::vector<std::size_t>> sample_paths(const MarkovChainSpec& spec,
                                                   std::size_t count, std::uint64_t seed,
                                                   unsigned jobs = 1);

/// Monte Carlo mean of e^{-beta (W - dF)} over sampled paths.
double jarzynski_mc(const MarkovChainSpec& spec, const EnergyFamily& family,
                    std::size_t count, std::uint64_t seed, unsigned jobs = 1);

struct Statistic {
  enum class Kind { Mean, MeanExpNeg } kind = Kind::Mean;
  double beta = 1.0;

  static Statistic mean() { return {Kind::Mean, 0.0}; }
  static Statistic mean_exp_neg(double beta) { return {Kind::MeanExpNeg, beta}; }
};

/// Percentile interval (type-7 quantiles) of the statistic over
/// with-replacement resamples; deterministic per seed.
std::pair<double, double> bootstrap_ci(std::span<const double> samples,
                                       std::size_t resamples, double level,
                                       const Statistic& statistic, std::uint64_t seed);

/// Gaussian-kernel mixture density.
class KdeDensity {
 public:
  KdeDensity(std::vector<double> samples, double bandwidth);
  double operator()(double x) const;
  double bandwidth() const { return bandwidth_; }

 private:
  std::vector<double> samples_;
  double bandwidth_ = 1.0;
};

/// Bandwidth defaults to Silverman's rule 1.06 sigma m^(-1/5).
KdeDensity kde_density(std::span<const double> samples,
                       std::optional<double> bandwidth = std::nullopt);

struct CurvePoint {
  double w = 0.0;
  double lhs = 0.0;  // (1/beta) log(rho_F(w) / rho_B(-w))
  double rhs = 0.0;  // w - dF
};

/// KDE-based check of the work relation on a uniform grid spanning the
/// forward sample range; empty-overlap ratios come back non-finite.
std::vector<CurvePoint> crooks_mc_curve(std::span<const double> forward_works,
                                        std::span<const double> backward_works, double beta,
                                        double delta_f, std::size_t grid);

/// Sensorimotor loss at trial n and angle x.
struct LossModel {
  enum class Kind { ExpQuadratic, MexicanHat } kind = Kind::ExpQuadratic;
  double param = 0.0;  // bias b, or width sigma
  std::vector<double> theta;

  static LossModel exp_quadratic(double bias, std::vector<double> theta) {
    return {Kind::ExpQuadratic, bias, std::move(theta)};
  }
  static LossModel mexican_hat(double sigma, std::vector<double> theta);
};

double loss_energy(const LossModel& model, std::size_t n, double x);

/// Triangular rotation schedule: flat start (so p_1 = p_0), linear rise to
/// peak at the midpoint, linear return to zero.
std::vector<double> triangular_schedule(std::size_t trials, double peak);

struct ProtocolConfig {
  LossModel loss;
  double beta = 1.0;
  std::size_t states = 13;
  double angle_lo = -12.0;
  double angle_hi = 12.0;
};

struct Protocol {
  MarkovChainSpec chain;
  EnergyFamily energies;
  std::vector<double> angles;
};

/// Metropolis chain over a discretized angle grid whose trialwise targets
/// are the Boltzmann distributions of the loss schedule.
Protocol build_protocol(const ProtocolConfig& config);

/// Work values of sampled paths (forward or of the reverse process).
std::vector<double> simulate_works(const Protocol& protocol, Direction direction,
                                   std::size_t count, std::uint64_t seed, unsigned jobs = 1);

// --- exact-rational lane ---

struct RatTransitionMatrix {
  std::size_t n = 0;
  std::vector<Rational> a;  // row-major, columns sum to one exactly

  const Rational& at(std::size_t x, std::size_t y) const { return a[x * n + y]; }
};

struct RatChainSpec {
  RatDist p0;
  std::vector<RatTransitionMatrix> mats;
};

RatTransitionMatrix rat_matrix(std::size_t n, std::vector<Rational> entries);
RatDist rat_stationary(const RatTransitionMatrix& m);

/// Work value keyed exactly: in the Z = 1 gauge every path work equals
/// (1/beta) log(ratio) with a rational ratio of stationary probabilities, so
/// grouping, the w <-> -w pairing, and e^{-beta w} = 1/ratio are exact.
struct RatWorkPoint {
  Rational ratio;
  Rational prob;
};
struct RatWorkDistribution {
  std::vector<RatWorkPoint> support;
};

RatWorkDistribution exact_work_distribution(const RatChainSpec& spec, Direction direction);

/// Exact rational value of E[e^{-beta (W - dF)}]; the theorem makes it 1.
Rational jarzynski_exact(const RatChainSpec& spec);

/// Exact Crooks identity P^F(ratio) = ratio * P^B(1/ratio) on every
/// forward support point.
bool crooks_exact_check(const RatChainSpec& spec);

}  // namespace ordlab::fluct
