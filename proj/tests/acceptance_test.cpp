// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. The CLI binary path comes from argv[1] (determinism runs).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ordlab/domain.hpp"
#include "ordlab/fluct.hpp"
#include "ordlab/majorization.hpp"
#include "ordlab/maxent.hpp"
#include "ordlab/poset.hpp"
#include "ordlab/rng.hpp"

using namespace ordlab;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string label)
      : number_(number), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string& detail) {
    if (!ok) {
      ok_ = false;
      details_.push_back(detail);
    }
  }

  void expect_runtime_below(double seconds) {
    const double elapsed = elapsed_seconds();
    expect(elapsed < seconds,
           "runtime " + std::to_string(elapsed) + "s exceeds " + std::to_string(seconds) + "s");
  }

  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  ~Criterion() {
    std::printf("%s  criterion %2d: %s (%.2fs)\n", ok_ ? "PASS" : "FAIL", number_,
                label_.c_str(), elapsed_seconds());
    for (const auto& detail : details_) std::printf("      - %s\n", detail.c_str());
    if (!ok_) ++failures;
  }

 private:
  int number_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
  std::vector<std::string> details_;
};

Dist random_positive_dist(Rng& rng, std::size_t n) {
  std::vector<double> raw(n);
  double sum = 0.0;
  for (double& x : raw) {
    x = 0.05 + rng.uniform01();
    sum += x;
  }
  for (double& x : raw) x /= sum;
  return Dist::from_raw(raw);
}

fluct::TransitionMatrix random_stochastic(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t y = 0; y < n; ++y) {
    double sum = 0.0;
    std::vector<double> col(n);
    for (double& v : col) {
      v = 0.05 + rng.uniform01();
      sum += v;
    }
    for (std::size_t x = 0; x < n; ++x) rows[x][y] = col[x] / sum;
  }
  return fluct::TransitionMatrix::from_rows(rows);
}

fluct::TransitionMatrix random_symmetric_proposal(Rng& rng, std::size_t n) {
  const double b = 0.2 + 0.6 * rng.uniform01();
  const double c = (1.0 - b) * rng.uniform01();
  const double a = 1.0 - b - c;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.below(i + 1)]);
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, b / n));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] += a;
    rows[perm[i]][i] += c / 2.0;
    rows[i][perm[i]] += c / 2.0;
  }
  return fluct::TransitionMatrix::from_rows(rows);
}

RatDist random_rat_dist(Rng& rng, std::size_t n, unsigned denominator) {
  std::vector<Rational> raw(n, Rational(0));
  for (unsigned k = 0; k < denominator; ++k) raw[rng.below(n)] += Rational(1, denominator);
  return RatDist::from_raw(raw);
}

void criterion_1_jarzynski() {
  Criterion c(1, "Jarzynski exactness on 200 seeded random chains");
  Rng rng(1001);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const std::size_t steps = 1 + rng.below(5);
    fluct::MarkovChainSpec chain{random_positive_dist(rng, n), {}};
    for (std::size_t k = 0; k < steps; ++k) chain.mats.push_back(random_stochastic(rng, n));
    const double beta = 0.5 + rng.uniform01();
    const double value = fluct::jarzynski_exact(chain, fluct::energy_family_from_chain(chain, beta));
    c.expect(std::abs(value - 1.0) <= 1e-10,
             "trial " + std::to_string(trial) + ": value " + std::to_string(value));
  }
  c.expect_runtime_below(10.0);
}

void criterion_2_crooks() {
  Criterion c(2, "Crooks exactness: hand example + 100 Metropolis chains");
  const auto rank_one = [](double top) {
    return fluct::TransitionMatrix::from_rows({{top, top}, {1.0 - top, 1.0 - top}});
  };
  fluct::MarkovChainSpec hand{Dist::uniform(2), {rank_one(0.5), rank_one(2.0 / 3.0)}};
  const auto hand_report = fluct::crooks_check(hand, fluct::energy_family_from_chain(hand, 1.0));
  c.expect(hand_report.max_gap <= 1e-10, "hand-derived example gap");
  c.expect(hand_report.points.size() == 2, "hand-derived support size");

  Rng rng(1002);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const std::size_t steps = 1 + rng.below(3);
    fluct::MarkovChainSpec chain{Dist::uniform(n), {}};
    for (std::size_t k = 0; k < steps; ++k) {
      chain.mats.push_back(
          fluct::metropolis_matrix(random_positive_dist(rng, n), random_symmetric_proposal(rng, n)));
    }
    chain.p0 = fluct::stationary_dist(chain.mats[0]);
    const auto report = fluct::crooks_check(chain, fluct::energy_family_from_chain(chain, 1.0));
    c.expect(report.max_gap <= 1e-10,
             "trial " + std::to_string(trial) + ": gap " + std::to_string(report.max_gap));
  }
  c.expect_runtime_below(10.0);
}

void criterion_3_calibration() {
  Criterion c(3, "bootstrap calibration: 99% CI covers 1 in >= 95/100 runs");
  const fluct::ProtocolConfig config{
      fluct::LossModel::exp_quadratic(0.0, fluct::triangular_schedule(26, 8.0)), 1.0, 13,
      -12.0, 12.0};
  const auto protocol = fluct::build_protocol(config);
  int contains = 0;
  std::vector<double> widths;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto works = fluct::simulate_works(protocol, fluct::Direction::Forward, 20, seed);
    const auto ci =
        fluct::bootstrap_ci(works, 1000, 0.99, fluct::Statistic::mean_exp_neg(1.0), seed);
    if (ci.first <= 1.0 && 1.0 <= ci.second) ++contains;
    widths.push_back(ci.second - ci.first);
  }
  c.expect(contains >= 95, "coverage " + std::to_string(contains) + "/100");
  std::sort(widths.begin(), widths.end());
  const double median = widths[widths.size() / 2];
  // Same order of magnitude as the reference interval (0.48, 1.64).
  const double reference = 1.64 - 0.48;
  c.expect(median >= reference / 10.0 && median <= reference * 10.0,
           "median CI width " + std::to_string(median));
}

void criterion_4_maxent_counterexample() {
  Criterion c(4, "maximal non-Boltzmann point on the <E> = 1/4 slice");
  const ScoreVector energy = ScoreVector::from_raw({1.0, -1.0, 0.0});
  const Dist p = Dist::from_raw({0.5, 0.25, 0.25});
  const Dist q = Dist::from_raw({0.45, 0.20, 0.35});
  c.expect(std::abs(shannon_entropy(p) - 1.039721) <= 1e-6, "H(p)");
  c.expect(std::abs(shannon_entropy(q) - 1.048654) <= 1e-6, "H(q)");
  const auto maximal = maxent::maximal_on_segment(energy, 0.25, 3001);
  bool p_found = false;
  for (const Dist& m : maximal) {
    bool close = true;
    for (std::size_t i = 0; i < 3; ++i) close = close && std::abs(m[i] - p[i]) <= 5e-4;
    p_found = p_found || close;
  }
  c.expect(p_found, "p = (1/2, 1/4, 1/4) not reported maximal");
  c.expect_runtime_below(1.0);
}

void criterion_5_uncountable_truncation() {
  Criterion c(5, "maximal set of the slice is the lambda window [1, 5/3]");
  const ScoreVector energy = ScoreVector::from_raw({1.0, -1.0, 0.0});
  const auto maximal = maxent::maximal_on_segment(energy, 0.25, 3001);
  double lo = 10.0, hi = -10.0;
  for (const Dist& m : maximal) {
    const double lambda = 4.0 * m[2];
    lo = std::min(lo, lambda);
    hi = std::max(hi, lambda);
  }
  c.expect(std::abs(lo - 1.0) <= 1e-3, "lower endpoint " + std::to_string(lo));
  c.expect(std::abs(hi - 5.0 / 3.0) <= 1e-3, "upper endpoint " + std::to_string(hi));
  c.expect_runtime_below(1.0);
}

void criterion_6_maxent_solver() {
  Criterion c(6, "maxent solver closed form at target 1/4");
  const auto solution = maxent::solve_maxent({ScoreVector::from_raw({1.0, -1.0, 0.0}), 0.25});
  c.expect(std::abs(solution.beta - (-0.38415)) <= 1e-4, "beta " + std::to_string(solution.beta));
  c.expect(std::abs(solution.p[0] - 0.46624) <= 1e-5, "p*[0]");
  c.expect(std::abs(solution.p[1] - 0.21624) <= 1e-5, "p*[1]");
  c.expect(std::abs(solution.p[2] - 0.31752) <= 1e-5, "p*[2]");
  const double lambda = 4.0 * solution.p[2];
  c.expect(lambda > 1.0 && lambda < 5.0 / 3.0,
           "lambda(p*) = " + std::to_string(lambda) + " outside (1, 5/3)");
  c.expect(std::abs(lambda - 1.27008) <= 1e-4, "lambda(p*) vs 1.27008");
}

void criterion_7_oracle_equivalence() {
  Criterion c(7, "d-majorization oracle equals the embedding route");
  Rng rng(1007);
  int checked = 0;
  while (checked < 500) {
    const std::size_t n = 2 + rng.below(3);
    const RatDist p = random_rat_dist(rng, n, 8);
    const RatDist q = random_rat_dist(rng, n, 8);
    const RatDist d = random_rat_dist(rng, n, 8);
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) positive = positive && d[i] > 0;
    if (!positive) continue;
    const bool via_embedding = majo::d_majorization_leq(p, q, d);
    const bool via_oracle = majo::d_majorization_oracle(p, q, d);
    c.expect(via_embedding == via_oracle, "disagreement at instance " + std::to_string(checked));
    ++checked;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const RatDist p = random_rat_dist(rng, n, 8);
    const RatDist q = random_rat_dist(rng, n, 8);
    c.expect(majo::d_majorization_leq(p, q, RatDist::uniform(n)) == majo::majorized_by(p, q),
             "uniform-d mode disagrees with majorization at trial " + std::to_string(trial));
  }
}

void criterion_8_dimensions() {
  Criterion c(8, "brute-force Dushnik-Miller dimensions");
  for (std::size_t k = 1; k <= 8; ++k) {
    c.expect(poset::dm_dimension(poset::FinitePreorder::chain(k)) == 1,
             "chain_" + std::to_string(k));
  }
  c.expect(poset::dm_dimension(poset::FinitePreorder::antichain(3)) == 2, "antichain_3");
  c.expect(poset::dm_dimension(poset::FinitePreorder::standard_example_3()) == 3, "S_3");
  c.expect(poset::dm_dimension(poset::FinitePreorder::counterexample_poset()) == 2,
           "six-point counterexample");
  // The {u_1, u_2} = {w, 1/w} pair is a strict monotone multi-utility of the
  // six-point order those functions define (two antichains, negatives below
  // positives), which also has dimension 2.
  const auto reciprocal = poset::FinitePreorder::reciprocal_pair_poset();
  c.expect(poset::is_strict_monotone_multi_utility(reciprocal,
                                                   poset::reciprocal_pair_multi_utility()),
           "{u_1, u_2} strict monotone multi-utility");
  c.expect(poset::dm_dimension(reciprocal) == 2, "reciprocal-pair order dimension");
  c.expect_runtime_below(60.0);
}

void criterion_9_second_laws() {
  Criterion c(9, "second-laws families: falsifier and corrected family");
  std::vector<majo::ScalarFn> top_family = {
      [](const Dist& p) { return top_sums(p)[0]; },
      [](const Dist& p) { return top_sums(p)[1]; },
  };
  const std::vector<std::pair<Dist, Dist>> witness = {
      {Dist::from_raw({0.5, 0.25, 0.25}), Dist::from_raw({0.5, 0.5, 0.0})}};
  const auto rejected = majo::check_second_laws_family(top_family, witness, majo::Order::m());
  c.expect(!rejected.ok(), "top-i-sum family was not rejected");
  c.expect(!rejected.violations.empty() && rejected.violations[0].clause == 2,
           "witness should violate clause (ii)");

  Rng rng(1009);
  const auto corrected = majo::ui_plus_rh_family(3, majo::positive_rationals(20));
  std::vector<std::pair<Dist, Dist>> pairs;
  while (pairs.size() < 500) {
    const Dist a = random_positive_dist(rng, 3);
    const Dist b = random_positive_dist(rng, 3);
    if (majo::uncertainty_leq(a, b)) {
      pairs.emplace_back(a, b);
    } else if (majo::uncertainty_leq(b, a)) {
      pairs.emplace_back(b, a);
    }
  }
  c.expect(majo::check_second_laws_family(corrected, pairs, majo::Order::u()).ok(),
           "u_i + rH family violated on comparable pairs");

  std::vector<majo::ScalarFn> entropy_family = {
      [](const Dist& p) { return shannon_entropy(p); }};
  std::vector<std::pair<Dist, Dist>> two_pairs;
  for (int trial = 0; trial < 200; ++trial) {
    two_pairs.emplace_back(random_positive_dist(rng, 2), random_positive_dist(rng, 2));
  }
  c.expect(majo::check_second_laws_family(entropy_family, two_pairs, majo::Order::u()).ok(),
           "entropy alone violated for two outcomes");
}

void criterion_10_bisection() {
  Criterion c(10, "exact bisection of x^2 - 2 at eps = 2^-20");
  const domain::RatPolynomial poly{{Rational(-2), Rational(0), Rational(1)}};
  const Rational eps(1, 1 << 20);
  const auto trace = domain::bisection_run(poly, Rational(1), Rational(2), eps);
  c.expect(trace.size() == 21, "expected exactly 20 halvings, got " +
                                   std::to_string(trace.size() - 1));
  for (std::size_t k = 0; k < trace.size(); ++k) {
    c.expect(trace[k].hi - trace[k].lo == Rational(1, BigInt(1) << k),
             "width at step " + std::to_string(k));
    c.expect(poly.eval(trace[k].lo) < 0 && poly.eval(trace[k].hi) > 0,
             "root left the bracket at step " + std::to_string(k));
  }
}

void criterion_11_domain_sweep() {
  Criterion c(11, "domain coherence sweep over all posets on <= 4 elements");
  for (const auto& p : poset::all_posets(4)) {
    const auto d = domain::FiniteDcpo::from_order(p);
    c.expect(domain::order_from_opens_check(d), "order-from-opens failed");
    bool way_below_ok = true;
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t y = 0; y < p.size(); ++y) {
        way_below_ok = way_below_ok && domain::finite_way_below(d, x, y) == p.leq(x, y);
      }
    }
    c.expect(way_below_ok, "finite way-below differs from the order");
    c.expect(domain::compact_elements(d).size() == p.size(), "compact elements not all");
    const auto thermo = poset::find_thermo_representation(p);
    if (thermo.exists) {
      c.expect(poset::is_thermo_representation(p, thermo.conserved, thermo.entropy),
               "witness fails the thermo check");
      c.expect(poset::is_conditionally_connected(p),
               "thermo representation on a non-conditionally-connected poset");
    }
  }
  c.expect_runtime_below(30.0);
}

void criterion_12_determinism(const std::string& binary) {
  Criterion c(12, "byte-identical CLI output across repeated seeded runs");
  if (binary.empty()) {
    c.expect(false, "no CLI binary path given");
    return;
  }
  const std::string dir = "acceptance_tmp";
  const int mkdir_rc = std::system(("mkdir -p " + dir).c_str());
  c.expect(mkdir_rc == 0, "cannot create scratch directory");
  {
    std::ofstream(dir + "/p.json") << "[\"5/6\", \"0\", \"1/6\"]";
    std::ofstream(dir + "/q.json") << "[\"2/3\", \"1/6\", \"1/6\"]";
    std::ofstream(dir + "/e.json") << "[1, -1, 0]";
    std::ofstream(dir + "/chain.json")
        << R"({"p0": ["1/2", "1/2"], "mats": [[["1/2","1/2"],["1/2","1/2"]], [["2/3","2/3"],["1/3","1/3"]]]})";
    std::ofstream(dir + "/poset.json")
        << R"({"n": 6, "pairs": [[0,1],[1,2],[3,4],[4,5],[0,3],[1,4],[2,5]]})";
  }
  const std::vector<std::string> matrix = {
      " majo compare --order u " + dir + "/p.json " + dir + "/q.json",
      " majo transfer-path " + dir + "/p.json " + dir + "/q.json",
      " maxent solve --E " + dir + "/e.json --target 0.25",
      " maxent maximal-segment --E " + dir + "/e.json --target 0.25 --grid 501 --emit csv",
      " fluct jarzynski --exact " + dir + "/chain.json",
      " fluct jarzynski --mc --count 2000 --seed 7 " + dir + "/chain.json",
      " fluct crooks --exact " + dir + "/chain.json --emit csv",
      " fluct simulate --trials 14 --peak 4 --states 7 --cycles 20 --seed 3",
      " poset dim " + dir + "/poset.json",
      " domain bisect --poly \"[-2,0,1]\" --lo 1 --hi 2 --eps 1/1024",
  };
  const auto capture = [&](const std::string& args, const std::string& out) {
    const std::string command = binary + args + " > " + out + " 2>/dev/null";
    return std::system(command.c_str());
  };
  for (std::size_t k = 0; k < matrix.size(); ++k) {
    const std::string out_a = dir + "/a.out", out_b = dir + "/b.out";
    const int rc_a = capture(matrix[k], out_a);
    const int rc_b = capture(matrix[k], out_b);
    c.expect(rc_a == 0 && rc_b == 0, "invocation " + std::to_string(k) + " failed");
    std::ifstream fa(out_a), fb(out_b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    c.expect(sa.str() == sb.str() && !sa.str().empty(),
             "output differs for invocation " + std::to_string(k));
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  criterion_1_jarzynski();
  criterion_2_crooks();
  criterion_3_calibration();
  criterion_4_maxent_counterexample();
  criterion_5_uncountable_truncation();
  criterion_6_maxent_solver();
  criterion_7_oracle_equivalence();
  criterion_8_dimensions();
  criterion_9_second_laws();
  criterion_10_bisection();
  criterion_11_domain_sweep();
  criterion_12_determinism(binary);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
