#include "ordlab/dist.hpp"

#include <cmath>

#include "doctest.h"
#include "ordlab/rng.hpp"

using namespace ordlab;

TEST_CASE("new_dist validation") {
  CHECK(Dist::from_raw({0.5, 0.5}).size() == 2);
  CHECK_THROWS_AS(Dist::from_raw({0.5, 0.6}), Error);
  CHECK_THROWS_AS(Dist::from_raw({-0.1, 1.1}), Error);
  CHECK_THROWS_AS(Dist::from_raw({}), Error);

  const Dist p = Dist::from_raw({2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0});
  CHECK(p[0] == doctest::Approx(2.0 / 3.0));

  // 1e-9 slack at parse time, rescaled internally.
  const Dist q = Dist::from_raw({0.5 + 4e-10, 0.5});
  double sum = 0.0;
  for (double v : q.probs()) sum += v;
  CHECK(std::abs(sum - 1.0) <= kInternalNormTol);
}

TEST_CASE("exact distributions") {
  const RatDist p = RatDist::from_raw({Rational(2, 3), Rational(1, 6), Rational(1, 6)});
  CHECK(p[0] == Rational(2, 3));
  CHECK_THROWS_AS(RatDist::from_raw({Rational(1, 2), Rational(1, 3)}), Error);
  CHECK_THROWS_AS(RatDist::from_raw({Rational(-1, 2), Rational(3, 2)}), Error);
}

TEST_CASE("sorted_desc") {
  const auto s = sorted_desc(Dist::from_raw({0.1, 0.7, 0.2})).probs();
  CHECK(s[0] == doctest::Approx(0.7));
  CHECK(s[1] == doctest::Approx(0.2));
  CHECK(s[2] == doctest::Approx(0.1));
  const Dist u = Dist::uniform(4);
  CHECK(sorted_desc(u).probs() == u.probs());
  CHECK(sorted_desc(Dist::from_raw({1.0 / 6, 2.0 / 3, 1.0 / 6})).probs()[0] ==
        doctest::Approx(2.0 / 3));
}

TEST_CASE("partial_sum_utilities") {
  const auto u = partial_sum_utilities(Dist::from_raw({0.5, 0.25, 0.25}));
  REQUIRE(u.size() == 2);
  CHECK(u[0] == doctest::Approx(-0.5));
  CHECK(u[1] == doctest::Approx(-0.75));

  const auto v = partial_sum_utilities(Dist::uniform(3));
  CHECK(v[0] == doctest::Approx(-1.0 / 3));
  CHECK(v[1] == doctest::Approx(-2.0 / 3));

  const auto w = partial_sum_utilities(Dist::point_mass(3, 0));
  CHECK(w[0] == doctest::Approx(-1.0));
  CHECK(w[1] == doctest::Approx(-1.0));
}

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy(Dist::point_mass(2, 0)) == doctest::Approx(0.0));
  CHECK(shannon_entropy(Dist::uniform(2)) == doctest::Approx(std::log(2.0)));
  CHECK(shannon_entropy(Dist::from_raw({0.5, 0.25, 0.25})) ==
        doctest::Approx(1.039721).epsilon(1e-6));
}

TEST_CASE("entropy bounds and permutation invariance") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    std::vector<double> raw(n);
    double sum = 0.0;
    for (double& x : raw) {
      x = rng.uniform01() + 1e-12;
      sum += x;
    }
    for (double& x : raw) x /= sum;
    const Dist p = Dist::from_raw(raw);
    const double h = shannon_entropy(p);
    CHECK(h >= 0.0);
    CHECK(h <= std::log(static_cast<double>(n)) + 1e-12);
    CHECK(shannon_entropy(sorted_desc(p)) == doctest::Approx(h).epsilon(1e-12));
    const auto u = partial_sum_utilities(p);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) CHECK(u[i] >= u[i + 1] - 1e-12);
    CHECK((u.empty() || u.back() >= -1.0 - 1e-12));
  }
}

TEST_CASE("boltzmann") {
  const Dist p = boltzmann(ScoreVector::from_raw({1.0, 0.0}), std::log(2.0));
  CHECK(p[0] == doctest::Approx(2.0 / 3));
  CHECK(p[1] == doctest::Approx(1.0 / 3));

  const Dist q = boltzmann(ScoreVector::from_raw({3.0, -1.0, 0.4}), 0.0);
  for (double v : q.probs()) CHECK(v == doctest::Approx(1.0 / 3));

  const Dist r = boltzmann(ScoreVector::from_raw({0.0, 0.0, 0.0}), 5.0);
  for (double v : r.probs()) CHECK(v == doctest::Approx(1.0 / 3));

  // Max-shift keeps large scores finite.
  const Dist s = boltzmann(ScoreVector::from_raw({4000.0, 3999.0}), 1.0);
  CHECK(std::isfinite(s[0]));
  CHECK(s[0] == doctest::Approx(std::exp(1.0) / (1.0 + std::exp(1.0))));

  CHECK_THROWS_AS(ScoreVector::from_raw({1.0, std::nan("")}), Error);
}

TEST_CASE("boltzmann maximizes beta E[U] + H on a simplex grid") {
  const ScoreVector utility = ScoreVector::from_raw({1.0, -1.0, 0.25});
  const double beta = 0.8;
  const Dist star = boltzmann(utility, beta);
  double star_value = beta * (star[0] * utility[0] + star[1] * utility[1] +
                              star[2] * utility[2]) +
                      shannon_entropy(star);
  const int grid = 140;  // ~10^4 simplex points
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j + i <= grid; ++j) {
      const double a = static_cast<double>(i) / grid;
      const double b = static_cast<double>(j) / grid;
      const double c = std::max(0.0, 1.0 - a - b);
      const Dist p = Dist::from_raw({a, b, c});
      const double value =
          beta * (a * utility[0] + b * utility[1] + c * utility[2]) + shannon_entropy(p);
      CHECK(value <= star_value + 1e-6);
    }
  }
}

TEST_CASE("rational parsing and snapping") {
  CHECK(rational_from_string("2/3") == Rational(2, 3));
  CHECK(rational_from_string("-5") == Rational(-5));
  CHECK(rational_from_string("0.25") == Rational(1, 4));
  CHECK_THROWS_AS(rational_from_string("1/0"), Error);

  CHECK(*snap_to_rational(1.0 / 3.0) == Rational(1, 3));
  CHECK(*snap_to_rational(0.6666666666666666) == Rational(2, 3));
  CHECK(!snap_to_rational(std::sqrt(2.0)).has_value());

  const RatDist d = snap_dist(Dist::from_raw({2.0 / 3, 1.0 / 6, 1.0 / 6}));
  CHECK(d[0] == Rational(2, 3));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(snap_dist(Dist::from_raw({inv_sqrt2, 1.0 - inv_sqrt2})), Error);
}
