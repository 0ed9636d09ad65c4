#include "ordlab/poset.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ordlab/dist.hpp"
#include "ordlab/majorization.hpp"
#include "ordlab/rng.hpp"

using namespace ordlab;
using namespace ordlab::poset;

namespace {

FinitePreorder random_poset(Rng& rng, std::size_t n, std::size_t arcs) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < arcs; ++k) {
    const std::size_t a = rng.below(n);
    const std::size_t b = rng.below(n);
    if (a < b) pairs.emplace_back(a, b);  // acyclic by index orientation
  }
  return FinitePreorder::from_relation(n, pairs);
}

}  // namespace

TEST_CASE("from_relation closure") {
  const auto chain = FinitePreorder::from_relation(3, {{0, 1}, {1, 2}});
  CHECK(chain.leq(0, 2));
  CHECK(!chain.leq(2, 0));
  CHECK(chain.is_total());

  const auto pair = FinitePreorder::from_relation(2, {});
  CHECK(pair.incomparable(0, 1));

  CHECK_THROWS_AS(FinitePreorder::from_relation(2, {{0, 5}}), Error);
}

TEST_CASE("counterexample poset matches its |x|,sgn definition") {
  // Labels 0..5 stand for -1,-2,-3,1,2,3.
  const auto p = FinitePreorder::counterexample_poset();
  const double value[6] = {-1, -2, -3, 1, 2, 3};
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const bool expect = std::abs(value[i]) <= std::abs(value[j]) &&
                          (value[i] > 0 ? 1 : -1) <= (value[j] > 0 ? 1 : -1);
      CHECK(p.leq(i, j) == expect);
    }
  }
  // Cross links filled in by transitivity.
  CHECK(p.leq(0, 4));
  CHECK(p.leq(0, 5));
  CHECK(p.leq(1, 5));
  CHECK(p.incomparable(3, 1));
}

TEST_CASE("from_relation output is always reflexive and transitive") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(6);
    const auto p = random_poset(rng, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(p.leq(i, i));
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (p.leq(i, j) && p.leq(j, k)) CHECK(p.leq(i, k));
        }
      }
    }
  }
}

TEST_CASE("classify_monotone") {
  const auto chain = FinitePreorder::chain(3);
  const auto all = classify_monotone(chain, {0, 1, 2});
  CHECK(all.monotone);
  CHECK(all.strict_monotone);
  CHECK(all.injective_monotone);

  const auto flat = classify_monotone(FinitePreorder::antichain(2), {0, 0});
  CHECK(flat.monotone);
  CHECK(!flat.injective_monotone);

  const auto rec = FinitePreorder::reciprocal_pair_poset();
  const auto id = classify_monotone(rec, reciprocal_pair_multi_utility()[0]);
  CHECK(id.monotone);
  CHECK(id.strict_monotone);

  const auto bad = classify_monotone(chain, {1, 0, 2});
  CHECK(!bad.monotone);
}

TEST_CASE("is_multi_utility") {
  CHECK(is_multi_utility(FinitePreorder::chain(3), {{0, 1, 2}}));
  CHECK(is_multi_utility(FinitePreorder::reciprocal_pair_poset(),
                         reciprocal_pair_multi_utility()));
  // One injective function cannot encode incomparability.
  CHECK(!is_multi_utility(FinitePreorder::antichain(2), {{0, 1}}));
}

TEST_CASE("is_strict_monotone_multi_utility") {
  CHECK(is_strict_monotone_multi_utility(FinitePreorder::chain(3), {{0, 1, 2}}));
  CHECK(is_strict_monotone_multi_utility(FinitePreorder::reciprocal_pair_poset(),
                                         reciprocal_pair_multi_utility()));

  // Majorization candidates ordered by <=_M, ranked by top-i sums alone:
  // the (1/2,1/4,1/4) vs (1/2,1/2,0) tie on s_1 breaks strictness.
  const std::vector<Dist> candidates = {
      Dist::uniform(3),
      Dist::from_raw({0.5, 0.25, 0.25}),
      Dist::from_raw({0.5, 0.5, 0.0}),
      Dist::from_raw({2.0 / 3, 1.0 / 6, 1.0 / 6}),
      Dist::from_raw({0.8, 0.1, 0.1}),
      Dist::point_mass(3, 0),
  };
  BinaryRelation rel = BinaryRelation::empty(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      rel.set(i, j, majo::majorized_by(candidates[i], candidates[j]));
    }
  }
  const auto order = FinitePreorder::from_closed_relation(rel);
  RealFamily sums(2);
  for (const Dist& d : candidates) {
    const auto s = top_sums(d);
    sums[0].push_back(s[0]);
    sums[1].push_back(s[1]);
  }
  CHECK(is_multi_utility(order, sums));
  CHECK(!is_strict_monotone_multi_utility(order, sums));
}

TEST_CASE("thermo representations") {
  // Two disjoint 2-chains: conserved component id, entropy = rank in chain.
  const auto two_chains = FinitePreorder::from_relation(4, {{0, 1}, {2, 3}});
  const RealFamily conserved = {{0, 0, 1, 1}};
  const std::vector<double> entropy = {0, 1, 0, 1};
  CHECK(is_thermo_representation(two_chains, conserved, entropy));

  // Incomparable pair with empty G can never be represented.
  CHECK(!is_thermo_representation(FinitePreorder::antichain(2), {}, {0, 0}));
  CHECK(!is_thermo_representation(FinitePreorder::antichain(2), {}, {0, 1}));

  // V poset: two elements under a common upper bound but incomparable.
  CHECK(!find_thermo_representation(FinitePreorder::v_poset()).exists);

  const auto family = thermo_to_multi_utility(two_chains, conserved, entropy);
  CHECK(family.size() == 3);
  CHECK(is_multi_utility(two_chains, family));

  // Total order: entropy alone is the whole representation.
  const auto total = FinitePreorder::chain(4);
  CHECK(is_thermo_representation(total, {}, {0, 1, 2, 3}));
  CHECK(thermo_to_multi_utility(total, {}, {0, 1, 2, 3}).size() == 1);

  CHECK_THROWS_AS(thermo_to_multi_utility(FinitePreorder::antichain(2), {}, {0, 0}), Error);
}

TEST_CASE("thermo representation existence implies conditional connectedness") {
  for (const auto& p : all_posets(4)) {
    const auto found = find_thermo_representation(p);
    if (found.exists) {
      CHECK(is_thermo_representation(p, found.conserved, found.entropy));
      CHECK(is_conditionally_connected(p));
    }
  }
}

TEST_CASE("monotone_from_increasing_sets") {
  const auto anti = FinitePreorder::antichain(3);
  const IncreasingSetFamily separating = {{0}, {1}, {2}};
  const auto f = monotone_from_increasing_sets(anti, separating, 0.25);
  const auto flags = classify_monotone(anti, f);
  CHECK(flags.injective_monotone);

  const auto whole = monotone_from_increasing_sets(anti, {{0, 1, 2}}, 0.25);
  CHECK(whole[0] == whole[1]);
  CHECK(whole[1] == whole[2]);

  const auto chain = FinitePreorder::chain(3);
  const IncreasingSetFamily upsets = {{0, 1, 2}, {1, 2}, {2}};
  CHECK(increasing_family_valid(chain, upsets));
  const auto g = monotone_from_increasing_sets(chain, upsets, 0.25);
  CHECK(g[0] < g[1]);
  CHECK(g[1] < g[2]);

  CHECK_THROWS_AS(monotone_from_increasing_sets(anti, separating, 0.75), Error);
}

TEST_CASE("separation implies injectivity of the built monotone") {
  Rng rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const auto p = random_poset(rng, n, n);
    // Principal filters (up-sets of every element).
    IncreasingSetFamily family;
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<std::size_t> up;
      for (std::size_t y = 0; y < n; ++y) {
        if (p.leq(x, y)) up.push_back(y);
      }
      family.push_back(up);
    }
    CHECK(increasing_family_valid(p, family));
    CHECK(separation_check(p, family, SeparationMode::MultiUtility));
    if (separation_check(p, family, SeparationMode::Injective)) {
      const auto f = monotone_from_increasing_sets(p, family, 0.25);
      CHECK(classify_monotone(p, f).injective_monotone);
    }
  }
}

TEST_CASE("separation_check modes") {
  CHECK(!separation_check(FinitePreorder::chain(2), {}, SeparationMode::Strict));

  // Sampled [0,1] u [2,3] construction: elements 0..3 are 0.1,0.4,0.6,0.9
  // and 4..7 their +2 partners; (x+2) below y iff x < y.
  std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 1}, {1, 2}, {2, 3}};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i < j) pairs.emplace_back(4 + i, j);
    }
  }
  const auto p = FinitePreorder::from_relation(8, pairs);
  // One A_x per bottom element (x+2 inside, x outside) plus the chain
  // up-sets that separate the strict pairs.
  const IncreasingSetFamily witnesses = {{4, 1, 2, 3}, {5, 2, 3}, {6, 3}, {7}};
  IncreasingSetFamily family = witnesses;
  family.insert(family.end(), {{0, 1, 2, 3}, {1, 2, 3}, {2, 3}, {3}});
  CHECK(increasing_family_valid(p, family));
  CHECK(separation_check(p, family, SeparationMode::Injective));
  // The incomparability witnesses are necessarily pairwise distinct: with
  // x < y, A_x is increasing so y lands inside it while y stays outside
  // A_y. One set per sampled point is forced.
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    for (std::size_t j = i + 1; j < witnesses.size(); ++j) {
      CHECK(witnesses[i] != witnesses[j]);
    }
  }
}

TEST_CASE("density_check") {
  const auto chain = FinitePreorder::chain(3);
  std::vector<std::size_t> all = {0, 1, 2};
  CHECK(density_check(chain, all, DensityMode::DebreuDense));
  CHECK(density_check(FinitePreorder::antichain(3), {0, 1, 2}, DensityMode::DebreuDense));
  CHECK(density_check(chain, {1}, DensityMode::DebreuDense));
  CHECK(!density_check(FinitePreorder::antichain(2), {}, DensityMode::DebreuUpperDense));
  CHECK(!density_check(chain, {1}, DensityMode::OrderDense));  // adjacent pair 0 < 1
}

TEST_CASE("is_conditionally_connected") {
  CHECK(is_conditionally_connected(FinitePreorder::chain(5)));
  CHECK(!is_conditionally_connected(FinitePreorder::v_poset()));
  CHECK(is_conditionally_connected(FinitePreorder::antichain(3)));
}

TEST_CASE("linear_extension_by_monotone") {
  const auto order = linear_extension_by_monotone(FinitePreorder::antichain(3), {2, 0, 1});
  CHECK(order == std::vector<std::size_t>{1, 2, 0});

  const auto chain = FinitePreorder::chain(4);
  CHECK(linear_extension_by_monotone(chain, {0, 0, 0, 0}) ==
        std::vector<std::size_t>{0, 1, 2, 3});

  const auto rec = FinitePreorder::reciprocal_pair_poset();
  const auto u1 = reciprocal_pair_multi_utility()[0];
  const auto ext = linear_extension_by_monotone(rec, u1);
  CHECK(realizer_is_valid(FinitePreorder::chain(1), Realizer{{{0}}}));
  // -z (element 2) comes before x (element 3): u1(-z) < u1(x).
  const auto pos_of = [&](std::size_t e) {
    return std::find(ext.begin(), ext.end(), e) - ext.begin();
  };
  CHECK(pos_of(2) < pos_of(3));
  // Extension property against the base order.
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      if (rec.strict(i, j)) CHECK(pos_of(i) < pos_of(j));
    }
  }

  CHECK_THROWS_AS(linear_extension_by_monotone(chain, {3, 2, 1, 0}), Error);
}

TEST_CASE("limit_of_relations") {
  const auto a = FinitePreorder::chain(3).relation();
  const auto b = FinitePreorder::antichain(3).relation();
  CHECK(limit_of_relations({a, a, a}) == a);

  // Finite suffix semantics: the last relation always qualifies.
  CHECK(limit_of_relations({a, b, a, b}) == b);

  // A genuinely alternating infinite tail would settle on the intersection.
  BinaryRelation both = BinaryRelation::empty(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      both.set(i, j, a.at(i, j) && b.at(i, j));
    }
  }
  CHECK(limit_of_relations({a, b, both}) == both);

  // Increasing chain of extensions: the union is the last element.
  const auto c1 = FinitePreorder::from_relation(3, {{0, 1}}).relation();
  const auto c2 = FinitePreorder::from_relation(3, {{0, 1}, {1, 2}}).relation();
  CHECK(limit_of_relations({b, c1, c2}) == c2);

  CHECK_THROWS_AS(limit_of_relations({}), Error);
}

TEST_CASE("realizer_is_valid") {
  const auto chain = FinitePreorder::chain(3);
  CHECK(realizer_is_valid(chain, Realizer{{{0, 1, 2}}}));
  CHECK(!realizer_is_valid(chain, Realizer{{{2, 1, 0}}}));

  const auto anti = FinitePreorder::antichain(2);
  CHECK(realizer_is_valid(anti, Realizer{{{0, 1}, {1, 0}}}));
  CHECK(!realizer_is_valid(anti, Realizer{{{0, 1}}}));

  const auto rec = FinitePreorder::reciprocal_pair_poset();
  const auto family = reciprocal_pair_multi_utility();
  const Realizer realizer{{linear_extension_by_monotone(rec, family[0]),
                           linear_extension_by_monotone(rec, family[1])}};
  CHECK(realizer_is_valid(rec, realizer));
}

TEST_CASE("dm_dimension") {
  for (std::size_t k = 1; k <= 8; ++k) {
    CHECK(dm_dimension(FinitePreorder::chain(k)) == 1);
  }
  CHECK(dm_dimension(FinitePreorder::antichain(3)) == 2);
  CHECK(dm_dimension(FinitePreorder::standard_example_3()) == 3);
  CHECK(dm_dimension(FinitePreorder::counterexample_poset()) == 2);
  CHECK(dm_dimension(FinitePreorder::reciprocal_pair_poset()) == 2);
  CHECK(!dm_dimension(FinitePreorder::standard_example_3(), 2).has_value());
}

TEST_CASE("dm_dimension is one exactly for total orders") {
  for (const auto& p : all_posets(4)) {
    CHECK((dm_dimension(p) == 1) == p.is_total());
  }
}

TEST_CASE("multi_utility_from_realizer") {
  const auto chain = FinitePreorder::chain(3);
  CHECK(multi_utility_from_realizer(chain, Realizer{{{0, 1, 2}}}).size() == 1);

  const auto anti = FinitePreorder::antichain(2);
  const Realizer r2{{{0, 1}, {1, 0}}};
  const auto fam2 = multi_utility_from_realizer(anti, r2);
  CHECK(fam2.size() == 2);
  CHECK(is_multi_utility(anti, fam2));

  const auto s3 = FinitePreorder::standard_example_3();
  const auto min3 = minimal_realizer(s3);
  REQUIRE(min3.has_value());
  CHECK(min3->extensions.size() == 3);
  const auto fam3 = multi_utility_from_realizer(s3, *min3);
  CHECK(is_multi_utility(s3, fam3));

  CHECK_THROWS_AS(multi_utility_from_realizer(anti, Realizer{{{0, 1}}}), Error);
}

TEST_CASE("every valid realizer yields a multi-utility") {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    const auto p = random_poset(rng, n, n);
    const auto realizer = minimal_realizer(p, 4);
    if (!realizer.has_value()) continue;
    CHECK(realizer_is_valid(p, *realizer));
    CHECK(is_multi_utility(p, multi_utility_from_realizer(p, *realizer)));
  }
}

TEST_CASE("optimization_principle_check") {
  CHECK(optimization_principle_check(FinitePreorder::chain(4), {0, 1, 2, 3}));

  // A strict monotone always passes; ranks from a linear extension are one.
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const auto p = random_poset(rng, n, n);
    const auto ext = all_linear_extensions(p).front();
    std::vector<double> rank(n);
    for (std::size_t k = 0; k < n; ++k) rank[ext[k]] = static_cast<double>(k);
    CHECK(classify_monotone(p, rank).strict_monotone);
    CHECK(optimization_principle_check(p, rank));
  }

  // A tie across a strict pair fails on the witness subset.
  CHECK(!optimization_principle_check(FinitePreorder::chain(2), {1, 1}));
}

TEST_CASE("maximal_elements") {
  const auto chain = FinitePreorder::chain(4);
  CHECK(maximal_elements(chain, {0, 1, 2, 3}) == std::vector<std::size_t>{3});
  CHECK(maximal_elements(FinitePreorder::antichain(3), {0, 1, 2}) ==
        std::vector<std::size_t>{0, 1, 2});
  // {-x, x, -y} in the counterexample poset: -x sits under both others.
  CHECK(maximal_elements(FinitePreorder::counterexample_poset(), {0, 3, 1}) ==
        std::vector<std::size_t>{3, 1});
  CHECK_THROWS_AS(maximal_elements(chain, {}), Error);
}

TEST_CASE("all_posets counts") {
  CHECK(all_posets(1).size() == 1);
  CHECK(all_posets(2).size() == 3);
  CHECK(all_posets(3).size() == 19);
  CHECK(all_posets(4).size() == 219);
}
