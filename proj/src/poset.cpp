#include "ordlab/poset.hpp"

#include <algorithm>
#include <bitset>
#include <cmath>
#include <limits>
#include <numeric>

namespace ordlab::poset {

namespace {

constexpr std::size_t kMaxOrientationBits = 128;
using PairMask = std::bitset<kMaxOrientationBits>;

void check_family_shape(std::size_t n, const RealFamily& family) {
  for (const auto& f : family) {
    require(f.size() == n, ErrorKind::LengthMismatch, "family function has wrong length");
  }
}

}  // namespace

FinitePreorder FinitePreorder::from_relation(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  BinaryRelation rel = BinaryRelation::empty(n);
  for (std::size_t i = 0; i < n; ++i) rel.set(i, i);
  for (const auto& [a, b] : pairs) {
    require(a < n && b < n, ErrorKind::IndexOutOfRange,
            "pair (" + std::to_string(a) + "," + std::to_string(b) + ") with n = " +
                std::to_string(n));
    rel.set(a, b);
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel.at(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (rel.at(k, j)) rel.set(i, j);
      }
    }
  }
  return FinitePreorder(std::move(rel));
}

FinitePreorder FinitePreorder::from_closed_relation(BinaryRelation rel) {
  const std::size_t n = rel.n;
  require(rel.bits.size() == n * n, ErrorKind::ParseError, "relation shape mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    require(rel.at(i, i), ErrorKind::ParseError, "relation is not reflexive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel.at(i, j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (rel.at(j, k)) {
          require(rel.at(i, k), ErrorKind::ParseError, "relation is not transitive");
        }
      }
    }
  }
  return FinitePreorder(std::move(rel));
}

FinitePreorder FinitePreorder::chain(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return from_relation(n, pairs);
}

FinitePreorder FinitePreorder::antichain(std::size_t n) { return from_relation(n, {}); }

FinitePreorder FinitePreorder::v_poset() { return from_relation(3, {{0, 2}, {1, 2}}); }

FinitePreorder FinitePreorder::standard_example_3() {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) pairs.emplace_back(i, 3 + j);
    }
  }
  return from_relation(6, pairs);
}

FinitePreorder FinitePreorder::counterexample_poset() {
  return from_relation(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
}

FinitePreorder FinitePreorder::reciprocal_pair_poset() {
  const auto family = reciprocal_pair_multi_utility();
  BinaryRelation rel = BinaryRelation::empty(6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      const bool below = family[0][i] <= family[0][j] && family[1][i] <= family[1][j];
      rel.set(i, j, below);
    }
  }
  return from_closed_relation(rel);
}

std::vector<std::vector<double>> reciprocal_pair_multi_utility() {
  const std::vector<double> values = {-1.0, -2.0, -3.0, 1.0, 2.0, 3.0};
  std::vector<double> reciprocal(6);
  for (std::size_t i = 0; i < 6; ++i) reciprocal[i] = 1.0 / values[i];
  return {values, reciprocal};
}

bool FinitePreorder::is_antisymmetric() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (leq(i, j) && leq(j, i)) return false;
    }
  }
  return true;
}

bool FinitePreorder::is_total() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (!leq(i, j) && !leq(j, i)) return false;
    }
  }
  return true;
}

FinitePreorder FinitePreorder::quotient(std::vector<std::size_t>* class_of) const {
  const std::size_t n = size();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != n) continue;
    cls[i] = reps.size();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (equivalent(i, j)) cls[j] = reps.size();
    }
    reps.push_back(i);
  }
  BinaryRelation rel = BinaryRelation::empty(reps.size());
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = 0; b < reps.size(); ++b) {
      rel.set(a, b, leq(reps[a], reps[b]));
    }
  }
  if (class_of != nullptr) *class_of = std::move(cls);
  return FinitePreorder(std::move(rel));
}

MonotoneFlags classify_monotone(const FinitePreorder& p, const std::vector<double>& f) {
  require(f.size() == p.size(), ErrorKind::LengthMismatch, "function length");
  MonotoneFlags flags;
  flags.monotone = true;
  for (std::size_t i = 0; i < p.size() && flags.monotone; ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p.leq(i, j) && !(f[i] <= f[j])) {
        flags.monotone = false;
        break;
      }
    }
  }
  if (!flags.monotone) return flags;
  flags.strict_monotone = true;
  flags.injective_monotone = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p.strict(i, j) && !(f[i] < f[j])) flags.strict_monotone = false;
      if (i != j && f[i] == f[j] && !p.equivalent(i, j)) flags.injective_monotone = false;
    }
  }
  return flags;
}

bool is_multi_utility(const FinitePreorder& p, const RealFamily& family) {
  check_family_shape(p.size(), family);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      bool all_leq = true;
      for (const auto& f : family) all_leq = all_leq && f[i] <= f[j];
      if (all_leq != p.leq(i, j)) return false;
    }
  }
  return true;
}

bool is_strict_monotone_multi_utility(const FinitePreorder& p, const RealFamily& family) {
  if (!is_multi_utility(p, family)) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      bool all_less = true;
      for (const auto& f : family) all_less = all_less && f[i] < f[j];
      if (all_less != p.strict(i, j)) return false;
    }
  }
  return true;
}

bool is_thermo_representation(const FinitePreorder& p, const RealFamily& conserved,
                              const std::vector<double>& entropy) {
  check_family_shape(p.size(), conserved);
  require(entropy.size() == p.size(), ErrorKind::LengthMismatch, "entropy length");
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      bool ties = true;
      for (const auto& g : conserved) ties = ties && g[i] == g[j];
      const bool related = ties && entropy[i] <= entropy[j];
      if (related != p.leq(i, j)) return false;
    }
  }
  return true;
}

RealFamily thermo_to_multi_utility(const FinitePreorder& p, const RealFamily& conserved,
                                   const std::vector<double>& entropy) {
  require(is_thermo_representation(p, conserved, entropy), ErrorKind::NotARepresentation,
          "the pair (G, s) does not represent the order");
  RealFamily out;
  for (const auto& g : conserved) out.push_back(g);
  for (const auto& g : conserved) {
    std::vector<double> neg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
    out.push_back(std::move(neg));
  }
  out.push_back(entropy);
  return out;
}

ThermoSearchResult find_thermo_representation(const FinitePreorder& p) {
  const std::size_t n = p.size();
  require(n <= 4, ErrorKind::ScaleExceeded, "thermo search supports n <= 4");
  // One conserved function is enough for any countable representation, and
  // only the value patterns matter: search g, s over {0..n-1}^n.
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;
  std::vector<double> g(n), s(n);
  for (std::size_t gi = 0; gi < total; ++gi) {
    std::size_t acc = gi;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = static_cast<double>(acc % n);
      acc /= n;
    }
    for (std::size_t si = 0; si < total; ++si) {
      acc = si;
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = static_cast<double>(acc % n);
        acc /= n;
      }
      if (is_thermo_representation(p, {g}, s)) {
        return {true, {g}, s};
      }
    }
  }
  return {false, {}, {}};
}

bool increasing_family_valid(const FinitePreorder& p, const IncreasingSetFamily& family) {
  const std::size_t n = p.size();
  for (const auto& set : family) {
    std::vector<char> member(n, 0);
    for (std::size_t x : set) {
      require(x < n, ErrorKind::IndexOutOfRange, "set element " + std::to_string(x));
      member[x] = 1;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (!member[x]) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (p.leq(x, y) && !member[y]) return false;
      }
    }
  }
  return true;
}

std::vector<double> monotone_from_increasing_sets(const FinitePreorder& p,
                                                  const IncreasingSetFamily& family,
                                                  double r) {
  require(r > 0.0 && r < 0.5, ErrorKind::RadixOutOfRange,
          "r must lie in (0, 1/2), got " + std::to_string(r));
  std::vector<double> f(p.size(), 0.0);
  double weight = 1.0;
  for (const auto& set : family) {
    for (std::size_t x : set) {
      require(x < p.size(), ErrorKind::IndexOutOfRange, "set element " + std::to_string(x));
      f[x] += weight;
    }
    weight *= r;
  }
  return f;
}

bool separation_check(const FinitePreorder& p, const IncreasingSetFamily& family,
                      SeparationMode mode) {
  const std::size_t n = p.size();
  std::vector<std::vector<char>> member(family.size(), std::vector<char>(n, 0));
  for (std::size_t k = 0; k < family.size(); ++k) {
    for (std::size_t x : family[k]) {
      require(x < n, ErrorKind::IndexOutOfRange, "set element " + std::to_string(x));
      member[k][x] = 1;
    }
  }
  const auto separates = [&](std::size_t x, std::size_t y) {
    for (std::size_t k = 0; k < family.size(); ++k) {
      if (!member[k][x] && member[k][y]) return true;
    }
    return false;
  };
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (p.strict(x, y) && !separates(x, y)) return false;
      if (x < y && p.incomparable(x, y)) {
        switch (mode) {
          case SeparationMode::MultiUtility:
            if (!(separates(x, y) && separates(y, x))) return false;
            break;
          case SeparationMode::Strict:
            break;
          case SeparationMode::Injective:
            if (!(separates(x, y) || separates(y, x))) return false;
            break;
        }
      }
    }
  }
  return true;
}

bool density_check(const FinitePreorder& p, const std::vector<std::size_t>& dense_set,
                   DensityMode mode) {
  for (std::size_t z : dense_set) {
    require(z < p.size(), ErrorKind::IndexOutOfRange, "dense-set element");
  }
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      bool needed = false;
      bool served = false;
      switch (mode) {
        case DensityMode::OrderDense:
          needed = p.strict(x, y);
          for (std::size_t z : dense_set) served = served || (p.strict(x, z) && p.strict(z, y));
          break;
        case DensityMode::DebreuDense:
          needed = p.strict(x, y);
          for (std::size_t z : dense_set) served = served || (p.leq(x, z) && p.leq(z, y));
          break;
        case DensityMode::UpperDense:
          needed = p.incomparable(x, y);
          for (std::size_t z : dense_set)
            served = served || (p.incomparable(x, z) && p.strict(z, y));
          break;
        case DensityMode::DebreuUpperDense:
          needed = p.incomparable(x, y);
          for (std::size_t z : dense_set)
            served = served || (p.incomparable(x, z) && p.leq(z, y));
          break;
      }
      if (needed && !served) return false;
    }
  }
  return true;
}

bool is_conditionally_connected(const FinitePreorder& p) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = x + 1; y < p.size(); ++y) {
      if (!p.incomparable(x, y)) continue;
      for (std::size_t z = 0; z < p.size(); ++z) {
        if (p.leq(x, z) && p.leq(y, z)) return false;
      }
    }
  }
  return true;
}

std::vector<std::size_t> linear_extension_by_monotone(const FinitePreorder& p,
                                                      const std::vector<double>& u) {
  const std::size_t n = p.size();
  require(u.size() == n, ErrorKind::LengthMismatch, "monotone length");
  require(p.is_antisymmetric(), ErrorKind::NotAntisymmetric,
          "linear extensions need a partial order");
  const auto flags = classify_monotone(p, u);
  require(flags.monotone, ErrorKind::NotMonotone, "u is not a monotone of the order");

  // Hard constraints: the order itself plus u-strict orientations of
  // incomparable pairs. Acyclic because u never decreases along the order
  // and strictly increases across the added arcs.
  BinaryRelation hard = BinaryRelation::empty(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p.strict(i, j) || (p.incomparable(i, j) && u[i] < u[j])) hard.set(i, j);
    }
  }
  // Kahn with deterministic choice: smallest (u, index) among available.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (hard.at(i, j)) ++indegree[j];
    }
  }
  std::vector<std::size_t> out;
  std::vector<char> placed(n, 0);
  while (out.size() < n) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i] || indegree[i] != 0) continue;
      if (best == n || u[i] < u[best]) best = i;
    }
    require(best != n, ErrorKind::NotMonotone, "constraint graph has a cycle");
    placed[best] = 1;
    out.push_back(best);
    for (std::size_t j = 0; j < n; ++j) {
      if (hard.at(best, j)) --indegree[j];
    }
  }
  return out;
}

BinaryRelation limit_of_relations(const std::vector<BinaryRelation>& sequence) {
  require(!sequence.empty(), ErrorKind::EmptySequence, "no relations given");
  const std::size_t n = sequence.front().n;
  for (const auto& rel : sequence) {
    require(rel.n == n, ErrorKind::LengthMismatch, "relation sizes differ");
  }
  // Union over suffix starts of the suffix intersections.
  BinaryRelation suffix = sequence.back();
  BinaryRelation out = suffix;
  for (std::size_t i = sequence.size(); i-- > 0;) {
    for (std::size_t b = 0; b < n * n; ++b) {
      suffix.bits[b] = suffix.bits[b] && sequence[i].bits[b];
      out.bits[b] = out.bits[b] || suffix.bits[b];
    }
  }
  return out;
}

namespace {

bool is_permutation_of_all(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<char> seen(n, 0);
  for (std::size_t x : perm) {
    if (x >= n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::vector<std::size_t> positions_of(const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> pos(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = k;
  return pos;
}

}  // namespace

bool realizer_is_valid(const FinitePreorder& p, const Realizer& realizer) {
  const std::size_t n = p.size();
  if (realizer.extensions.empty()) return false;
  std::vector<std::vector<std::size_t>> pos;
  for (const auto& ext : realizer.extensions) {
    if (!is_permutation_of_all(ext, n)) return false;
    pos.push_back(positions_of(ext));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool all_before = true;
      for (const auto& q : pos) all_before = all_before && q[i] < q[j];
      if (all_before != p.leq(i, j)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> all_linear_extensions(const FinitePreorder& p,
                                                            std::size_t cap) {
  require(p.is_antisymmetric(), ErrorKind::NotAntisymmetric,
          "linear extensions need a partial order");
  const std::size_t n = p.size();
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::vector<char> placed(n, 0);
  // Backtracking in ascending-index order yields lexicographic output.
  auto extend = [&](auto&& self) -> void {
    if (current.size() == n) {
      require(out.size() < cap, ErrorKind::ScaleExceeded,
              "more than " + std::to_string(cap) + " linear extensions");
      out.push_back(current);
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (placed[x]) continue;
      bool ready = true;
      for (std::size_t y = 0; y < n && ready; ++y) {
        ready = placed[y] || y == x || !p.strict(y, x);
      }
      if (!ready) continue;
      placed[x] = 1;
      current.push_back(x);
      self(self);
      current.pop_back();
      placed[x] = 0;
    }
  };
  extend(extend);
  return out;
}

namespace {

struct DimensionSearch {
  std::vector<PairMask> coverage;       // deduped orientation masks
  std::vector<std::size_t> sample_ext;  // representative extension per mask
  PairMask full;
  std::size_t pair_count = 0;

  bool cover(PairMask covered, std::size_t slots, std::vector<std::size_t>* chosen) const {
    if (covered == full) return true;
    if (slots == 0) return false;
    // Branch on the uncovered orientation with the fewest candidate masks.
    std::size_t best_bit = kMaxOrientationBits;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t bit = 0; bit < pair_count; ++bit) {
      if (covered[bit]) continue;
      std::size_t count = 0;
      for (const auto& mask : coverage) count += mask[bit] ? 1 : 0;
      if (count < best_count) {
        best_count = count;
        best_bit = bit;
      }
    }
    if (best_bit == kMaxOrientationBits || best_count == 0) return false;
    for (std::size_t m = 0; m < coverage.size(); ++m) {
      if (!coverage[m][best_bit]) continue;
      if (chosen != nullptr) chosen->push_back(m);
      if (cover(covered | coverage[m], slots - 1, chosen)) return true;
      if (chosen != nullptr) chosen->pop_back();
    }
    return false;
  }
};

DimensionSearch build_dimension_search(const FinitePreorder& q) {
  const std::size_t n = q.size();
  DimensionSearch search;
  std::vector<std::pair<std::size_t, std::size_t>> oriented;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && q.incomparable(i, j)) oriented.emplace_back(i, j);
    }
  }
  require(oriented.size() <= kMaxOrientationBits, ErrorKind::ScaleExceeded,
          "too many incomparable pairs");
  search.pair_count = oriented.size();
  for (std::size_t bit = 0; bit < oriented.size(); ++bit) search.full.set(bit);

  const auto extensions = all_linear_extensions(q);
  std::vector<PairMask> seen;
  for (std::size_t e = 0; e < extensions.size(); ++e) {
    const auto pos = positions_of(extensions[e]);
    PairMask mask;
    for (std::size_t bit = 0; bit < oriented.size(); ++bit) {
      if (pos[oriented[bit].first] < pos[oriented[bit].second]) mask.set(bit);
    }
    if (std::find(seen.begin(), seen.end(), mask) == seen.end()) {
      seen.push_back(mask);
      search.coverage.push_back(mask);
      search.sample_ext.push_back(e);
    }
  }
  return search;
}

}  // namespace

std::optional<std::size_t> dm_dimension(const FinitePreorder& p, std::size_t max_k) {
  const FinitePreorder q = p.quotient();
  require(q.size() <= kDimensionMaxElements, ErrorKind::ScaleExceeded,
          "dimension search supports n <= " + std::to_string(kDimensionMaxElements));
  if (q.is_total()) return max_k >= 1 ? std::optional<std::size_t>(1) : std::nullopt;
  const DimensionSearch search = build_dimension_search(q);
  for (std::size_t k = 2; k <= max_k; ++k) {
    if (search.cover(PairMask(), k, nullptr)) return k;
  }
  return std::nullopt;
}

std::optional<Realizer> minimal_realizer(const FinitePreorder& p, std::size_t max_k) {
  require(p.is_antisymmetric(), ErrorKind::NotAntisymmetric,
          "realizers are built for partial orders");
  require(p.size() <= kDimensionMaxElements, ErrorKind::ScaleExceeded,
          "dimension search supports n <= " + std::to_string(kDimensionMaxElements));
  const auto extensions = all_linear_extensions(p);
  if (p.is_total()) {
    if (max_k < 1) return std::nullopt;
    return Realizer{{extensions.front()}};
  }
  const DimensionSearch search = build_dimension_search(p);
  for (std::size_t k = 2; k <= max_k; ++k) {
    std::vector<std::size_t> chosen;
    if (search.cover(PairMask(), k, &chosen)) {
      Realizer realizer;
      for (std::size_t m : chosen) realizer.extensions.push_back(extensions[search.sample_ext[m]]);
      return realizer;
    }
  }
  return std::nullopt;
}

RealFamily multi_utility_from_realizer(const FinitePreorder& p, const Realizer& realizer) {
  require(realizer_is_valid(p, realizer), ErrorKind::InvalidRealizer,
          "extensions do not realize the order");
  RealFamily out;
  for (const auto& ext : realizer.extensions) {
    const auto pos = positions_of(ext);
    std::vector<double> rank(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) rank[i] = static_cast<double>(pos[i]);
    out.push_back(std::move(rank));
  }
  return out;
}

bool optimization_principle_check(const FinitePreorder& p, const std::vector<double>& f) {
  const std::size_t n = p.size();
  require(f.size() == n, ErrorKind::LengthMismatch, "function length");
  require(n <= kOptimizationMaxElements, ErrorKind::ScaleExceeded,
          "subset sweep supports n <= " + std::to_string(kOptimizationMaxElements));
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) best = std::max(best, f[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1U) || f[i] != best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (((mask >> j) & 1U) && p.strict(i, j)) return false;
      }
    }
  }
  return true;
}

std::vector<std::size_t> maximal_elements(const FinitePreorder& p,
                                          const std::vector<std::size_t>& subset) {
  require(!subset.empty(), ErrorKind::EmptySubset, "subset is empty");
  for (std::size_t x : subset) {
    require(x < p.size(), ErrorKind::IndexOutOfRange, "subset element");
  }
  std::vector<std::size_t> out;
  for (std::size_t x : subset) {
    bool maximal = true;
    for (std::size_t y : subset) maximal = maximal && !p.strict(x, y);
    if (maximal) out.push_back(x);
  }
  return out;
}

std::vector<FinitePreorder> all_posets(std::size_t n) {
  require(n <= 5, ErrorKind::ScaleExceeded, "poset sweep supports n <= 5");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<FinitePreorder> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    BinaryRelation rel = BinaryRelation::empty(n);
    for (std::size_t i = 0; i < n; ++i) rel.set(i, i);
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if ((mask >> b) & 1U) rel.set(slots[b].first, slots[b].second);
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (i != j && rel.at(i, j) && rel.at(j, i)) ok = false;  // antisymmetry
        if (!rel.at(i, j)) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (rel.at(j, k) && !rel.at(i, k)) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok) out.push_back(FinitePreorder::from_closed_relation(rel));
  }
  return out;
}

}  // namespace ordlab::poset
