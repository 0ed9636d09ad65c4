#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordlab/error.hpp"

namespace ordlab::poset {

/// Raw n x n boolean relation; bit(i, j) means (i, j) is related.
struct BinaryRelation {
  std::size_t n = 0;
  std::vector<char> bits;

  static BinaryRelation empty(std::size_t n) {
    return {n, std::vector<char>(n * n, 0)};
  }
  bool at(std::size_t i, std::size_t j) const { return bits[i * n + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value = true) {
    bits[i * n + j] = value ? 1 : 0;
  }
  bool operator==(const BinaryRelation&) const = default;
};

/// Reflexive-transitive relation on n labeled elements.
class FinitePreorder {
 public:
  /// Reflexive-transitive closure of the given pairs.
  static FinitePreorder from_relation(std::size_t n,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  /// Validates an existing relation (must already be reflexive and transitive).
  static FinitePreorder from_closed_relation(BinaryRelation rel);

  static FinitePreorder chain(std::size_t n);
  static FinitePreorder antichain(std::size_t n);
  /// Two minimal elements below one top.
  static FinitePreorder v_poset();
  /// Standard example S_3: elements a0,a1,a2,b0,b1,b2 with a_i < b_j iff i != j.
  static FinitePreorder standard_example_3();
  /// Six-point truncation {-x,-y,-z,x,y,z} (labels 0..5) of the order on
  /// R\{0} with w <= t iff |w| <= |t| and sgn(w) <= sgn(t).
  static FinitePreorder counterexample_poset();
  /// Six-point truncation (same labels, values -1,-2,-3,1,2,3) of the order
  /// defined by w <= t iff w <= t and 1/w <= 1/t: two antichains with every
  /// negative below every positive.
  static FinitePreorder reciprocal_pair_poset();

  std::size_t size() const { return rel_.n; }
  bool leq(std::size_t i, std::size_t j) const { return rel_.at(i, j); }
  bool strict(std::size_t i, std::size_t j) const { return leq(i, j) && !leq(j, i); }
  bool equivalent(std::size_t i, std::size_t j) const { return leq(i, j) && leq(j, i); }
  bool incomparable(std::size_t i, std::size_t j) const { return !leq(i, j) && !leq(j, i); }

  bool is_antisymmetric() const;
  bool is_total() const;
  const BinaryRelation& relation() const { return rel_; }

  /// Collapses equivalence classes; class_of (when given) receives the class
  /// index of every element.
  FinitePreorder quotient(std::vector<std::size_t>* class_of = nullptr) const;

  bool operator==(const FinitePreorder&) const = default;

 private:
  explicit FinitePreorder(BinaryRelation rel) : rel_(std::move(rel)) {}
  BinaryRelation rel_;
};

/// The values on the six elements of reciprocal_pair_poset of the pair
/// {u_1, u_2} = {w, 1/w} that defines it.
std::vector<std::vector<double>> reciprocal_pair_multi_utility();

struct MonotoneFlags {
  bool monotone = false;
  bool strict_monotone = false;
  bool injective_monotone = false;
};

MonotoneFlags classify_monotone(const FinitePreorder& p, const std::vector<double>& f);

/// One vector of values per function.
using RealFamily = std::vector<std::vector<double>>;

bool is_multi_utility(const FinitePreorder& p, const RealFamily& family);
bool is_strict_monotone_multi_utility(const FinitePreorder& p, const RealFamily& family);

/// x <= y iff every g in G ties and s does not decrease.
bool is_thermo_representation(const FinitePreorder& p, const RealFamily& conserved,
                              const std::vector<double>& entropy);

/// {g} u {-g} u {s}; validates the input representation first.
RealFamily thermo_to_multi_utility(const FinitePreorder& p, const RealFamily& conserved,
                                   const std::vector<double>& entropy);

/// Decides whether any thermodynamic representation exists (finite case:
/// exhaustive over value patterns, WLOG one conserved function); returns a
/// witness when it does.
struct ThermoSearchResult {
  bool exists = false;
  RealFamily conserved;
  std::vector<double> entropy;
};
ThermoSearchResult find_thermo_representation(const FinitePreorder& p);

using IncreasingSetFamily = std::vector<std::vector<std::size_t>>;

bool increasing_family_valid(const FinitePreorder& p, const IncreasingSetFamily& family);

/// f(x) = sum_k r^k [x in A_k]; equal values exactly characterize equal
/// membership patterns when r in (0, 1/2).
std::vector<double> monotone_from_increasing_sets(const FinitePreorder& p,
                                                  const IncreasingSetFamily& family,
                                                  double r);

enum class SeparationMode { MultiUtility, Strict, Injective };
bool separation_check(const FinitePreorder& p, const IncreasingSetFamily& family,
                      SeparationMode mode);

enum class DensityMode { OrderDense, DebreuDense, UpperDense, DebreuUpperDense };
bool density_check(const FinitePreorder& p, const std::vector<std::size_t>& dense_set,
                   DensityMode mode);

bool is_conditionally_connected(const FinitePreorder& p);

/// Total extension of an antisymmetric order, refined by the monotone u on
/// incomparable pairs (u ties broken by ascending element index when the
/// order allows). Returns the elements in extension order.
std::vector<std::size_t> linear_extension_by_monotone(const FinitePreorder& p,
                                                      const std::vector<double>& u);

/// Pair (x, y) is in the limit iff it belongs to every relation of some
/// suffix of the sequence.
BinaryRelation limit_of_relations(const std::vector<BinaryRelation>& sequence);

struct Realizer {
  std::vector<std::vector<std::size_t>> extensions;  // each a permutation of 0..n-1
};

bool realizer_is_valid(const FinitePreorder& p, const Realizer& realizer);

/// All linear extensions in lexicographic order; throws ScaleExceeded past cap.
std::vector<std::vector<std::size_t>> all_linear_extensions(const FinitePreorder& p,
                                                            std::size_t cap = 200000);

/// Smallest k <= max_k admitting a realizer of the quotient order, nullopt
/// when every k <= max_k fails. Depth-first set cover over incomparable-pair
/// orientations.
std::optional<std::size_t> dm_dimension(const FinitePreorder& p, std::size_t max_k = 4);

/// Finds a minimal realizer alongside the dimension.
std::optional<Realizer> minimal_realizer(const FinitePreorder& p, std::size_t max_k = 4);

/// One rank function per extension.
RealFamily multi_utility_from_realizer(const FinitePreorder& p, const Realizer& realizer);

/// True iff argmax of f over every nonempty subset lands inside that
/// subset's maximal elements (exhaustive over 2^n - 1 subsets, n <= 14).
bool optimization_principle_check(const FinitePreorder& p, const std::vector<double>& f);

std::vector<std::size_t> maximal_elements(const FinitePreorder& p,
                                          const std::vector<std::size_t>& subset);

/// Every poset on n labeled elements (n <= 5 practical).
std::vector<FinitePreorder> all_posets(std::size_t n);

inline constexpr std::size_t kDimensionMaxElements = 10;
inline constexpr std::size_t kOptimizationMaxElements = 14;

}  // namespace ordlab::poset
