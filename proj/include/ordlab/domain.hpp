#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/poset.hpp"
#include "ordlab/rational.hpp"

namespace ordlab::domain {

/// Compact interval with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  static RationalInterval make(Rational lo, Rational hi);
  bool degenerate() const { return lo == hi; }
  bool operator==(const RationalInterval&) const = default;
};

/// Information order: reversed inclusion.
bool interval_leq(const RationalInterval& a, const RationalInterval& b);

/// Supremum of a directed family: the intersection [max lo, min hi].
RationalInterval interval_sup(const std::vector<RationalInterval>& family,
                              bool check_directed = true);

/// Way-below via strict interior containment.
bool interval_way_below(const RationalInterval& a, const RationalInterval& b);

/// Dense polynomial with exact rational coefficients, ascending degree.
struct RatPolynomial {
  std::vector<Rational> coeffs;

  Rational eval(const Rational& x) const;
};

/// Exact bisection trace from [lo, hi]: the emitted intervals shrink under
/// interval_leq, halving until the width is at most eps or the midpoint is
/// an exact root.
std::vector<RationalInterval> bisection_run(const RatPolynomial& poly, const Rational& lo,
                                            const Rational& hi, const Rational& eps);

/// Finite word, optionally continued by an infinite repetition of `period`.
struct CantorWord {
  std::string alphabet = "01";
  std::string symbols;
  std::optional<std::string> period;

  static CantorWord finite(std::string symbols, std::string alphabet = "01");
  static CantorWord periodic(std::string symbols, std::string period,
                             std::string alphabet = "01");
  /// "0110" or "01(10)" for the eventually periodic word 01 10 10 10 ...
  static CantorWord parse(const std::string& text, std::string alphabet = "01");
  std::string str() const;
  bool is_finite() const { return !period.has_value(); }
  /// Symbol at position i (0-based), expanding the period lazily.
  char at(std::size_t i) const;
  std::size_t finite_length() const { return symbols.size(); }
};

/// Prefix order on finite and eventually periodic words.
bool cantor_leq(const CantorWord& x, const CantorWord& y);

/// Supremum of a prefix-compatible family: its longest member.
CantorWord cantor_sup(const std::vector<CantorWord>& family);

/// x is way-below y iff x is finite and a prefix of y.
bool cantor_way_below(const CantorWord& x, const CantorWord& y);

/// Prefix order on all words of length <= max_len over the alphabet,
/// elements ordered by length then lexicographically.
poset::FinitePreorder cantor_truncation(std::size_t alphabet_size, std::size_t max_len);

/// Antisymmetric finite preorder; every finite poset is directed complete.
struct FiniteDcpo {
  poset::FinitePreorder order;

  static FiniteDcpo from_order(poset::FinitePreorder order);
  std::size_t size() const { return order.size(); }
};

inline constexpr std::size_t kDcpoMaxElements = 12;

/// Exhaustive check over directed subsets; for finite posets this equals
/// order.leq(x, y).
bool finite_way_below(const FiniteDcpo& d, std::size_t x, std::size_t y);

/// All Scott-open subsets (the upper sets; inaccessibility is automatic on
/// finite posets), each as a sorted element list.
std::vector<std::vector<std::size_t>> scott_opens(const FiniteDcpo& d);

/// Verifies x <= y iff every open containing x contains y.
bool order_from_opens_check(const FiniteDcpo& d);

/// Every element must be the supremum of a directed subset of the basis;
/// on a finite poset that forces the basis to be everything.
bool weak_basis_check(const FiniteDcpo& d, const std::vector<std::size_t>& basis);

/// {x : x << x}; all elements of a finite poset.
std::vector<std::size_t> compact_elements(const FiniteDcpo& d);

/// (n, m) -> (n^2 + 2nm + m^2 + 3n + m) / 2.
std::uint64_t cantor_pair(std::uint64_t n, std::uint64_t m);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

}  // namespace ordlab::domain
