#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ordlab/dist.hpp"

namespace ordlab::majo {

enum class OrderVerdict { StrictlyLess, Equivalent, StrictlyGreater, Incomparable };

const char* verdict_name(OrderVerdict v);

/// Which preorder a comparison runs under: the uncertainty preorder, its
/// dual (majorization), or d-majorization relative to a reference.
struct Order {
  enum class Kind { U, M, D } kind = Kind::M;
  std::optional<RatDist> d;  // required for Kind::D

  static Order u() { return {Kind::U, std::nullopt}; }
  static Order m() { return {Kind::M, std::nullopt}; }
  static Order relative(RatDist ref) { return {Kind::D, std::move(ref)}; }
};

/// p <=_U q iff u_i(p) <= u_i(q) for all i = 1..n-1 (tolerance 1e-12).
bool uncertainty_leq(const Dist& p, const Dist& q);
bool uncertainty_leq(const RatDist& p, const RatDist& q);

/// The dual: p <=_M q iff every top-i sum of p is <= that of q.
bool majorized_by(const Dist& p, const Dist& q);
bool majorized_by(const RatDist& p, const RatDist& q);

OrderVerdict compare(const Dist& p, const Dist& q, const Order& order);

/// One mass move from a strictly more likely outcome to a less likely one;
/// mass = (source - destination) is a pure swap.
struct TransferStep {
  std::size_t from_index = 0;
  std::size_t to_index = 0;
  double mass = 0.0;
};

struct RatTransferStep {
  std::size_t from_index = 0;
  std::size_t to_index = 0;
  Rational mass;
};

/// Hardy-Littlewood-Polya synthesis: when uncertainty_leq(p, q) holds,
/// returns steps that rewrite p into q entrywise; absent otherwise.
std::optional<std::vector<TransferStep>> pigou_dalton_path(const Dist& p, const Dist& q,
                                                           std::size_t max_steps = 64);
std::optional<std::vector<RatTransferStep>> pigou_dalton_path(const RatDist& p,
                                                              const RatDist& q,
                                                              std::size_t max_steps = 64);

/// Cell-splitting embedding: the outcome x becomes alpha*d(x) cells of
/// probability p(x)/(alpha*d(x)) each, with alpha the least common
/// denominator scale. Maps d itself to the uniform distribution.
RatDist lambda_d_embed(const RatDist& p, const RatDist& d);
Dist lambda_d_embed(const Dist& p, const Dist& d);

/// p <=_d q iff Lambda_d p <=_M Lambda_d q. Float inputs are snapped to
/// rationals (denominator <= 1024) first.
bool d_majorization_leq(const RatDist& p, const RatDist& q, const RatDist& d);
bool d_majorization_leq(const Dist& p, const Dist& q, const Dist& d);

/// Independent route: feasibility of a stochastic matrix Pi with Pi d = d
/// and Pi q = p, decided by an exact phase-1 simplex over n^2 variables.
bool d_majorization_oracle(const RatDist& p, const RatDist& q, const RatDist& d);

inline constexpr std::size_t kOracleMaxOutcomes = 5;

// --- family-of-second-laws checking ---

using ScalarFn = std::function<double(const Dist&)>;

struct SecondLawViolation {
  std::size_t pair_index = 0;
  int clause = 0;  // 1 = equivalence, 2 = strictness, 3 = incomparability
  OrderVerdict verdict = OrderVerdict::Incomparable;
  std::string detail;
};

struct SecondLawsReport {
  std::vector<SecondLawViolation> violations;
  std::size_t pairs_checked = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks the three clauses of a family of second laws against classified
/// pairs: equivalent pairs need all functions equal, strict pairs need all
/// functions strictly increasing, incomparable pairs need one increase and
/// one decrease. Functions are compared at tolerance 1e-12.
SecondLawsReport check_second_laws_family(const std::vector<ScalarFn>& family,
                                          const std::vector<std::pair<Dist, Dist>>& pairs,
                                          const Order& order);

/// Stern-Brocot breadth-first enumeration of the strictly positive
/// rationals: 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...
std::vector<Rational> positive_rationals(std::size_t count);

/// The corrected strict-monotone family u_i + r H for the given rationals.
std::vector<ScalarFn> ui_plus_rh_family(std::size_t n, const std::vector<Rational>& rationals);

}  // namespace ordlab::majo
