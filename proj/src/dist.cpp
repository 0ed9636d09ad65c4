#include "ordlab/dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

namespace ordlab {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NonFiniteScore: return "NonFiniteScore";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroReference: return "ZeroReference";
    case ErrorKind::IrrationalReference: return "IrrationalReference";
    case ErrorKind::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorKind::SolverScaleExceeded: return "SolverScaleExceeded";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotARepresentation: return "NotARepresentation";
    case ErrorKind::RadixOutOfRange: return "RadixOutOfRange";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::EmptySequence: return "EmptySequence";
    case ErrorKind::ScaleExceeded: return "ScaleExceeded";
    case ErrorKind::InvalidRealizer: return "InvalidRealizer";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorKind::InfeasibleBound: return "InfeasibleBound";
    case ErrorKind::EmptyFeasibleSet: return "EmptyFeasibleSet";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotStationary: return "NotStationary";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::ZeroInitialMass: return "ZeroInitialMass";
    case ErrorKind::BadPathLength: return "BadPathLength";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ZeroTargetMass: return "ZeroTargetMass";
    case ErrorKind::EmptySamples: return "EmptySamples";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::NotDirected: return "NotDirected";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

std::string to_string(const Rational& r) {
  std::ostringstream out;
  out << numerator(r);
  if (denominator(r) != 1) out << '/' << denominator(r);
  return out.str();
}

Rational rational_from_string(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(s.substr(0, slash));
      const BigInt den(s.substr(slash + 1));
      require(den != 0, ErrorKind::ParseError, "zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
      // Decimal literal: digits after the dot scale the denominator.
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      bool negative = false;
      if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        negative = digits[0] == '-';
        digits.erase(digits.begin());
      }
      // Strip leading zeros so the bignum parser cannot read an octal prefix.
      const auto first = digits.find_first_not_of('0');
      digits = first == std::string::npos ? "0" : digits.substr(first);
      if (digits.find_first_not_of("0123456789") != std::string::npos) {
        fail(ErrorKind::ParseError, "malformed number '" + s + "'");
      }
      BigInt den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      const BigInt num(digits);
      return Rational(negative ? -num : num, den);
    }
    return Rational(BigInt(s));
  } catch (const std::runtime_error&) {
    fail(ErrorKind::ParseError, "malformed rational '" + s + "'");
  }
}

std::optional<Rational> snap_to_rational(double x, long max_denominator) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents p/q with q <= max_denominator.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(v);
    if (fl > static_cast<double>(std::numeric_limits<long long>::max() / 4)) break;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  const Rational best(p1, q1);
  if (std::abs(to_double(best) - x) > 1e-9) return std::nullopt;
  return best;
}

Dist Dist::from_raw(std::vector<double> raw) {
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= 0.0)) {
      fail(ErrorKind::NegativeEntry,
           "entry " + std::to_string(i) + " = " + std::to_string(raw[i]));
    }
    sum += raw[i];
  }
  if (!(std::abs(sum - 1.0) <= kParseNormTol)) {
    fail(ErrorKind::NotNormalized, "entries sum to " + std::to_string(sum));
  }
  for (double& v : raw) v /= sum;
  return Dist(std::move(raw));
}

Dist Dist::uniform(std::size_t n) {
  require(n >= 1, ErrorKind::NotNormalized, "empty distribution");
  return Dist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::point_mass(std::size_t n, std::size_t at) {
  require(n >= 1, ErrorKind::NotNormalized, "empty distribution");
  require(at < n, ErrorKind::IndexOutOfRange, "point mass index");
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return Dist(std::move(p));
}

ScoreVector ScoreVector::from_raw(std::vector<double> values) {
  for (double v : values) {
    require(std::isfinite(v), ErrorKind::NonFiniteScore, "score entries must be finite");
  }
  return ScoreVector(std::move(values));
}

RatDist RatDist::from_raw(std::vector<Rational> raw) {
  Rational sum = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    require(raw[i] >= 0, ErrorKind::NegativeEntry, "entry " + std::to_string(i));
    sum += raw[i];
  }
  require(sum == 1, ErrorKind::NotNormalized, "exact entries sum to " + to_string(sum));
  return RatDist(std::move(raw));
}

RatDist RatDist::uniform(std::size_t n) {
  require(n >= 1, ErrorKind::NotNormalized, "empty distribution");
  return RatDist(std::vector<Rational>(n, Rational(1, n)));
}

Dist sorted_desc(const Dist& p) {
  std::vector<double> v = p.probs();
  std::sort(v.begin(), v.end(), std::greater<>());
  return Dist::from_raw(std::move(v));
}

RatDist sorted_desc(const RatDist& p) {
  std::vector<Rational> v = p.probs();
  std::sort(v.begin(), v.end(), std::greater<>());
  return RatDist::from_raw(std::move(v));
}

std::vector<double> top_sums(const Dist& p) {
  std::vector<double> v = p.probs();
  std::sort(v.begin(), v.end(), std::greater<>());
  double acc = 0.0;
  for (double& x : v) {
    acc += x;
    x = acc;
  }
  return v;
}

std::vector<Rational> top_sums(const RatDist& p) {
  std::vector<Rational> v = p.probs();
  std::sort(v.begin(), v.end(), std::greater<>());
  Rational acc = 0;
  for (Rational& x : v) {
    acc += x;
    x = acc;
  }
  return v;
}

std::vector<double> partial_sum_utilities(const Dist& p) {
  std::vector<double> s = top_sums(p);
  s.pop_back();
  for (double& x : s) x = -x;
  return s;
}

double shannon_entropy(const Dist& p) {
  double h = 0.0;
  for (double x : p.probs()) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return std::max(h, 0.0);
}

Dist boltzmann(const ScoreVector& utility, double beta) {
  require(utility.size() >= 1, ErrorKind::NonFiniteScore, "empty score vector");
  require(std::isfinite(beta), ErrorKind::NonFiniteScore, "beta must be finite");
  double shift = -std::numeric_limits<double>::infinity();
  for (double u : utility.values()) shift = std::max(shift, beta * u);
  std::vector<double> w(utility.size());
  double z = 0.0;
  for (std::size_t i = 0; i < utility.size(); ++i) {
    w[i] = std::exp(beta * utility[i] - shift);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return Dist::from_raw(std::move(w));
}

Dist to_dist(const RatDist& p) {
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = to_double(p[i]);
  return Dist::from_raw(std::move(v));
}

RatDist snap_dist(const Dist& p, long max_denominator) {
  std::vector<Rational> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto r = snap_to_rational(p[i], max_denominator);
    if (!r) {
      fail(ErrorKind::IrrationalReference,
           "entry " + std::to_string(i) + " = " + std::to_string(p[i]) +
               " has no rational match with denominator <= " +
               std::to_string(max_denominator));
    }
    v[i] = *r;
  }
  return RatDist::from_raw(std::move(v));
}

}  // namespace ordlab
