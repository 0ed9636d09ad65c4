#include "ordlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ordlab::domain {

RationalInterval RationalInterval::make(Rational lo, Rational hi) {
  require(lo <= hi, ErrorKind::ParseError,
          "interval endpoints out of order: " + to_string(lo) + " > " + to_string(hi));
  return {std::move(lo), std::move(hi)};
}

bool interval_leq(const RationalInterval& a, const RationalInterval& b) {
  return a.lo <= b.lo && b.hi <= a.hi;
}

RationalInterval interval_sup(const std::vector<RationalInterval>& family,
                              bool check_directed) {
  require(!family.empty(), ErrorKind::NotDirected, "empty family has no supremum");
  Rational lo = family.front().lo;
  Rational hi = family.front().hi;
  for (const auto& interval : family) {
    lo = std::max(lo, interval.lo);
    hi = std::min(hi, interval.hi);
  }
  if (check_directed) {
    require(lo <= hi, ErrorKind::NotDirected, "family has an empty intersection");
  }
  return RationalInterval::make(lo, hi);
}

bool interval_way_below(const RationalInterval& a, const RationalInterval& b) {
  return a.lo < b.lo && b.hi < a.hi;
}

Rational RatPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<RationalInterval> bisection_run(const RatPolynomial& poly, const Rational& lo,
                                            const Rational& hi, const Rational& eps) {
  require(lo < hi, ErrorKind::NoSignChange, "empty starting interval");
  require(eps > 0, ErrorKind::ParseError, "eps must be positive");
  Rational a = lo, b = hi;
  Rational va = poly.eval(a);
  const Rational vb = poly.eval(b);
  require(va * vb < 0, ErrorKind::NoSignChange, "polynomial does not change sign");
  std::vector<RationalInterval> trace = {RationalInterval::make(a, b)};
  while (b - a > eps) {
    const Rational mid = (a + b) / 2;
    const Rational vm = poly.eval(mid);
    if (vm == 0) {
      trace.push_back(RationalInterval::make(mid, mid));
      return trace;
    }
    if (va * vm < 0) {
      b = mid;
    } else {
      a = mid;
      va = vm;
    }
    trace.push_back(RationalInterval::make(a, b));
  }
  return trace;
}

CantorWord CantorWord::finite(std::string symbols, std::string alphabet) {
  CantorWord word{std::move(alphabet), std::move(symbols), std::nullopt};
  for (char c : word.symbols) {
    require(word.alphabet.find(c) != std::string::npos, ErrorKind::AlphabetMismatch,
            std::string("symbol '") + c + "' outside the alphabet");
  }
  return word;
}

CantorWord CantorWord::periodic(std::string symbols, std::string period,
                                std::string alphabet) {
  require(!period.empty(), ErrorKind::AlphabetMismatch, "period must be nonempty");
  CantorWord word{std::move(alphabet), std::move(symbols), std::move(period)};
  for (char c : word.symbols) {
    require(word.alphabet.find(c) != std::string::npos, ErrorKind::AlphabetMismatch,
            std::string("symbol '") + c + "' outside the alphabet");
  }
  for (char c : *word.period) {
    require(word.alphabet.find(c) != std::string::npos, ErrorKind::AlphabetMismatch,
            std::string("symbol '") + c + "' outside the alphabet");
  }
  return word;
}

CantorWord CantorWord::parse(const std::string& text, std::string alphabet) {
  const auto open = text.find('(');
  if (open == std::string::npos) return finite(text, std::move(alphabet));
  require(text.back() == ')', ErrorKind::ParseError, "periodic word must end with ')'");
  return periodic(text.substr(0, open), text.substr(open + 1, text.size() - open - 2),
                  std::move(alphabet));
}

std::string CantorWord::str() const {
  return is_finite() ? symbols : symbols + "(" + *period + ")";
}

char CantorWord::at(std::size_t i) const {
  if (i < symbols.size()) return symbols[i];
  require(period.has_value(), ErrorKind::IndexOutOfRange, "position beyond a finite word");
  return (*period)[(i - symbols.size()) % period->size()];
}

bool cantor_leq(const CantorWord& x, const CantorWord& y) {
  require(x.alphabet == y.alphabet, ErrorKind::AlphabetMismatch,
          "words use different alphabets");
  if (x.is_finite()) {
    if (y.is_finite() && y.finite_length() < x.finite_length()) return false;
    for (std::size_t i = 0; i < x.finite_length(); ++i) {
      if (x.at(i) != y.at(i)) return false;
    }
    return true;
  }
  if (y.is_finite()) return false;
  // Two eventually periodic words agree everywhere iff they agree on the
  // preperiods plus one common period.
  const std::size_t prefix = std::max(x.finite_length(), y.finite_length());
  const std::size_t common = std::lcm(x.period->size(), y.period->size());
  for (std::size_t i = 0; i < prefix + common; ++i) {
    if (x.at(i) != y.at(i)) return false;
  }
  return true;
}

CantorWord cantor_sup(const std::vector<CantorWord>& family) {
  require(!family.empty(), ErrorKind::NotDirected, "empty family has no supremum");
  CantorWord top = family.front();
  for (const auto& word : family) {
    if (cantor_leq(top, word)) {
      top = word;
    } else {
      require(cantor_leq(word, top), ErrorKind::NotDirected,
              "family contains prefix-incompatible words");
    }
  }
  for (const auto& word : family) {
    require(cantor_leq(word, top), ErrorKind::NotDirected,
            "family contains prefix-incompatible words");
  }
  return top;
}

bool cantor_way_below(const CantorWord& x, const CantorWord& y) {
  return x.is_finite() && cantor_leq(x, y);
}

poset::FinitePreorder cantor_truncation(std::size_t alphabet_size, std::size_t max_len) {
  require(alphabet_size >= 1 && alphabet_size <= 10, ErrorKind::ScaleExceeded,
          "alphabet size must be 1..10");
  std::vector<std::string> words = {""};
  std::vector<std::string> level = {""};
  for (std::size_t len = 0; len < max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& word : level) {
      for (std::size_t c = 0; c < alphabet_size; ++c) {
        next.push_back(word + static_cast<char>('0' + c));
      }
    }
    words.insert(words.end(), next.begin(), next.end());
    level = std::move(next);
  }
  poset::BinaryRelation rel = poset::BinaryRelation::empty(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      rel.set(i, j, words[j].starts_with(words[i]));
    }
  }
  return poset::FinitePreorder::from_closed_relation(rel);
}

FiniteDcpo FiniteDcpo::from_order(poset::FinitePreorder order) {
  require(order.is_antisymmetric(), ErrorKind::NotAntisymmetric,
          "a dcpo must be a partial order");
  return FiniteDcpo{std::move(order)};
}

namespace {

void check_scale(const FiniteDcpo& d) {
  require(d.size() <= kDcpoMaxElements, ErrorKind::ScaleExceeded,
          "directed-subset sweeps support n <= " + std::to_string(kDcpoMaxElements));
}

// Maximum of a directed subset when it exists (finite directed sets contain
// their supremum); nullopt when the mask is not directed.
std::optional<std::size_t> directed_maximum(const poset::FinitePreorder& p,
                                            std::uint32_t mask) {
  std::optional<std::size_t> top;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!((mask >> x) & 1U)) continue;
    if (!top.has_value() || p.leq(*top, x)) top = x;
  }
  if (!top.has_value()) return std::nullopt;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (!((mask >> a) & 1U)) continue;
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (!((mask >> b) & 1U)) continue;
      bool bounded = false;
      for (std::size_t c = 0; c < p.size() && !bounded; ++c) {
        bounded = ((mask >> c) & 1U) && p.leq(a, c) && p.leq(b, c);
      }
      if (!bounded) return std::nullopt;
    }
  }
  // A directed finite set has a maximum; the scan above returns it only if
  // the candidate dominates everything.
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (((mask >> a) & 1U) && !p.leq(a, *top)) return std::nullopt;
  }
  return top;
}

}  // namespace

bool finite_way_below(const FiniteDcpo& d, std::size_t x, std::size_t y) {
  check_scale(d);
  const auto& p = d.order;
  require(x < p.size() && y < p.size(), ErrorKind::IndexOutOfRange, "element index");
  for (std::uint32_t mask = 1; mask < (1U << p.size()); ++mask) {
    const auto top = directed_maximum(p, mask);
    if (!top.has_value()) continue;
    if (!p.leq(y, *top)) continue;
    bool witnessed = false;
    for (std::size_t a = 0; a < p.size() && !witnessed; ++a) {
      witnessed = ((mask >> a) & 1U) && p.leq(x, a);
    }
    if (!witnessed) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> scott_opens(const FiniteDcpo& d) {
  check_scale(d);
  const auto& p = d.order;
  std::vector<std::vector<std::size_t>> opens;
  for (std::uint32_t mask = 0; mask < (1U << p.size()); ++mask) {
    bool upper = true;
    for (std::size_t x = 0; x < p.size() && upper; ++x) {
      if (!((mask >> x) & 1U)) continue;
      for (std::size_t y = 0; y < p.size(); ++y) {
        if (p.leq(x, y) && !((mask >> y) & 1U)) {
          upper = false;
          break;
        }
      }
    }
    if (!upper) continue;
    std::vector<std::size_t> open;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if ((mask >> x) & 1U) open.push_back(x);
    }
    opens.push_back(std::move(open));
  }
  return opens;
}

bool order_from_opens_check(const FiniteDcpo& d) {
  const auto opens = scott_opens(d);
  const auto& p = d.order;
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = 0; y < p.size(); ++y) {
      bool carried = true;
      for (const auto& open : opens) {
        const bool has_x = std::find(open.begin(), open.end(), x) != open.end();
        const bool has_y = std::find(open.begin(), open.end(), y) != open.end();
        if (has_x && !has_y) {
          carried = false;
          break;
        }
      }
      if (carried != p.leq(x, y)) return false;
    }
  }
  return true;
}

bool weak_basis_check(const FiniteDcpo& d, const std::vector<std::size_t>& basis) {
  check_scale(d);
  const auto& p = d.order;
  std::uint32_t basis_mask = 0;
  for (std::size_t b : basis) {
    require(b < p.size(), ErrorKind::IndexOutOfRange, "basis element");
    basis_mask |= 1U << b;
  }
  bool searched = true;
  for (std::size_t x = 0; x < p.size() && searched; ++x) {
    bool reached = false;
    for (std::uint32_t mask = 1; mask < (1U << p.size()) && !reached; ++mask) {
      if ((mask & ~basis_mask) != 0) continue;
      const auto top = directed_maximum(p, mask);
      reached = top.has_value() && *top == x;
    }
    searched = reached;
  }
  // Finite posets have only trivial directed suprema, so a weak basis must
  // contain every element; the search result must agree with that.
  const bool covers_all = basis_mask + 1 == (1U << p.size());
  require(searched == covers_all, ErrorKind::ScaleExceeded,
          "weak-basis search disagrees with the finite-poset theorem");
  return searched;
}

std::vector<std::size_t> compact_elements(const FiniteDcpo& d) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (finite_way_below(d, x, x)) out.push_back(x);
  }
  return out;
}

std::uint64_t cantor_pair(std::uint64_t n, std::uint64_t m) {
  const std::uint64_t s = n + m;
  require(s < (1ULL << 31), ErrorKind::ScaleExceeded, "pairing overflow");
  return s * (s + 1) / 2 + n;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
  std::uint64_t s = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
  while (s * (s + 1) / 2 > k) --s;
  while ((s + 1) * (s + 2) / 2 <= k) ++s;
  const std::uint64_t n = k - s * (s + 1) / 2;
  return {n, s - n};
}

}  // namespace ordlab::domain
