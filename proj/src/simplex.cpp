#include "simplex.hpp"

#include <cstddef>

namespace ordlab::detail {

bool rational_system_feasible(const std::vector<std::vector<Rational>>& a,
                              const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  if (m == 0) return true;
  const std::size_t n = a[0].size();
  const std::size_t total = n + m;  // structural + artificial columns

  // Tableau rows: [A | I | b] with b made non-negative; basis starts at the
  // artificial columns. Phase-1 objective: minimize the artificial sum.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? -a[i][j] : a[i][j];
    t[i][n + i] = 1;
    t[i][total] = flip ? -b[i] : b[i];
    basis[i] = n + i;
  }

  // Reduced-cost row for cost c_j = [j is artificial]; with the artificial
  // basis, d_j = c_j - sum_i t[i][j] and objective = sum_i b_i.
  std::vector<Rational> d(total + 1);
  for (std::size_t j = 0; j <= total; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += t[i][j];
    d[j] = (j >= n && j < total ? Rational(1) : Rational(0)) - s;
  }

  while (true) {
    // Bland: entering column = smallest index with negative reduced cost.
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (d[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == total) break;

    // Ratio test; Bland tie-break on the smallest basis index.
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rational ratio = t[i][total] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded column cannot improve a bounded phase-1

    const Rational pivot = t[leave][enter];
    for (std::size_t j = 0; j <= total; ++j) t[leave][j] /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j <= total; ++j) t[i][j] -= factor * t[leave][j];
    }
    const Rational dfactor = d[enter];
    if (dfactor != 0) {
      for (std::size_t j = 0; j <= total; ++j) d[j] -= dfactor * t[leave][j];
    }
    basis[leave] = enter;
  }

  // Feasible iff every artificial ends at value zero.
  Rational artificial_mass = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) artificial_mass += t[i][total];
  }
  return artificial_mass == 0;
}

}  // namespace ordlab::detail
