#pragma once

// Independent rank routine: fraction-free Bareiss elimination over the
// integers after clearing denominators row by row. Shares no code with the
// library's reduced echelon form.

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline std::size_t naive_rank(const std::vector<std::vector<mpq_class>>& rows_in) {
  if (rows_in.empty()) return 0;
  const std::size_t cols = rows_in[0].size();
  std::vector<std::vector<mpz_class>> m;
  for (const auto& r : rows_in) {
    mpz_class l = 1;
    for (const auto& x : r) l = lcm(l, mpz_class(x.get_den()));
    std::vector<mpz_class> row;
    for (const auto& x : r) row.push_back(mpz_class(x.get_num() * (l / x.get_den())));
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace oracle
