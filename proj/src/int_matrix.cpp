#include "lforge/int_matrix.hpp"

#include <utility>

namespace lforge {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

mpz_class determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = std::move(v);
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, const CoefficientRing& ring) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  IntMatrix out(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
      ring.normalize(out[i][j]);
    }
  return out;
}

std::optional<IntMatrix> inverse(const IntMatrix& m, const CoefficientRing& ring) {
  const std::size_t n = m.size();
  mpz_class det = determinant(m);
  ring.normalize(det);
  if (!ring.is_unit(det)) return std::nullopt;
  const mpz_class det_inv = ring.inverse(det);
  IntMatrix out(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<mpz_class> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      mpz_class cof = determinant(std::move(minor));
      if ((i + j) % 2) cof = -cof;
      out[i][j] = cof * det_inv;
      ring.normalize(out[i][j]);
    }
  return out;
}

}  // namespace lforge
