#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sfkit/algebra/mpoly.hpp"

namespace sfkit {

using PolyMatrix = std::vector<std::vector<MPoly>>;

/// Sylvester matrix of p (degree m) and q (degree n) in `var`: the m rows
/// of shifted q coefficients sit above the n rows of shifted p
/// coefficients; columns run from var^(m+n-1) down to var^0.
inline PolyMatrix sylvester_matrix(const MPoly& p, const MPoly& q, std::size_t var) {
  auto pc = p.coefficients_in(var), qc = q.coefficients_in(var);
  if (pc.size() < 2 || qc.size() < 2) throw std::domain_error("resultant: both inputs need positive degree in the variable");
  std::size_t m = pc.size() - 1, n = qc.size() - 1, size = m + n;
  PolyMatrix s(size, std::vector<MPoly>(size, MPoly(p.ring())));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[r][r + k] = qc[n - k];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[m + r][r + k] = pc[m - k];
  return s;
}

/// Fraction-free (Bareiss) determinant over the polynomial ring.
inline MPoly determinant(PolyMatrix a) {
  std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("determinant of empty matrix");
  const RingPtr& ring = a[0][0].ring();
  MPoly prev = MPoly::constant(ring, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && a[pivot][k].is_zero()) ++pivot;
      if (pivot == n) return MPoly(ring);
      std::swap(a[k], a[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = MPoly(ring);
    }
    prev = a[k][k];
  }
  MPoly det = a[n - 1][n - 1];
  return negate ? -det : det;
}

/// Raw Sylvester determinant (q-block above p-block) eliminating `var`.
inline MPoly resultant(const MPoly& p, const MPoly& q, std::size_t var) {
  return determinant(sylvester_matrix(p, q, var));
}

inline MPoly resultant(const MPoly& p, const MPoly& q, const std::string& var) {
  return resultant(p, q, p.ring()->require_index(var));
}

}  // namespace sfkit
