#include "ssg/linalg.hpp"

#include <algorithm>

namespace ssg {

Int int_det(IntMat a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = div_exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev, "bareiss");
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

RatMat rat_inverse(RatMat a) {
  std::size_t n = a.size();
  RatMat inv = rat_identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw validation_error("Singular", "matrix is not invertible");
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    Rat d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RatMat int_inverse_over_q(const IntMat& a) { return rat_inverse(to_rat(a)); }

namespace {

// Eliminates column `col` among rows[start..] by the Euclidean algorithm,
// leaving at most one row with a nonzero entry there (moved to `start`).
// Returns true if a pivot was produced.
bool euclid_column(IntMat& rows, std::size_t start, std::size_t col) {
  while (true) {
    std::size_t best = rows.size();
    for (std::size_t i = start; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      if (best == rows.size() || cmp(abs(rows[i][col]), abs(rows[best][col])) < 0) best = i;
    }
    if (best == rows.size()) return false;
    bool others = false;
    for (std::size_t i = start; i < rows.size(); ++i) {
      if (i == best || rows[i][col] == 0) continue;
      others = true;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[best][j];
    }
    if (!others) {
      std::swap(rows[start], rows[best]);
      if (rows[start][col] < 0)
        for (auto& v : rows[start]) v = -v;
      return true;
    }
  }
}

}  // namespace

IntMat row_hnf(IntMat rows) {
  if (rows.empty()) return rows;
  std::size_t n = rows[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    if (!euclid_column(rows, r, c)) continue;
    pivot_col.push_back(c);
    ++r;
  }
  rows.resize(r);
  // Reduce entries above each pivot.
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[k][pivot_col[i]].get_mpz_t(), rows[i][pivot_col[i]].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[k][j] -= q * rows[i][j];
    }
  }
  return rows;
}

IntMat int_kernel(const IntMat& a) {
  std::size_t p = a.size(), q = p == 0 ? 0 : a[0].size();
  if (p == 0) return int_identity(q);
  // Augment each candidate vector e_i with its image; eliminate the image part.
  IntMat rows(q, IntVec(p + q, 0));
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < p; ++j) rows[i][j] = a[j][i];
    rows[i][p + i] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < p && r < rows.size(); ++c)
    if (euclid_column(rows, r, c)) ++r;
  IntMat kernel;
  for (std::size_t i = r; i < rows.size(); ++i) {
    IntVec v(rows[i].begin() + static_cast<long>(p), rows[i].end());
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace ssg
