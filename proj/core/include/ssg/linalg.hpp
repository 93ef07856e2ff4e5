#pragma once

#include <cstddef>
#include <vector>

#include "ssg/integer.hpp"

namespace ssg {

// Small dense exact matrices. Everything here is desk scale (n <= 8 or so);
// algorithms favour clarity over asymptotics.
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline IntMat int_identity(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMat rat_identity(std::size_t n) {
  RatMat m(n, RatVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline IntVec int_apply(const IntMat& a, const IntVec& v) {
  IntVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

inline RatMat rat_mul(const RatMat& a, const RatMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat c(n, RatVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline RatVec rat_apply(const RatMat& a, const RatVec& v) {
  RatVec r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

inline RatMat to_rat(const IntMat& a) {
  RatMat r(a.size(), RatVec(a.empty() ? 0 : a[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = Rat(a[i][j]);
  return r;
}

Int int_det(IntMat a);            // fraction-free elimination
RatMat rat_inverse(RatMat a);     // Gauss-Jordan; raises on singular input
RatMat int_inverse_over_q(const IntMat& a);

// Row Hermite normal form of the lattice spanned by the rows of `rows`
// (any number of rows, n columns). Returns a full set of independent rows:
// pivots positive, entries above each pivot reduced into [0, pivot).
IntMat row_hnf(IntMat rows);

// Basis of the integer kernel {v : a v = 0}, as columns stacked into rows of
// the returned matrix (each returned row is one kernel vector).
IntMat int_kernel(const IntMat& a);

}  // namespace ssg
