#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "ssg/error.hpp"

namespace ssg {

// All group-theoretic arithmetic is exact: arbitrary-precision integers and
// rationals throughout, no overflow semantics anywhere.
using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Least non-negative residue of a mod m, m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact division; raises if d does not divide a.
inline Int div_exact(const Int& a, const Int& d, const char* where = "div_exact") {
  if (d == 0 || !divides(d, a))
    throw verification_error("NonIntegralDivision",
                             std::string(where) + ": " + a.get_str() + " not divisible by " + d.get_str());
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

// Inverse of a mod m (m > 1); raises if gcd(a, m) != 1.
inline Int mod_inverse(const Int& a, const Int& m) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw validation_error("NotInvertible", a.get_str() + " has no inverse mod " + m.get_str());
  return inv;
}

inline bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// n(n-1)/2, exact for every integer n (the product of consecutive integers is even).
inline Int choose2(const Int& n) {
  return n * (n - 1) / 2;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

// Reduces a rational with denominator coprime to m into Z/m (least non-negative).
inline Int rat_mod(const Rat& q, const Int& m) {
  Int den = q.get_den();
  Int inv = mod_inverse(mod_floor(den, m), m);
  return mod_floor(mod_floor(q.get_num(), m) * inv, m);
}

inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace ssg
