#pragma once

#include <array>
#include <string>

#include "ssg/integer.hpp"

namespace ssg {

// Element of the Heisenberg group <x, y | [x,y] = z, z central> in Mal'cev
// normal form x^a y^b z^c. The commutator convention is z = x^-1 y^-1 x y,
// equivalently yx = xy z^-1, which fixes every sign below; do not change it
// independently of the power/product laws.
struct HeisElem {
  Int a{0}, b{0}, c{0};

  HeisElem() = default;
  HeisElem(Int a_, Int b_, Int c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}

  bool operator==(const HeisElem&) const = default;

  bool is_identity() const { return a == 0 && b == 0 && c == 0; }
  std::string str() const;
};

// Rational-coordinate element of the Mal'cev completion; same group law.
struct HeisRat {
  Rat a{0}, b{0}, c{0};

  HeisRat() = default;
  HeisRat(Rat a_, Rat b_, Rat c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {}
  explicit HeisRat(const HeisElem& g) : a(g.a), b(g.b), c(g.c) {}

  bool operator==(const HeisRat&) const = default;

  bool is_identity() const { return a == 0 && b == 0 && c == 0; }
  bool is_integral() const;
  HeisElem to_elem() const;  // requires integral coordinates
  std::string str() const;
};

// Product law: collecting x^a1 y^b1 z^c1 x^a2 y^b2 z^c2 moves x^a2 left
// across y^b1 and picks up z^{-b1 a2}.
HeisElem heis_mul(const HeisElem& lhs, const HeisElem& rhs);
HeisRat heis_mul(const HeisRat& lhs, const HeisRat& rhs);

HeisElem heis_inverse(const HeisElem& g);
HeisRat heis_inverse(const HeisRat& g);

// g^n = (na, nb, nc - ab n(n-1)/2) for every integer n.
HeisElem heis_pow(const HeisElem& g, const Int& n);
HeisRat heis_pow(const HeisRat& g, const Int& n);

// Rational power in the Mal'cev completion (same polynomial law).
HeisRat heis_pow(const HeisRat& g, const Rat& n);

// Commutator [g, h] = g^-1 h^-1 g h = z^{a_g b_h - a_h b_g}.
HeisElem heis_comm(const HeisElem& g, const HeisElem& h);

// Endomorphism of the Heisenberg group, determined freely by the images of
// x and y: phi(x) = x^a1 y^b1 z^c1, phi(y) = x^a2 y^b2 z^c2. The matrix
//   A = [a1 a2; b1 b2]
// has the images as columns; the induced map on the centre is z -> z^det(A).
struct HeisEndo {
  Int a1{1}, a2{0}, b1{0}, b2{1};
  Int c1{0}, c2{0};

  HeisEndo() = default;
  HeisEndo(Int a1_, Int a2_, Int b1_, Int b2_, Int c1_ = 0, Int c2_ = 0)
      : a1(std::move(a1_)), a2(std::move(a2_)), b1(std::move(b1_)), b2(std::move(b2_)),
        c1(std::move(c1_)), c2(std::move(c2_)) {}

  bool operator==(const HeisEndo&) const = default;

  Int det() const { return a1 * b2 - a2 * b1; }
  Int trace() const { return a1 + b2; }
  bool is_injective() const { return det() != 0; }
  bool is_automorphism() const { return det() == 1 || det() == -1; }

  HeisElem image_x() const { return HeisElem(a1, b1, c1); }
  HeisElem image_y() const { return HeisElem(a2, b2, c2); }

  std::string str() const;
};

HeisElem endo_apply(const HeisEndo& phi, const HeisElem& g);

// Unique extension of phi to the rational Mal'cev completion (polynomial in
// the coordinates, denominators only through the input).
HeisRat endo_apply(const HeisEndo& phi, const HeisRat& g);

// Inverse of the completion extension; requires det != 0.
HeisRat endo_apply_inverse(const HeisEndo& phi, const HeisRat& g);

// phi then psi-first composition: (phi . psi)(g) = phi(psi(g)).
HeisEndo endo_compose(const HeisEndo& phi, const HeisEndo& psi);

HeisEndo endo_pow(const HeisEndo& phi, unsigned long k);

}  // namespace ssg
