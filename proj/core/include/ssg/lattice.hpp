#pragma once

#include <string>
#include <vector>

#include "ssg/heisenberg.hpp"
#include "ssg/linalg.hpp"

namespace ssg {

// Finite-index subgroup of the Heisenberg group in canonical triangular form:
//   g1 = x^e1 y^f12 z^f13,  g2 = y^e2 z^f23,  g3 = z^e3
// with e1, e2, e3 > 0, 0 <= f12 < e2, 0 <= f13, f23 < e3 and e3 | e1*e2
// (closure: [g1, g2] = z^{e1 e2}). Index in the full group is e1*e2*e3.
struct HeisLattice {
  Int e1{1}, f12{0}, f13{0};
  Int e2{1}, f23{0};
  Int e3{1};

  bool operator==(const HeisLattice&) const = default;

  HeisElem gen1() const { return HeisElem(e1, f12, f13); }
  HeisElem gen2() const { return HeisElem(0, e2, f23); }
  HeisElem gen3() const { return HeisElem(0, 0, e3); }

  Int index() const { return e1 * e2 * e3; }
  std::string str() const;
};

// Canonical triangular basis of the subgroup generated by `gens`.
// Raises InfiniteIndex when the (x,y)-exponent projections do not span a
// finite-index sublattice of Z^2.
HeisLattice lattice_canonicalize(const std::vector<HeisElem>& gens);

bool lattice_contains(const HeisLattice& lat, const HeisElem& g);
bool lattice_contains(const HeisLattice& lat, const HeisRat& g);

// Image lattice under an injective endomorphism.
HeisLattice lattice_image(const HeisEndo& phi, const HeisLattice& lat);

// Coordinates (alpha, beta, gamma) with g = g1^alpha g2^beta g3^gamma;
// raises NotInLattice when g is outside.
std::array<Int, 3> lattice_coordinates(const HeisLattice& lat, const HeisElem& g);

// The verbal subgroup <g^s : g in L> of a Heisenberg lattice, s >= 1.
HeisLattice lattice_power_subgroup(const HeisLattice& lat, const Int& s);

// Intersection of two finite-index subgroups.
HeisLattice lattice_intersect(const HeisLattice& a, const HeisLattice& b);

// Full-rank sublattice of Z^n in row Hermite normal form (basis as rows).
struct ZLattice {
  IntMat basis;  // n independent rows, HNF

  static ZLattice full(std::size_t n);
  static ZLattice scaled(std::size_t n, const Int& q);  // q Z^n
  static ZLattice from_generators(std::size_t n, const IntMat& gens);  // InfiniteIndex on rank deficiency

  bool operator==(const ZLattice&) const = default;

  std::size_t rank() const { return basis.size(); }
  Int index() const;  // index in Z^n
  bool contains(const IntVec& v) const;
  bool contains(const RatVec& v) const;
  IntVec coordinates(const IntVec& v) const;  // v in basis coordinates; raises if outside

  // Image under an integer matrix (must stay full rank).
  ZLattice transformed(const IntMat& m) const;

  std::string str() const;
};

ZLattice lattice_intersect(const ZLattice& a, const ZLattice& b);

}  // namespace ssg
