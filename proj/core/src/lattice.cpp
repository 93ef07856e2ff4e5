#include "ssg/lattice.hpp"

#include <optional>
#include <sstream>

namespace ssg {

std::string HeisLattice::str() const {
  std::ostringstream os;
  os << "(" << e1 << "," << f12 << "," << f13 << "; " << e2 << "," << f23 << "; " << e3 << ")";
  return os.str();
}

namespace {

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Euclidean elimination on one exponent coordinate, by genuine group moves
// (Nielsen transformations), so z-parts stay exact. Leaves every remaining
// element with exponent 0 in that coordinate and returns the pivot.
std::optional<HeisElem> extract_pivot(std::vector<HeisElem>& work, Int HeisElem::* coord) {
  while (true) {
    std::size_t best = work.size();
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i].*coord == 0) continue;
      if (best == work.size() || cmp(abs(work[i].*coord), abs(work[best].*coord)) < 0) best = i;
    }
    if (best == work.size()) return std::nullopt;
    if (work[best].*coord < 0) work[best] = heis_inverse(work[best]);
    bool reduced_any = false;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i == best || work[i].*coord == 0) continue;
      reduced_any = true;
      Int q = fdiv(work[i].*coord, work[best].*coord);
      work[i] = heis_mul(work[i], heis_pow(work[best], -q));
    }
    if (!reduced_any) {
      HeisElem pivot = work[best];
      work.erase(work.begin() + static_cast<long>(best));
      return pivot;
    }
  }
}

}  // namespace

HeisLattice lattice_canonicalize(const std::vector<HeisElem>& gens) {
  std::vector<HeisElem> work;
  for (const auto& g : gens)
    if (!g.is_identity()) work.push_back(g);

  auto g1 = extract_pivot(work, &HeisElem::a);
  auto g2 = extract_pivot(work, &HeisElem::b);
  if (!g1 || !g2)
    throw validation_error("InfiniteIndex",
                           "exponent projections span a rank-deficient sublattice of Z^2");

  // Residual generators are central; adjoin the closure commutator.
  Int zgcd = g1->a * g2->b;
  for (const auto& g : work) zgcd = gcd(zgcd, g.c);
  Int e3 = abs(zgcd);

  HeisLattice lat;
  lat.e1 = g1->a;
  lat.e2 = g2->b;
  lat.e3 = e3;

  // Reduce f12 first (the move changes g1's z-part), then the z-parts mod e3.
  Int f12 = mod_floor(g1->b, lat.e2);
  HeisElem h1 = heis_mul(*g1, heis_pow(*g2, -((g1->b - f12) / lat.e2)));
  lat.f12 = f12;
  lat.f13 = mod_floor(h1.c, e3);
  lat.f23 = mod_floor(g2->c, e3);
  return lat;
}

bool lattice_contains(const HeisLattice& lat, const HeisElem& g) {
  if (!divides(lat.e1, g.a)) return false;
  Int alpha = g.a / lat.e1;
  Int rb = g.b - alpha * lat.f12;
  if (!divides(lat.e2, rb)) return false;
  Int beta = rb / lat.e2;
  HeisElem w = heis_mul(heis_pow(lat.gen1(), alpha), heis_pow(lat.gen2(), beta));
  return divides(lat.e3, g.c - w.c);
}

bool lattice_contains(const HeisLattice& lat, const HeisRat& g) {
  return g.is_integral() && lattice_contains(lat, g.to_elem());
}

std::array<Int, 3> lattice_coordinates(const HeisLattice& lat, const HeisElem& g) {
  if (!lattice_contains(lat, g))
    throw validation_error("NotInLattice", g.str() + " is not in " + lat.str());
  Int alpha = g.a / lat.e1;
  Int beta = (g.b - alpha * lat.f12) / lat.e2;
  HeisElem w = heis_mul(heis_pow(lat.gen1(), alpha), heis_pow(lat.gen2(), beta));
  return {alpha, beta, (g.c - w.c) / lat.e3};
}

HeisLattice lattice_image(const HeisEndo& phi, const HeisLattice& lat) {
  if (phi.det() == 0) throw validation_error("NotInjective", "image lattice needs det != 0");
  return lattice_canonicalize(
      {endo_apply(phi, lat.gen1()), endo_apply(phi, lat.gen2()), endo_apply(phi, lat.gen3())});
}

HeisLattice lattice_power_subgroup(const HeisLattice& lat, const Int& s) {
  if (s <= 0) throw validation_error("BadExponent", "power subgroup needs s >= 1");
  // In the lattice's own coordinates [g1, g2] = g3^w; s-th powers generate
  // g1^s, g2^s and the central offsets g3^s, g3^{w s(s-1)/2}.
  Int w = div_exact(lat.e1 * lat.e2, lat.e3, "lattice twist");
  Int d = gcd(s, w * choose2(s));
  return lattice_canonicalize(
      {heis_pow(lat.gen1(), s), heis_pow(lat.gen2(), s), heis_pow(lat.gen3(), d)});
}

namespace {

// x with x = r1 (mod m1), x = r2 (mod m2); requires r1 = r2 (mod gcd).
Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
  Int g = gcd(m1, m2);
  Int diff = r2 - r1;
  if (!divides(g, diff)) throw validation_error("CrtUnsolvable", "incompatible congruences");
  Int m2g = m2 / g;
  Int k = mod_floor((diff / g) * mod_inverse(mod_floor((m1 / g), m2g), m2g), m2g);
  return r1 + m1 * k;
}

// z-part (mod e3) of the lattice element over projection (a, b) in P(lat).
Int z_offset(const HeisLattice& lat, const Int& a, const Int& b) {
  Int alpha = div_exact(a, lat.e1, "z_offset");
  Int beta = div_exact(b - alpha * lat.f12, lat.e2, "z_offset");
  HeisElem w = heis_mul(heis_pow(lat.gen1(), alpha), heis_pow(lat.gen2(), beta));
  return w.c;
}

}  // namespace

HeisLattice lattice_intersect(const HeisLattice& a, const HeisLattice& b) {
  ZLattice pa{IntMat{{a.e1, a.f12}, {Int(0), a.e2}}};
  ZLattice pb{IntMat{{b.e1, b.f12}, {Int(0), b.e2}}};
  ZLattice pc = lattice_intersect(pa, pb);

  // delta(u) = z_a(u) - z_b(u) is a homomorphism P_cap -> Z/gcd(e3a, e3b);
  // the intersection projects onto its kernel.
  Int g = gcd(a.e3, b.e3);
  IntVec u1 = pc.basis[0], u2 = pc.basis[1];
  Int d1 = mod_floor(z_offset(a, u1[0], u1[1]) - z_offset(b, u1[0], u1[1]), g);
  Int d2 = mod_floor(z_offset(a, u2[0], u2[1]) - z_offset(b, u2[0], u2[1]), g);
  IntMat ker = int_kernel(IntMat{{d1, d2, g}});

  std::vector<HeisElem> gens;
  for (const auto& kv : ker) {
    Int pa_ = kv[0] * u1[0] + kv[1] * u2[0];
    Int pb_ = kv[0] * u1[1] + kv[1] * u2[1];
    if (pa_ == 0 && pb_ == 0) continue;
    Int c = crt(z_offset(a, pa_, pb_), a.e3, z_offset(b, pa_, pb_), b.e3);
    gens.emplace_back(pa_, pb_, c);
  }
  gens.emplace_back(0, 0, lcm(a.e3, b.e3));
  HeisLattice result = lattice_canonicalize(gens);
  for (const auto& gen : {result.gen1(), result.gen2(), result.gen3()}) {
    if (!lattice_contains(a, gen) || !lattice_contains(b, gen))
      throw verification_error("IntersectBug", "intersection basis escapes a factor");
  }
  return result;
}

ZLattice ZLattice::full(std::size_t n) { return ZLattice{int_identity(n)}; }

ZLattice ZLattice::scaled(std::size_t n, const Int& q) {
  IntMat m = int_identity(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = q;
  return ZLattice{m};
}

ZLattice ZLattice::from_generators(std::size_t n, const IntMat& gens) {
  IntMat h = row_hnf(gens);
  if (h.size() != n)
    throw validation_error("InfiniteIndex", "generators span a rank-deficient sublattice");
  return ZLattice{h};
}

Int ZLattice::index() const {
  Int p = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) p *= basis[i][i];
  return abs(p);
}

bool ZLattice::contains(const IntVec& v) const {
  IntVec r = v;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!divides(basis[i][i], r[i])) return false;
    Int q = r[i] / basis[i][i];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * basis[i][j];
  }
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool ZLattice::contains(const RatVec& v) const {
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) return false;
    w[i] = v[i].get_num();
  }
  return contains(w);
}

IntVec ZLattice::coordinates(const IntVec& v) const {
  IntVec r = v, coords(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!divides(basis[i][i], r[i]))
      throw validation_error("NotInLattice", "vector is not in the lattice");
    coords[i] = r[i] / basis[i][i];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= coords[i] * basis[i][j];
  }
  for (const auto& x : r)
    if (x != 0) throw validation_error("NotInLattice", "vector is not in the lattice");
  return coords;
}

ZLattice ZLattice::transformed(const IntMat& m) const {
  IntMat rows;
  for (const auto& r : basis) rows.push_back(int_apply(m, r));
  return ZLattice::from_generators(basis.size(), rows);
}

std::string ZLattice::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < basis[i].size(); ++j) {
      if (j) os << ",";
      os << basis[i][j];
    }
  }
  os << "]";
  return os.str();
}

ZLattice lattice_intersect(const ZLattice& a, const ZLattice& b) {
  std::size_t n = a.basis.empty() ? 0 : a.basis[0].size();
  // Solve sum u_i a_i = sum w_j b_j; kernel vectors give intersection elements.
  IntMat system(n, IntVec(a.basis.size() + b.basis.size(), 0));
  for (std::size_t i = 0; i < a.basis.size(); ++i)
    for (std::size_t r = 0; r < n; ++r) system[r][i] = a.basis[i][r];
  for (std::size_t j = 0; j < b.basis.size(); ++j)
    for (std::size_t r = 0; r < n; ++r) system[r][a.basis.size() + j] = -b.basis[j][r];
  IntMat ker = int_kernel(system);
  IntMat gens;
  for (const auto& kv : ker) {
    IntVec v(n, 0);
    for (std::size_t i = 0; i < a.basis.size(); ++i)
      for (std::size_t r = 0; r < n; ++r) v[r] += kv[i] * a.basis[i][r];
    gens.push_back(std::move(v));
  }
  return ZLattice::from_generators(n, gens);
}

}  // namespace ssg
