#include "ssg/claim1.hpp"

namespace ssg {

Int dirichlet_prime(const Int& d, const std::set<Int>& forbidden, std::size_t budget) {
  if (d == 0) throw validation_error("BadModulus", "dirichlet_prime needs d != 0");
  Int step = 2 * abs(d);
  for (std::size_t s = 1; s <= budget; ++s) {
    Int p = step * static_cast<unsigned long>(s) + 1;
    if (is_prime(p) && forbidden.find(p) == forbidden.end()) return p;
  }
  throw budget_error("SearchExhausted",
                     "no admissible prime = 1 mod " + step.get_str() + " within budget");
}

HeisBasis HeisBasis::from_pair(const HeisElem& x1, const HeisElem& y1) {
  Int m = x1.a * y1.b - y1.a * x1.b;
  if (m == 0) throw validation_error("DegenerateBasis", "basis projections are dependent");
  return HeisBasis{x1, y1, m};
}

HeisElem HeisBasis::to_coords(const HeisElem& g) const {
  HeisRat r = to_coords(HeisRat(g));
  return r.to_elem();
}

HeisRat HeisBasis::to_coords(const HeisRat& g) const {
  // Solve the projection, strip x1^alpha y1^beta, rescale the centre by 1/m.
  Rat alpha = (Rat(y1.b) * g.a - Rat(y1.a) * g.b) / Rat(m);
  Rat beta = (Rat(-x1.b) * g.a + Rat(x1.a) * g.b) / Rat(m);
  HeisRat shell = heis_mul(heis_pow(HeisRat(x1), alpha), heis_pow(HeisRat(y1), beta));
  Rat c = (g.c - shell.c) / Rat(m);
  return HeisRat(alpha, beta, c);
}

HeisElem HeisBasis::from_coords(const HeisElem& g) const {
  HeisRat r = from_coords(HeisRat(g));
  return r.to_elem();
}

HeisRat HeisBasis::from_coords(const HeisRat& g) const {
  HeisRat shell = heis_mul(heis_pow(HeisRat(x1), g.a), heis_pow(HeisRat(y1), g.b));
  shell.c += g.c * Rat(m);
  return shell;
}

HeisEndo HeisBasis::endo_in_basis(const HeisEndo& phi) const {
  HeisElem ix = to_coords(endo_apply(phi, x1));
  HeisElem iy = to_coords(endo_apply(phi, y1));
  return HeisEndo(ix.a, iy.a, ix.b, iy.b, ix.c, iy.c);
}

namespace {

// Primitive integer kernel vector of a singular 2x2 integer matrix, sign
// normalised so the leading nonzero entry is positive.
std::pair<Int, Int> primitive_kernel_vector(const Int& r11, const Int& r12, const Int& r21,
                                            const Int& r22) {
  Int v1, v2;
  if (r11 != 0 || r12 != 0) {
    v1 = r12;
    v2 = -r11;
  } else if (r21 != 0 || r22 != 0) {
    v1 = r22;
    v2 = -r21;
  } else {
    throw validation_error("NotApplicable", "kernel of the zero map is not one-dimensional");
  }
  Int content = gcd(v1, v2);
  v1 /= content;
  v2 /= content;
  if (v1 < 0 || (v1 == 0 && v2 < 0)) {
    v1 = -v1;
    v2 = -v2;
  }
  return {v1, v2};
}

}  // namespace

Claim1Solution solve_claim1(const HeisEndo& phi, const std::set<Int>& avoid,
                            const Budgets& budgets) {
  Int det = phi.det();
  if (cmp(abs(det), 2) < 0)
    throw validation_error("NotApplicable", "solve_claim1 needs |det(A)| >= 2, got " + det.get_str());

  Int disc = det - phi.trace() + 1;
  Claim1Solution sol;

  if (disc != 0) {
    sol.case_tag = Claim1Case::NonDegenerate;
    std::set<Int> forbidden = avoid;
    // The congruence system is invertible mod p exactly when p does not
    // divide det(A)(det(A) - tr(A) + 1).
    Int bad = abs(det * disc);
    for (Int q = 2; q * q <= bad; ++q)
      while (divides(q, bad)) {
        forbidden.insert(q);
        bad /= q;
      }
    if (bad > 1) forbidden.insert(bad);
    sol.p = dirichlet_prime(det, forbidden, budgets.prime_search);
    sol.k = 1;

    Int half = (sol.p - 1) / 2;
    Int c1 = phi.c1 - phi.a1 * phi.b1 * half;
    Int c2 = phi.c2 - phi.a2 * phi.b2 * half;
    // [a1 - det, b1; a2, b2 - det] (alpha, beta)^T = (c1, c2)^T  (mod p)
    Int m11 = phi.a1 - det, m12 = phi.b1, m21 = phi.a2, m22 = phi.b2 - det;
    Int sys_det = mod_floor(m11 * m22 - m12 * m21, sol.p);
    Int inv = mod_inverse(sys_det, sol.p);
    Int alpha = mod_floor((m22 * c1 - m12 * c2) * inv, sol.p);
    Int beta = mod_floor((-m21 * c1 + m11 * c2) * inv, sol.p);
    sol.alpha_beta = {alpha, beta};
    sol.x1 = HeisElem(1, 0, alpha);
    sol.y1 = HeisElem(0, 1, beta);
  } else {
    sol.case_tag = Claim1Case::EigenvalueOne;
    // Eigenvalues are 1 and lambda = det(A): pick primitive eigenvectors.
    auto [v1, v2] = primitive_kernel_vector(phi.a1 - 1, phi.a2, phi.b1, phi.b2 - 1);
    auto [w1, w2] = primitive_kernel_vector(phi.a1 - det, phi.a2, phi.b1, phi.b2 - det);
    sol.x1 = HeisElem(v1, v2, 0);
    sol.y1 = HeisElem(w1, w2, 0);
    Int m = v1 * w2 - w1 * v2;
    if (m == 0) throw verification_error("VerificationFailed", "eigenvectors are dependent");
    sol.p = dirichlet_prime(det, avoid, budgets.prime_search);
    sol.k = sol.p * abs(m);
    sol.alpha_beta = {0, 0};
  }

  sol.basis = HeisBasis::from_pair(sol.x1, sol.y1);
  if (sol.k > 100000)
    throw budget_error("PowerBudget", "phi^k with k = " + sol.k.get_str() + " exceeds the budget");
  HeisEndo phik = endo_pow(phi, sol.k.get_ui());
  sol.effective = sol.basis.endo_in_basis(phik);

  sol.n0 = lattice_canonicalize({sol.x1, sol.y1});
  sol.n1 = lattice_canonicalize({heis_pow(sol.x1, sol.p), heis_pow(sol.y1, sol.p)});

  // Machine checks before the solution is usable downstream.
  if (!divides(2 * det, sol.p - 1))
    throw verification_error("VerificationFailed", "2 det(A) does not divide p-1");
  for (const HeisElem& g : {sol.x1, sol.y1})
    if (!lattice_contains(sol.n0, endo_apply(phik, g)))
      throw verification_error("VerificationFailed",
                               "phi^k does not map <x1, y1> into itself at " + g.str());
  for (const HeisElem& g : {heis_pow(sol.x1, sol.p), heis_pow(sol.y1, sol.p)})
    if (!lattice_contains(sol.n1, endo_apply(phik, g)))
      throw verification_error("VerificationFailed",
                               "phi^k does not map <x1^p, y1^p> into itself at " + g.str());
  return sol;
}

}  // namespace ssg
