#include <doctest.h>

#include "ssg/claim1.hpp"

using namespace ssg;

namespace {

// Sieve oracle for the prime search.
Int oracle_prime(long step, const std::set<Int>& forbidden = {}) {
  for (long s = 1;; ++s) {
    long p = step * s + 1;
    bool prime = p > 1;
    for (long d = 2; d * d <= p && prime; ++d)
      if (p % d == 0) prime = false;
    if (prime && forbidden.find(Int(p)) == forbidden.end()) return Int(p);
  }
}

}  // namespace

TEST_CASE("dirichlet_prime") {
  CHECK(dirichlet_prime(6) == 13);
  CHECK(dirichlet_prime(6) == oracle_prime(12));
  CHECK(dirichlet_prime(4) == 17);
  CHECK(dirichlet_prime(4) == oracle_prime(8));
  CHECK(dirichlet_prime(1) == 3);
  CHECK(dirichlet_prime(-5) == 11);
  CHECK(dirichlet_prime(6, {Int(13)}) == oracle_prime(12, {Int(13)}));
  CHECK_THROWS_AS(dirichlet_prime(0), Error);
  CHECK_THROWS_AS(dirichlet_prime(6, {Int(13)}, 1), Error);  // only s = 1 in budget
}

TEST_CASE("basis recoordinatisation") {
  HeisBasis std_basis = HeisBasis::standard();
  HeisElem g(3, -2, 5);
  CHECK(std_basis.to_coords(g) == g);
  CHECK(std_basis.from_coords(g) == g);

  HeisBasis basis = HeisBasis::from_pair(HeisElem(1, 0, 0), HeisElem(1, 1, 0));
  CHECK(basis.m == 1);
  HeisElem e = basis.from_coords(HeisElem(2, 3, -1));
  CHECK(basis.to_coords(e) == HeisElem(2, 3, -1));

  HeisBasis scaled = HeisBasis::from_pair(HeisElem(2, 0, 0), HeisElem(0, 3, 0));
  CHECK(scaled.m == 6);
  // x^2 y^3 z^6-multiples re-coordinatise exactly.
  HeisElem h = heis_mul(heis_pow(HeisElem(2, 0, 0), 4), HeisElem(0, 0, 12));
  HeisElem coords = scaled.to_coords(h);
  CHECK(coords.a == 4);
  CHECK(scaled.from_coords(coords) == h);
}

TEST_CASE("solve_claim1 non-degenerate case") {
  HeisEndo phi(2, 0, 0, 3);
  Claim1Solution sol = solve_claim1(phi);
  CHECK(sol.case_tag == Claim1Case::NonDegenerate);
  CHECK(sol.p == 13);
  CHECK(sol.k == 1);
  CHECK(sol.alpha_beta.first == 0);
  CHECK(sol.alpha_beta.second == 0);
  CHECK(sol.x1 == HeisElem(1, 0, 0));
  CHECK(sol.effective == phi);  // index-1 rebase keeps the endomorphism
  CHECK(sol.n1.index() == Int(13 * 13) * Int(13 * 13));
}

TEST_CASE("solve_claim1 brute-force congruence cross-check") {
  HeisEndo phi(3, 1, 1, 2);  // det 5, tr 5, disc 1
  Claim1Solution sol = solve_claim1(phi);
  CHECK(sol.case_tag == Claim1Case::NonDegenerate);
  CHECK(sol.p == 11);
  CHECK(sol.k == 1);

  // Enumerate all central twists and check the solver found exactly a
  // working one (containment is the defining property).
  Int p = sol.p;
  int solutions = 0;
  for (Int alpha = 0; alpha < p; ++alpha)
    for (Int beta = 0; beta < p; ++beta) {
      HeisElem x1(1, 0, alpha), y1(0, 1, beta);
      HeisLattice n1 = lattice_canonicalize({heis_pow(x1, p), heis_pow(y1, p)});
      if (lattice_contains(n1, endo_apply(phi, heis_pow(x1, p))) &&
          lattice_contains(n1, endo_apply(phi, heis_pow(y1, p)))) {
        ++solutions;
        CHECK(alpha == sol.alpha_beta.first);
        CHECK(beta == sol.alpha_beta.second);
      }
    }
  CHECK(solutions == 1);
  CHECK(sol.alpha_beta.second == 7);
}

TEST_CASE("solve_claim1 eigenvalue-one case") {
  HeisEndo phi(1, 1, 0, 2);  // det 2, tr 3: eigenvalues 1 and 2
  Claim1Solution sol = solve_claim1(phi);
  CHECK(sol.case_tag == Claim1Case::EigenvalueOne);
  CHECK(sol.x1 == HeisElem(1, 0, 0));
  CHECK(sol.y1 == HeisElem(1, 1, 0));
  CHECK(sol.basis.m == 1);
  CHECK(sol.p == 5);       // smallest prime with 4 | p - 1
  CHECK(sol.k == 5);       // k = p |m|
  CHECK(sol.alpha_beta.first == 0);
  CHECK(sol.alpha_beta.second == 0);
  // Effective endomorphism is diag(1, det^k) with the centre data of phi^k.
  CHECK(sol.effective.a1 == 1);
  CHECK(sol.effective.a2 == 0);
  CHECK(sol.effective.b1 == 0);
  CHECK(sol.effective.b2 == 32);
  CHECK(sol.effective.c1 == 0);   // phi^k(x0) = x0
  CHECK(sol.effective.c2 == 80);  // phi^k(y0) = y0^32 z^{k d2 lambda^{k-1}}
}

TEST_CASE("solve_claim1 rejects invertible input") {
  CHECK_THROWS_AS(solve_claim1(HeisEndo()), Error);
  CHECK_THROWS_AS(solve_claim1(HeisEndo(1, 0, 0, -1)), Error);
}
