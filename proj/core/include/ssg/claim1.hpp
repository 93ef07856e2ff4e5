#pragma once

#include <set>
#include <utility>

#include "ssg/budget.hpp"
#include "ssg/heisenberg.hpp"
#include "ssg/lattice.hpp"

namespace ssg {

// Smallest odd prime p not in `forbidden` with 2|d| dividing p-1.
// Search is bounded; exhausting the bound raises SearchExhausted.
Int dirichlet_prime(const Int& d, const std::set<Int>& forbidden = {},
                    std::size_t budget = Budgets{}.prime_search);

// A generating pair (x1, y1) of a finite-index Heisenberg subgroup together
// with the z-rebase factor m = z-exponent of [x1, y1]. Elements of the span
// are re-coordinatised so that x1, y1, z^m play the roles of x, y, z.
struct HeisBasis {
  HeisElem x1, y1;
  Int m;

  static HeisBasis standard() { return HeisBasis{HeisElem(1, 0, 0), HeisElem(0, 1, 0), 1}; }
  static HeisBasis from_pair(const HeisElem& x1, const HeisElem& y1);

  HeisElem to_coords(const HeisElem& g) const;    // raises NotIntegral outside the span
  HeisElem from_coords(const HeisElem& g) const;
  HeisRat to_coords(const HeisRat& g) const;
  HeisRat from_coords(const HeisRat& g) const;

  // phi expressed in this basis; phi must map the span into itself.
  HeisEndo endo_in_basis(const HeisEndo& phi) const;
};

enum class Claim1Case { NonDegenerate, EigenvalueOne };

struct Claim1Solution {
  Int p;          // odd prime, 2|det(A)| divides p-1
  Int k;          // 1 in the non-degenerate case, p|m| otherwise
  HeisElem x1, y1;
  std::pair<Int, Int> alpha_beta;  // central twists mod p (case 1); (0,0) in case 2
  Claim1Case case_tag{Claim1Case::NonDegenerate};

  HeisBasis basis;      // (x1, y1) with its z-rebase factor
  HeisEndo effective;   // phi^k written in `basis` coordinates
  HeisLattice n0;       // <x1, y1> in original coordinates
  HeisLattice n1;       // <x1^p, y1^p> in original coordinates
};

// Claim-1 solver: produces (p, k, x1, y1) with phi^k(<x1,y1>) <= <x1,y1> and
// phi^k(<x1^p,y1^p>) <= <x1^p,y1^p>, machine-checked on generators before
// returning. `avoid` adds extra primes to skip (used by the retry loop).
// Raises NotApplicable when |det| <= 1 and VerificationFailed if the checked
// containments fail.
Claim1Solution solve_claim1(const HeisEndo& phi, const std::set<Int>& avoid = {},
                            const Budgets& budgets = Budgets{});

}  // namespace ssg
