#pragma once

#include "ssg/claim1.hpp"
#include "ssg/compiled.hpp"
#include "ssg/virtual_endo.hpp"

namespace ssg {

// Z^n x| F self-similar with two orbits: beta kills the kernel and applies f0
// to the free part, mu halves the even sublattice and fixes F.
// `action` gives one GL_n(Z) matrix per generator of F; f0 must be a verified
// virtual endomorphism of the free group of the same rank.
EndoSystem build_split1(int rank, const std::vector<IntMat>& action, const VirtualEndo& f0);

// N x| F for the Heisenberg group N: computes the stabiliser F1 of
// N1 = <x^p, y^p> inside F, the correction terms u_i for the generator images
// f(t_i) = t_i u_i, and emits {f, beta}; both endos pass the relation gate.
struct HeisSemidirectResult {
  EndoSystem system;
  CosetTable f1_table;                 // stabiliser of N1 in F
  std::vector<FreeWord> t_words;       // Schreier generators t_1..t_n of F1
  std::vector<HeisElem> u;             // the correction terms u_i
  IntMat gammas;                       // gamma_{i,j}, one row per t_i
};
HeisSemidirectResult build_heis_semidirect(const std::vector<HeisEndo>& action, const Int& p,
                                           const VirtualEndo& f0);

// Cyclic-F special case: tries the primary endo first; when the probe finds a
// central witness K = <t1> with [K, N] = 1, falls back to the coordinatewise
// division on G0 = <t1^p> x N1. `certified` reports whether the returned endo
// survived its probe (ProbeInconclusive otherwise, primary endo returned with
// the probe bound attached).
struct CyclicFallbackResult {
  EndoSystem system;          // singleton
  bool fallback_used = false;
  bool certified = false;
  ProbeResult primary_probe;
  ProbeResult final_probe;
};
CyclicFallbackResult build_heis_cyclic_fallback(const HeisEndo& aut, const Int& p, int probe_len,
                                                int probe_depth);

// Ascending HNN of the Heisenberg group. Runs the congruence solver, rebases
// to the effective presentation (N0, phi^k, t^k), extracts the gamma data
// from ^t(x1^p), ^t(y1^p), computes u = x1^{alpha0} y1^{beta0} and emits the
// verified singleton system f : <x1^p, y1^p, t> -> G. Non-integral
// alpha0/beta0 advances to the next admissible prime before surfacing.
struct Claim3Data {
  IntMat gammas;          // 2x3: gamma_{11}, gamma_{12}, gamma_{13}; gamma_{2*}
  std::pair<Int, Int> z1z2;
  Int alpha0, beta0;
  HeisElem u;             // x1^{alpha0} y1^{beta0} in effective coordinates
  bool strict_divisibility = false;  // det(A_eff) divides (p-1)/2
};
struct HeisHnnResult {
  EndoSystem system;      // singleton over the effective HNN family
  Claim1Solution claim1;
  Claim3Data claim3;
  HeisEndo original;      // input phi, kept as metadata
};
HeisHnnResult build_heis_hnn(const HeisEndo& phi, const Budgets& budgets = Budgets{});

// Ascending HNN of Z^n: f divides the base coordinates by q and fixes t;
// domain (q-divisible part) x| <t> of index q^n. BadPrime when q | det(M).
EndoSystem build_abelian_hnn(const IntMat& m, const Int& q);

// Right-coset table of the stabiliser of a Heisenberg lattice under the free
// part of a semidirect family (orbit-stabiliser over canonical forms).
CosetTable heis_lattice_stabilizer(const FamilyPtr& fam, const HeisLattice& start,
                                   std::size_t budget = Budgets{}.coset_states);

}  // namespace ssg
