#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ssg/family.hpp"

namespace ssg {

// Finite-index subgroup of one of the concrete families, with an exact
// membership test, a canonical right-coset index, and a cached transversal
// (one representative per right coset, materialised once).
//
// Kernel data per family:
//   Free            none (the coset table is everything)
//   SemidirectZ     sublattice of Z^n, invariant under the free part
//   SemidirectHeis  Heisenberg lattice, invariant under the free part
//   HnnHeis         the subgroup <x1^p, y1^p, t>: residues mod (p, p, p^2)
//   HnnAbelian      the subgroup <q a1, ..., q an, t>: residues mod q
struct SubgroupDescriptor {
  FamilyPtr family;

  CosetTable free_table;       // index-1 table when the free part is everything
  SchreierData free_schreier;  // transversal + Schreier generators of free_table

  ZLattice zsub;      // SemidirectZ
  HeisLattice hsub;   // SemidirectHeis
  Int hnn_p{0};       // HnnHeis p / HnnAbelian q

  std::vector<std::string> gen_names;
  std::vector<GroupElement> gens;

  Int index() const;
  bool contains(const GroupElement& g) const;

  // Canonical right-coset number in [0, index); coset of the identity is 0.
  Int coset_index(const GroupElement& g) const;

  const std::vector<GroupElement>& transversal() const;

  GroupElement domain_generator(int i) const { return gens.at(static_cast<std::size_t>(i)); }
  GroupElement evaluate_domain_word(const FreeWord& word_over_gens) const;

 private:
  mutable std::vector<GroupElement> transversal_cache_;
  mutable std::once_flag transversal_once_;
  void build_transversal() const;
};

using SubgroupPtr = std::shared_ptr<const SubgroupDescriptor>;

// Builders (each validates its invariants).
SubgroupPtr subgroup_free(const FamilyPtr& fam, const CosetTable& table);
SubgroupPtr subgroup_semi_z(const FamilyPtr& fam, const ZLattice& kernel, const CosetTable& free_part);
SubgroupPtr subgroup_semi_h(const FamilyPtr& fam, const HeisLattice& kernel, const CosetTable& free_part);
SubgroupPtr subgroup_hnn_heis(const FamilyPtr& fam, const Int& p);
SubgroupPtr subgroup_hnn_abelian(const FamilyPtr& fam, const Int& q);

// Decides membership of g (with t-exponent 0) in the normal closure of
// N1 = <x1^p, y1^p> inside <x1^p, y1^p, t>, by iterating the induced map on
// coordinates mod p (vector part) and mod p^2 (centre) with cycle detection.
// Pre: g.tk == 0 and p odd, p does not divide det(A); raises PrecondViolated.
bool hnn_m1_membership(const FamilyPtr& fam, const GroupElement& g, const Int& p,
                       std::size_t budget = Budgets{}.membership_steps);

}  // namespace ssg
