#pragma once

#include <string>
#include <vector>

#include "ssg/automaton.hpp"
#include "ssg/subgroup.hpp"

namespace ssg {

// How generator images extend to the whole domain.
//   Generic            express in domain generators (lattice coordinates for
//                      the kernel part, Schreier rewriting for the free part)
//   HnnHeisClaim3      f(x1^p)=x1, f(y1^p)=y1, f(t)=t u: pull back into N1 by
//                      phi-hat, divide coordinates by (p, p, p^2), conjugate
//                      by the image of t
//   HnnAbelianDivide   f(v, k) = (v/q, k)
enum class ApplyKind { Generic, HnnHeisClaim3, HnnAbelianDivide };

// A defining relation of the domain, as a formal word over the domain's
// declared generators; it must evaluate to the identity in the ambient group.
struct RelationCheck {
  std::string name;
  FreeWord word;
};

struct VerifyLine {
  std::string relation;
  bool pass = false;
  std::string image_normal_form;  // offending normal form when the check fails
};

struct VerifyReport {
  std::vector<VerifyLine> lines;
  bool all_pass = true;
};

// f : H -> G with 1 < [G : H] < infinity, carried as the domain descriptor
// plus one codomain image per domain generator.
struct VirtualEndo {
  FamilyPtr codomain;
  SubgroupPtr domain;
  std::vector<GroupElement> images;      // one per domain generator
  ApplyKind apply_kind = ApplyKind::Generic;
  std::vector<RelationCheck> relations;  // consumed by verify_well_defined
  std::string label;

  GroupElement apply(const GroupElement& g) const;  // raises NotInDomain
};

// Evaluates every relation's image and checks it is the identity. Raises
// NotInDomain when a relation word is not a relator of the ambient group.
VerifyReport verify_well_defined(const VirtualEndo& f,
                                 const std::vector<RelationCheck>& relations);
VerifyReport verify_well_defined(const VirtualEndo& f);  // uses f.relations

struct EndoSystem {
  FamilyPtr codomain;
  std::vector<VirtualEndo> endos;

  Int tree_degree() const;
  std::size_t orbit_count() const { return endos.size(); }
};

// Runs the hard verification gate on every endo; raises VerificationFailed.
void verify_system(const EndoSystem& sys);

// beta = i . f0 . pi : N x| F~ -> N x| F for a semidirect ambient family,
// killing the kernel and applying f0 to the free part.
VirtualEndo compose_projection(const VirtualEndo& f0, const FamilyPtr& ambient);

// Virtual endomorphism of the abstract free group on `gens` extracted from a
// level-1 transitive automaton action: domain = stabiliser of vertex 0,
// f = section at vertex 0, rewritten in the given generators by a bounded
// shortlex search. Raises NotTransitive / RewritingBudgetExceeded.
VirtualEndo free_ve_from_automaton(const AutomatonPtr& aut, const std::vector<StateWord>& gens,
                                   std::size_t rewriting_budget = Budgets{}.rewriting);

// Defining relations of a semidirect-product domain (kernel relations plus
// the conjugation action of the free part on the kernel generators).
std::vector<RelationCheck> semidirect_relations(const SubgroupPtr& domain);

}  // namespace ssg
