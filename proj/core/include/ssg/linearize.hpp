#pragma once

#include <string>
#include <vector>

#include "ssg/freegroup.hpp"
#include "ssg/linalg.hpp"

namespace ssg {

// Exact matrix representation with its defining relations. Matrices are kept
// rational; `over_q` records whether the construction lives over Q or Z.
struct LinearRep {
  bool over_q = false;
  std::size_t dimension = 0;
  std::vector<std::string> gen_names;
  std::vector<RatMat> matrices;

  struct Relation {
    std::string name;
    FreeWord word;  // over the representation's generators
  };
  std::vector<Relation> relations;

  // Induction metadata (identity values when the rep is not induced).
  std::size_t induced_blocks = 1;
  std::size_t base_dimension = 0;

  RatMat evaluate(const FreeWord& word) const;
  void verify() const;  // raises RelationFailed on an inexact relation
};

// H x| F~ with H = Z^n and F~ free of rank r acting by GL_n(Z): direct sum of
// a faithful 2x2 integral free-group representation and the (n+1)-dimensional
// affine block (unitriangular translations, b_{n+1,n+1} = 1).
// Generator order: h_1..h_n, f_1..f_r. Dimension is 2 + n + 1.
// `free_images` overrides the built-in images (one 2x2 integral matrix per
// free generator; the default is derived from the unipotent pair with
// off-diagonal entry 2).
LinearRep linearize_semidirect(int n, const std::vector<IntMat>& action,
                               const std::vector<IntMat>& free_images = {});

// Induced representation: base rep of a finite-index subgroup, one generator
// description per generator of the big group (coset permutation plus one
// subgroup factor per coset, as words over the base generators), and the
// relations of the big group. Dimension multiplies by the coset count.
struct InductionGenerator {
  std::string name;
  std::vector<int> coset_perm;    // right multiplication: j -> j'
  std::vector<FreeWord> factors;  // factor in the subgroup per coset
};
LinearRep induce_representation(const LinearRep& base, const std::vector<InductionGenerator>& gens,
                                const std::vector<LinearRep::Relation>& relations);

// Ascending HNN of Z^n over Q: base generators become unitriangular
// translations, t becomes diag(M, 1). Dimension n + 1.
LinearRep linearize_abelian_hnn(const IntMat& m);

// The pinned faithful free-group images: words in the unipotent pair
// S = [[1,2],[0,1]], T = [[1,0],[2,1]] (rank r embeds via S^i T S^-i).
std::vector<IntMat> default_free_images(int rank);

}  // namespace ssg
