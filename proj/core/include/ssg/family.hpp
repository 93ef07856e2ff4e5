#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ssg/freegroup.hpp"
#include "ssg/heisenberg.hpp"
#include "ssg/lattice.hpp"
#include "ssg/linalg.hpp"

namespace ssg {

// The concrete group families. Every family has faithful normal forms, so
// equality and the word problem are componentwise.
//
//   Free          finite-rank free group, reduced words
//   SemidirectZ   Z^n x| F, pairs (vector, word), F acts by GL_n(Z)
//   SemidirectHeis  N x| F with N the Heisenberg group, F acts by Aut(N)
//   HnnHeis       ascending HNN of the Heisenberg group in completion
//                 coordinates (rational Mal'cev coordinates, t-exponent)
//   HnnAbelian    ascending HNN of Z^n in completion coordinates
enum class FamilyKind { Free, SemidirectZ, SemidirectHeis, HnnHeis, HnnAbelian };

struct Family;
using FamilyPtr = std::shared_ptr<const Family>;

struct Family {
  FamilyKind kind = FamilyKind::Free;
  int free_rank = 0;    // rank of the acting free group; 1 stable letter for HNN kinds
  int kernel_rank = 0;  // rank of a Z^n kernel/base

  std::vector<IntMat> z_action, z_action_inv;      // SemidirectZ, per free generator
  std::vector<HeisEndo> h_action, h_action_inv;    // SemidirectHeis
  HeisEndo phi;                                    // HnnHeis: det not in {-1,0,1}
  IntMat hnn_matrix;                               // HnnAbelian: det != 0
  RatMat hnn_matrix_inv;

  std::vector<std::string> names;  // declared generator names, in order

  static FamilyPtr free_group(int rank);
  static FamilyPtr semidirect_z(std::vector<IntMat> action);
  static FamilyPtr semidirect_heis(std::vector<HeisEndo> action);
  static FamilyPtr hnn_heis(const HeisEndo& phi);
  static FamilyPtr hnn_abelian(const IntMat& m);

  int num_generators() const { return static_cast<int>(names.size()); }

  IntMat act_matrix(const FreeWord& w) const;   // SemidirectZ word action
  HeisEndo act_endo(const FreeWord& w) const;   // SemidirectHeis word action
  IntVec act_z(const FreeWord& w, const IntVec& v) const;
  HeisElem act_h(const FreeWord& w, const HeisElem& n) const;
};

bool family_equal(const FamilyPtr& a, const FamilyPtr& b);

struct GroupElement {
  FamilyPtr family;

  FreeWord w;    // Free; free part of the semidirect kinds
  IntVec zv;     // SemidirectZ kernel part
  HeisElem hn;   // SemidirectHeis kernel part
  HeisRat hh;    // HnnHeis completion coordinates
  RatVec qv;     // HnnAbelian completion coordinates
  Int tk{0};     // HNN stable-letter exponent

  static GroupElement identity(const FamilyPtr& fam);
  static GroupElement generator(const FamilyPtr& fam, int i);
  static GroupElement free_elem(const FamilyPtr& fam, FreeWord w);
  static GroupElement semi_z(const FamilyPtr& fam, IntVec v, FreeWord w = {});
  static GroupElement semi_h(const FamilyPtr& fam, HeisElem n, FreeWord w = {});
  static GroupElement hnn_h(const FamilyPtr& fam, HeisRat h, Int k = 0);
  static GroupElement hnn_a(const FamilyPtr& fam, RatVec v, Int k = 0);

  std::string str() const;
  std::string key() const;  // canonical normal-form key for hashing/memoisation
};

GroupElement element_mul(const GroupElement& g, const GroupElement& h);
GroupElement element_inverse(const GroupElement& g);
GroupElement element_pow(const GroupElement& g, const Int& n);
GroupElement element_conj(const GroupElement& g, const GroupElement& by);  // by * g * by^-1
bool element_is_identity(const GroupElement& g);
bool element_equal(const GroupElement& g, const GroupElement& h);

// phi-hat^k on HNN coordinates (k may be negative).
HeisRat hnn_shift(const Family& fam, const HeisRat& h, const Int& k);
RatVec hnn_shift(const Family& fam, const RatVec& v, const Int& k);

// Evaluates a formal word over the family's declared generators.
GroupElement evaluate_word(const FamilyPtr& fam, const FreeWord& word_over_gens);

}  // namespace ssg
