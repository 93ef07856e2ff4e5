#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ssg/budget.hpp"
#include "ssg/error.hpp"
#include "ssg/integer.hpp"

namespace ssg {

// Reduced word in a finite-rank free group. Letters are encoded as
// +(g+1) for generator g and -(g+1) for its inverse (g is 0-based).
struct FreeWord {
  std::vector<int> letters;

  FreeWord() = default;
  explicit FreeWord(std::vector<int> ls) : letters(std::move(ls)) {}

  static FreeWord gen(int g, int sign = 1) { return FreeWord({sign > 0 ? g + 1 : -(g + 1)}); }

  bool operator==(const FreeWord&) const = default;
  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  std::string str(const std::vector<std::string>& names = {}) const;
};

FreeWord free_reduce(const FreeWord& w);
FreeWord free_mul(const FreeWord& a, const FreeWord& b);
FreeWord free_inverse(const FreeWord& w);
FreeWord free_pow(const FreeWord& w, const Int& n);

// Shortlex order with alphabet x1 < x1^-1 < x2 < x2^-1 < ...
bool shortlex_less(const FreeWord& a, const FreeWord& b);

// Right-coset table of a subgroup of a free group. The subgroup language is
// the set of loops at the base state; when `complete`, states biject with
// cosets and index() is the subgroup index.
struct CosetTable {
  int rank = 0;
  int base = 0;
  bool complete = false;
  std::vector<std::vector<int>> step;  // [state][2*gen + (inverse?1:0)], -1 undefined

  static CosetTable full_group(int rank);  // index-1 table

  std::size_t index() const { return step.size(); }
  int target(int state, int letter) const;       // letter in word encoding; -1 if undefined
  int trace(int state, const FreeWord& w) const; // -1 once the trace runs off
  bool contains(const FreeWord& w) const;        // requires a folded table (always true here)
};

// Stallings folding of the loops spanned by `gens` in the rank-`rank` free
// group. Complete table iff the subgroup has finite index; otherwise raises
// InfiniteIndex unless `allow_partial` (then returns the folded partial
// table). State budget guards the construction.
CosetTable subgroup_build(const std::vector<FreeWord>& gens, int rank,
                          std::size_t budget = Budgets{}.coset_states,
                          bool allow_partial = false);

// Shortlex transversal and Schreier generators of a complete coset table.
struct SchreierData {
  std::vector<FreeWord> transversal;    // per state, shortlex-minimal rep
  std::vector<FreeWord> schreier_gens;  // nontrivial ones, freely reduced
  std::vector<std::vector<int>> schreier_index;  // [state][gen] -> index or -1 (tree edge)

  // Rewrites a subgroup element as a word over the Schreier generators
  // (letters index into schreier_gens). Raises NotInSubgroup otherwise.
  FreeWord rewrite(const CosetTable& table, const FreeWord& w) const;
};

SchreierData transversal_and_schreier(const CosetTable& table);

// Coset table of a point stabiliser for a left permutation action given by
// one image array per generator (used for level-1 tree actions).
CosetTable stabilizer_table(const std::vector<std::vector<int>>& perms, int point = 0);

}  // namespace ssg
