#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ssg/budget.hpp"
#include "ssg/error.hpp"
#include "ssg/freegroup.hpp"

namespace ssg {

// Finite wreath recursion on the m-ary rooted tree. Each state carries a
// root permutation and one section reference per letter; sections are words
// over the state set (signed letters, same encoding as FreeWord).
//
// Convention (fixed project-wide): actions are left actions, (gh)(v) = g(h(v)),
// so sigma_{gh} = sigma_g o sigma_h and (gh)_i = g_{sigma_h(i)} h_i.
struct WreathAutomaton {
  int degree = 2;
  std::vector<std::string> state_names;
  std::vector<std::vector<int>> perms;                   // [state][letter] -> letter
  std::vector<std::vector<std::vector<int>>> sections;   // [state][letter] -> state word

  int state_index(const std::string& name) const;
  void validate() const;  // perms are bijections, sections resolve, degree >= 2
};

using AutomatonPtr = std::shared_ptr<const WreathAutomaton>;

// Formal product of automaton states (and inverses).
struct StateWord {
  AutomatonPtr aut;
  std::vector<int> letters;  // +(state+1) / -(state+1)

  static StateWord state(const AutomatonPtr& a, int s) { return {a, {s + 1}}; }
  static StateWord empty(const AutomatonPtr& a) { return {a, {}}; }

  bool is_empty_word() const { return letters.empty(); }
  std::string str() const;
};

StateWord word_mul(const StateWord& a, const StateWord& b);
StateWord word_inverse(const StateWord& a);
StateWord word_reduce(const StateWord& a);

// Root permutation of the composed action.
std::vector<int> word_perm(const StateWord& w);

// Vertices are letter sequences, first level first.
using TreeWord = std::vector<int>;
TreeWord parse_tree_word(const std::string& digits, int degree);
std::string tree_word_str(const TreeWord& v);

TreeWord act(const StateWord& w, const TreeWord& v);

// Section of the action at vertex v (reduced state word).
StateWord section(const StateWord& w, const TreeWord& v);

enum class TrivialityMode { Exact, BoundedDepth };

struct TrivialityResult {
  enum class Kind { Trivial, NontrivialAtDepth, UndeterminedAtDepth } kind;
  int depth = 0;

  bool is_trivial() const { return kind == Kind::Trivial; }
  std::string str() const;
};

// Exact mode: breadth-first greatest fixed point over the (finite) closure of
// section words; returns the minimal moved depth for nontrivial input.
// BoundedDepth: portrait scan to the given depth.
TrivialityResult is_trivial(const StateWord& w, TrivialityMode mode, int depth = 0,
                            std::size_t budget = Budgets{}.closure_words);

struct Portrait {
  std::vector<int> perm;
  std::vector<Portrait> children;  // empty at the leaves

  std::size_t node_count() const;
  bool all_trivial() const;
};

Portrait portrait(const StateWord& w, int depth);

// The automaton family generating free products of n copies of C2.
// `swap_flags` are the sigma_{n,i} choices for the q-states (n > 4); one flag
// per q-state, defaulting to the swap. B_3 and B_4 take no flags.
AutomatonPtr make_bn(int n, const std::vector<bool>& swap_flags = {});

struct DerivedGenerators {
  std::vector<StateWord> gens;  // the n-1 two-letter products
  bool freeness_warning = false;  // set for n = 3 (only the odd-n, all-swap theorem applies)
};

// x1 = a b, x2 = b c, x3 = c q1, ..., x_{n-1} = q_{n-4} d.
DerivedGenerators derived_free_generators(int n, const AutomatonPtr& aut);

}  // namespace ssg
