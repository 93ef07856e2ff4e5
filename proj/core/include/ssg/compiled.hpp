#pragma once

#include <functional>

#include "ssg/automaton.hpp"
#include "ssg/virtual_endo.hpp"

namespace ssg {

// Lazily compiled self-similar action of an EndoSystem's codomain group.
// Level-1 letters are the disjoint union of the right-coset spaces H_i\G,
// one block per virtual endomorphism; for a letter (i, j) and an element g
// the target is (i, j') with H_i t_j g = H_i t_{j'}, and the section there is
// f_i(t_j g t_{j'}^{-1}). States are group elements; nothing is materialised
// beyond the transversals.
class CompiledAction {
 public:
  explicit CompiledAction(EndoSystem sys);

  const EndoSystem& system() const { return sys_; }
  unsigned long degree() const { return degree_; }

  unsigned long target(const GroupElement& g, unsigned long letter) const;
  GroupElement section(const GroupElement& g, unsigned long letter) const;

  TreeWord act(const GroupElement& g, const TreeWord& v) const;
  Portrait portrait(const GroupElement& g, int depth,
                    std::size_t node_budget = Budgets{}.closure_words) const;

  // Portrait scan with early exit; Trivial is reported only when every
  // branch ends in the exact identity element.
  TrivialityResult is_trivial_bounded(const GroupElement& g, int depth) const;

  // Orbit partition of the level-1 letters under the codomain generators.
  std::vector<std::vector<unsigned long>> level1_orbits() const;

 private:
  EndoSystem sys_;
  std::vector<unsigned long> block_size_;
  std::vector<unsigned long> offset_;
  unsigned long degree_ = 0;

  std::pair<std::size_t, unsigned long> split(unsigned long letter) const;
};

struct ProbeResult {
  bool witness_found = false;
  int word_len = 0;
  int depth = 0;
  FreeWord witness_word;      // over the codomain generators
  std::string witness_normal_form;
};

// Enumerates nontrivial reduced words up to word_len in the codomain
// generators (words evaluating to the identity element are relators, not
// kernel candidates, and are skipped); any whose compiled action has no moved
// vertex to `depth` is returned as a kernel witness. `progress` (optional)
// receives (words done, words total) from time to time.
using ProbeProgress = std::function<void(std::size_t, std::size_t)>;
ProbeResult faithfulness_probe(const CompiledAction& action, int word_len, int depth,
                               int threads = 1, const ProbeProgress& progress = {});

// All freely reduced words of length 1..max_len over `rank` generators.
std::vector<FreeWord> reduced_words(int rank, int max_len);

}  // namespace ssg
