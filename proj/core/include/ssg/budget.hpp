#pragma once

#include <cstdlib>
#include <cstddef>

namespace ssg {

// Enumeration/closure budgets. SSG_BUDGET in the environment overrides the
// compiled defaults for every budgeted search at once.
struct Budgets {
  std::size_t coset_states = 1000000;   // coset enumeration / folding state budget
  std::size_t closure_words = 100000;   // exact-triviality section closure
  std::size_t rewriting = 100000;       // section-rewriting search in free_ve_from_automaton
  std::size_t prime_search = 1000000;   // dirichlet_prime search bound on s in 2|d|s+1
  std::size_t prime_retries = 25;       // next-prime retry loop in build_heis_hnn
  std::size_t membership_steps = 2000000;  // hnn m1-membership cycle detection
};

inline Budgets default_budgets() {
  Budgets b;
  if (const char* env = std::getenv("SSG_BUDGET")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) {
      b.coset_states = v;
      b.closure_words = v;
      b.rewriting = v;
      b.prime_search = v;
      b.membership_steps = v;
    }
  }
  return b;
}

}  // namespace ssg
