#include "ssg/compiled.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace ssg {

CompiledAction::CompiledAction(EndoSystem sys) : sys_(std::move(sys)) {
  if (sys_.endos.empty()) throw validation_error("BadArity", "empty endo system");
  unsigned long off = 0;
  for (const auto& e : sys_.endos) {
    if (!family_equal(e.codomain, sys_.codomain))
      throw validation_error("FamilyMismatch", "endo codomain disagrees with the system");
    Int idx = e.domain->index();
    if (!idx.fits_ulong_p())
      throw budget_error("IndexBudget", "tree degree too large to compile");
    e.domain->transversal();  // materialise up front; queries stay pure
    offset_.push_back(off);
    block_size_.push_back(idx.get_ui());
    off += idx.get_ui();
  }
  degree_ = off;
}

std::pair<std::size_t, unsigned long> CompiledAction::split(unsigned long letter) const {
  if (letter >= degree_) throw validation_error("BadLetter", "tree letter out of range");
  std::size_t block = 0;
  while (block + 1 < offset_.size() && letter >= offset_[block + 1]) ++block;
  return {block, letter - offset_[block]};
}

// Left action through the right-coset transversal {t_j}: the letter j is the
// left coset t_j^{-1} H, g sends it to j' with H t_{j'} = H t_j g^{-1}, and
// the section there is f(t_{j'} g t_j^{-1}) (an element of H). This composes
// exactly like the automaton convention: (gh)_j = g_{sigma_h(j)} h_j.
unsigned long CompiledAction::target(const GroupElement& g, unsigned long letter) const {
  auto [block, j] = split(letter);
  const VirtualEndo& endo = sys_.endos[block];
  const GroupElement& rep = endo.domain->transversal()[j];
  Int j2 = endo.domain->coset_index(element_mul(rep, element_inverse(g)));
  return offset_[block] + j2.get_ui();
}

GroupElement CompiledAction::section(const GroupElement& g, unsigned long letter) const {
  auto [block, j] = split(letter);
  const VirtualEndo& endo = sys_.endos[block];
  const GroupElement& rep = endo.domain->transversal()[j];
  Int j2 = endo.domain->coset_index(element_mul(rep, element_inverse(g)));
  const GroupElement& rep2 = endo.domain->transversal()[j2.get_ui()];
  return endo.apply(element_mul(element_mul(rep2, g), element_inverse(rep)));
}

TreeWord CompiledAction::act(const GroupElement& g, const TreeWord& v) const {
  GroupElement cur = g;
  TreeWord out;
  out.reserve(v.size());
  for (int letter : v) {
    if (letter < 0) throw validation_error("BadLetter", "negative tree letter");
    unsigned long l = static_cast<unsigned long>(letter);
    out.push_back(static_cast<int>(target(cur, l)));
    cur = section(cur, l);
  }
  return out;
}

Portrait CompiledAction::portrait(const GroupElement& g, int depth,
                                  std::size_t node_budget) const {
  std::size_t nodes = 1, layer = 1;
  for (int d = 0; d < depth; ++d) {
    layer *= degree_;
    nodes += layer;
    if (nodes > node_budget)
      throw budget_error("ClosureBudgetExceeded", "portrait would exceed the node budget");
  }
  Portrait node;
  node.perm.resize(degree_);
  for (unsigned long l = 0; l < degree_; ++l) node.perm[l] = static_cast<int>(target(g, l));
  if (depth > 0)
    for (unsigned long l = 0; l < degree_; ++l)
      node.children.push_back(portrait(section(g, l), depth - 1, node_budget));
  return node;
}

namespace {

TrivialityResult bounded_scan(const CompiledAction& ca, const GroupElement& g, int remaining,
                              int current) {
  if (element_is_identity(g)) return {TrivialityResult::Kind::Trivial, current};
  if (remaining == 0) return {TrivialityResult::Kind::UndeterminedAtDepth, current};
  for (unsigned long l = 0; l < ca.degree(); ++l)
    if (ca.target(g, l) != l) return {TrivialityResult::Kind::NontrivialAtDepth, current + 1};
  bool undetermined = false;
  for (unsigned long l = 0; l < ca.degree(); ++l) {
    TrivialityResult r = bounded_scan(ca, ca.section(g, l), remaining - 1, current + 1);
    if (r.kind == TrivialityResult::Kind::NontrivialAtDepth) return r;
    if (r.kind == TrivialityResult::Kind::UndeterminedAtDepth) undetermined = true;
  }
  if (undetermined) return {TrivialityResult::Kind::UndeterminedAtDepth, current + remaining};
  return {TrivialityResult::Kind::Trivial, current};
}

}  // namespace

TrivialityResult CompiledAction::is_trivial_bounded(const GroupElement& g, int depth) const {
  if (depth < 0) throw validation_error("BadArity", "depth must be >= 0");
  TrivialityResult r = bounded_scan(*this, g, depth, 0);
  if (r.kind == TrivialityResult::Kind::UndeterminedAtDepth) r.depth = depth;
  return r;
}

std::vector<std::vector<unsigned long>> CompiledAction::level1_orbits() const {
  std::vector<unsigned long> parent(degree_);
  for (unsigned long i = 0; i < degree_; ++i) parent[i] = i;
  auto find = [&](unsigned long v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (int gi = 0; gi < sys_.codomain->num_generators(); ++gi) {
    GroupElement g = GroupElement::generator(sys_.codomain, gi);
    for (unsigned long l = 0; l < degree_; ++l) {
      unsigned long a = find(l), b = find(target(g, l));
      if (a != b) parent[a] = b;
    }
  }
  std::vector<std::vector<unsigned long>> orbits;
  std::vector<long> orbit_of(degree_, -1);
  for (unsigned long l = 0; l < degree_; ++l) {
    unsigned long root = find(l);
    if (orbit_of[root] < 0) {
      orbit_of[root] = static_cast<long>(orbits.size());
      orbits.emplace_back();
    }
    orbits[static_cast<std::size_t>(orbit_of[root])].push_back(l);
  }
  return orbits;
}

std::vector<FreeWord> reduced_words(int rank, int max_len) {
  std::vector<FreeWord> out, layer{FreeWord()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<FreeWord> next;
    for (const auto& w : layer)
      for (int g = 0; g < rank; ++g)
        for (int sign : {1, -1}) {
          int letter = sign > 0 ? g + 1 : -(g + 1);
          if (!w.letters.empty() && w.letters.back() == -letter) continue;
          FreeWord nw = w;
          nw.letters.push_back(letter);
          next.push_back(nw);
        }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

ProbeResult faithfulness_probe(const CompiledAction& action, int word_len, int depth,
                               int threads, const ProbeProgress& progress) {
  ProbeResult result;
  result.word_len = word_len;
  result.depth = depth;
  const FamilyPtr& fam = action.system().codomain;
  std::vector<FreeWord> words = reduced_words(fam->num_generators(), word_len);

  std::atomic<bool> found{false};
  std::atomic<std::size_t> done{0};
  std::mutex out_mutex;
  auto worker = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < words.size() && !found.load(); i += stride) {
      std::size_t n = ++done;
      if (progress && n % 512 == 0) progress(n, words.size());
      GroupElement g = evaluate_word(fam, words[i]);
      if (element_is_identity(g)) continue;  // a relator, not a kernel candidate
      TrivialityResult r = action.is_trivial_bounded(g, depth);
      if (r.kind != TrivialityResult::Kind::NontrivialAtDepth) {
        std::lock_guard<std::mutex> lock(out_mutex);
        if (!found.exchange(true)) {
          result.witness_found = true;
          result.witness_word = words[i];
          result.witness_normal_form = g.str();
        }
      }
    }
  };

  int n_threads = std::max(1, threads);
  if (n_threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back(worker, static_cast<std::size_t>(t), static_cast<std::size_t>(n_threads));
    for (auto& th : pool) th.join();
  }
  return result;
}

}  // namespace ssg
