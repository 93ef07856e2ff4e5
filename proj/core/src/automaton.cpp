#include "ssg/automaton.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ssg {

int WreathAutomaton::state_index(const std::string& name) const {
  for (std::size_t i = 0; i < state_names.size(); ++i)
    if (state_names[i] == name) return static_cast<int>(i);
  throw validation_error("UnknownState", "no state named " + name);
}

void WreathAutomaton::validate() const {
  if (degree < 2) throw validation_error("BadArity", "tree degree must be at least 2");
  std::size_t n = state_names.size();
  if (perms.size() != n || sections.size() != n)
    throw validation_error("BadArity", "state table sizes disagree");
  for (std::size_t s = 0; s < n; ++s) {
    if (perms[s].size() != static_cast<std::size_t>(degree) ||
        sections[s].size() != static_cast<std::size_t>(degree))
      throw validation_error("BadArity", "state " + state_names[s] + " has the wrong arity");
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (int img : perms[s]) {
      if (img < 0 || img >= degree || hit[static_cast<std::size_t>(img)])
        throw validation_error("BadPermutation", "state " + state_names[s] + " is not a bijection");
      hit[static_cast<std::size_t>(img)] = true;
    }
    for (const auto& word : sections[s])
      for (int l : word)
        if (l == 0 || std::abs(l) > static_cast<int>(n))
          throw validation_error("BadSection", "unresolved section reference");
  }
}

std::string StateWord::str() const {
  return FreeWord(letters).str(aut->state_names);
}

StateWord word_mul(const StateWord& a, const StateWord& b) {
  StateWord out{a.aut, free_mul(FreeWord(a.letters), FreeWord(b.letters)).letters};
  return out;
}

StateWord word_inverse(const StateWord& a) {
  return {a.aut, free_inverse(FreeWord(a.letters)).letters};
}

StateWord word_reduce(const StateWord& a) {
  return {a.aut, free_reduce(FreeWord(a.letters)).letters};
}

namespace {

int letter_image(const WreathAutomaton& aut, int letter, int point) {
  int s = std::abs(letter) - 1;
  const auto& p = aut.perms[static_cast<std::size_t>(s)];
  if (letter > 0) return p[static_cast<std::size_t>(point)];
  for (int i = 0; i < aut.degree; ++i)
    if (p[static_cast<std::size_t>(i)] == point) return i;
  throw verification_error("PermBug", "permutation is not a bijection");
}

// Section of a single signed letter at `point`, as a (short) state word.
std::vector<int> letter_section(const WreathAutomaton& aut, int letter, int point) {
  int s = std::abs(letter) - 1;
  if (letter > 0) return aut.sections[static_cast<std::size_t>(s)][static_cast<std::size_t>(point)];
  // (g^-1)_i = (g_{sigma^-1(i)})^-1
  int pre = letter_image(aut, letter, point);  // sigma^-1(point)
  return free_inverse(FreeWord(aut.sections[static_cast<std::size_t>(s)][static_cast<std::size_t>(pre)]))
      .letters;
}

// One level: image of `point` and the section word there.
std::pair<int, std::vector<int>> descend(const StateWord& w, int point) {
  const WreathAutomaton& aut = *w.aut;
  std::vector<int> out;
  int cur = point;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    std::vector<int> sec = letter_section(aut, *it, cur);
    out.insert(out.begin(), sec.begin(), sec.end());
    cur = letter_image(aut, *it, cur);
  }
  return {cur, free_reduce(FreeWord(out)).letters};
}

}  // namespace

std::vector<int> word_perm(const StateWord& w) {
  const WreathAutomaton& aut = *w.aut;
  std::vector<int> perm(static_cast<std::size_t>(aut.degree));
  for (int i = 0; i < aut.degree; ++i) {
    int cur = i;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      cur = letter_image(aut, *it, cur);
    perm[static_cast<std::size_t>(i)] = cur;
  }
  return perm;
}

TreeWord parse_tree_word(const std::string& digits, int degree) {
  TreeWord v;
  if (digits.find(',') != std::string::npos) {
    std::istringstream is(digits);
    std::string tok;
    while (std::getline(is, tok, ',')) v.push_back(std::stoi(tok));
  } else {
    for (char c : digits) {
      if (c < '0' || c > '9') throw validation_error("BadLetter", "tree word digit expected");
      v.push_back(c - '0');
    }
  }
  for (int l : v)
    if (l < 0 || l >= degree) throw validation_error("BadLetter", "tree letter out of range");
  return v;
}

std::string tree_word_str(const TreeWord& v) {
  std::ostringstream os;
  bool wide = false;
  for (int l : v)
    if (l > 9) wide = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (wide && i) os << ",";
    os << v[i];
  }
  return os.str();
}

TreeWord act(const StateWord& w, const TreeWord& v) {
  StateWord cur = word_reduce(w);
  TreeWord out;
  out.reserve(v.size());
  for (int letter : v) {
    if (letter < 0 || letter >= cur.aut->degree)
      throw validation_error("BadLetter", "tree letter out of range");
    auto [img, sec] = descend(cur, letter);
    out.push_back(img);
    cur = StateWord{cur.aut, sec};
  }
  return out;
}

StateWord section(const StateWord& w, const TreeWord& v) {
  StateWord cur = word_reduce(w);
  for (int letter : v) {
    if (letter < 0 || letter >= cur.aut->degree)
      throw validation_error("BadLetter", "tree letter out of range");
    cur = StateWord{cur.aut, descend(cur, letter).second};
  }
  return cur;
}

std::string TrivialityResult::str() const {
  switch (kind) {
    case Kind::Trivial: return "Trivial";
    case Kind::NontrivialAtDepth: return "NontrivialAtDepth(" + std::to_string(depth) + ")";
    case Kind::UndeterminedAtDepth: return "UndeterminedAtDepth(" + std::to_string(depth) + ")";
  }
  return "?";
}

namespace {

bool perm_is_identity(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

std::string word_key(const std::vector<int>& letters) {
  std::string k;
  for (int l : letters) {
    k += std::to_string(l);
    k += '.';
  }
  return k;
}

}  // namespace

TrivialityResult is_trivial(const StateWord& w, TrivialityMode mode, int depth,
                            std::size_t budget) {
  StateWord start = word_reduce(w);
  const WreathAutomaton& aut = *start.aut;
  if (mode == TrivialityMode::BoundedDepth && depth <= 0)
    return {TrivialityResult::Kind::UndeterminedAtDepth, 0};

  std::unordered_set<std::string> seen{word_key(start.letters)};
  std::vector<std::vector<int>> layer{start.letters};
  int level = 0;
  while (!layer.empty()) {
    for (const auto& letters : layer)
      if (!perm_is_identity(word_perm(StateWord{start.aut, letters})))
        return {TrivialityResult::Kind::NontrivialAtDepth, level + 1};
    ++level;
    if (mode == TrivialityMode::BoundedDepth && level >= depth)
      return {TrivialityResult::Kind::UndeterminedAtDepth, depth};
    std::vector<std::vector<int>> next;
    for (const auto& letters : layer) {
      StateWord cur{start.aut, letters};
      for (int i = 0; i < aut.degree; ++i) {
        std::vector<int> sec = descend(cur, i).second;
        if (sec.empty()) continue;
        std::string k = word_key(sec);
        if (seen.insert(k).second) {
          if (seen.size() > budget)
            throw budget_error("ClosureBudgetExceeded", "section closure exceeded the budget");
          next.push_back(std::move(sec));
        }
      }
    }
    layer = std::move(next);
  }
  return {TrivialityResult::Kind::Trivial, level};
}

std::size_t Portrait::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.node_count();
  return n;
}

bool Portrait::all_trivial() const {
  if (!perm_is_identity(perm)) return false;
  for (const auto& c : children)
    if (!c.all_trivial()) return false;
  return true;
}

Portrait portrait(const StateWord& w, int depth) {
  if (depth < 0) throw validation_error("BadArity", "portrait depth must be >= 0");
  Portrait node;
  node.perm = word_perm(w);
  if (depth == 0) return node;
  for (int i = 0; i < w.aut->degree; ++i)
    node.children.push_back(portrait(section(w, {i}), depth - 1));
  return node;
}

AutomatonPtr make_bn(int n, const std::vector<bool>& swap_flags) {
  if (n < 3) throw validation_error("BadArity", "the B_n family needs n >= 3");
  int q_count = n > 4 ? n - 4 : 0;
  if (!swap_flags.empty() && static_cast<int>(swap_flags.size()) != q_count)
    throw validation_error("BadArity",
                           "expected " + std::to_string(q_count) + " permutation choices for B_" +
                               std::to_string(n));
  std::vector<bool> flags = swap_flags.empty() ? std::vector<bool>(static_cast<std::size_t>(q_count), true)
                                               : swap_flags;

  auto aut = std::make_shared<WreathAutomaton>();
  aut->degree = 2;
  const std::vector<int> id{0, 1}, sw{1, 0};
  auto add_state = [&](const std::string& name, const std::vector<int>& perm, int s0, int s1) {
    aut->state_names.push_back(name);
    aut->perms.push_back(perm);
    aut->sections.push_back({{s0 + 1}, {s1 + 1}});
  };

  if (n == 3) {
    add_state("a", id, 2, 1);  // a = (c, b)
    add_state("b", id, 1, 2);  // b = (b, c)
    add_state("c", sw, 0, 0);  // c = (a, a) sigma
  } else if (n == 4) {
    add_state("a", id, 2, 1);
    add_state("b", id, 1, 2);
    add_state("c", sw, 3, 3);  // c = (d, d) sigma
    add_state("d", sw, 0, 0);  // d = (a, a) sigma
  } else {
    // states: a b c q1 .. q_{n-4} d
    int d_idx = n - 1;
    add_state("a", id, 2, 1);
    add_state("b", id, 1, 2);
    add_state("c", sw, 3, 3);  // c = (q1, q1) sigma
    for (int i = 1; i <= q_count; ++i) {
      int next = (i == q_count) ? d_idx : 3 + i;
      add_state("q" + std::to_string(i), flags[static_cast<std::size_t>(i - 1)] ? sw : id, next,
                next);
    }
    add_state("d", sw, 0, 0);
  }
  aut->validate();
  return aut;
}

DerivedGenerators derived_free_generators(int n, const AutomatonPtr& aut) {
  if (n < 3) throw validation_error("BadArity", "derived generators need n >= 3");
  if (static_cast<int>(aut->state_names.size()) != n)
    throw validation_error("BadArity", "automaton does not look like B_" + std::to_string(n));
  DerivedGenerators out;
  out.freeness_warning = (n == 3);
  for (int i = 0; i + 1 < n; ++i)
    out.gens.push_back(word_mul(StateWord::state(aut, i), StateWord::state(aut, i + 1)));
  return out;
}

}  // namespace ssg
