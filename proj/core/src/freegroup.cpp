#include "ssg/freegroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace ssg {

std::string FreeWord::str(const std::vector<std::string>& names) const {
  if (letters.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < letters.size()) {
    int l = letters[i];
    std::size_t run = i;
    while (run < letters.size() && letters[run] == l) ++run;
    long exp = static_cast<long>(run - i) * (l > 0 ? 1 : -1);
    int g = std::abs(l) - 1;
    if (!first) os << "*";
    first = false;
    if (static_cast<std::size_t>(g) < names.size())
      os << names[g];
    else
      os << "x" << (g + 1);
    if (exp != 1) os << "^" << exp;
    i = run;
  }
  return os.str();
}

FreeWord free_reduce(const FreeWord& w) {
  FreeWord out;
  for (int l : w.letters) {
    if (l == 0) throw validation_error("BadLetter", "zero letter in a free word");
    if (!out.letters.empty() && out.letters.back() == -l)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

FreeWord free_mul(const FreeWord& a, const FreeWord& b) {
  FreeWord out = a;
  for (int l : b.letters) {
    if (!out.letters.empty() && out.letters.back() == -l)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

FreeWord free_inverse(const FreeWord& w) {
  FreeWord out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

FreeWord free_pow(const FreeWord& w, const Int& n) {
  if (n == 0) return FreeWord();
  FreeWord base = n > 0 ? w : free_inverse(w);
  Int reps = abs(n);
  if (reps > 100000) throw budget_error("PowerBudget", "free power exponent too large");
  FreeWord out;
  for (Int i = 0; i < reps; ++i) out = free_mul(out, base);
  return out;
}

namespace {

// Alphabet position used by shortlex: x1 < x1^-1 < x2 < x2^-1 < ...
int letter_rank(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

}  // namespace

bool shortlex_less(const FreeWord& a, const FreeWord& b) {
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  for (std::size_t i = 0; i < a.letters.size(); ++i)
    if (a.letters[i] != b.letters[i]) return letter_rank(a.letters[i]) < letter_rank(b.letters[i]);
  return false;
}

CosetTable CosetTable::full_group(int rank) {
  CosetTable t;
  t.rank = rank;
  t.complete = true;
  t.step.assign(1, std::vector<int>(2 * rank, 0));
  return t;
}

int CosetTable::target(int state, int letter) const {
  int g = std::abs(letter) - 1;
  return step[static_cast<std::size_t>(state)][static_cast<std::size_t>(2 * g + (letter < 0 ? 1 : 0))];
}

int CosetTable::trace(int state, const FreeWord& w) const {
  int s = state;
  for (int l : w.letters) {
    s = target(s, l);
    if (s < 0) return -1;
  }
  return s;
}

bool CosetTable::contains(const FreeWord& w) const {
  return trace(base, free_reduce(w)) == base;
}

namespace {

struct FoldingGraph {
  int rank;
  std::vector<std::vector<int>> adj;  // [vertex][letter-slot], -1 undefined
  std::vector<int> parent;            // union-find
  std::deque<std::pair<int, int>> pending;

  explicit FoldingGraph(int r) : rank(r) { new_vertex(); }

  int new_vertex() {
    adj.emplace_back(2 * rank, -1);
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  }

  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  // slot for reading letter l forward
  static int slot(int l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

  void link(int u, int l, int v) {
    u = find(u);
    v = find(v);
    int s = slot(l), si = slot(-l);
    if (adj[u][s] != -1 && find(adj[u][s]) != v) pending.emplace_back(adj[u][s], v);
    adj[u][s] = v;
    if (adj[v][si] != -1 && find(adj[v][si]) != u) pending.emplace_back(adj[v][si], u);
    adj[v][si] = u;
    fold();
  }

  void fold() {
    while (!pending.empty()) {
      auto [a, b] = pending.front();
      pending.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      parent[b] = a;
      for (int s = 0; s < 2 * rank; ++s) {
        if (adj[b][s] == -1) continue;
        int t = find(adj[b][s]);
        if (adj[a][s] == -1)
          adj[a][s] = t;
        else if (find(adj[a][s]) != t)
          pending.emplace_back(adj[a][s], t);
      }
      adj[b].assign(2 * rank, -1);
    }
  }
};

}  // namespace

CosetTable subgroup_build(const std::vector<FreeWord>& gens, int rank, std::size_t budget,
                          bool allow_partial) {
  FoldingGraph g(rank);
  for (const auto& raw : gens) {
    FreeWord w = free_reduce(raw);
    int cur = g.find(0);
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      int next = (i + 1 == w.letters.size()) ? g.find(0) : g.new_vertex();
      g.link(cur, w.letters[i], next);
      cur = g.find(next);
      if (g.parent.size() > budget)
        throw budget_error("StateBudget", "folding exceeded the state budget");
    }
  }

  // Renumber the reachable folded vertices, base first (BFS in letter order,
  // so state numbering is the shortlex coset order).
  std::vector<int> number(g.parent.size(), -1);
  std::vector<int> order;
  int base = g.find(0);
  number[base] = 0;
  order.push_back(base);
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    int u = order[qi];
    for (int s = 0; s < 2 * rank; ++s) {
      int t = g.adj[u][s];
      if (t == -1) continue;
      t = g.find(t);
      if (number[t] == -1) {
        number[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }

  CosetTable table;
  table.rank = rank;
  table.base = 0;
  table.step.assign(order.size(), std::vector<int>(2 * rank, -1));
  bool complete = true;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int s = 0; s < 2 * rank; ++s) {
      int t = g.adj[order[i]][s];
      if (t == -1) {
        complete = false;
        continue;
      }
      table.step[i][s] = number[g.find(t)];
    }
  table.complete = complete;
  if (!complete && !allow_partial)
    throw validation_error("InfiniteIndex",
                           "subgroup has infinite index (folded core is incomplete)");
  return table;
}

SchreierData transversal_and_schreier(const CosetTable& table) {
  if (!table.complete)
    throw validation_error("InfiniteIndex", "transversal needs a complete coset table");
  std::size_t n = table.index();
  SchreierData data;
  data.transversal.assign(n, FreeWord());
  std::vector<bool> seen(n, false);
  std::vector<std::vector<bool>> tree(n, std::vector<bool>(table.rank, false));
  seen[static_cast<std::size_t>(table.base)] = true;
  std::deque<int> queue{table.base};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int lr = 0; lr < 2 * table.rank; ++lr) {
      int letter = (lr % 2 == 0) ? lr / 2 + 1 : -(lr / 2 + 1);
      int t = table.target(s, letter);
      if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = true;
      data.transversal[static_cast<std::size_t>(t)] =
          free_mul(data.transversal[static_cast<std::size_t>(s)], FreeWord({letter}));
      if (letter > 0)
        tree[static_cast<std::size_t>(s)][static_cast<std::size_t>(letter - 1)] = true;
      else
        tree[static_cast<std::size_t>(t)][static_cast<std::size_t>(-letter - 1)] = true;
      queue.push_back(t);
    }
  }

  data.schreier_index.assign(n, std::vector<int>(table.rank, -1));
  for (std::size_t s = 0; s < n; ++s)
    for (int gidx = 0; gidx < table.rank; ++gidx) {
      int t = table.target(static_cast<int>(s), gidx + 1);
      FreeWord w = free_mul(free_mul(data.transversal[s], FreeWord({gidx + 1})),
                            free_inverse(data.transversal[static_cast<std::size_t>(t)]));
      w = free_reduce(w);
      if (w.empty()) continue;
      if (tree[s][static_cast<std::size_t>(gidx)])
        throw verification_error("SchreierBug", "tree edge produced a nontrivial generator");
      data.schreier_index[s][static_cast<std::size_t>(gidx)] =
          static_cast<int>(data.schreier_gens.size());
      data.schreier_gens.push_back(w);
    }
  return data;
}

FreeWord SchreierData::rewrite(const CosetTable& table, const FreeWord& raw) const {
  FreeWord w = free_reduce(raw);
  FreeWord out;
  int s = table.base;
  for (int l : w.letters) {
    int g = std::abs(l) - 1;
    if (l > 0) {
      int idx = schreier_index[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)];
      if (idx >= 0) out.letters.push_back(idx + 1);
      s = table.target(s, l);
    } else {
      int t = table.target(s, l);
      int idx = schreier_index[static_cast<std::size_t>(t)][static_cast<std::size_t>(g)];
      if (idx >= 0) out.letters.push_back(-(idx + 1));
      s = t;
    }
    if (s < 0) throw validation_error("NotInSubgroup", "trace ran off the coset table");
  }
  if (s != table.base)
    throw validation_error("NotInSubgroup", "word does not lie in the subgroup");
  return free_reduce(out);
}

CosetTable stabilizer_table(const std::vector<std::vector<int>>& perms, int point) {
  if (perms.empty()) throw validation_error("BadArity", "stabilizer needs at least one generator");
  std::size_t m = perms[0].size();
  std::vector<std::vector<int>> inverse(perms.size(), std::vector<int>(m));
  for (std::size_t g = 0; g < perms.size(); ++g) {
    if (perms[g].size() != m) throw validation_error("BadArity", "permutation degree mismatch");
    for (std::size_t i = 0; i < m; ++i) inverse[g][static_cast<std::size_t>(perms[g][i])] = static_cast<int>(i);
  }
  // Right-coset table of Stab(point): coset Hu corresponds to u^{-1}(point),
  // so reading generator g forward applies g^{-1} to the point.
  CosetTable t;
  t.rank = static_cast<int>(perms.size());
  t.step.assign(m, std::vector<int>(2 * perms.size(), -1));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t g = 0; g < perms.size(); ++g) {
      t.step[s][2 * g] = inverse[g][s];
      t.step[s][2 * g + 1] = perms[g][s];
    }
  t.complete = true;
  // Re-base so that `point` is state 0 and states follow the BFS order.
  std::vector<int> number(m, -1);
  std::vector<int> order;
  number[static_cast<std::size_t>(point)] = 0;
  order.push_back(point);
  for (std::size_t qi = 0; qi < order.size(); ++qi)
    for (int lr = 0; lr < 2 * t.rank; ++lr) {
      int tgt = t.step[static_cast<std::size_t>(order[qi])][static_cast<std::size_t>(lr)];
      if (number[static_cast<std::size_t>(tgt)] == -1) {
        number[static_cast<std::size_t>(tgt)] = static_cast<int>(order.size());
        order.push_back(tgt);
      }
    }
  if (order.size() != m)
    throw validation_error("NotTransitive", "the action is not transitive on the points");
  CosetTable out;
  out.rank = t.rank;
  out.base = 0;
  out.complete = true;
  out.step.assign(m, std::vector<int>(2 * t.rank, -1));
  for (std::size_t s = 0; s < m; ++s)
    for (int lr = 0; lr < 2 * t.rank; ++lr)
      out.step[static_cast<std::size_t>(number[s])][static_cast<std::size_t>(lr)] =
          number[static_cast<std::size_t>(t.step[s][static_cast<std::size_t>(lr)])];
  return out;
}

}  // namespace ssg
