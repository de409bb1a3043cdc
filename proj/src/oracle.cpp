#include "p123/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <queue>
#include <stdexcept>

namespace p123 {

const char* predicate_name(OraclePredicate p) {
  switch (p) {
    case OraclePredicate::P_PROPER: return "p-proper";
    case OraclePredicate::M_PROPER: return "m-proper";
    case OraclePredicate::S_PROPER: return "s-proper";
    case OraclePredicate::ALL_FORESTS: return "all-forests";
    case OraclePredicate::S1_MATCHING: return "s1-matching";
  }
  return "?";
}

OraclePredicate predicate_from_name(const std::string& name) {
  if (name == "p-proper") return OraclePredicate::P_PROPER;
  if (name == "m-proper") return OraclePredicate::M_PROPER;
  if (name == "s-proper") return OraclePredicate::S_PROPER;
  if (name == "all-forests") return OraclePredicate::ALL_FORESTS;
  if (name == "s1-matching") return OraclePredicate::S1_MATCHING;
  throw precondition_error("unknown predicate name: " + name);
}

namespace {

using Clock = std::chrono::steady_clock;

bool properness_predicate(OraclePredicate p) {
  return p == OraclePredicate::P_PROPER || p == OraclePredicate::M_PROPER ||
         p == OraclePredicate::S_PROPER;
}

// Backtracking over edges in a BFS order, pruning as soon as a vertex has
// all incident labels fixed and violates the predicate against an already
// completed neighbour (for the shape predicates: as soon as a completed
// same-class pair closes a cycle / exceeds the allowed degree).
struct Searcher {
  const Graph& g;
  int k;
  OraclePredicate pred;
  long long max_nodes;
  Clock::time_point deadline;

  std::vector<int> edge_order;   // edge ids, BFS-discovery order
  std::vector<int> complete_at;  // position completing the vertex; -1 isolated
  std::vector<std::vector<int>> completes;  // position -> vertices completing
  std::vector<int> lab;                     // by edge id, 0 = unassigned
  std::vector<char> complete;

  // per-vertex accumulators (which one is live depends on pred)
  std::vector<std::array<int, 4>> exps;          // prime exponents of product
  std::vector<int> sums;                         // label sums
  std::vector<std::array<int, 11>> counts;       // label multiplicities

  // union-find with undo trail, used by ALL_FORESTS only
  std::vector<int> dsu_parent, dsu_size;
  std::vector<int> dsu_trail;                    // roots that gained a parent
  std::vector<size_t> trail_mark;                // per position checkpoint

  int non_one_edges = 0;  // for the k=3 "first non-1 label is 2" reduction
  std::array<int, 11> label_uses{};  // for the multiset canonical order
  long long nodes = 0;

  Searcher(const Graph& g_, int k_, OraclePredicate p, const SearchBudget& b)
      : g(g_), k(k_), pred(p), max_nodes(b.max_nodes) {
    deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(b.max_seconds));
    build_order();
    lab.assign(g.m(), 0);
    complete.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v)
      if (g.degree(v) == 0) complete[v] = 1;
    exps.assign(g.n, {0, 0, 0, 0});
    sums.assign(g.n, 0);
    counts.assign(g.n, {});
    if (pred == OraclePredicate::ALL_FORESTS) {
      dsu_parent.resize(g.n);
      for (int v = 0; v < g.n; ++v) dsu_parent[v] = v;
      dsu_size.assign(g.n, 1);
    }
    trail_mark.assign(g.m() + 1, 0);
  }

  void build_order() {
    int m = g.m();
    edge_order.reserve(m);
    std::vector<char> seen_edge(m, 0), seen_vert(g.n, 0);
    for (int root = 0; root < g.n; ++root) {
      if (seen_vert[root] || g.degree(root) == 0) continue;
      std::queue<int> q;
      q.push(root);
      seen_vert[root] = 1;
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (size_t i = 0; i < g.adj[u].size(); ++i) {
          int x = g.adj[u][i], e = g.inc[u][i];
          if (!seen_edge[e]) {
            seen_edge[e] = 1;
            edge_order.push_back(e);
          }
          if (!seen_vert[x]) {
            seen_vert[x] = 1;
            q.push(x);
          }
        }
      }
    }
    complete_at.assign(g.n, -1);
    std::vector<int> remaining(g.n);
    for (int v = 0; v < g.n; ++v) remaining[v] = g.degree(v);
    completes.assign(m, {});
    for (int p = 0; p < m; ++p) {
      auto [u, v] = g.edges[edge_order[p]];
      if (--remaining[u] == 0) {
        complete_at[u] = p;
        completes[p].push_back(u);
      }
      if (--remaining[v] == 0) {
        complete_at[v] = p;
        completes[p].push_back(v);
      }
    }
  }

  int dsu_find(int v) const {
    while (dsu_parent[v] != v) v = dsu_parent[v];
    return v;
  }

  bool dsu_union(int a, int b) {  // false if already joined (cycle)
    a = dsu_find(a);
    b = dsu_find(b);
    if (a == b) return false;
    if (dsu_size[a] < dsu_size[b]) std::swap(a, b);
    dsu_parent[b] = a;
    dsu_size[a] += dsu_size[b];
    dsu_trail.push_back(b);
    return true;
  }

  void dsu_undo_to(size_t mark) {
    while (dsu_trail.size() > mark) {
      int b = dsu_trail.back();
      dsu_trail.pop_back();
      int a = dsu_parent[b];
      dsu_size[a] -= dsu_size[b];
      dsu_parent[b] = b;
    }
  }

  bool same_signature(int a, int b) const {
    switch (pred) {
      case OraclePredicate::P_PROPER: return exps[a] == exps[b];
      case OraclePredicate::M_PROPER: return counts[a] == counts[b];
      case OraclePredicate::S_PROPER: return sums[a] == sums[b];
      default: return exps[a] == exps[b];  // shape predicates: product class
    }
  }

  // Predicate check run the moment vertex w's last incident label lands.
  bool admit_completion(int w) {
    switch (pred) {
      case OraclePredicate::P_PROPER:
      case OraclePredicate::M_PROPER:
      case OraclePredicate::S_PROPER:
        for (int x : g.adj[w])
          if (complete[x] && same_signature(w, x)) return false;
        return true;
      case OraclePredicate::ALL_FORESTS:
        for (int x : g.adj[w])
          if (complete[x] && exps[w] == exps[x] && !dsu_union(w, x))
            return false;
        return true;
      case OraclePredicate::S1_MATCHING: {
        const std::array<int, 4> one{0, 0, 0, 0};
        int own = 0;
        for (int x : g.adj[w]) {
          if (!complete[x] || exps[w] != exps[x]) continue;
          if (exps[w] != one) return false;  // non-1 classes: independent
          if (++own > 1) return false;       // w's degree inside the 1-class
          int theirs = 1;                    // x gains w as a 1-class edge
          for (int y : g.adj[x])
            if (y != w && complete[y] && exps[y] == exps[x]) ++theirs;
          if (theirs > 1) return false;
        }
        return true;
      }
    }
    return false;
  }

  void apply_label(int e, int lbl, int sign) {
    lab[e] = sign > 0 ? lbl : 0;
    auto [u, v] = g.edges[e];
    ProductClass c = label_class(lbl);
    for (int i = 0; i < 4; ++i) {
      exps[u][i] += sign * c.e[i];
      exps[v][i] += sign * c.e[i];
    }
    sums[u] += sign * lbl;
    sums[v] += sign * lbl;
    counts[u][lbl] += sign;
    counts[v][lbl] += sign;
    label_uses[lbl] += sign;
    if (lbl != 1) non_one_edges += sign;
  }

  bool label_allowed(int lbl) const {
    if (pred == OraclePredicate::M_PROPER) {
      // multisets are invariant under relabelling: force first occurrences
      // of labels to appear in ascending order
      for (int j = 1; j < lbl; ++j)
        if (label_uses[j] == 0) return false;
      return true;
    }
    // products are invariant under swapping labels 2 and 3, and all three
    // shape predicates depend only on the product classes; so when k = 3 the
    // first non-1 label may be fixed to 2
    if (k == 3 && pred != OraclePredicate::S_PROPER && lbl == 3 &&
        non_one_edges == 0)
      return false;
    return true;
  }

  bool dfs(size_t p) {
    if (p == edge_order.size()) return true;
    int e = edge_order[p];
    for (int lbl = 1; lbl <= k; ++lbl) {
      if (!label_allowed(lbl)) continue;
      if (++nodes > max_nodes)
        throw budget_error("labelling search exceeded its node budget");
      if ((nodes & 4095) == 0 && Clock::now() > deadline)
        throw budget_error("labelling search exceeded its time budget");
      apply_label(e, lbl, +1);
      trail_mark[p] = dsu_trail.size();
      bool ok = true;
      size_t done = 0;
      for (int w : completes[p]) {
        if (!admit_completion(w)) {
          ok = false;
          break;
        }
        complete[w] = 1;
        ++done;
      }
      if (ok && dfs(p + 1)) return true;
      for (size_t i = 0; i < done; ++i) complete[completes[p][i]] = 0;
      if (pred == OraclePredicate::ALL_FORESTS) dsu_undo_to(trail_mark[p]);
      apply_label(e, lbl, -1);
    }
    return false;
  }
};

void verify_witness(const Graph& g, const EdgeLabelling& l,
                    OraclePredicate pred) {
  bool ok = false;
  switch (pred) {
    case OraclePredicate::P_PROPER: ok = is_p_proper(g, l); break;
    case OraclePredicate::M_PROPER: ok = is_m_proper(g, l); break;
    case OraclePredicate::S_PROPER: ok = is_s_proper(g, l); break;
    case OraclePredicate::ALL_FORESTS:
      ok = check_shape(g, l, Requirement::ALL_FORESTS).ok;
      break;
    case OraclePredicate::S1_MATCHING:
      ok = check_shape(g, l, Requirement::S1_MATCHING).ok;
      break;
  }
  if (!ok)
    throw std::logic_error("internal: search witness failed re-validation");
}

ChiResult chi_generic(const Graph& g, OraclePredicate pred,
                      const SearchBudget& budget) {
  ChiResult r;
  if (!is_nice(g)) {
    r.defined = false;
    return r;
  }
  for (int k = 1; k <= 10; ++k) {
    SearchResult s = find_k_labelling(g, k, pred, budget);
    r.attempts.push_back(std::move(s));
    if (r.attempts.back().outcome == SearchOutcome::WITNESS) {
      r.value = k;
      return r;
    }
  }
  throw std::logic_error("internal: no witness for any k up to 10");
}

}  // namespace

SearchResult find_k_labelling(const Graph& g, int k, OraclePredicate pred,
                              const SearchBudget& budget) {
  if (k < 1) throw precondition_error("label count k must be at least 1");
  if (k > 10)
    throw precondition_error("labels above 10 are not supported");
  auto start = Clock::now();
  SearchResult r;
  if (properness_predicate(pred) && !is_nice(g)) {
    r.outcome = SearchOutcome::UNDEFINED_NICENESS;
    return r;
  }
  Searcher s(g, k, pred, budget);
  bool found = s.dfs(0);
  r.nodes = s.nodes;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (found) {
    EdgeLabelling wit{k, s.lab};
    verify_witness(g, wit, pred);
    r.outcome = SearchOutcome::WITNESS;
    r.witness = std::move(wit);
  } else {
    r.outcome = SearchOutcome::EXHAUSTED;
  }
  return r;
}

ChiResult chi_p(const Graph& g, const SearchBudget& budget) {
  return chi_generic(g, OraclePredicate::P_PROPER, budget);
}

ChiResult chi_m(const Graph& g, const SearchBudget& budget) {
  return chi_generic(g, OraclePredicate::M_PROPER, budget);
}

ChiResult chi_s(const Graph& g, const SearchBudget& budget) {
  return chi_generic(g, OraclePredicate::S_PROPER, budget);
}

SearchResult forest_two_labelling(const Graph& g, const SearchBudget& budget) {
  return find_k_labelling(g, 2, OraclePredicate::ALL_FORESTS, budget);
}

RegularCheck verify_regular_via_multiset(const Graph& g,
                                         const SearchBudget& budget) {
  if (!g.is_regular())
    throw precondition_error("graph is not regular");
  if (!is_nice(g))
    throw precondition_error("graph is not nice (K_2 component)");
  RegularCheck rc;
  rc.search = find_k_labelling(g, 3, OraclePredicate::M_PROPER, budget);
  if (rc.search.outcome != SearchOutcome::WITNESS) {
    rc.anomaly = true;
    return rc;
  }
  rc.witness = *rc.search.witness;
  // with all degrees equal, distinct multisets force distinct products
  if (!is_p_proper(g, rc.witness))
    throw std::logic_error(
        "internal: m-proper witness on a regular graph is not p-proper");
  rc.ok = true;
  return rc;
}

}  // namespace p123
