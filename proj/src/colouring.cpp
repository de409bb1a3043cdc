#include "p123/colouring.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace p123 {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  explicit Deadline(double seconds)
      : end(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds))) {}
  bool expired() const { return Clock::now() > end; }
};

int greedy_clique(const Graph& g) {
  if (g.n == 0) return 0;
  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  int best = 1;
  int seeds = std::min(g.n, 8);
  for (int si = 0; si < seeds; ++si) {
    std::vector<int> clique{order[si]};
    for (int v : order) {
      if (v == order[si]) continue;
      bool ok = true;
      for (int c : clique)
        if (!g.has_edge(v, c)) {
          ok = false;
          break;
        }
      if (ok) clique.push_back(v);
    }
    best = std::max(best, (int)clique.size());
  }
  return best;
}

// greedy colouring; DSATUR order for small graphs, degree order for large
std::vector<int> greedy_colouring(const Graph& g) {
  std::vector<int> colour(g.n, -1);
  if (g.n == 0) return colour;
  std::vector<char> used;
  if (g.n <= 2048) {
    std::vector<int> sat(g.n, 0), deg(g.n);
    for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
    std::vector<std::vector<char>> nbc(g.n);  // neighbour-colour presence
    for (int v = 0; v < g.n; ++v) nbc[v].assign(g.n + 1, 0);
    for (int step = 0; step < g.n; ++step) {
      int pick = -1;
      for (int v = 0; v < g.n; ++v)
        if (colour[v] < 0 &&
            (pick < 0 || sat[v] > sat[pick] ||
             (sat[v] == sat[pick] && deg[v] > deg[pick])))
          pick = v;
      used.assign(g.n + 1, 0);
      for (int u : g.adj[pick])
        if (colour[u] >= 0) used[colour[u]] = 1;
      int c = 0;
      while (used[c]) ++c;
      colour[pick] = c;
      for (int u : g.adj[pick])
        if (colour[u] < 0 && !nbc[u][c]) {
          nbc[u][c] = 1;
          ++sat[u];
        }
    }
  } else {
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
      return a < b;
    });
    int maxc = g.max_degree() + 1;
    used.assign(maxc + 1, 0);
    for (int v : order) {
      std::fill(used.begin(), used.end(), 0);
      for (int u : g.adj[v])
        if (colour[u] >= 0) used[colour[u]] = 1;
      int c = 0;
      while (used[c]) ++c;
      colour[v] = c;
    }
  }
  return colour;
}

struct KColourSearch {
  const Graph& g;
  int k;
  const Deadline& deadline;
  std::vector<int> colour;
  std::vector<std::vector<int>> nb_count;  // nb_count[v][c] neighbours coloured c
  std::vector<int> sat;
  long long nodes = 0;
  bool timed_out = false;

  KColourSearch(const Graph& g_, int k_, const Deadline& d)
      : g(g_), k(k_), deadline(d), colour(g_.n, -1), sat(g_.n, 0) {
    nb_count.assign(g.n, std::vector<int>(k, 0));
  }

  bool run(int coloured, int max_used) {
    if (coloured == g.n) return true;
    if ((++nodes & 1023) == 0 && deadline.expired()) {
      timed_out = true;
      return false;
    }
    int pick = -1;
    for (int v = 0; v < g.n; ++v)
      if (colour[v] < 0 &&
          (pick < 0 || sat[v] > sat[pick] ||
           (sat[v] == sat[pick] && g.degree(v) > g.degree(pick))))
        pick = v;
    int climit = std::min(k - 1, max_used + 1);
    for (int c = 0; c <= climit; ++c) {
      if (nb_count[pick][c] > 0) continue;
      colour[pick] = c;
      for (int u : g.adj[pick])
        if (colour[u] < 0 && nb_count[u][c]++ == 0) ++sat[u];
      if (run(coloured + 1, std::max(max_used, c))) return true;
      for (int u : g.adj[pick])
        if (colour[u] < 0 && --nb_count[u][c] == 0) --sat[u];
      colour[pick] = -1;
      if (timed_out) return false;
    }
    return false;
  }
};

struct ChiResultInternal {
  int chi;
  std::vector<int> colour;
};

ChiResultInternal solve_chromatic(const Graph& g, const ColouringBudget& b) {
  if (g.n == 0) return {0, {}};
  if (g.m() == 0) return {1, std::vector<int>(g.n, 0)};
  Deadline deadline(b.max_seconds);
  auto bip = check_bipartite(g);
  if (bip.bipartite) {
    std::vector<int> col(g.n);
    for (int v = 0; v < g.n; ++v) col[v] = std::max(0, bip.side[v]);
    return {2, col};
  }
  std::vector<int> greedy = greedy_colouring(g);
  int ub = *std::max_element(greedy.begin(), greedy.end()) + 1;
  int lb = std::max(3, greedy_clique(g));
  for (int k = lb; k < ub; ++k) {
    if (deadline.expired())
      throw budget_error("chromatic number search exceeded time budget");
    KColourSearch search(g, k, deadline);
    if (search.run(0, -1)) return {k, search.colour};
    if (search.timed_out)
      throw budget_error("chromatic number search exceeded time budget");
  }
  return {ub, greedy};
}

}  // namespace

int chromatic_number(const Graph& g, const ColouringBudget& b) {
  return solve_chromatic(g, b).chi;
}

std::vector<std::vector<int>> optimal_colouring(const Graph& g,
                                                const ColouringBudget& b) {
  auto res = solve_chromatic(g, b);
  std::vector<std::vector<int>> parts(res.chi);
  for (int v = 0; v < g.n; ++v) parts[res.colour[v]].push_back(v);
  for (auto& p : parts)
    if (p.empty()) throw precondition_error("internal: empty colour class");
  return parts;
}

NormalizedColouring normalize_colouring(const Graph& g,
                                        std::vector<std::vector<int>> parts) {
  NormalizedColouring nc;
  nc.part_of.assign(g.n, -1);
  for (int i = 0; i < (int)parts.size(); ++i)
    for (int v : parts[i]) {
      if (v < 0 || v >= g.n) throw precondition_error("colouring names unknown vertex");
      if (nc.part_of[v] != -1)
        throw precondition_error("vertex " + std::to_string(v) +
                                 " appears in two parts");
      nc.part_of[v] = i;
    }
  for (int v = 0; v < g.n; ++v)
    if (nc.part_of[v] < 0)
      throw precondition_error("vertex " + std::to_string(v) + " missing from parts");
  for (auto [u, v] : g.edges)
    if (nc.part_of[u] == nc.part_of[v])
      throw precondition_error("not a proper colouring: edge (" + std::to_string(u) +
                               "," + std::to_string(v) + ") inside one part");

  int np = (int)parts.size();
  std::vector<char> seen(np, 0);
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v = 0; v < g.n; ++v) {
      int i = nc.part_of[v];
      if (i == 0) continue;
      std::fill(seen.begin(), seen.end(), 0);
      for (int u : g.adj[v]) seen[nc.part_of[u]] = 1;
      for (int j = 0; j < i; ++j)
        if (!seen[j]) {
          nc.part_of[v] = j;
          moved = true;
          break;
        }
    }
  }
  std::vector<std::vector<int>> rebuilt(np);
  for (int v = 0; v < g.n; ++v) rebuilt[nc.part_of[v]].push_back(v);
  // at the fixpoint empty parts are necessarily trailing; drop them
  std::vector<int> remap(np, -1);
  nc.parts.clear();
  for (int i = 0; i < np; ++i)
    if (!rebuilt[i].empty()) {
      remap[i] = (int)nc.parts.size();
      nc.parts.push_back(std::move(rebuilt[i]));
    } else {
      for (int j = i + 1; j < np; ++j)
        if (!rebuilt[j].empty())
          throw precondition_error("internal: non-trailing empty part after move-down");
      break;
    }
  for (int v = 0; v < g.n; ++v) nc.part_of[v] = remap[nc.part_of[v]];
  return nc;
}

}  // namespace p123
