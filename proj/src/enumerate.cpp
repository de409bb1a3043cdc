#include "p123/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <utility>

namespace p123 {

namespace {

// Iterated neighbourhood refinement.  Starts from degrees and repeatedly
// re-colours each vertex by (own colour, sorted neighbour colours) until the
// number of colour classes stops growing.  Colour ranks are assigned by
// sorting the signature values themselves, so the result does not depend on
// vertex ids.
std::vector<int> refine_colours(const Graph& g) {
  const int n = g.n;
  std::vector<int> col(n);
  for (int v = 0; v < n; ++v) col[v] = g.degree(v);
  int classes = -1;
  for (;;) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].push_back(col[v]);
      for (int u : g.adj[v]) sig[v].push_back(col[u]);
      std::sort(sig[v].begin() + 1, sig[v].end());
    }
    std::vector<std::vector<int>> keys = sig;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (int v = 0; v < n; ++v) {
      col[v] = static_cast<int>(
          std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
    }
    const int now = static_cast<int>(keys.size());
    if (now == classes) break;
    classes = now;
  }
  return col;
}

struct CanonSearch {
  int n = 0;
  std::vector<std::uint32_t> amask;      // adjacency bitmask per vertex
  std::vector<std::vector<int>> cells;   // refinement cells, fixed order
  std::vector<int> cell_of_pos;          // which cell supplies each position
  std::vector<std::uint16_t> best;       // best chunk per position (1..n-1)
  bool have_best = false;
  std::vector<int> perm;                 // perm[pos] = original vertex id
  std::vector<std::uint16_t> cur;
  std::vector<char> used;

  // Returns true if best was replaced somewhere in this subtree.  `tight`
  // means the chunks chosen so far equal the current best prefix exactly;
  // when a descendant installs a new best, that new best extends this
  // node's prefix, so the flag is restored to tight for the remaining
  // candidates at this level.
  bool dfs(int pos, bool tight) {
    if (pos == n) {
      if (!have_best || !tight) {
        best = cur;
        have_best = true;
        return true;
      }
      return false;
    }
    bool replaced = false;
    for (int v : cells[cell_of_pos[pos]]) {
      if (used[v]) continue;
      bool ntight = tight;
      std::uint16_t chunk = 0;
      if (pos > 0) {
        for (int i = 0; i < pos; ++i)
          chunk = static_cast<std::uint16_t>(
              (chunk << 1) | ((amask[v] >> perm[i]) & 1u));
        if (have_best && tight) {
          if (chunk > best[pos - 1]) continue;
          if (chunk < best[pos - 1]) ntight = false;
        }
        cur[pos - 1] = chunk;
      }
      used[v] = 1;
      perm[pos] = v;
      if (dfs(pos + 1, ntight)) {
        tight = true;
        replaced = true;
      }
      used[v] = 0;
    }
    return replaced;
  }
};

}  // namespace

std::string canonical_key(const Graph& g) {
  const int n = g.n;
  if (n > 16)
    throw precondition_error("canonical form supports at most 16 vertices");
  std::string key(1, static_cast<char>(n));
  if (n == 0) return key;

  CanonSearch s;
  s.n = n;
  s.amask.assign(n, 0);
  for (const auto& [eu, ev] : g.edges) {
    s.amask[eu] |= 1u << ev;
    s.amask[ev] |= 1u << eu;
  }

  const std::vector<int> col = refine_colours(g);
  const int classes = 1 + *std::max_element(col.begin(), col.end());
  s.cells.assign(classes, {});
  for (int v = 0; v < n; ++v) s.cells[col[v]].push_back(v);
  s.cell_of_pos.reserve(n);
  for (int c = 0; c < classes; ++c)
    for (std::size_t i = 0; i < s.cells[c].size(); ++i)
      s.cell_of_pos.push_back(c);

  s.perm.assign(n, -1);
  s.cur.assign(n > 1 ? n - 1 : 0, 0);
  s.used.assign(n, 0);
  s.dfs(0, true);

  // Pack the winning chunks (position j contributes j bits, most significant
  // first) into bytes after the leading size byte.
  int nbits = n * (n - 1) / 2;
  std::string bits((nbits + 7) / 8, '\0');
  int at = 0;
  for (int j = 1; j < n; ++j) {
    for (int b = j - 1; b >= 0; --b, ++at) {
      if ((s.best[j - 1] >> b) & 1u)
        bits[at / 8] = static_cast<char>(bits[at / 8] | (0x80 >> (at % 8)));
    }
  }
  return key + bits;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.n != b.n || a.m() != b.m()) return false;
  return canonical_key(a) == canonical_key(b);
}

std::vector<Graph> enumerate_connected(int n, int max_degree) {
  if (n < 1 || n > 12)
    throw precondition_error("enumeration supports 1 <= n <= 12 vertices");
  std::vector<Graph> level;
  level.push_back(make_graph(1, {}));
  for (int sz = 2; sz <= n; ++sz) {
    std::vector<Graph> next;
    std::unordered_set<std::string> seen;
    for (const Graph& parent : level) {
      const int pn = sz - 1;
      for (std::uint32_t sub = 1; sub < (1u << pn); ++sub) {
        if (max_degree >= 0) {
          if (__builtin_popcount(sub) > max_degree) continue;
          bool ok = true;
          for (int v = 0; v < pn && ok; ++v)
            if ((sub >> v) & 1u)
              if (parent.degree(v) + 1 > max_degree) ok = false;
          if (!ok) continue;
        }
        std::vector<std::pair<int, int>> es = parent.edges;
        es.reserve(es.size() + __builtin_popcount(sub));
        for (int v = 0; v < pn; ++v)
          if ((sub >> v) & 1u) es.emplace_back(v, pn);
        Graph child = make_graph(sz, std::move(es));
        std::string key = canonical_key(child);
        if (seen.insert(std::move(key)).second) next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return level;
}

}  // namespace p123
