#include "p123/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

namespace p123 {

int Graph::edge_id(int u, int v) const {
  if (u < 0 || v < 0 || u >= n || v >= n || u == v) return -1;
  const auto& a = adj[u];
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it == a.end() || *it != v) return -1;
  return inc[u][it - a.begin()];
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
  return d;
}

int Graph::min_degree() const {
  if (n == 0) return 0;
  int d = degree(0);
  for (int v = 1; v < n; ++v) d = std::min(d, degree(v));
  return d;
}

bool Graph::is_regular() const {
  for (int v = 1; v < n; ++v)
    if (degree(v) != degree(0)) return false;
  return true;
}

bool Graph::is_complete() const { return (long long)m() * 2 == (long long)n * (n - 1); }

Graph make_graph(int n, std::vector<std::pair<int, int>> edge_list) {
  if (n < 0) throw precondition_error("vertex count must be non-negative");
  for (auto& e : edge_list) {
    if (e.first == e.second)
      throw precondition_error("self-loop at vertex " + std::to_string(e.first));
    if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
      throw precondition_error("edge (" + std::to_string(e.first) + "," +
                               std::to_string(e.second) + ") out of range for n=" +
                               std::to_string(n));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edge_list.begin(), edge_list.end());
  edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
  Graph g;
  g.n = n;
  g.edges = std::move(edge_list);
  std::vector<int> deg(n, 0);
  for (auto [u, v] : g.edges) {
    ++deg[u];
    ++deg[v];
  }
  g.adj.assign(n, {});
  g.inc.assign(n, {});
  for (int v = 0; v < n; ++v) {
    g.adj[v].reserve(deg[v]);
    g.inc[v].reserve(deg[v]);
  }
  // Scanning the lexicographically sorted edge list keeps each adjacency
  // list sorted: neighbours below v arrive while the first coordinate runs
  // through u < v, then neighbours above v in increasing order.
  for (int i = 0; i < (int)g.edges.size(); ++i) {
    auto [u, v] = g.edges[i];
    g.adj[u].push_back(v);
    g.inc[u].push_back(i);
    g.adj[v].push_back(u);
    g.inc[v].push_back(i);
  }
  return g;
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> es;
  if (n > 1) es.reserve((std::size_t)n * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) es.push_back({u, v});
  return make_graph(n, std::move(es));
}

Layering bfs_layers(const Graph& g, int root) {
  if (root < 0 || root >= g.n) throw precondition_error("root out of range");
  Layering res;
  res.depth.assign(g.n, -1);
  res.depth[root] = 0;
  std::deque<int> q{root};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if ((int)res.layers.size() <= res.depth[v]) res.layers.resize(res.depth[v] + 1);
    res.layers[res.depth[v]].push_back(v);
    for (int u : g.adj[v])
      if (res.depth[u] < 0) {
        res.depth[u] = res.depth[v] + 1;
        q.push_back(u);
      }
  }
  std::vector<int> missed;
  for (int v = 0; v < g.n; ++v)
    if (res.depth[v] < 0) missed.push_back(v);
  if (!missed.empty()) {
    std::ostringstream os;
    os << "graph is disconnected: unreachable from " << root << ":";
    for (int v : missed) os << ' ' << v;
    throw precondition_error(os.str());
  }
  for (auto& layer : res.layers) std::sort(layer.begin(), layer.end());
  return res;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<int> seen(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (size_t i = 0; i < comp.size(); ++i)
      for (int u : g.adj[comp[i]])
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_nice(const Graph& g) {
  for (const auto& comp : connected_components(g))
    if (comp.size() == 2) return false;  // a 2-vertex component is a single edge
  return true;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  InducedSubgraph res;
  res.to_parent = vertices;
  std::sort(res.to_parent.begin(), res.to_parent.end());
  res.to_parent.erase(std::unique(res.to_parent.begin(), res.to_parent.end()),
                      res.to_parent.end());
  for (int v : res.to_parent)
    if (v < 0 || v >= g.n) throw precondition_error("vertex out of range in induced set");
  res.to_sub.assign(g.n, -1);
  for (int i = 0; i < (int)res.to_parent.size(); ++i) res.to_sub[res.to_parent[i]] = i;
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : g.edges)
    if (res.to_sub[u] >= 0 && res.to_sub[v] >= 0)
      es.push_back({res.to_sub[u], res.to_sub[v]});
  res.graph = make_graph((int)res.to_parent.size(), std::move(es));
  return res;
}

BipartiteCheck check_bipartite(const Graph& g) {
  BipartiteCheck res;
  res.side.assign(g.n, -1);
  std::vector<int> parent(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (res.side[s] >= 0) continue;
    res.side[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int u : g.adj[v]) {
        if (res.side[u] < 0) {
          res.side[u] = 1 - res.side[v];
          parent[u] = v;
          q.push_back(u);
        } else if (res.side[u] == res.side[v]) {
          // reconstruct odd cycle through the BFS-tree paths of u and v
          std::vector<int> pu{u}, pv{v};
          for (int x = u; parent[x] >= 0; x = parent[x]) pu.push_back(parent[x]);
          for (int x = v; parent[x] >= 0; x = parent[x]) pv.push_back(parent[x]);
          // trim common tail
          while (pu.size() >= 2 && pv.size() >= 2 &&
                 pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
          }
          res.bipartite = false;
          // pu = u..meet, pv = v..meet; cycle = u..meet + reverse(v..) + edge vu
          std::vector<int> cyc(pu.begin(), pu.end());
          for (int i = (int)pv.size() - 2; i >= 0; --i) cyc.push_back(pv[i]);
          res.odd_cycle = cyc;
          return res;
        }
      }
    }
  }
  res.bipartite = true;
  return res;
}

namespace {

constexpr int kG6Lo = 63, kG6Hi = 126;

long long g6_read_value(const std::string& s, size_t pos, int bytes) {
  long long val = 0;
  for (int i = 0; i < bytes; ++i) {
    unsigned char c = s[pos + i];
    if (c < kG6Lo || c > kG6Hi)
      throw parse_error("graph6: byte at offset " + std::to_string(pos + i) +
                        " outside 63..126");
    val = (val << 6) | (c - kG6Lo);
  }
  return val;
}

}  // namespace

Graph parse_graph6(const std::string& input) {
  std::string s = input;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' ||
                        s.back() == '\t'))
    s.pop_back();
  const std::string header = ">>graph6<<";
  if (s.rfind(header, 0) == 0) s = s.substr(header.size());
  if (s.empty()) throw parse_error("graph6: empty string");

  size_t pos = 0;
  long long n;
  unsigned char c0 = s[0];
  if (c0 < kG6Lo || c0 > kG6Hi)
    throw parse_error("graph6: byte at offset 0 outside 63..126");
  if (c0 < 126) {
    n = c0 - kG6Lo;
    pos = 1;
  } else {
    if (s.size() < 2) throw parse_error("graph6: truncated length prefix");
    if ((unsigned char)s[1] == 126) {
      if (s.size() < 8) throw parse_error("graph6: truncated length prefix");
      n = g6_read_value(s, 2, 6);
      pos = 8;
    } else {
      if (s.size() < 4) throw parse_error("graph6: truncated length prefix");
      n = g6_read_value(s, 1, 3);
      pos = 4;
    }
  }
  if (n > 2'000'000) throw parse_error("graph6: vertex count too large");

  long long nbits = n * (n - 1) / 2;
  long long nbytes = (nbits + 5) / 6;
  if ((long long)s.size() - (long long)pos < nbytes)
    throw parse_error("graph6: truncated adjacency data (expected " +
                      std::to_string(nbytes) + " bytes after offset " +
                      std::to_string(pos) + ")");
  if ((long long)s.size() - (long long)pos > nbytes)
    throw parse_error("graph6: trailing data at offset " + std::to_string(pos + nbytes));

  std::vector<std::pair<int, int>> es;
  long long bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit) {
      unsigned char c = s[pos + bit / 6];
      if (c < kG6Lo || c > kG6Hi)
        throw parse_error("graph6: byte at offset " + std::to_string(pos + bit / 6) +
                          " outside 63..126");
      int b = (c - kG6Lo) >> (5 - bit % 6) & 1;
      if (b) es.push_back({i, j});
    }
  // padding bits beyond the triangle must be zero
  for (long long pb = nbits; pb < nbytes * 6; ++pb) {
    unsigned char c = s[pos + pb / 6];
    if ((c - kG6Lo) >> (5 - pb % 6) & 1)
      throw parse_error("graph6: nonzero padding bit at offset " +
                        std::to_string(pos + pb / 6));
  }
  return make_graph((int)n, std::move(es));
}

std::string to_graph6(const Graph& g) {
  std::string out;
  long long n = g.n;
  if (n <= 62) {
    out.push_back((char)(kG6Lo + n));
  } else if (n <= 258047) {
    out.push_back((char)126);
    for (int sh = 12; sh >= 0; sh -= 6) out.push_back((char)(kG6Lo + ((n >> sh) & 63)));
  } else {
    out.push_back((char)126);
    out.push_back((char)126);
    for (int sh = 30; sh >= 0; sh -= 6) out.push_back((char)(kG6Lo + ((n >> sh) & 63)));
  }
  long long nbits = n * (n - 1) / 2;
  std::vector<uint8_t> bytes((nbits + 5) / 6, 0);
  long long bit = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++bit)
      if (g.has_edge(i, j)) bytes[bit / 6] |= (uint8_t)(1 << (5 - bit % 6));
  for (uint8_t b : bytes) out.push_back((char)(kG6Lo + b));
  return out;
}

EdgeListResult parse_edge_list(const std::string& text) {
  EdgeListResult res;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  long long declared_n = -1;
  bool saw_any = false;
  std::vector<std::pair<int, int>> es;
  long long max_id = -1;
  auto parse_int = [&](const std::string& tok) -> long long {
    size_t used = 0;
    long long v;
    try {
      v = std::stoll(tok, &used);
    } catch (...) {
      throw parse_error("edge list line " + std::to_string(lineno) +
                        ": not an integer: '" + tok + "'");
    }
    if (used != tok.size())
      throw parse_error("edge list line " + std::to_string(lineno) +
                        ": not an integer: '" + tok + "'");
    return v;
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;
    if (!saw_any && toks[0] == "n") {
      if (toks.size() != 2)
        throw parse_error("edge list line " + std::to_string(lineno) +
                          ": expected 'n <count>'");
      declared_n = parse_int(toks[1]);
      if (declared_n < 0)
        throw parse_error("edge list line " + std::to_string(lineno) +
                          ": negative vertex count");
      saw_any = true;
      continue;
    }
    saw_any = true;
    if (toks.size() != 2)
      throw parse_error("edge list line " + std::to_string(lineno) +
                        ": expected 'u v'");
    long long u = parse_int(toks[0]), v = parse_int(toks[1]);
    if (u < 0 || v < 0)
      throw parse_error("edge list line " + std::to_string(lineno) +
                        ": negative vertex id");
    if (u == v)
      throw parse_error("edge list line " + std::to_string(lineno) + ": self-loop at " +
                        std::to_string(u));
    if (declared_n >= 0 && (u >= declared_n || v >= declared_n))
      throw parse_error("edge list line " + std::to_string(lineno) + ": vertex id " +
                        std::to_string(std::max(u, v)) + " outside declared n=" +
                        std::to_string(declared_n));
    if (u > 10'000'000 || v > 10'000'000)
      throw parse_error("edge list line " + std::to_string(lineno) +
                        ": vertex id too large");
    max_id = std::max({max_id, u, v});
    int a = (int)std::min(u, v), b = (int)std::max(u, v);
    if (std::find(es.begin(), es.end(), std::make_pair(a, b)) != es.end())
      res.warnings.push_back("duplicate edge " + std::to_string(a) + " " +
                             std::to_string(b) + " on line " + std::to_string(lineno) +
                             " collapsed");
    else
      es.push_back({a, b});
  }
  int n = declared_n >= 0 ? (int)declared_n : (int)(max_id + 1);
  res.graph = make_graph(n, std::move(es));
  return res;
}

}  // namespace p123
