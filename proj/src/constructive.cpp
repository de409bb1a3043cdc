#include "p123/constructive.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "p123/colouring.hpp"
#include "p123/oracle.hpp"

namespace p123 {

namespace {

// ---------------------------------------------------------------------------
// shared machinery

// Connected piece of an edge-induced subgraph: vertex ids and edge ids, both
// ascending; pieces ordered by smallest vertex.
struct EdgeSubgraph {
  std::vector<int> verts;
  std::vector<int> edges;
};

std::vector<EdgeSubgraph> edge_components(const Graph& g, std::vector<int> eids) {
  std::sort(eids.begin(), eids.end());
  eids.erase(std::unique(eids.begin(), eids.end()), eids.end());
  std::vector<int> par(g.n);
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (par[x] != x) x = par[x] = par[par[x]];
    return x;
  };
  std::vector<char> involved(g.n, 0);
  for (int e : eids) {
    auto [u, v] = g.edges[e];
    involved[u] = involved[v] = 1;
    par[find(u)] = find(v);
  }
  std::vector<int> comp_of(g.n, -1);
  std::vector<EdgeSubgraph> out;
  for (int v = 0; v < g.n; ++v) {
    if (!involved[v]) continue;
    int r = find(v);
    if (comp_of[r] < 0) {
      comp_of[r] = (int)out.size();
      out.emplace_back();
    }
    out[comp_of[r]].verts.push_back(v);
  }
  for (int e : eids) out[comp_of[find(g.edges[e].first)]].edges.push_back(e);
  return out;
}

// Adjacency restricted to one edge subset: vertex -> sorted (neighbour, edge).
using SubAdj = std::map<int, std::vector<std::pair<int, int>>>;

SubAdj sub_adjacency(const Graph& g, const std::vector<int>& eids) {
  SubAdj adj;
  for (int e : eids) {
    auto [u, v] = g.edges[e];
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  for (auto& [v, lst] : adj) std::sort(lst.begin(), lst.end());
  return adj;
}

int smallest_nbr_in(const Graph& g, const std::vector<int>& pof, int v, int part) {
  for (int u : g.adj[v])
    if (pof[u] == part) return u;
  return -1;
}

// Core of parity_switch, operating in place. Returns the toggled edge ids in
// toggle order.
std::vector<int> parity_switch_inplace(const Graph& g, std::vector<int>& lab,
                                       const ParityTarget& t) {
  if (t.a != 1 || (t.b != 2 && t.b != 3))
    throw precondition_error("parity switch toggle pair must be (1,2) or (1,3)");
  if ((int)t.want.size() != g.n)
    throw precondition_error("parity target vector must have one entry per vertex");
  std::vector<int> eids = t.h_edges;
  std::sort(eids.begin(), eids.end());
  eids.erase(std::unique(eids.begin(), eids.end()), eids.end());
  if (eids.empty()) return {};
  for (int e : eids) {
    if (e < 0 || e >= g.m()) throw precondition_error("parity switch edge id out of range");
    if (lab[e] != t.a && lab[e] != t.b)
      throw precondition_error("parity switch edge " + std::to_string(e) +
                               " carries label " + std::to_string(lab[e]) +
                               ", outside the toggle pair");
  }
  SubAdj adj = sub_adjacency(g, eids);
  int root = t.free_vertex;
  if (root >= 0) {
    if (!adj.count(root))
      throw precondition_error("free vertex is not part of the switch subgraph");
  } else {
    root = adj.begin()->first;
  }
  // spanning tree by breadth-first search
  std::map<int, int> parent_edge;
  std::vector<int> order;
  std::set<int> seen{root};
  std::deque<int> queue{root};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (auto [u, e] : adj[v])
      if (!seen.count(u)) {
        seen.insert(u);
        parent_edge[u] = e;
        queue.push_back(u);
      }
  }
  if (order.size() != adj.size())
    throw precondition_error("parity switch subgraph is disconnected");
  for (const auto& [v, lst] : adj) {
    (void)lst;
    if (v == t.free_vertex) continue;
    if (t.want[v] != 0 && t.want[v] != 1)
      throw precondition_error("vertex " + std::to_string(v) +
                               " of the switch subgraph has no parity target");
  }
  std::vector<int> db(g.n, 0);
  for (int e = 0; e < g.m(); ++e)
    if (lab[e] == t.b) {
      ++db[g.edges[e].first];
      ++db[g.edges[e].second];
    }
  std::vector<int> toggled;
  for (int i = (int)order.size() - 1; i >= 1; --i) {
    int v = order[i];
    if ((db[v] & 1) == t.want[v]) continue;
    int e = parent_edge.at(v);
    int nl = lab[e] == t.a ? t.b : t.a;
    lab[e] = nl;
    int d = nl == t.b ? 1 : -1;
    db[g.edges[e].first] += d;
    db[g.edges[e].second] += d;
    toggled.push_back(e);
  }
  if (t.free_vertex < 0 && (db[root] & 1) != t.want[root])
    throw precondition_error(
        "parity targets are infeasible: the total parity deficit is odd");
  for (const auto& [v, lst] : adj) {
    (void)lst;
    if (v == t.free_vertex) continue;
    if ((db[v] & 1) != t.want[v])
      throw std::logic_error("internal: parity switch missed a target");
  }
  return toggled;
}

// Mutable labelling state with degree bookkeeping and an assignment trace.
struct Work {
  const Graph& g;
  EdgeLabelling l;
  ConstructionTrace trace;
  std::vector<int> d2, d3;

  Work(const Graph& gg, int k) : g(gg), l(all_ones(gg, k)), d2(gg.n, 0), d3(gg.n, 0) {
    trace.k = k;
  }

  void bump(int e, int lbl, int sign) {
    if (lbl == 2) {
      d2[g.edges[e].first] += sign;
      d2[g.edges[e].second] += sign;
    } else if (lbl == 3) {
      d3[g.edges[e].first] += sign;
      d3[g.edges[e].second] += sign;
    }
  }
  // label + bookkeeping, no trace entry (used for trial assignments)
  void raw_set(int e, int lbl) {
    bump(e, l.lab[e], -1);
    l.lab[e] = lbl;
    bump(e, lbl, +1);
  }
  void set(int e, int lbl, const char* stage) {
    raw_set(e, lbl);
    trace.entries.push_back(TraceEntry{false, e, lbl, stage});
  }
  // trace entry for a label that is already in place
  void note(int e, const char* stage) {
    trace.entries.push_back(TraceEntry{false, e, l.lab[e], stage});
  }
  bool mono1(int v) const { return d2[v] == 0 && d3[v] == 0; }
  bool mono2(int v) const { return d2[v] > 0 && d3[v] == 0; }
  bool mono3(int v) const { return d2[v] == 0 && d3[v] > 0; }

  void apply_switch(const ParityTarget& t, const char* stage) {
    auto toggled = parity_switch_inplace(g, l.lab, t);
    for (int e : toggled) {
      int nl = l.lab[e];
      int old = nl == t.a ? t.b : t.a;
      bump(e, old, -1);
      bump(e, nl, +1);
      trace.entries.push_back(TraceEntry{false, e, nl, stage});
    }
  }

  void require(bool cond, const std::string& msg) {
    if (!cond) throw construction_error(msg, trace);
  }
};

// ---------------------------------------------------------------------------
// scheme for chromatic number exactly 4

// Conflict cleanup between the bottom two parts, shared vocabulary:
// a vertex is "product-1" while all its incident labels are 1.
void four_part_scheme(Work& w, const NormalizedColouring& nc) {
  const Graph& g = w.g;
  const auto& parts = nc.parts;
  const auto& pof = nc.part_of;

  // Top part: 2s to the bottom part, 3s to the third part, one extra 3
  // towards the second part when the 3-degree would stay odd.
  for (int v : parts[3]) {
    for (size_t i = 0; i < g.adj[v].size(); ++i)
      if (pof[g.adj[v][i]] == 0) w.set(g.inc[v][i], 2, "top-bottom");
    for (size_t i = 0; i < g.adj[v].size(); ++i)
      if (pof[g.adj[v][i]] == 2) w.set(g.inc[v][i], 3, "top-third");
    if (w.d3[v] % 2 == 1) {
      int u = smallest_nbr_in(g, pof, v, 1);
      w.require(u >= 0, "milestone: top-part vertex has no second-part neighbour");
      w.set(g.edge_id(v, u), 3, "top-parity");
    }
  }
  for (int v : parts[3])
    w.require(w.d2[v] >= 1 && w.d3[v] >= 1 && w.d3[v] % 2 == 0,
              "milestone: top-part vertex is not bichromatic with even 3-degree");

  // Third part: 2s to the bottom part; its edges to the top part already
  // carry 3s, so one extra 3 towards the second part when the 3-degree is
  // still even.
  for (int v : parts[2]) {
    for (size_t i = 0; i < g.adj[v].size(); ++i)
      if (pof[g.adj[v][i]] == 0) w.set(g.inc[v][i], 2, "third-bottom");
    if (w.d3[v] % 2 == 0) {
      int u = smallest_nbr_in(g, pof, v, 1);
      w.require(u >= 0, "milestone: third-part vertex has no second-part neighbour");
      w.set(g.edge_id(v, u), 3, "third-parity");
    }
  }
  for (int v : parts[2])
    w.require(w.d2[v] >= 1 && w.d3[v] % 2 == 1,
              "milestone: third-part vertex is not bichromatic with odd 3-degree");

  // Label ranges forced on the bottom two parts by the steps above.
  for (int v : parts[1])
    for (size_t i = 0; i < g.adj[v].size(); ++i) {
      int u = g.adj[v][i], lab = w.l.lab[g.inc[v][i]];
      if (pof[u] >= 2)
        w.require(lab == 1 || lab == 3, "milestone: second-part vertex has an upward 2");
      else if (pof[u] == 0)
        w.require(lab == 1, "milestone: bottom edge labelled early");
    }
  for (int v : parts[0])
    for (size_t i = 0; i < g.adj[v].size(); ++i) {
      int u = g.adj[v][i], lab = w.l.lab[g.inc[v][i]];
      if (pof[u] >= 2)
        w.require(lab == 2, "milestone: bottom-part vertex has an upward non-2");
    }

  // Conflict subgraph: edges joining product-1 second-part vertices to the
  // bottom part. Frozen now; its components are handled independently.
  std::vector<int> hedges;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    int x = -1;  // second-part endpoint
    if (pof[u] == 1 && pof[v] == 0) x = u;
    else if (pof[v] == 1 && pof[u] == 0) x = v;
    else continue;
    if (w.mono1(x)) hedges.push_back(e);
  }

  for (const auto& hc : edge_components(g, hedges)) {
    SubAdj hadj = sub_adjacency(g, hc.edges);
    bool conflicting = false;
    for (int e : hc.edges) {
      auto [u, v] = g.edges[e];
      if (w.mono1(u) && w.mono1(v)) {
        conflicting = true;
        break;
      }
    }
    if (!conflicting) continue;

    // Case 1: a second-part vertex of the component has an upper neighbour.
    {
      int cv = -1, cw = -1;
      for (int x : hc.verts) {
        if (pof[x] != 1) continue;
        int u = -1;
        for (int y : g.adj[x])
          if (pof[y] >= 2) {
            u = y;
            break;
          }
        if (u >= 0) {
          cv = x;
          cw = u;
          break;
        }
      }
      if (cv >= 0) {
        ParityTarget t;
        t.h_edges = hc.edges;
        t.a = 1;
        t.b = 2;
        t.want.assign(g.n, -1);
        for (int x : hc.verts) t.want[x] = pof[x] == 0 ? 0 : 1;
        t.want[cv] = -1;
        t.free_vertex = cv;
        w.apply_switch(t, "conflict-switch");
        if (w.d2[cv] % 2 == 0) w.set(g.edge_id(cv, cw), 2, "upper-out");
        continue;
      }
    }
    // Case 2: a product-1 bottom vertex has a pure-3 second-part neighbour.
    {
      int cu = -1, cv = -1;
      for (int x : hc.verts) {
        if (pof[x] != 0 || !w.mono1(x)) continue;
        for (int y : g.adj[x])
          if (pof[y] == 1 && w.mono3(y)) {
            cv = y;
            break;
          }
        if (cv >= 0) {
          cu = x;
          break;
        }
      }
      if (cu >= 0) {
        ParityTarget t;
        t.h_edges = hc.edges;
        t.a = 1;
        t.b = 2;
        t.want.assign(g.n, -1);
        for (int x : hc.verts) t.want[x] = pof[x] == 0 ? 0 : 1;
        t.want[cu] = -1;
        t.free_vertex = cu;
        w.apply_switch(t, "conflict-switch");
        if (w.d2[cu] % 2 == 1) w.set(g.edge_id(cu, cv), 3, "pure3-out");
        continue;
      }
    }
    // Case 3: a product-1 bottom vertex with two or more component
    // neighbours; split the component at that vertex and fix each piece.
    {
      int cu = -1;
      for (int x : hc.verts)
        if (pof[x] == 0 && w.mono1(x) && hadj[x].size() >= 2) {
          cu = x;
          break;
        }
      if (cu >= 0) {
        std::vector<int> vlist;
        for (auto [y, e] : hadj[cu]) {
          (void)e;
          vlist.push_back(y);
        }
        std::vector<int> rest;
        for (int e : hc.edges) {
          auto [u, v] = g.edges[e];
          if (u != cu && v != cu) rest.push_back(e);
        }
        auto pieces = edge_components(g, rest);
        std::set<int> in_piece;
        for (const auto& pc : pieces)
          for (int x : pc.verts) in_piece.insert(x);
        // neighbours of cu isolated by its removal form their own pieces
        for (int y : vlist)
          if (!in_piece.count(y)) pieces.push_back(EdgeSubgraph{{y}, {}});
        for (const auto& pc : pieces) {
          int fv = -1;
          for (int y : vlist)
            if (std::binary_search(pc.verts.begin(), pc.verts.end(), y)) {
              fv = y;
              break;
            }
          w.require(fv >= 0,
                    "milestone: a split piece misses a neighbour of the split vertex");
          if (pc.edges.empty()) continue;
          ParityTarget t;
          t.h_edges = pc.edges;
          t.a = 1;
          t.b = 2;
          t.want.assign(g.n, -1);
          for (int x : pc.verts) t.want[x] = pof[x] == 0 ? 0 : 1;
          t.want[fv] = -1;
          t.free_vertex = fv;
          w.apply_switch(t, "conflict-switch");
        }
        for (int y : vlist) w.set(g.edge_id(cu, y), 3, "split-out");
        continue;
      }
    }
    // Residual component: all product-1 bottom vertices are pendant in the
    // whole graph.
    for (int x : hc.verts)
      if (pof[x] == 0 && w.mono1(x))
        w.require(g.degree(x) == 1,
                  "milestone: residual component keeps a non-pendant product-1 "
                  "bottom vertex");
    int guard = 0;
    while (true) {
      w.require(++guard <= (int)hc.verts.size() + 2,
                "milestone: pendant-pair loop failed to terminate");
      int v = -1;
      std::vector<int> us;
      for (int x : hc.verts) {
        if (pof[x] != 1 || !w.mono1(x)) continue;
        us.clear();
        for (auto [y, e] : hadj[x]) {
          (void)e;
          if (w.mono1(y)) us.push_back(y);
        }
        if (us.size() >= 2) {
          v = x;
          break;
        }
      }
      if (v < 0) break;
      w.set(g.edge_id(v, us[0]), 3, "pendant-pair");
      w.set(g.edge_id(v, us[1]), 3, "pendant-pair");
    }
    for (int v : hc.verts) {
      if (pof[v] != 1 || !w.mono1(v)) continue;
      std::vector<int> us;
      for (auto [y, e] : hadj[v]) {
        (void)e;
        if (w.mono1(y)) us.push_back(y);
      }
      if (us.empty()) continue;
      w.require(us.size() == 1, "milestone: pendant pair survived its loop");
      int u = us[0];
      w.require(g.degree(u) == 1, "milestone: conflicting neighbour is not pendant");
      int u2 = -1;
      for (auto [y, e] : hadj[v]) {
        (void)e;
        if (y != u && w.mono2(y)) {
          u2 = y;
          break;
        }
      }
      w.require(u2 >= 0, "milestone: no pure-2 neighbour available for the pendant fix");
      w.set(g.edge_id(u2, v), 2, "pendant-fix");
      w.set(g.edge_id(v, u), 3, "pendant-fix");
    }
  }
}

// ---------------------------------------------------------------------------
// layered scheme for chromatic number >= 5

// Phase one: process parts top down; even-numbered parts end bichromatic
// with 3-degree exactly half their number and odd degree sum, odd-numbered
// parts end bichromatic with 2-degree half their number (rounded down) and
// even degree sum. Afterwards the bottom part is free of 3s and the second
// part is free of 2s.
void layered_phase_one(Work& w, const NormalizedColouring& nc) {
  const Graph& g = w.g;
  const auto& parts = nc.parts;
  const auto& pof = nc.part_of;
  int k = (int)parts.size();

  for (int pi = k - 1; pi >= 2; --pi) {
    int number = pi + 1;  // 1-based part number
    for (int v : parts[pi]) {
      if (number % 2 == 0) {
        int half = number / 2;  // >= 2
        w.require(w.d3[v] == 0, "milestone: even part vertex carries a 3 early");
        std::vector<int> th{1};
        for (int q = 2; q <= number - 2; q += 2) th.push_back(q);
        for (int q : th) {
          int u = smallest_nbr_in(g, pof, v, q);
          w.require(u >= 0, "milestone: missing downward neighbour (even step)");
          w.set(g.edge_id(v, u), 3, "even-step");
        }
        int t = w.d2[v];
        if ((t + half) % 2 == 0) {
          int u = smallest_nbr_in(g, pof, v, 0);
          w.require(u >= 0, "milestone: missing bottom neighbour (even step)");
          w.set(g.edge_id(v, u), 2, "even-step");
        } else if (t == 0) {
          w.require(half % 2 == 1 && half >= 3,
                    "milestone: even-step parity fix outside its case");
          int u0 = smallest_nbr_in(g, pof, v, 0);
          int u3 = smallest_nbr_in(g, pof, v, 3);
          w.require(u0 >= 0 && u3 >= 0,
                    "milestone: missing neighbours for the even-step parity fix");
          w.set(g.edge_id(v, u0), 2, "even-step");
          w.set(g.edge_id(v, u3), 2, "even-step");
        }
        w.require(w.d2[v] >= 1 && w.d3[v] == half && (w.d2[v] + w.d3[v]) % 2 == 1,
                  "milestone: even part vertex missed its signature");
      } else {
        int half = (number - 1) / 2;  // >= 1
        w.require(w.d2[v] == 0, "milestone: odd part vertex carries a 2 early");
        std::vector<int> tw{0};
        for (int q = 3; q <= number - 2; q += 2) tw.push_back(q);
        for (int q : tw) {
          int u = smallest_nbr_in(g, pof, v, q);
          w.require(u >= 0, "milestone: missing downward neighbour (odd step)");
          w.set(g.edge_id(v, u), 2, "odd-step");
        }
        int t = w.d3[v];
        if ((half + t) % 2 == 1) {
          int u = smallest_nbr_in(g, pof, v, 1);
          w.require(u >= 0, "milestone: missing second-part neighbour (odd step)");
          w.set(g.edge_id(v, u), 3, "odd-step");
        } else if (t == 0) {
          w.require(half % 2 == 0 && half >= 2,
                    "milestone: odd-step parity fix outside its case");
          std::vector<int> v2;
          for (int u : g.adj[v]) {
            if (pof[u] == 1) v2.push_back(u);
            if (v2.size() == 2) break;
          }
          w.require(!v2.empty(),
                    "milestone: missing second-part neighbour (odd-step fix)");
          if (v2.size() >= 2) {
            w.set(g.edge_id(v, v2[0]), 3, "odd-step");
            w.set(g.edge_id(v, v2[1]), 3, "odd-step");
          } else {
            int u3 = smallest_nbr_in(g, pof, v, 2);
            w.require(u3 >= 0,
                      "milestone: missing third-part neighbour (odd-step fix)");
            w.set(g.edge_id(v, v2[0]), 3, "odd-step");
            w.set(g.edge_id(v, u3), 3, "odd-step");
          }
        }
        w.require(w.d3[v] >= 1 && w.d2[v] == half && (w.d2[v] + w.d3[v]) % 2 == 0,
                  "milestone: odd part vertex missed its signature");
      }
    }
  }
  for (int v : parts[0])
    w.require(w.d3[v] == 0, "milestone: bottom-part vertex received a 3");
  for (int v : parts[1])
    w.require(w.d2[v] == 0, "milestone: second-part vertex received a 2");
  for (int pi = 2; pi < k; ++pi)
    for (int v : parts[pi]) {
      int s = w.d2[v] + w.d3[v];
      w.require(!(w.d3[v] == 1 && s % 2 == 1 && s >= 3),
                "milestone: upper vertex ended with the reserved pendant signature");
    }
}

// Cleanup of product-1 adjacencies between the second and bottom parts,
// leaving the product-1 class a matching.
void matching_stage(Work& w, const NormalizedColouring& nc) {
  const Graph& g = w.g;
  const auto& pof = nc.part_of;

  // freeze the conflict subgraph
  std::vector<int> hedges;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    int x = -1;
    if (pof[u] == 1 && pof[v] == 0) x = u;
    else if (pof[v] == 1 && pof[u] == 0) x = v;
    else continue;
    if (w.mono1(x)) hedges.push_back(e);
  }
  auto comps = edge_components(g, hedges);

  for (const auto& hc : comps) {
    if (hc.verts.size() < 3) continue;
    SubAdj hadj = sub_adjacency(g, hc.edges);

    // Step 1: second-part vertices with two product-1 neighbours either pass
    // a 3 to a pure-2 neighbour of 2-degree exactly 2, or take two 2s.
    int guard = 0;
    while (true) {
      w.require(++guard <= (int)hc.verts.size() + 2,
                "milestone: second-part cleanup loop failed to terminate");
      int v = -1;
      std::vector<int> us;
      for (int x : hc.verts) {
        if (pof[x] != 1 || !w.mono1(x)) continue;
        us.clear();
        for (auto [y, e] : hadj[x]) {
          (void)e;
          if (w.mono1(y)) us.push_back(y);
        }
        if (us.size() >= 2) {
          v = x;
          break;
        }
      }
      if (v < 0) break;
      int u2 = -1;
      for (auto [y, e] : hadj[v]) {
        (void)e;
        if (w.mono2(y) && w.d2[y] == 2) {
          u2 = y;
          break;
        }
      }
      if (u2 >= 0) {
        w.set(g.edge_id(u2, v), 3, "cleanup-pass3");
      } else {
        w.set(g.edge_id(v, us[0]), 2, "cleanup-two2");
        w.set(g.edge_id(v, us[1]), 2, "cleanup-two2");
      }
    }

    // Step 2: bottom vertices still product-1 with two product-1 neighbours
    // and no pure-3 second-part neighbour take two 3s. One ascending pass
    // suffices: the qualifying conditions only shrink afterwards.
    for (int u : hc.verts) {
      if (pof[u] != 0 || !w.mono1(u)) continue;
      std::vector<int> vs;
      for (auto [y, e] : hadj[u]) {
        (void)e;
        if (w.mono1(y)) vs.push_back(y);
      }
      if (vs.size() < 2) continue;
      bool has3 = false;
      for (int y : g.adj[u])
        if (pof[y] == 1 && w.mono3(y)) {
          has3 = true;
          break;
        }
      if (!has3) {
        w.set(g.edge_id(u, vs[0]), 3, "cleanup-take3");
        w.set(g.edge_id(u, vs[1]), 3, "cleanup-take3");
      }
    }
  }

  // Remaining product-1 adjacencies, linked through the pure-3 second-part
  // neighbours of their bottom vertices; components containing a bottom
  // vertex with two product-1 neighbours get parity targets (bottom side
  // even 3-degree, second-part side odd) met by toggling 1s and 3s.
  std::vector<int> bedges;
  for (int e : hedges) {
    auto [u, v] = g.edges[e];
    if (w.mono1(u) && w.mono1(v)) bedges.push_back(e);
  }
  std::set<int> bverts;
  for (int e : bedges) {
    bverts.insert(g.edges[e].first);
    bverts.insert(g.edges[e].second);
  }
  std::vector<int> cedges = bedges;
  for (int u : bverts) {
    if (pof[u] != 0) continue;
    for (int y : g.adj[u])
      if (pof[y] == 1 && w.mono3(y)) cedges.push_back(g.edge_id(u, y));
  }
  for (const auto& cc : edge_components(g, cedges)) {
    SubAdj cadj = sub_adjacency(g, cc.edges);
    std::set<int> centres;
    for (int u : cc.verts) {
      if (pof[u] != 0 || !w.mono1(u)) continue;
      int cnt = 0;
      for (auto [y, e] : cadj[u]) {
        (void)e;
        if (w.mono1(y)) ++cnt;
      }
      if (cnt >= 2) centres.insert(u);
    }
    if (centres.empty()) continue;
    for (int v : cc.verts)
      if (pof[v] == 1 && w.mono1(v))
        w.require(cadj[v].size() <= 1,
                  "milestone: a second-part product-1 vertex kept two conflict edges");
    for (int u : centres) {
      bool ok = false;
      for (auto [y, e] : cadj[u]) {
        (void)e;
        if (w.mono3(y)) {
          ok = true;
          break;
        }
      }
      w.require(ok, "milestone: conflict centre lacks a pure-3 neighbour");
    }
    int deficit = 0;
    for (int x : cc.verts) {
      int want = pof[x] == 0 ? 0 : 1;
      if ((w.d3[x] & 1) != want) ++deficit;
    }
    int removed = -1, removed_edge = -1;
    if (deficit % 2 == 1) {
      for (int v : cc.verts) {
        if (pof[v] != 1 || !w.mono1(v)) continue;
        if (cadj[v].size() != 1) continue;
        if (centres.count(cadj[v][0].first)) {
          removed = v;
          removed_edge = cadj[v][0].second;
          break;
        }
      }
      w.require(removed >= 0, "milestone: no removable leaf for the parity deficit");
    }
    ParityTarget t;
    t.a = 1;
    t.b = 3;
    t.want.assign(g.n, -1);
    for (int e : cc.edges)
      if (e != removed_edge) t.h_edges.push_back(e);
    for (int x : cc.verts)
      if (x != removed) t.want[x] = pof[x] == 0 ? 0 : 1;
    t.free_vertex = -1;
    if (!t.h_edges.empty()) w.apply_switch(t, "matching-switch");
  }
}

LabelledResult generic_scheme(const Graph& g, int chi) {
  auto nc = normalize_colouring(g, optimal_colouring(g));
  Work w(g, 3);
  w.require((int)nc.parts.size() == chi,
            "milestone: normalisation changed the number of parts");
  layered_phase_one(w, nc);
  matching_stage(w, nc);
  LabelledResult res;
  res.labelling = std::move(w.l);
  res.trace = std::move(w.trace);
  return res;
}

// Translate a component's trace into the host graph and apply it.
void splice_component(const Graph& g, const InducedSubgraph& ind,
                      const ConstructionTrace& sub, ConstructionTrace& out,
                      EdgeLabelling& edge_target, std::vector<int>* vertex_target) {
  for (const auto& te : sub.entries) {
    TraceEntry pe = te;
    if (te.vertex_entry) {
      pe.id = ind.to_parent[te.id];
      if (vertex_target) (*vertex_target)[pe.id] = te.label;
    } else {
      auto [a, b] = ind.graph.edges[te.id];
      pe.id = g.edge_id(ind.to_parent[a], ind.to_parent[b]);
      edge_target.lab[pe.id] = te.label;
    }
    out.entries.push_back(std::move(pe));
  }
}

// Search-based p-proper 3-labelling for a component known to be
// 3-colourable; always exists for such graphs without lone-edge components.
LabelledResult search_three(const Graph& h, const ConstructionTrace& sofar) {
  auto sr = find_k_labelling(h, 3, OraclePredicate::P_PROPER);
  if (sr.outcome != SearchOutcome::WITNESS)
    throw construction_error(
        "exhaustive search found no proper 3-labelling for a 3-colourable component",
        sofar);
  LabelledResult sub;
  sub.labelling = *sr.witness;
  sub.trace.k = 3;
  for (int e = 0; e < h.m(); ++e)
    if (sub.labelling.lab[e] != 1)
      sub.trace.entries.push_back(TraceEntry{false, e, sub.labelling.lab[e], "search"});
  return sub;
}

}  // namespace

// ---------------------------------------------------------------------------
// public entry points

EdgeLabelling replay_edge_trace(const Graph& g, const ConstructionTrace& t) {
  EdgeLabelling l = all_ones(g, t.k);
  for (const auto& e : t.entries) {
    if (e.vertex_entry) continue;
    if (e.id < 0 || e.id >= g.m())
      throw precondition_error("trace edge id out of range");
    if (e.label < 1 || e.label > t.k)
      throw precondition_error("trace label out of range");
    l.lab[e.id] = e.label;
  }
  return l;
}

TotalLabelling replay_total_trace(const Graph& g, const ConstructionTrace& t) {
  TotalLabelling tl{replay_edge_trace(g, t), std::vector<int>(g.n, 1)};
  for (const auto& e : t.entries) {
    if (!e.vertex_entry) continue;
    if (e.id < 0 || e.id >= g.n)
      throw precondition_error("trace vertex id out of range");
    if (e.label < 1 || e.label > t.k)
      throw precondition_error("trace label out of range");
    tl.vertex[e.id] = e.label;
  }
  return tl;
}

EdgeLabelling parity_switch(const Graph& g, EdgeLabelling l,
                            const ParityTarget& target, ConstructionTrace* trace) {
  validate_labelling(g, l);
  auto toggled = parity_switch_inplace(g, l.lab, target);
  if (trace) {
    for (int e : toggled)
      trace->entries.push_back(TraceEntry{false, e, l.lab[e], "parity-switch"});
  }
  return l;
}

LabelledResult label_four_chromatic(const Graph& g) {
  if (!is_nice(g))
    throw precondition_error(
        "a lone-edge component admits no proper labelling; graph must be nice");
  int chi = chromatic_number(g);
  if (chi != 4) {
    std::ostringstream os;
    os << "chromatic number is " << chi << ", not 4; use the generic entry point";
    throw precondition_error(os.str());
  }
  auto nc = normalize_colouring(g, optimal_colouring(g));
  Work w(g, 3);
  w.require((int)nc.parts.size() == 4,
            "milestone: normalisation changed the number of parts");
  four_part_scheme(w, nc);
  w.require(is_p_proper(g, w.l), "milestone: final products are not proper");
  LabelledResult res;
  res.labelling = std::move(w.l);
  res.trace = std::move(w.trace);
  return res;
}

LabelledResult label_generic(const Graph& g) {
  LabelledResult res;
  res.labelling = all_ones(g, 3);
  res.trace.k = 3;
  for (const auto& cv : connected_components(g)) {
    if (cv.size() == 1) continue;
    if (cv.size() == 2) {
      int e = g.edge_id(cv[0], cv[1]);
      res.trace.entries.push_back(TraceEntry{false, e, 1, "lone-edge"});
      continue;
    }
    auto ind = induced_subgraph(g, cv);
    const Graph& h = ind.graph;
    int chi = chromatic_number(h);
    LabelledResult sub;
    if (chi <= 3)
      sub = search_three(h, res.trace);
    else if (chi == 4)
      sub = label_four_chromatic(h);
    else
      sub = generic_scheme(h, chi);
    splice_component(g, ind, sub.trace, res.trace, res.labelling, nullptr);
    for (auto& s : sub.anomalies) res.anomalies.push_back(s);
  }
  auto rep = check_shape(g, res.labelling, Requirement::S1_MATCHING);
  if (!rep.ok) {
    std::string why = rep.violations.empty() ? std::string("unknown")
                                             : rep.violations.front();
    res.anomalies.push_back("construction needed a repair pass: " + why);
    auto rr = repair_conflicts(g, res.labelling, Requirement::S1_MATCHING);
    if (!rr.ok)
      throw construction_error(
          "matching requirement failed and the repair pass could not restore it",
          res.trace);
    for (int e = 0; e < g.m(); ++e)
      if (rr.labelling.lab[e] != res.labelling.lab[e])
        res.trace.entries.push_back(TraceEntry{false, e, rr.labelling.lab[e], "repair"});
    res.labelling = rr.labelling;
  }
  return res;
}

TotalResult label_total(const Graph& g) {
  TotalResult res;
  res.labelling.edge = all_ones(g, 3);
  res.labelling.vertex.assign(g.n, 1);
  res.trace.k = 3;
  for (const auto& cv : connected_components(g)) {
    if (cv.size() == 1) continue;
    if (cv.size() == 2) {
      // keep the edge at 1; the two endpoint labels 1 and 2 separate the ends
      res.labelling.vertex[cv[1]] = 2;
      res.trace.entries.push_back(TraceEntry{true, cv[1], 2, "lone-edge"});
      continue;
    }
    auto ind = induced_subgraph(g, cv);
    const Graph& h = ind.graph;
    int chi = chromatic_number(h);
    ConstructionTrace sub;
    sub.k = 3;
    if (chi <= 3) {
      sub = search_three(h, res.trace).trace;
    } else if (chi == 4) {
      sub = label_four_chromatic(h).trace;
    } else {
      auto nc = normalize_colouring(h, optimal_colouring(h));
      Work wv(h, 3);
      wv.require((int)nc.parts.size() == chi,
                 "milestone: normalisation changed the number of parts");
      layered_phase_one(wv, nc);
      sub = std::move(wv.trace);
      // bottom-part vertices take vertex label 2; everything else keeps 1
      for (int v : nc.parts[0])
        sub.entries.push_back(TraceEntry{true, v, 2, "bottom-vertex"});
    }
    splice_component(g, ind, sub, res.trace, res.labelling.edge,
                     &res.labelling.vertex);
  }
  if (!is_total_p_proper(g, res.labelling))
    throw construction_error("milestone: final total products are not proper",
                             res.trace);
  return res;
}

LabelledResult label_complete(int n) {
  if (n < 2) throw precondition_error("complete-graph scheme needs n >= 2");
  Graph g = complete_graph(n);
  Work w(g, 2);
  w.note(g.edge_id(0, 1), "seed");
  for (int i = 2; i < n; ++i) {
    // grow by one vertex, labelling all its edges alike so that afterwards
    // there is still no all-1 vertex or no all-2 vertex
    bool all1 = false, all2 = false;
    for (int v = 0; v < i; ++v) {
      if (w.d2[v] == 0) all1 = true;
      if (w.d2[v] == i - 1) all2 = true;
    }
    w.require(!all1 || !all2, "milestone: both an all-1 and an all-2 vertex exist");
    int lbl = all1 ? 2 : 1;
    for (int j = 0; j < i; ++j) w.set(g.edge_id(j, i), lbl, "join");
  }
  auto rep = check_shape(g, w.l, Requirement::ONE_EDGE);
  w.require(rep.ok, "milestone: classes do not reduce to a single edge");
  LabelledResult res;
  res.labelling = std::move(w.l);
  res.trace = std::move(w.trace);
  return res;
}

LabelledResult label_bipartite_two(const Graph& g, int root) {
  if (g.n == 0) throw precondition_error("graph is empty");
  if (root < 0 || root >= g.n) throw precondition_error("root out of range");
  if (connected_components(g).size() != 1)
    throw precondition_error("graph is disconnected");
  auto bc = check_bipartite(g);
  if (!bc.bipartite) {
    std::ostringstream os;
    os << "graph is not bipartite; odd cycle:";
    for (int v : bc.odd_cycle) os << ' ' << v;
    throw precondition_error(os.str());
  }
  Work w(g, 2);
  auto L = bfs_layers(g, root);
  int depth = (int)L.layers.size() - 1;
  for (int i = depth; i >= 1; --i) {
    for (int v : L.layers[i]) {
      // edges towards the root side: all 2, or all but the smallest one,
      // so that the 2-degree parity matches the layer parity
      std::vector<int> ups;
      for (int u : g.adj[v])
        if (L.depth[u] == i - 1) ups.push_back(u);
      w.require(!ups.empty(), "milestone: layered vertex has no parent side");
      int want = i & 1;
      bool all2 = (w.d2[v] + (int)ups.size()) % 2 == want;
      for (size_t j = 0; j < ups.size(); ++j) {
        if (j == 0 && !all2)
          w.note(g.edge_id(v, ups[j]), "layer");
        else
          w.set(g.edge_id(v, ups[j]), 2, "layer");
      }
      w.require(w.d2[v] % 2 == want, "milestone: layer parity missed");
    }
  }
  for (auto& [u, v] : conflicts(g, w.l).conflict_edges)
    w.require(u == root || v == root, "milestone: conflict away from the root");
  auto rep = check_shape(g, w.l, Requirement::ONE_STAR);
  w.require(rep.ok, "milestone: classes are not a star plus independents");
  LabelledResult res;
  res.labelling = std::move(w.l);
  res.trace = std::move(w.trace);
  return res;
}

LabelledResult label_subcubic_two(const Graph& g) {
  if (g.max_degree() > 3)
    throw precondition_error("maximum degree exceeds 3");
  Work w(g, 2);

  // peel minimum-degree vertices until at most one edge remains
  std::vector<char> alive(g.n, 1);
  std::vector<int> deg(g.n);
  for (int v = 0; v < g.n; ++v) deg[v] = g.degree(v);
  int edges_left = g.m();
  int alive_cnt = g.n;
  struct Peel {
    int v;
    std::vector<int> nbrs;
  };
  std::vector<Peel> peels;
  while (alive_cnt > 0 && edges_left > 1) {
    int best = -1;
    for (int v = 0; v < g.n; ++v)
      if (alive[v] && (best < 0 || deg[v] < deg[best])) best = v;
    Peel p;
    p.v = best;
    for (int u : g.adj[best])
      if (alive[u]) p.nbrs.push_back(u);
    for (int u : p.nbrs) --deg[u];
    edges_left -= (int)p.nbrs.size();
    deg[best] = 0;
    alive[best] = 0;
    --alive_cnt;
    peels.push_back(std::move(p));
  }
  // base: at most one edge, kept at label 1
  {
    int base_edges = 0;
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      if (alive[u] && alive[v]) {
        ++base_edges;
        w.note(e, "base");
      }
    }
    w.require(base_edges <= 1, "milestone: base graph kept more than one edge");
  }

  // validity of the partial labelling on the currently alive subgraph:
  // every product class must induce a forest there
  auto alive_ok = [&]() {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
      if (alive[v]) verts.push_back(v);
    auto ind = induced_subgraph(g, verts);
    EdgeLabelling sl{2, std::vector<int>(ind.graph.m(), 1)};
    for (int e = 0; e < ind.graph.m(); ++e) {
      auto [a, b] = ind.graph.edges[e];
      sl.lab[e] = w.l.lab[g.edge_id(ind.to_parent[a], ind.to_parent[b])];
    }
    return check_shape(ind.graph, sl, Requirement::ALL_FORESTS).ok;
  };

  // rebuild in reverse, extending by the first valid assignment
  for (auto it = peels.rbegin(); it != peels.rend(); ++it) {
    int u = it->v;
    const auto& nbrs = it->nbrs;

    // analysis of the graph without u, for the fallback ladder below
    std::vector<std::array<int, 3>> attempts;
    int m = (int)nbrs.size();
    if (m >= 1) attempts.push_back({1, 1, 1});
    if (m == 2) {
      attempts.push_back({2, 1, 1});
      attempts.push_back({1, 2, 1});
      attempts.push_back({2, 2, 1});
    } else if (m == 3) {
      std::vector<int> verts;
      for (int v = 0; v < g.n; ++v)
        if (alive[v]) verts.push_back(v);
      auto ind = induced_subgraph(g, verts);
      std::vector<ProductClass> cls(verts.size());
      EdgeLabelling sl{2, std::vector<int>(ind.graph.m(), 1)};
      for (int e = 0; e < ind.graph.m(); ++e) {
        auto [a, b] = ind.graph.edges[e];
        sl.lab[e] = w.l.lab[g.edge_id(ind.to_parent[a], ind.to_parent[b])];
      }
      for (size_t vi = 0; vi < verts.size(); ++vi)
        cls[vi] = product_class(ind.graph, sl, (int)vi);
      // connectivity of the product-1 class
      std::vector<int> par(verts.size());
      std::iota(par.begin(), par.end(), 0);
      std::function<int(int)> find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
      };
      for (int e = 0; e < ind.graph.m(); ++e) {
        auto [a, b] = ind.graph.edges[e];
        if (cls[a].is_one() && cls[b].is_one()) par[find(a)] = find(b);
      }
      ProductClass two = label_class(2);
      int pick = -1;
      for (int i = 0; i < m && pick < 0; ++i)
        for (int j = i + 1; j < m && pick < 0; ++j) {
          int a = ind.to_sub[nbrs[i]], b = ind.to_sub[nbrs[j]];
          if (cls[a].is_one() && cls[b].is_one() && find(a) == find(b)) pick = i;
        }
      if (pick >= 0) {
        std::array<int, 3> a2{1, 1, 1};
        a2[pick] = 2;
        attempts.push_back(a2);
        for (int j = 0; j < m; ++j) {
          if (j == pick) continue;
          if (cls[ind.to_sub[nbrs[j]]] == two) {
            std::array<int, 3> a3 = a2;
            a3[j] = 2;
            attempts.push_back(a3);
            break;
          }
        }
      }
      for (int mask = 0; mask < 8; ++mask)
        attempts.push_back({(mask & 1) ? 2 : 1, (mask & 2) ? 2 : 1, (mask & 4) ? 2 : 1});
    }

    alive[u] = 1;
    if (nbrs.empty()) continue;
    bool placed = false;
    for (const auto& at : attempts) {
      for (int i = 0; i < m; ++i) w.raw_set(g.edge_id(u, nbrs[i]), at[i]);
      if (alive_ok()) {
        for (int i = 0; i < m; ++i)
          w.trace.entries.push_back(
              TraceEntry{false, g.edge_id(u, nbrs[i]), at[i], "extend"});
        placed = true;
        break;
      }
      for (int i = 0; i < m; ++i) w.raw_set(g.edge_id(u, nbrs[i]), 1);
    }
    w.require(placed, "milestone: no valid extension at a low-degree vertex");
  }
  auto rep = check_shape(g, w.l, Requirement::ALL_FORESTS);
  w.require(rep.ok, "milestone: final classes are not all forests");
  LabelledResult res;
  res.labelling = std::move(w.l);
  res.trace = std::move(w.trace);
  return res;
}

RepairResult repair_conflicts(const Graph& g, const EdgeLabelling& l,
                              Requirement req, const RepairBudget& budget) {
  validate_labelling(g, l);
  RepairResult out;
  out.labelling = l;
  out.residual = check_shape(g, l, req);
  if (out.residual.ok) {
    out.ok = true;
    return out;
  }
  if (budget.max_nodes <= 0) return out;

  // edges close to a violation are allowed to move
  std::vector<int> dist(g.n, -1);
  std::deque<int> queue;
  for (const auto& [u, v] : out.residual.detail.conflict_edges) {
    if (dist[u] < 0) {
      dist[u] = 0;
      queue.push_back(u);
    }
    if (dist[v] < 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dist[v] >= budget.max_radius) continue;
    for (int u : g.adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  std::vector<int> region;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    if (dist[u] >= 0 || dist[v] >= 0) region.push_back(e);
  }

  long long nodes = 0;
  EdgeLabelling cur = l;
  size_t cur_score = out.residual.violations.size();
  ShapeReport cur_rep = out.residual;

  // greedy single-edge moves while they strictly reduce the violation count
  bool improved = true;
  while (improved && nodes < budget.max_nodes) {
    improved = false;
    for (int e : region) {
      int orig = cur.lab[e];
      for (int lbl = 1; lbl <= cur.k; ++lbl) {
        if (lbl == orig) continue;
        if (++nodes > budget.max_nodes) break;
        cur.lab[e] = lbl;
        auto rep = check_shape(g, cur, req);
        if (rep.ok) {
          out.ok = true;
          out.labelling = cur;
          out.residual = rep;
          return out;
        }
        if (rep.violations.size() < cur_score) {
          cur_score = rep.violations.size();
          cur_rep = rep;
          orig = lbl;
          improved = true;
        } else {
          cur.lab[e] = orig;
        }
      }
      if (nodes > budget.max_nodes) break;
    }
  }

  // exhaustive assignment over the region, within the budget
  EdgeLabelling probe = cur;
  std::function<bool(size_t)> dfs = [&](size_t idx) -> bool {
    if (nodes > budget.max_nodes) return false;
    if (idx == region.size()) {
      auto rep = check_shape(g, probe, req);
      if (rep.ok) {
        out.ok = true;
        out.labelling = probe;
        out.residual = rep;
        return true;
      }
      return false;
    }
    int e = region[idx];
    int orig = probe.lab[e];
    for (int lbl = 1; lbl <= probe.k; ++lbl) {
      if (++nodes > budget.max_nodes) break;
      probe.lab[e] = lbl;
      if (dfs(idx + 1)) return true;
    }
    probe.lab[e] = orig;
    return false;
  };
  if (dfs(0)) return out;

  out.ok = false;
  out.labelling = cur;
  out.residual = cur_rep;
  return out;
}

}  // namespace p123
