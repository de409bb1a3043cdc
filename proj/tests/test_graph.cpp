#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "p123/graph.hpp"

using namespace p123;

namespace {
Graph path(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return make_graph(n, es);
}
Graph cycle(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
  return make_graph(n, es);
}
}  // namespace

TEST_CASE("make_graph validates and normalizes") {
  Graph g = make_graph(3, {{2, 0}, {0, 1}});
  CHECK(g.n == 3);
  CHECK(g.m() == 2);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
  CHECK(g.adj[0] == std::vector<int>{1, 2});
  CHECK(g.edge_id(1, 0) == 0);
  CHECK(g.edge_id(1, 2) == -1);
  CHECK(g.has_edge(2, 0));
  CHECK_THROWS_AS(make_graph(2, {{0, 0}}), std::runtime_error);
  CHECK_THROWS_AS(make_graph(2, {{0, 5}}), std::runtime_error);
  // duplicate edges collapse
  CHECK(make_graph(2, {{0, 1}, {1, 0}}).m() == 1);
}

TEST_CASE("graph6 frozen encodings") {
  CHECK(to_graph6(make_graph(1, {})) == "@");
  CHECK(to_graph6(make_graph(2, {{0, 1}})) == "A_");
  CHECK(to_graph6(make_graph(3, {{0, 1}, {0, 2}, {1, 2}})) == "Bw");
  CHECK(to_graph6(path(3)) == "Bg");
  CHECK(to_graph6(make_graph(5, {})) == "D??");

  Graph k3 = parse_graph6("Bw");
  CHECK(k3.n == 3);
  CHECK(k3.m() == 3);
  Graph p3 = parse_graph6("Bg");
  CHECK(p3.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(parse_graph6("@").n == 1);
  CHECK(parse_graph6("D??").m() == 0);
}

TEST_CASE("graph6 roundtrip across the size-format boundary") {
  std::mt19937 rng(20260816);
  for (int n : {1, 2, 5, 20, 61, 62, 63, 64, 70, 100}) {
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v)
      es.push_back({(int)(rng() % v), v});  // random spanning tree
    for (int extra = 0; extra < n; ++extra) {
      int a = (int)(rng() % n), b = (int)(rng() % n);
      if (a != b) es.push_back({std::min(a, b), std::max(a, b)});
    }
    Graph g = make_graph(n, es);
    Graph h = parse_graph6(to_graph6(g));
    CHECK(h.n == g.n);
    CHECK(h.edges == g.edges);
  }
}

TEST_CASE("graph6 parse errors") {
  CHECK_THROWS_AS(parse_graph6(""), parse_error);
  CHECK_THROWS_AS(parse_graph6("C"), parse_error);      // missing bits
  CHECK_THROWS_AS(parse_graph6("B\x01\x01"), parse_error);  // bytes below '?'
}

TEST_CASE("edge list parsing") {
  EdgeListResult r = parse_edge_list("n 4\n0 1\n2 3\n");
  CHECK(r.graph.n == 4);
  CHECK(r.graph.m() == 2);
  CHECK(r.warnings.empty());

  EdgeListResult imp = parse_edge_list("0 1\n1 2\n");
  CHECK(imp.graph.n == 3);

  EdgeListResult dup = parse_edge_list("0 1\n1 0\n");
  CHECK(dup.graph.m() == 1);
  CHECK(!dup.warnings.empty());

  CHECK_THROWS_AS(parse_edge_list("0 x\n"), parse_error);
  CHECK_THROWS_AS(parse_edge_list("0 0\n"), std::runtime_error);
}

TEST_CASE("bfs layers") {
  Layering l = bfs_layers(path(4), 0);
  CHECK(l.layers.size() == 4);
  CHECK(l.layers[2] == std::vector<int>{2});
  CHECK(l.depth[3] == 3);
  Layering c = bfs_layers(cycle(5), 2);
  CHECK(c.layers[0] == std::vector<int>{2});
  CHECK(c.layers[1] == std::vector<int>{1, 3});
  CHECK(c.layers[2] == std::vector<int>{0, 4});
  CHECK_THROWS_AS(bfs_layers(make_graph(2, {}), 0), std::runtime_error);
}

TEST_CASE("components and niceness") {
  Graph g = make_graph(5, {{3, 4}, {0, 1}});
  auto comp = connected_components(g);
  REQUIRE(comp.size() == 3);
  CHECK(comp[0] == std::vector<int>{0, 1});
  CHECK(comp[1] == std::vector<int>{2});
  CHECK(comp[2] == std::vector<int>{3, 4});

  CHECK(!is_nice(make_graph(2, {{0, 1}})));
  CHECK(!is_nice(g));  // contains single-edge components
  CHECK(is_nice(make_graph(3, {{0, 1}, {1, 2}})));
  CHECK(is_nice(make_graph(1, {})));
  CHECK(is_nice(make_graph(4, {{0, 1}, {1, 2}})));  // isolated vertex is fine
}

TEST_CASE("induced subgraph keeps ids consistent") {
  Graph c5 = cycle(5);
  InducedSubgraph s = induced_subgraph(c5, {0, 1, 2, 3});
  CHECK(s.graph.n == 4);
  CHECK(s.graph.m() == 3);  // P_4: the (3,4) and (0,4) edges drop out
  for (int i = 0; i < 4; ++i) CHECK(s.to_sub[s.to_parent[i]] == i);
  CHECK(s.to_sub[4] == -1);
  for (auto [u, v] : s.graph.edges)
    CHECK(c5.has_edge(s.to_parent[u], s.to_parent[v]));
}

TEST_CASE("bipartite check and odd-cycle witness") {
  BipartiteCheck even = check_bipartite(cycle(6));
  CHECK(even.bipartite);
  for (auto [u, v] : cycle(6).edges) CHECK(even.side[u] != even.side[v]);

  BipartiteCheck odd = check_bipartite(cycle(7));
  CHECK(!odd.bipartite);
  REQUIRE(odd.odd_cycle.size() >= 3);
  CHECK(odd.odd_cycle.size() % 2 == 1);
  Graph c7 = cycle(7);
  for (std::size_t i = 0; i < odd.odd_cycle.size(); ++i)
    CHECK(c7.has_edge(odd.odd_cycle[i],
                      odd.odd_cycle[(i + 1) % odd.odd_cycle.size()]));
}

TEST_CASE("degree helpers") {
  CHECK(complete_graph(4).is_complete());
  CHECK(complete_graph(4).m() == 6);
  CHECK(complete_graph(4).is_regular());
  CHECK(cycle(4).is_regular());
  CHECK(!path(3).is_regular());
  CHECK(make_graph(1, {}).is_regular());
  CHECK(path(5).max_degree() == 2);
  CHECK(path(5).min_degree() == 1);
  CHECK(!path(3).is_complete());
}
