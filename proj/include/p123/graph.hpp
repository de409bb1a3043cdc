#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace p123 {

// A documented precondition of an operation was violated by the caller.
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (graph6 string, edge list, labelling JSON).
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search hit its node or time budget before reaching a certain answer.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple undirected graph. Vertices are dense 0-based ids. Immutable once
// built: construct through make_graph / parse_* and treat as a value.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, lexicographically sorted
  std::vector<std::vector<int>> adj;       // sorted neighbour ids
  std::vector<std::vector<int>> inc;       // inc[v][i] = edge id of {v, adj[v][i]}

  int m() const { return (int)edges.size(); }
  int degree(int v) const { return (int)adj[v].size(); }
  bool has_edge(int u, int v) const { return edge_id(u, v) >= 0; }
  int edge_id(int u, int v) const;  // -1 if absent
  int max_degree() const;
  int min_degree() const;
  bool is_regular() const;
  bool is_complete() const;
};

// Validates ids, rejects self-loops, collapses duplicate edges.
Graph make_graph(int n, std::vector<std::pair<int, int>> edge_list);
Graph complete_graph(int n);

struct Layering {
  std::vector<std::vector<int>> layers;  // layers[d] = vertices at distance d, ascending
  std::vector<int> depth;                // per-vertex distance from the root
};

// BFS distance classes from root; error if any vertex is unreachable.
Layering bfs_layers(const Graph& g, int root);

// Vertex sets of the components, each sorted, ordered by smallest vertex.
std::vector<std::vector<int>> connected_components(const Graph& g);

// True iff no component is a single edge on two vertices.
bool is_nice(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_parent;  // new id -> old id
  std::vector<int> to_sub;     // old id -> new id, -1 outside
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

struct BipartiteCheck {
  bool bipartite = false;
  std::vector<int> side;       // 0/1 per vertex when bipartite (-1 on isolated ok)
  std::vector<int> odd_cycle;  // witness vertex cycle when not bipartite
};
BipartiteCheck check_bipartite(const Graph& g);

// graph6: short form for n <= 62, 4-byte and 8-byte length forms beyond.
Graph parse_graph6(const std::string& s);
std::string to_graph6(const Graph& g);

struct EdgeListResult {
  Graph graph;
  std::vector<std::string> warnings;  // e.g. collapsed duplicate edges
};
// Text lines "u v", optional leading "n <count>" line declaring the vertex count.
EdgeListResult parse_edge_list(const std::string& text);

}  // namespace p123
