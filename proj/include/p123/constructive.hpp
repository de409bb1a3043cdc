#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "p123/graph.hpp"
#include "p123/labelling.hpp"

namespace p123 {

// One label assignment performed by a constructive scheme, tagged with the
// stage of the scheme that caused it. Replaying all entries in order from
// the all-1 labelling reproduces the scheme's output exactly.
struct TraceEntry {
  bool vertex_entry = false;  // false: edge label; true: vertex label
  int id = -1;                // edge id / vertex id
  int label = 0;
  std::string stage;
};

struct ConstructionTrace {
  int k = 3;  // label range the trace is meant to be replayed with
  std::vector<TraceEntry> entries;
};

EdgeLabelling replay_edge_trace(const Graph& g, const ConstructionTrace& t);
TotalLabelling replay_total_trace(const Graph& g, const ConstructionTrace& t);

// A constructive scheme detected that one of its internal milestones does
// not hold (or its final self-check failed). The partial trace documents
// every label set before the failure.
struct construction_error : std::runtime_error {
  construction_error(const std::string& msg, ConstructionTrace t)
      : std::runtime_error(msg), trace(std::move(t)) {}
  ConstructionTrace trace;
};

struct LabelledResult {
  EdgeLabelling labelling;
  ConstructionTrace trace;
  std::vector<std::string> anomalies;  // nonempty if a repair pass was needed
};

struct TotalResult {
  TotalLabelling labelling;
  ConstructionTrace trace;
  std::vector<std::string> anomalies;
};

// Connected edge subset H of the host graph, a toggle pair, and the desired
// parity of each vertex's b-degree (counted over ALL of the host graph, not
// only H). The free vertex, if any, is exempt from its target.
struct ParityTarget {
  std::vector<int> h_edges;  // edge ids of H
  int a = 1;                 // toggle pair (a,b): (1,2) or (1,3)
  int b = 2;
  std::vector<int> want;     // size n; -1 = no target, 0 = even, 1 = odd
  int free_vertex = -1;      // exempt vertex, or -1 when all targets bind
};

// Relabels only edges of H, only between a and b, so that every targeted
// vertex except the free one attains its desired parity of d_b. Works on a
// spanning tree of H, leaf to root, toggling a vertex's parent edge when its
// parity is off; interior parities along a toggled path are conserved.
// Throws precondition_error if H is disconnected, labels on H fall outside
// {a,b}, a target is missing, or (with no free vertex) targets are
// infeasible because the total parity deficit is odd.
EdgeLabelling parity_switch(const Graph& g, EdgeLabelling l,
                            const ParityTarget& target,
                            ConstructionTrace* trace = nullptr);

// p-proper 3-labelling for a nice graph with chromatic number exactly 4,
// built by the four-part scheme (upward labelling of the top two parts, then
// component-wise parity repairs between the bottom two parts).
LabelledResult label_four_chromatic(const Graph& g);

// 3-labelling of an arbitrary graph in which the product-1 class induces at
// most a matching and every other product class is independent. Connected
// components are handled separately: a lone edge gets label 1; components
// with chromatic number <= 3 get a p-proper 3-labelling by exhaustive
// search; 4-chromatic components go through label_four_chromatic; higher
// chromatic numbers run the layered part-by-part scheme plus the
// matching-stage cleanup.
LabelledResult label_generic(const Graph& g);

// p-proper total labelling (edge labels 1..3, vertex labels 1..2) for an
// arbitrary graph: components with chromatic number >= 5 run the first
// phase of the layered scheme and then give vertex label 2 to the lowest
// part; other components get a p-proper edge labelling with all vertex
// labels 1; a lone-edge component is labelled 1 with vertex labels (1,2).
TotalResult label_total(const Graph& g);

// 2-labelling of K_n (n >= 2) in which one product class induces a single
// edge and all other classes are independent: each added vertex's edges are
// labelled uniformly 1 or 2, keeping either "no all-1 vertex" or "no all-2
// vertex" true throughout.
LabelledResult label_complete(int n);

// 2-labelling of a connected bipartite graph in which at most one product
// class induces a star (centred at the root) plus isolated vertices, and
// all other classes are independent. Vertices are processed deepest
// breadth-first layer first; each labels its edges towards the root side
// all 2 except at most one 1 so that even layers get even 2-degree and odd
// layers odd 2-degree.
LabelledResult label_bipartite_two(const Graph& g, int root = 0);

// 2-labelling of a graph with maximum degree <= 3 in which every product
// class induces a forest, by peeling a minimum-degree vertex and extending
// the labelling back with the first valid assignment from a fixed fallback
// ladder per degree.
LabelledResult label_subcubic_two(const Graph& g);

struct RepairBudget {
  long long max_nodes = 1'000'000;  // labelling trials across both phases
  int max_radius = 2;               // edges this close to a conflict may move
};

struct RepairResult {
  bool ok = false;
  EdgeLabelling labelling;  // repaired, or best attempt on failure
  ShapeReport residual;     // report for `labelling`
};

// If l already satisfies the requirement it is returned unchanged.
// Otherwise: greedy single-edge relabelling near the conflicts, then
// exhaustive search over that neighbourhood, within the budget.
RepairResult repair_conflicts(const Graph& g, const EdgeLabelling& l,
                              Requirement req, const RepairBudget& budget = {});

}  // namespace p123
