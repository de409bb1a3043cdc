#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "p123/graph.hpp"
#include "p123/oracle.hpp"

namespace p123 {

// Batch checks runnable over a stream of graphs.  Each check maps one graph
// to one result row; rows are pure functions of the graph, so a run's output
// is independent of the worker count.
enum class SweepCheck {
  P123,             // search: product-chromatic index <= 3 (nice graphs)
  WEAK_FOREST,      // search: some 2-labelling makes every class a forest
  MULT123_VIA_ALG,  // constructive: generic labeller conforms to s1-matching
  TOTAL,            // constructive: total labeller is product-proper
  REGULAR_OBS,      // regular graphs: multiset-proper witness is product-proper
};

const char* sweep_check_name(SweepCheck c);
std::optional<SweepCheck> sweep_check_from_name(const std::string& s);

struct SweepOptions {
  SweepCheck check = SweepCheck::P123;
  SearchBudget budget;  // applies to the search-backed checks
  int jobs = 1;         // worker count for sweep_graphs
};

struct SweepRow {
  std::string id;       // graph6 form of the graph
  int n = 0;
  int m = 0;
  std::string verdict;  // "pass" | "fail" | "skipped: ..." | "error: ..."
  std::string detail;   // e.g. "chi-p=3" or "shape=s1-matching"
  long long nodes = 0;  // search nodes (0 for constructive checks)
  double ms = 0.0;
  nlohmann::json anomaly;  // full report when verdict is "fail"/"error: ..."

  bool anomalous() const { return !anomaly.is_null(); }
};

// Run one check against one graph.  Deterministic; never throws (failures
// of any kind are folded into the verdict).
SweepRow sweep_one(const Graph& g, const SweepOptions& opt);

// One row per graph, in input order.  jobs > 1 distributes graphs across an
// OpenMP worker pool when available; the rows are identical either way.
std::vector<SweepRow> sweep_graphs(const std::vector<Graph>& graphs,
                                   const SweepOptions& opt);
// Plain serial loop, kept as the reference the pool is validated against.
std::vector<SweepRow> sweep_graphs_serial(const std::vector<Graph>& graphs,
                                          const SweepOptions& opt);

// CSV encoding: fixed columns id,n,m,verdict,detail,nodes,ms.
std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& r);

}  // namespace p123
