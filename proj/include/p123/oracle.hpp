#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p123/graph.hpp"
#include "p123/labelling.hpp"

namespace p123 {

// Exhaustive backtracking searches over k-labellings. These are the ground
// truth the constructive algorithms are checked against: existence answers
// are exact (first witness, or full exhaustion), never heuristic.

enum class OraclePredicate {
  P_PROPER,     // adjacent vertices get distinct label products
  M_PROPER,     // adjacent vertices get distinct label multisets
  S_PROPER,     // adjacent vertices get distinct label sums
  ALL_FORESTS,  // every product class induces a forest
  S1_MATCHING,  // product-1 class induces a matching, all others independent
};

const char* predicate_name(OraclePredicate p);
OraclePredicate predicate_from_name(const std::string& name);

enum class SearchOutcome {
  WITNESS,             // a labelling satisfying the predicate was found
  EXHAUSTED,           // the full space was searched; no labelling satisfies it
  UNDEFINED_NICENESS,  // properness is unattainable: some component is K_2
};

struct SearchBudget {
  long long max_nodes = 100'000'000;
  double max_seconds = 120.0;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::EXHAUSTED;
  std::optional<EdgeLabelling> witness;  // set iff outcome == WITNESS
  long long nodes = 0;                   // label assignments attempted
  double seconds = 0.0;                  // wall time of this query
};

// Search for a k-labelling of g satisfying the predicate. Every returned
// witness is re-validated through the checker module before return.
// Intended for |E| up to roughly 25; throws budget_error past the budget.
SearchResult find_k_labelling(const Graph& g, int k, OraclePredicate pred,
                              const SearchBudget& budget = {});

// Minimal k admitting a witness, with the full ladder of per-k search
// results as the certificate: attempts[i] is the result for k = i+1, so the
// last entry holds the witness and every earlier entry is an exhaustion.
struct ChiResult {
  bool defined = true;  // false iff some component of g is K_2
  int value = 0;        // minimal k; meaningful only when defined
  std::vector<SearchResult> attempts;
};

ChiResult chi_p(const Graph& g, const SearchBudget& budget = {});
ChiResult chi_m(const Graph& g, const SearchBudget& budget = {});
ChiResult chi_s(const Graph& g, const SearchBudget& budget = {});

// Search for a 2-labelling in which every product class induces a forest.
// An EXHAUSTED answer here is a counterexample to the conjecture that every
// graph admits one, and callers surface it prominently.
SearchResult forest_two_labelling(const Graph& g, const SearchBudget& budget = {});

// For a nice regular graph: find a multiset-proper 3-labelling by search and
// confirm it is product-proper (equal degrees force the two notions to
// coincide). ok=false with anomaly=true records the unexpected absence of
// any multiset-proper 3-labelling.
struct RegularCheck {
  bool ok = false;
  bool anomaly = false;  // no m-proper 3-labelling exists (should not occur)
  EdgeLabelling witness;
  SearchResult search;
};

RegularCheck verify_regular_via_multiset(const Graph& g,
                                         const SearchBudget& budget = {});

}  // namespace p123
