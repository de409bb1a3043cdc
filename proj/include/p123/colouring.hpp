#pragma once

#include "p123/graph.hpp"

namespace p123 {

struct ColouringBudget {
  double max_seconds = 60.0;
};

// Exact chromatic number (0 for the empty vertex set). Throws budget_error
// rather than ever returning an unproven value.
int chromatic_number(const Graph& g, const ColouringBudget& b = {});

// A proper colouring with exactly chromatic_number(g) parts, all nonempty.
std::vector<std::vector<int>> optimal_colouring(const Graph& g,
                                                const ColouringBudget& b = {});

struct NormalizedColouring {
  std::vector<std::vector<int>> parts;  // parts[0] plays the role of the lowest part
  std::vector<int> part_of;             // vertex -> part index
};

// Move-down normalization: on return every vertex in parts[i] (i >= 1) has a
// neighbour in every parts[j] with j < i. Input must be a proper partition of
// the vertices; empty trailing parts are dropped.
NormalizedColouring normalize_colouring(const Graph& g,
                                        std::vector<std::vector<int>> parts);

}  // namespace p123
