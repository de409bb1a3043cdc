#pragma once

#include <string>
#include <vector>

#include "p123/graph.hpp"

namespace p123 {

// Canonical form machinery for small graphs (n <= 16), used to deduplicate
// graphs up to isomorphism during enumeration and in tests.
//
// The canonical key is a byte string: one byte holding n, followed by the
// upper-triangular adjacency bitstring (column-packed: for each vertex j > 0,
// the j bits recording adjacency of j to 0..j-1, most significant first)
// of the lexicographically smallest relabelling.  The search over
// relabellings is pruned by an iterated degree-refinement partition: only
// permutations mapping refinement cells onto themselves are explored.
std::string canonical_key(const Graph& g);

// True iff a and b are isomorphic (both must have n <= 16).
bool isomorphic(const Graph& a, const Graph& b);

// All connected graphs on exactly n vertices (1 <= n <= 10), one
// representative per isomorphism class, in a deterministic order.
// If max_degree >= 0, only graphs whose maximum degree is <= max_degree
// are produced (the generation itself is pruned, so large n with a small
// cap stays cheap).  Counts for the uncapped series start
// 1, 1, 2, 6, 21, 112, 853, 11117 for n = 1..8.
std::vector<Graph> enumerate_connected(int n, int max_degree = -1);

}  // namespace p123
