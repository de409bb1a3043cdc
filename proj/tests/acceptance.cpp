// Acceptance gate: one checker per release criterion, each printing a single
// [PASS]/[FAIL] line.  Run with a criterion number (1..11) to check one, or
// with no argument to run the full gate.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "p123/colouring.hpp"
#include "p123/constructive.hpp"
#include "p123/enumerate.hpp"
#include "p123/graph.hpp"
#include "p123/labelling.hpp"
#include "p123/oracle.hpp"

using namespace p123;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Graph> connected_upto(int max_n, int cap = -1) {
  std::vector<Graph> gs;
  for (int n = 1; n <= max_n; ++n)
    for (Graph& g : enumerate_connected(n, cap)) gs.push_back(std::move(g));
  return gs;
}

// Independent census for the cross-check in criterion 1: enumerate all edge
// subsets and deduplicate by the minimal adjacency code over all vertex
// permutations.  Deliberately shares no code with enumerate_connected.
long long brute_connected_count(int n) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.push_back({u, v});
  std::set<unsigned long long> seen;
  std::vector<int> base(n);
  for (int i = 0; i < n; ++i) base[i] = i;
  for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    auto find = [&](int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    int comps = n;
    for (std::size_t e = 0; e < all.size(); ++e)
      if ((mask >> e) & 1u) {
        int a = find(all[e].first), b = find(all[e].second);
        if (a != b) {
          p[a] = b;
          --comps;
        }
      }
    if (comps != 1) continue;
    unsigned long long best = ~0ull;
    std::vector<int> perm = base;
    do {
      unsigned long long code = 0;
      for (std::size_t e = 0; e < all.size(); ++e)
        if ((mask >> e) & 1u) {
          int a = perm[all[e].first], b = perm[all[e].second];
          if (a > b) std::swap(a, b);
          code |= 1ull << (a * n + b);
        }
      best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    seen.insert(best);
  }
  return (long long)seen.size();
}

Graph random_connected_bipartite(int n, std::mt19937& rng) {
  std::vector<int> side(n, 0);
  std::vector<std::pair<int, int>> es;
  for (int v = 1; v < n; ++v) {
    side[v] = (int)(rng() % 2);
    std::vector<int> other;
    for (int tries = 0; tries < 2 && other.empty(); ++tries) {
      for (int u = 0; u < v; ++u)
        if (side[u] != side[v]) other.push_back(u);
      if (other.empty()) side[v] ^= 1;
    }
    es.push_back({other[rng() % other.size()], v});
  }
  int extras = n / 2;
  for (int t = 0; t < extras; ++t) {
    int a = (int)(rng() % n), b = (int)(rng() % n);
    if (side[a] != side[b]) es.push_back({std::min(a, b), std::max(a, b)});
  }
  return make_graph(n, es);
}

Graph random_connected_subcubic(int n, std::mt19937& rng) {
  std::vector<std::pair<int, int>> es;
  std::vector<int> deg(n, 0);
  for (int v = 1; v < n; ++v) {
    std::vector<int> ok;
    for (int u = 0; u < v; ++u)
      if (deg[u] < 3) ok.push_back(u);
    int u = ok[rng() % ok.size()];
    es.push_back({u, v});
    ++deg[u];
    ++deg[v];
  }
  for (int t = 0; t < 2 * n; ++t) {
    int a = (int)(rng() % n), b = (int)(rng() % n);
    if (a == b || deg[a] >= 3 || deg[b] >= 3) continue;
    if (a > b) std::swap(a, b);
    es.push_back({a, b});
    ++deg[a];
    ++deg[b];
  }
  return make_graph(n, es);
}

// ----------------------------------------------------------- criteria ------

// 1: every nice connected graph up to n=7 admits a product-proper
//    3-labelling, certified by exhaustive search, with the corpus itself
//    cross-checked against an independent census up to n=6.
bool crit_chi_p_upto7(double* elapsed) {
  auto t0 = Clock::now();
  const long long want[] = {0, 1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 6; ++n) {
    long long a = (long long)enumerate_connected(n).size();
    long long b = brute_connected_count(n);
    if (a != want[n] || b != want[n]) {
      std::printf("  census mismatch at n=%d: enumerated %lld, brute %lld, "
                  "expected %lld\n",
                  n, a, b, want[n]);
      return false;
    }
  }
  long long checked = 0;
  for (const Graph& g : connected_upto(7)) {
    if (!is_nice(g)) continue;
    ChiResult r = chi_p(g);
    if (!r.defined || r.value > 3 || !r.attempts.back().witness ||
        !is_p_proper(g, *r.attempts.back().witness)) {
      std::printf("  chi-p failure on %s\n", to_graph6(g).c_str());
      return false;
    }
    ++checked;
  }
  *elapsed = seconds_since(t0);
  if (checked != 995) {
    std::printf("  expected 995 nice graphs, saw %lld\n", checked);
    return false;
  }
  return *elapsed < 600.0;
}

// 2: the same sweep bounded by multiset-properness.
bool crit_chi_m_upto7(double* elapsed) {
  auto t0 = Clock::now();
  for (const Graph& g : connected_upto(7)) {
    if (!is_nice(g)) continue;
    ChiResult r = chi_m(g);
    if (!r.defined || r.value > 3 || !r.attempts.back().witness ||
        !is_m_proper(g, *r.attempts.back().witness)) {
      std::printf("  chi-m failure on %s\n", to_graph6(g).c_str());
      return false;
    }
  }
  *elapsed = seconds_since(t0);
  return *elapsed < 600.0;
}

// 3: the dedicated scheme labels every connected 4-chromatic graph up to
//    n=8 product-properly, with every internal milestone holding.
bool crit_four_chromatic(double* elapsed) {
  auto t0 = Clock::now();
  long long count = 0;
  for (const Graph& g : connected_upto(8)) {
    if (chromatic_number(g) != 4) continue;
    ++count;
    try {
      LabelledResult r = label_four_chromatic(g);
      if (!is_p_proper(g, r.labelling)) {
        std::printf("  not product-proper on %s\n", to_graph6(g).c_str());
        return false;
      }
    } catch (const std::exception& e) {
      std::printf("  milestone failed on %s: %s\n", to_graph6(g).c_str(),
                  e.what());
      return false;
    }
  }
  *elapsed = seconds_since(t0);
  std::printf("  4-chromatic graphs labelled: %lld\n", count);
  return count > 0 && *elapsed < 900.0;
}

// 4: the generic labeller conforms to the matching shape on every small
//    graph, on clique and complete-multipartite stress cases, and on 50
//    random graphs with chromatic number at least 5.
bool crit_generic(double* elapsed) {
  auto t0 = Clock::now();
  long long anomalies = 0;
  auto run = [&](const Graph& g, const char* tag) {
    try {
      LabelledResult r = label_generic(g);
      anomalies += (long long)r.anomalies.size();
      if (!check_shape(g, r.labelling, Requirement::S1_MATCHING).ok) {
        std::printf("  non-conforming on %s (%s)\n", tag,
                    to_graph6(g).c_str());
        return false;
      }
    } catch (const std::exception& e) {
      std::printf("  construction failed on %s: %s\n", tag, e.what());
      return false;
    }
    return true;
  };

  for (const Graph& g : connected_upto(7))
    if (!run(g, "small")) return false;
  for (int n = 5; n <= 9; ++n)
    if (!run(complete_graph(n), "clique")) return false;
  // complete multipartite on five pairs: 5-chromatic, far from a clique
  {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < 10; ++u)
      for (int v = u + 1; v < 10; ++v)
        if (u / 2 != v / 2) es.push_back({u, v});
    if (!run(make_graph(10, es), "five-pairs")) return false;
  }
  std::mt19937 rng(20260816);
  int found = 0;
  while (found < 50) {
    int n = 10 + (int)(rng() % 5);
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 100 < 78) es.push_back({u, v});
    Graph g = make_graph(n, es);
    if (connected_components(g).size() != 1) continue;
    if (chromatic_number(g) < 5) continue;  // exact, so the corpus is honest
    ++found;
    if (!run(g, "random-chi5")) return false;
  }
  if (anomalies != 0)
    std::printf("  note: %lld repair anomalies recorded\n", anomalies);
  *elapsed = seconds_since(t0);
  return anomalies == 0;
}

// 5: the total labeller separates every pair using edge labels 1..3 and
//    vertex labels 1..2 on all connected graphs up to n=7.
bool crit_total(double* elapsed) {
  auto t0 = Clock::now();
  for (const Graph& g : connected_upto(7)) {
    TotalResult r = label_total(g);
    if (!is_total_p_proper(g, r.labelling)) {
      std::printf("  not total-proper on %s\n", to_graph6(g).c_str());
      return false;
    }
    for (int lbl : r.labelling.edge.lab)
      if (lbl < 1 || lbl > 3) {
        std::printf("  edge label out of range on %s\n", to_graph6(g).c_str());
        return false;
      }
    for (int lbl : r.labelling.vertex)
      if (lbl < 1 || lbl > 2) {
        std::printf("  vertex label out of range on %s\n",
                    to_graph6(g).c_str());
        return false;
      }
  }
  *elapsed = seconds_since(t0);
  return true;
}

// 6: exhaustive search finds a forest-shaped 2-labelling of every connected
//    graph up to n=6.
bool crit_forest2(double* elapsed) {
  auto t0 = Clock::now();
  for (const Graph& g : connected_upto(6)) {
    SearchResult r = forest_two_labelling(g);
    if (r.outcome != SearchOutcome::WITNESS || !r.witness ||
        !check_shape(g, *r.witness, Requirement::ALL_FORESTS).ok) {
      std::printf("  no forest witness on %s\n", to_graph6(g).c_str());
      return false;
    }
  }
  *elapsed = seconds_since(t0);
  return *elapsed < 300.0;
}

// 7: the clique labeller stays within one tight pair for every order up
//    to 500, in under thirty seconds total.
bool crit_complete(double* elapsed) {
  auto t0 = Clock::now();
  for (int n = 2; n <= 500; ++n) {
    LabelledResult r = label_complete(n);
    Graph g = complete_graph(n);
    if (!check_shape(g, r.labelling, Requirement::ONE_EDGE).ok) {
      std::printf("  clique failure at n=%d\n", n);
      return false;
    }
  }
  *elapsed = seconds_since(t0);
  return *elapsed < 30.0;
}

// 8: the bipartite labeller uses labels 1..2, conforms to the star shape,
//    and keeps any conflicts pinned to the chosen root.
bool crit_bipartite(double* elapsed) {
  auto t0 = Clock::now();
  auto run = [&](const Graph& g, int root) {
    LabelledResult r = label_bipartite_two(g, root);
    ShapeReport shape = check_shape(g, r.labelling, Requirement::ONE_STAR);
    if (!shape.ok) {
      std::printf("  star shape failed on %s\n", to_graph6(g).c_str());
      return false;
    }
    for (auto [u, v] : shape.detail.conflict_edges)
      if (u != root && v != root) {
        std::printf("  conflict away from the root on %s\n",
                    to_graph6(g).c_str());
        return false;
      }
    for (int lbl : r.labelling.lab)
      if (lbl != 1 && lbl != 2) return false;
    return true;
  };
  for (const Graph& g : connected_upto(8)) {
    if (!check_bipartite(g).bipartite) continue;
    if (connected_components(g).size() != 1) continue;
    if (!run(g, 0)) return false;
  }
  std::mt19937 rng(7u);
  for (int t = 0; t < 100; ++t) {
    int n = 50 + (int)(rng() % 9951);  // up to 10^4 vertices
    if (!run(random_connected_bipartite(n, rng), 0)) return false;
  }
  *elapsed = seconds_since(t0);
  return *elapsed < 120.0;
}

// 9: the subcubic labeller keeps every class a forest on all small
//    low-degree graphs, all cubic graphs up to n=10, and large random ones.
bool crit_subcubic(double* elapsed) {
  auto t0 = Clock::now();
  auto run = [&](const Graph& g) {
    LabelledResult r = label_subcubic_two(g);
    if (!check_shape(g, r.labelling, Requirement::ALL_FORESTS).ok) {
      std::printf("  forest shape failed on %s\n", to_graph6(g).c_str());
      return false;
    }
    return true;
  };
  for (const Graph& g : connected_upto(8, 3))
    if (!run(g)) return false;
  const int cubic_want[] = {1, 2, 5, 19};
  int idx = 0;
  for (int n : {4, 6, 8, 10}) {
    int cubic = 0;
    for (const Graph& g : enumerate_connected(n, 3)) {
      if (!g.is_regular() || g.max_degree() != 3) continue;
      ++cubic;
      if (!run(g)) return false;
    }
    if (cubic != cubic_want[idx++]) {
      std::printf("  cubic census mismatch at n=%d: %d\n", n, cubic);
      return false;
    }
  }
  std::mt19937 rng(9u);
  for (int t = 0; t < 100; ++t) {
    int n = 20 + (int)(rng() % 981);  // up to 10^3 vertices
    if (!run(random_connected_subcubic(n, rng))) return false;
  }
  *elapsed = seconds_since(t0);
  return true;
}

// 10: on every connected nice regular graph up to n=8 the multiset-proper
//     witness found by search is product-proper.
bool crit_regular(double* elapsed) {
  auto t0 = Clock::now();
  SearchBudget roomy;
  roomy.max_nodes = 4'000'000'000LL;
  roomy.max_seconds = 1200.0;
  long long checked = 0;
  for (const Graph& g : connected_upto(8)) {
    if (!g.is_regular() || !is_nice(g)) continue;
    RegularCheck r = verify_regular_via_multiset(g, roomy);
    if (!r.ok || r.anomaly || !is_m_proper(g, r.witness) ||
        !is_p_proper(g, r.witness)) {
      std::printf("  regular observation failed on %s\n",
                  to_graph6(g).c_str());
      return false;
    }
    ++checked;
  }
  std::printf("  regular graphs checked: %lld\n", checked);
  *elapsed = seconds_since(t0);
  return checked > 0;
}

// 11: serialization and arithmetic invariants: graph6 round-trips the full
//     small corpus; exponent-vector equality matches wide-integer product
//     equality on random labellings; product-properness implies
//     multiset-properness on the same samples.
bool crit_invariants(double* elapsed) {
  auto t0 = Clock::now();
  for (const Graph& g : connected_upto(7)) {
    Graph h = parse_graph6(to_graph6(g));
    if (h.n != g.n || h.edges != g.edges) {
      std::printf("  graph6 round-trip failed on %s\n", to_graph6(g).c_str());
      return false;
    }
  }
  std::mt19937 rng(31337u);
  long long samples = 0, proper_seen = 0;
  while (samples < 100000) {
    int n = 2 + (int)(rng() % 8);
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 100 < 55) es.push_back({u, v});
    Graph g = make_graph(n, es);
    if (g.m() == 0) continue;
    int k = 2 + (int)(rng() % 9);  // labels from 1..k, up to 10
    EdgeLabelling l{k, {}};
    l.lab.reserve(g.m());
    for (int e = 0; e < g.m(); ++e) l.lab.push_back(1 + (int)(rng() % k));
    std::vector<unsigned __int128> wide(g.n, 1);
    for (int e = 0; e < g.m(); ++e) {
      wide[g.edges[e].first] *= (unsigned)l.lab[e];
      wide[g.edges[e].second] *= (unsigned)l.lab[e];
    }
    for (auto [u, v] : g.edges) {
      bool cls_eq = product_class(g, l, u) == product_class(g, l, v);
      bool wide_eq = wide[u] == wide[v];
      if (cls_eq != wide_eq) {
        std::printf("  exponent/product mismatch (n=%d)\n", n);
        return false;
      }
      ++samples;
    }
    if (is_p_proper(g, l)) {
      ++proper_seen;
      if (!is_m_proper(g, l)) {
        std::printf("  product-proper sample not multiset-proper\n");
        return false;
      }
    }
  }
  std::printf("  samples: %lld adjacent pairs, %lld proper labellings\n",
              samples, proper_seen);
  *elapsed = seconds_since(t0);
  return true;
}

struct Criterion {
  int id;
  const char* name;
  bool (*fn)(double*);
};

const Criterion kCriteria[] = {
    {1, "exhaustive chi-p <= 3 on nice graphs up to n=7 (census checked)",
     crit_chi_p_upto7},
    {2, "exhaustive chi-m <= 3 on nice graphs up to n=7", crit_chi_m_upto7},
    {3, "four-part scheme on all 4-chromatic graphs up to n=8",
     crit_four_chromatic},
    {4, "generic labeller conforms on small, clique, and dense-random sets",
     crit_generic},
    {5, "total labeller separates all graphs up to n=7", crit_total},
    {6, "forest-shaped 2-labellings exist up to n=6", crit_forest2},
    {7, "clique labeller stays one-edge up to n=500 quickly", crit_complete},
    {8, "bipartite labeller: star shape, conflicts only at the root",
     crit_bipartite},
    {9, "subcubic labeller keeps forests on small, cubic, and random sets",
     crit_subcubic},
    {10, "regular graphs: multiset witness is product-proper up to n=8",
     crit_regular},
    {11, "serialization and arithmetic invariants", crit_invariants},
};

}  // namespace

int main(int argc, char** argv) {
  int pick = 0;
  if (argc > 1) pick = std::atoi(argv[1]);
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (pick != 0 && c.id != pick) continue;
    double elapsed = 0.0;
    bool ok = false;
    try {
      ok = c.fn(&elapsed);
    } catch (const std::exception& e) {
      std::printf("  unexpected exception: %s\n", e.what());
      ok = false;
    }
    std::printf("[%s] criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.id,
                c.name, elapsed);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
