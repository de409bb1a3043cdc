#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "p123/graph.hpp"

namespace p123 {

// Edge labels are 1..k, indexed by the graph's edge ids.
struct EdgeLabelling {
  int k = 3;
  std::vector<int> lab;
};

inline EdgeLabelling all_ones(const Graph& g, int k = 3) {
  return EdgeLabelling{k, std::vector<int>(g.m(), 1)};
}

// Edge labelling plus a label per vertex (used with vertex labels in {1,2}).
struct TotalLabelling {
  EdgeLabelling edge;
  std::vector<int> vertex;
};

// Product of incident labels, kept as exponents over primes 2,3,5,7 so that
// large degrees never overflow. Covers labels up to 10.
struct ProductClass {
  std::array<int, 4> e{0, 0, 0, 0};
  bool operator==(const ProductClass& o) const { return e == o.e; }
  bool operator!=(const ProductClass& o) const { return e != o.e; }
  bool operator<(const ProductClass& o) const { return e < o.e; }
  bool is_one() const { return e == std::array<int, 4>{0, 0, 0, 0}; }
  std::string decimal() const;  // arbitrary-precision decimal rendering
};

ProductClass label_class(int label);  // factorization of one label (1..10)

// Counts of each label value incident to v; index by label, size k+1.
using VertexSignature = std::vector<int>;

void validate_labelling(const Graph& g, const EdgeLabelling& l);
VertexSignature signature(const Graph& g, const EdgeLabelling& l, int v);
ProductClass product_class(const Graph& g, const EdgeLabelling& l, int v);
ProductClass total_product_class(const Graph& g, const TotalLabelling& t, int v);
long long label_sum(const Graph& g, const EdgeLabelling& l, int v);

bool is_p_proper(const Graph& g, const EdgeLabelling& l);
bool is_m_proper(const Graph& g, const EdgeLabelling& l);
bool is_s_proper(const Graph& g, const EdgeLabelling& l);
bool is_total_p_proper(const Graph& g, const TotalLabelling& t);

enum class ShapeKind { INDEPENDENT, MATCHING, STAR, FOREST, CYCLIC };
const char* shape_name(ShapeKind s);

// What the induced subgraphs of the product classes must look like.
enum class Requirement { ALL_INDEPENDENT, S1_MATCHING, ONE_EDGE, ONE_STAR, ALL_FORESTS };
const char* requirement_name(Requirement r);
std::optional<Requirement> requirement_from_name(const std::string& s);

struct ClassInfo {
  ProductClass cls;
  std::vector<int> vertices;  // ascending
  int induced_edges = 0;
  ShapeKind shape = ShapeKind::INDEPENDENT;
};

struct ConflictReport {
  std::vector<std::pair<int, int>> conflict_edges;  // adjacent same-class pairs
  std::vector<ClassInfo> classes;                   // ordered by class
  ShapeKind worst = ShapeKind::INDEPENDENT;
};

std::vector<ClassInfo> class_partition(const Graph& g, const EdgeLabelling& l);
ConflictReport conflicts(const Graph& g, const EdgeLabelling& l);
ConflictReport total_conflicts(const Graph& g, const TotalLabelling& t);

struct ShapeReport {
  bool ok = false;
  Requirement req;
  std::vector<std::string> violations;
  ConflictReport detail;
};

ShapeReport check_shape(const Graph& g, const EdgeLabelling& l, Requirement req);

// JSON form: {"k":3,"edges":[[u,v,label],...],"vertices":[[v,label],...]}
// (the "vertices" part is present only for total labellings).
nlohmann::json labelling_to_json(const Graph& g, const EdgeLabelling& l);
nlohmann::json labelling_to_json(const Graph& g, const TotalLabelling& t);

struct LoadedLabelling {
  EdgeLabelling edge;
  std::optional<std::vector<int>> vertex;
};
// Binds a parsed JSON labelling to g; parse_error if it is not a total
// assignment of g's edges or labels fall outside 1..k.
LoadedLabelling labelling_from_json(const Graph& g, const nlohmann::json& j);

}  // namespace p123
