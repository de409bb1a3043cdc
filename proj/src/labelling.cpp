#include "p123/labelling.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

namespace p123 {

std::string ProductClass::decimal() const {
  // multiply out 2^a 3^b 5^c 7^d over a little base-1e9 bignum
  std::vector<uint32_t> digits{1};
  auto mul = [&](uint32_t f) {
    uint64_t carry = 0;
    for (auto& d : digits) {
      uint64_t x = (uint64_t)d * f + carry;
      d = (uint32_t)(x % 1000000000);
      carry = x / 1000000000;
    }
    while (carry) {
      digits.push_back((uint32_t)(carry % 1000000000));
      carry /= 1000000000;
    }
  };
  const int primes[4] = {2, 3, 5, 7};
  for (int i = 0; i < 4; ++i)
    for (int t = 0; t < e[i]; ++t) mul(primes[i]);
  std::string out = std::to_string(digits.back());
  for (int i = (int)digits.size() - 2; i >= 0; --i) {
    std::string part = std::to_string(digits[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

ProductClass label_class(int label) {
  if (label < 1 || label > 10)
    throw precondition_error("label outside supported range 1..10");
  ProductClass c;
  int x = label;
  const int primes[4] = {2, 3, 5, 7};
  for (int i = 0; i < 4; ++i)
    while (x % primes[i] == 0) {
      x /= primes[i];
      ++c.e[i];
    }
  return c;
}

void validate_labelling(const Graph& g, const EdgeLabelling& l) {
  if (l.k < 1 || l.k > 10) throw precondition_error("k outside supported range 1..10");
  if ((int)l.lab.size() != g.m())
    throw precondition_error("labelling has " + std::to_string(l.lab.size()) +
                             " labels for " + std::to_string(g.m()) + " edges");
  for (int i = 0; i < g.m(); ++i)
    if (l.lab[i] < 1 || l.lab[i] > l.k)
      throw precondition_error("label " + std::to_string(l.lab[i]) + " on edge " +
                               std::to_string(i) + " outside 1.." + std::to_string(l.k));
}

VertexSignature signature(const Graph& g, const EdgeLabelling& l, int v) {
  VertexSignature s(l.k + 1, 0);
  for (int eid : g.inc[v]) ++s[l.lab[eid]];
  return s;
}

ProductClass product_class(const Graph& g, const EdgeLabelling& l, int v) {
  ProductClass c;
  for (int eid : g.inc[v]) {
    ProductClass lc = label_class(l.lab[eid]);
    for (int i = 0; i < 4; ++i) c.e[i] += lc.e[i];
  }
  return c;
}

ProductClass total_product_class(const Graph& g, const TotalLabelling& t, int v) {
  ProductClass c = product_class(g, t.edge, v);
  ProductClass vc = label_class(t.vertex[v]);
  for (int i = 0; i < 4; ++i) c.e[i] += vc.e[i];
  return c;
}

long long label_sum(const Graph& g, const EdgeLabelling& l, int v) {
  long long s = 0;
  for (int eid : g.inc[v]) s += l.lab[eid];
  return s;
}

namespace {

std::vector<ProductClass> all_classes(const Graph& g, const EdgeLabelling& l) {
  validate_labelling(g, l);
  std::vector<ProductClass> c(g.n);
  for (int v = 0; v < g.n; ++v) c[v] = product_class(g, l, v);
  return c;
}

std::vector<ProductClass> all_total_classes(const Graph& g, const TotalLabelling& t) {
  validate_labelling(g, t.edge);
  if ((int)t.vertex.size() != g.n)
    throw precondition_error("vertex label count does not match vertex count");
  for (int v = 0; v < g.n; ++v)
    if (t.vertex[v] < 1 || t.vertex[v] > t.edge.k)
      throw precondition_error("vertex label outside 1..k at vertex " +
                               std::to_string(v));
  std::vector<ProductClass> c(g.n);
  for (int v = 0; v < g.n; ++v) c[v] = total_product_class(g, t, v);
  return c;
}

ShapeKind classify(const Graph& g, const std::vector<int>& verts,
                   const std::vector<ProductClass>& cls, int* edge_count) {
  // induced subgraph of one class; verts ascending, all of equal class
  int m = 0, maxdeg = 0;
  std::vector<std::pair<int, int>> es;
  for (int v : verts) {
    int d = 0;
    for (int u : g.adj[v])
      if (cls[u] == cls[v]) {
        ++d;
        if (u > v) es.push_back({v, u});
      }
    maxdeg = std::max(maxdeg, d);
    m += d;
  }
  m /= 2;
  if (edge_count) *edge_count = m;
  if (m == 0) return ShapeKind::INDEPENDENT;
  if (maxdeg <= 1) return ShapeKind::MATCHING;
  if (m >= 2) {
    // single star iff some vertex covers every induced edge
    for (int cand : {es[0].first, es[0].second}) {
      bool all = true;
      for (auto [a, b] : es)
        if (a != cand && b != cand) {
          all = false;
          break;
        }
      if (all) return ShapeKind::STAR;
    }
  }
  // acyclic test on the induced edges via union-find
  std::map<int, int> root;
  std::function<int(int)> find = [&](int x) {
    return root[x] == x ? x : root[x] = find(root[x]);
  };
  for (int v : verts) root[v] = v;
  for (auto [a, b] : es) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return ShapeKind::CYCLIC;
    root[ra] = rb;
  }
  return ShapeKind::FOREST;
}

std::vector<ClassInfo> partition_from(const Graph& g,
                                      const std::vector<ProductClass>& cls) {
  std::map<ProductClass, std::vector<int>> groups;
  for (int v = 0; v < g.n; ++v) groups[cls[v]].push_back(v);
  std::vector<ClassInfo> out;
  for (auto& [c, verts] : groups) {
    ClassInfo info;
    info.cls = c;
    info.vertices = verts;
    info.shape = classify(g, verts, cls, &info.induced_edges);
    out.push_back(std::move(info));
  }
  return out;
}

ConflictReport report_from(const Graph& g, const std::vector<ProductClass>& cls) {
  ConflictReport rep;
  for (auto [u, v] : g.edges)
    if (cls[u] == cls[v]) rep.conflict_edges.push_back({u, v});
  rep.classes = partition_from(g, cls);
  for (const auto& ci : rep.classes)
    if ((int)ci.shape > (int)rep.worst) rep.worst = ci.shape;
  return rep;
}

}  // namespace

const char* shape_name(ShapeKind s) {
  switch (s) {
    case ShapeKind::INDEPENDENT: return "independent";
    case ShapeKind::MATCHING: return "matching";
    case ShapeKind::STAR: return "star";
    case ShapeKind::FOREST: return "forest";
    case ShapeKind::CYCLIC: return "cyclic";
  }
  return "?";
}

const char* requirement_name(Requirement r) {
  switch (r) {
    case Requirement::ALL_INDEPENDENT: return "all-independent";
    case Requirement::S1_MATCHING: return "s1-matching";
    case Requirement::ONE_EDGE: return "one-edge";
    case Requirement::ONE_STAR: return "one-star";
    case Requirement::ALL_FORESTS: return "all-forests";
  }
  return "?";
}

std::optional<Requirement> requirement_from_name(const std::string& s) {
  for (Requirement r : {Requirement::ALL_INDEPENDENT, Requirement::S1_MATCHING,
                        Requirement::ONE_EDGE, Requirement::ONE_STAR,
                        Requirement::ALL_FORESTS})
    if (s == requirement_name(r)) return r;
  return std::nullopt;
}

std::vector<ClassInfo> class_partition(const Graph& g, const EdgeLabelling& l) {
  return partition_from(g, all_classes(g, l));
}

ConflictReport conflicts(const Graph& g, const EdgeLabelling& l) {
  return report_from(g, all_classes(g, l));
}

ConflictReport total_conflicts(const Graph& g, const TotalLabelling& t) {
  return report_from(g, all_total_classes(g, t));
}

bool is_p_proper(const Graph& g, const EdgeLabelling& l) {
  auto cls = all_classes(g, l);
  for (auto [u, v] : g.edges)
    if (cls[u] == cls[v]) return false;
  return true;
}

bool is_m_proper(const Graph& g, const EdgeLabelling& l) {
  validate_labelling(g, l);
  for (auto [u, v] : g.edges)
    if (signature(g, l, u) == signature(g, l, v)) return false;
  return true;
}

bool is_s_proper(const Graph& g, const EdgeLabelling& l) {
  validate_labelling(g, l);
  for (auto [u, v] : g.edges)
    if (label_sum(g, l, u) == label_sum(g, l, v)) return false;
  return true;
}

bool is_total_p_proper(const Graph& g, const TotalLabelling& t) {
  auto cls = all_total_classes(g, t);
  for (auto [u, v] : g.edges)
    if (cls[u] == cls[v]) return false;
  return true;
}

ShapeReport check_shape(const Graph& g, const EdgeLabelling& l, Requirement req) {
  ShapeReport rep;
  rep.req = req;
  rep.detail = conflicts(g, l);
  auto bad = [&](const ClassInfo& ci, const std::string& why) {
    rep.violations.push_back("class " + ci.cls.decimal() + " (" +
                             std::to_string(ci.vertices.size()) + " vertices, " +
                             std::to_string(ci.induced_edges) + " edges): " + why);
  };
  switch (req) {
    case Requirement::ALL_INDEPENDENT:
      for (const auto& ci : rep.detail.classes)
        if (ci.shape != ShapeKind::INDEPENDENT) bad(ci, "not independent");
      break;
    case Requirement::S1_MATCHING:
      for (const auto& ci : rep.detail.classes) {
        if (ci.cls.is_one()) {
          if (ci.shape != ShapeKind::INDEPENDENT && ci.shape != ShapeKind::MATCHING)
            bad(ci, "product-1 class must induce a matching");
        } else if (ci.shape != ShapeKind::INDEPENDENT) {
          bad(ci, "not independent");
        }
      }
      break;
    case Requirement::ONE_EDGE: {
      int with_edges = 0;
      for (const auto& ci : rep.detail.classes)
        if (ci.induced_edges > 0) {
          ++with_edges;
          if (ci.induced_edges != 1) bad(ci, "induces more than one edge");
        }
      if (with_edges > 1)
        rep.violations.push_back(std::to_string(with_edges) +
                                 " classes induce edges; at most one allowed");
      break;
    }
    case Requirement::ONE_STAR: {
      int with_edges = 0;
      for (const auto& ci : rep.detail.classes)
        if (ci.induced_edges > 0) {
          ++with_edges;
          bool star_like = ci.shape == ShapeKind::STAR ||
                           (ci.shape == ShapeKind::MATCHING && ci.induced_edges == 1);
          if (!star_like) bad(ci, "induced edges do not form a single star");
        }
      if (with_edges > 1)
        rep.violations.push_back(std::to_string(with_edges) +
                                 " classes induce edges; at most one allowed");
      break;
    }
    case Requirement::ALL_FORESTS:
      for (const auto& ci : rep.detail.classes)
        if (ci.shape == ShapeKind::CYCLIC) bad(ci, "induces a cycle");
      break;
  }
  rep.ok = rep.violations.empty();
  return rep;
}

nlohmann::json labelling_to_json(const Graph& g, const EdgeLabelling& l) {
  validate_labelling(g, l);
  nlohmann::json j;
  j["k"] = l.k;
  auto edges = nlohmann::json::array();
  for (int i = 0; i < g.m(); ++i)
    edges.push_back({g.edges[i].first, g.edges[i].second, l.lab[i]});
  j["edges"] = edges;
  return j;
}

nlohmann::json labelling_to_json(const Graph& g, const TotalLabelling& t) {
  nlohmann::json j = labelling_to_json(g, t.edge);
  auto verts = nlohmann::json::array();
  for (int v = 0; v < g.n; ++v) verts.push_back({v, t.vertex[v]});
  j["vertices"] = verts;
  return j;
}

LoadedLabelling labelling_from_json(const Graph& g, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("edges"))
    throw parse_error("labelling JSON must be an object with 'k' and 'edges'");
  LoadedLabelling out;
  if (!j["k"].is_number_integer()) throw parse_error("labelling 'k' must be an integer");
  out.edge.k = j["k"].get<int>();
  if (out.edge.k < 1 || out.edge.k > 10)
    throw parse_error("labelling 'k' outside supported range 1..10");
  out.edge.lab.assign(g.m(), 0);
  if (!j["edges"].is_array()) throw parse_error("labelling 'edges' must be an array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number_integer())
      throw parse_error("labelling edge entries must be [u,v,label]");
    int u = e[0].get<int>(), v = e[1].get<int>(), lab = e[2].get<int>();
    int eid = g.edge_id(u, v);
    if (eid < 0)
      throw parse_error("labelled edge (" + std::to_string(u) + "," +
                        std::to_string(v) + ") is not in the graph");
    if (out.edge.lab[eid] != 0)
      throw parse_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") labelled twice");
    if (lab < 1 || lab > out.edge.k)
      throw parse_error("label " + std::to_string(lab) + " outside 1..k on edge (" +
                        std::to_string(u) + "," + std::to_string(v) + ")");
    out.edge.lab[eid] = lab;
  }
  for (int i = 0; i < g.m(); ++i)
    if (out.edge.lab[i] == 0)
      throw parse_error("edge (" + std::to_string(g.edges[i].first) + "," +
                        std::to_string(g.edges[i].second) + ") is unlabelled");
  if (j.contains("vertices")) {
    if (!j["vertices"].is_array())
      throw parse_error("labelling 'vertices' must be an array");
    std::vector<int> vl(g.n, 0);
    for (const auto& e : j["vertices"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        throw parse_error("labelling vertex entries must be [v,label]");
      int v = e[0].get<int>(), lab = e[1].get<int>();
      if (v < 0 || v >= g.n)
        throw parse_error("vertex " + std::to_string(v) + " out of range");
      if (vl[v] != 0) throw parse_error("vertex " + std::to_string(v) + " labelled twice");
      if (lab < 1 || lab > out.edge.k)
        throw parse_error("vertex label outside 1..k at vertex " + std::to_string(v));
      vl[v] = lab;
    }
    for (int v = 0; v < g.n; ++v)
      if (vl[v] == 0)
        throw parse_error("vertex " + std::to_string(v) + " is unlabelled");
    out.vertex = std::move(vl);
  }
  return out;
}

}  // namespace p123
