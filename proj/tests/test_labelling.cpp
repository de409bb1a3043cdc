#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"
#include "p123/graph.hpp"
#include "p123/labelling.hpp"

using namespace p123;

namespace {
Graph path(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
  return make_graph(n, es);
}
Graph star3() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

EdgeLabelling lab(const Graph& g, std::vector<int> labels, int k = 3) {
  REQUIRE((int)labels.size() == g.m());
  return EdgeLabelling{k, std::move(labels)};
}
}  // namespace

TEST_CASE("product classes factor labels") {
  CHECK(label_class(1).is_one());
  CHECK(label_class(6).e == std::array<int, 4>{1, 1, 0, 0});
  CHECK(label_class(8).e == std::array<int, 4>{3, 0, 0, 0});
  CHECK(label_class(7).e == std::array<int, 4>{0, 0, 0, 1});
  CHECK(label_class(10).e == std::array<int, 4>{1, 0, 1, 0});
  CHECK(label_class(9).decimal() == "9");
  ProductClass big;
  big.e = {100, 0, 0, 0};  // 2^100
  CHECK(big.decimal() == "1267650600228229401496703205376");
  ProductClass one;
  CHECK(one.decimal() == "1");
  // ordering is lexicographic on exponent vectors, not on numeric value
  CHECK(label_class(3) < label_class(2));
  CHECK_FALSE(label_class(2) < label_class(2));
}

TEST_CASE("per-vertex products and signatures") {
  Graph k3 = complete_graph(3);
  EdgeLabelling l = lab(k3, {1, 2, 3});  // edges (0,1),(0,2),(1,2)
  CHECK(product_class(k3, l, 0).decimal() == "2");
  CHECK(product_class(k3, l, 1).decimal() == "3");
  CHECK(product_class(k3, l, 2).decimal() == "6");
  CHECK(label_sum(k3, l, 2) == 5);
  VertexSignature s = signature(k3, l, 0);
  REQUIRE(s.size() == 4);  // labels 0..k counted, index by label
  CHECK(s[1] == 1);
  CHECK(s[2] == 1);
  CHECK(s[3] == 0);
}

TEST_CASE("properness predicates on frozen labellings") {
  Graph k3 = complete_graph(3);
  EdgeLabelling good = lab(k3, {1, 2, 3});
  CHECK(is_p_proper(k3, good));
  CHECK(is_m_proper(k3, good));
  CHECK(is_s_proper(k3, good));

  EdgeLabelling bad = lab(k3, {1, 1, 2});  // products 1,2,2
  CHECK(!is_p_proper(k3, bad));
  CHECK(!is_m_proper(k3, bad));
  CHECK(!is_s_proper(k3, bad));

  Graph p3 = path(3);
  CHECK(is_p_proper(p3, lab(p3, {2, 2})));   // products 2,4,2
  CHECK(!is_p_proper(p3, lab(p3, {1, 2})));  // products 1,2,2

  CHECK_THROWS_AS(validate_labelling(k3, lab(k3, {1, 2, 5})),
                  std::runtime_error);
  EdgeLabelling short_lab{3, {1, 1}};
  CHECK_THROWS_AS(validate_labelling(k3, short_lab), std::runtime_error);
}

TEST_CASE("conflict report pins the offending pairs") {
  Graph k3 = complete_graph(3);
  ConflictReport r = conflicts(k3, lab(k3, {1, 1, 2}));
  CHECK(r.conflict_edges == std::vector<std::pair<int, int>>{{1, 2}});
  ConflictReport all = conflicts(k3, all_ones(k3));
  CHECK(all.conflict_edges.size() == 3);
  ConflictReport none = conflicts(k3, lab(k3, {1, 2, 3}));
  CHECK(none.conflict_edges.empty());
}

TEST_CASE("class partition groups by product") {
  Graph p4 = path(4);
  EdgeLabelling l = lab(p4, {1, 2, 2});  // products 1,2,4,2
  auto cls = class_partition(p4, l);
  REQUIRE(cls.size() == 3);
  CHECK(cls[0].cls.is_one());
  CHECK(cls[0].vertices == std::vector<int>{0});
  CHECK(cls[1].cls.decimal() == "2");
  CHECK(cls[1].vertices == std::vector<int>{1, 3});
  CHECK(cls[1].induced_edges == 0);
  CHECK(cls[2].cls.decimal() == "4");
}

TEST_CASE("shape checks: frozen verdicts per requirement") {
  Graph k3 = complete_graph(3);
  Graph p4 = path(4);
  Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Graph s3 = star3();

  // P_4 with products 1,2,4,2: every class independent.
  EdgeLabelling pl = lab(p4, {1, 2, 2});
  CHECK(check_shape(p4, pl, Requirement::ALL_INDEPENDENT).ok);
  CHECK(check_shape(p4, pl, Requirement::S1_MATCHING).ok);
  CHECK(check_shape(p4, pl, Requirement::ONE_EDGE).ok);
  CHECK(check_shape(p4, pl, Requirement::ONE_STAR).ok);
  CHECK(check_shape(p4, pl, Requirement::ALL_FORESTS).ok);

  // K_3 with products 2,2,4: one class spans exactly one edge.
  EdgeLabelling kl = lab(k3, {1, 2, 2});
  CHECK(!check_shape(k3, kl, Requirement::ALL_INDEPENDENT).ok);
  CHECK(check_shape(k3, kl, Requirement::ONE_EDGE).ok);
  CHECK(check_shape(k3, kl, Requirement::ONE_STAR).ok);
  CHECK(!check_shape(k3, kl, Requirement::ALL_INDEPENDENT).violations.empty());

  // All-ones star: the product-1 class is the whole star.
  EdgeLabelling sl = all_ones(s3);
  CHECK(check_shape(s3, sl, Requirement::ONE_STAR).ok);
  CHECK(!check_shape(s3, sl, Requirement::ONE_EDGE).ok);
  CHECK(!check_shape(s3, sl, Requirement::S1_MATCHING).ok);
  CHECK(check_shape(s3, sl, Requirement::ALL_FORESTS).ok);

  // All-ones P_3 is a two-edge path inside the product-1 class: not a
  // matching, but still a forest.
  Graph p3 = path(3);
  CHECK(!check_shape(p3, all_ones(p3), Requirement::S1_MATCHING).ok);
  CHECK(check_shape(p3, all_ones(p3), Requirement::ALL_FORESTS).ok);

  // A product-1 class holding one isolated edge is a matching.
  Graph p4b = path(4);
  EdgeLabelling ml = lab(p4b, {1, 2, 1});  // products 1,2,2,1 -> conflicts
  CHECK(!check_shape(p4b, ml, Requirement::ALL_INDEPENDENT).ok);

  // All-ones C_4: the product-1 class is a cycle, not a forest.
  CHECK(!check_shape(c4, all_ones(c4), Requirement::ALL_FORESTS).ok);
  CHECK(check_shape(c4, lab(c4, {1, 2, 1, 2}), Requirement::ALL_FORESTS).ok);
}

TEST_CASE("requirement names round-trip") {
  for (Requirement r :
       {Requirement::ALL_INDEPENDENT, Requirement::S1_MATCHING,
        Requirement::ONE_EDGE, Requirement::ONE_STAR, Requirement::ALL_FORESTS})
    CHECK(requirement_from_name(requirement_name(r)) == r);
  CHECK(!requirement_from_name("nonsense").has_value());
}

TEST_CASE("total labellings multiply the vertex label in") {
  Graph k2 = make_graph(2, {{0, 1}});
  TotalLabelling t{EdgeLabelling{3, {1}}, {1, 2}};
  CHECK(total_product_class(k2, t, 0).decimal() == "1");
  CHECK(total_product_class(k2, t, 1).decimal() == "2");
  CHECK(is_total_p_proper(k2, t));
  CHECK(total_conflicts(k2, t).conflict_edges.empty());

  TotalLabelling flat{EdgeLabelling{3, {1}}, {1, 1}};
  CHECK(!is_total_p_proper(k2, flat));
  CHECK(total_conflicts(k2, flat).conflict_edges ==
        std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("labelling JSON round-trips and validates") {
  Graph k3 = complete_graph(3);
  EdgeLabelling l = lab(k3, {1, 2, 3});
  nlohmann::json j = labelling_to_json(k3, l);
  CHECK(j["k"] == 3);
  LoadedLabelling back = labelling_from_json(k3, j);
  CHECK(back.edge.lab == l.lab);
  CHECK(!back.vertex.has_value());

  TotalLabelling t{EdgeLabelling{3, {1, 1, 2}}, {1, 2, 1}};
  nlohmann::json tj = labelling_to_json(k3, t);
  LoadedLabelling tback = labelling_from_json(k3, tj);
  REQUIRE(tback.vertex.has_value());
  CHECK(*tback.vertex == t.vertex);

  // Partial or out-of-range labellings are rejected on load.
  nlohmann::json missing = {{"k", 3}, {"edges", {{0, 1, 1}, {0, 2, 1}}}};
  CHECK_THROWS_AS(labelling_from_json(k3, missing), parse_error);
  nlohmann::json range = j;
  range["edges"][0][2] = 9;
  CHECK_THROWS_AS(labelling_from_json(k3, range), parse_error);
  nlohmann::json stranger = j;
  stranger["edges"][0] = {0, 1, 1, 1};
  CHECK_THROWS_AS(labelling_from_json(k3, stranger), parse_error);
}
