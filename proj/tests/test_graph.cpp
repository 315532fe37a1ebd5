#include "doctest.h"

#include <random>

#include "dynsparse/graph.hpp"

using namespace dynsparse;

TEST_CASE("weight classes") {
  CHECK(weight_class(5, 1) == 2);
  CHECK(weight_class(8, 1) == 3);
  CHECK(weight_class(1, 1) == 0);
  CHECK(weight_class(7.999, 1) == 2);
  CHECK(weight_class(0.75, 0.25) == 1);
  CHECK_THROWS_AS(weight_class(0.5, 1), std::invalid_argument);
  // boundary property over a sweep
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0, 40);
  for (int i = 0; i < 2000; ++i) {
    double gamma = 0.1 + d(rng) / 10, w = gamma * std::exp2(d(rng) / 3);
    int c = weight_class(w, gamma);
    CHECK(std::ldexp(gamma, c) <= w);
    CHECK(w < std::ldexp(gamma, c + 1));
  }
}

TEST_CASE("insert and delete") {
  DynamicGraph g(4);
  EdgeId a = g.insert_edge(0, 1, 1.0);
  CHECK(g.num_edges() == 1);
  CHECK(g.weight_ratio() == 1.0);
  EdgeId b = g.insert_edge(1, 2, 4.0);
  CHECK(b > a);
  CHECK(g.weight_ratio() == 4.0);
  g.delete_edge(a);
  CHECK(g.insert_edge(0, 1, 2.0) > b);  // ids never reused
  CHECK(g.weight_ratio() == 2.0);
  CHECK_THROWS_AS(g.insert_edge(2, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(g.insert_edge(0, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(g.insert_edge(0, 3, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(g.delete_edge(999), std::out_of_range);
  CHECK_THROWS_AS(g.insert_edge(0, 9, 1.0), std::out_of_range);
  g.set_weight_ratio_override(64);
  CHECK(g.weight_ratio() == 64);
}

TEST_CASE("parallel edges need the multi flag") {
  DynamicGraph simple(3, false);
  simple.insert_edge(0, 1, 1);
  CHECK_THROWS_AS(simple.insert_edge(1, 0, 2), std::invalid_argument);
  DynamicGraph multi(3, true);
  multi.insert_edge(0, 1, 1);
  multi.insert_edge(1, 0, 2);
  CHECK(multi.num_edges() == 2);
  std::vector<VertexId> s{0};
  CHECK(multi.cut_weight(s) == 3.0);
}

TEST_CASE("cut weight matches a direct sum and running extremes match recompute") {
  std::mt19937_64 rng(11);
  DynamicGraph g(9);
  std::vector<EdgeId> live;
  for (int step = 0; step < 600; ++step) {
    if (live.empty() || rng() % 3) {
      VertexId u = rng() % 9, v = rng() % 9;
      if (u == v) continue;
      live.push_back(g.insert_edge(u, v, 1 + static_cast<double>(rng() % 50)));
    } else {
      std::size_t k = rng() % live.size();
      g.delete_edge(live[k]);
      live.erase(live.begin() + static_cast<long>(k));
    }
    double lo = 1e300, hi = 0;
    for (const auto& [id, e] : g.edges()) {
      lo = std::min(lo, e.weight);
      hi = std::max(hi, e.weight);
    }
    if (g.num_edges()) {
      CHECK(g.min_weight() == lo);
      CHECK(g.max_weight() == hi);
    }
    std::vector<bool> mask(9);
    for (auto&& b : mask) b = rng() & 1;
    double direct = 0;
    for (const auto& [id, e] : g.edges())
      if (mask[e.u] != mask[e.v]) direct += e.weight;
    CHECK(g.cut_weight(mask) == direct);
  }
}

TEST_CASE("diff of edge maps") {
  std::map<EdgeId, WeightedEdge> a{{1, {1, 0, 1, 1}}, {2, {2, 1, 2, 1}}};
  std::map<EdgeId, WeightedEdge> b{{2, {2, 1, 2, 4}}, {3, {3, 0, 2, 1}}};
  auto cs = diff_edge_maps(a, b);
  CHECK(cs.removed == std::vector<EdgeId>{1, 2});
  REQUIRE(cs.added.size() == 2);
  CHECK(cs.added[0].weight == 4);
  DynamicGraph g(3);
  g.insert_edge(a[1]);
  g.insert_edge(a[2]);
  g.apply(cs);
  CHECK(g.edges() == b);
}
