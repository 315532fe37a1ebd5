#include "doctest.h"

#include <random>
#include <set>

#include "dynsparse/bundle.hpp"

using namespace dynsparse;

namespace {

void stream_check(BundleMode mode, std::uint64_t seed, std::size_t n, std::size_t t, int steps) {
  std::mt19937_64 rng(seed);
  BundleChain b(n, t, mode, 1.0);
  std::vector<EdgeId> live;
  EdgeId next = 0;
  for (int s = 0; s < steps; ++s) {
    UpdateEvent ev;
    if (live.empty() || rng() % 5 < 3) {
      VertexId u = rng() % n, v = rng() % n;
      if (u == v) continue;
      ev = UpdateEvent::insert({next, u, v, static_cast<double>(1 + rng() % 16)});
      live.push_back(next++);
    } else {
      std::size_t k = rng() % live.size();
      ev = UpdateEvent::erase(live[k]);
      live[k] = live.back();
      live.pop_back();
    }
    auto d = b.apply(ev);
    auto rc = d.residual_changes();
    CHECK(rc.added.size() <= 1);
    CHECK(rc.removed.size() <= 1);
    std::set<std::pair<std::size_t, int>> touched;
    for (const auto& f : d.forests) CHECK(touched.insert({f.layer, f.wclass}).second);
    std::set<std::size_t> layers;
    for (const auto& f : d.forests) layers.insert(f.layer);
    CHECK(layers.size() == d.forests.size());  // one forest per layer at most
    // layer i+1 sees exactly layer i minus its forest
    for (std::size_t i = 0; i + 1 < t; ++i) {
      std::set<EdgeId> in_next, expect;
      for (const auto& e : b.layer_input(i + 1)) in_next.insert(e.id);
      std::set<EdgeId> tree;
      for (const auto& e : b.layer_forest(i)) tree.insert(e.id);
      for (const auto& e : b.layer_input(i))
        if (!tree.count(e.id)) expect.insert(e.id);
      REQUIRE(in_next == expect);
    }
    if (s % 25 == 0) {
      for (std::size_t i = 0; i < t; ++i) {
        if (mode == BundleMode::Exact) {
          CHECK(alpha_mst_verify(n, b.layer_forest(i), b.layer_input(i), 1.0));
        } else {
          CHECK(alpha_mst_verify(n, b.layer_forest(i), b.layer_input(i), 2.0));
        }
      }
      CHECK(b.audit());
    }
  }
}

}  // namespace

TEST_CASE("bundle chain recourse and layering") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    stream_check(BundleMode::Exact, seed, 12, 3, 600);
    stream_check(BundleMode::Bucketed, seed, 12, 3, 600);
  }
}

TEST_CASE("t at least m leaves no residual") {
  std::mt19937_64 rng(9);
  BundleChain b(8, 40, BundleMode::Exact);
  EdgeId next = 0;
  for (int s = 0; s < 40; ++s) {
    VertexId u = rng() % 8, v = rng() % 8;
    if (u == v) continue;
    b.apply(UpdateEvent::insert({next++, u, v, 1.0 + s % 3}));
  }
  CHECK(b.residual().empty());
  CHECK(b.bundle_size() == next);
}

TEST_CASE("alpha-mst verification") {
  std::vector<WeightedEdge> g{{0, 0, 1, 4}, {1, 1, 2, 4}, {2, 0, 2, 8}};
  std::vector<WeightedEdge> path{{0, 0, 1, 4}, {1, 1, 2, 4}};
  std::vector<WeightedEdge> good{{0, 0, 1, 4}, {2, 0, 2, 8}};
  CHECK(!alpha_mst_verify(3, path, g, 1.0));
  CHECK(alpha_mst_verify(3, path, g, 2.0));
  CHECK(alpha_mst_verify(3, good, g, 1.0));
}

TEST_CASE("bundle errors") {
  BundleChain b(4, 2, BundleMode::Bucketed, 1.0);
  b.apply(UpdateEvent::insert({0, 0, 1, 1}));
  CHECK_THROWS_AS(b.apply(UpdateEvent::insert({0, 1, 2, 1})), std::invalid_argument);
  CHECK_THROWS_AS(b.apply(UpdateEvent::erase(7)), std::out_of_range);
  CHECK_THROWS_AS(b.apply(UpdateEvent::insert({1, 1, 2, 0.5})), std::invalid_argument);
}
