#include "doctest.h"

#include <random>

#include "dynsparse/coin.hpp"
#include "dynsparse/elimination.hpp"
#include "dynsparse/oracle.hpp"
#include "dynsparse/vertex_sparsify.hpp"
#include "support.hpp"

using namespace dynsparse;

namespace {

// VC = 0..c-1, every other vertex a star over a random subset of VC, plus
// some VC-VC edges
struct QuasiBipartite {
  std::size_t n, c;
  DynamicGraph g;
  std::vector<bool> in_vc;
  std::vector<VertexId> vc;
  std::map<StarId, Star> stars;
};

QuasiBipartite quasi(std::size_t n, std::size_t c, std::uint64_t seed, int wmax, double p_core = 0.3,
                     std::size_t max_deg = 4) {
  std::mt19937_64 rng(seed);
  QuasiBipartite q{n, c, DynamicGraph(n), std::vector<bool>(n, false), {}, {}};
  for (VertexId v = 0; v < c; ++v) q.in_vc[v] = true, q.vc.push_back(v);
  std::uniform_real_distribution<double> u(0, 1);
  for (VertexId a = 0; a < c; ++a)
    for (VertexId b = a + 1; b < c; ++b)
      if (u(rng) < p_core) q.g.insert_edge(a, b, static_cast<double>(1 + rng() % wmax));
  for (VertexId x = static_cast<VertexId>(c); x < n; ++x) {
    std::size_t k = 1 + rng() % std::min(max_deg, c);
    std::vector<VertexId> pick(q.vc);
    std::shuffle(pick.begin(), pick.end(), rng);
    Star s{x, {}};
    for (std::size_t i = 0; i < k; ++i) {
      double w = static_cast<double>(1 + rng() % wmax);
      q.g.insert_edge(x, pick[i], w);
      s.nbrs[pick[i]] = w;
    }
    q.stars[x] = s;
  }
  return q;
}

DynamicGraph star_graph(std::size_t n, const std::map<StarId, Star>& stars) {
  DynamicGraph g(n);
  for (const auto& [id, s] : stars)
    for (const auto& [v, w] : s.nbrs) g.insert_edge(s.x, v, w);
  return g;
}

}  // namespace

TEST_CASE("bucket index and rerouting rule") {
  CHECK(star_bucket(8, 1) == 3);
  CHECK(star_bucket(1, 1) == 0);
  CHECK(star_bucket(3, 1) == 2);
  CHECK(star_bucket(4.5, 1) == 3);
  CHECK(star_bucket(0.75, 1) == 0);
  CHECK(star_bucket(0.5, 1) == -1);
  CHECK(star_bucket(12, 3) == 2);

  Star s{9, {{0, 8}, {1, 3}}};
  auto b = bucket_star(s, 2, 1.0, 1.0);
  CHECK(b.xmax == 0);
  CHECK(b.bucket == 3);
  REQUIRE(b.rerouted.size() == 1);
  CHECK(b.rerouted[0] == std::pair<VertexId, double>{1, 3});
  CHECK(b.kept.nbrs == std::map<VertexId, double>{{0, 8}});

  Star eq{9, {{0, 2}, {1, 2}, {2, 2}}};
  auto be = bucket_star(eq, 3, 0.5, 1.0);
  CHECK(be.rerouted.empty());
  CHECK(be.kept == eq);
  CHECK(be.xmax == 0);  // ties to the smallest neighbour

  DynamicGraph g(4);
  g.insert_edge(3, 0, 1);
  g.insert_edge(3, 1, 1);
  g.insert_edge(3, 2, 1);
  CHECK_THROWS_AS(vertex_bucketing(g, {true, true, true, false}, 2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(vertex_bucketing(g, {true, true, false, false}, 3, 0.5), std::invalid_argument);
}

TEST_CASE("bucketed graph preserves every cut and bucket weight ranges") {
  const double eps = 0.5;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto q = quasi(8, 3, seed, 16);
    const std::size_t d = 3;
    auto bg = vertex_bucketing(q.g, q.in_vc, d, eps);
    auto r = oracle::all_cuts_ratio(q.g, bg.graph());
    CHECK(r.within(1 - eps, 1 + eps));
    std::set<VertexId> seen;
    for (const auto& [i, stars] : bg.buckets)
      for (const auto& [x, s] : stars) {
        CHECK(seen.insert(x).second);
        for (const auto& [v, w] : s.nbrs) {
          CHECK(w <= std::ldexp(1.0, i) * (1 + kRelSlack));
          CHECK(w >= std::ldexp(1.0, i - 1) * eps / d * (1 - kRelSlack));
        }
        CHECK(s.nbrs.count(bg.xmax.at(x)));
      }
    for (const auto& e : bg.core) {
      CHECK(q.in_vc[e.u]);
      CHECK(q.in_vc[e.v]);
    }
  }
}

TEST_CASE("light vertices: single star, large t, size bound, heaviness certificate") {
  std::map<StarId, Star> one{{0, Star{5, {{0, 1}, {1, 2}, {2, 1}}}}};
  auto l1 = light_vertices(6, one, 1);
  REQUIRE(l1.count(0));
  CHECK(l1.at(0) == CliqueForestEdge{0, 0, 1});

  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto q = quasi(10, 4, seed, 4);
    auto all = light_vertices(10, q.stars, q.stars.size());
    for (const auto& [id, s] : q.stars) CHECK(all.count(id) == (s.nbrs.size() >= 2 ? 1u : 0u));

    for (std::size_t t = 1; t <= 3; ++t) {
      auto light = light_vertices(10, q.stars, t);
      CHECK(light.size() <= t * q.c);
      DynamicGraph kl(10);
      double wmin = std::numeric_limits<double>::infinity();
      for (const auto& [id, fe] : light)
        for (const auto& e : build_kx(q.stars.at(id).nbrs)) {
          kl.insert_edge(e.u, e.v, e.weight);
          wmin = std::min(wmin, e.weight);
        }
      for (const auto& [id, s] : q.stars) {
        if (light.count(id)) continue;
        for (auto a = s.nbrs.begin(); a != s.nbrs.end(); ++a)
          for (auto b = std::next(a); b != s.nbrs.end(); ++b)
            CHECK(oracle::local_connectivity(kl, a->first, b->first) >= t * wmin * (1 - kRelSlack));
      }
    }
  }
}

TEST_CASE("sample_heavy keeps min-extension cuts in expectation") {
  auto q = quasi(10, 4, 3, 4, 0.0, 4);
  std::set<StarId> heavy;
  for (const auto& [id, s] : q.stars) heavy.insert(id);
  CHECK(sample_heavy(q.stars, {}, 1, 0).empty());
  auto once = sample_heavy(q.stars, heavy, 9, 0);
  for (const auto& [id, s] : once)
    for (const auto& [v, w] : s.nbrs) CHECK(w == 2 * q.stars.at(id).nbrs.at(v));

  const int trials = 4000;
  int ok = 0, cuts = 0;
  for (unsigned mask = 1; mask + 1 < (1u << q.c); ++mask) {
    std::vector<bool> in_s(10, false);
    for (VertexId v = 0; v < q.c; ++v) in_s[v] = mask >> v & 1;
    double exact = oracle::min_extension_value(q.g, q.in_vc, in_s);
    double sum = 0, sq = 0;
    for (int tr = 0; tr < trials; ++tr) {
      double x = oracle::min_extension_value(star_graph(10, sample_heavy(q.stars, heavy, tr, 0)), q.in_vc, in_s);
      sum += x, sq += x * x;
    }
    double mean = sum / trials, var = sq / trials - mean * mean;
    double se = std::sqrt(std::max(var, 0.0) / trials);
    ++cuts;
    ok += std::abs(mean - exact) <= 3 * se + 1e-12;
  }
  CHECK(ok >= cuts - 1);
}

TEST_CASE("bounded vertex sparsify: degenerate cases and level weights") {
  auto empty = bounded_vertex_sparsify(6, {}, 2, 4, 1);
  CHECK(empty.output().empty());
  CHECK(vertex_levels(10) == 7);
  CHECK(vertex_levels(8) == 6);

  auto q = quasi(10, 4, 5, 4, 0.0);
  auto all = bounded_vertex_sparsify(10, q.stars, q.stars.size(), 7, 1);
  for (const auto& [id, s] : q.stars)
    if (s.nbrs.size() >= 2) CHECK(all.levels[0].light.count(id));
  CHECK(oracle::terminal_cut_ratio(q.g, all.graph(10), q.vc).within(1, 1));

  auto some = bounded_vertex_sparsify(10, q.stars, 1, 7, 2);
  for (std::size_t i = 0; i < some.levels.size(); ++i)
    for (const auto& [id, s] : some.levels[i].stars)
      for (const auto& [v, w] : s.nbrs) CHECK(w == std::ldexp(q.stars.at(id).nbrs.at(v), static_cast<int>(i)));
}

TEST_CASE("dynamic chain matches a static rebuild on insert-only streams") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto q = quasi(8, 3, seed, 4, 0.0, 3);
    BoundedVertexChain c(8, 1, 6, seed);
    std::map<StarId, Star> live;
    StarId next = 0;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 20; ++k) {
      Star s = q.stars.at(static_cast<VertexId>(3 + rng() % 5));
      c.insert_star(next, s);
      live[next++] = s;
      for (auto x : c.last_calls()) CHECK(x <= 1);
      CHECK(c.audit());
      CHECK(c.snapshot() == bounded_vertex_sparsify(8, live, 1, 6, seed));
    }
  }
}

TEST_CASE("dynamic chain under removals equals the rebuild, one call per level") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto q = quasi(10, 4, seed, 4, 0.0, 4);
    for (std::size_t t : {1, 2, 3}) {
      BoundedVertexChain c(10, t, 7, seed);
      std::map<StarId, Star> live;
      StarId next = 0;
      std::mt19937_64 rng(seed * 7 + t);
      for (int k = 0; k < 60; ++k) {
        if (live.empty() || rng() % 3) {
          Star s = q.stars.at(static_cast<VertexId>(4 + rng() % 6));
          c.insert_star(next, s);
          live[next++] = s;
        } else {
          auto it = std::next(live.begin(), static_cast<long>(rng() % live.size()));
          c.remove_star(it->first);
          live.erase(it);
        }
        for (auto x : c.last_calls()) CHECK(x <= 1);
        REQUIRE(c.audit());
        REQUIRE(c.snapshot() == bounded_vertex_sparsify(10, live, t, 7, seed));
      }
    }
  }
}

TEST_CASE("dynamic chain edge cases") {
  // two stars over the same pair, t = 1: the second is heavy
  BoundedVertexChain c(4, 1, 3, 11);
  Star s{3, {{0, 1}, {1, 1}}};
  c.insert_star(0, s);
  c.insert_star(1, s);
  auto snap = c.snapshot();
  CHECK(snap.levels[0].light.count(0));
  CHECK(!snap.levels[0].light.count(1));
  CHECK(snap.levels[1].stars.count(1) == (coin(0.5, 11, 1, 0) ? 1u : 0u));
  // removing the light one promotes the heavy one, which leaves level 1
  c.remove_star(0);
  snap = c.snapshot();
  CHECK(snap.levels[0].light.count(1));
  CHECK(snap.levels[1].stars.empty());
  CHECK(c.last_calls()[1] <= 1);
  // removing the last light star with nothing to promote empties the forest
  c.remove_star(1);
  CHECK(c.snapshot().output().empty());
  CHECK(c.audit());
  CHECK_THROWS_AS(c.remove_star(3), std::out_of_range);
  c.insert_star(5, s);
  CHECK_THROWS_AS(c.insert_star(5, s), std::invalid_argument);
  CHECK_THROWS_AS(c.insert_star(4, s), std::invalid_argument);
}

TEST_CASE("bounded vertex sparsify keeps terminal cuts at practical t") {
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto q = quasi(10, 3, seed, 1, 0.0, 3);
    auto snap = bounded_vertex_sparsify(10, q.stars, 3, vertex_levels(10), seed);
    good += oracle::terminal_cut_ratio(q.g, snap.graph(10), q.vc).within(0.5, 1.5);
  }
  CHECK(good >= 27);
}

namespace {

struct VsFeed {
  std::size_t n;
  CutChain chain;
  BranchCover bc;
  VertexSparsifierState vs;
  std::mt19937_64 rng;
  std::vector<WeightedEdge> live;
  EdgeId next = 0;

  static CutParams cut(std::uint64_t seed, std::size_t t) {
    CutParams p;
    p.t = t;
    p.rho = 4;
    p.seed = seed;
    return p;
  }
  static VertexSparsifyParams vp(std::uint64_t seed, std::size_t t) {
    VertexSparsifyParams p;
    p.d = 2 * t;  // two cut levels, t exact forests each
    p.t = 2;
    p.core.t = 3;
    p.core.rho = 2;
    p.seed = seed;
    return p;
  }
  VsFeed(std::size_t n_, std::uint64_t seed, std::size_t t)
      : n(n_), chain(n_, cut(seed, t)), bc(n_, {0}), vs(n_, vp(seed, t)), rng(seed) {}

  void step() {
    UpdateEvent ev = UpdateEvent::erase(0);
    if (live.empty() || rng() % 10 < 6) {
      VertexId a = rng() % n, b = rng() % n;
      if (a == b) b = (a + 1) % n;
      WeightedEdge e{next++, a, b, std::ldexp(1.0, static_cast<int>(rng() % 7))};
      live.push_back(e);
      ev = UpdateEvent::insert(e);
    } else {
      std::size_t k = rng() % live.size();
      ev = UpdateEvent::erase(live[k].id);
      live[k] = live.back();
      live.pop_back();
    }
    auto d = chain.apply(ev);
    for (const auto& f : d.forests)
      if (f.removed) bc.remove(f.key, *f.removed);
    for (const auto& f : d.forests)
      if (f.added) bc.add(f.key, *f.added);
    for (VertexId x : bc.drain_touched()) vs.sync(x, bc);
  }
};

using CoreKey = std::tuple<VertexId, VertexId, VertexId, double>;
std::multiset<CoreKey> core_keys(const std::vector<CoreEdge>& es) {
  std::multiset<CoreKey> out;
  for (const auto& e : es) out.insert({std::min(e.u, e.v), std::max(e.u, e.v), e.origin, e.weight});
  return out;
}

}  // namespace

TEST_CASE("vertex sparsifier state tracks a rebuild of the bucketed graph") {
  std::size_t total_rerouted = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    VsFeed f(12, seed, 2);
    std::map<EdgeId, WeightedEdge> replay;
    std::size_t stars_seen = 0, rerouted = 0;
    for (int s = 0; s < 150; ++s) {
      f.step();
      auto g = f.bc.graph();
      auto bg = vertex_bucketing(g, f.bc.cover(), f.vs.d(), 0.25);
      for (const auto& [b, st] : bg.buckets) stars_seen += st.size();
      for (const auto& e : bg.core) rerouted += e.origin != kNoOrigin;
      REQUIRE(core_keys(f.vs.core_edges()) == core_keys(bg.core));
      REQUIRE(f.vs.buckets() == bg.buckets);
      for (const auto& [b, stars] : bg.buckets) {
        const auto* c = f.vs.bucket_chain(b);
        REQUIRE(c);
        CHECK(c->audit());
        CHECK(c->snapshot() == bounded_vertex_sparsify(12, f.vs.bucket_stars(b), c->t(), c->num_levels(), c->seed()));
      }
      auto cs = f.vs.drain();
      for (EdgeId r : cs.removed) REQUIRE(replay.erase(r) == 1);
      for (const auto& a : cs.added) REQUIRE(replay.emplace(a.id, a).second);
      REQUIRE(replay == f.vs.sparsifier_edges());
    }
    CHECK(stars_seen > 150);
    total_rerouted += rerouted;
    // remove then insert one independent star: same buckets, same x_max
    for (VertexId x = 1; x < 12; ++x) {
      if (f.bc.in_vc(x) || !f.vs.in_xg(x)) continue;
      auto before = f.vs.buckets();
      auto core = core_keys(f.vs.core_edges());
      f.vs.remove_xg(x);
      CHECK(!f.vs.in_xg(x));
      f.vs.insert_xg(x, Star{x, f.bc.star(x)});
      CHECK(f.vs.buckets() == before);
      CHECK(core_keys(f.vs.core_edges()) == core);
    }
    CHECK_THROWS_AS(f.vs.insert_xg(static_cast<VertexId>(12), Star{12, {{0, 1}}}), std::out_of_range);
  }
  CHECK(total_rerouted > 0);
  VertexSparsifierState lone(5, VsFeed::vp(1, 1));
  lone.insert_xg(4, Star{4, {}});
  CHECK(!lone.in_xg(4));
  CHECK(lone.drain().empty());
  Star wide{4, {{0, 1}, {1, 1}, {2, 1}}};
  CHECK_THROWS_AS(lone.insert_xg(4, wide), std::logic_error);
}
