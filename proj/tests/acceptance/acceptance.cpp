// One PASS/FAIL line per acceptance criterion.  Usage: acceptance [criterion ...]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynsparse/cli/generate.hpp"
#include "dynsparse/coin.hpp"
#include "dynsparse/cut_sparsifier.hpp"
#include "dynsparse/elimination.hpp"
#include "dynsparse/mincut.hpp"
#include "dynsparse/msf.hpp"
#include "dynsparse/oracle.hpp"
#include "dynsparse/spanner.hpp"
#include "dynsparse/spectral.hpp"
#include "dynsparse/vertex_sparsify.hpp"

using namespace dynsparse;

namespace {

// tolerances and pass thresholds
constexpr double kEps = 0.5;
constexpr int kSeeds = 100;
constexpr int kCutQualityMin = 95;       // criterion 3
constexpr std::size_t kCutT = 6;          // criteria 3 and 12
constexpr int kSpectralMin = 90;          // criterion 5, both parts
constexpr std::size_t kSpectralT = 5;
constexpr std::size_t kWrapperT = 3;
constexpr double kSeFactor = 3.0;         // criterion 9
constexpr int kCutsPerRunMin = 19;
constexpr int kTerminalMin = 90;          // criterion 10
constexpr std::size_t kTerminalT = 3;
constexpr int kMinCutMin = 90;            // criterion 11, per mode
constexpr std::size_t kMinCutT = 3;
constexpr int kBlendMin = 95;             // criterion 12

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char b[64];
  std::snprintf(b, sizeof b, f, x);
  return b;
}

std::vector<UpdateEvent> events_of(const cli::StreamFile& f) {
  std::vector<UpdateEvent> out;
  for (const auto& s : f.lines) {
    if (s.kind == cli::LineKind::Insert) out.push_back(UpdateEvent::insert({s.id, s.u, s.v, s.w}));
    else if (s.kind == cli::LineKind::Delete) out.push_back(UpdateEvent::erase(s.id));
  }
  return out;
}

void apply(DynamicGraph& g, const UpdateEvent& ev) {
  if (ev.is_insert()) g.insert_edge(ev.edge);
  else g.delete_edge(ev.edge.id);
}

std::vector<WeightedEdge> gnp_edges(std::size_t n, double p, std::uint64_t seed, int wmax) {
  std::mt19937_64 rng(seed);
  std::vector<WeightedEdge> out;
  EdgeId id = 0;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p)
        out.push_back({id++, a, b, static_cast<double>(1 + rng() % static_cast<unsigned>(wmax))});
  return out;
}

template <class Map>
DynamicGraph map_graph(std::size_t n, const Map& m) {
  DynamicGraph g(n);
  for (const auto& [id, e] : m) g.insert_edge(e);
  return g;
}

// ---------------------------------------------------------------- 1
Verdict msf_equivalence() {
  std::size_t good = 0, updates = 0, deletes = 0, bad_replacement = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    cli::GenerateParams gp;
    gp.kind = "gnp";
    gp.n = 64;
    gp.p = 0.1;
    gp.events = 10000;
    gp.insert_prob = 0.5;
    gp.wmax = 1000;
    gp.seed = static_cast<std::uint64_t>(seed);
    auto evs = events_of(cli::generate(gp));
    MsfInstance msf(64);
    DynamicGraph g(64);
    bool ok = true;
    for (const auto& ev : evs) {
      apply(g, ev);
      if (ev.is_insert()) {
        msf.insert(ev.edge);
      } else {
        const bool tree = msf.is_tree_edge(ev.edge.id);
        auto before = msf.forest_size();
        auto d = msf.erase(ev.edge.id);
        ++deletes;
        // a replacement at most, and only after a tree edge left
        bool shape = tree ? (d.removed == ev.edge.id && msf.forest_size() + 1 - (d.added ? 1 : 0) == before)
                          : (!d.added && !d.removed && msf.forest_size() == before);
        if (!shape) ++bad_replacement, ok = false;
      }
      auto k = oracle::kruskal_msf(g);
      ok = ok && msf.forest_weight() == k.weight && msf.forest_size() == k.edges.size();
      ++updates;
    }
    good += ok;
  }
  return {good == kSeeds,
          std::to_string(good) + "/" + std::to_string(kSeeds) + " seeds exact, " + std::to_string(updates) +
              " updates, " + std::to_string(deletes) + " deletes, " + std::to_string(bad_replacement) +
              " bad deltas"};
}

// ---------------------------------------------------------------- 2
Verdict chain_recourse() {
  std::size_t events = 0, violations = 0, levels = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    cli::GenerateParams gp;
    gp.kind = "gnp";
    gp.n = 16;
    gp.p = 0.3;
    gp.events = 500;
    gp.wmax = 4;
    gp.seed = static_cast<std::uint64_t>(seed);
    CutParams p;
    p.rho = 16;
    p.t = 2;
    p.seed = static_cast<std::uint64_t>(seed);
    CutChain c(16, p);
    levels = c.num_levels();
    std::vector<std::map<EdgeId, WeightedEdge>> before(c.num_levels());
    for (std::size_t i = 0; i < c.num_levels(); ++i) before[i] = c.level(i).sampled();
    for (const auto& ev : events_of(cli::generate(gp))) {
      auto d = c.apply(ev);
      bool ok = d.residual_changes <= 1;
      for (std::size_t x : d.level_inputs) ok = ok && x <= 1;
      // measured: the sampled residual of level i is G_{i+1}
      for (std::size_t i = 0; i < c.num_levels(); ++i) {
        auto cs = diff_edge_maps(before[i], c.level(i).sampled());
        std::set<EdgeId> ids(cs.removed.begin(), cs.removed.end());
        for (const auto& e : cs.added) ids.insert(e.id);
        ok = ok && ids.size() <= 1;
        before[i] = c.level(i).sampled();
      }
      violations += !ok;
      ++events;
    }
  }
  return {violations == 0, std::to_string(events) + " events over " + std::to_string(levels) + " levels, " +
                               std::to_string(violations) + " with more than one change at a level"};
}

// ---------------------------------------------------------------- 3
Verdict cut_quality() {
  int good = 0;
  double worst_lo = 1, worst_hi = 1, sampled_frac = 0;
  std::size_t frac_n = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    cli::GenerateParams gp;
    gp.kind = "gnp";
    gp.n = 10;
    gp.p = 0.6;
    gp.events = 200;
    gp.seed = static_cast<std::uint64_t>(seed);
    CutParams p;
    p.epsilon = kEps;
    p.rho = 4;
    p.t = kCutT;
    p.seed = static_cast<std::uint64_t>(seed);
    CutChain c(10, p);
    DynamicGraph g(10);
    bool ok = true;
    for (const auto& ev : events_of(cli::generate(gp))) {
      c.apply(ev);
      apply(g, ev);
      auto r = oracle::all_cuts_ratio(g, c.sparsifier());
      worst_lo = std::min(worst_lo, r.min);
      worst_hi = std::max(worst_hi, r.max);
      ok = ok && r.within(1 - kEps, 1 + kEps);
      if (g.num_edges()) {
        sampled_frac += static_cast<double>(c.sparsifier_edges().size()) / static_cast<double>(g.num_edges());
        ++frac_n;
      }
    }
    good += ok;
  }
  return {good >= kCutQualityMin, std::to_string(good) + "/100 seeds within 1+-0.5 at t=" + std::to_string(kCutT) +
                                      " (need " + std::to_string(kCutQualityMin) + "), ratio range [" +
                                      fmt("%.3f", worst_lo) + ", " + fmt("%.3f", worst_hi) + "], |H|/|G| " +
                                      fmt("%.1f", 100 * sampled_frac / static_cast<double>(std::max<std::size_t>(1, frac_n))) +
                                      "% on average"};
}

// ---------------------------------------------------------------- 4
Verdict degenerate_exact() {
  std::size_t runs = 0, good = 0;
  for (BundleMode mode : {BundleMode::Exact, BundleMode::Bucketed}) {
    for (int seed = 1; seed <= kSeeds; ++seed) {
      cli::GenerateParams gp;
      gp.kind = "gnp";
      gp.n = 12;
      gp.p = 0.5;
      gp.events = 300;
      gp.wmax = 8;
      gp.seed = static_cast<std::uint64_t>(seed);
      auto evs = events_of(cli::generate(gp));
      CutParams p;
      p.rho = 4;
      p.t = 12 * 11 / 2;  // every simple graph on 12 vertices
      p.mode = mode;
      p.seed = static_cast<std::uint64_t>(seed);
      CutChain c(12, p);
      DynamicGraph g(12);
      bool ok = true;
      for (const auto& ev : evs) {
        c.apply(ev);
        apply(g, ev);
        ok = ok && c.sparsifier_edges() == g.edges();
      }
      good += ok;
      ++runs;
    }
  }
  return {good == runs, std::to_string(good) + "/" + std::to_string(runs) + " streams with H = G after every event (exact and bucketed bundles)"};
}

// ---------------------------------------------------------------- 5
Verdict spectral_quality() {
  int good = 0;
  double lo = 1, hi = 1;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const std::size_t n = 20;
    auto es = gnp_edges(n, 0.8, 1000 + static_cast<std::uint64_t>(seed), 1);
    SpectralParams p;
    p.epsilon = kEps;
    p.rho = 4;
    p.t = kSpectralT;
    p.seed = static_cast<std::uint64_t>(seed);
    SpectralChain c(n, p, es);
    auto order = es;
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    std::shuffle(order.begin(), order.end(), rng);
    bool ok = true;
    for (std::size_t s = 0; s < 100 && s < order.size(); ++s) {
      c.erase(order[s].id);
      auto r = oracle::quad_form_extremes(map_graph(n, c.input()), c.sparsifier());
      lo = std::min(lo, r.min);
      hi = std::max(hi, r.max);
      ok = ok && r.within(1 - kEps, 1 + kEps);
    }
    good += ok;
  }
  int wgood = 0, inv_bad = 0;
  std::size_t restarts = 0;
  double wlo = 1, whi = 1;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const std::size_t n = 12;
    cli::GenerateParams gp;
    gp.kind = "gnp";
    gp.n = n;
    gp.p = 0;
    gp.events = 500;
    gp.wmax = 3;
    gp.seed = static_cast<std::uint64_t>(seed);
    SpectralParams p;
    p.epsilon = kEps;
    p.t = kWrapperT;
    p.seed = static_cast<std::uint64_t>(seed);
    FullyDynamicWrapper w(n, p);
    DynamicGraph g(n);
    bool ok = true, inv = true;
    for (const auto& ev : events_of(cli::generate(gp))) {
      w.apply(ev);
      apply(g, ev);
      for (std::size_t i = 1; i <= w.num_sets(); ++i) inv = inv && w.set(i).size() <= (std::size_t{1} << i);
      auto r = oracle::quad_form_extremes(g, w.sparsifier());
      wlo = std::min(wlo, r.min);
      whi = std::max(whi, r.max);
      ok = ok && r.within(1 - kEps, 1 + kEps);
    }
    restarts += w.restarts();
    wgood += ok;
    inv_bad += !inv;
  }
  return {good >= kSpectralMin && wgood >= kSpectralMin && inv_bad == 0,
          "decremental " + std::to_string(good) + "/100 (t=" + std::to_string(kSpectralT) + ", range [" + fmt("%.3f", lo) +
              ", " + fmt("%.3f", hi) + "]); wrapper " + std::to_string(wgood) + "/100 (t=" + std::to_string(kWrapperT) +
              ", range [" + fmt("%.3f", wlo) + ", " + fmt("%.3f", whi) + "], " + std::to_string(restarts) +
              " rebuilds); counter invariant broken in " + std::to_string(inv_bad) + " runs"};
}

// ---------------------------------------------------------------- 6
Verdict spanner_contract() {
  std::size_t runs = 0, good = 0, steps = 0;
  double worst = 0;
  for (std::size_t k : {2, 3}) {
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const std::size_t n = 16;
      auto es = gnp_edges(n, 0.5, 500 + static_cast<std::uint64_t>(seed), 8);
      WeightClassSpanner sp(n, k, kEps, static_cast<std::uint64_t>(seed), es);
      const double bound = (1 + kEps) * (2.0 * static_cast<double>(k) - 1);
      auto order = es;
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 31 + k);
      std::shuffle(order.begin(), order.end(), rng);
      bool ok = true;
      for (const auto& e : order) {
        sp.erase(e.id);
        auto g = map_graph(n, sp.edges());
        auto h = sp.spanner();
        if (g.num_edges()) worst = std::max(worst, oracle::max_stretch(g, h) / bound);
        ok = ok && oracle::stretch_check(g, h, bound);
        for (const auto& [id, f] : sp.spanner_edges()) ok = ok && sp.contains(id);
        ++steps;
      }
      ok = ok && sp.monotonicity_audit() && sp.spanner_edges().empty();
      good += ok;
      ++runs;
    }
  }
  return {good == runs, std::to_string(good) + "/" + std::to_string(runs) + " full deletions (k=2,3) within (1+eps)(2k-1) and monotone, " +
                            std::to_string(steps) + " deletes, worst stretch/bound " + fmt("%.3f", worst)};
}

// ---------------------------------------------------------------- 7
Verdict elimination_bound() {
  std::mt19937_64 rng(7);
  std::size_t good = 0, subsets = 0;
  double lo = 1, hi = 1;
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 2 + rng() % 7;
    std::size_t c = 1 + rng() % (n - 1);
    DynamicGraph g(n);
    std::vector<bool> in_vc(n, false);
    for (std::size_t v = 0; v < c; ++v) in_vc[v] = true;
    for (VertexId a = 0; a < c; ++a)
      for (VertexId b = a + 1; b < c; ++b)
        if (rng() % 2) g.insert_edge(a, b, static_cast<double>(1 + rng() % 5));
    for (VertexId x = static_cast<VertexId>(c); x < n; ++x)
      for (VertexId v = 0; v < c; ++v)
        if (rng() % 2) g.insert_edge(x, v, static_cast<double>(1 + rng() % 5));
    auto r = schur_bound_check(g, in_vc);
    good += r.ok();
    subsets += r.subsets;
    lo = std::min(lo, r.min_ratio);
    hi = std::max(hi, r.max_ratio);
  }
  return {good == 200, std::to_string(good) + "/200 quasi-bipartite graphs, " + std::to_string(subsets) +
                           " subsets, Delta_GVC/Delta_G in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) + "]"};
}

// ---------------------------------------------------------------- 8
std::size_t brute_mvc(const DynamicGraph& g) {
  const std::size_t n = g.num_vertices();
  std::size_t best = n;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool cover = true;
    for (const auto& [id, e] : g.edges()) cover = cover && (((m >> e.u) & 1) || ((m >> e.v) & 1));
    if (cover) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(m)));
  }
  return best;
}

Verdict vertex_cover_bound() {
  std::mt19937_64 rng(8);
  std::size_t vc_ok = 0, tree_ok = 0;
  std::size_t worst_gap = 0;
  for (int k = 0; k < 300; ++k) {
    std::size_t a = 1 + rng() % 5, b = 1 + rng() % 5;
    std::vector<std::pair<VertexId, VertexId>> es;
    for (VertexId u = 0; u < a; ++u)
      for (VertexId v = 0; v < b; ++v)
        if (rng() % 2) es.push_back({u, static_cast<VertexId>(a + v)});
    auto r = vc_opt_bound_check(a, b, es);
    // same instance, brute-force cover
    DynamicGraph g(a + b + 2);
    for (VertexId i = 0; i < a; ++i) g.insert_edge(static_cast<VertexId>(a + b), i, 1);
    for (VertexId j = 0; j < b; ++j) g.insert_edge(static_cast<VertexId>(a + j), static_cast<VertexId>(a + b + 1), 1);
    for (auto [u, v] : es) g.insert_edge(u, v, 1);
    std::size_t mvc = brute_mvc(g);
    double opt = oracle::exact_min_st_cut(g, static_cast<VertexId>(a + b), static_cast<VertexId>(a + b + 1)).value;
    bool ok = r.ok() && r.mvc == mvc && r.opt == opt && static_cast<double>(mvc) <= opt + 2;
    if (mvc > opt) worst_gap = std::max(worst_gap, mvc - static_cast<std::size_t>(opt));
    vc_ok += ok;
  }
  for (int k = 0; k < 300; ++k) {
    // random forest: each vertex attaches to an earlier one or starts a tree
    std::size_t n = 1 + rng() % 12;
    DynamicGraph f(n);
    for (VertexId v = 1; v < n; ++v)
      if (rng() % 4) f.insert_edge(static_cast<VertexId>(rng() % v), v, 1);
    auto cover = tree_two_approx_cover(f);
    std::set<VertexId> c(cover.begin(), cover.end());
    bool ok = true;
    for (const auto& [id, e] : f.edges()) ok = ok && (c.count(e.u) || c.count(e.v));
    std::size_t opt = brute_mvc(f);
    ok = ok && oracle::tree_mvc_size(f) == opt && c.size() <= 2 * opt;
    tree_ok += ok;
  }
  return {vc_ok == 300 && tree_ok == 300, std::to_string(vc_ok) + "/300 bipartite instances with MVC <= OPT+2 (largest MVC-OPT " +
                                              std::to_string(worst_gap) + "), " + std::to_string(tree_ok) +
                                              "/300 forests with a valid cover of size <= 2 MVC"};
}

// ---------------------------------------------------------------- 9
Verdict sampling_expectation() {
  const std::size_t n = 10, c = 5;
  const int trials = 10000, runs = 5;
  int runs_ok = 0;
  std::string per_run;
  for (int run = 1; run <= runs; ++run) {
    std::mt19937_64 rng(900 + static_cast<std::uint64_t>(run));
    std::map<StarId, Star> stars;
    for (VertexId x = c; x < n; ++x) {
      Star s{x, {}};
      std::vector<VertexId> vc(c);
      std::iota(vc.begin(), vc.end(), 0);
      std::shuffle(vc.begin(), vc.end(), rng);
      std::size_t deg = 2 + rng() % 3;
      for (std::size_t i = 0; i < deg; ++i) s.nbrs[vc[i]] = static_cast<double>(1 + rng() % 4);
      stars[x] = s;
    }
    std::set<StarId> heavy;
    for (const auto& [id, s] : stars) heavy.insert(id);
    std::vector<bool> in_vc(n, false);
    for (std::size_t v = 0; v < c; ++v) in_vc[v] = true;
    std::vector<std::vector<bool>> cuts;
    for (std::uint32_t m = 1; cuts.size() < 20; ++m) {
      std::vector<bool> s(n, false);
      for (std::size_t v = 0; v < c; ++v) s[v] = (m >> v) & 1;
      cuts.push_back(s);
    }
    auto graph = [&](const std::map<StarId, Star>& st) {
      DynamicGraph g(n);
      for (const auto& [id, s] : st)
        for (const auto& [v, w] : s.nbrs) g.insert_edge(s.x, v, w);
      return g;
    };
    auto g = graph(stars);
    std::vector<double> exact(cuts.size()), sum(cuts.size(), 0), sq(cuts.size(), 0);
    for (std::size_t i = 0; i < cuts.size(); ++i) exact[i] = oracle::min_extension_value(g, in_vc, cuts[i]);
    for (int tr = 0; tr < trials; ++tr) {
      auto sg = graph(sample_heavy(stars, heavy, mix_key(static_cast<std::uint64_t>(run), static_cast<std::uint64_t>(tr)), 0));
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        double d = oracle::min_extension_value(sg, in_vc, cuts[i]);
        sum[i] += d;
        sq[i] += d * d;
      }
    }
    int ok = 0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      double mean = sum[i] / trials;
      double var = std::max(0.0, sq[i] / trials - mean * mean) * trials / (trials - 1);
      double se = std::sqrt(var / trials);
      ok += std::abs(mean - exact[i]) <= kSeFactor * se + 1e-12;
    }
    runs_ok += ok >= kCutsPerRunMin;
    per_run += (per_run.empty() ? "" : ",") + std::to_string(ok);
  }
  return {runs_ok == runs, std::to_string(runs_ok) + "/" + std::to_string(runs) + " runs with >= 19/20 cuts within 3 SE over 10^4 trials (per run: " +
                               per_run + ")"};
}

// ---------------------------------------------------------------- 10
struct Quasi {
  DynamicGraph g;
  std::vector<VertexId> vc;
  std::map<StarId, Star> stars;
};

Quasi quasi(std::size_t n, std::size_t c, std::uint64_t seed, int wmax, std::size_t max_deg) {
  std::mt19937_64 rng(seed);
  Quasi q{DynamicGraph(n), {}, {}};
  for (VertexId v = 0; v < c; ++v) q.vc.push_back(v);
  for (VertexId x = static_cast<VertexId>(c); x < n; ++x) {
    std::size_t k = 1 + rng() % std::min(max_deg, c);
    std::vector<VertexId> pick(q.vc);
    std::shuffle(pick.begin(), pick.end(), rng);
    Star s{x, {}};
    for (std::size_t i = 0; i < k; ++i) {
      double w = static_cast<double>(1 + rng() % static_cast<unsigned>(wmax));
      q.g.insert_edge(x, pick[i], w);
      s.nbrs[pick[i]] = w;
    }
    q.stars[x] = s;
  }
  return q;
}

Verdict terminal_sparsifier() {
  const std::size_t n = 10;
  int good = 0;
  double lo = 1, hi = 1;
  std::size_t dropped = 0, total = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    auto q = quasi(n, 3, static_cast<std::uint64_t>(seed), 1, 3);
    auto snap = bounded_vertex_sparsify(n, q.stars, kTerminalT, vertex_levels(n), static_cast<std::uint64_t>(seed));
    auto r = oracle::terminal_cut_ratio(q.g, snap.graph(n), q.vc);
    lo = std::min(lo, r.min);
    hi = std::max(hi, r.max);
    good += r.within(1 - kEps, 1 + kEps);
    dropped += q.stars.size() - snap.output().size();
    total += q.stars.size();
  }
  std::size_t streams = 0, agree = 0, steps = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    auto q = quasi(n, 4, 5000 + static_cast<std::uint64_t>(seed), 4, 4);
    for (std::size_t t : {1, 2, 3}) {
      BoundedVertexChain c(n, t, 7, static_cast<std::uint64_t>(seed));
      std::map<StarId, Star> live;
      StarId next = 0;
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 7 + t);
      bool ok = true;
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
        for (auto x : c.last_calls()) ok = ok && x <= 1;
        ok = ok && c.audit() && c.snapshot() == bounded_vertex_sparsify(n, live, t, 7, static_cast<std::uint64_t>(seed));
        ++steps;
      }
      agree += ok;
      ++streams;
    }
  }
  return {good >= kTerminalMin && agree == streams,
          std::to_string(good) + "/100 seeds within 1+-0.5 at t=" + std::to_string(kTerminalT) + " (range [" + fmt("%.3f", lo) +
              ", " + fmt("%.3f", hi) + "], " + fmt("%.1f", 100.0 * static_cast<double>(dropped) / static_cast<double>(total)) +
              "% of stars dropped); dynamic = static in " + std::to_string(agree) + "/" + std::to_string(streams) +
              " streams (" + std::to_string(steps) + " steps)"};
}

// ---------------------------------------------------------------- 11
Verdict end_to_end_mincut() {
  std::string detail;
  bool pass = true;
  for (MinCutMode mode : {MinCutMode::TwoEps, MinCutMode::OneEps}) {
    const bool two = mode == MinCutMode::TwoEps;
    const double lo = two ? 1.0 : 1 - kEps, hi = two ? 2 + kEps : 1 + kEps;
    int good = 0;
    std::size_t budget_bad = 0, windows = 0;
    double worst_lo = INFINITY, worst_hi = 0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      cli::GenerateParams gp;
      gp.kind = "bipartite-churn";
      gp.a = gp.b = 20;
      gp.events = 500;
      gp.seed = static_cast<std::uint64_t>(seed);
      MinCutParams p;
      p.mode = mode;
      p.epsilon = kEps;
      p.t = kMinCutT;
      p.seed = static_cast<std::uint64_t>(seed);
      BipartiteMinCut mc(20, 20, p);
      bool ok = true;
      for (const auto& ev : events_of(cli::generate(gp))) {
        mc.apply(ev);
        double opt = oracle::exact_min_st_cut(mc.graph(), mc.s(), mc.t()).value;
        double r = oracle::cut_ratio(mc.value(), opt);
        if (opt > 0) worst_lo = std::min(worst_lo, r), worst_hi = std::max(worst_hi, r);
        ok = ok && r >= lo * (1 - kRelSlack) && r <= hi * (1 + kRelSlack);
        auto expect = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(kEps / 2 * mc.estimate() + 1e-9)));
        budget_bad += !(mc.budget() == expect && mc.steps_since_recompute() < mc.budget());
      }
      for (const auto& w : mc.windows()) budget_bad += w.steps != w.budget;
      windows += mc.windows().size();
      good += ok;
    }
    pass = pass && good >= kMinCutMin && budget_bad == 0;
    detail += std::string(detail.empty() ? "" : "; ") + (two ? "mincut2 " : "mincut1 ") + std::to_string(good) +
              "/100 (ratio [" + fmt("%.3f", worst_lo) + ", " + fmt("%.3f", worst_hi) + "], " + std::to_string(windows) +
              " budget windows, " + std::to_string(budget_bad) + " budget violations)";
  }
  return {pass, detail + ", t=" + std::to_string(kMinCutT)};
}

// ---------------------------------------------------------------- 12
Verdict blend_wrapper() {
  int good = 0, part_bad = 0;
  std::size_t phases = 0, straddle = 0;
  double lo = 1, hi = 1;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    cli::GenerateParams gp;
    gp.kind = "phase-stress";
    gp.n = 8;
    gp.phases = 2;
    gp.seed = static_cast<std::uint64_t>(seed);
    CutParams p;
    p.epsilon = kEps;
    p.rho = 4;
    p.t = kCutT;
    p.seed = static_cast<std::uint64_t>(seed);
    BlendWrapper w(8, p);
    DynamicGraph g(8);
    bool ok = true, part = true;
    std::size_t last_phase = w.phase();
    for (const auto& ev : events_of(cli::generate(gp))) {
      w.apply(ev);
      apply(g, ev);
      const auto& s0 = w.side_edges(0);
      const auto& s1 = w.side_edges(1);
      std::map<EdgeId, WeightedEdge> uni = s0;
      for (const auto& [id, e] : s1) part = part && uni.emplace(id, e).second;
      part = part && uni == g.edges();
      auto r = oracle::all_cuts_ratio(g, w.sparsifier());
      lo = std::min(lo, r.min);
      hi = std::max(hi, r.max);
      ok = ok && r.within(1 - kEps, 1 + kEps);
      if (w.phase() != last_phase) ++straddle, last_phase = w.phase();
    }
    phases += w.phase();
    good += ok;
    part_bad += !part;
  }
  return {good >= kBlendMin && part_bad == 0,
          std::to_string(good) + "/100 seeds within 1+-0.5 at t=" + std::to_string(kCutT) + " (range [" + fmt("%.3f", lo) +
              ", " + fmt("%.3f", hi) + "]), partition broken in " + std::to_string(part_bad) + " runs, " +
              std::to_string(straddle) + " restarts crossed (" + fmt("%.1f", static_cast<double>(phases) / kSeeds) +
              " per stream)"};
}

// ---------------------------------------------------------------- 13
Verdict arboricity() {
  std::size_t events = 0, bad = 0, max_forests = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const std::size_t n = 12;
    cli::GenerateParams gp;
    gp.kind = "gnp";
    gp.n = n;
    gp.p = 0;
    gp.events = 300;
    gp.wmax = 4;
    gp.seed = static_cast<std::uint64_t>(seed);
    CutParams p;
    p.rho = static_cast<double>(n * (n - 1) / 2);  // the largest m of the stream
    p.t = 2;
    p.seed = static_cast<std::uint64_t>(seed);
    CutChain c(n, p);
    auto before = c.forests();
    for (const auto& ev : events_of(cli::generate(gp))) {
      auto d = c.apply(ev);
      auto now = c.forests();
      bool ok = true;
      std::set<EdgeId> seen;
      std::map<EdgeId, WeightedEdge> uni;
      for (const auto& [key, es] : now) {
        std::vector<std::size_t> par(n);
        std::iota(par.begin(), par.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return par[x] == x ? x : par[x] = find(par[x]); };
        for (const auto& e : es) {
          ok = ok && seen.insert(e.id).second;
          auto a = find(e.u), b = find(e.v);
          ok = ok && a != b;
          par[a] = b;
          uni[e.id] = e;
        }
      }
      ok = ok && uni == c.sparsifier_edges();
      // measured per forest: at most one edge in and one out
      std::set<ForestKey> keys;
      for (const auto& [k, es] : before) keys.insert(k);
      for (const auto& [k, es] : now) keys.insert(k);
      for (const auto& k : keys) {
        std::set<EdgeId> a, b;
        if (auto it = before.find(k); it != before.end())
          for (const auto& e : it->second) a.insert(e.id);
        if (auto it = now.find(k); it != now.end())
          for (const auto& e : it->second) b.insert(e.id);
        std::size_t in = 0, out = 0;
        for (EdgeId x : b) in += !a.count(x);
        for (EdgeId x : a) out += !b.count(x);
        ok = ok && in <= 1 && out <= 1;
      }
      std::map<ForestKey, std::pair<int, int>> reported;
      for (const auto& f : d.forests) {
        reported[f.key].first += f.added.has_value();
        reported[f.key].second += f.removed.has_value();
      }
      for (const auto& [k, ar] : reported) ok = ok && ar.first <= 1 && ar.second <= 1;
      max_forests = std::max(max_forests, now.size());
      bad += !ok;
      ++events;
      before = std::move(now);
    }
  }
  return {bad == 0, std::to_string(events) + " events, " + std::to_string(bad) +
                        " with a cyclic, overlapping or mismatched forest list or more than one add/remove per forest (up to " +
                        std::to_string(max_forests) + " forests)"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "dynamic MSF equals Kruskal", msf_equivalence},
      {2, "chain recourse per level", chain_recourse},
      {3, "cut sparsifier quality", cut_quality},
      {4, "degenerate exactness", degenerate_exact},
      {5, "spectral sparsifier quality", spectral_quality},
      {6, "spanner contract", spanner_contract},
      {7, "elimination two-sided bound", elimination_bound},
      {8, "vertex cover bounds", vertex_cover_bound},
      {9, "vertex sampling expectation", sampling_expectation},
      {10, "terminal-cut sparsifier", terminal_sparsifier},
      {11, "end-to-end min s-t cut", end_to_end_mincut},
      {12, "phase wrapper", blend_wrapper},
      {13, "arboricity decomposition", arboricity},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::stoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Verdict v = c.fn();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", c.id, v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str(), s);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
