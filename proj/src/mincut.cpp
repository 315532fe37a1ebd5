#include "dynsparse/mincut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dynsparse/coin.hpp"
#include "dynsparse/oracle.hpp"

namespace dynsparse {

namespace {

struct Dinic {
  struct Arc {
    std::size_t to;
    double cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> out;
  std::vector<int> level;
  std::vector<std::size_t> it;

  explicit Dinic(std::size_t n) : out(n), level(n), it(n) {}

  void add(std::size_t u, std::size_t v, double c) {
    out[u].push_back(arcs.size());
    arcs.push_back({v, c});
    out[v].push_back(arcs.size());
    arcs.push_back({u, c});
  }
  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level.begin(), level.end(), -1);
    std::vector<std::size_t> q{s};
    level[s] = 0;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (std::size_t a : out[q[h]])
        if (arcs[a].cap > kEps && level[arcs[a].to] < 0) {
          level[arcs[a].to] = level[q[h]] + 1;
          q.push_back(arcs[a].to);
        }
    return level[t] >= 0;
  }
  double dfs(std::size_t u, std::size_t t, double f) {
    if (u == t) return f;
    for (; it[u] < out[u].size(); ++it[u]) {
      std::size_t a = out[u][it[u]];
      Arc& e = arcs[a];
      if (e.cap <= kEps || level[e.to] != level[u] + 1) continue;
      double got = dfs(e.to, t, std::min(f, e.cap));
      if (got > kEps) {
        e.cap -= got;
        arcs[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }
  static constexpr double kEps = 1e-12;
};

}  // namespace

FlowResult max_flow(const DynamicGraph& g, VertexId s, VertexId t) {
  if (s == t) throw std::invalid_argument("max_flow: s equals t");
  const std::size_t n = g.num_vertices();
  Dinic d(n);
  for (const auto& [id, e] : g.edges())
    if (e.u != e.v) d.add(e.u, e.v, e.weight);
  FlowResult r;
  while (d.bfs(s, t)) {
    std::fill(d.it.begin(), d.it.end(), 0);
    while (double f = d.dfs(s, t, std::numeric_limits<double>::infinity())) r.value += f;
  }
  r.source_side.assign(n, false);
  for (VertexId v = 0; v < n; ++v) r.source_side[v] = d.level[v] >= 0;
  return r;
}

BipartiteMinCut::BipartiteMinCut(std::size_t a, std::size_t b, const MinCutParams& p)
    : a_(a), b_(b), p_(p), g_(a + b + 2), bc_(a + b + 2, {static_cast<VertexId>(a + b), static_cast<VertexId>(a + b + 1)}) {
  if (a == 0 || b == 0) throw std::invalid_argument("mincut: both sides must be non-empty");
  if (!(p.epsilon > 0 && p.epsilon < 1)) throw std::invalid_argument("mincut: epsilon must be in (0,1)");
  const std::size_t n = num_vertices();
  // the error budget is split evenly between the two sparsification layers
  CutParams cp;
  cp.epsilon = p.epsilon / 4;
  cp.rho = p.rho;
  cp.c = p.c;
  cp.t = p.t;
  cp.mode = BundleMode::Exact;
  cp.seed = mix_key(p.seed, 1);
  gt_ = std::make_unique<CutChain>(n, cp);
  if (p.mode == MinCutMode::TwoEps) {
    CutParams hp = cp;
    hp.seed = mix_key(p.seed, 2);
    h2_ = std::make_unique<CutChain>(n, hp);
  } else {
    VertexSparsifyParams vp;
    vp.epsilon = p.epsilon / 2;
    // an independent vertex is a leaf in every forest it touches
    vp.d = std::max<std::size_t>(1, gt_->num_levels() * gt_->bundle_t());
    if (p.vertex_t) vp.t = *p.vertex_t;
    else if (p.t) vp.t = *p.t;
    else {
      // d^2 log^3 n / eps^3
      double l = std::log2(static_cast<double>(n));
      vp.t = static_cast<std::size_t>(std::ceil(static_cast<double>(vp.d * vp.d) * l * l * l / std::pow(vp.epsilon, 3)));
    }
    vp.core = cp;
    vp.seed = mix_key(p.seed, 3);
    vs_ = std::make_unique<VertexSparsifierState>(n, vp);
  }
  for (VertexId i = 0; i < a; ++i) feed(UpdateEvent::insert({i, s(), i, 1.0}));
  for (VertexId j = 0; j < b; ++j)
    feed(UpdateEvent::insert({a + j, static_cast<VertexId>(a + j), t(), 1.0}));
  recompute();
}

void BipartiteMinCut::feed(const UpdateEvent& ev) {
  if (ev.is_insert()) g_.insert_edge(ev.edge);
  else g_.delete_edge(ev.edge.id);
  auto d = gt_->apply(ev);
  for (const auto& f : d.forests)
    if (f.removed) bc_.remove(f.key, *f.removed);
  for (const auto& f : d.forests)
    if (f.added) bc_.add(f.key, *f.added);
  auto touched = bc_.drain_touched();
  if (h2_) {
    auto cs = bc_.eliminated().drain();
    for (EdgeId id : cs.removed) h2_->apply(UpdateEvent::erase(id));
    for (const auto& e : cs.added) h2_->apply(UpdateEvent::insert(e));
  } else {
    for (VertexId x : touched) vs_->sync(x, bc_);
  }
}

void BipartiteMinCut::apply(const UpdateEvent& ev) {
  UpdateEvent in = ev;
  in.edge.id = mincut_edge_id(a_, b_, ev.edge.id);
  if (ev.is_insert()) {
    VertexId u = ev.edge.u, v = ev.edge.v;
    bool ab = (u < a_ && v >= a_ && v < a_ + b_) || (v < a_ && u >= a_ && u < a_ + b_);
    if (!ab) throw std::invalid_argument("mincut: edge must join A and B");
    if (ev.edge.weight != 1.0) throw std::invalid_argument("mincut: edges have unit weight");
    if (g_.has_edge(in.edge.id)) throw std::invalid_argument("mincut: duplicate edge id");
  } else if (!g_.has_edge(in.edge.id)) {
    throw std::out_of_range("mincut: unknown edge id");
  }
  feed(in);
  ++since_;
  if (zero_) {
    // no s-t flow: the budget clock is suspended and every event re-checks
    recompute();
  } else if (since_ >= budget_) {
    windows_.push_back({since_, budget_});
    recompute();
  }
}

void BipartiteMinCut::recompute() {
  auto f = max_flow(h_graph(), s(), t());
  s_hat_.assign(num_vertices(), false);
  vc_then_ = bc_.cover();
  for (VertexId v = 0; v < num_vertices(); ++v) s_hat_[v] = f.source_side[v] && bc_.in_vc(v);
  delta_h_ = f.value;
  zero_ = !(delta_h_ > 1e-12);
  budget_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(p_.epsilon / 2 * delta_h_ + 1e-9)));
  since_ = 0;
  ++recomputes_;
}

bool BipartiteMinCut::side(VertexId v) const {
  if (v >= num_vertices()) throw std::out_of_range("mincut: vertex out of range");
  if (v == s()) return true;
  if (v == t()) return false;
  if (bc_.in_vc(v) && vc_then_[v]) return s_hat_[v];
  // an independent vertex (or one that joined the cover since the last
  // recompute) goes to the heavier side in G~
  double ws = 0, wt = 0;
  for (EdgeId id : bc_.incident(v)) {
    const WeightedEdge& e = bc_.edges().at(id);
    (s_hat_[e.other(v)] ? ws : wt) += e.weight;
  }
  return ws >= wt;
}

std::vector<bool> BipartiteMinCut::cut() const {
  std::vector<bool> c(num_vertices());
  for (VertexId v = 0; v < num_vertices(); ++v) c[v] = side(v);
  return c;
}

double BipartiteMinCut::value() const {
  if (zero_) return 0;
  return g_.cut_weight(cut());
}

DynamicGraph BipartiteMinCut::sparsifier() const { return gt_->sparsifier(); }

DynamicGraph BipartiteMinCut::h_graph() const { return h2_ ? h2_->sparsifier() : vs_->sparsifier(); }

VcOptReport vc_opt_bound_check(std::size_t a, std::size_t b, const std::vector<std::pair<VertexId, VertexId>>& ab) {
  const std::size_t n = a + b + 2;
  const VertexId s = static_cast<VertexId>(a + b), t = s + 1;
  DynamicGraph g(n);
  for (VertexId i = 0; i < a; ++i) g.insert_edge(s, i, 1);
  for (VertexId j = 0; j < b; ++j) g.insert_edge(static_cast<VertexId>(a + j), t, 1);
  for (auto [u, v] : ab) {
    bool ok = (u < a && v >= a && v < a + b) || (v < a && u >= a && u < a + b);
    if (!ok) throw std::invalid_argument("vc_opt_bound_check: edge must join A and B");
    g.insert_edge(u, v, 1);
  }
  // bipartition {A, t} | {B, s}
  std::vector<int> side(n, 0);
  for (VertexId v = static_cast<VertexId>(a); v < a + b; ++v) side[v] = 1;
  side[s] = 1;
  VcOptReport r;
  r.mvc = oracle::bipartite_max_matching(g, side);
  r.opt = max_flow(g, s, t).value;
  return r;
}

}  // namespace dynsparse
