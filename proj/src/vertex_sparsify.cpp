#include "dynsparse/vertex_sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dynsparse/coin.hpp"

namespace dynsparse {

namespace {

Star scaled(const Star& s, double f) {
  Star o = s;
  for (auto& [v, w] : o.nbrs) w *= f;
  return o;
}

std::vector<std::pair<VertexId, VertexId>> pairs_of(const Star& s) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (auto a = s.nbrs.begin(); a != s.nbrs.end(); ++a)
    for (auto b = std::next(a); b != s.nbrs.end(); ++b) out.emplace_back(a->first, b->first);
  return out;
}

struct Dsu {
  std::vector<std::size_t> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

using Packing = std::map<StarId, std::pair<VertexId, VertexId>>;

// One augmenting-path step of matroid intersection (graphic matroid on clique
// edges, at most one edge per star): extends packing p of some stars by star
// y.  On failure p is left untouched.
bool augment(std::size_t n, const std::map<StarId, Star>& stars, Packing& p, StarId y) {
  struct Elem {
    StarId s;
    VertexId a, b;
    bool in;
  };
  std::vector<Elem> el;
  auto add_star = [&](StarId id) {
    auto pk = p.find(id);
    for (auto [a, b] : pairs_of(stars.at(id)))
      el.push_back({id, a, b, pk != p.end() && pk->second == std::pair{a, b}});
  };
  {
    bool done = false;
    for (const auto& [id, pr] : p) {
      if (!done && y < id) add_star(y), done = true;
      add_star(id);
    }
    if (!done) add_star(y);
  }
  const int m = static_cast<int>(el.size());
  std::map<StarId, int> packed;
  std::vector<std::vector<std::pair<VertexId, int>>> fadj(n);
  for (int k = 0; k < m; ++k)
    if (el[k].in) {
      packed[el[k].s] = k;
      fadj[el[k].a].push_back({el[k].b, k});
      fadj[el[k].b].push_back({el[k].a, k});
    }
  // tree path of every unpacked element in the current forest
  std::vector<std::vector<int>> path(m);
  std::vector<bool> spans(m, false);
  for (int z = 0; z < m; ++z) {
    if (el[z].in) continue;
    std::vector<int> via(n, -2);
    std::vector<VertexId> q{el[z].a};
    via[el[z].a] = -1;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto [w, k] : fadj[q[h]])
        if (via[w] == -2) via[w] = k, q.push_back(w);
    if (via[el[z].b] == -2) continue;
    spans[z] = true;
    for (VertexId v = el[z].b; v != el[z].a;) {
      int k = via[v];
      path[z].push_back(k);
      v = el[k].a == v ? el[k].b : el[k].a;
    }
  }
  std::vector<int> prev(m, -2);
  std::vector<int> q;
  for (int z = 0; z < m; ++z)
    if (!el[z].in && !spans[z]) prev[z] = -1, q.push_back(z);
  int end = -1;
  for (std::size_t h = 0; h < q.size() && end < 0; ++h) {
    int u = q[h];
    if (!el[u].in) {
      if (el[u].s == y) {
        end = u;
        break;
      }
      int e = packed.at(el[u].s);
      if (prev[e] == -2) prev[e] = u, q.push_back(e);
    } else {
      for (int z = 0; z < m; ++z) {
        if (el[z].in || prev[z] != -2) continue;
        if (!spans[z] || std::find(path[z].begin(), path[z].end(), u) != path[z].end())
          prev[z] = u, q.push_back(z);
      }
    }
  }
  if (end < 0) return false;
  std::vector<int> chain;
  for (int k = end; k >= 0; k = prev[k]) chain.push_back(k);
  for (int k : chain)
    if (el[k].in) p.erase(el[k].s);
  for (int k : chain)
    if (!el[k].in) p[el[k].s] = {el[k].a, el[k].b};
  return true;
}

// canonical packing of an independent star set: augment in id order
Packing pack(std::size_t n, const std::map<StarId, Star>& stars, const std::set<StarId>& basis) {
  Packing p;
  for (StarId id : basis)
    if (!augment(n, stars, p, id)) throw std::logic_error("pack: star set is not independent");
  return p;
}

bool acyclic(std::size_t n, const Packing& p) {
  Dsu d(n);
  for (const auto& [id, e] : p)
    if (!d.unite(e.first, e.second)) return false;
  return true;
}

}  // namespace

int star_bucket(double wmax, double gamma) {
  if (!(wmax > 0) || !(gamma > 0)) throw std::invalid_argument("star_bucket: weights must be positive");
  int e = 0;
  double m = std::frexp(wmax / gamma, &e);
  // r = m 2^e with m in [0.5, 1); exact powers of two sit at the top of their bucket
  return m == 0.5 ? e - 1 : e;
}

BucketedStar bucket_star(const Star& s, std::size_t d, double eps, double gamma) {
  if (s.nbrs.empty()) throw std::invalid_argument("bucket_star: empty star");
  BucketedStar b;
  double wmax = -1;
  for (const auto& [v, w] : s.nbrs)
    if (w > wmax) wmax = w, b.xmax = v;
  b.bucket = star_bucket(wmax, gamma);
  b.kept.x = s.x;
  const double thr = eps / static_cast<double>(std::max<std::size_t>(d, 1)) * wmax;
  for (const auto& [v, w] : s.nbrs) {
    if (w < thr) b.rerouted.emplace_back(v, w);
    else b.kept.nbrs[v] = w;
  }
  return b;
}

DynamicGraph BucketedGraph::graph() const {
  DynamicGraph g(n);
  for (const auto& e : core) g.insert_edge(e.u, e.v, e.weight);
  for (const auto& [b, stars] : buckets)
    for (const auto& [x, s] : stars)
      for (const auto& [v, w] : s.nbrs) g.insert_edge(x, v, w);
  return g;
}

BucketedGraph vertex_bucketing(const DynamicGraph& g, const std::vector<bool>& in_vc, std::size_t d,
                               double eps, double gamma) {
  const std::size_t n = g.num_vertices();
  if (in_vc.size() != n) throw std::invalid_argument("vertex_bucketing: cover size mismatch");
  BucketedGraph out;
  out.n = n;
  std::vector<Star> stars(n);
  for (const auto& [id, e] : g.edges()) {
    if (in_vc[e.u] && in_vc[e.v]) {
      out.core.push_back({e.u, e.v, e.weight, kNoOrigin});
    } else if (in_vc[e.u] || in_vc[e.v]) {
      VertexId x = in_vc[e.u] ? e.v : e.u;
      stars[x].x = x;
      stars[x].nbrs[e.other(x)] += e.weight;
    } else {
      throw std::invalid_argument("vertex_bucketing: edge outside the cover");
    }
  }
  for (VertexId x = 0; x < n; ++x) {
    if (in_vc[x] || stars[x].nbrs.empty()) continue;
    if (stars[x].nbrs.size() > d) throw std::invalid_argument("vertex_bucketing: degree above d");
    auto b = bucket_star(stars[x], d, eps, gamma);
    out.xmax[x] = b.xmax;
    out.buckets[b.bucket][x] = b.kept;
    for (auto [v, w] : b.rerouted) out.core.push_back({b.xmax, v, w, x});
  }
  return out;
}

std::map<StarId, CliqueForestEdge> light_vertices(std::size_t n, const std::map<StarId, Star>& stars,
                                                  std::size_t t) {
  std::map<StarId, CliqueForestEdge> light;
  for (std::size_t j = 0; j < t; ++j) {
    Packing p;
    for (const auto& [id, s] : stars)
      if (!light.count(id) && augment(n, stars, p, id)) light[id] = {j, 0, 0};
    for (const auto& [id, e] : p) light[id] = {j, e.first, e.second};
  }
  return light;
}

std::map<StarId, Star> sample_heavy(const std::map<StarId, Star>& stars, const std::set<StarId>& heavy,
                                    std::uint64_t seed, std::size_t level) {
  std::map<StarId, Star> out;
  for (StarId id : heavy)
    if (coin(0.5, seed, id, level)) out[id] = scaled(stars.at(id), 2.0);
  return out;
}

std::size_t vertex_levels(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(2 * std::log2(static_cast<double>(std::max<std::size_t>(n, 2))) - 1e-12));
}

std::map<StarId, Star> BoundedSnapshot::output() const {
  std::map<StarId, Star> out = residual;
  for (const auto& lv : levels)
    for (const auto& [id, fe] : lv.light) out[id] = lv.stars.at(id);
  return out;
}

DynamicGraph BoundedSnapshot::graph(std::size_t n) const {
  DynamicGraph g(n);
  for (const auto& [id, s] : output())
    for (const auto& [v, w] : s.nbrs) g.insert_edge(s.x, v, w);
  return g;
}

BoundedSnapshot bounded_vertex_sparsify(std::size_t n, const std::map<StarId, Star>& stars, std::size_t t,
                                        std::size_t levels, std::uint64_t seed) {
  BoundedSnapshot out;
  std::map<StarId, Star> cur = stars;
  for (std::size_t i = 0; i < levels; ++i) {
    BoundedLevel lv;
    lv.stars = cur;
    lv.light = light_vertices(n, cur, t);
    std::set<StarId> heavy;
    for (const auto& [id, s] : cur)
      if (!lv.light.count(id)) heavy.insert(id);
    cur = sample_heavy(cur, heavy, seed, i);
    out.levels.push_back(std::move(lv));
  }
  out.residual = std::move(cur);
  return out;
}

BoundedVertexChain::BoundedVertexChain(std::size_t n, std::size_t t, std::size_t levels, std::uint64_t seed)
    : n_(n), t_(t), seed_(seed), levels_(levels + 1), calls_(levels + 1, 0) {
  for (std::size_t i = 0; i < levels; ++i) {
    levels_[i].basis.resize(t);
    levels_[i].packing.resize(t);
  }
}

void BoundedVertexChain::insert_star(StarId id, const Star& s) {
  if (contains(id)) throw std::invalid_argument("insert_star: star already present");
  if (!levels_[0].stars.empty() && id < levels_[0].stars.rbegin()->first)
    throw std::invalid_argument("insert_star: star ids must increase");
  for (const auto& [v, w] : s.nbrs)
    if (v >= n_) throw std::out_of_range("insert_star: vertex out of range");
  std::fill(calls_.begin(), calls_.end(), 0);
  insert_at(0, id, s);
}

void BoundedVertexChain::remove_star(StarId id) {
  if (!contains(id)) throw std::out_of_range("remove_star: unknown star");
  std::fill(calls_.begin(), calls_.end(), 0);
  remove_at(0, id);
}

void BoundedVertexChain::insert_at(std::size_t i, StarId id, Star s) {
  ++calls_[i];
  touched_.insert(id);
  Level& lv = levels_[i];
  lv.stars[id] = std::move(s);
  if (i + 1 == levels_.size()) return;
  // id is the largest present, so the greedy bases only need the one test
  for (std::size_t j = 0; j < t_; ++j) {
    if (augment(n_, lv.stars, lv.packing[j], id)) {
      lv.basis[j].insert(id);
      lv.light[id] = j;
      return;
    }
  }
  if (coin(0.5, seed_, id, i)) insert_at(i + 1, id, scaled(lv.stars.at(id), 2.0));
}

// id has left forest j (removed, or taken by an earlier forest); the new
// greedy basis is the old one minus id plus the first remaining candidate
// that keeps it independent.  The caller updates light_[id].
void BoundedVertexChain::leave_forest(std::size_t i, std::size_t j, StarId id) {
  Level& lv = levels_[i];
  lv.basis[j].erase(id);
  lv.packing[j] = pack(n_, lv.stars, lv.basis[j]);
  for (const auto& [y, s] : lv.stars) {
    if (lv.basis[j].count(y)) continue;
    auto lt = lv.light.find(y);
    if (lt != lv.light.end() && lt->second < j) continue;
    Packing trial = lv.packing[j];
    if (!augment(n_, lv.stars, trial, y)) continue;
    lv.basis[j].insert(y);
    lv.packing[j] = pack(n_, lv.stars, lv.basis[j]);
    touched_.insert(y);
    if (lt != lv.light.end()) {
      std::size_t from = lt->second;
      lt->second = j;
      leave_forest(i, from, y);
    } else {
      lv.light[y] = j;
      if (levels_[i + 1].stars.count(y)) remove_at(i + 1, y);
    }
    return;
  }
}

void BoundedVertexChain::remove_at(std::size_t i, StarId id) {
  ++calls_[i];
  touched_.insert(id);
  Level& lv = levels_[i];
  lv.stars.erase(id);
  if (i + 1 == levels_.size()) return;
  auto it = lv.light.find(id);
  if (it == lv.light.end()) {
    if (levels_[i + 1].stars.count(id)) remove_at(i + 1, id);
    return;
  }
  std::size_t j = it->second;
  lv.light.erase(it);
  leave_forest(i, j, id);
}

BoundedSnapshot BoundedVertexChain::snapshot() const {
  BoundedSnapshot out;
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
    BoundedLevel bl;
    bl.stars = levels_[i].stars;
    for (const auto& [id, j] : levels_[i].light) {
      auto e = levels_[i].packing[j].at(id);
      bl.light[id] = {j, e.first, e.second};
    }
    out.levels.push_back(std::move(bl));
  }
  out.residual = levels_.back().stars;
  return out;
}

std::set<StarId> BoundedVertexChain::drain_touched() {
  std::set<StarId> out;
  out.swap(touched_);
  return out;
}

std::optional<Star> BoundedVertexChain::output_star(StarId id) const {
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
    if (levels_[i].light.count(id)) return levels_[i].stars.at(id);
    if (!levels_[i].stars.count(id)) return std::nullopt;
  }
  auto it = levels_.back().stars.find(id);
  if (it == levels_.back().stars.end()) return std::nullopt;
  return it->second;
}

bool BoundedVertexChain::audit() const {
  for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    std::map<StarId, std::size_t> seen;
    std::vector<Dsu> conn;
    for (std::size_t j = 0; j < t_; ++j) {
      if (lv.packing[j] != pack(n_, lv.stars, lv.basis[j]) || !acyclic(n_, lv.packing[j])) return false;
      conn.emplace_back(n_);
      for (const auto& [id, e] : lv.packing[j]) {
        const Star& s = lv.stars.at(id);
        if (!s.nbrs.count(e.first) || !s.nbrs.count(e.second)) return false;
        conn.back().unite(e.first, e.second);
      }
      for (StarId id : lv.basis[j])
        if (!seen.emplace(id, j).second) return false;
    }
    if (seen != lv.light) return false;
    for (const auto& [id, s] : lv.stars) {
      if (lv.light.count(id)) {
        if (levels_[i + 1].stars.count(id)) return false;
        continue;
      }
      for (auto [a, b] : pairs_of(s))
        for (auto& c : conn)
          if (c.find(a) != c.find(b)) return false;
      bool kept = coin(0.5, seed_, id, i);
      auto nx = levels_[i + 1].stars.find(id);
      if (kept != (nx != levels_[i + 1].stars.end())) return false;
      if (kept && !(nx->second == scaled(s, 2.0))) return false;
    }
  }
  return true;
}

VertexSparsifierState::VertexSparsifierState(std::size_t n, const VertexSparsifyParams& p)
    : n_(n), p_(p), plain_at_(n) {
  if (!(p.epsilon > 0 && p.epsilon < 1)) throw std::invalid_argument("vertex sparsify: epsilon must be in (0,1)");
  CutParams cp = p.core;
  cp.epsilon = p.epsilon / 2;
  cp.seed = mix_key(p.seed, 0xc0e);
  core_chain_ = std::make_unique<CutChain>(n, cp);
}

BoundedVertexChain& VertexSparsifierState::chain(int b) {
  auto& c = chains_[b];
  if (!c) {
    std::size_t l = p_.levels ? *p_.levels : vertex_levels(n_);
    c = std::make_unique<BoundedVertexChain>(n_, p_.t, l, mix_key(p_.seed, static_cast<std::uint64_t>(b), 0x5a));
  }
  return *c;
}

const BoundedVertexChain* VertexSparsifierState::bucket_chain(int b) const {
  auto it = chains_.find(b);
  return it == chains_.end() ? nullptr : it->second.get();
}

std::map<StarId, Star> VertexSparsifierState::bucket_stars(int b) const {
  std::map<StarId, Star> out;
  for (const auto& [x, st] : star_of_)
    if (st.bucket == b) out[st.id] = st.kept;
  return out;
}

void VertexSparsifierState::touch(EdgeId hid) {
  if (pending_.count(hid)) return;
  auto it = h_.find(hid);
  pending_[hid] = it == h_.end() ? std::nullopt : std::optional<WeightedEdge>(it->second);
}

void VertexSparsifierState::apply_core(const ChangeSet& cs) {
  for (EdgeId id : cs.removed) {
    touch(2 * id);
    h_.erase(2 * id);
  }
  for (WeightedEdge e : cs.added) {
    e.id *= 2;
    touch(e.id);
    h_[e.id] = e;
  }
}

EdgeId VertexSparsifierState::add_core(VertexId u, VertexId v, double w, VertexId origin) {
  EdgeId cid = next_core_++;
  core_[cid] = {u, v, w, origin};
  apply_core(core_chain_->apply(UpdateEvent::insert({cid, u, v, w})).sparsifier);
  return cid;
}

void VertexSparsifierState::remove_core(EdgeId cid) {
  core_.erase(cid);
  apply_core(core_chain_->apply(UpdateEvent::erase(cid)).sparsifier);
}

void VertexSparsifierState::flush(int bucket) {
  BoundedVertexChain& c = chain(bucket);
  for (StarId uid : c.drain_touched()) {
    auto out = c.output_star(uid);
    auto it = star_h_.find(uid);
    if (it != star_h_.end() && out && it->second.s == *out) continue;
    if (it != star_h_.end()) {
      for (EdgeId hid : it->second.ids) {
        touch(hid);
        h_.erase(hid);
      }
      star_h_.erase(it);
    }
    if (!out) continue;
    OutStar os{*out, {}};
    for (const auto& [v, w] : out->nbrs) {
      EdgeId hid = 2 * next_h_++ + 1;
      touch(hid);
      h_[hid] = {hid, out->x, v, w};
      os.ids.push_back(hid);
    }
    star_h_[uid] = std::move(os);
  }
}

void VertexSparsifierState::insert_xg(VertexId x, const Star& s) {
  if (x >= n_) throw std::out_of_range("insert_xg: vertex out of range");
  if (star_of_.count(x)) throw std::invalid_argument("insert_xg: vertex already independent");
  if (s.nbrs.empty()) return;
  if (s.nbrs.size() > p_.d) throw std::logic_error("insert_xg: star degree above d");
  Star full = s;
  full.x = x;
  auto b = bucket_star(full, p_.d, p_.epsilon / 2, p_.gamma);
  XState st{next_star_++, b.bucket, b.kept, {}};
  for (auto [v, w] : b.rerouted) st.rerouted.push_back(add_core(b.xmax, v, w, x));
  chain(b.bucket).insert_star(st.id, st.kept);
  star_home_[st.id] = {b.bucket, x};
  star_of_[x] = std::move(st);
  flush(b.bucket);
}

void VertexSparsifierState::remove_xg(VertexId x) {
  auto it = star_of_.find(x);
  if (it == star_of_.end()) return;
  XState st = std::move(it->second);
  star_of_.erase(it);
  for (EdgeId cid : st.rerouted) remove_core(cid);
  chain(st.bucket).remove_star(st.id);
  star_home_.erase(st.id);
  flush(st.bucket);
}

void VertexSparsifierState::sync(VertexId x, const BranchCover& bc) {
  remove_xg(x);
  std::map<EdgeId, WeightedEdge> want;
  if (bc.in_vc(x))
    for (EdgeId id : bc.incident(x)) {
      const WeightedEdge& e = bc.edges().at(id);
      if (bc.in_vc(e.other(x))) want[id] = e;
    }
  std::vector<EdgeId> drop;
  for (EdgeId src : plain_at_[x]) {
    auto w = want.find(src);
    const CoreEdge& ce = core_.at(plain_.at(src));
    if (w == want.end() || w->second.weight != ce.weight || std::minmax(w->second.u, w->second.v) != std::minmax(ce.u, ce.v))
      drop.push_back(src);
  }
  for (EdgeId src : drop) {
    const CoreEdge ce = core_.at(plain_.at(src));
    remove_core(plain_.at(src));
    plain_.erase(src);
    plain_at_[ce.u].erase(src);
    plain_at_[ce.v].erase(src);
  }
  for (const auto& [src, e] : want) {
    if (plain_.count(src)) continue;
    plain_[src] = add_core(e.u, e.v, e.weight, kNoOrigin);
    plain_at_[e.u].insert(src);
    plain_at_[e.v].insert(src);
  }
  if (!bc.in_vc(x)) {
    Star s{x, bc.star(x)};
    if (!s.nbrs.empty()) insert_xg(x, s);
  }
}

ChangeSet VertexSparsifierState::drain() {
  ChangeSet cs;
  for (const auto& [id, old] : pending_) {
    auto it = h_.find(id);
    bool now = it != h_.end();
    if (old && (!now || !(it->second == *old))) cs.removed.push_back(id);
    if (now && (!old || !(it->second == *old))) cs.added.push_back(it->second);
  }
  pending_.clear();
  return cs;
}

DynamicGraph VertexSparsifierState::sparsifier() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : h_) g.insert_edge(e);
  return g;
}

DynamicGraph VertexSparsifierState::bucketed() const {
  DynamicGraph g(n_);
  for (const auto& [cid, e] : core_) g.insert_edge(e.u, e.v, e.weight);
  for (const auto& [x, st] : star_of_)
    for (const auto& [v, w] : st.kept.nbrs) g.insert_edge(x, v, w);
  return g;
}

std::vector<CoreEdge> VertexSparsifierState::core_edges() const {
  std::vector<CoreEdge> out;
  for (const auto& [cid, e] : core_) out.push_back(e);
  return out;
}

std::map<int, std::map<VertexId, Star>> VertexSparsifierState::buckets() const {
  std::map<int, std::map<VertexId, Star>> out;
  for (const auto& [x, st] : star_of_) out[st.bucket][x] = st.kept;
  return out;
}

}  // namespace dynsparse
