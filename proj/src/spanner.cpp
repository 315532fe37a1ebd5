#include "dynsparse/spanner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "dynsparse/coin.hpp"

namespace dynsparse {

std::size_t default_spanner_k(std::size_t n) {
  double l = std::log2(std::max<std::size_t>(n, 2));
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(l / 4)));
}

MonotoneSpanner::MonotoneSpanner(std::size_t n, std::size_t k, std::uint64_t seed,
                                 const std::vector<WeightedEdge>& edges)
    : n_(n), k_(k), adj_(std::make_unique<MultiAdjacency>(n)),
      sigma_(std::make_unique<std::vector<std::uint32_t>>(n)) {
  if (k < 2) throw std::invalid_argument("spanner: k must be at least 2");
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("spanner: vertex out of range");
    if (e.u == e.v) throw std::invalid_argument("spanner: self-loop");
    if (!edges_.emplace(e.id, e).second) throw std::invalid_argument("spanner: duplicate edge id");
    (*adj_)[e.u][e.v].insert(e.id);
    (*adj_)[e.v][e.u].insert(e.id);
  }
  std::mt19937_64 rng(mix_key(seed, 0x5ba, n));
  std::iota(sigma_->begin(), sigma_->end(), 0u);
  std::shuffle(sigma_->begin(), sigma_->end(), rng);
  const double p = std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), -1.0 / static_cast<double>(k));
  std::uniform_real_distribution<double> u01(0, 1);
  centers_.assign(k, std::vector<bool>(n, false));
  centers_[0].assign(n, true);
  for (std::size_t i = 1; i < k; ++i)
    for (VertexId v = 0; v < n; ++v) centers_[i][v] = centers_[i - 1][v] && u01(rng) < p;
  for (std::size_t i = 0; i < k; ++i) clusters_.emplace_back(adj_.get(), centers_[i], i, sigma_.get());
  for (std::size_t i = 1; i < k; ++i)
    for (VertexId v = 0; v < n; ++v)
      if (auto pe = clusters_[i].parent_edge(v)) add(*pe, true, nullptr);
  for (std::size_t i = 0; i < k; ++i)
    for (VertexId v = 0; v < n; ++v) cover(i, v, nullptr);
}

bool MonotoneSpanner::level_member(std::size_t i, VertexId v) const {
  return i < k_ && clusters_[i].assigned(v);
}

void MonotoneSpanner::add(EdgeId id, bool forest, ChangeSet* out) {
  if (!h_.insert(id).second) return;
  log_.push_back({step_, id, true, forest});
  if (out) out->added.push_back(edges_.at(id));
}

// v in V_i \ V_{i+1} keeps one H edge into every neighboring level-i cluster
void MonotoneSpanner::cover(std::size_t i, VertexId v, ChangeSet* out) {
  if (!level_member(i, v) || level_member(i + 1, v)) return;
  const Clustering& c = clusters_[i];
  const VertexId home = *c.center(v);
  const auto& sig = *sigma_;
  struct Best {
    bool covered = false;
    std::tuple<std::uint32_t, EdgeId> key{~0u, ~EdgeId{0}};
  };
  std::map<VertexId, Best> nb;
  for (const auto& [u, ids] : (*adj_)[v]) {
    auto cu = c.center(u);
    if (!cu || *cu == home) continue;
    Best& b = nb[*cu];
    for (EdgeId id : ids) {
      if (h_.count(id)) b.covered = true;
      b.key = std::min(b.key, std::tuple<std::uint32_t, EdgeId>{sig[u], id});
    }
  }
  for (const auto& [cl, b] : nb)
    if (!b.covered) add(std::get<1>(b.key), false, out);
}

ChangeSet MonotoneSpanner::erase(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::out_of_range("spanner: unknown edge id");
  ++step_;
  const WeightedEdge e = it->second;
  edges_.erase(it);
  auto drop = [&](VertexId a, VertexId b) {
    auto& m = (*adj_)[a];
    auto jt = m.find(b);
    jt->second.erase(id);
    if (jt->second.empty()) m.erase(jt);
  };
  drop(e.u, e.v);
  drop(e.v, e.u);
  deleted_.insert(id);
  ChangeSet cs;
  if (h_.erase(id)) {
    cs.removed.push_back(id);
    log_.push_back({step_, id, false, false});
  }
  std::vector<std::set<VertexId>> dirty(k_);
  for (std::size_t i = 0; i < k_; ++i) dirty[i].insert({e.u, e.v});
  for (std::size_t i = 1; i < k_; ++i) {
    for (const auto& ch : clusters_[i].on_edge_deleted(e.u, e.v)) {
      if (ch.new_parent_edge && ch.new_parent_edge != ch.old_parent_edge) add(*ch.new_parent_edge, true, &cs);
      if (ch.old_center != ch.new_center) {
        dirty[i].insert(ch.v);
        for (const auto& [u, ids] : (*adj_)[ch.v]) dirty[i].insert(u);
        dirty[i - 1].insert(ch.v);
      }
    }
  }
  for (std::size_t i = 0; i < k_; ++i)
    for (VertexId v : dirty[i]) cover(i, v, &cs);
  return cs;
}

bool MonotoneSpanner::monotonicity_audit() const {
  std::map<EdgeId, int> state;  // 1 = in H, 2 = left H
  for (const auto& ent : log_) {
    int& s = state[ent.id];
    if (ent.added) {
      if (s != 0) return false;
      s = 1;
    } else {
      if (s != 1 || !deleted_.count(ent.id)) return false;
      s = 2;
    }
  }
  for (EdgeId id : h_)
    if (state[id] != 1) return false;
  return true;
}

std::size_t MonotoneSpanner::coverage_violations() const {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < k_; ++i)
    for (VertexId v = 0; v < n_; ++v) {
      if (!level_member(i, v) || level_member(i + 1, v)) continue;
      const Clustering& c = clusters_[i];
      std::map<VertexId, bool> nb;
      for (const auto& [u, ids] : (*adj_)[v]) {
        auto cu = c.center(u);
        if (!cu || *cu == *c.center(v)) continue;
        bool& cov = nb[*cu];
        for (EdgeId id : ids) cov = cov || h_.count(id);
      }
      for (const auto& [cl, cov] : nb) bad += !cov;
    }
  return bad;
}

WeightClassSpanner::WeightClassSpanner(std::size_t n, std::size_t k, double eps, std::uint64_t seed,
                                       const std::vector<WeightedEdge>& edges)
    : n_(n), k_(k), eps_(eps) {
  if (!(eps > 0)) throw std::invalid_argument("spanner: eps must be positive");
  double wmin = INFINITY;
  for (const auto& e : edges) wmin = std::min(wmin, e.weight);
  std::map<int, std::vector<WeightedEdge>> parts;
  for (const auto& e : edges) {
    if (!edges_.emplace(e.id, e).second) throw std::invalid_argument("spanner: duplicate edge id");
    int c = static_cast<int>(std::floor(std::log(e.weight / wmin) / std::log1p(eps) + 1e-12));
    class_of_[e.id] = c;
    parts[c].push_back(e);
  }
  for (auto& [c, es] : parts) {
    auto [it, ok] = classes_.emplace(c, MonotoneSpanner(n, k, mix_key(seed, static_cast<std::uint64_t>(c), 0x3c), es));
    for (EdgeId id : it->second.spanner_ids()) h_[id] = edges_.at(id);
  }
}

ChangeSet WeightClassSpanner::erase(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::out_of_range("spanner: unknown edge id");
  edges_.erase(it);
  const int c = class_of_.at(id);
  class_of_.erase(id);
  ChangeSet cs = classes_.at(c).erase(id);
  for (EdgeId r : cs.removed) h_.erase(r);
  for (const auto& e : cs.added) h_[e.id] = e;
  return cs;
}

DynamicGraph WeightClassSpanner::spanner() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : h_) g.insert_edge(e);
  return g;
}

bool WeightClassSpanner::monotonicity_audit() const {
  for (const auto& [c, s] : classes_)
    if (!s.monotonicity_audit()) return false;
  return true;
}

}  // namespace dynsparse
