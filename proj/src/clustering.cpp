#include "dynsparse/clustering.hpp"

#include <algorithm>
#include <tuple>

namespace dynsparse {

Clustering::Clustering(const MultiAdjacency* adj, std::vector<bool> centers, std::size_t radius,
                       const std::vector<std::uint32_t>* sigma)
    : adj_(adj), centers_(std::move(centers)), radius_(radius), sigma_(sigma) {
  const std::size_t n = adj_->size();
  st_.assign(n, State{});
  parent_changes_.assign(n, 0);
  // truncated multi-source bfs, then parents layer by layer
  std::vector<VertexId> order;
  for (VertexId v = 0; v < n; ++v)
    if (centers_[v]) {
      st_[v].dist = 0;
      order.push_back(v);
    }
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId x = order[i];
    if (st_[x].dist >= radius_) continue;
    for (const auto& [y, ids] : (*adj_)[x])
      if (st_[y].dist == kFar) {
        st_[y].dist = st_[x].dist + 1;
        order.push_back(y);
      }
  }
  for (VertexId v : order) st_[v] = compute(v);
}

Clustering::State Clustering::compute(VertexId v) const {
  State s;
  if (centers_[v]) {
    s.dist = 0;
    s.center = v;
    return s;
  }
  const auto& sig = *sigma_;
  std::size_t best = kFar;
  for (const auto& [u, ids] : (*adj_)[v])
    if (st_[u].dist < radius_) best = std::min(best, st_[u].dist + 1);
  if (best == kFar) return s;
  s.dist = best;
  std::tuple<std::uint32_t, std::uint32_t> key{~0u, ~0u};
  for (const auto& [u, ids] : (*adj_)[v]) {
    if (st_[u].dist + 1 != best || st_[u].dist == kFar) continue;
    std::tuple<std::uint32_t, std::uint32_t> k{sig[st_[u].center], sig[u]};
    if (!s.has_parent || k < key) {
      key = k;
      s.center = st_[u].center;
      s.parent = u;
      s.pedge = *ids.begin();
      s.has_parent = true;
    }
  }
  return s;
}

std::vector<Clustering::Change> Clustering::on_edge_deleted(VertexId a, VertexId b) {
  std::map<VertexId, State> initial;
  std::set<std::pair<std::size_t, VertexId>> work;
  auto push = [&](VertexId x) { work.insert({st_[x].dist, x}); };
  push(a);
  push(b);
  while (!work.empty()) {
    auto [d, x] = *work.begin();
    work.erase(work.begin());
    State s = compute(x);
    if (s == st_[x]) continue;
    initial.emplace(x, st_[x]);
    st_[x] = s;
    for (const auto& [y, ids] : (*adj_)[x]) push(y);
  }
  std::vector<Change> out;
  for (const auto& [v, old] : initial) {
    const State& now = st_[v];
    if (old == now) continue;
    Change c;
    c.v = v;
    if (old.dist != kFar) c.old_center = old.center;
    if (now.dist != kFar) c.new_center = now.center;
    if (old.has_parent) c.old_parent_edge = old.pedge;
    if (now.has_parent) c.new_parent_edge = now.pedge;
    if (c.old_parent_edge != c.new_parent_edge) ++parent_changes_[v];
    out.push_back(c);
  }
  return out;
}

std::optional<VertexId> Clustering::center(VertexId v) const {
  if (st_[v].dist == kFar) return std::nullopt;
  return st_[v].center;
}

std::optional<VertexId> Clustering::parent(VertexId v) const {
  if (!st_[v].has_parent) return std::nullopt;
  return st_[v].parent;
}

std::optional<EdgeId> Clustering::parent_edge(VertexId v) const {
  if (!st_[v].has_parent) return std::nullopt;
  return st_[v].pedge;
}

bool Clustering::same_assignment(const Clustering& o) const { return st_ == o.st_; }

}  // namespace dynsparse
