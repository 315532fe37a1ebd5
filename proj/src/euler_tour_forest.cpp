#include "dynsparse/euler_tour_forest.hpp"

#include <stdexcept>

#include "dynsparse/coin.hpp"

namespace dynsparse {

EulerTourForest::EulerTourForest(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {
  nodes_.reserve(3 * n + 4);
  for (std::size_t v = 0; v < n; ++v) new_node(static_cast<std::int64_t>(v));
}

int EulerTourForest::new_node(std::int64_t vertex) {
  int x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    nodes_[x] = Node{};
  } else {
    x = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
  }
  rng_ = splitmix64(rng_);
  Node& nd = nodes_[x];
  nd.prio = static_cast<std::uint32_t>(rng_ >> 32);
  nd.vertex = vertex;
  nd.vcount = vertex >= 0 ? 1 : 0;
  return x;
}

void EulerTourForest::free_node(int x) { free_.push_back(x); }

void EulerTourForest::pull(int x) {
  Node& nd = nodes_[x];
  nd.size = 1;
  nd.vcount = nd.vertex >= 0 ? 1 : 0;
  nd.agg = nd.marks;
  for (int c : {nd.l, nd.r}) {
    if (c < 0) continue;
    nd.size += nodes_[c].size;
    nd.vcount += nodes_[c].vcount;
    nd.agg |= nodes_[c].agg;
  }
}

int EulerTourForest::root_of(int x) const {
  while (nodes_[x].p >= 0) x = nodes_[x].p;
  return x;
}

std::size_t EulerTourForest::position(int x) const {
  std::size_t pos = nodes_[x].l >= 0 ? nodes_[nodes_[x].l].size : 0;
  while (nodes_[x].p >= 0) {
    int p = nodes_[x].p;
    if (nodes_[p].r == x) pos += 1 + (nodes_[p].l >= 0 ? nodes_[nodes_[p].l].size : 0);
    x = p;
  }
  return pos;
}

int EulerTourForest::merge(int a, int b) {
  if (a < 0) return b;
  if (b < 0) return a;
  if (nodes_[a].prio > nodes_[b].prio) {
    int m = merge(nodes_[a].r, b);
    nodes_[a].r = m;
    nodes_[m].p = a;
    pull(a);
    return a;
  }
  int m = merge(a, nodes_[b].l);
  nodes_[b].l = m;
  nodes_[m].p = b;
  pull(b);
  return b;
}

void EulerTourForest::split(int t, std::size_t k, int& a, int& b) {
  if (t < 0) {
    a = b = -1;
    return;
  }
  nodes_[t].p = -1;
  std::size_t ls = nodes_[t].l >= 0 ? nodes_[nodes_[t].l].size : 0;
  if (k <= ls) {
    int x, y;
    split(nodes_[t].l, k, x, y);
    nodes_[t].l = y;
    if (y >= 0) nodes_[y].p = t;
    pull(t);
    a = x;
    b = t;
    if (x >= 0) nodes_[x].p = -1;
  } else {
    int x, y;
    split(nodes_[t].r, k - ls - 1, x, y);
    nodes_[t].r = x;
    if (x >= 0) nodes_[x].p = t;
    pull(t);
    a = t;
    b = y;
    if (y >= 0) nodes_[y].p = -1;
  }
}

int EulerTourForest::reroot(VertexId v) {
  int x = static_cast<int>(v);
  std::size_t pos = position(x);
  int r = root_of(x);
  if (pos == 0) return r;
  int a, b;
  split(r, pos, a, b);
  return merge(b, a);
}

void EulerTourForest::link(VertexId u, VertexId v, EdgeId id) {
  if (u >= n_ || v >= n_) throw std::out_of_range("ett link: vertex out of range");
  if (arcs_.count(id)) throw std::invalid_argument("ett link: edge already present");
  if (connected(u, v)) throw std::logic_error("ett link: endpoints already connected");
  int ru = reroot(u);
  int rv = reroot(v);
  int a1 = new_node(-1);
  int a2 = new_node(-1);
  arcs_.emplace(id, std::make_pair(a1, a2));
  merge(merge(merge(ru, a1), rv), a2);
}

void EulerTourForest::cut(EdgeId id) {
  auto it = arcs_.find(id);
  if (it == arcs_.end()) throw std::out_of_range("ett cut: unknown edge");
  auto [a1, a2] = it->second;
  arcs_.erase(it);
  std::size_t p1 = position(a1), p2 = position(a2);
  if (p1 > p2) {
    std::swap(a1, a2);
    std::swap(p1, p2);
  }
  int r = root_of(a1);
  int left, rest, mid, rest2, tail, tmp;
  split(r, p1, left, rest);
  split(rest, 1, tmp, rest2);  // tmp == a1
  split(rest2, p2 - p1 - 1, mid, rest);
  split(rest, 1, tmp, tail);  // tmp == a2
  merge(left, tail);
  (void)mid;
  free_node(a1);
  free_node(a2);
}

bool EulerTourForest::connected(VertexId u, VertexId v) const {
  return root_of(static_cast<int>(u)) == root_of(static_cast<int>(v));
}

std::size_t EulerTourForest::component_size(VertexId v) const {
  return nodes_[root_of(static_cast<int>(v))].vcount;
}

std::vector<VertexId> EulerTourForest::component(VertexId v) const {
  std::vector<VertexId> out;
  std::vector<int> stack{root_of(static_cast<int>(v))};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (nodes_[x].vertex >= 0) out.push_back(static_cast<VertexId>(nodes_[x].vertex));
    if (nodes_[x].l >= 0) stack.push_back(nodes_[x].l);
    if (nodes_[x].r >= 0) stack.push_back(nodes_[x].r);
  }
  return out;
}

void EulerTourForest::set_mark(VertexId v, int bit, bool on) {
  int x = static_cast<int>(v);
  std::uint8_t m = static_cast<std::uint8_t>(1u << bit);
  std::uint8_t before = nodes_[x].marks;
  if (on) nodes_[x].marks |= m;
  else nodes_[x].marks &= static_cast<std::uint8_t>(~m);
  if (nodes_[x].marks == before) return;
  while (x >= 0) {
    pull(x);
    x = nodes_[x].p;
  }
}

bool EulerTourForest::mark(VertexId v, int bit) const {
  return (nodes_[v].marks >> bit) & 1u;
}

void EulerTourForest::collect(int x, int bit, std::vector<VertexId>& out) const {
  std::vector<int> stack{x};
  while (!stack.empty()) {
    int y = stack.back();
    stack.pop_back();
    if (!((nodes_[y].agg >> bit) & 1u)) continue;
    if ((nodes_[y].marks >> bit) & 1u) out.push_back(static_cast<VertexId>(nodes_[y].vertex));
    if (nodes_[y].l >= 0) stack.push_back(nodes_[y].l);
    if (nodes_[y].r >= 0) stack.push_back(nodes_[y].r);
  }
}

std::vector<VertexId> EulerTourForest::marked_in_component(VertexId v, int bit) const {
  std::vector<VertexId> out;
  collect(root_of(static_cast<int>(v)), bit, out);
  return out;
}

}  // namespace dynsparse
