#include "dynsparse/link_cut_tree.hpp"

#include <stdexcept>
#include <utility>

namespace dynsparse {

LinkCutTree::LinkCutTree(std::size_t n, Worse worse) : n_(n), t_(n), worse_(std::move(worse)) {}

bool LinkCutTree::is_root(int x) const {
  int p = t_[x].p;
  return p < 0 || (t_[p].ch[0] != x && t_[p].ch[1] != x);
}

void LinkCutTree::push(int x) {
  if (!t_[x].rev) return;
  std::swap(t_[x].ch[0], t_[x].ch[1]);
  for (int c : t_[x].ch)
    if (c >= 0) t_[c].rev = !t_[c].rev;
  t_[x].rev = false;
}

int LinkCutTree::pick(int a, int b) const {
  if (a < 0) return b;
  if (b < 0) return a;
  return worse_(t_[a].e, t_[b].e) ? a : b;
}

void LinkCutTree::pull(int x) {
  int w = t_[x].is_edge ? x : -1;
  for (int c : t_[x].ch)
    if (c >= 0) w = pick(w, t_[c].worst);
  t_[x].worst = w;
}

void LinkCutTree::rotate(int x) {
  int p = t_[x].p, g = t_[p].p;
  int dx = t_[p].ch[1] == x ? 1 : 0;
  if (!is_root(p)) t_[g].ch[t_[g].ch[1] == p ? 1 : 0] = x;
  t_[x].p = g;
  int b = t_[x].ch[dx ^ 1];
  t_[p].ch[dx] = b;
  if (b >= 0) t_[b].p = p;
  t_[x].ch[dx ^ 1] = p;
  t_[p].p = x;
  pull(p);
  pull(x);
}

void LinkCutTree::splay(int x) {
  std::vector<int> path{x};
  for (int y = x; !is_root(y); y = t_[y].p) path.push_back(t_[y].p);
  for (auto it = path.rbegin(); it != path.rend(); ++it) push(*it);
  while (!is_root(x)) {
    int p = t_[x].p;
    if (!is_root(p)) {
      int g = t_[p].p;
      bool zigzig = (t_[g].ch[0] == p) == (t_[p].ch[0] == x);
      rotate(zigzig ? p : x);
    }
    rotate(x);
  }
}

void LinkCutTree::access(int x) {
  int last = -1;
  for (int y = x; y >= 0; y = t_[y].p) {
    splay(y);
    t_[y].ch[1] = last;
    pull(y);
    last = y;
  }
  splay(x);
}

void LinkCutTree::make_root(int x) {
  access(x);
  t_[x].rev = !t_[x].rev;
  push(x);
}

int LinkCutTree::find_root(int x) {
  access(x);
  int y = x;
  while (true) {
    push(y);
    if (t_[y].ch[0] < 0) break;
    y = t_[y].ch[0];
  }
  splay(y);
  return y;
}

void LinkCutTree::link_nodes(int x, int y) {
  make_root(x);
  t_[x].p = y;
}

void LinkCutTree::cut_nodes(int x, int y) {
  make_root(x);
  access(y);
  // x is now the left child of y
  if (t_[y].ch[0] != x || t_[x].ch[1] >= 0) throw std::logic_error("lct cut: not adjacent");
  t_[y].ch[0] = -1;
  t_[x].p = -1;
  pull(y);
}

void LinkCutTree::link(const WeightedEdge& e) {
  if (e.u >= n_ || e.v >= n_) throw std::out_of_range("lct link: vertex out of range");
  if (edge_node_.count(e.id)) throw std::invalid_argument("lct link: edge already present");
  if (connected(e.u, e.v)) throw std::logic_error("lct link: endpoints already connected");
  int x;
  if (!free_.empty()) {
    x = free_.back();
    free_.pop_back();
    t_[x] = Node{};
  } else {
    x = static_cast<int>(t_.size());
    t_.emplace_back();
  }
  t_[x].is_edge = true;
  t_[x].e = e;
  t_[x].worst = x;
  edge_node_.emplace(e.id, x);
  link_nodes(x, static_cast<int>(e.u));
  link_nodes(static_cast<int>(e.v), x);
}

void LinkCutTree::cut(EdgeId id) {
  auto it = edge_node_.find(id);
  if (it == edge_node_.end()) throw std::out_of_range("lct cut: unknown edge");
  int x = it->second;
  const WeightedEdge e = t_[x].e;
  cut_nodes(x, static_cast<int>(e.u));
  cut_nodes(x, static_cast<int>(e.v));
  edge_node_.erase(it);
  free_.push_back(x);
}

bool LinkCutTree::connected(VertexId u, VertexId v) {
  if (u == v) return true;
  return find_root(static_cast<int>(u)) == find_root(static_cast<int>(v));
}

WeightedEdge LinkCutTree::path_worst(VertexId u, VertexId v) {
  if (u == v || !connected(u, v)) throw std::logic_error("lct path_worst: no path");
  make_root(static_cast<int>(u));
  access(static_cast<int>(v));
  int w = t_[v].worst;
  if (w < 0) throw std::logic_error("lct path_worst: empty path");
  return t_[w].e;
}

}  // namespace dynsparse
