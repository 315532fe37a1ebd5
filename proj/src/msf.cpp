#include "dynsparse/msf.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynsparse {

namespace {
constexpr int kTreeMark = 0;
constexpr int kNontreeMark = 1;
}  // namespace

bool edge_better(ForestOrder order, const WeightedEdge& a, const WeightedEdge& b) {
  if (a.weight != b.weight)
    return order == ForestOrder::Min ? a.weight < b.weight : a.weight > b.weight;
  return a.id < b.id;
}

MsfInstance::MsfInstance(std::size_t n, ForestOrder order) : n_(n), order_(order) {
  max_level_ = 0;
  while ((std::size_t{2} << max_level_) <= n) ++max_level_;
  for (int i = 0; i <= max_level_; ++i) {
    ett_.push_back(std::make_unique<EulerTourForest>(n, 0x9e37u + static_cast<unsigned>(i)));
  }
  tree_adj_.assign(max_level_ + 1, std::vector<std::set<EdgeId>>(n));
  nontree_adj_.assign(max_level_ + 1, std::vector<std::set<EdgeId>>(n));
  lct_ = std::make_unique<LinkCutTree>(n, [order](const WeightedEdge& a, const WeightedEdge& b) {
    return edge_better(order, b, a);
  });
}

MsfInstance::MsfInstance(MsfInstance&&) noexcept = default;
MsfInstance& MsfInstance::operator=(MsfInstance&&) noexcept = default;
MsfInstance::~MsfInstance() = default;

void MsfInstance::refresh_marks(int level, VertexId v) {
  ett_[level]->set_mark(v, kTreeMark, !tree_adj_[level][v].empty());
  ett_[level]->set_mark(v, kNontreeMark, !nontree_adj_[level][v].empty());
}

void MsfInstance::add_tree(EdgeRec& r, int level) {
  r.tree = true;
  r.level = level;
  for (int i = 0; i <= level; ++i) ett_[i]->link(r.e.u, r.e.v, r.e.id);
  tree_adj_[level][r.e.u].insert(r.e.id);
  tree_adj_[level][r.e.v].insert(r.e.id);
  refresh_marks(level, r.e.u);
  refresh_marks(level, r.e.v);
  lct_->link(r.e);
  ++tree_count_;
}

void MsfInstance::drop_tree(EdgeRec& r) {
  for (int i = 0; i <= r.level; ++i) ett_[i]->cut(r.e.id);
  tree_adj_[r.level][r.e.u].erase(r.e.id);
  tree_adj_[r.level][r.e.v].erase(r.e.id);
  refresh_marks(r.level, r.e.u);
  refresh_marks(r.level, r.e.v);
  lct_->cut(r.e.id);
  r.tree = false;
  --tree_count_;
}

void MsfInstance::add_nontree(EdgeRec& r, int level) {
  r.tree = false;
  r.level = level;
  nontree_adj_[level][r.e.u].insert(r.e.id);
  nontree_adj_[level][r.e.v].insert(r.e.id);
  refresh_marks(level, r.e.u);
  refresh_marks(level, r.e.v);
}

void MsfInstance::drop_nontree(EdgeRec& r) {
  nontree_adj_[r.level][r.e.u].erase(r.e.id);
  nontree_adj_[r.level][r.e.v].erase(r.e.id);
  refresh_marks(r.level, r.e.u);
  refresh_marks(r.level, r.e.v);
}

ForestDelta MsfInstance::insert(const WeightedEdge& e) {
  if (e.u >= n_ || e.v >= n_) throw std::out_of_range("msf insert: vertex out of range");
  if (e.u == e.v) throw std::invalid_argument("msf insert: self-loop");
  if (edges_.count(e.id)) throw std::invalid_argument("msf insert: duplicate edge id");
  EdgeRec& rec = edges_[e.id];
  rec.e = e;
  ForestDelta d;
  if (!lct_->connected(e.u, e.v)) {
    add_tree(rec, 0);
    d.added = e;
    return d;
  }
  WeightedEdge f = lct_->path_worst(e.u, e.v);
  add_nontree(rec, 0);
  if (!edge_better(order_, e, f)) return d;
  // e is the only edge across f's cut that beats f, so the replacement
  // search must pick it
  EdgeRec& fr = edges_.at(f.id);
  auto rep = remove_tree_edge(fr);
  if (!rep || rep->id != e.id) throw std::logic_error("msf insert: swap did not install new edge");
  add_nontree(fr, 0);
  d.added = e;
  d.removed = f.id;
  return d;
}

ForestDelta MsfInstance::erase(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw std::out_of_range("msf erase: unknown edge id");
  ForestDelta d;
  if (it->second.tree) {
    auto rep = remove_tree_edge(it->second);
    d.removed = id;
    d.added = rep;
  } else {
    drop_nontree(it->second);
  }
  edges_.erase(id);
  return d;
}

// Replacement search.  Every level from the deleted edge's level down to 0
// is scanned (HDT promotions applied on the smaller side); crossing
// candidates from all levels are pooled and the best one becomes a level-0
// tree edge.  The other candidates drop to level 0 so that every non-tree
// edge keeps its endpoints connected at its own level.
std::optional<WeightedEdge> MsfInstance::remove_tree_edge(EdgeRec& r) {
  const int top = r.level;
  const VertexId u = r.e.u, v = r.e.v;
  drop_tree(r);
  std::vector<EdgeId> cands;
  for (int i = top; i >= 0; --i) {
    EulerTourForest& f = *ett_[i];
    VertexId small = f.component_size(u) <= f.component_size(v) ? u : v;
    for (VertexId x : f.marked_in_component(small, kTreeMark)) {
      std::vector<EdgeId> ids(tree_adj_[i][x].begin(), tree_adj_[i][x].end());
      for (EdgeId id : ids) {
        EdgeRec& t = edges_.at(id);
        if (!t.tree || t.level != i) continue;
        tree_adj_[i][t.e.u].erase(id);
        tree_adj_[i][t.e.v].erase(id);
        tree_adj_[i + 1][t.e.u].insert(id);
        tree_adj_[i + 1][t.e.v].insert(id);
        ett_[i + 1]->link(t.e.u, t.e.v, id);
        t.level = i + 1;
        for (VertexId y : {t.e.u, t.e.v}) {
          refresh_marks(i, y);
          refresh_marks(i + 1, y);
        }
      }
    }
    for (VertexId x : f.marked_in_component(small, kNontreeMark)) {
      std::vector<EdgeId> ids(nontree_adj_[i][x].begin(), nontree_adj_[i][x].end());
      for (EdgeId id : ids) {
        EdgeRec& g = edges_.at(id);
        if (g.tree || g.level != i) continue;
        if (f.connected(g.e.u, g.e.v)) {
          drop_nontree(g);
          add_nontree(g, i + 1);
        } else {
          cands.push_back(id);
        }
      }
    }
  }
  if (cands.empty()) return std::nullopt;
  EdgeId best = cands.front();
  for (EdgeId c : cands)
    if (edge_better(order_, edges_.at(c).e, edges_.at(best).e)) best = c;
  for (EdgeId c : cands) {
    EdgeRec& g = edges_.at(c);
    drop_nontree(g);
    if (c == best) add_tree(g, 0);
    else add_nontree(g, 0);
  }
  return edges_.at(best).e;
}

bool MsfInstance::connected(VertexId u, VertexId v) const { return ett_[0]->connected(u, v); }

bool MsfInstance::is_tree_edge(EdgeId id) const {
  auto it = edges_.find(id);
  return it != edges_.end() && it->second.tree;
}

std::vector<WeightedEdge> MsfInstance::forest_edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(tree_count_);
  for (const auto& [id, r] : edges_)
    if (r.tree) out.push_back(r.e);
  return out;
}

std::vector<WeightedEdge> MsfInstance::max_forest_view() const {
  if (order_ != ForestOrder::Max) throw std::logic_error("max_forest_view: instance is not in max mode");
  return forest_edges();
}

double MsfInstance::forest_weight() const {
  double s = 0;
  for (const auto& [id, r] : edges_)
    if (r.tree) s += r.e.weight;
  return s;
}

LevelAudit MsfInstance::audit() const {
  LevelAudit a;
  auto fail = [&](std::string m) {
    if (a.ok) a.message = std::move(m);
    a.ok = false;
  };
  for (int i = 0; i <= max_level_; ++i) {
    for (VertexId v = 0; v < n_; ++v) {
      if ((ett_[i]->component_size(v) << i) > n_)
        fail("level " + std::to_string(i) + " component too large");
      if (ett_[i]->mark(v, kTreeMark) != !tree_adj_[i][v].empty() ||
          ett_[i]->mark(v, kNontreeMark) != !nontree_adj_[i][v].empty())
        fail("stale mark at level " + std::to_string(i));
    }
  }
  std::size_t trees = 0;
  for (const auto& [id, r] : edges_) {
    if (r.tree) {
      ++trees;
      for (int i = 0; i <= max_level_; ++i)
        if (ett_[i]->has_edge(id) != (i <= r.level)) fail("tree edge level mismatch");
      if (!tree_adj_[r.level][r.e.u].count(id) || !tree_adj_[r.level][r.e.v].count(id))
        fail("tree adjacency mismatch");
      if (!lct_->has_edge(id)) fail("link-cut tree lost an edge");
    } else {
      if (!ett_[r.level]->connected(r.e.u, r.e.v))
        fail("non-tree edge endpoints disconnected at its level");
      if (!nontree_adj_[r.level][r.e.u].count(id) || !nontree_adj_[r.level][r.e.v].count(id))
        fail("non-tree adjacency mismatch");
    }
  }
  if (trees != tree_count_ || ett_[0]->num_edges() != tree_count_) fail("tree count mismatch");
  return a;
}

}  // namespace dynsparse
