#include "dynsparse/elimination.hpp"

#include <algorithm>
#include <stdexcept>

#include "dynsparse/oracle.hpp"

namespace dynsparse {

std::vector<CliqueEdge> build_kx(const std::map<VertexId, double>& star) {
  double total = 0;
  for (const auto& [u, w] : star) total += w;
  std::vector<CliqueEdge> out;
  for (auto a = star.begin(); a != star.end(); ++a)
    for (auto b = std::next(a); b != star.end(); ++b)
      out.push_back({a->first, b->first, a->second * b->second / total});
  return out;
}

std::vector<CliqueEdge> build_kx(const DynamicGraph& g, VertexId x) {
  std::map<VertexId, double> star;
  for (EdgeId id : g.incident(x)) {
    const auto& e = g.edge(id);
    star[e.other(x)] += e.weight;
  }
  return build_kx(star);
}

double min_extension_weight(const DynamicGraph& g, const std::vector<bool>& in_vc,
                            const std::vector<bool>& in_s) {
  return oracle::min_extension_value(g, in_vc, in_s);
}

DynamicGraph eliminate(const DynamicGraph& g, const std::vector<bool>& in_vc) {
  const std::size_t n = g.num_vertices();
  if (in_vc.size() != n) throw std::invalid_argument("eliminate: mask size mismatch");
  DynamicGraph out(n);
  for (const auto& [id, e] : g.edges()) {
    if (!in_vc[e.u] && !in_vc[e.v]) throw std::invalid_argument("eliminate: vertex set is not a cover");
    if (in_vc[e.u] && in_vc[e.v]) out.insert_edge(e.u, e.v, e.weight);
  }
  for (VertexId x = 0; x < n; ++x)
    if (!in_vc[x])
      for (const auto& c : build_kx(g, x)) out.insert_edge(c.u, c.v, c.weight);
  return out;
}

std::vector<std::tuple<VertexId, VertexId, VertexId, double>> eliminated_canonical(
    const DynamicGraph& g, const std::vector<bool>& in_vc) {
  std::vector<std::tuple<VertexId, VertexId, VertexId, double>> out;
  for (const auto& [id, e] : g.edges()) {
    if (!in_vc[e.u] && !in_vc[e.v]) throw std::invalid_argument("eliminate: vertex set is not a cover");
    if (in_vc[e.u] && in_vc[e.v]) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), kNoOrigin, e.weight);
  }
  for (VertexId x = 0; x < g.num_vertices(); ++x)
    if (!in_vc[x])
      for (const auto& c : build_kx(g, x)) out.emplace_back(std::min(c.u, c.v), std::max(c.u, c.v), x, c.weight);
  std::sort(out.begin(), out.end());
  return out;
}

SchurReport schur_bound_check(const DynamicGraph& g, const std::vector<bool>& in_vc) {
  std::vector<VertexId> vc;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (in_vc.at(v)) vc.push_back(v);
  if (vc.size() > 22) throw std::invalid_argument("schur_bound_check: cover too large");
  DynamicGraph gvc = eliminate(g, in_vc);
  SchurReport r;
  bool first = true;
  std::vector<bool> in_s(g.num_vertices(), false);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vc.size()); ++mask) {
    for (std::size_t i = 0; i < vc.size(); ++i) in_s[vc[i]] = (mask >> i) & 1u;
    const double full = min_extension_weight(g, in_vc, in_s);
    const double elim = gvc.cut_weight(in_s);
    ++r.subsets;
    const double tol = kRelSlack * std::max(1.0, full);
    if (elim < full / 2 - tol || elim > full + tol) ++r.violations;
    if (full > tol) {
      double q = elim / full;
      if (first) r.min_ratio = r.max_ratio = q;
      r.min_ratio = std::min(r.min_ratio, q);
      r.max_ratio = std::max(r.max_ratio, q);
      first = false;
    }
  }
  return r;
}

std::vector<VertexId> tree_two_approx_cover(const DynamicGraph& forest) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < forest.num_vertices(); ++v) {
    const auto& inc = forest.incident(v);
    if (inc.size() >= 2) {
      out.push_back(v);
    } else if (inc.size() == 1) {
      VertexId w = forest.edge(*inc.begin()).other(v);
      if (forest.incident(w).size() == 1) out.push_back(v);
    }
  }
  return out;
}

EdgeId EliminatedGraph::insert(TaggedEdge e) {
  e.id = next_++;
  edges_[e.id] = e;
  adj_[e.u].insert({e.v, e.origin, e.id});
  adj_[e.v].insert({e.u, e.origin, e.id});
  if (!pending_.count(e.id)) pending_[e.id] = std::nullopt;
  return e.id;
}

void EliminatedGraph::erase(EdgeId id) {
  auto it = edges_.find(id);
  const TaggedEdge e = it->second;
  if (!pending_.count(id)) pending_[id] = e;
  adj_[e.u].erase({e.v, e.origin, id});
  adj_[e.v].erase({e.u, e.origin, id});
  edges_.erase(it);
}

EdgeId EliminatedGraph::add_plain(const WeightedEdge& src) {
  if (plain_.count(src.id)) throw std::logic_error("eliminated graph: plain edge already present");
  EdgeId id = insert({0, src.u, src.v, src.weight, kNoOrigin, src.id});
  plain_[src.id] = id;
  return id;
}

void EliminatedGraph::remove_plain(EdgeId source) {
  auto it = plain_.find(source);
  if (it == plain_.end()) throw std::logic_error("eliminated graph: no plain edge for source");
  erase(it->second);
  plain_.erase(it);
}

void EliminatedGraph::add_clique(VertexId x, const std::vector<CliqueEdge>& k) {
  auto& ids = clique_[x];
  if (!ids.empty()) throw std::logic_error("eliminated graph: clique already present");
  for (const auto& c : k) ids.push_back(insert({0, c.u, c.v, c.weight, x, 0}));
  if (ids.empty()) clique_.erase(x);
}

void EliminatedGraph::remove_clique(VertexId x) {
  auto it = clique_.find(x);
  if (it == clique_.end()) return;
  for (EdgeId id : it->second) erase(id);
  clique_.erase(it);
}

std::size_t EliminatedGraph::clique_size(VertexId x) const {
  auto it = clique_.find(x);
  return it == clique_.end() ? 0 : it->second.size();
}

DynamicGraph EliminatedGraph::graph() const {
  DynamicGraph g(adj_.size());
  for (const auto& [id, e] : edges_) g.insert_edge({id, e.u, e.v, e.weight});
  return g;
}

std::vector<std::tuple<VertexId, VertexId, VertexId, double>> EliminatedGraph::canonical() const {
  std::vector<std::tuple<VertexId, VertexId, VertexId, double>> out;
  for (const auto& [id, e] : edges_) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v), e.origin, e.weight);
  std::sort(out.begin(), out.end());
  return out;
}

ChangeSet EliminatedGraph::drain() {
  ChangeSet cs;
  for (const auto& [id, old] : pending_) {
    auto it = edges_.find(id);
    if (old && it == edges_.end()) cs.removed.push_back(id);
    if (!old && it != edges_.end()) cs.added.push_back({id, it->second.u, it->second.v, it->second.weight});
  }
  pending_.clear();
  return cs;
}

BranchCover::BranchCover(std::size_t n, std::vector<VertexId> pinned)
    : n_(n), pinned_(n, false), in_vc_(n, false), inc_(n), leaf_(n), branch_(n), eg_(n) {
  for (VertexId p : pinned) {
    pinned_.at(p) = true;
    in_vc_[p] = true;
  }
}

std::size_t BranchCover::cover_size() const {
  return static_cast<std::size_t>(std::count(in_vc_.begin(), in_vc_.end(), true));
}

std::size_t BranchCover::fdeg(const ForestAdj& f, VertexId v) const {
  auto it = f.find(v);
  return it == f.end() ? 0 : it->second.size();
}

void BranchCover::classify(const ForestKey& key, VertexId v) {
  leaf_[v].erase(key);
  branch_[v].erase(key);
  const ForestAdj& f = forests_[key];
  const std::size_t d = fdeg(f, v);
  if (d == 0) return;
  if (d >= 2) {
    branch_[v].insert(key);
    return;
  }
  // degree one: a leaf unless the edge is a whole tree by itself
  VertexId w = f.at(v).begin()->first;
  if (fdeg(f, w) == 1) branch_[v].insert(key);
  else leaf_[v].insert(key);
}

std::set<VertexId> BranchCover::candidates(const ForestKey& key, VertexId u, VertexId v) const {
  std::set<VertexId> c{u, v};
  auto it = forests_.find(key);
  if (it == forests_.end()) return c;
  for (VertexId x : {u, v}) {
    auto jt = it->second.find(x);
    if (jt == it->second.end()) continue;
    for (const auto& [w, id] : jt->second)
      if (fdeg(it->second, w) == 1) c.insert(w);
  }
  return c;
}

void BranchCover::insert_vc(VertexId v) {
  if (in_vc_[v]) throw std::logic_error("insert_vc: vertex already in the cover");
  eg_.remove_clique(v);
  for (EdgeId id : inc_[v]) eg_.add_plain(g_.at(id));
  in_vc_[v] = true;
  touched_.insert(v);
}

void BranchCover::remove_vc(VertexId v) {
  if (!in_vc_[v]) throw std::logic_error("remove_vc: vertex not in the cover");
  if (!branch_[v].empty()) throw std::logic_error("remove_vc: vertex is a branch vertex");
  for (EdgeId id : inc_[v]) eg_.remove_plain(id);
  in_vc_[v] = false;
  eg_.add_clique(v, build_kx(star(v)));
  touched_.insert(v);
}

std::map<VertexId, double> BranchCover::star(VertexId x) const {
  std::map<VertexId, double> s;
  for (EdgeId id : inc_[x]) {
    const auto& e = g_.at(id);
    s[e.other(x)] += e.weight;
  }
  return s;
}

void BranchCover::remove(const ForestKey& key, EdgeId id) {
  auto ft = forest_of_.find(id);
  if (ft == forest_of_.end() || !(ft->second == key)) throw std::out_of_range("branch cover: edge not in forest");
  const WeightedEdge e = g_.at(id);
  auto cand = candidates(key, e.u, e.v);
  touched_.insert(cand.begin(), cand.end());
  for (VertexId c : cand)
    if (!in_vc_[c]) insert_vc(c);
  ForestAdj& f = forests_[key];
  for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
    auto it = f.find(a);
    it->second.erase({b, id});
    if (it->second.empty()) f.erase(it);
  }
  forest_of_.erase(ft);
  eg_.remove_plain(id);
  inc_[e.u].erase(id);
  inc_[e.v].erase(id);
  g_.erase(id);
  for (VertexId c : cand) classify(key, c);
  if (f.empty()) forests_.erase(key);
  for (VertexId c : cand)
    if (!qualifies(c)) remove_vc(c);
}

void BranchCover::add(const ForestKey& key, const WeightedEdge& e) {
  if (g_.count(e.id)) throw std::invalid_argument("branch cover: edge already present");
  if (e.u >= n_ || e.v >= n_) throw std::out_of_range("branch cover: vertex out of range");
  auto cand = candidates(key, e.u, e.v);
  touched_.insert(cand.begin(), cand.end());
  for (VertexId c : cand)
    if (!in_vc_[c]) insert_vc(c);
  ForestAdj& f = forests_[key];
  f[e.u].insert({e.v, e.id});
  f[e.v].insert({e.u, e.id});
  forest_of_[e.id] = key;
  g_[e.id] = e;
  inc_[e.u].insert(e.id);
  inc_[e.v].insert(e.id);
  eg_.add_plain(e);
  for (VertexId c : cand) classify(key, c);
  for (VertexId c : cand)
    if (!qualifies(c)) remove_vc(c);
}

std::set<VertexId> BranchCover::drain_touched() {
  std::set<VertexId> out;
  out.swap(touched_);
  return out;
}

DynamicGraph BranchCover::graph() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : g_) g.insert_edge(e);
  return g;
}

std::vector<VertexId> BranchCover::forest_branch_vertices(const ForestKey& key) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n_; ++v)
    if (branch_[v].count(key)) out.push_back(v);
  return out;
}

}  // namespace dynsparse
