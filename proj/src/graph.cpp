#include "dynsparse/graph.hpp"

#include <cmath>
#include <string>

namespace dynsparse {

void ChangeSet::append(const ChangeSet& o) {
  added.insert(added.end(), o.added.begin(), o.added.end());
  removed.insert(removed.end(), o.removed.begin(), o.removed.end());
}

ChangeSet diff_edge_maps(const std::map<EdgeId, WeightedEdge>& before,
                         const std::map<EdgeId, WeightedEdge>& after) {
  ChangeSet cs;
  for (const auto& [id, e] : before) {
    auto it = after.find(id);
    if (it == after.end() || !(it->second == e)) cs.removed.push_back(id);
  }
  for (const auto& [id, e] : after) {
    auto it = before.find(id);
    if (it == before.end() || !(it->second == e)) cs.added.push_back(e);
  }
  return cs;
}

int weight_class(double w, double gamma) {
  if (!(gamma > 0) || !(w >= gamma))
    throw std::invalid_argument("weight_class: need w >= gamma > 0");
  int i = std::ilogb(w / gamma);
  // the division can round across a power of two; fix up exactly
  while (i > 0 && std::ldexp(gamma, i) > w) --i;
  while (std::ldexp(gamma, i + 1) <= w) ++i;
  return i;
}

DynamicGraph::DynamicGraph(std::size_t n, bool multi) : multi_(multi), adj_(n) {}

void DynamicGraph::check_vertex(VertexId v) const {
  if (v >= adj_.size())
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

EdgeId DynamicGraph::insert_edge(VertexId u, VertexId v, double w) {
  WeightedEdge e{next_id_, u, v, w};
  insert_edge(e);
  return e.id;
}

void DynamicGraph::insert_edge(const WeightedEdge& e) {
  check_vertex(e.u);
  check_vertex(e.v);
  if (e.u == e.v) throw std::invalid_argument("self-loop");
  if (!(e.weight > 0) || !std::isfinite(e.weight))
    throw std::invalid_argument("edge weight must be positive");
  if (edges_.count(e.id)) throw std::invalid_argument("edge id already in use");
  if (!multi_ && find_edge(e.u, e.v))
    throw std::invalid_argument("parallel edge in simple graph");
  edges_.emplace(e.id, e);
  adj_[e.u].insert(e.id);
  adj_[e.v].insert(e.id);
  weights_.insert(e.weight);
  if (e.id >= next_id_) next_id_ = e.id + 1;
}

WeightedEdge DynamicGraph::delete_edge(EdgeId id) {
  auto it = edges_.find(id);
  if (it == edges_.end())
    throw std::out_of_range("unknown edge id " + std::to_string(id));
  WeightedEdge e = it->second;
  edges_.erase(it);
  adj_[e.u].erase(id);
  adj_[e.v].erase(id);
  weights_.erase(weights_.find(e.weight));
  return e;
}

void DynamicGraph::apply(const ChangeSet& cs) {
  for (EdgeId id : cs.removed) delete_edge(id);
  for (const auto& e : cs.added) insert_edge(e);
}

const WeightedEdge& DynamicGraph::edge(EdgeId id) const {
  auto it = edges_.find(id);
  if (it == edges_.end())
    throw std::out_of_range("unknown edge id " + std::to_string(id));
  return it->second;
}

std::vector<WeightedEdge> DynamicGraph::edge_list() const {
  std::vector<WeightedEdge> out;
  out.reserve(edges_.size());
  for (const auto& [id, e] : edges_) out.push_back(e);
  return out;
}

double DynamicGraph::weighted_degree(VertexId v) const {
  double s = 0;
  for (EdgeId id : adj_.at(v)) s += edges_.at(id).weight;
  return s;
}

std::optional<EdgeId> DynamicGraph::find_edge(VertexId u, VertexId v) const {
  const auto& a = adj_.at(u).size() <= adj_.at(v).size() ? adj_.at(u) : adj_.at(v);
  for (EdgeId id : a) {
    const auto& e = edges_.at(id);
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return id;
  }
  return std::nullopt;
}

double DynamicGraph::total_weight() const {
  double s = 0;
  for (const auto& [id, e] : edges_) s += e.weight;
  return s;
}

double DynamicGraph::min_weight() const { return weights_.empty() ? 0.0 : *weights_.begin(); }
double DynamicGraph::max_weight() const { return weights_.empty() ? 0.0 : *weights_.rbegin(); }

double DynamicGraph::weight_ratio() const {
  if (w_override_) return *w_override_;
  if (weights_.empty()) return 1.0;
  return max_weight() / min_weight();
}

double DynamicGraph::cut_weight(const std::vector<bool>& in_s) const {
  if (in_s.size() != adj_.size()) throw std::invalid_argument("cut mask size mismatch");
  double s = 0;
  for (const auto& [id, e] : edges_)
    if (in_s[e.u] != in_s[e.v]) s += e.weight;
  return s;
}

double DynamicGraph::cut_weight(std::span<const VertexId> s) const {
  std::vector<bool> mask(adj_.size(), false);
  for (VertexId v : s) {
    check_vertex(v);
    mask[v] = true;
  }
  return cut_weight(mask);
}

}  // namespace dynsparse
