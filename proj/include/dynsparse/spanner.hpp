#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "dynsparse/clustering.hpp"
#include "dynsparse/graph.hpp"

namespace dynsparse {

struct SpannerLogEntry {
  std::size_t step = 0;
  EdgeId id = 0;
  bool added = false;
  bool forest = false;  // added as a cluster-forest edge (else a selected edge)
};

// max(2, floor(log2(n) / 4))
std::size_t default_spanner_k(std::size_t n);

// Decremental (2k-1)-spanner of an unweighted multigraph.  An edge enters
// H at most once and leaves only when it is deleted from the graph.
class MonotoneSpanner {
 public:
  MonotoneSpanner(std::size_t n, std::size_t k, std::uint64_t seed, const std::vector<WeightedEdge>& edges);

  // spanner delta: removed is empty or {id}
  ChangeSet erase(EdgeId id);

  std::size_t num_vertices() const { return n_; }
  std::size_t k() const { return k_; }
  bool contains(EdgeId id) const { return edges_.count(id) != 0; }
  bool in_spanner(EdgeId id) const { return h_.count(id) != 0; }
  const std::set<EdgeId>& spanner_ids() const { return h_; }
  const std::map<EdgeId, WeightedEdge>& edges() const { return edges_; }
  const std::vector<SpannerLogEntry>& log() const { return log_; }
  const Clustering& clustering(std::size_t i) const { return clusters_.at(i); }
  const std::vector<bool>& centers(std::size_t i) const { return centers_.at(i); }
  const std::vector<std::uint32_t>& sigma() const { return *sigma_; }
  std::size_t steps() const { return step_; }
  // each id: at most one add, and a removal only as the graph deletion of that id
  bool monotonicity_audit() const;
  // edges (u,v) whose v has no H edge into a neighboring cluster it should cover
  std::size_t coverage_violations() const;

 private:
  bool level_member(std::size_t i, VertexId v) const;
  void add(EdgeId id, bool forest, ChangeSet* out);
  void cover(std::size_t i, VertexId v, ChangeSet* out);

  std::size_t n_, k_;
  std::unique_ptr<MultiAdjacency> adj_;
  std::unique_ptr<std::vector<std::uint32_t>> sigma_;
  std::vector<std::vector<bool>> centers_;
  std::vector<Clustering> clusters_;
  std::map<EdgeId, WeightedEdge> edges_;
  std::set<EdgeId> h_;
  std::set<EdgeId> deleted_;
  std::vector<SpannerLogEntry> log_;
  std::size_t step_ = 0;
};

// One monotone spanner per class floor(log_{1+eps}(w / w_min)).
class WeightClassSpanner {
 public:
  WeightClassSpanner(std::size_t n, std::size_t k, double eps, std::uint64_t seed,
                     const std::vector<WeightedEdge>& edges);

  ChangeSet erase(EdgeId id);

  double stretch_bound() const { return (1 + eps_) * (2.0 * static_cast<double>(k_) - 1); }
  std::size_t k() const { return k_; }
  bool contains(EdgeId id) const { return edges_.count(id) != 0; }
  bool in_spanner(EdgeId id) const { return h_.count(id) != 0; }
  const std::map<EdgeId, WeightedEdge>& edges() const { return edges_; }
  const std::map<EdgeId, WeightedEdge>& spanner_edges() const { return h_; }
  DynamicGraph spanner() const;
  std::size_t num_classes() const { return classes_.size(); }
  const MonotoneSpanner& instance(int cls) const { return classes_.at(cls); }
  int class_of(EdgeId id) const { return class_of_.at(id); }
  bool monotonicity_audit() const;

 private:
  std::size_t n_, k_;
  double eps_;
  std::map<int, MonotoneSpanner> classes_;
  std::map<EdgeId, int> class_of_;
  std::map<EdgeId, WeightedEdge> edges_;
  std::map<EdgeId, WeightedEdge> h_;
};

}  // namespace dynsparse
