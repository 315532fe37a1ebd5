#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynsparse/graph.hpp"

namespace dynsparse {

// unweighted multigraph: neighbor -> parallel edge ids
using MultiAdjacency = std::vector<std::map<VertexId, std::set<EdgeId>>>;

// Clustering of radius r around a center set: every vertex within distance
// r of a center joins the cluster of the nearest one.  Ties are broken by
// (sigma(center), sigma(parent)); the parent edge is the smallest parallel id.
// Maintained under edge deletions by relaxation to the unique fixpoint.
class Clustering {
 public:
  static constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

  Clustering(const MultiAdjacency* adj, std::vector<bool> centers, std::size_t radius,
             const std::vector<std::uint32_t>* sigma);

  struct Change {
    VertexId v = 0;
    std::optional<VertexId> old_center, new_center;
    std::optional<EdgeId> old_parent_edge, new_parent_edge;
  };
  // the edge must already be gone from the adjacency
  std::vector<Change> on_edge_deleted(VertexId a, VertexId b);

  std::size_t radius() const { return radius_; }
  bool assigned(VertexId v) const { return st_[v].dist != kFar; }
  std::optional<VertexId> center(VertexId v) const;
  std::size_t dist(VertexId v) const { return st_[v].dist; }
  std::optional<VertexId> parent(VertexId v) const;
  std::optional<EdgeId> parent_edge(VertexId v) const;
  std::size_t parent_changes(VertexId v) const { return parent_changes_[v]; }
  bool is_center(VertexId v) const { return centers_[v]; }

  bool same_assignment(const Clustering& o) const;

 private:
  struct State {
    std::size_t dist = kFar;
    VertexId center = 0;
    VertexId parent = 0;
    EdgeId pedge = 0;
    bool has_parent = false;
    bool operator==(const State&) const = default;
  };
  State compute(VertexId v) const;

  const MultiAdjacency* adj_;
  std::vector<bool> centers_;
  std::size_t radius_;
  const std::vector<std::uint32_t>* sigma_;
  std::vector<State> st_;
  std::vector<std::size_t> parent_changes_;
};

}  // namespace dynsparse
