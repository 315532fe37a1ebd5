#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace dynsparse {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;

// relative slack added on top of every (1 +- eps) comparison
inline constexpr double kRelSlack = 1e-9;

struct WeightedEdge {
  EdgeId id = 0;
  VertexId u = 0;
  VertexId v = 0;
  double weight = 1.0;

  VertexId other(VertexId x) const { return x == u ? v : u; }
  bool operator==(const WeightedEdge&) const = default;
};

struct UpdateEvent {
  enum class Kind { Insert, Delete };
  Kind kind = Kind::Insert;
  WeightedEdge edge;  // for Delete only edge.id is meaningful

  static UpdateEvent insert(WeightedEdge e) { return {Kind::Insert, e}; }
  static UpdateEvent erase(EdgeId id) {
    UpdateEvent ev{Kind::Delete, {}};
    ev.edge.id = id;
    return ev;
  }
  bool is_insert() const { return kind == Kind::Insert; }
};

// Net difference of an edge set.  Apply removals first, then additions.
// An id present in both lists is a reweight of that edge.
struct ChangeSet {
  std::vector<WeightedEdge> added;
  std::vector<EdgeId> removed;

  bool empty() const { return added.empty() && removed.empty(); }
  std::size_t size() const { return added.size() + removed.size(); }
  void append(const ChangeSet& o);
};

// Diff two id -> edge maps.
ChangeSet diff_edge_maps(const std::map<EdgeId, WeightedEdge>& before,
                         const std::map<EdgeId, WeightedEdge>& after);

// i with gamma*2^i <= w < gamma*2^(i+1)
int weight_class(double w, double gamma);

class DynamicGraph {
 public:
  explicit DynamicGraph(std::size_t n = 0, bool multi = true);

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool multi() const { return multi_; }

  EdgeId insert_edge(VertexId u, VertexId v, double w);
  // keeps the caller's id; the id must be unused
  void insert_edge(const WeightedEdge& e);
  WeightedEdge delete_edge(EdgeId id);
  void apply(const ChangeSet& cs);

  bool has_edge(EdgeId id) const { return edges_.count(id) != 0; }
  const WeightedEdge& edge(EdgeId id) const;
  const std::map<EdgeId, WeightedEdge>& edges() const { return edges_; }
  std::vector<WeightedEdge> edge_list() const;
  const std::set<EdgeId>& incident(VertexId v) const { return adj_.at(v); }
  std::size_t degree(VertexId v) const { return adj_.at(v).size(); }
  double weighted_degree(VertexId v) const;
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  double total_weight() const;
  double min_weight() const;
  double max_weight() const;
  // max/min weight ratio, or the override if set
  double weight_ratio() const;
  void set_weight_ratio_override(double wmax) { w_override_ = wmax; }

  EdgeId next_id() const { return next_id_; }

  double cut_weight(const std::vector<bool>& in_s) const;
  double cut_weight(std::span<const VertexId> s) const;

 private:
  void check_vertex(VertexId v) const;

  bool multi_;
  std::vector<std::set<EdgeId>> adj_;
  std::map<EdgeId, WeightedEdge> edges_;
  std::multiset<double> weights_;
  EdgeId next_id_ = 0;
  std::optional<double> w_override_;
};

}  // namespace dynsparse
