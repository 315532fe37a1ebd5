#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynsparse/euler_tour_forest.hpp"
#include "dynsparse/graph.hpp"
#include "dynsparse/link_cut_tree.hpp"

namespace dynsparse {

// Min: prefer smaller (weight, id).  Max: prefer larger weight, then smaller id.
enum class ForestOrder { Min, Max };

bool edge_better(ForestOrder order, const WeightedEdge& a, const WeightedEdge& b);

struct ForestDelta {
  std::optional<WeightedEdge> added;
  std::optional<EdgeId> removed;
};

struct LevelAudit {
  bool ok = true;
  std::string message;
};

// Fully dynamic minimum (or maximum) spanning forest.  Tree edges carry
// levels in the style of Holm, de Lichtenberg and Thorup; each level keeps
// an Euler tour forest of the tree edges at or above it.  A link-cut tree
// over the level-0 forest answers path-worst queries for insertions.
class MsfInstance {
 public:
  explicit MsfInstance(std::size_t n, ForestOrder order = ForestOrder::Min);
  MsfInstance(const MsfInstance&) = delete;
  MsfInstance& operator=(const MsfInstance&) = delete;
  MsfInstance(MsfInstance&&) noexcept;
  MsfInstance& operator=(MsfInstance&&) noexcept;
  ~MsfInstance();

  ForestDelta insert(const WeightedEdge& e);
  ForestDelta erase(EdgeId id);

  bool connected(VertexId u, VertexId v) const;
  bool contains(EdgeId id) const { return edges_.count(id) != 0; }
  bool is_tree_edge(EdgeId id) const;
  const WeightedEdge& edge(EdgeId id) const { return edges_.at(id).e; }
  int level(EdgeId id) const { return edges_.at(id).level; }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t forest_size() const { return tree_count_; }
  std::vector<WeightedEdge> forest_edges() const;
  std::vector<WeightedEdge> max_forest_view() const;
  double forest_weight() const;
  ForestOrder order() const { return order_; }

  // walks every level and checks the size and non-tree invariants
  LevelAudit audit() const;

 private:
  struct EdgeRec {
    WeightedEdge e;
    int level = 0;
    bool tree = false;
  };

  void add_tree(EdgeRec& r, int level);
  void drop_tree(EdgeRec& r);
  void add_nontree(EdgeRec& r, int level);
  void drop_nontree(EdgeRec& r);
  void refresh_marks(int level, VertexId v);
  // removes tree edge and installs the best replacement, if any
  std::optional<WeightedEdge> remove_tree_edge(EdgeRec& r);

  std::size_t n_;
  ForestOrder order_;
  int max_level_;
  std::map<EdgeId, EdgeRec> edges_;
  std::vector<std::unique_ptr<EulerTourForest>> ett_;
  // [level][vertex]
  std::vector<std::vector<std::set<EdgeId>>> tree_adj_;
  std::vector<std::vector<std::set<EdgeId>>> nontree_adj_;
  std::unique_ptr<LinkCutTree> lct_;
  std::size_t tree_count_ = 0;
};

}  // namespace dynsparse
