#pragma once

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "dynsparse/cut_sparsifier.hpp"
#include "dynsparse/graph.hpp"

namespace dynsparse {

struct CliqueEdge {
  VertexId u = 0, v = 0;
  double weight = 0;
};

// K_x: every pair of neighbors u,v of x joined with w(x,u) w(x,v) / w(x,.)
// Parallel edges to one neighbor are summed first.
std::vector<CliqueEdge> build_kx(const DynamicGraph& g, VertexId x);
std::vector<CliqueEdge> build_kx(const std::map<VertexId, double>& star);

// Delta_G(S): S extended to the independent set, each vertex on its cheaper side
double min_extension_weight(const DynamicGraph& g, const std::vector<bool>& in_vc,
                            const std::vector<bool>& in_s);

// (G minus X) plus K_x for every x outside vc, as a plain graph on V
DynamicGraph eliminate(const DynamicGraph& g, const std::vector<bool>& in_vc);

struct SchurReport {
  std::size_t subsets = 0;
  std::size_t violations = 0;
  double min_ratio = 1, max_ratio = 1;  // Delta_GVC / Delta_G over subsets with Delta_G > 0
  bool ok() const { return violations == 0; }
};
// checks Delta_G(S)/2 <= Delta_GVC(S) <= Delta_G(S) for every S of vc; |vc| <= 22
SchurReport schur_bound_check(const DynamicGraph& g, const std::vector<bool>& in_vc);

// non-leaf vertices of every tree, both ends of a single-edge tree
std::vector<VertexId> tree_two_approx_cover(const DynamicGraph& forest);

inline constexpr VertexId kNoOrigin = ~VertexId{0};

struct TaggedEdge {
  EdgeId id = 0;
  VertexId u = 0, v = 0;
  double weight = 0;
  VertexId origin = kNoOrigin;  // eliminated star, or none for e_empty
  EdgeId source = 0;            // the sparsifier edge behind an e_empty
};

// G_VC as a multigraph with edges tagged by the star they came from.
class EliminatedGraph {
 public:
  explicit EliminatedGraph(std::size_t n) : adj_(n) {}

  EdgeId add_plain(const WeightedEdge& src);
  void remove_plain(EdgeId source);
  bool has_plain(EdgeId source) const { return plain_.count(source) != 0; }
  void add_clique(VertexId x, const std::vector<CliqueEdge>& k);
  void remove_clique(VertexId x);
  std::size_t clique_size(VertexId x) const;

  const std::map<EdgeId, TaggedEdge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  DynamicGraph graph() const;
  // sorted (u, v, origin, weight) with u < v, for comparing against a rebuild
  std::vector<std::tuple<VertexId, VertexId, VertexId, double>> canonical() const;
  const std::set<std::tuple<VertexId, VertexId, EdgeId>>& adjacency(VertexId v) const { return adj_.at(v); }

  // net change since the last call
  ChangeSet drain();

 private:
  EdgeId insert(TaggedEdge e);
  void erase(EdgeId id);

  std::map<EdgeId, TaggedEdge> edges_;
  std::map<EdgeId, EdgeId> plain_;                  // source -> id
  std::map<VertexId, std::vector<EdgeId>> clique_;  // origin -> ids
  std::vector<std::set<std::tuple<VertexId, VertexId, EdgeId>>> adj_;  // (neighbor, origin, id)
  EdgeId next_ = 0;
  std::map<EdgeId, std::optional<TaggedEdge>> pending_;
};

// Builds canonical() of eliminate(g, vc) with origins, for test comparisons.
std::vector<std::tuple<VertexId, VertexId, VertexId, double>> eliminated_canonical(
    const DynamicGraph& g, const std::vector<bool>& in_vc);

// Branch vertex cover of a sparsifier given as a set of forests, with G_VC
// maintained alongside.  Forest changes must arrive removals first.
class BranchCover {
 public:
  BranchCover(std::size_t n, std::vector<VertexId> pinned);

  void remove(const ForestKey& key, EdgeId id);
  void add(const ForestKey& key, const WeightedEdge& e);

  bool in_vc(VertexId v) const { return in_vc_[v]; }
  const std::vector<bool>& cover() const { return in_vc_; }
  std::size_t cover_size() const;
  bool is_branch(VertexId v) const { return !branch_[v].empty(); }
  const std::set<ForestKey>& branch_forests(VertexId v) const { return branch_[v]; }
  const std::set<ForestKey>& leaf_forests(VertexId v) const { return leaf_[v]; }

  // the sparsifier as seen through the forests
  const std::map<EdgeId, WeightedEdge>& edges() const { return g_; }
  DynamicGraph graph() const;
  std::map<VertexId, double> star(VertexId x) const;
  std::size_t degree(VertexId v) const { return inc_[v].size(); }
  const std::set<EdgeId>& incident(VertexId v) const { return inc_[v]; }
  // vertices of one forest with degree >= 1 and their branch status
  std::vector<VertexId> forest_branch_vertices(const ForestKey& key) const;

  EliminatedGraph& eliminated() { return eg_; }
  const EliminatedGraph& eliminated() const { return eg_; }

  void insert_vc(VertexId v);
  void remove_vc(VertexId v);

  // vertices whose edges or cover status may have changed since the last call
  std::set<VertexId> drain_touched();

 private:
  using ForestAdj = std::map<VertexId, std::set<std::pair<VertexId, EdgeId>>>;
  std::size_t fdeg(const ForestAdj& f, VertexId v) const;
  void classify(const ForestKey& key, VertexId v);
  std::set<VertexId> candidates(const ForestKey& key, VertexId u, VertexId v) const;
  bool qualifies(VertexId v) const { return pinned_[v] || !branch_[v].empty(); }

  std::size_t n_;
  std::vector<bool> pinned_;
  std::vector<bool> in_vc_;
  std::map<ForestKey, ForestAdj> forests_;
  std::map<EdgeId, ForestKey> forest_of_;
  std::map<EdgeId, WeightedEdge> g_;
  std::vector<std::set<EdgeId>> inc_;
  std::vector<std::set<ForestKey>> leaf_, branch_;
  EliminatedGraph eg_;
  std::set<VertexId> touched_;
};

}  // namespace dynsparse
