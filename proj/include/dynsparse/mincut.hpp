#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynsparse/cut_sparsifier.hpp"
#include "dynsparse/elimination.hpp"
#include "dynsparse/graph.hpp"
#include "dynsparse/vertex_sparsify.hpp"

namespace dynsparse {

enum class MinCutMode { TwoEps, OneEps };

struct MinCutParams {
  MinCutMode mode = MinCutMode::TwoEps;
  double epsilon = 0.5;
  double rho = 4;
  double c = 1;
  std::optional<std::size_t> t;         // practical bundle size for every cut chain
  std::optional<std::size_t> vertex_t;  // clique forests per level (one_eps); defaults to t
  std::uint64_t seed = 1;
};

struct FlowResult {
  double value = 0;
  std::vector<bool> source_side;
};
// blocking-flow max flow on an undirected multigraph
FlowResult max_flow(const DynamicGraph& g, VertexId s, VertexId t);

// Dynamic approximate min s-t cut of a bipartite graph A x B with unit
// s-A and B-t edges.  Vertices: A = 0..a-1, B = a..a+b-1, then s and t.
class BipartiteMinCut {
 public:
  BipartiteMinCut(std::size_t a, std::size_t b, const MinCutParams& p);

  // events on A x B edges, unit weight; ids are the caller's
  void apply(const UpdateEvent& ev);

  VertexId s() const { return static_cast<VertexId>(a_ + b_); }
  VertexId t() const { return static_cast<VertexId>(a_ + b_ + 1); }
  std::size_t num_vertices() const { return a_ + b_ + 2; }
  MinCutMode mode() const { return p_.mode; }

  // true when v is on the source side of the maintained cut
  bool side(VertexId v) const;
  std::vector<bool> cut() const;
  // weight in G of the maintained cut
  double value() const;
  // Delta_H of the cached cover cut at the last recompute
  double estimate() const { return delta_h_; }
  bool opt_zero() const { return zero_; }

  // the input graph with its s/t stars, caller ids offset by a + b
  const DynamicGraph& graph() const { return g_; }
  DynamicGraph sparsifier() const;  // G~
  DynamicGraph h_graph() const;
  const BranchCover& cover() const { return bc_; }
  const std::vector<bool>& cached_cut() const { return s_hat_; }

  struct Window {
    std::size_t steps = 0;   // events between two recomputes
    std::size_t budget = 0;  // floor(eps/2 * Delta_H), at least 1
  };
  const std::vector<Window>& windows() const { return windows_; }
  std::size_t recomputes() const { return recomputes_; }
  std::size_t steps_since_recompute() const { return since_; }
  std::size_t budget() const { return budget_; }

 private:
  void feed(const UpdateEvent& ev);
  void recompute();

  std::size_t a_, b_;
  MinCutParams p_;
  DynamicGraph g_;
  std::unique_ptr<CutChain> gt_;
  BranchCover bc_;
  std::unique_ptr<CutChain> h2_;  // two_eps: sparsified G_VC
  std::unique_ptr<VertexSparsifierState> vs_;  // one_eps
  std::vector<bool> s_hat_;
  std::vector<bool> vc_then_;  // cover at the last recompute
  double delta_h_ = 0;
  bool zero_ = true;
  std::size_t budget_ = 1, since_ = 0, recomputes_ = 0;
  std::vector<Window> windows_;
};

// internal id of a caller's A x B edge
inline EdgeId mincut_edge_id(std::size_t a, std::size_t b, EdgeId id) { return a + b + id; }

struct VcOptReport {
  std::size_t mvc = 0;  // minimum vertex cover of G with its s/t stars
  double opt = 0;       // min s-t cut
  bool ok() const { return static_cast<double>(mvc) <= opt + 2 + 1e-9; }
};
// g over A = 0..a-1, B = a..a+b-1; stars are added here
VcOptReport vc_opt_bound_check(std::size_t a, std::size_t b, const std::vector<std::pair<VertexId, VertexId>>& ab);

}  // namespace dynsparse
