#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dynsparse/graph.hpp"
#include "dynsparse/msf.hpp"

namespace dynsparse {

// Exact: one maximum spanning forest per layer (an alpha-MST with alpha = 1).
// Bucketed: one spanning forest per weight class per layer (alpha = 2).
enum class BundleMode { Exact, Bucketed };

struct LayerForestChange {
  std::size_t layer = 0;
  int wclass = 0;  // always 0 in exact mode
  std::optional<WeightedEdge> added;
  std::optional<EdgeId> removed;
};

struct BundleDelta {
  std::vector<LayerForestChange> forests;
  // the single update that falls through all layers, if any
  std::optional<UpdateEvent> residual;

  ChangeSet residual_changes() const;
  // net change of the bundle edge set (union of the layer forests)
  ChangeSet bundle_changes() const;
};

// t layered forests T_1..T_t where T_i spans G minus T_1..T_{i-1}.
// Each update touches each layer at most once and hands at most one update
// to the next layer.
class BundleChain {
 public:
  BundleChain(std::size_t n, std::size_t t, BundleMode mode, double gamma = 1.0);

  BundleDelta apply(const UpdateEvent& ev);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_layers() const { return layers_.size(); }
  BundleMode mode() const { return mode_; }
  double alpha() const { return mode_ == BundleMode::Exact ? 1.0 : 2.0; }

  bool contains(EdgeId id) const { return layers_.empty() ? residual_.count(id) != 0 : layers_[0].input.count(id) != 0; }
  std::optional<std::size_t> layer_of(EdgeId id) const;
  std::vector<WeightedEdge> layer_forest(std::size_t i) const;
  std::map<int, std::vector<WeightedEdge>> layer_class_forests(std::size_t i) const;
  std::vector<WeightedEdge> layer_input(std::size_t i) const;
  const std::map<EdgeId, WeightedEdge>& residual() const { return residual_; }
  std::size_t bundle_size() const;
  // every forest passes its own audit
  bool audit() const;

 private:
  struct Layer {
    std::map<EdgeId, WeightedEdge> input;
    std::map<EdgeId, WeightedEdge> tree;
    std::map<int, MsfInstance> forests;
  };

  int class_of(const WeightedEdge& e) const;
  MsfInstance& forest_for(Layer& l, int c);

  std::size_t n_;
  BundleMode mode_;
  double gamma_;
  std::vector<Layer> layers_;
  std::map<EdgeId, WeightedEdge> residual_;
};

// every edge (u,v) of graph is joined in forest by a path whose edges all
// weigh at least w(u,v)/alpha
bool alpha_mst_verify(std::size_t n, const std::vector<WeightedEdge>& forest,
                      const std::vector<WeightedEdge>& graph, double alpha);

}  // namespace dynsparse
