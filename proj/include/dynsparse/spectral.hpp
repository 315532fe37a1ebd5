#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynsparse/graph.hpp"
#include "dynsparse/spanner.hpp"

namespace dynsparse {

struct SpectralParams {
  double epsilon = 0.5;
  double rho = 4;
  double c = 1;
  std::optional<std::size_t> t;          // practical override of the bundle size
  std::optional<std::size_t> spanner_k;  // default max(2, floor(log2 n / 4))
  double eps_w = 1.0;                    // weight-class granularity of the spanners
  std::uint64_t seed = 1;
};

// ceil(12 (c+1) alpha ln n / eps^2)
std::size_t static_spectral_t(double c, double alpha, double eps, double ln_n);
// the decremental version adds 2 to c
std::size_t dynamic_spectral_t(double c, double alpha, double eps, std::size_t n);

// t layered monotone spanners; layer i is built on G minus layers < i.
// Under deletions the residual G \ B only loses edges.
class TBundleSpanner {
 public:
  TBundleSpanner(std::size_t n, std::size_t t, std::size_t k, double eps_w, std::uint64_t seed,
                 const std::vector<WeightedEdge>& edges);

  struct Delta {
    ChangeSet bundle;                     // net change of B
    std::vector<EdgeId> residual_removed;
    std::vector<std::size_t> layer_deletions;  // deletions seen by each layer
  };
  Delta erase(EdgeId id);

  std::size_t num_layers() const { return layers_.size(); }
  const WeightClassSpanner& layer(std::size_t i) const { return layers_.at(i); }
  double alpha() const { return alpha_; }
  bool contains(EdgeId id) const { return edges_.count(id) != 0; }
  const std::map<EdgeId, WeightedEdge>& edges() const { return edges_; }
  const std::map<EdgeId, WeightedEdge>& bundle_edges() const { return b_; }
  const std::map<EdgeId, WeightedEdge>& residual() const { return residual_; }

 private:
  std::vector<WeightClassSpanner> layers_;
  double alpha_;
  std::map<EdgeId, WeightedEdge> edges_, b_, residual_;
};

// Bundle plus the residual kept with probability 1/4 at four times its weight.
class LightSpectralState {
 public:
  LightSpectralState(std::size_t n, std::size_t t, std::size_t k, double eps_w, std::uint64_t seed,
                     int level, const std::vector<WeightedEdge>& edges);

  struct Delta {
    ChangeSet h;                         // net change of H = B + H'
    ChangeSet bundle;
    std::vector<EdgeId> sampled_removed;  // deletions handed to the next level
  };
  Delta erase(EdgeId id);

  const TBundleSpanner& bundle() const { return bundle_; }
  const std::map<EdgeId, WeightedEdge>& sampled() const { return sampled_; }
  std::map<EdgeId, WeightedEdge> sparsifier() const;

 private:
  TBundleSpanner bundle_;
  std::map<EdgeId, WeightedEdge> sampled_;
};

// Decremental chain of light sparsifiers, H = B_1 + ... + B_k + G_k.
class SpectralChain {
 public:
  SpectralChain(std::size_t n, const SpectralParams& p, const std::vector<WeightedEdge>& edges);

  ChangeSet erase(EdgeId id);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_levels() const { return levels_.size(); }
  std::size_t planned_levels() const { return planned_; }
  std::size_t bundle_t() const { return t_; }
  const LightSpectralState& level(std::size_t i) const { return levels_.at(i); }
  bool contains(EdgeId id) const { return input_.count(id) != 0; }
  const std::map<EdgeId, WeightedEdge>& input() const { return input_; }
  const std::map<EdgeId, WeightedEdge>& final_residual() const;
  const std::map<EdgeId, WeightedEdge>& sparsifier_edges() const { return h_; }
  DynamicGraph sparsifier() const;

 private:
  std::size_t n_;
  std::size_t t_ = 0;
  std::size_t planned_ = 0;
  std::vector<LightSpectralState> levels_;
  std::map<EdgeId, WeightedEdge> input_;
  std::map<EdgeId, WeightedEdge> h_;
};

// Fully dynamic sparsifier from decremental chains: a binary insertion
// counter decides which edge sets E_1, E_2, ... merge, and E_j is rebuilt
// from scratch when bit j turns on.  |E_i| <= 2^(i-1).
class FullyDynamicWrapper {
 public:
  FullyDynamicWrapper(std::size_t n, const SpectralParams& p);

  ChangeSet apply(const UpdateEvent& ev);

  std::size_t num_sets() const { return sets_.size(); }
  // 1-based, as the counter bits
  const std::map<EdgeId, WeightedEdge>& set(std::size_t i) const { return sets_.at(i - 1); }
  std::uint64_t counter() const { return counter_; }
  std::size_t restarts() const { return restarts_; }
  bool counter_invariant() const;
  const std::map<EdgeId, WeightedEdge>& sparsifier_edges() const { return h_; }
  DynamicGraph sparsifier() const;
  const std::map<EdgeId, WeightedEdge>& edges() const { return owner_edges_; }

 private:
  std::size_t n_;
  SpectralParams params_;
  std::vector<std::map<EdgeId, WeightedEdge>> sets_;
  std::vector<std::unique_ptr<SpectralChain>> chains_;
  std::map<EdgeId, std::size_t> owner_;
  std::map<EdgeId, WeightedEdge> owner_edges_;
  std::map<EdgeId, WeightedEdge> h_;
  std::uint64_t counter_ = 0;
  std::size_t restarts_ = 0;
};

}  // namespace dynsparse
