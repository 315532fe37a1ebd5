#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynsparse/bundle.hpp"
#include "dynsparse/graph.hpp"

namespace dynsparse {

struct CutParams {
  double epsilon = 0.5;
  double rho = 4;
  double c = 1;
  std::optional<std::size_t> t;  // practical override of the per-level bundle size
  double c_xi = 1;
  BundleMode mode = BundleMode::Exact;
  double gamma = 1.0;
  std::optional<std::size_t> m_hint;  // expected edge count, caps the level count
  double wmax = 1;                    // weight ratio used by the theory formula
  std::uint64_t seed = 1;
};

// ceil(log2 min(rho, m/((c+2) log2 n))), never negative
std::size_t cut_levels(double rho, std::optional<std::size_t> m, double c, std::size_t n);
// ceil(c_xi * c * alpha * log W * log^2 n / eps^2)
std::size_t theory_bundle_t(double c, double alpha, double wmax, std::size_t n, double eps,
                            double c_xi);

inline constexpr EdgeId kNoSingleton = ~EdgeId{0};

// A bundle forest (level, layer, weight class), or a single residual edge.
struct ForestKey {
  int level = 0;
  int layer = 0;
  int wclass = 0;
  EdgeId singleton = kNoSingleton;
  bool is_singleton() const { return singleton != kNoSingleton; }
  auto operator<=>(const ForestKey&) const = default;
};

struct ForestChange {
  ForestKey key;
  std::optional<WeightedEdge> added;
  std::optional<EdgeId> removed;
};

// One level: a t-bundle of the input plus the residual sampled with
// probability 1/4 at four times its weight.
class LightCutState {
 public:
  LightCutState(std::size_t n, std::size_t t, BundleMode mode, double gamma, std::uint64_t seed,
                int level);

  struct Delta {
    BundleDelta bundle;
    ChangeSet sampled;  // change to the sampled residual, at most one edge
  };
  Delta apply(const UpdateEvent& ev);

  const BundleChain& bundle() const { return bundle_; }
  const std::map<EdgeId, WeightedEdge>& sampled() const { return sampled_; }
  std::map<EdgeId, WeightedEdge> sparsifier() const;

 private:
  BundleChain bundle_;
  std::uint64_t seed_;
  int level_;
  std::map<EdgeId, WeightedEdge> sampled_;
};

class CutChain {
 public:
  CutChain(std::size_t n, const CutParams& p);

  struct Delta {
    std::vector<std::size_t> level_inputs;  // updates reaching G_0..G_{k-1}
    ChangeSet sparsifier;
    std::vector<ForestChange> forests;
    std::size_t residual_changes = 0;  // updates reaching G_k
  };
  Delta apply(const UpdateEvent& ev);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_levels() const { return levels_.size(); }
  std::size_t bundle_t() const { return t_; }
  const CutParams& params() const { return params_; }

  const std::map<EdgeId, WeightedEdge>& input() const { return input_; }
  const std::map<EdgeId, WeightedEdge>& sparsifier_edges() const { return h_; }
  DynamicGraph sparsifier() const;
  const LightCutState& level(std::size_t i) const { return levels_.at(i); }
  // edges of G_k, the last sampled residual
  const std::map<EdgeId, WeightedEdge>& residual() const;

  std::map<ForestKey, std::vector<WeightedEdge>> forests() const;
  std::size_t forest_degree(const ForestKey& key, VertexId v) const;

 private:
  void touch(EdgeId id, std::map<EdgeId, std::optional<WeightedEdge>>& before) const;

  std::size_t n_;
  CutParams params_;
  std::size_t t_;
  std::vector<LightCutState> levels_;
  std::map<EdgeId, WeightedEdge> input_;
  std::map<EdgeId, WeightedEdge> h_;
};

// union of disjoint parts; throws on an id present in two parts
DynamicGraph decompose_union(std::size_t n, const std::vector<const std::map<EdgeId, WeightedEdge>*>& parts);

// Two cut chains with alternating roles over phases of n^2 events: new
// edges go to the growing side and one edge per event migrates from the
// shrinking side, which empties by the end of the phase.
class BlendWrapper {
 public:
  BlendWrapper(std::size_t n, const CutParams& p, std::optional<std::size_t> phase_length = std::nullopt);

  ChangeSet apply(const UpdateEvent& ev);

  DynamicGraph sparsifier() const;
  const std::map<EdgeId, WeightedEdge>& sparsifier_edges() const { return h_; }
  const std::map<EdgeId, WeightedEdge>& side_edges(int side) const { return sides_[side]; }
  const CutChain& instance(int side) const { return *inst_[side]; }
  int growing() const { return grow_; }
  std::size_t phase() const { return phase_; }
  std::size_t phase_length() const { return phase_len_; }
  std::size_t last_updates(int side) const { return updates_[side]; }
  // edges moved in bulk at the end of a phase (only possible with many parallel edges)
  std::size_t bulk_moves() const { return bulk_moves_; }

 private:
  void send(int side, const UpdateEvent& ev, std::map<EdgeId, std::optional<WeightedEdge>>& before);
  std::unique_ptr<CutChain> fresh(std::size_t salt) const;
  void migrate_one(std::map<EdgeId, std::optional<WeightedEdge>>& before);

  std::size_t n_;
  CutParams params_;
  std::size_t phase_len_;
  std::unique_ptr<CutChain> inst_[2];
  std::map<EdgeId, WeightedEdge> sides_[2];
  std::map<EdgeId, int> owner_;
  std::map<EdgeId, WeightedEdge> h_;
  int grow_ = 0;
  std::size_t in_phase_ = 0;
  std::size_t phase_ = 0;
  std::size_t updates_[2] = {0, 0};
  std::size_t bulk_moves_ = 0;
};

}  // namespace dynsparse
