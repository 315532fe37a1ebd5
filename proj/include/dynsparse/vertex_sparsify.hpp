#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "dynsparse/cut_sparsifier.hpp"
#include "dynsparse/elimination.hpp"
#include "dynsparse/graph.hpp"

namespace dynsparse {

using StarId = std::uint64_t;

// N_x with parallel spokes summed
struct Star {
  VertexId x = 0;
  std::map<VertexId, double> nbrs;
  bool operator==(const Star&) const = default;
};

// ceil(log2(w / gamma)): w in (gamma 2^(i-1), gamma 2^i] lands in bucket i
int star_bucket(double wmax, double gamma);

struct BucketedStar {
  VertexId xmax = 0;
  int bucket = 0;
  Star kept;                                     // spokes that stay in the bucket
  std::vector<std::pair<VertexId, double>> rerouted;  // (v, w) becomes (xmax, v)_x
};
// spokes lighter than (eps/d) * heaviest are rerouted onto the heaviest neighbour
BucketedStar bucket_star(const Star& s, std::size_t d, double eps, double gamma);

struct CoreEdge {
  VertexId u = 0, v = 0;
  double weight = 0;
  VertexId origin = kNoOrigin;
};

struct BucketedGraph {
  std::size_t n = 0;
  std::vector<CoreEdge> core;
  std::map<int, std::map<VertexId, Star>> buckets;
  std::map<VertexId, VertexId> xmax;
  DynamicGraph graph() const;
};

// in_vc must be a vertex cover; throws when a star has more than d spokes
BucketedGraph vertex_bucketing(const DynamicGraph& g, const std::vector<bool>& in_vc, std::size_t d,
                               double eps, double gamma = 1.0);

struct CliqueForestEdge {
  std::size_t forest = 0;
  VertexId u = 0, v = 0;
  bool operator==(const CliqueForestEdge&) const = default;
};

// Stars packed into forest j are the greedy (by id) basis of the matroid
// "one clique edge per star, edges form a forest" over the stars left by
// forests 0..j-1.  Edges are the canonical packing of that basis.
std::map<StarId, CliqueForestEdge> light_vertices(std::size_t n, const std::map<StarId, Star>& stars,
                                                  std::size_t t);

// heavy stars kept with probability 1/2 at double weight; coin keyed by (seed, id, level)
std::map<StarId, Star> sample_heavy(const std::map<StarId, Star>& stars, const std::set<StarId>& heavy,
                                    std::uint64_t seed, std::size_t level);

// ceil(2 log2 n)
std::size_t vertex_levels(std::size_t n);

struct BoundedLevel {
  std::map<StarId, Star> stars;  // weights already scaled by 2^level
  std::map<StarId, CliqueForestEdge> light;
  bool operator==(const BoundedLevel&) const = default;
};

struct BoundedSnapshot {
  std::vector<BoundedLevel> levels;  // 0..l-1
  std::map<StarId, Star> residual;   // G_l
  bool operator==(const BoundedSnapshot&) const = default;
  // light stars of every level plus the residual, by star id (each id at most once)
  std::map<StarId, Star> output() const;
  DynamicGraph graph(std::size_t n) const;
};

BoundedSnapshot bounded_vertex_sparsify(std::size_t n, const std::map<StarId, Star>& stars, std::size_t t,
                                        std::size_t levels, std::uint64_t seed);

// Dynamic bounded vertex sparsifier, one t-clique forest per level.
class BoundedVertexChain {
 public:
  BoundedVertexChain(std::size_t n, std::size_t t, std::size_t levels, std::uint64_t seed);

  void insert_star(StarId id, const Star& s);
  void remove_star(StarId id);

  bool contains(StarId id) const { return levels_[0].stars.count(id) != 0; }
  std::size_t num_levels() const { return levels_.size() - 1; }
  std::size_t t() const { return t_; }
  std::uint64_t seed() const { return seed_; }
  BoundedSnapshot snapshot() const;
  // (level, star) handed on to each level by the last call; at most one call per level
  const std::vector<std::size_t>& last_calls() const { return calls_; }
  // output stars that changed since the last call
  std::set<StarId> drain_touched();
  // current H contribution of a star id at its level, if any
  std::optional<Star> output_star(StarId id) const;
  // forests acyclic, at most one clique edge per star, heavy clique pairs
  // connected in every forest
  bool audit() const;

 private:
  using Packing = std::map<StarId, std::pair<VertexId, VertexId>>;
  struct Level {
    std::map<StarId, Star> stars;
    std::vector<std::set<StarId>> basis;  // per forest
    std::vector<Packing> packing;         // per forest, canonical for its basis
    std::map<StarId, std::size_t> light;  // star -> forest
  };
  void insert_at(std::size_t i, StarId id, Star s);
  void remove_at(std::size_t i, StarId id);
  void leave_forest(std::size_t i, std::size_t j, StarId id);

  std::size_t n_, t_;
  std::uint64_t seed_;
  std::vector<Level> levels_;  // the last one is the residual, without forests
  std::vector<std::size_t> calls_;
  std::set<StarId> touched_;
};

struct VertexSparsifyParams {
  double epsilon = 0.5;  // split evenly between bucketing and sparsification
  std::size_t d = 1;     // degree bound of independent vertices
  std::size_t t = 4;     // clique forests per level
  std::optional<std::size_t> levels;
  double gamma = 1.0;
  CutParams core;  // sparsifier of the core multigraph; its epsilon is overridden
  std::uint64_t seed = 1;
};

// Dynamic vertex sparsifier of a graph given through a branch cover: core
// multigraph (plain and rerouted edges) through a cut sparsifier, each
// weight bucket through a bounded vertex chain.
class VertexSparsifierState {
 public:
  VertexSparsifierState(std::size_t n, const VertexSparsifyParams& p);

  // bring x's representation in line with the cover: plain edges and star
  void sync(VertexId x, const BranchCover& bc);

  void insert_xg(VertexId x, const Star& s);
  void remove_xg(VertexId x);
  bool in_xg(VertexId x) const { return star_of_.count(x) != 0; }

  ChangeSet drain();
  const std::map<EdgeId, WeightedEdge>& sparsifier_edges() const { return h_; }
  DynamicGraph sparsifier() const;
  // the bucketed graph before sparsification
  DynamicGraph bucketed() const;
  std::vector<CoreEdge> core_edges() const;
  std::map<int, std::map<VertexId, Star>> buckets() const;
  const BoundedVertexChain* bucket_chain(int b) const;
  // live stars of one bucket by star id, as handed to its chain
  std::map<StarId, Star> bucket_stars(int b) const;
  const CutChain& core_chain() const { return *core_chain_; }
  std::size_t d() const { return p_.d; }

 private:
  struct XState {
    StarId id;
    int bucket;
    Star kept;
    std::vector<EdgeId> rerouted;  // core ids
  };
  EdgeId add_core(VertexId u, VertexId v, double w, VertexId origin);
  void remove_core(EdgeId id);
  void flush(int bucket);
  void touch(EdgeId hid);
  void apply_core(const ChangeSet& cs);
  BoundedVertexChain& chain(int b);

  std::size_t n_;
  VertexSparsifyParams p_;
  std::unique_ptr<CutChain> core_chain_;
  std::map<EdgeId, CoreEdge> core_;
  std::map<EdgeId, EdgeId> plain_;  // source edge -> core id
  std::vector<std::set<EdgeId>> plain_at_;  // per vertex, source ids
  std::map<VertexId, XState> star_of_;
  std::map<int, std::unique_ptr<BoundedVertexChain>> chains_;
  std::map<StarId, std::pair<int, VertexId>> star_home_;
  StarId next_star_ = 0;
  EdgeId next_core_ = 0;
  std::map<EdgeId, WeightedEdge> h_;
  struct OutStar {
    Star s;
    std::vector<EdgeId> ids;
  };
  std::map<StarId, OutStar> star_h_;
  std::map<EdgeId, std::optional<WeightedEdge>> pending_;
  EdgeId next_h_ = 0;
};

}  // namespace dynsparse
