#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dynsparse/graph.hpp"

namespace dynsparse {

// Euler tours of a dynamic forest, each kept as a treap with implicit keys.
// Every vertex has one occurrence node; every tree edge has two arc nodes.
// Vertex nodes carry two mark bits whose subtree-ors allow finding marked
// vertices of a component quickly.
class EulerTourForest {
 public:
  explicit EulerTourForest(std::size_t n, std::uint64_t seed = 0x1234);

  std::size_t num_vertices() const { return n_; }
  void link(VertexId u, VertexId v, EdgeId id);
  void cut(EdgeId id);
  bool has_edge(EdgeId id) const { return arcs_.count(id) != 0; }
  std::size_t num_edges() const { return arcs_.size(); }

  bool connected(VertexId u, VertexId v) const;
  std::size_t component_size(VertexId v) const;
  std::vector<VertexId> component(VertexId v) const;

  void set_mark(VertexId v, int bit, bool on);
  bool mark(VertexId v, int bit) const;
  std::vector<VertexId> marked_in_component(VertexId v, int bit) const;

 private:
  struct Node {
    int l = -1, r = -1, p = -1;
    std::uint32_t prio = 0;
    std::uint32_t size = 1;
    std::uint32_t vcount = 0;
    std::int64_t vertex = -1;
    std::uint8_t marks = 0;
    std::uint8_t agg = 0;
  };

  int new_node(std::int64_t vertex);
  void free_node(int x);
  void pull(int x);
  int root_of(int x) const;
  std::size_t position(int x) const;
  int merge(int a, int b);
  void split(int t, std::size_t k, int& a, int& b);  // first k nodes go to a
  int reroot(VertexId v);
  void collect(int x, int bit, std::vector<VertexId>& out) const;

  std::size_t n_;
  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::unordered_map<EdgeId, std::pair<int, int>> arcs_;
  std::uint64_t rng_;
};

}  // namespace dynsparse
