#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "dynsparse/graph.hpp"

namespace dynsparse {

// Link-cut tree with edges as their own nodes, used for path-worst queries
// on a spanning forest.  `worse(a, b)` must be a strict order on edges;
// the query returns the edge that is worst under it.
class LinkCutTree {
 public:
  using Worse = std::function<bool(const WeightedEdge&, const WeightedEdge&)>;

  LinkCutTree(std::size_t n, Worse worse);

  void link(const WeightedEdge& e);
  void cut(EdgeId id);
  bool connected(VertexId u, VertexId v);
  // the worst edge on the u-v path; u and v must be connected and distinct
  WeightedEdge path_worst(VertexId u, VertexId v);
  bool has_edge(EdgeId id) const { return edge_node_.count(id) != 0; }

 private:
  struct Node {
    int ch[2] = {-1, -1};
    int p = -1;
    bool rev = false;
    int worst = -1;  // node index of the worst edge node in the splay subtree
    bool is_edge = false;
    WeightedEdge e;
  };

  bool is_root(int x) const;
  void push(int x);
  void pull(int x);
  void rotate(int x);
  void splay(int x);
  void access(int x);
  void make_root(int x);
  int find_root(int x);
  void link_nodes(int x, int y);
  void cut_nodes(int x, int y);
  int pick(int a, int b) const;

  std::size_t n_;
  std::vector<Node> t_;
  std::vector<int> free_;
  std::unordered_map<EdgeId, int> edge_node_;
  Worse worse_;
};

}  // namespace dynsparse
