#pragma once

#include <utility>
#include <vector>

#include "dynsparse/graph.hpp"
#include "dynsparse/msf.hpp"

namespace dynsparse::oracle {

struct RatioRange {
  double min = 1.0;
  double max = 1.0;
  bool within(double lo, double hi) const {
    return min >= lo * (1 - kRelSlack) && max <= hi * (1 + kRelSlack);
  }
};

// ratio num/den with 0/0 = 1, 0/x = 0, x/0 = inf
double cut_ratio(double num, double den);

// extremes of w_G(S)/w_H(S) over nonempty proper S; n <= 24
RatioRange all_cuts_ratio(const DynamicGraph& g, const DynamicGraph& h);

// extremes of x'L_G x / x'L_H x over x orthogonal to the common kernel;
// throws if G and H have different connected components; n <= 60
RatioRange quad_form_extremes(const DynamicGraph& g, const DynamicGraph& h);

// symmetric eigenvalues by cyclic Jacobi; eigenvectors as columns of vecs
std::vector<double> jacobi_eigen(std::vector<std::vector<double>> a,
                                 std::vector<std::vector<double>>* vecs = nullptr);

std::vector<std::vector<double>> laplacian(const DynamicGraph& g);

double effective_resistance(const DynamicGraph& g, VertexId u, VertexId v);

struct StCut {
  double value = 0;
  std::vector<bool> source_side;
};
// exact max-flow (Dinic) on the undirected graph
StCut exact_min_st_cut(const DynamicGraph& g, VertexId s, VertexId t);
double local_connectivity(const DynamicGraph& g, VertexId u, VertexId v);

// shortest path lengths with edge length 1/w
std::vector<double> resistance_distances(const DynamicGraph& g, VertexId src);
// max over edges (u,v) of G of d_H(u,v) * w(u,v); inf if H disconnects an edge
double max_stretch(const DynamicGraph& g, const DynamicGraph& h);
bool stretch_check(const DynamicGraph& g, const DynamicGraph& h, double alpha);

struct KruskalResult {
  std::vector<EdgeId> edges;  // sorted ids
  double weight = 0;
};
KruskalResult kruskal_msf(const DynamicGraph& g, ForestOrder order = ForestOrder::Min);

// Delta of S inside VC, extending every vertex outside VC to its cheaper side.
// Vertices outside VC must form an independent set.
double min_extension_value(const DynamicGraph& g, const std::vector<bool>& in_vc,
                           const std::vector<bool>& in_s);

// extremes over nonempty proper S of VC of ext_G(S)/ext_H(S); |VC| <= 20
RatioRange terminal_cut_ratio(const DynamicGraph& g, const DynamicGraph& h,
                              const std::vector<VertexId>& vc);

// min vertex cover of a forest, by DP
std::size_t tree_mvc_size(const DynamicGraph& forest);
// max matching of a bipartite graph (side[v] = 0/1), equal to its min vertex cover
std::size_t bipartite_max_matching(const DynamicGraph& g, const std::vector<int>& side);

std::vector<int> components(const DynamicGraph& g);

}  // namespace dynsparse::oracle
