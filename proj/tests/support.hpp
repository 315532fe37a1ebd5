#pragma once

#include <random>
#include <vector>

#include "dynsparse/graph.hpp"

namespace testsupport {

using dynsparse::EdgeId;
using dynsparse::VertexId;
using dynsparse::WeightedEdge;

inline std::vector<WeightedEdge> gnp(std::size_t n, double p, std::uint64_t seed, int wmax = 1,
                                     EdgeId first_id = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<WeightedEdge> out;
  EdgeId id = first_id;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (u(rng) < p) out.push_back({id++, a, b, static_cast<double>(1 + rng() % wmax)});
  return out;
}

inline dynsparse::DynamicGraph to_graph(std::size_t n, const std::vector<WeightedEdge>& es) {
  dynsparse::DynamicGraph g(n);
  for (const auto& e : es) g.insert_edge(e);
  return g;
}

template <class Map>
dynsparse::DynamicGraph map_graph(std::size_t n, const Map& m) {
  dynsparse::DynamicGraph g(n);
  for (const auto& [id, e] : m) g.insert_edge(e);
  return g;
}

}  // namespace testsupport
