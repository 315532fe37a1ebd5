#pragma once

#include <string>

#include "dynsparse/cli/stream.hpp"

namespace dynsparse::cli {

struct GenerateParams {
  std::string kind;  // gnp, bipartite-churn, delete-all, phase-stress
  std::size_t n = 10;
  double p = 0.5;
  std::size_t a = 20, b = 20;  // bipartite-churn sides
  std::size_t events = 0;      // churn events after the build-up (gnp), or total (churn kinds)
  double insert_prob = 0.6;
  std::size_t wmax = 1;  // integer weights drawn from 1..wmax
  std::size_t phases = 2;  // phase-stress: n^2 boundaries crossed
  std::uint64_t seed = 1;
};

// deterministic for a given parameter set; throws std::invalid_argument
StreamFile generate(const GenerateParams& p);

}  // namespace dynsparse::cli
