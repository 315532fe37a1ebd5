#include "dynsparse/cli/generate.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace dynsparse::cli {

namespace {

// raw engine output only, so streams do not depend on the standard library's distributions
struct Rng {
  std::mt19937_64 e;
  explicit Rng(std::uint64_t s) : e(s) {}
  double unit() { return static_cast<double>(e() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t k) { return static_cast<std::size_t>(e() % k); }
};

struct Builder {
  StreamFile f;
  std::vector<std::pair<EdgeId, std::pair<VertexId, VertexId>>> live;
  std::set<std::pair<VertexId, VertexId>> pairs;
  EdgeId next = 0;

  void insert(VertexId u, VertexId v, double w) {
    StreamLine s;
    s.kind = LineKind::Insert;
    s.u = u;
    s.v = v;
    s.w = w;
    s.id = next++;
    f.lines.push_back(s);
    live.push_back({s.id, {std::min(u, v), std::max(u, v)}});
    pairs.insert(live.back().second);
  }
  void erase_at(std::size_t i) {
    StreamLine s;
    s.kind = LineKind::Delete;
    s.id = live[i].first;
    f.lines.push_back(s);
    pairs.erase(live[i].second);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
  }
};

double weight(Rng& r, std::size_t wmax) { return static_cast<double>(1 + r.below(wmax)); }

void gnp_edges(Builder& b, Rng& r, std::size_t n, double p, std::size_t wmax) {
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (r.unit() < p) b.insert(u, v, weight(r, wmax));
}

void churn(Builder& b, Rng& r, std::size_t events, double ins, std::size_t wmax,
           const std::function<std::pair<VertexId, VertexId>()>& pick, std::size_t max_pairs) {
  for (std::size_t k = 0; k < events; ++k) {
    bool can_insert = b.pairs.size() < max_pairs;
    if (b.live.empty() || (can_insert && r.unit() < ins)) {
      std::pair<VertexId, VertexId> e;
      do e = pick(); while (b.pairs.count({std::min(e.first, e.second), std::max(e.first, e.second)}));
      b.insert(e.first, e.second, weight(r, wmax));
    } else {
      b.erase_at(r.below(b.live.size()));
    }
  }
}

}  // namespace

StreamFile generate(const GenerateParams& p) {
  if (p.wmax < 1) throw std::invalid_argument("generate: wmax must be at least 1");
  if (!(p.p >= 0 && p.p <= 1)) throw std::invalid_argument("generate: p must be in [0,1]");
  if (!(p.insert_prob > 0 && p.insert_prob <= 1)) throw std::invalid_argument("generate: insert_prob must be in (0,1]");
  Rng r(p.seed);
  Builder b;
  auto& h = b.f.header;
  h.seed = p.seed;
  if (p.wmax > 1) h.wmax = static_cast<double>(p.wmax);
  const std::size_t n = p.n;
  auto any_pair = [&] {
    VertexId u = static_cast<VertexId>(r.below(n)), v;
    do v = static_cast<VertexId>(r.below(n)); while (v == u);
    return std::pair{u, v};
  };
  if (p.kind == "gnp") {
    if (n < 2) throw std::invalid_argument("generate: n must be at least 2");
    h.n = n;
    gnp_edges(b, r, n, p.p, p.wmax);
    churn(b, r, p.events, p.insert_prob, p.wmax, any_pair, n * (n - 1) / 2);
  } else if (p.kind == "delete-all") {
    if (n < 2) throw std::invalid_argument("generate: n must be at least 2");
    h.n = n;
    gnp_edges(b, r, n, p.p, p.wmax);
    while (!b.live.empty()) b.erase_at(r.below(b.live.size()));
  } else if (p.kind == "bipartite-churn") {
    if (p.a == 0 || p.b == 0) throw std::invalid_argument("generate: both sides must be non-empty");
    if (p.wmax != 1) throw std::invalid_argument("generate: bipartite-churn uses unit weights");
    h.n = p.a + p.b;
    h.a = p.a;
    h.b = p.b;
    h.mode = "mincut2";
    auto ab = [&] {
      return std::pair{static_cast<VertexId>(r.below(p.a)), static_cast<VertexId>(p.a + r.below(p.b))};
    };
    churn(b, r, p.events, p.insert_prob, 1, ab, p.a * p.b);
  } else if (p.kind == "phase-stress") {
    if (n < 2) throw std::invalid_argument("generate: n must be at least 2");
    if (p.phases == 0) throw std::invalid_argument("generate: phases must be positive");
    h.n = n;
    h.mode = "cut";
    // parallel edges allowed, so pairs never run out; half a phase past the last boundary
    const std::size_t total = n * n * p.phases + n * n / 2;
    for (std::size_t k = 0; k < total; ++k) {
      if (b.live.empty() || r.unit() < p.insert_prob) {
        auto [u, v] = any_pair();
        b.insert(u, v, weight(r, p.wmax));
      } else {
        b.erase_at(r.below(b.live.size()));
      }
    }
  } else {
    throw std::invalid_argument("generate: unknown kind '" + p.kind + "'");
  }
  std::size_t line = 1;
  for (auto& s : b.f.lines) s.line = line++;
  return b.f;
}

}  // namespace dynsparse::cli
