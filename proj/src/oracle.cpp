#include "dynsparse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace dynsparse::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Dsu {
  std::vector<std::size_t> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

void require_same_n(const DynamicGraph& g, const DynamicGraph& h) {
  if (g.num_vertices() != h.num_vertices()) throw std::invalid_argument("vertex-set mismatch");
}

void widen(RatioRange& r, double x, bool& first) {
  if (first) {
    r.min = r.max = x;
    first = false;
  } else {
    r.min = std::min(r.min, x);
    r.max = std::max(r.max, x);
  }
}

std::vector<std::vector<std::pair<VertexId, double>>> weighted_adj(const DynamicGraph& g) {
  std::vector<std::vector<std::pair<VertexId, double>>> adj(g.num_vertices());
  for (const auto& [id, e] : g.edges()) {
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
  }
  return adj;
}

}  // namespace

double cut_ratio(double num, double den) {
  if (den == 0) return num == 0 ? 1.0 : kInf;
  return num / den;
}

RatioRange all_cuts_ratio(const DynamicGraph& g, const DynamicGraph& h) {
  require_same_n(g, h);
  const std::size_t n = g.num_vertices();
  if (n > 24) throw std::invalid_argument("all_cuts_ratio: n too large");
  RatioRange r;
  if (n < 2) return r;
  auto ag = weighted_adj(g), ah = weighted_adj(h);
  const long double zg = 1e-12L * (1 + g.total_weight());
  const long double zh = 1e-12L * (1 + h.total_weight());
  std::vector<char> in(n, 0);
  long double cg = 0, ch = 0;
  bool first = true;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < total; ++k) {
    // gray code: flip the lowest set bit of k
    unsigned x = static_cast<unsigned>(__builtin_ctzll(k));
    for (auto [y, w] : ag[x]) cg += (in[x] == in[y]) ? w : -static_cast<long double>(w);
    for (auto [y, w] : ah[x]) ch += (in[x] == in[y]) ? w : -static_cast<long double>(w);
    in[x] ^= 1;
    double vg = std::fabs(cg) <= zg ? 0.0 : static_cast<double>(cg);
    double vh = std::fabs(ch) <= zh ? 0.0 : static_cast<double>(ch);
    widen(r, cut_ratio(vg, vh), first);
  }
  return r;
}

std::vector<std::vector<double>> laplacian(const DynamicGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (const auto& [id, e] : g.edges()) {
    l[e.u][e.u] += e.weight;
    l[e.v][e.v] += e.weight;
    l[e.u][e.v] -= e.weight;
    l[e.v][e.u] -= e.weight;
  }
  return l;
}

std::vector<double> jacobi_eigen(std::vector<std::vector<double>> a,
                                 std::vector<std::vector<double>>* vecs) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  double norm = 0;
  for (auto& row : a)
    for (double x : row) norm += x * x;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off <= 1e-30 * (norm + 1e-300)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  if (vecs) *vecs = std::move(v);
  return ev;
}

std::vector<int> components(const DynamicGraph& g) {
  const std::size_t n = g.num_vertices();
  Dsu d(n);
  for (const auto& [id, e] : g.edges()) d.unite(e.u, e.v);
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> root_label(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    auto r = d.find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

RatioRange quad_form_extremes(const DynamicGraph& g, const DynamicGraph& h) {
  require_same_n(g, h);
  const std::size_t n = g.num_vertices();
  if (n > 60) throw std::invalid_argument("quad_form_extremes: n too large");
  if (components(g) != components(h)) throw std::invalid_argument("kernel mismatch");
  RatioRange r;
  if (g.num_edges() == 0) return r;
  std::vector<std::vector<double>> u;
  auto lam = jacobi_eigen(laplacian(g), &u);
  double lmax = *std::max_element(lam.begin(), lam.end());
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (lam[i] > 1e-9 * lmax) keep.push_back(i);
  const std::size_t k = keep.size();
  // B = D^{-1/2} U' L_H U D^{-1/2}; its eigenvalues are x'L_H x / x'L_G x
  auto lh = laplacian(h);
  std::vector<std::vector<double>> hu(n, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0;
      for (std::size_t b = 0; b < n; ++b) s += lh[a][b] * u[b][keep[j]];
      hu[a][j] = s;
    }
  std::vector<std::vector<double>> bm(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0;
      for (std::size_t a = 0; a < n; ++a) s += u[a][keep[i]] * hu[a][j];
      bm[i][j] = s / std::sqrt(lam[keep[i]] * lam[keep[j]]);
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) bm[i][j] = bm[j][i] = 0.5 * (bm[i][j] + bm[j][i]);
  auto mu = jacobi_eigen(bm);
  bool first = true;
  for (double m : mu) widen(r, m > 1e-12 ? 1.0 / m : kInf, first);
  return r;
}

double effective_resistance(const DynamicGraph& g, VertexId u, VertexId v) {
  const std::size_t n = g.num_vertices();
  if (u >= n || v >= n) throw std::out_of_range("effective_resistance: vertex out of range");
  if (u == v) return 0.0;
  auto comp = components(g);
  if (comp[u] != comp[v]) throw std::invalid_argument("effective_resistance: disconnected pair");
  std::vector<VertexId> vs;
  std::vector<int> idx(n, -1);
  for (VertexId x = 0; x < n; ++x)
    if (comp[x] == comp[u] && x != v) {
      idx[x] = static_cast<int>(vs.size());
      vs.push_back(x);
    }
  const std::size_t k = vs.size();
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (const auto& [id, e] : g.edges()) {
    int i = idx[e.u], j = idx[e.v];
    if (comp[e.u] != comp[u]) continue;
    if (i >= 0) a[i][i] += e.weight;
    if (j >= 0) a[j][j] += e.weight;
    if (i >= 0 && j >= 0) {
      a[i][j] -= e.weight;
      a[j][i] -= e.weight;
    }
  }
  a[idx[u]][k] = 1.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || a[r][c] == 0) continue;
      double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return a[idx[u]][k] / a[idx[u]][idx[u]];
}

namespace {

struct Dinic {
  struct Arc {
    std::size_t to;
    double cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> out;
  std::vector<int> dist;
  std::vector<std::size_t> it;

  explicit Dinic(std::size_t n) : out(n), dist(n), it(n) {}
  void add_undirected(std::size_t a, std::size_t b, double c) {
    out[a].push_back(arcs.size());
    arcs.push_back({b, c});
    out[b].push_back(arcs.size());
    arcs.push_back({a, c});
  }
  bool bfs(std::size_t s, std::size_t t) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto x = q.front();
      q.pop();
      for (auto a : out[x])
        if (arcs[a].cap > 1e-12 && dist[arcs[a].to] < 0) {
          dist[arcs[a].to] = dist[x] + 1;
          q.push(arcs[a].to);
        }
    }
    return dist[t] >= 0;
  }
  double dfs(std::size_t x, std::size_t t, double f) {
    if (x == t) return f;
    for (; it[x] < out[x].size(); ++it[x]) {
      auto a = out[x][it[x]];
      auto y = arcs[a].to;
      if (arcs[a].cap > 1e-12 && dist[y] == dist[x] + 1) {
        double got = dfs(y, t, std::min(f, arcs[a].cap));
        if (got > 0) {
          arcs[a].cap -= got;
          arcs[a ^ 1].cap += got;
          return got;
        }
      }
    }
    return 0;
  }
  double run(std::size_t s, std::size_t t) {
    double flow = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      while (double f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
  }
};

}  // namespace

StCut exact_min_st_cut(const DynamicGraph& g, VertexId s, VertexId t) {
  const std::size_t n = g.num_vertices();
  if (s >= n || t >= n || s == t) throw std::invalid_argument("exact_min_st_cut: bad terminals");
  Dinic d(n);
  for (const auto& [id, e] : g.edges()) d.add_undirected(e.u, e.v, e.weight);
  StCut c;
  c.value = d.run(s, t);
  d.bfs(s, t);
  c.source_side.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) c.source_side[v] = d.dist[v] >= 0;
  return c;
}

double local_connectivity(const DynamicGraph& g, VertexId u, VertexId v) {
  return exact_min_st_cut(g, u, v).value;
}

std::vector<double> resistance_distances(const DynamicGraph& g, VertexId src) {
  const std::size_t n = g.num_vertices();
  std::vector<double> d(n, kInf);
  auto adj = weighted_adj(g);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [dx, x] = pq.top();
    pq.pop();
    if (dx > d[x]) continue;
    for (auto [y, w] : adj[x]) {
      double nd = dx + 1.0 / w;
      if (nd < d[y]) {
        d[y] = nd;
        pq.push({nd, y});
      }
    }
  }
  return d;
}

double max_stretch(const DynamicGraph& g, const DynamicGraph& h) {
  require_same_n(g, h);
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<const WeightedEdge*>> by_src(n);
  for (const auto& [id, e] : g.edges()) by_src[e.u].push_back(&e);
  double worst = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (by_src[s].empty()) continue;
    auto d = resistance_distances(h, s);
    for (const auto* e : by_src[s]) worst = std::max(worst, d[e->v] * e->weight);
  }
  return worst;
}

bool stretch_check(const DynamicGraph& g, const DynamicGraph& h, double alpha) {
  return max_stretch(g, h) <= alpha * (1 + kRelSlack);
}

KruskalResult kruskal_msf(const DynamicGraph& g, ForestOrder order) {
  auto es = g.edge_list();
  std::sort(es.begin(), es.end(),
            [order](const WeightedEdge& a, const WeightedEdge& b) { return edge_better(order, a, b); });
  Dsu d(g.num_vertices());
  KruskalResult r;
  for (const auto& e : es)
    if (d.unite(e.u, e.v)) {
      r.edges.push_back(e.id);
      r.weight += e.weight;
    }
  std::sort(r.edges.begin(), r.edges.end());
  return r;
}

double min_extension_value(const DynamicGraph& g, const std::vector<bool>& in_vc,
                           const std::vector<bool>& in_s) {
  const std::size_t n = g.num_vertices();
  if (in_vc.size() != n || in_s.size() != n) throw std::invalid_argument("mask size mismatch");
  std::vector<double> to_s(n, 0.0), to_rest(n, 0.0);
  double core = 0;
  for (const auto& [id, e] : g.edges()) {
    bool cu = in_vc[e.u], cv = in_vc[e.v];
    if (cu && cv) {
      if (in_s[e.u] != in_s[e.v]) core += e.weight;
    } else if (cu || cv) {
      VertexId x = cu ? e.v : e.u, y = cu ? e.u : e.v;
      (in_s[y] ? to_s[x] : to_rest[x]) += e.weight;
    } else {
      throw std::invalid_argument("min_extension_value: vertex set is not a cover");
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    if (!in_vc[x]) core += std::min(to_s[x], to_rest[x]);
  return core;
}

RatioRange terminal_cut_ratio(const DynamicGraph& g, const DynamicGraph& h,
                              const std::vector<VertexId>& vc) {
  require_same_n(g, h);
  if (vc.size() > 20) throw std::invalid_argument("terminal_cut_ratio: |VC| too large");
  const std::size_t n = g.num_vertices();
  std::vector<bool> in_vc(n, false);
  for (VertexId v : vc) in_vc.at(v) = true;
  RatioRange r;
  if (vc.size() < 2) return r;
  bool first = true;
  const std::uint64_t total = std::uint64_t{1} << (vc.size() - 1);
  std::vector<bool> in_s(n, false);
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    for (std::size_t i = 0; i + 1 < vc.size(); ++i) in_s[vc[i]] = (mask >> i) & 1u;
    double a = min_extension_value(g, in_vc, in_s);
    double b = min_extension_value(h, in_vc, in_s);
    if (std::fabs(a) < 1e-12) a = 0;
    if (std::fabs(b) < 1e-12) b = 0;
    widen(r, cut_ratio(a, b), first);
  }
  return r;
}

std::size_t tree_mvc_size(const DynamicGraph& forest) {
  const std::size_t n = forest.num_vertices();
  std::vector<std::vector<VertexId>> adj(n);
  Dsu d(n);
  for (const auto& [id, e] : forest.edges()) {
    if (!d.unite(e.u, e.v)) throw std::invalid_argument("tree_mvc_size: input has a cycle");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  // in[v]: cover size of subtree with v taken, out[v]: with v not taken
  std::vector<std::size_t> take(n, 1), skip(n, 0);
  std::vector<int> parent(n, -2);
  std::size_t total = 0;
  for (VertexId r = 0; r < n; ++r) {
    if (parent[r] != -2) continue;
    parent[r] = -1;
    std::vector<VertexId> order{r};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (VertexId y : adj[order[i]])
        if (parent[y] == -2) {
          parent[y] = static_cast<int>(order[i]);
          order.push_back(y);
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      VertexId x = *it;
      for (VertexId y : adj[x]) {
        if (parent[y] != static_cast<int>(x)) continue;
        take[x] += std::min(take[y], skip[y]);
        skip[x] += take[y];
      }
    }
    total += std::min(take[r], skip[r]);
  }
  return total;
}

std::size_t bipartite_max_matching(const DynamicGraph& g, const std::vector<int>& side) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& [id, e] : g.edges()) {
    if (side.at(e.u) == side.at(e.v)) throw std::invalid_argument("bipartite_max_matching: not bipartite");
    VertexId l = side[e.u] == 0 ? e.u : e.v, r = side[e.u] == 0 ? e.v : e.u;
    adj[l].push_back(r);
  }
  std::vector<int> match(n, -1);
  std::vector<char> seen;
  std::function<bool(VertexId)> augment = [&](VertexId x) {
    for (VertexId y : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      if (match[y] < 0 || augment(static_cast<VertexId>(match[y]))) {
        match[y] = static_cast<int>(x);
        return true;
      }
    }
    return false;
  };
  std::size_t m = 0;
  for (VertexId x = 0; x < n; ++x) {
    if (side[x] != 0) continue;
    seen.assign(n, 0);
    if (augment(x)) ++m;
  }
  return m;
}

}  // namespace dynsparse::oracle
