#include "dynsparse/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "dynsparse/coin.hpp"

namespace dynsparse {

namespace {

using Before = std::map<EdgeId, std::optional<WeightedEdge>>;

void touch(const std::map<EdgeId, WeightedEdge>& m, EdgeId id, Before& before) {
  if (before.count(id)) return;
  auto it = m.find(id);
  before[id] = it == m.end() ? std::nullopt : std::optional<WeightedEdge>(it->second);
}

ChangeSet net(const std::map<EdgeId, WeightedEdge>& m, const Before& before) {
  ChangeSet cs;
  for (const auto& [id, old] : before) {
    auto it = m.find(id);
    bool now = it != m.end();
    if (old && (!now || !(it->second == *old))) cs.removed.push_back(id);
    if (now && (!old || !(it->second == *old))) cs.added.push_back(it->second);
  }
  return cs;
}

}  // namespace

std::size_t static_spectral_t(double c, double alpha, double eps, double ln_n) {
  if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
  return static_cast<std::size_t>(std::ceil(12 * (c + 1) * alpha * ln_n / (eps * eps) - 1e-9));
}

std::size_t dynamic_spectral_t(double c, double alpha, double eps, std::size_t n) {
  return static_spectral_t(c + 2, alpha, eps, std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
}

TBundleSpanner::TBundleSpanner(std::size_t n, std::size_t t, std::size_t k, double eps_w, std::uint64_t seed,
                               const std::vector<WeightedEdge>& edges)
    : alpha_((1 + eps_w) * (2.0 * static_cast<double>(k) - 1)) {
  for (const auto& e : edges)
    if (!edges_.emplace(e.id, e).second) throw std::invalid_argument("bundle spanner: duplicate edge id");
  std::vector<WeightedEdge> rest = edges;
  for (std::size_t i = 0; i < t; ++i) {
    layers_.emplace_back(n, k, eps_w, mix_key(seed, i, 0xb5), rest);
    std::vector<WeightedEdge> next;
    for (const auto& e : rest) {
      if (layers_.back().in_spanner(e.id)) b_[e.id] = e;
      else next.push_back(e);
    }
    rest = std::move(next);
    if (rest.empty()) break;
  }
  for (const auto& e : rest) residual_[e.id] = e;
}

TBundleSpanner::Delta TBundleSpanner::erase(EdgeId id) {
  if (!edges_.count(id)) throw std::out_of_range("bundle spanner: unknown edge id");
  edges_.erase(id);
  Delta d;
  Before before;
  std::vector<EdgeId> cur{id};
  std::set<EdgeId> touched{id};
  for (auto& layer : layers_) {
    d.layer_deletions.push_back(cur.size());
    std::vector<EdgeId> next;
    for (EdgeId x : cur) {
      const bool in_h = layer.in_spanner(x);
      auto cs = layer.erase(x);
      if (!in_h) next.push_back(x);
      // newly selected edges leave the input of the next layer
      for (const auto& a : cs.added) {
        touched.insert(a.id);
        next.push_back(a.id);
      }
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  // an edge can move from a later layer into an earlier one
  for (EdgeId x : touched) {
    touch(b_, x, before);
    b_.erase(x);
    for (const auto& layer : layers_)
      if (layer.in_spanner(x)) {
        b_[x] = layer.spanner_edges().at(x);
        break;
      }
  }
  for (EdgeId x : cur) {
    residual_.erase(x);
    d.residual_removed.push_back(x);
  }
  d.bundle = net(b_, before);
  return d;
}

LightSpectralState::LightSpectralState(std::size_t n, std::size_t t, std::size_t k, double eps_w,
                                       std::uint64_t seed, int level, const std::vector<WeightedEdge>& edges)
    : bundle_(n, t, k, eps_w, mix_key(seed, static_cast<std::uint64_t>(level), 0x115), edges) {
  for (const auto& [id, e] : bundle_.residual())
    if (coin(0.25, seed, id, static_cast<std::uint64_t>(level))) {
      WeightedEdge s = e;
      s.weight *= 4;
      sampled_[id] = s;
    }
}

LightSpectralState::Delta LightSpectralState::erase(EdgeId id) {
  Delta d;
  auto h_before = sparsifier();
  auto bd = bundle_.erase(id);
  d.bundle = bd.bundle;
  Before before;
  for (EdgeId r : bd.residual_removed) {
    touch(h_before, r, before);
    if (sampled_.erase(r)) d.sampled_removed.push_back(r);
  }
  for (EdgeId r : bd.bundle.removed) touch(h_before, r, before);
  for (const auto& a : bd.bundle.added) touch(h_before, a.id, before);
  d.h = net(sparsifier(), before);
  return d;
}

std::map<EdgeId, WeightedEdge> LightSpectralState::sparsifier() const {
  std::map<EdgeId, WeightedEdge> h = sampled_;
  for (const auto& [id, e] : bundle_.bundle_edges()) h[id] = e;
  return h;
}

SpectralChain::SpectralChain(std::size_t n, const SpectralParams& p, const std::vector<WeightedEdge>& edges)
    : n_(n) {
  if (!(p.epsilon > 0 && p.epsilon < 1)) throw std::invalid_argument("epsilon must be in (0,1)");
  if (!(p.rho >= 1)) throw std::invalid_argument("rho must be at least 1");
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::out_of_range("spectral chain: vertex out of range");
    if (!input_.emplace(e.id, e).second) throw std::invalid_argument("spectral chain: duplicate edge id");
  }
  planned_ = p.rho <= 1 ? 0 : static_cast<std::size_t>(std::ceil(std::log2(p.rho) - 1e-12));
  const std::size_t k = p.spanner_k ? *p.spanner_k : default_spanner_k(n);
  const double alpha = (1 + p.eps_w) * (2.0 * static_cast<double>(k) - 1);
  t_ = p.t ? *p.t
           : dynamic_spectral_t(p.c, alpha, p.epsilon / (2.0 * static_cast<double>(std::max<std::size_t>(planned_, 1))), n);
  const double cutoff = (p.c + 1) * std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  std::vector<WeightedEdge> cur = edges;
  for (std::size_t i = 0; i < planned_; ++i) {
    levels_.emplace_back(n, t_, k, p.eps_w, p.seed, static_cast<int>(i + 1), cur);
    cur.clear();
    for (const auto& [id, e] : levels_.back().sampled()) cur.push_back(e);
    if (static_cast<double>(cur.size()) < cutoff) break;
  }
  for (const auto& l : levels_)
    for (const auto& [id, e] : l.bundle().bundle_edges()) h_[id] = e;
  for (const auto& [id, e] : final_residual()) h_[id] = e;
}

const std::map<EdgeId, WeightedEdge>& SpectralChain::final_residual() const {
  return levels_.empty() ? input_ : levels_.back().sampled();
}

ChangeSet SpectralChain::erase(EdgeId id) {
  if (!input_.count(id)) throw std::out_of_range("spectral chain: unknown edge id");
  Before before;
  std::vector<EdgeId> removals;
  std::vector<WeightedEdge> additions;
  std::vector<EdgeId> cur{id};
  for (auto& l : levels_) {
    std::vector<EdgeId> next;
    for (EdgeId x : cur) {
      auto d = l.erase(x);
      removals.insert(removals.end(), d.bundle.removed.begin(), d.bundle.removed.end());
      additions.insert(additions.end(), d.bundle.added.begin(), d.bundle.added.end());
      next.insert(next.end(), d.sampled_removed.begin(), d.sampled_removed.end());
    }
    cur = std::move(next);
    if (cur.empty()) break;
  }
  // cur are deletions from G_k, which is part of H
  removals.insert(removals.end(), cur.begin(), cur.end());
  input_.erase(id);
  for (EdgeId r : removals) {
    touch(h_, r, before);
    h_.erase(r);
  }
  for (const auto& a : additions) {
    touch(h_, a.id, before);
    h_[a.id] = a;
  }
  return net(h_, before);
}

DynamicGraph SpectralChain::sparsifier() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : h_) g.insert_edge(e);
  return g;
}

FullyDynamicWrapper::FullyDynamicWrapper(std::size_t n, const SpectralParams& p) : n_(n), params_(p) {}

ChangeSet FullyDynamicWrapper::apply(const UpdateEvent& ev) {
  Before before;
  if (ev.is_insert()) {
    const WeightedEdge& e = ev.edge;
    if (owner_.count(e.id)) throw std::invalid_argument("wrapper: duplicate edge id");
    if (e.u >= n_ || e.v >= n_) throw std::out_of_range("wrapper: vertex out of range");
    ++counter_;
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(counter_));
    if (sets_.size() <= j) {
      sets_.resize(j + 1);
      chains_.resize(j + 1);
    }
    // bits below j turn off: their sets merge into E_j with the new edge
    std::vector<WeightedEdge> merged;
    for (std::size_t i = 0; i <= j; ++i) {
      for (const auto& [id, f] : sets_[i]) {
        merged.push_back(f);
        touch(h_, id, before);
      }
      sets_[i].clear();
      chains_[i].reset();
    }
    merged.push_back(e);
    owner_edges_[e.id] = e;
    touch(h_, e.id, before);
    for (const auto& f : merged) {
      sets_[j][f.id] = f;
      owner_[f.id] = j;
    }
    SpectralParams q = params_;
    q.seed = mix_key(params_.seed, restarts_++, 0xfd);
    chains_[j] = std::make_unique<SpectralChain>(n_, q, merged);
    for (const auto& f : merged) h_.erase(f.id);
    for (const auto& [id, f] : chains_[j]->sparsifier_edges()) h_[id] = f;
  } else {
    auto it = owner_.find(ev.edge.id);
    if (it == owner_.end()) throw std::out_of_range("wrapper: unknown edge id");
    const std::size_t j = it->second;
    owner_.erase(it);
    owner_edges_.erase(ev.edge.id);
    sets_[j].erase(ev.edge.id);
    auto cs = chains_[j]->erase(ev.edge.id);
    for (EdgeId r : cs.removed) {
      touch(h_, r, before);
      h_.erase(r);
    }
    for (const auto& a : cs.added) {
      touch(h_, a.id, before);
      h_[a.id] = a;
    }
  }
  return net(h_, before);
}

bool FullyDynamicWrapper::counter_invariant() const {
  for (std::size_t i = 0; i < sets_.size(); ++i)
    if (sets_[i].size() > (std::size_t{1} << (i + 1))) return false;
  return true;
}

DynamicGraph FullyDynamicWrapper::sparsifier() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : h_) g.insert_edge(e);
  return g;
}

}  // namespace dynsparse
