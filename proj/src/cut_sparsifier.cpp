#include "dynsparse/cut_sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynsparse/coin.hpp"

namespace dynsparse {

std::size_t cut_levels(double rho, std::optional<std::size_t> m, double c, std::size_t n) {
  if (!(rho >= 1)) throw std::invalid_argument("rho must be at least 1");
  double cap = rho;
  if (m) {
    double logn = std::log2(std::max<std::size_t>(n, 2));
    cap = std::min(cap, static_cast<double>(*m) / ((c + 2) * logn));
  }
  if (cap <= 1) return 0;
  return static_cast<std::size_t>(std::ceil(std::log2(cap) - 1e-12));
}

std::size_t theory_bundle_t(double c, double alpha, double wmax, std::size_t n, double eps,
                            double c_xi) {
  if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
  double logw = std::max(1.0, std::log2(std::max(wmax, 1.0)));
  double logn = std::log2(std::max<std::size_t>(n, 2));
  return static_cast<std::size_t>(std::ceil(c_xi * c * alpha * logw * logn * logn / (eps * eps)));
}

LightCutState::LightCutState(std::size_t n, std::size_t t, BundleMode mode, double gamma,
                             std::uint64_t seed, int level)
    : bundle_(n, t, mode, gamma), seed_(seed), level_(level) {}

LightCutState::Delta LightCutState::apply(const UpdateEvent& ev) {
  Delta d;
  d.bundle = bundle_.apply(ev);
  if (!d.bundle.residual) return d;
  const UpdateEvent& r = *d.bundle.residual;
  if (r.is_insert()) {
    // the coin is a function of the edge and level, so a returning edge
    // sees the same outcome
    if (coin(0.25, seed_, r.edge.id, static_cast<std::uint64_t>(level_))) {
      WeightedEdge e = r.edge;
      e.weight *= 4;
      sampled_[e.id] = e;
      d.sampled.added.push_back(e);
    }
  } else if (sampled_.erase(r.edge.id)) {
    d.sampled.removed.push_back(r.edge.id);
  }
  return d;
}

std::map<EdgeId, WeightedEdge> LightCutState::sparsifier() const {
  std::map<EdgeId, WeightedEdge> h = sampled_;
  for (std::size_t i = 0; i < bundle_.num_layers(); ++i)
    for (const auto& e : bundle_.layer_forest(i)) h[e.id] = e;
  return h;
}

CutChain::CutChain(std::size_t n, const CutParams& p) : n_(n), params_(p) {
  if (!(p.epsilon > 0 && p.epsilon < 1)) throw std::invalid_argument("epsilon must be in (0,1)");
  std::size_t k = cut_levels(p.rho, p.m_hint, p.c, n);
  double alpha = p.mode == BundleMode::Exact ? 1.0 : 2.0;
  t_ = p.t ? *p.t
           : theory_bundle_t(p.c + 1, alpha, p.wmax, n, p.epsilon / (2.0 * std::max<std::size_t>(k, 1)),
                             p.c_xi);
  for (std::size_t j = 0; j < k; ++j) {
    // level j sees weights scaled by 4^j, so its class base scales too
    levels_.emplace_back(n, t_, p.mode, p.gamma * std::pow(4.0, static_cast<double>(j)), p.seed,
                         static_cast<int>(j + 1));
  }
}

void CutChain::touch(EdgeId id, std::map<EdgeId, std::optional<WeightedEdge>>& before) const {
  if (before.count(id)) return;
  auto it = h_.find(id);
  before[id] = it == h_.end() ? std::nullopt : std::optional<WeightedEdge>(it->second);
}

CutChain::Delta CutChain::apply(const UpdateEvent& ev) {
  if (ev.is_insert()) {
    if (input_.count(ev.edge.id)) throw std::invalid_argument("cut chain: duplicate edge id");
    if (ev.edge.u >= n_ || ev.edge.v >= n_) throw std::out_of_range("cut chain: vertex out of range");
  } else if (!input_.count(ev.edge.id)) {
    throw std::out_of_range("cut chain: unknown edge id");
  }
  Delta d;
  std::map<EdgeId, std::optional<WeightedEdge>> before;
  std::vector<EdgeId> removals;
  std::vector<WeightedEdge> additions;
  std::optional<UpdateEvent> cur = ev;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    d.level_inputs.push_back(cur ? 1 : 0);
    if (!cur) continue;
    auto ld = levels_[j].apply(*cur);
    for (const auto& f : ld.bundle.forests)
      d.forests.push_back({ForestKey{static_cast<int>(j), static_cast<int>(f.layer), f.wclass, kNoSingleton},
                           f.added, f.removed});
    // an edge can leave level j+1 while rejoining level j in the same
    // event, so removals from every level are applied before additions
    auto bc = ld.bundle.bundle_changes();
    removals.insert(removals.end(), bc.removed.begin(), bc.removed.end());
    additions.insert(additions.end(), bc.added.begin(), bc.added.end());
    cur.reset();
    if (!ld.sampled.added.empty()) cur = UpdateEvent::insert(ld.sampled.added.front());
    else if (!ld.sampled.removed.empty()) cur = UpdateEvent::erase(ld.sampled.removed.front());
  }
  if (cur) {
    // cur is an update of G_k, which belongs to the sparsifier as singletons
    ++d.residual_changes;
    const int k = static_cast<int>(levels_.size());
    if (cur->is_insert()) {
      additions.push_back(cur->edge);
      d.forests.push_back({ForestKey{k, -1, -1, cur->edge.id}, cur->edge, std::nullopt});
    } else {
      removals.push_back(cur->edge.id);
      d.forests.push_back({ForestKey{k, -1, -1, cur->edge.id}, std::nullopt, cur->edge.id});
    }
  }
  for (EdgeId id : removals) {
    touch(id, before);
    h_.erase(id);
  }
  for (const auto& e : additions) {
    touch(e.id, before);
    h_[e.id] = e;
  }
  if (ev.is_insert()) input_[ev.edge.id] = ev.edge;
  else input_.erase(ev.edge.id);
  for (const auto& [id, old] : before) {
    auto it = h_.find(id);
    bool now = it != h_.end();
    if (old && (!now || !(it->second == *old))) d.sparsifier.removed.push_back(id);
    if (now && (!old || !(it->second == *old))) d.sparsifier.added.push_back(it->second);
  }
  return d;
}

const std::map<EdgeId, WeightedEdge>& CutChain::residual() const {
  return levels_.empty() ? input_ : levels_.back().sampled();
}

DynamicGraph CutChain::sparsifier() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : h_) g.insert_edge(e);
  return g;
}

std::map<ForestKey, std::vector<WeightedEdge>> CutChain::forests() const {
  std::map<ForestKey, std::vector<WeightedEdge>> out;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    const auto& b = levels_[j].bundle();
    for (std::size_t i = 0; i < b.num_layers(); ++i)
      for (auto& [c, es] : b.layer_class_forests(i))
        out[ForestKey{static_cast<int>(j), static_cast<int>(i), c, kNoSingleton}] = es;
  }
  const int k = static_cast<int>(levels_.size());
  for (const auto& [id, e] : residual()) out[ForestKey{k, -1, -1, id}] = {e};
  return out;
}

std::size_t CutChain::forest_degree(const ForestKey& key, VertexId v) const {
  auto fs = forests();
  auto it = fs.find(key);
  if (it == fs.end()) return 0;
  std::size_t d = 0;
  for (const auto& e : it->second) d += (e.u == v) + (e.v == v);
  return d;
}

DynamicGraph decompose_union(std::size_t n, const std::vector<const std::map<EdgeId, WeightedEdge>*>& parts) {
  DynamicGraph g(n);
  for (const auto* p : parts)
    for (const auto& [id, e] : *p) {
      if (g.has_edge(id)) throw std::invalid_argument("decompose_union: overlapping edge ids");
      g.insert_edge(e);
    }
  return g;
}

BlendWrapper::BlendWrapper(std::size_t n, const CutParams& p, std::optional<std::size_t> phase_length)
    : n_(n), params_(p), phase_len_(phase_length ? *phase_length : std::max<std::size_t>(1, n * n)) {
  inst_[0] = fresh(0);
  inst_[1] = fresh(1);
}

std::unique_ptr<CutChain> BlendWrapper::fresh(std::size_t salt) const {
  CutParams q = params_;
  q.seed = mix_key(params_.seed, salt, 0xb1e4d);
  return std::make_unique<CutChain>(n_, q);
}

void BlendWrapper::send(int side, const UpdateEvent& ev,
                        std::map<EdgeId, std::optional<WeightedEdge>>& before) {
  auto d = inst_[side]->apply(ev);
  ++updates_[side];
  auto touch = [&](EdgeId id) {
    if (before.count(id)) return;
    auto it = h_.find(id);
    before[id] = it == h_.end() ? std::nullopt : std::optional<WeightedEdge>(it->second);
  };
  for (EdgeId id : d.sparsifier.removed) {
    touch(id);
    h_.erase(id);
  }
  for (const auto& e : d.sparsifier.added) {
    touch(e.id);
    h_[e.id] = e;
  }
}

void BlendWrapper::migrate_one(std::map<EdgeId, std::optional<WeightedEdge>>& before) {
  const int shrink = 1 - grow_;
  auto it = sides_[shrink].begin();
  WeightedEdge e = it->second;
  sides_[shrink].erase(it);
  send(shrink, UpdateEvent::erase(e.id), before);
  send(grow_, UpdateEvent::insert(e), before);
  sides_[grow_][e.id] = e;
  owner_[e.id] = grow_;
}

ChangeSet BlendWrapper::apply(const UpdateEvent& ev) {
  updates_[0] = updates_[1] = 0;
  std::map<EdgeId, std::optional<WeightedEdge>> before;
  if (ev.is_insert()) {
    if (owner_.count(ev.edge.id)) throw std::invalid_argument("blend: duplicate edge id");
    send(grow_, ev, before);
    owner_[ev.edge.id] = grow_;
    sides_[grow_][ev.edge.id] = ev.edge;
  } else {
    auto it = owner_.find(ev.edge.id);
    if (it == owner_.end()) throw std::out_of_range("blend: unknown edge id");
    int s = it->second;
    send(s, ev, before);
    sides_[s].erase(ev.edge.id);
    owner_.erase(it);
  }
  if (!sides_[1 - grow_].empty()) migrate_one(before);
  if (++in_phase_ == phase_len_) {
    while (!sides_[1 - grow_].empty()) {
      migrate_one(before);
      ++bulk_moves_;
    }
    // the emptied side restarts from scratch and becomes the growing side
    grow_ = 1 - grow_;
    ++phase_;
    inst_[grow_] = fresh(2 + phase_);
    in_phase_ = 0;
  }
  ChangeSet cs;
  for (const auto& [id, old] : before) {
    auto it = h_.find(id);
    bool now = it != h_.end();
    if (old && (!now || !(it->second == *old))) cs.removed.push_back(id);
    if (now && (!old || !(it->second == *old))) cs.added.push_back(it->second);
  }
  return cs;
}

DynamicGraph BlendWrapper::sparsifier() const {
  DynamicGraph g(n_);
  for (const auto& [id, e] : h_) g.insert_edge(e);
  return g;
}

}  // namespace dynsparse
