#include "dynsparse/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dynsparse {

ChangeSet BundleDelta::residual_changes() const {
  ChangeSet cs;
  if (!residual) return cs;
  if (residual->is_insert()) cs.added.push_back(residual->edge);
  else cs.removed.push_back(residual->edge.id);
  return cs;
}

ChangeSet BundleDelta::bundle_changes() const {
  std::map<EdgeId, WeightedEdge> add;
  std::set<EdgeId> rem;
  for (const auto& f : forests) {
    if (f.removed) {
      if (add.erase(*f.removed) == 0) rem.insert(*f.removed);
    }
    if (f.added) {
      if (rem.erase(f.added->id) == 0) add[f.added->id] = *f.added;
    }
  }
  ChangeSet cs;
  cs.removed.assign(rem.begin(), rem.end());
  for (const auto& [id, e] : add) cs.added.push_back(e);
  return cs;
}

BundleChain::BundleChain(std::size_t n, std::size_t t, BundleMode mode, double gamma)
    : n_(n), mode_(mode), gamma_(gamma), layers_(t) {
  if (!(gamma > 0)) throw std::invalid_argument("bundle: gamma must be positive");
}

int BundleChain::class_of(const WeightedEdge& e) const {
  return mode_ == BundleMode::Exact ? 0 : weight_class(e.weight, gamma_);
}

MsfInstance& BundleChain::forest_for(Layer& l, int c) {
  auto it = l.forests.find(c);
  if (it == l.forests.end())
    it = l.forests.emplace(c, MsfInstance(n_, mode_ == BundleMode::Exact ? ForestOrder::Max : ForestOrder::Min)).first;
  return it->second;
}

BundleDelta BundleChain::apply(const UpdateEvent& ev) {
  if (ev.is_insert()) {
    if (contains(ev.edge.id)) throw std::invalid_argument("bundle: duplicate edge id");
    if (ev.edge.u >= n_ || ev.edge.v >= n_) throw std::out_of_range("bundle: vertex out of range");
    if (ev.edge.u == ev.edge.v) throw std::invalid_argument("bundle: self-loop");
    class_of(ev.edge);  // rejects weights below gamma before any state changes
  } else if (!contains(ev.edge.id)) {
    throw std::out_of_range("bundle: unknown edge id");
  }
  BundleDelta d;
  std::optional<UpdateEvent> cur = ev;
  for (std::size_t i = 0; i < layers_.size() && cur; ++i) {
    Layer& l = layers_[i];
    if (cur->is_insert()) {
      const WeightedEdge e = cur->edge;
      l.input[e.id] = e;
      int c = class_of(e);
      WeightedEdge key = e;
      // class forests only track connectivity
      if (mode_ == BundleMode::Bucketed) key.weight = 1.0;
      auto fd = forest_for(l, c).insert(key);
      if (!fd.added) continue;
      l.tree[e.id] = e;
      LayerForestChange ch{i, c, e, fd.removed};
      if (fd.removed) {
        WeightedEdge f = l.input.at(*fd.removed);
        l.tree.erase(f.id);
        cur = UpdateEvent::insert(f);
      } else {
        cur.reset();
      }
      d.forests.push_back(ch);
    } else {
      const EdgeId id = cur->edge.id;
      auto it = l.input.find(id);
      const WeightedEdge e = it->second;
      l.input.erase(it);
      int c = class_of(e);
      bool was_tree = l.tree.erase(id) != 0;
      auto fd = forest_for(l, c).erase(id);
      if (!was_tree) continue;
      LayerForestChange ch{i, c, std::nullopt, id};
      if (fd.added) {
        WeightedEdge r = l.input.at(fd.added->id);
        l.tree[r.id] = r;
        ch.added = r;
        cur = UpdateEvent::erase(r.id);
      } else {
        cur.reset();
      }
      d.forests.push_back(ch);
    }
  }
  if (cur) {
    if (cur->is_insert()) residual_[cur->edge.id] = cur->edge;
    else {
      auto it = residual_.find(cur->edge.id);
      cur->edge = it->second;
      residual_.erase(it);
    }
    d.residual = cur;
  }
  return d;
}

std::optional<std::size_t> BundleChain::layer_of(EdgeId id) const {
  for (std::size_t i = 0; i < layers_.size(); ++i)
    if (layers_[i].tree.count(id)) return i;
  return std::nullopt;
}

std::vector<WeightedEdge> BundleChain::layer_forest(std::size_t i) const {
  std::vector<WeightedEdge> out;
  for (const auto& [id, e] : layers_.at(i).tree) out.push_back(e);
  return out;
}

std::map<int, std::vector<WeightedEdge>> BundleChain::layer_class_forests(std::size_t i) const {
  std::map<int, std::vector<WeightedEdge>> out;
  for (const auto& [id, e] : layers_.at(i).tree) out[class_of(e)].push_back(e);
  return out;
}

std::vector<WeightedEdge> BundleChain::layer_input(std::size_t i) const {
  std::vector<WeightedEdge> out;
  for (const auto& [id, e] : layers_.at(i).input) out.push_back(e);
  return out;
}

std::size_t BundleChain::bundle_size() const {
  std::size_t s = 0;
  for (const auto& l : layers_) s += l.tree.size();
  return s;
}

bool BundleChain::audit() const {
  for (const auto& l : layers_) {
    std::size_t trees = 0;
    for (const auto& [c, f] : l.forests) {
      if (!f.audit().ok) return false;
      trees += f.forest_size();
    }
    if (trees != l.tree.size()) return false;
  }
  return true;
}

bool alpha_mst_verify(std::size_t n, const std::vector<WeightedEdge>& forest,
                      const std::vector<WeightedEdge>& graph, double alpha) {
  auto f = forest;
  auto g = graph;
  auto heavier = [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight > b.weight; };
  std::sort(f.begin(), f.end(), heavier);
  std::sort(g.begin(), g.end(), heavier);
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  std::size_t k = 0;
  for (const auto& e : g) {
    const double threshold = e.weight / alpha * (1 - kRelSlack);
    while (k < f.size() && f[k].weight >= threshold) {
      p[find(f[k].u)] = find(f[k].v);
      ++k;
    }
    if (find(e.u) != find(e.v)) return false;
  }
  return true;
}

}  // namespace dynsparse
