#include "dynsparse/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "dynsparse/coin.hpp"
#include "dynsparse/cut_sparsifier.hpp"
#include "dynsparse/elimination.hpp"
#include "dynsparse/mincut.hpp"
#include "dynsparse/msf.hpp"
#include "dynsparse/oracle.hpp"
#include "dynsparse/spectral.hpp"
#include "dynsparse/vertex_sparsify.hpp"

namespace dynsparse::cli {

using json = nlohmann::ordered_json;

const std::vector<std::string>& run_modes() {
  static const std::vector<std::string> m{"cut", "spectral", "mincut2", "mincut1", "vertex", "forest"};
  return m;
}

namespace {

struct Outcome {
  std::vector<std::size_t> levels;
  std::size_t delta = 0;
};

struct Check {
  bool ok = true;
  bool skipped = false;
  double lo = 1, hi = 1;  // observed ratio extremes
  std::string detail;
};

class Unsupported : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string mode;
  std::size_t n = 0, a = 0, b = 0;
  double epsilon = 0.5, rho = 4, c = 1, wmax = 1;
  std::optional<std::size_t> t;
  std::uint64_t seed = 1;
  bool blend = false;
};

class Pipeline {
 public:
  virtual ~Pipeline() = default;
  virtual Outcome apply(const UpdateEvent& ev) = 0;
  virtual std::size_t size() const = 0;
  virtual std::size_t forests() const { return 0; }
  virtual std::optional<double> value() const { return std::nullopt; }
  virtual Check verify(const DynamicGraph& g) = 0;
  virtual json query_value() const { return size(); }
  virtual json query_side(VertexId) const { throw Unsupported("q side is only defined in the mincut modes"); }
  virtual json query_cuts(const DynamicGraph& g) const = 0;
};

json range(const oracle::RatioRange& r) { return json{{"min", r.min}, {"max", r.max}}; }

Check within(const oracle::RatioRange& r, double lo, double hi, const char* what) {
  Check c;
  c.lo = r.min;
  c.hi = r.max;
  c.ok = r.within(lo, hi);
  if (!c.ok) c.detail = std::string(what) + " ratio [" + std::to_string(r.min) + ", " + std::to_string(r.max) + "] outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]";
  return c;
}

CutParams cut_params(const Config& k) {
  CutParams p;
  p.epsilon = k.epsilon;
  p.rho = k.rho;
  p.c = k.c;
  p.t = k.t;
  p.wmax = k.wmax;
  p.seed = k.seed;
  return p;
}

class CutPipe : public Pipeline {
 public:
  CutPipe(const Config& k) : eps_(k.epsilon), chain_(k.n, cut_params(k)) {}
  Outcome apply(const UpdateEvent& ev) override {
    auto d = chain_.apply(ev);
    Outcome o;
    o.levels = d.level_inputs;
    o.levels.push_back(d.residual_changes);
    o.delta = d.sparsifier.size();
    return o;
  }
  std::size_t size() const override { return chain_.sparsifier_edges().size(); }
  std::size_t forests() const override { return chain_.forests().size(); }
  Check verify(const DynamicGraph& g) override {
    return within(oracle::all_cuts_ratio(g, chain_.sparsifier()), 1 - eps_, 1 + eps_, "all-cuts");
  }
  json query_cuts(const DynamicGraph& g) const override { return range(oracle::all_cuts_ratio(g, chain_.sparsifier())); }

 private:
  double eps_;
  CutChain chain_;
};

class BlendPipe : public Pipeline {
 public:
  BlendPipe(const Config& k) : eps_(k.epsilon), w_(k.n, cut_params(k)) {}
  Outcome apply(const UpdateEvent& ev) override {
    Outcome o;
    o.delta = w_.apply(ev).size();
    o.levels = {w_.last_updates(0), w_.last_updates(1)};
    return o;
  }
  std::size_t size() const override { return w_.sparsifier_edges().size(); }
  std::size_t forests() const override { return w_.instance(0).forests().size() + w_.instance(1).forests().size(); }
  Check verify(const DynamicGraph& g) override {
    auto c = within(oracle::all_cuts_ratio(g, w_.sparsifier()), 1 - eps_, 1 + eps_, "all-cuts");
    const auto& s0 = w_.side_edges(0);
    const auto& s1 = w_.side_edges(1);
    bool part = s0.size() + s1.size() == g.num_edges();
    for (const auto& [id, e] : g.edges()) part = part && (s0.count(id) + s1.count(id) == 1);
    if (!part) {
      c.ok = false;
      c.detail = "the two sides do not partition the graph";
    }
    return c;
  }
  json query_cuts(const DynamicGraph& g) const override { return range(oracle::all_cuts_ratio(g, w_.sparsifier())); }

 private:
  double eps_;
  BlendWrapper w_;
};

class SpectralPipe : public Pipeline {
 public:
  static SpectralParams params(const Config& k) {
    SpectralParams p;
    p.epsilon = k.epsilon;
    p.rho = k.rho;
    p.c = k.c;
    p.t = k.t;
    p.seed = k.seed;
    return p;
  }
  SpectralPipe(const Config& k) : eps_(k.epsilon), w_(k.n, params(k)) {}
  Outcome apply(const UpdateEvent& ev) override {
    Outcome o;
    o.delta = w_.apply(ev).size();
    for (std::size_t i = 1; i <= w_.num_sets(); ++i) o.levels.push_back(w_.set(i).size());
    return o;
  }
  std::size_t size() const override { return w_.sparsifier_edges().size(); }
  std::size_t forests() const override { return w_.num_sets(); }
  Check verify(const DynamicGraph& g) override {
    Check c;
    try {
      c = within(oracle::quad_form_extremes(g, w_.sparsifier()), 1 - eps_, 1 + eps_, "quadratic-form");
    } catch (const std::exception& e) {
      c.ok = false;
      c.lo = 0;
      c.hi = INFINITY;
      c.detail = e.what();
    }
    if (!w_.counter_invariant()) {
      c.ok = false;
      c.detail = "set sizes exceed the counter bound";
    }
    return c;
  }
  json query_cuts(const DynamicGraph& g) const override {
    try {
      return range(oracle::quad_form_extremes(g, w_.sparsifier()));
    } catch (const std::exception& e) {
      return json{{"error", e.what()}};
    }
  }

 private:
  double eps_;
  FullyDynamicWrapper w_;
};

class ForestPipe : public Pipeline {
 public:
  ForestPipe(const Config& k) : msf_(k.n) {}
  Outcome apply(const UpdateEvent& ev) override {
    auto d = ev.is_insert() ? msf_.insert(ev.edge) : msf_.erase(ev.edge.id);
    last_ = d;
    Outcome o;
    o.delta = (d.added ? 1 : 0) + (d.removed ? 1 : 0);
    return o;
  }
  std::size_t size() const override { return msf_.forest_size(); }
  std::size_t forests() const override { return 1; }
  std::optional<double> value() const override { return msf_.forest_weight(); }
  Check verify(const DynamicGraph& g) override {
    Check c;
    double k = oracle::kruskal_msf(g).weight, w = msf_.forest_weight();
    c.lo = c.hi = oracle::cut_ratio(w, k);
    c.ok = w == k;
    if (!c.ok) c.detail = "forest weight " + std::to_string(w) + " differs from " + std::to_string(k);
    return c;
  }
  json query_value() const override { return msf_.forest_weight(); }
  json query_cuts(const DynamicGraph&) const override { throw Unsupported("q cuts is not defined in forest mode"); }

 private:
  MsfInstance msf_;
  ForestDelta last_;
};

class MinCutPipe : public Pipeline {
 public:
  static MinCutParams params(const Config& k) {
    MinCutParams p;
    p.mode = k.mode == "mincut1" ? MinCutMode::OneEps : MinCutMode::TwoEps;
    p.epsilon = k.epsilon;
    p.rho = k.rho;
    p.c = k.c;
    p.t = k.t;
    p.seed = k.seed;
    return p;
  }
  MinCutPipe(const Config& k) : eps_(k.epsilon), mc_(k.a, k.b, params(k)) {}
  Outcome apply(const UpdateEvent& ev) override {
    std::size_t before = mc_.recomputes();
    mc_.apply(ev);
    Outcome o;
    o.delta = mc_.recomputes() - before;
    return o;
  }
  std::size_t size() const override { return mc_.h_graph().num_edges(); }
  std::optional<double> value() const override { return mc_.value(); }
  Check verify(const DynamicGraph&) override {
    double opt = oracle::exact_min_st_cut(mc_.graph(), mc_.s(), mc_.t()).value;
    double r = oracle::cut_ratio(mc_.value(), opt);
    bool two = mc_.mode() == MinCutMode::TwoEps;
    double lo = two ? 1 : 1 - eps_, hi = two ? 2 + eps_ : 1 + eps_;
    Check c = within({r, r}, lo, hi, "value/OPT");
    if (mc_.steps_since_recompute() >= mc_.budget()) {
      c.ok = false;
      c.detail = "recompute budget overrun";
    }
    return c;
  }
  json query_value() const override { return json{{"value", mc_.value()}, {"estimate", mc_.estimate()}}; }
  json query_side(VertexId v) const override { return mc_.side(v) ? "S" : "T"; }
  json query_cuts(const DynamicGraph&) const override {
    json s = json::array();
    auto c = mc_.cut();
    for (VertexId v = 0; v < c.size(); ++v)
      if (c[v]) s.push_back(v);
    return json{{"source_side", s}, {"value", mc_.value()}};
  }

 private:
  double eps_;
  BipartiteMinCut mc_;
};

class VertexPipe : public Pipeline {
 public:
  static CutParams gparams(const Config& k) {
    CutParams p = cut_params(k);
    p.epsilon = k.epsilon / 2;
    p.mode = BundleMode::Exact;
    p.seed = mix_key(k.seed, 1);
    return p;
  }
  static VertexSparsifyParams vparams(const Config& k, const CutChain& g) {
    VertexSparsifyParams p;
    p.epsilon = k.epsilon / 2;
    p.d = std::max<std::size_t>(1, g.num_levels() * g.bundle_t());
    if (k.t) {
      p.t = *k.t;
    } else {
      double l = std::log2(static_cast<double>(std::max<std::size_t>(2, k.n)));
      p.t = static_cast<std::size_t>(std::ceil(static_cast<double>(p.d * p.d) * l * l * l / std::pow(p.epsilon, 3)));
    }
    p.core = gparams(k);
    p.core.seed = k.seed;
    p.seed = mix_key(k.seed, 3);
    return p;
  }
  VertexPipe(const Config& k)
      : eps_(k.epsilon), g_(k.n, gparams(k)), bc_(k.n, {}), vs_(k.n, vparams(k, g_)) {}
  Outcome apply(const UpdateEvent& ev) override {
    auto d = g_.apply(ev);
    for (const auto& f : d.forests)
      if (f.removed) bc_.remove(f.key, *f.removed);
    for (const auto& f : d.forests)
      if (f.added) bc_.add(f.key, *f.added);
    for (VertexId x : bc_.drain_touched()) vs_.sync(x, bc_);
    Outcome o;
    o.delta = vs_.drain().size();
    return o;
  }
  std::size_t size() const override { return vs_.sparsifier_edges().size(); }
  std::size_t forests() const override { return bc_.cover_size(); }
  // VC covers G~ only, so terminal cuts are measured against G~
  Check verify(const DynamicGraph&) override {
    auto vc = cover();
    Check c;
    if (vc.size() > 20) {
      c.skipped = true;
      return c;
    }
    // elimination keeps cover cuts within a factor 2 on top of both sparsification layers
    return within(oracle::terminal_cut_ratio(bc_.graph(), vs_.sparsifier(), vc), 1 - eps_, 2 / (1 - eps_),
                  "terminal-cut");
  }
  json query_value() const override { return json{{"size", size()}, {"cover", cover()}}; }
  json query_side(VertexId v) const override { return bc_.in_vc(v) ? "cover" : "independent"; }
  json query_cuts(const DynamicGraph&) const override {
    auto vc = cover();
    if (vc.size() > 20) return json{{"error", "cover larger than 20"}};
    return range(oracle::terminal_cut_ratio(bc_.graph(), vs_.sparsifier(), vc));
  }

 private:
  std::vector<VertexId> cover() const {
    std::vector<VertexId> vc;
    for (VertexId v = 0; v < bc_.cover().size(); ++v)
      if (bc_.in_vc(v)) vc.push_back(v);
    return vc;
  }
  double eps_;
  CutChain g_;
  BranchCover bc_;
  VertexSparsifierState vs_;
};

Config resolve(const StreamFile& f, const RunFlags& fl) {
  const auto& h = f.header;
  Config k;
  if (fl.mode) k.mode = *fl.mode;
  else if (h.mode) k.mode = *h.mode;
  else throw std::invalid_argument("no mode given in the stream header or on the command line");
  const auto& ms = run_modes();
  if (std::find(ms.begin(), ms.end(), k.mode) == ms.end()) throw std::invalid_argument("unknown mode '" + k.mode + "'");
  k.epsilon = fl.epsilon.value_or(h.epsilon.value_or(0.5));
  k.rho = fl.rho.value_or(h.rho.value_or(4.0));
  k.c = fl.c.value_or(h.c.value_or(1.0));
  k.seed = fl.seed.value_or(h.seed.value_or(1));
  k.wmax = h.wmax.value_or(1.0);
  k.t = fl.t ? fl.t : h.t;
  k.blend = fl.blend;
  if (!(k.epsilon > 0 && k.epsilon < 1)) throw std::invalid_argument("epsilon must be in (0,1)");
  if (!(k.rho >= 1)) throw std::invalid_argument("rho must be at least 1");
  if (k.t && *k.t == 0) throw std::invalid_argument("t must be positive");
  if (fl.verify_every == 0) throw std::invalid_argument("verify-every must be positive");
  if (k.blend && k.mode != "cut") throw std::invalid_argument("--blend applies to cut mode only");
  bool mc = k.mode == "mincut1" || k.mode == "mincut2";
  if (mc) {
    if (!h.a || !h.b) throw std::invalid_argument("mincut modes need header keys a and b");
    k.a = *h.a;
    k.b = *h.b;
    if (h.n && *h.n != k.a + k.b) throw std::invalid_argument("n must equal a + b");
    k.n = k.a + k.b;
  } else {
    if (!h.n) throw std::invalid_argument("stream header lacks n");
    k.n = *h.n;
  }
  if (k.n == 0) throw std::invalid_argument("n must be positive");
  if (fl.verify) {
    if ((k.mode == "cut") && k.n > 24) throw std::invalid_argument("--verify in cut mode needs n <= 24");
    if (k.mode == "spectral" && k.n > 60) throw std::invalid_argument("--verify in spectral mode needs n <= 60");
  }
  return k;
}

std::unique_ptr<Pipeline> make(const Config& k) {
  if (k.mode == "cut") {
    if (k.blend) return std::make_unique<BlendPipe>(k);
    return std::make_unique<CutPipe>(k);
  }
  if (k.mode == "spectral") return std::make_unique<SpectralPipe>(k);
  if (k.mode == "forest") return std::make_unique<ForestPipe>(k);
  if (k.mode == "vertex") return std::make_unique<VertexPipe>(k);
  return std::make_unique<MinCutPipe>(k);
}

json opt(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

json RunStats::to_json() const {
  json j;
  j["schema"] = 1;
  j["mode"] = mode;
  j["n"] = n;
  j["params"] = {{"epsilon", epsilon}, {"rho", rho}, {"c", c}, {"t", t ? json(*t) : json(nullptr)}, {"seed", seed}, {"blend", blend}};
  j["events"] = events;
  j["inserts"] = inserts;
  j["deletes"] = deletes;
  j["sparsifier_size"] = sparsifier_size;
  j["forests"] = forests;
  j["max_level_delta"] = max_level_delta;
  j["verify"] = {{"enabled", verify},
                 {"every", verify_every},
                 {"checks", checks},
                 {"failures", failures},
                 {"skipped", skipped},
                 {"min_ratio", opt(min_ratio)},
                 {"max_ratio", opt(max_ratio)},
                 {"first_failure", first_failure ? json{{"event", first_failure->first}, {"detail", first_failure->second}}
                                                 : json(nullptr)}};
  j["values"] = values;
  json tr = json::array();
  for (const auto& e : trace) {
    json r;
    r["event"] = e.index;
    r["line"] = e.line;
    r["op"] = e.insert ? "i" : "d";
    r["id"] = e.id;
    r["levels"] = e.levels;
    r["delta"] = e.delta;
    r["size"] = e.size;
    r["forests"] = e.forests;
    r["value"] = opt(e.value);
    r["ratio"] = e.ratio ? json{e.ratio->first, e.ratio->second} : json(nullptr);
    r["ok"] = e.ok;
    tr.push_back(r);
  }
  j["trace"] = tr;
  json qs = json::array();
  for (const auto& q : queries) qs.push_back({{"line", q.line}, {"query", q.query}, {"result", q.result}});
  j["queries"] = qs;
  j["passed"] = passed();
  if (seconds) j["timing"] = {{"seconds", *seconds}, {"per_event", events ? *seconds / static_cast<double>(events) : 0.0}};
  return j;
}

RunStats run(const StreamFile& f, const RunFlags& fl) {
  Config k = resolve(f, fl);
  auto start = std::chrono::steady_clock::now();
  auto pipe = make(k);
  RunStats st;
  st.mode = k.mode;
  st.n = k.n;
  st.epsilon = k.epsilon;
  st.rho = k.rho;
  st.c = k.c;
  st.t = k.t;
  st.seed = k.seed;
  st.blend = k.blend;
  st.verify = fl.verify;
  st.verify_every = fl.verify_every;
  DynamicGraph g(k.n);
  std::size_t index = 0;
  for (const auto& s : f.lines) {
    if (!s.is_event()) {
      QueryRecord q;
      q.line = s.line;
      try {
        switch (s.kind) {
          case LineKind::QuerySide:
            if (s.v >= k.n + (k.a ? 2 : 0)) throw ReplayError(index, s.line, "vertex out of range");
            q.query = "side " + std::to_string(s.v);
            q.result = pipe->query_side(s.v);
            break;
          case LineKind::QueryValue:
            q.query = "value";
            q.result = pipe->query_value();
            break;
          default:
            q.query = "cuts";
            q.result = pipe->query_cuts(g);
        }
      } catch (const Unsupported& e) {
        throw ReplayError(index, s.line, e.what());
      }
      st.queries.push_back(std::move(q));
      continue;
    }
    UpdateEvent ev;
    if (s.kind == LineKind::Insert) {
      if (s.u >= k.n || s.v >= k.n) throw ReplayError(index, s.line, "vertex out of range");
      if (s.u == s.v) throw ReplayError(index, s.line, "self-loop");
      ev = UpdateEvent::insert({s.id, s.u, s.v, s.w});
    } else {
      if (!g.has_edge(s.id)) throw ReplayError(index, s.line, "unknown edge id " + std::to_string(s.id));
      ev = UpdateEvent::erase(s.id);
    }
    Outcome o;
    try {
      o = pipe->apply(ev);
    } catch (const std::exception& e) {
      throw ReplayError(index, s.line, e.what());
    }
    if (ev.is_insert()) {
      g.insert_edge(ev.edge);
      ++st.inserts;
    } else {
      g.delete_edge(ev.edge.id);
      ++st.deletes;
    }
    EventRecord r;
    r.index = index;
    r.line = s.line;
    r.insert = ev.is_insert();
    r.id = ev.edge.id;
    r.levels = o.levels;
    r.delta = o.delta;
    r.size = pipe->size();
    r.forests = fl.trace ? pipe->forests() : 0;
    r.value = pipe->value();
    if (r.value) st.values.push_back(*r.value);
    bool chain = k.mode == "cut" && !k.blend;
    std::size_t worst = 0;
    if (chain)
      for (std::size_t x : o.levels) worst = std::max(worst, x);
    st.max_level_delta = std::max(st.max_level_delta, worst);
    if (fl.verify && (index + 1) % fl.verify_every == 0) {
      Check c = pipe->verify(g);
      if (chain && worst > 1) {
        c.ok = false;
        c.detail = "more than one change reached a level";
      }
      if (c.skipped) {
        ++st.skipped;
      } else {
        ++st.checks;
        r.ratio = std::pair{c.lo, c.hi};
        st.min_ratio = std::min(st.min_ratio.value_or(c.lo), c.lo);
        st.max_ratio = std::max(st.max_ratio.value_or(c.hi), c.hi);
        r.ok = c.ok;
        if (!c.ok) {
          ++st.failures;
          if (!st.first_failure) st.first_failure = std::pair{index, c.detail};
        }
      }
    }
    if (fl.trace) st.trace.push_back(std::move(r));
    ++index;
  }
  st.events = index;
  st.sparsifier_size = pipe->size();
  st.forests = pipe->forests();
  if (fl.timing) st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return st;
}

}  // namespace dynsparse::cli
