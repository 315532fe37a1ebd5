#include "dynsparse/cli/stream.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace dynsparse::cli {

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

template <class T>
T integer(const std::string& s, std::size_t line, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw StreamError(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

double real(const std::string& s, std::size_t line, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v))
    throw StreamError(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(17);
  o << x;
  return o.str();
}

}  // namespace

StreamFile parse_stream(const std::string& text) {
  StreamFile f;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  EdgeId inserts = 0;
  bool body = false;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    auto tk = tokens(raw);
    if (tk.empty()) continue;
    const std::string& k = tk[0];
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (tk.size() < lo || tk.size() > hi) throw StreamError(line, "wrong number of fields for '" + k + "'");
    };
    if (k == "i") {
      arity(3, 4);
      StreamLine s;
      s.kind = LineKind::Insert;
      s.line = line;
      s.u = integer<VertexId>(tk[1], line, "vertex");
      s.v = integer<VertexId>(tk[2], line, "vertex");
      if (tk.size() == 4) s.w = real(tk[3], line, "weight");
      if (!(s.w > 0)) throw StreamError(line, "weight must be positive");
      s.id = inserts++;
      f.lines.push_back(s);
      body = true;
    } else if (k == "d") {
      arity(2, 2);
      StreamLine s;
      s.kind = LineKind::Delete;
      s.line = line;
      s.id = integer<EdgeId>(tk[1], line, "edge id");
      f.lines.push_back(s);
      body = true;
    } else if (k == "q") {
      if (tk.size() < 2) throw StreamError(line, "query without a kind");
      StreamLine s;
      s.line = line;
      if (tk[1] == "side") {
        arity(3, 3);
        s.kind = LineKind::QuerySide;
        s.v = integer<VertexId>(tk[2], line, "vertex");
      } else if (tk[1] == "value") {
        arity(2, 2);
        s.kind = LineKind::QueryValue;
      } else if (tk[1] == "cuts") {
        arity(2, 2);
        s.kind = LineKind::QueryCuts;
      } else {
        throw StreamError(line, "unknown query '" + tk[1] + "'");
      }
      f.lines.push_back(s);
      body = true;
    } else {
      static const char* keys[] = {"n", "mode", "epsilon", "rho", "c", "seed", "wmax", "t", "a", "b"};
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) throw StreamError(line, "unknown directive '" + k + "'");
      if (body) throw StreamError(line, "header key '" + k + "' after the first event");
      arity(2, 2);
      auto& h = f.header;
      const std::string& v = tk[1];
      if (k == "n") h.n = integer<std::size_t>(v, line, "n");
      else if (k == "mode") h.mode = v;
      else if (k == "epsilon") h.epsilon = real(v, line, "epsilon");
      else if (k == "rho") h.rho = real(v, line, "rho");
      else if (k == "c") h.c = real(v, line, "c");
      else if (k == "seed") h.seed = integer<std::uint64_t>(v, line, "seed");
      else if (k == "wmax") h.wmax = real(v, line, "wmax");
      else if (k == "t") h.t = integer<std::size_t>(v, line, "t");
      else if (k == "a") h.a = integer<std::size_t>(v, line, "a");
      else h.b = integer<std::size_t>(v, line, "b");
    }
  }
  return f;
}

std::string write_stream(const StreamFile& f) {
  std::ostringstream o;
  const auto& h = f.header;
  if (h.n) o << "n " << *h.n << '\n';
  if (h.mode) o << "mode " << *h.mode << '\n';
  if (h.a) o << "a " << *h.a << '\n';
  if (h.b) o << "b " << *h.b << '\n';
  if (h.epsilon) o << "epsilon " << fmt(*h.epsilon) << '\n';
  if (h.rho) o << "rho " << fmt(*h.rho) << '\n';
  if (h.c) o << "c " << fmt(*h.c) << '\n';
  if (h.seed) o << "seed " << *h.seed << '\n';
  if (h.wmax) o << "wmax " << fmt(*h.wmax) << '\n';
  if (h.t) o << "t " << *h.t << '\n';
  for (const auto& s : f.lines) {
    switch (s.kind) {
      case LineKind::Insert:
        o << "i " << s.u << ' ' << s.v;
        if (s.w != 1.0) o << ' ' << fmt(s.w);
        o << '\n';
        break;
      case LineKind::Delete: o << "d " << s.id << '\n'; break;
      case LineKind::QuerySide: o << "q side " << s.v << '\n'; break;
      case LineKind::QueryValue: o << "q value\n"; break;
      case LineKind::QueryCuts: o << "q cuts\n"; break;
    }
  }
  return o.str();
}

}  // namespace dynsparse::cli
