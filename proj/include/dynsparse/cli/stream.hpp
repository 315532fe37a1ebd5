#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynsparse/graph.hpp"

namespace dynsparse::cli {

// header keys may appear in any order before the first event or query
struct StreamHeader {
  std::optional<std::size_t> n;
  std::optional<std::string> mode;
  std::optional<double> epsilon, rho, c, wmax;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> t;
  std::optional<std::size_t> a, b;  // bipartite sides for the mincut modes
};

enum class LineKind { Insert, Delete, QuerySide, QueryValue, QueryCuts };

struct StreamLine {
  LineKind kind = LineKind::Insert;
  std::size_t line = 0;  // 1-based source line
  VertexId u = 0, v = 0;  // insert endpoints; v is the vertex of q side
  double w = 1.0;
  EdgeId id = 0;  // insert: implicit id (inserts counted from 0); delete: target
  bool is_event() const { return kind == LineKind::Insert || kind == LineKind::Delete; }
};

struct StreamFile {
  StreamHeader header;
  std::vector<StreamLine> lines;
};

class StreamError : public std::runtime_error {
 public:
  StreamError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

StreamFile parse_stream(const std::string& text);
std::string write_stream(const StreamFile& f);

}  // namespace dynsparse::cli
