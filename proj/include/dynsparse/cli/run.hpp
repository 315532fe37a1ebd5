#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynsparse/cli/stream.hpp"
#include "json.hpp"

namespace dynsparse::cli {

// flags override the stream header, which overrides the defaults
struct RunFlags {
  std::optional<std::string> mode;
  std::optional<double> epsilon, rho, c;
  std::optional<std::size_t> t;
  std::optional<std::uint64_t> seed;
  bool verify = false;
  std::size_t verify_every = 1;
  bool blend = false;   // cut mode through the two-instance phase wrapper
  bool timing = false;  // wall-clock fields break byte-identical output, so off by default
  bool trace = true;
};

const std::vector<std::string>& run_modes();

struct EventRecord {
  std::size_t index = 0, line = 0;
  bool insert = true;
  EdgeId id = 0;
  std::vector<std::size_t> levels;  // updates reaching each level
  std::size_t delta = 0;            // sparsifier changes
  std::size_t size = 0;             // sparsifier edges after the event
  std::size_t forests = 0;
  std::optional<double> value;
  std::optional<std::pair<double, double>> ratio;
  bool ok = true;
};

struct QueryRecord {
  std::size_t line = 0;
  std::string query;
  nlohmann::ordered_json result;
};

struct RunStats {
  std::string mode;
  std::size_t n = 0;
  double epsilon = 0.5, rho = 4, c = 1;
  std::optional<std::size_t> t;
  std::uint64_t seed = 1;
  bool blend = false;
  std::size_t events = 0, inserts = 0, deletes = 0;
  std::size_t sparsifier_size = 0, forests = 0, max_level_delta = 0;
  bool verify = false;
  std::size_t verify_every = 1, checks = 0, failures = 0, skipped = 0;
  std::optional<double> min_ratio, max_ratio;
  std::optional<std::pair<std::size_t, std::string>> first_failure;  // event index, detail
  std::vector<double> values;
  std::vector<EventRecord> trace;
  std::vector<QueryRecord> queries;
  std::optional<double> seconds;

  bool passed() const { return failures == 0; }
  nlohmann::ordered_json to_json() const;
};

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t event, std::size_t line, const std::string& msg)
      : std::runtime_error("event " + std::to_string(event) + " (line " + std::to_string(line) + "): " + msg),
        event_(event), line_(line) {}
  std::size_t event() const { return event_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t event_, line_;
};

// throws std::invalid_argument on bad configuration, ReplayError on a bad event
RunStats run(const StreamFile& f, const RunFlags& flags);

}  // namespace dynsparse::cli
