#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynsparse/cli/generate.hpp"
#include "dynsparse/cli/run.hpp"

using namespace dynsparse::cli;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream o;
    o << std::cin.rdbuf();
    return o.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream o;
  o << in.rdbuf();
  return o.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic sparsifier replay and workload generation"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "replay a stream through one pipeline and print JSON stats");
  std::string input = "-", json_out;
  RunFlags fl;
  std::string mode;
  double eps = 0, rho = 0, c = 0;
  std::size_t t = 0;
  std::uint64_t seed = 0;
  run_cmd->add_option("stream", input, "stream file, - for stdin")->capture_default_str();
  run_cmd->add_option("--mode", mode, "cut | spectral | mincut2 | mincut1 | vertex | forest (default: header)")
      ->check(CLI::IsMember(run_modes()));
  auto* o_eps = run_cmd->add_option("--epsilon", eps, "accuracy in (0,1) (default: header, else 0.5)");
  auto* o_rho = run_cmd->add_option("--rho", rho, "sparsification factor (default: header, else 4)");
  auto* o_c = run_cmd->add_option("--c", c, "failure exponent (default: header, else 1)");
  auto* o_t = run_cmd->add_option("--t", t, "practical bundle size (default: header, else the theory value)");
  auto* o_seed = run_cmd->add_option("--seed", seed, "coin seed (default: header, else 1)");
  run_cmd->add_flag("--verify", fl.verify, "check against the exact oracles after events");
  run_cmd->add_option("--verify-every", fl.verify_every, "check every k-th event")->capture_default_str();
  run_cmd->add_flag("--blend", fl.blend, "cut mode through the phase-restart wrapper");
  run_cmd->add_flag("--timing", fl.timing, "add wall-clock timing to the JSON");
  bool no_trace = false;
  run_cmd->add_flag("--no-trace", no_trace, "omit the per-event trace");
  run_cmd->add_option("--json-out", json_out, "write JSON here instead of stdout");

  auto* gen_cmd = app.add_subcommand("generate", "write a deterministic stream");
  GenerateParams gp;
  std::string out;
  gen_cmd->add_option("kind", gp.kind, "gnp | bipartite-churn | delete-all | phase-stress")
      ->required()
      ->check(CLI::IsMember({"gnp", "bipartite-churn", "delete-all", "phase-stress"}));
  gen_cmd->add_option("--n", gp.n, "vertices")->capture_default_str();
  gen_cmd->add_option("--p", gp.p, "edge probability of the initial graph")->capture_default_str();
  gen_cmd->add_option("--a", gp.a, "left side (bipartite-churn)")->capture_default_str();
  gen_cmd->add_option("--b", gp.b, "right side (bipartite-churn)")->capture_default_str();
  gen_cmd->add_option("--events", gp.events, "churn events")->capture_default_str();
  gen_cmd->add_option("--insert-prob", gp.insert_prob, "insert probability of a churn event")->capture_default_str();
  gen_cmd->add_option("--wmax", gp.wmax, "integer weights in 1..wmax")->capture_default_str();
  gen_cmd->add_option("--phases", gp.phases, "n^2 boundaries crossed (phase-stress)")->capture_default_str();
  gen_cmd->add_option("--seed", gp.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("-o,--out", out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      emit(write_stream(generate(gp)), out);
      return 0;
    }
    if (!mode.empty()) fl.mode = mode;
    if (*o_eps) fl.epsilon = eps;
    if (*o_rho) fl.rho = rho;
    if (*o_c) fl.c = c;
    if (*o_t) fl.t = t;
    if (*o_seed) fl.seed = seed;
    fl.trace = !no_trace;
    auto st = run(parse_stream(slurp(input)), fl);
    emit(st.to_json().dump(2) + "\n", json_out);
    if (!st.passed()) {
      std::cerr << "verify failed at event " << st.first_failure->first << ": " << st.first_failure->second << "\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
