// lefweave command-line driver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "lefweave/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lef::Error(lef::ErrorCode::Precondition, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::vector<nlohmann::json>& outputs, const std::string& json_out) {
  std::string text;
  for (const auto& o : outputs) text += o.dump() + "\n";
  std::cout << text;
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    if (!out) throw lef::Error(lef::ErrorCode::Precondition, json_out + ": cannot write file");
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lefweave: symbolic calculus for Lefschetz presentations"};
  app.require_subcommand(1);

  std::string file, json_out;
  std::size_t depth = 0, width = 0;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::size_t sequences = 1000;

  auto* run = app.add_subcommand("run", "execute a .lef script");
  run->add_option("file", file, "script path")->required();
  run->add_option("--json-out", json_out, "also write the JSON lines to this file");
  auto* depth_opt = run->add_option("--depth", depth, "override search depth");
  auto* width_opt = run->add_option("--width", width, "override search width");
  run->add_option("--threads", threads, "search threads (0 = hardware)");

  auto* check = app.add_subcommand("check", "parse a script and print its canonical form");
  check->add_option("file", file, "script path")->required();

  auto* fuzz = app.add_subcommand("fuzz", "replay the random move-invariance property");
  fuzz->add_option("--seed", seed, "random seed")->required();
  fuzz->add_option("--count", sequences, "number of move sequences");
  fuzz->add_option("--json-out", json_out, "also write the JSON line to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      lef::RunOptions opts;
      if (*depth_opt) opts.depth = depth;
      if (*width_opt) opts.width = width;
      opts.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
      lef::RunResult r = lef::run_source(read_file(file), file, opts);
      emit(r.outputs, json_out);
      return r.exit_code;
    }
    if (*check) {
      const lef::dsl::Program p = lef::dsl::parse(read_file(file), file);
      lef::dsl::build_workspace(p, file);
      std::cout << lef::dsl::pretty(p);
      return 0;
    }
    if (*fuzz) {
      const lef::FuzzReport rep = lef::move_invariance_fuzz(seed, sequences);
      nlohmann::json out{{"command", "fuzz"},
                         {"seed", rep.seed},
                         {"sequences", rep.sequences},
                         {"failures", rep.failures},
                         {"first_failure", rep.first_failure ? nlohmann::json(*rep.first_failure) : nlohmann::json(nullptr)}};
      emit({out}, json_out);
      return rep.failures == 0 ? 0 : 1;
    }
  } catch (const lef::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
