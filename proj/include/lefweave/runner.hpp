#pragma once

// Command execution and canonical JSON export.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lefweave/certify.hpp"
#include "lefweave/dsl.hpp"
#include "lefweave/invariants.hpp"

namespace lef {

/// Integers that fit in int64 become JSON numbers, larger ones strings.
nlohmann::json int_json(const Int& v);

nlohmann::json export_json(const TotalSpaceInvariants& inv);
nlohmann::json export_json(const VerifyResult& r);
nlohmann::json export_json(const Certificate& c);

struct RunOptions {
  std::optional<std::size_t> depth;  // overrides every search command
  std::optional<std::size_t> width;
  unsigned threads = 1;
};

struct RunResult {
  std::vector<nlohmann::json> outputs;  // one object per command
  int exit_code = 0;  // 0 ok, 1 rejection or search miss
};

/// Parses, defines and executes.  Errors propagate as lef::Error.
RunResult run_source(const std::string& text, const std::string& file, const RunOptions& options = {});

RunResult run_program(const dsl::Program& program, const std::string& file, const RunOptions& options = {});

/// Random datum for property checks: fiber rank <= max_rank, k <= max_cycles.
LefschetzDatum random_datum(std::uint64_t seed, int n, std::size_t max_rank, std::size_t max_cycles);

struct FuzzReport {
  std::uint64_t seed = 0;
  std::size_t sequences = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_failure;
};

/// Random move sequences (Hurwitz, rotation, stabilization) checked for
/// invariant preservation.  Reproducible from the seed.
FuzzReport move_invariance_fuzz(std::uint64_t seed, std::size_t sequences);

}  // namespace lef
