#pragma once

// Syntactic flexibility certificates.
//
// A certificate is a list of steps replayed from a starting datum.  Moves
// change the presentation; certification steps flag cycles.  A cycle may be
// flagged as a stabilization sphere (a bare basis sphere that cancels its
// handle because no earlier cycle runs through it) or as loose (it reads
// tau_S L right after such a sphere S, with S meeting L once).  The datum is
// certified when every cycle carries a valid flag at the end.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lefweave/lefschetz.hpp"

namespace lef {

enum class StepKind {
  HurwitzLeft,
  HurwitzRight,
  Rotate,
  Stabilize,
  Subflex,
  BoundarySum,
  AddCycle,
  CertifyLoose,
  CertifyStab,
  Flexify,
};

struct Step {
  StepKind kind = StepKind::Rotate;
  std::size_t index = 0;  // 0-based cycle index; AddCycle: insert position (npos appends)
  IntVector ints;  // Stabilize pairings
  std::vector<IntVector> lists;  // Subflex disk pairings
  std::string name;  // AddCycle basis label, Stabilize label, BoundarySum datum name
  std::shared_ptr<const LefschetzDatum> datum;  // BoundarySum operand

  bool is_move() const { return kind != StepKind::CertifyLoose && kind != StepKind::CertifyStab; }
};

/// Script syntax for a step, with 1-based indices.
std::string to_string(const Step& s);

struct Certificate {
  std::vector<Step> steps;
  std::string terminal_claim;  // "flexible" | "subcritical", filled by verification
};

struct TraceEntry {
  std::size_t step = 0;  // 1-based position in the expanded step list
  std::string text;
  std::string datum;
  bool wraps = false;
};

struct VerifyResult {
  bool accepted = false;
  std::string conclusion;  // "flexible", "subflexible" or "rejected"
  std::string terminal_claim;
  std::string reason;
  std::optional<std::size_t> failed_step;  // 1-based
  std::vector<TraceEntry> trace;
  std::vector<Step> expanded;  // flexify steps spliced out
  std::size_t hurwitz_moves = 0;
  std::size_t handles_attached = 0;
  bool used_wrap = false;
  std::optional<LefschetzDatum> final_datum;
};

/// Why rule_loose_pair would fail at (i, i+1), or nullopt.
std::optional<std::string> loose_pair_violation(const LefschetzDatum& d, std::size_t i);

/// Why cycle i cannot be flagged as a stabilization sphere, or nullopt.
std::optional<std::string> stabilization_violation(const LefschetzDatum& d, std::size_t i);

/// Flags cycle i+1 loose; throws Precondition with the violation otherwise.
LefschetzDatum rule_loose_pair(const LefschetzDatum& d, std::size_t i);

/// Flags cycle i as a stabilization sphere; throws Precondition otherwise.
LefschetzDatum rule_stabilization_sphere(const LefschetzDatum& d, std::size_t i);

/// Checks every flag left to right; returns the first failure.
std::optional<std::string> certified_failure(const LefschetzDatum& d);

/// Applies one step.  Flexify is not accepted here (see expand_flexify).
LefschetzDatum apply_step(const LefschetzDatum& d, const Step& s);

VerifyResult verify_certificate(const LefschetzDatum& d, const Certificate& c);

/// Replays an already expanded step list along a separate path and
/// re-checks the final flags.  Used as a soundness audit of verification.
bool audit_certificate(const LefschetzDatum& d, const std::vector<Step>& expanded);

struct FlexifyResult {
  LefschetzDatum interleaved;  // (.., tau^2_{S_i} V_i, S_i, ..)
  Certificate certificate;     // verifies against interleaved
  std::vector<Step> add_steps;  // the cycle additions producing interleaved
};

/// Requires every cycle to come out of subflexibilize.
FlexifyResult flexify_after_handles(const LefschetzDatum& d_sf);

/// Greedily applies every available certification; returns the steps taken.
std::vector<Step> greedy_certify(LefschetzDatum& d);

struct SearchResult {
  std::optional<Certificate> certificate;
  std::size_t nodes = 0;
  std::size_t depth_reached = 0;
};

/// Breadth-first search over rotate < hurwitzL < hurwitzR < stabilize
/// (unit pairings), greedy certification at every node.  The answer does not
/// depend on the thread count.
SearchResult search_certificate(const LefschetzDatum& d, std::size_t depth, std::size_t width, unsigned threads = 1);

}  // namespace lef
