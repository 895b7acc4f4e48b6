#pragma once

// Lefschetz data W(M; V_1, ..., V_k) and the moves relating presentations
// of the same total space.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lefweave/arcs.hpp"
#include "lefweave/fiber.hpp"
#include "lefweave/lattice.hpp"

namespace lef {

struct VanishingCycle {
  TwistWord word;
  SphereClass klass;  // always evaluate_word(word)
  std::shared_ptr<const MatchingArc> arc;
  bool stabilization_sphere = false;
  bool loose_certified = false;
  /// Basis index of the handle sphere S_i when the cycle came out of
  /// subflexibilize as tau_{S_i}^2 V_i.
  std::optional<std::size_t> subflex_handle;
};

struct LefschetzDatum {
  FiberModel fiber;
  std::vector<VanishingCycle> cycles;

  int n() const { return fiber.lattice.n(); }
  std::size_t size() const { return cycles.size(); }
};

/// Structural equality: same fiber form and labels, same words and flags.
bool operator==(const LefschetzDatum& a, const LefschetzDatum& b);

/// Builds a cycle, validating the class against the fiber.
VanishingCycle make_cycle(const FiberModel& fiber, TwistWord word, std::shared_ptr<const MatchingArc> arc = nullptr);

LefschetzDatum make_datum(FiberModel fiber, const std::vector<TwistWord>& words);

/// Cycle from a matching arc of the fiber's arc system.
VanishingCycle cycle_from_arc(const FiberModel& fiber, const MatchingArc& arc);

/// tw(center)^exponent target, with the center class computed in the lattice.
TwistWord twist(const IntLattice& lattice, const TwistWord& center, long long exponent, const TwistWord& target);

/// (.., V_i, V_{i+1}, ..) -> (.., tau_{V_i} V_{i+1}, V_i, ..).  Indices are
/// 0-based; i = k-1 pairs the last cycle with the first.
LefschetzDatum hurwitz_left(const LefschetzDatum& d, std::size_t i);

/// (.., V_i, V_{i+1}, ..) -> (.., V_{i+1}, tau^{-1}_{V_{i+1}} V_i, ..).
LefschetzDatum hurwitz_right(const LefschetzDatum& d, std::size_t i);

inline bool move_wraps(const LefschetzDatum& d, std::size_t i) { return d.size() >= 2 && i + 1 == d.size(); }

/// (V_1, V_2, .., V_k) -> (V_2, .., V_k, V_1).
LefschetzDatum rotate(const LefschetzDatum& d);

/// Attaches a handle along a disk with the given pairings and appends its
/// sphere as a new cycle.  An empty label picks s<rank+1> or the next free one.
LefschetzDatum stabilize(const LefschetzDatum& d, const IntVector& pairings, std::string label = {});

/// SF: one handle H_i per cycle along the boundary of a disk T_i with
/// <T_i, V_i> = +-1, and V_i replaced by tau_{S_i}^2 V_i.  Entry i of
/// t_pairings lists T_i's pairings with the original basis.
LefschetzDatum subflexibilize(const LefschetzDatum& d, const std::vector<IntVector>& t_pairings);

/// Fiber sum; cycles of d1 followed by those of d2.
LefschetzDatum boundary_connect_sum(const LefschetzDatum& d1, const LefschetzDatum& d2);

/// Inserts a new unflagged cycle at position (0-based, npos appends).
LefschetzDatum add_cycle(const LefschetzDatum& d, TwistWord word, std::size_t position = IntLattice::npos);

/// Frees every word and recomputes every cached class.
LefschetzDatum normalize(const LefschetzDatum& d);

std::string to_string(const LefschetzDatum& d);

}  // namespace lef
