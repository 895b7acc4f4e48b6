#pragma once

// Matching arcs between marked points in the disk, up to isotopy.
//
// The m marked points p_1..p_m sit on a horizontal axis.  The axis is cut
// into segments s_1..s_m (s_j joins p_j to p_{j+1}, s_m runs from p_m to the
// boundary), and the fundamental group of the punctured disk is free on the
// dual loops u_1..u_m.  An arc is stored through the boundary curve of a
// thin neighborhood: a cyclic word in the u_j.  The braid group acts on these
// words by the Artin automorphisms, and two arcs are isotopic exactly when
// their curves agree as unoriented cyclic words.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "lefweave/lattice.hpp"

namespace lef {

struct MatchingArc;

/// One half-twist factor t_center^exponent of an arc word.
struct ArcLetter {
  std::shared_ptr<const MatchingArc> center;
  long long exponent = 1;
};

struct MatchingArc {
  std::size_t i = 0;  // endpoints, 1-based, i < j
  std::size_t j = 0;
  std::vector<long long> coords;  // crossings of the curve with s_1..s_m
  std::vector<int> curve;         // canonical cyclic word, letters +-g for u_g
  std::vector<int> braid;         // signed Artin generators, outermost first
  std::size_t base = 0;           // arc = braid(standard_arc(base))
  std::vector<ArcLetter> letters;  // outermost first
  std::string preset;             // catalogue name when read off a preset
};

class ArcSystem {
 public:
  ArcSystem(std::size_t m, int n);

  std::size_t m() const { return m_; }
  int n() const { return n_; }

  /// Names accepted by preset(): straight, lower, upper.
  static const std::vector<std::string>& preset_kinds();

  /// straight(i, i+1) is the standard arc.  lower(i, j) sweeps below the
  /// intermediate points (positive twists t_{j-1}..t_{i+1} of standard_arc(i)),
  /// upper(i, j) sweeps above them (negative twists).
  MatchingArc preset(const std::string& kind, std::size_t i, std::size_t j) const;

 private:
  std::size_t m_;
  int n_;
};

MatchingArc standard_arc(const ArcSystem& sys, std::size_t i);

/// t_a^exponent(b).  The result's word is (a, exponent) prepended to b's word.
MatchingArc apply_half_twist(const ArcSystem& sys, const MatchingArc& a, const MatchingArc& b,
                             long long exponent = 1);

bool arcs_isotopic(const MatchingArc& a, const MatchingArc& b);

/// Number of interior crossings of minimal representatives.
long long geometric_intersection(const ArcSystem& sys, const MatchingArc& a, const MatchingArc& b);

/// The lattice twist word over A_{m-1} induced by the arc word.
TwistWord arc_twist_word(const ArcSystem& sys, const MatchingArc& a);

/// Matching-cycle class of the arc with the first nonzero coordinate positive.
SphereClass arc_to_class(const ArcSystem& sys, const MatchingArc& a);

/// Lattice of the A_{m-1} part bound to the system.
IntLattice arc_lattice(const ArcSystem& sys);

// Free-group helpers, exposed for testing.
std::vector<int> canonical_curve(std::vector<int> w);
std::vector<int> act_braid(const std::vector<int>& braid, std::vector<int> w);
std::vector<int> standard_curve(std::size_t i);

}  // namespace lef
