#pragma once

// Fiber lattices: plumbings of cotangent disk bundles of spheres, extended
// by stabilizing Weinstein handles.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lefweave/arcs.hpp"
#include "lefweave/lattice.hpp"

namespace lef {

struct PlumbingEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  int sign = 1;
};

/// Vertices are sphere labels; edges join vertex indices.  Must be a forest.
struct PlumbingTree {
  std::vector<std::string> vertices;
  std::vector<PlumbingEdge> edges;

  /// A_k: labels e1..ek joined in a line.
  static PlumbingTree chain(std::size_t k);
};

struct StabilizingHandle {
  std::string label;
  IntVector pairings;  // against the basis that existed when attached
};

struct FiberModel {
  IntLattice lattice;
  std::vector<StabilizingHandle> stabilizing;
  std::shared_ptr<const ArcSystem> arcs;  // matching-type fibers only
  std::vector<long long> low_degree_ranks;  // free ranks of H_0..H_{n-1}

  bool is_stabilizing(std::size_t basis_index) const;
  Int euler_characteristic() const;
};

FiberModel plumbing_lattice(const PlumbingTree& tree, int n);

/// The 2n-ball: a fiber with no middle-dimensional spheres.
FiberModel ball_fiber(int n);

/// A_{m-1} plumbing with an m-point arc system; straight arc (i,i+1) is e_i.
FiberModel ak_matching_fiber(std::size_t m, int n);

/// New basis vector s with <s,b_j> = pairings_j; returns the extended fiber and s.
std::pair<FiberModel, SphereClass> attach_stabilizing_handle(const FiberModel& fiber, const IntVector& pairings,
                                                             const std::string& label);

/// Orthogonal sum of the two lattices (boundary connected sum of fibers).
/// Second-factor labels that collide get a numeric suffix.  Only the first
/// fiber's arc system survives.
FiberModel fiber_direct_sum(const FiberModel& a, const FiberModel& b);

}  // namespace lef
