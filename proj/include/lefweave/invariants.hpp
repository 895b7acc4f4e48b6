#pragma once

// Smooth invariants of the total space of a Lefschetz datum.

#include <optional>
#include <vector>

#include "lefweave/lattice.hpp"
#include "lefweave/lefschetz.hpp"

namespace lef {

struct HomologyGroup {
  int degree = 0;
  Int free = 0;
  std::vector<Int> torsion;  // invariant factors > 1, ascending

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct FormInvariants {
  std::size_t rank = 0;
  Int det = 1;  // |det| of the nondegenerate part
  std::optional<Int> signature;  // symmetric forms only

  friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
};

struct TotalSpaceInvariants {
  int n = 0;
  Int chi = 0;
  std::vector<HomologyGroup> homology;  // every degree 0..top
  std::optional<IntMatrix> middle_form;  // on a basis of H_{n+1}; basis dependent
  Symmetry form_symmetry = Symmetry::Symmetric;
  std::optional<FormInvariants> form_invariants;
};

/// Compares everything except the basis-dependent form matrix.
bool operator==(const TotalSpaceInvariants& a, const TotalSpaceInvariants& b);

/// Homology and chi from the thimble chain model; no form.
TotalSpaceInvariants total_space_homology(const LefschetzDatum& d);

/// chi(fiber) + (-1)^{n+1} k, cross-checked against the homology.
Int euler_characteristic(const LefschetzDatum& d);

/// Intersection form on H_{n+1} = ker(d), in the kernel basis read off the
/// Smith form.  Symmetric iff n+1 is even.
IntMatrix middle_intersection_form(const LefschetzDatum& d);

FormInvariants form_invariants(const IntMatrix& form, Symmetry symmetry);

/// Homology, chi, middle form and its invariants.
TotalSpaceInvariants compute_invariants(const LefschetzDatum& d);

/// Kunneth product of two graded groups (lists indexed by degree from 0).
/// Throws Unsupported when a Tor term would be nonzero.
std::vector<HomologyGroup> kunneth(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b);

/// Invariants of W x D*S^j (homology and chi only).
TotalSpaceInvariants product_with_cotangent_sphere(const TotalSpaceInvariants& inv, int j);

/// Invariant factors > 1 of the direct sum of cyclic groups Z/c.
std::vector<Int> canonical_torsion(const std::vector<Int>& orders);

}  // namespace lef
