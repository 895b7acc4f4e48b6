#pragma once

// Exact integer lattice algebra: Gram pairings, Picard-Lefschetz twists,
// symbolic twist words and Smith normal form.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lefweave/error.hpp"

namespace lef {

// Expression templates off: keeps ?: and auto well-behaved.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using IntVector = std::vector<Int>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  IntVector column(std::size_t c) const;
  IntVector apply(const IntVector& x) const;  // this * x

  /// Exact determinant via fraction-free (Bareiss) elimination.
  Int determinant() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::string to_string(const IntMatrix& m);
std::string to_string(const IntVector& v);

enum class Symmetry { Symmetric, Skew };

inline const char* to_string(Symmetry s) { return s == Symmetry::Symmetric ? "symmetric" : "skew"; }

/// (-1)^{n(n+1)/2} * 2 for even n, 0 for odd n: the self-pairing of a
/// Lagrangian n-sphere in a 2n-dimensional fiber.
Int sphere_self_pairing(int n);

/// Free abelian group with an integer Gram form, standing in for H_n of a
/// 2n-dimensional fiber with its intersection pairing.  The form is symmetric
/// for even n and antisymmetric for odd n; the constructor enforces this.
class IntLattice {
 public:
  IntLattice(int n, IntMatrix gram, std::vector<std::string> labels);

  int n() const { return n_; }
  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }
  Symmetry symmetry() const { return n_ % 2 == 0 ? Symmetry::Symmetric : Symmetry::Skew; }

  /// Index of a basis label, or npos.
  std::size_t find_label(const std::string& label) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  IntVector basis_vector(std::size_t i) const;

 private:
  int n_;
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

/// A homology class of a sphere, optionally carrying a name.
struct SphereClass {
  IntVector coords;
  std::string label;

  friend bool operator==(const SphereClass&, const SphereClass&) = default;
};

/// Index i if the class is exactly the basis vector e_i, else npos.
std::size_t unit_index(const SphereClass& x);

Int pairing(const IntLattice& lattice, const IntVector& x, const IntVector& y);
Int pairing(const IntLattice& lattice, const SphereClass& x, const SphereClass& y);

/// Throws InvalidTwistCenter unless S has the self-pairing of a Lagrangian sphere.
void check_twist_center(const IntLattice& lattice, const SphereClass& center);

/// tau_S^exponent applied to x.  The single twist is x + eps<x,S>S with
/// eps = -2/<S,S> for even n (a reflection, so exponents act mod 2) and
/// eps = +1 for odd n (a transvection, so exponents add).
SphereClass dehn_twist(const IntLattice& lattice, const SphereClass& center, const SphereClass& x,
                       long long exponent = 1);

struct TwistWord;

/// One factor tau_C^exponent of a twist word.  The center is itself a
/// symbolic sphere; its homology class is cached alongside.
struct TwistLetter {
  std::shared_ptr<const TwistWord> center;
  IntVector center_class;
  long long exponent = 1;
};

/// A symbolic sphere: letters (outermost first) applied to a base class.
/// Equality is structural, so tau_S^2 V and V differ even when their classes agree.
struct TwistWord {
  std::vector<TwistLetter> letters;
  SphereClass base;

  static TwistWord generator(SphereClass base) { return TwistWord{{}, std::move(base)}; }

  bool is_generator() const { return letters.empty(); }

  /// Prepends tau_center^exponent and freely reduces.
  TwistWord prepended(const TwistWord& center, const IntVector& center_class, long long exponent) const;

  /// Merges adjacent letters with structurally equal centers and drops
  /// zero exponents, recursively inside centers as well.
  TwistWord reduced() const;

  /// Basis indices touched by any base class anywhere in the word tree.
  std::set<std::size_t> support() const;

  /// Pads or shifts every coordinate vector in the tree: new coordinate
  /// vectors have length new_rank and old entries land at offset + i.
  TwistWord reembedded(std::size_t new_rank, std::size_t offset) const;
};

bool operator==(const TwistLetter& a, const TwistLetter& b);
bool operator==(const TwistWord& a, const TwistWord& b);

/// Renders a word in the script syntax, e.g. "tw(e2)^2 e1".
std::string to_string(const TwistWord& w);

/// Applies letters right-to-left (innermost first).
SphereClass evaluate_word(const IntLattice& lattice, const TwistWord& w);

/// U * M * V = D with D diagonal, d_i | d_{i+1}, d_i >= 0, and U, V unimodular.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;
  IntVector divisors;  // the nonzero diagonal entries of D
};

SmithForm smith_normal_form(const IntMatrix& m);

}  // namespace lef
