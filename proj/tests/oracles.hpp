#pragma once

// Independent reference computations used only by tests.  Everything here
// is brute force on purpose and shares no code with the library beyond the
// matrix container.

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "lefweave/lattice.hpp"

namespace oracle {

using lef::Int;
using lef::IntMatrix;
using lef::IntVector;

/// Leibniz expansion over all permutations.
inline Int permutation_determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Int term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

/// Invariant factors from determinantal divisors: d_k = gcd of k x k minors.
inline std::vector<Int> invariant_factors(const IntMatrix& m) {
  std::vector<Int> out;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        IntMatrix minor(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(r[i], c[j]);
        g = gcd(g, permutation_determinant(minor));
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Rank over Q by fraction-free elimination on a copy.
inline std::size_t rational_rank(IntMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(p, j));
    for (std::size_t i = rank + 1; i < m.rows(); ++i) {
      const Int a = m(i, c), b = m(rank, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * b - m(rank, j) * a;
    }
    ++rank;
  }
  return rank;
}

/// Matching-cycle class of a neighborhood-boundary word for odd n: write
/// u_j = x_j^-1 ... x_1^-1, take Fox derivatives at t = -1, and
/// e_i = (-1)^i (c_1 + ... + c_i).
inline IntVector fox_class(const std::vector<int>& curve, std::size_t m) {
  std::vector<int> x;
  auto push = [&](int a) {
    if (!x.empty() && x.back() == -a)
      x.pop_back();
    else
      x.push_back(a);
  };
  for (int a : curve) {
    const int j = std::abs(a);
    std::vector<int> word;
    for (int k = j; k >= 1; --k) word.push_back(-k);
    if (a < 0) {
      std::reverse(word.begin(), word.end());
      for (auto& w : word) w = -w;
    }
    for (int w : word) push(w);
  }
  std::vector<Int> c(m + 1, 0);
  for (std::size_t k = 0; k < x.size(); ++k) c[static_cast<std::size_t>(std::abs(x[k]))] += (k % 2 == 0 ? 1 : -1);
  IntVector e(m - 1);
  Int run = 0;
  for (std::size_t i = 1; i < m; ++i) {
    run += c[i];
    e[i - 1] = i % 2 == 0 ? run : Int(-run);
  }
  return e;
}

/// For even n the class of an arc depends only on its endpoints.
inline IntVector endpoint_class(std::size_t i, std::size_t j, std::size_t m, int n) {
  IntVector e(m - 1, 0);
  const bool alternate = (static_cast<long long>(n) * (n + 1) / 2) % 2 == 0;
  for (std::size_t k = i; k < j; ++k) e[k - 1] = alternate && (k - i) % 2 == 1 ? -1 : 1;
  return e;
}

inline IntVector sign_normalized(IntVector v) {
  for (const Int& c : v) {
    if (c == 0) continue;
    if (c < 0)
      for (Int& d : v) d = -d;
    break;
  }
  return v;
}

}  // namespace oracle
