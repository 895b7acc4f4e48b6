#include <utility>

#include "lefweave/lattice.hpp"

namespace lef {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row_dst -= q * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m(src, c) != 0) m(dst, c) -= q * m(src, c);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (m(r, src) != 0) m(r, dst) -= q * m(r, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix D = m;
  IntMatrix U = IntMatrix::identity(rows);
  IntMatrix V = IntMatrix::identity(cols);
  std::size_t t = 0;

  while (t < rows && t < cols) {
    // Smallest nonzero |entry| in the remaining block; ties go to the lowest row, then column.
    std::size_t pr = rows, pc = cols;
    Int best;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c) {
        if (D(r, c) == 0) continue;
        Int a = abs(D(r, c));
        if (pr == rows || a < best) {
          best = a;
          pr = r;
          pc = c;
        }
      }
    if (pr == rows) break;
    swap_rows(D, t, pr);
    swap_rows(U, t, pr);
    swap_cols(D, t, pc);
    swap_cols(V, t, pc);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (D(r, t) == 0) continue;
        Int q = floor_div(D(r, t), D(t, t));
        add_row(D, r, t, q);
        add_row(U, r, t, q);
        if (D(r, t) != 0) {
          swap_rows(D, t, r);
          swap_rows(U, t, r);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (D(t, c) == 0) continue;
        Int q = floor_div(D(t, c), D(t, t));
        add_col(D, c, t, q);
        add_col(V, c, t, q);
        if (D(t, c) != 0) {
          swap_cols(D, t, c);
          swap_cols(V, t, c);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and go again.
      for (std::size_t r = t + 1; r < rows && clean; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (D(r, c) % D(t, t) != 0) {
            add_row(D, t, r, Int(-1));
            add_row(U, t, r, Int(-1));
            clean = false;
            break;
          }
    }
    if (D(t, t) < 0) {
      negate_row(D, t);
      negate_row(U, t);
    }
    ++t;
  }

  SmithForm out;
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.divisors.push_back(D(i, i));
  out.U = std::move(U);
  out.D = std::move(D);
  out.V = std::move(V);
  return out;
}

}  // namespace lef
