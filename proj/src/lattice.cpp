#include "lefweave/lattice.hpp"

#include <sstream>

namespace lef {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::InvalidTwistCenter: return "invalid-twist-center";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::ParityMismatch: return "parity-mismatch";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::UndefinedName: return "undefined-name";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  IntVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
  return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product size mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string to_string(const IntVector& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? "," : "") << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << ']';
  }
  out << ']';
  return out.str();
}

// --------------------------------------------------------------- IntLattice

Int sphere_self_pairing(int n) {
  if (n % 2 != 0) return 0;
  const long long tri = static_cast<long long>(n) * (n + 1) / 2;
  return tri % 2 == 0 ? Int(2) : Int(-2);
}

IntLattice::IntLattice(int n, IntMatrix gram, std::vector<std::string> labels)
    : n_(n), gram_(std::move(gram)), labels_(std::move(labels)) {
  if (n_ < 1) throw Error(ErrorCode::Precondition, "lattice half-dimension must be positive");
  if (gram_.rows() != gram_.cols()) throw Error(ErrorCode::DimensionMismatch, "gram matrix must be square");
  if (labels_.size() != gram_.rows())
    throw Error(ErrorCode::DimensionMismatch, "lattice rank does not match the number of basis labels");
  const bool symmetric = n_ % 2 == 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) {
      const Int expected = symmetric ? gram_(j, i) : Int(-gram_(j, i));
      if (gram_(i, j) != expected)
        throw Error(ErrorCode::Precondition, symmetric ? "gram must be symmetric for even n"
                                                       : "gram must be antisymmetric for odd n");
    }
}

std::size_t IntLattice::find_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return npos;
}

IntVector IntLattice::basis_vector(std::size_t i) const {
  if (i >= rank()) throw Error(ErrorCode::OutOfRange, "basis index out of range");
  IntVector v(rank());
  v[i] = 1;
  return v;
}

std::size_t unit_index(const SphereClass& x) {
  std::size_t found = IntLattice::npos;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] == 0) continue;
    if (x.coords[i] != 1 || found != IntLattice::npos) return IntLattice::npos;
    found = i;
  }
  return found;
}

Int pairing(const IntLattice& lattice, const IntVector& x, const IntVector& y) {
  const std::size_t r = lattice.rank();
  if (x.size() != r || y.size() != r) {
    std::ostringstream msg;
    msg << "pairing: vectors of length " << x.size() << " and " << y.size() << " in a lattice of rank " << r;
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  Int total = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    Int row = 0;
    for (std::size_t j = 0; j < r; ++j)
      if (y[j] != 0) row += lattice.gram()(i, j) * y[j];
    total += x[i] * row;
  }
  return total;
}

Int pairing(const IntLattice& lattice, const SphereClass& x, const SphereClass& y) {
  return pairing(lattice, x.coords, y.coords);
}

void check_twist_center(const IntLattice& lattice, const SphereClass& center) {
  if (center.coords.size() != lattice.rank())
    throw Error(ErrorCode::DimensionMismatch, "twist center has the wrong length");
  if (lattice.n() % 2 != 0) return;
  const Int self = pairing(lattice, center, center);
  const Int want = sphere_self_pairing(lattice.n());
  if (self != want) {
    std::ostringstream msg;
    msg << "invalid twist center " << (center.label.empty() ? to_string(center.coords) : center.label)
        << ": self-pairing " << self << ", expected " << want << " for n=" << lattice.n();
    throw Error(ErrorCode::InvalidTwistCenter, msg.str());
  }
}

SphereClass dehn_twist(const IntLattice& lattice, const SphereClass& center, const SphereClass& x,
                       long long exponent) {
  check_twist_center(lattice, center);
  if (x.coords.size() != lattice.rank()) throw Error(ErrorCode::DimensionMismatch, "twisted class has the wrong length");
  Int scale;
  if (lattice.n() % 2 == 0) {
    if (exponent % 2 == 0) return x;
    const Int eps = Int(-2) / sphere_self_pairing(lattice.n());
    scale = eps * pairing(lattice, x, center);
  } else {
    scale = Int(exponent) * pairing(lattice, x, center);
  }
  SphereClass out = x;
  if (scale == 0) return out;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += scale * center.coords[i];
  return out;
}

// ---------------------------------------------------------------- TwistWord

bool operator==(const TwistLetter& a, const TwistLetter& b) {
  if (a.exponent != b.exponent) return false;
  if (a.center == b.center) return true;
  return a.center && b.center && *a.center == *b.center;
}

bool operator==(const TwistWord& a, const TwistWord& b) {
  return a.base == b.base && a.letters == b.letters;
}

namespace {

bool same_center(const TwistLetter& a, const TwistLetter& b) {
  return a.center == b.center || (a.center && b.center && *a.center == *b.center);
}

void push_reduced(std::vector<TwistLetter>& out, TwistLetter letter) {
  if (letter.exponent == 0) return;
  if (!out.empty() && same_center(out.back(), letter)) {
    out.back().exponent += letter.exponent;
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back(std::move(letter));
}

}  // namespace

TwistWord TwistWord::reduced() const {
  TwistWord w;
  w.base = base;
  for (const auto& letter : letters) {
    TwistLetter copy = letter;
    if (copy.center && !copy.center->letters.empty()) {
      TwistWord inner = copy.center->reduced();
      if (!(inner == *copy.center)) copy.center = std::make_shared<const TwistWord>(std::move(inner));
    }
    push_reduced(w.letters, std::move(copy));
  }
  return w;
}

TwistWord TwistWord::prepended(const TwistWord& center, const IntVector& center_class, long long exponent) const {
  TwistWord w;
  w.base = base;
  w.letters.reserve(letters.size() + 1);
  push_reduced(w.letters, TwistLetter{std::make_shared<const TwistWord>(center), center_class, exponent});
  for (const auto& letter : letters) push_reduced(w.letters, letter);
  return w;
}

std::set<std::size_t> TwistWord::support() const {
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < base.coords.size(); ++i)
    if (base.coords[i] != 0) s.insert(i);
  for (const auto& letter : letters) {
    auto inner = letter.center->support();
    s.insert(inner.begin(), inner.end());
  }
  return s;
}

namespace {

IntVector reembed(const IntVector& v, std::size_t new_rank, std::size_t offset) {
  IntVector out(new_rank);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (offset + i >= new_rank) throw Error(ErrorCode::DimensionMismatch, "re-embedding does not fit");
    out[offset + i] = v[i];
  }
  return out;
}

}  // namespace

TwistWord TwistWord::reembedded(std::size_t new_rank, std::size_t offset) const {
  TwistWord w;
  w.base = SphereClass{reembed(base.coords, new_rank, offset), base.label};
  for (const auto& letter : letters)
    w.letters.push_back(TwistLetter{std::make_shared<const TwistWord>(letter.center->reembedded(new_rank, offset)),
                                    reembed(letter.center_class, new_rank, offset), letter.exponent});
  return w;
}

std::string to_string(const TwistWord& w) {
  std::string out;
  for (const auto& letter : w.letters) {
    out += "tw(" + to_string(*letter.center) + ")";
    out += "^" + std::to_string(letter.exponent) + " ";
  }
  out += w.base.label.empty() ? to_string(w.base.coords) : w.base.label;
  return out;
}

SphereClass evaluate_word(const IntLattice& lattice, const TwistWord& w) {
  if (w.base.coords.size() != lattice.rank())
    throw Error(ErrorCode::DimensionMismatch, "word base has the wrong length for this lattice");
  SphereClass x{w.base.coords, {}};
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    x = dehn_twist(lattice, SphereClass{it->center_class, it->center->base.label}, x, it->exponent);
  x.label = w.letters.empty() ? w.base.label : std::string{};
  return x;
}

}  // namespace lef
