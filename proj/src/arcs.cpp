#include "lefweave/arcs.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "lefweave/fiber.hpp"

namespace lef {

namespace {

void push_letter(std::vector<int>& out, int a) {
  if (!out.empty() && out.back() == -a)
    out.pop_back();
  else
    out.push_back(a);
}

std::vector<int> inverse_word(const std::vector<int>& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

std::vector<int> min_rotation(const std::vector<int>& w) {
  std::vector<int> best = w;
  std::vector<int> rot(w.size());
  for (std::size_t k = 1; k < w.size(); ++k) {
    std::rotate_copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end(), rot.begin());
    if (rot < best) best = rot;
  }
  return best;
}

// Image of u_g under sigma_i^{sign}; u_0 is the identity.
void append_image(std::vector<int>& out, int letter, int i, int sign) {
  const int g = std::abs(letter);
  if (g != i) {
    push_letter(out, letter);
    return;
  }
  std::vector<int> image;
  if (sign > 0) {
    if (i > 1) image.push_back(i - 1);
    image.push_back(-i);
    image.push_back(i + 1);
  } else {
    image.push_back(i + 1);
    image.push_back(-i);
    if (i > 1) image.push_back(i - 1);
  }
  if (letter < 0) image = inverse_word(image);
  for (int a : image) push_letter(out, a);
}

std::vector<int> reduce_braid(const std::vector<int>& b) {
  std::vector<int> out;
  for (int g : b) push_letter(out, g);
  return out;
}

void braid_endpoints(const std::vector<int>& braid, std::size_t base, std::size_t& i, std::size_t& j) {
  std::size_t a = base, b = base + 1;
  for (auto it = braid.rbegin(); it != braid.rend(); ++it) {
    const std::size_t g = static_cast<std::size_t>(std::abs(*it));
    for (std::size_t* p : {&a, &b}) {
      if (*p == g)
        *p = g + 1;
      else if (*p == g + 1)
        *p = g;
    }
  }
  i = std::min(a, b);
  j = std::max(a, b);
}

std::vector<long long> crossing_counts(const std::vector<int>& curve, std::size_t m) {
  std::vector<long long> c(m, 0);
  for (int a : curve) ++c[static_cast<std::size_t>(std::abs(a)) - 1];
  return c;
}

MatchingArc finish_arc(const ArcSystem& sys, std::vector<int> braid, std::size_t base, std::vector<ArcLetter> letters) {
  MatchingArc out;
  out.braid = reduce_braid(braid);
  out.base = base;
  out.curve = canonical_curve(act_braid(out.braid, standard_curve(base)));
  out.coords = crossing_counts(out.curve, sys.m());
  braid_endpoints(out.braid, base, out.i, out.j);
  out.letters = std::move(letters);
  return out;
}

}  // namespace

std::vector<int> canonical_curve(std::vector<int> w) {
  std::vector<int> r;
  for (int a : w) push_letter(r, a);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<int> cyc(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
  if (cyc.empty()) return cyc;
  std::vector<int> a = min_rotation(cyc);
  std::vector<int> b = min_rotation(inverse_word(cyc));
  return std::min(a, b);
}

std::vector<int> act_braid(const std::vector<int>& braid, std::vector<int> w) {
  for (auto it = braid.rbegin(); it != braid.rend(); ++it) {
    const int i = std::abs(*it);
    const int sign = *it > 0 ? 1 : -1;
    std::vector<int> next;
    next.reserve(w.size() + 4);
    for (int a : w) append_image(next, a, i, sign);
    w = std::move(next);
  }
  return w;
}

std::vector<int> standard_curve(std::size_t i) {
  std::vector<int> w;
  if (i > 1) w.push_back(static_cast<int>(i) - 1);
  w.push_back(-static_cast<int>(i) - 1);
  return w;
}

ArcSystem::ArcSystem(std::size_t m, int n) : m_(m), n_(n) {
  if (m < 2) throw Error(ErrorCode::Precondition, "an arc system needs at least two marked points");
  if (n < 1) throw Error(ErrorCode::Precondition, "half-dimension must be positive");
}

const std::vector<std::string>& ArcSystem::preset_kinds() {
  static const std::vector<std::string> kinds{"lower", "straight", "upper"};
  return kinds;
}

MatchingArc ArcSystem::preset(const std::string& kind, std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > m_ || i == j) {
    std::ostringstream msg;
    msg << "arc endpoints (" << i << "," << j << ") out of range for " << m_ << " marked points";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  MatchingArc arc;
  if (kind == "straight") {
    if (j != i + 1) throw Error(ErrorCode::Precondition, "a straight arc must join adjacent points");
    arc = standard_arc(*this, i);
  } else if (kind == "lower" || kind == "upper") {
    const long long e = kind == "lower" ? 1 : -1;
    arc = standard_arc(*this, i);
    for (std::size_t k = i + 1; k < j; ++k) arc = apply_half_twist(*this, standard_arc(*this, k), arc, e);
  } else {
    throw Error(ErrorCode::UndefinedName, "unknown arc preset '" + kind + "' (expected lower, straight or upper)");
  }
  arc.preset = kind;
  return arc;
}

MatchingArc standard_arc(const ArcSystem& sys, std::size_t i) {
  if (i < 1 || i >= sys.m()) {
    std::ostringstream msg;
    msg << "standard arc " << i << " out of range for " << sys.m() << " marked points";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  return finish_arc(sys, {}, i, {});
}

MatchingArc apply_half_twist(const ArcSystem& sys, const MatchingArc& a, const MatchingArc& b, long long exponent) {
  if (exponent == 0) return b;
  if (a.coords.size() != sys.m() || b.coords.size() != sys.m())
    throw Error(ErrorCode::DimensionMismatch, "arcs belong to a different arc system");
  std::vector<int> braid = a.braid;
  const int g = static_cast<int>(a.base) * (exponent > 0 ? 1 : -1);
  for (long long k = 0; k < (exponent > 0 ? exponent : -exponent); ++k) braid.push_back(g);
  for (int x : inverse_word(a.braid)) braid.push_back(x);
  for (int x : b.braid) braid.push_back(x);

  std::vector<ArcLetter> letters;
  letters.push_back(ArcLetter{std::make_shared<const MatchingArc>(a), exponent});
  // Free reduction against b's outermost letter when the centers coincide.
  for (std::size_t k = 0; k < b.letters.size(); ++k) {
    const ArcLetter& l = b.letters[k];
    if (k == 0 && l.center->base == a.base && l.center->braid == a.braid) {
      letters.back().exponent += l.exponent;
      if (letters.back().exponent == 0) letters.pop_back();
      continue;
    }
    letters.push_back(l);
  }
  return finish_arc(sys, braid, b.base, std::move(letters));
}

bool arcs_isotopic(const MatchingArc& a, const MatchingArc& b) {
  return a.i == b.i && a.j == b.j && a.curve == b.curve;
}

long long geometric_intersection(const ArcSystem& sys, const MatchingArc& a, const MatchingArc& b) {
  if (arcs_isotopic(a, b)) return 0;
  const std::vector<int> w = canonical_curve(act_braid(inverse_word(a.braid), b.curve));
  long long crossings = 0;
  for (int x : w)
    if (static_cast<std::size_t>(std::abs(x)) == a.base) ++crossings;
  long long shared = 0;
  for (std::size_t p : {a.i, a.j})
    if (p == b.i || p == b.j) ++shared;
  (void)sys;
  return (crossings - shared) / 2;
}

IntLattice arc_lattice(const ArcSystem& sys) { return plumbing_lattice(PlumbingTree::chain(sys.m() - 1), sys.n()).lattice; }

namespace {

TwistWord twist_word_in(const IntLattice& lattice, const MatchingArc& a) {
  TwistWord w = TwistWord::generator(SphereClass{lattice.basis_vector(a.base - 1), lattice.labels()[a.base - 1]});
  for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) {
    TwistWord center = twist_word_in(lattice, *it->center);
    IntVector klass = evaluate_word(lattice, center).coords;
    w = w.prepended(center, klass, it->exponent);
  }
  return w;
}

}  // namespace

TwistWord arc_twist_word(const ArcSystem& sys, const MatchingArc& a) { return twist_word_in(arc_lattice(sys), a); }

SphereClass arc_to_class(const ArcSystem& sys, const MatchingArc& a) {
  const IntLattice lattice = arc_lattice(sys);
  SphereClass x = evaluate_word(lattice, twist_word_in(lattice, a));
  for (const Int& c : x.coords) {
    if (c == 0) continue;
    if (c < 0)
      for (Int& d : x.coords) d = -d;
    break;
  }
  return x;
}

}  // namespace lef
