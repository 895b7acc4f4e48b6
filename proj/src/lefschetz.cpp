#include "lefweave/lefschetz.hpp"

#include <sstream>

namespace lef {

namespace {

std::string fresh_label(const IntLattice& lattice, const std::string& stem, std::size_t start) {
  for (std::size_t k = start;; ++k) {
    std::string name = stem + std::to_string(k);
    if (lattice.find_label(name) == IntLattice::npos) return name;
  }
}

TwistWord relabeled(const TwistWord& w, const IntLattice& lattice) {
  TwistWord out;
  out.base.coords = w.base.coords;
  const std::size_t u = unit_index(out.base);
  out.base.label = u == IntLattice::npos ? std::string{} : lattice.labels()[u];
  for (const auto& l : w.letters)
    out.letters.push_back(
        TwistLetter{std::make_shared<const TwistWord>(relabeled(*l.center, lattice)), l.center_class, l.exponent});
  return out;
}

VanishingCycle moved(VanishingCycle c) {
  c.loose_certified = false;
  return c;
}

// A loose flag depends on the cycle just before it.
void clear_successor(LefschetzDatum& d, std::size_t j) {
  if (d.size() > 2) d.cycles[(j + 1) % d.size()].loose_certified = false;
}

VanishingCycle twisted(const LefschetzDatum& d, const VanishingCycle& center, const VanishingCycle& target,
                       long long exponent) {
  VanishingCycle out;
  out.word = target.word.prepended(center.word, center.klass.coords, exponent);
  out.klass = dehn_twist(d.fiber.lattice, center.klass, target.klass, exponent);
  out.klass.label.clear();
  if (out.word.is_generator()) out.klass.label = out.word.base.label;
  if (center.arc && target.arc && d.fiber.arcs)
    out.arc = std::make_shared<const MatchingArc>(apply_half_twist(*d.fiber.arcs, *center.arc, *target.arc, exponent));
  return out;
}

void require_pair(const LefschetzDatum& d, std::size_t i, const char* move) {
  if (d.size() < 2) throw Error(ErrorCode::Precondition, std::string(move) + " needs at least two vanishing cycles");
  if (i >= d.size()) {
    std::ostringstream msg;
    msg << move << " position " << i + 1 << " out of range for " << d.size() << " cycles";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
}

}  // namespace

bool operator==(const LefschetzDatum& a, const LefschetzDatum& b) {
  if (a.n() != b.n() || !(a.fiber.lattice.gram() == b.fiber.lattice.gram()) ||
      a.fiber.lattice.labels() != b.fiber.lattice.labels() || a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.cycles[i];
    const auto& y = b.cycles[i];
    if (!(x.word == y.word) || x.klass.coords != y.klass.coords || x.stabilization_sphere != y.stabilization_sphere ||
        x.loose_certified != y.loose_certified || x.subflex_handle != y.subflex_handle)
      return false;
    if (bool(x.arc) != bool(y.arc) || (x.arc && !arcs_isotopic(*x.arc, *y.arc))) return false;
  }
  return true;
}

VanishingCycle make_cycle(const FiberModel& fiber, TwistWord word, std::shared_ptr<const MatchingArc> arc) {
  VanishingCycle c;
  c.klass = evaluate_word(fiber.lattice, word);
  c.klass.label = word.is_generator() ? word.base.label : std::string{};
  c.word = std::move(word);
  if (fiber.lattice.n() % 2 == 0) {
    const Int self = pairing(fiber.lattice, c.klass, c.klass);
    if (self != sphere_self_pairing(fiber.lattice.n())) {
      std::ostringstream msg;
      msg << "vanishing cycle " << to_string(c.word) << " has self-pairing " << self << ", expected "
          << sphere_self_pairing(fiber.lattice.n());
      throw Error(ErrorCode::InvalidTwistCenter, msg.str());
    }
  }
  c.arc = std::move(arc);
  return c;
}

LefschetzDatum make_datum(FiberModel fiber, const std::vector<TwistWord>& words) {
  LefschetzDatum d{std::move(fiber), {}};
  for (const auto& w : words) d.cycles.push_back(make_cycle(d.fiber, w));
  return d;
}

VanishingCycle cycle_from_arc(const FiberModel& fiber, const MatchingArc& arc) {
  if (!fiber.arcs) throw Error(ErrorCode::Precondition, "fiber has no arc system");
  TwistWord w = arc_twist_word(*fiber.arcs, arc);
  w = relabeled(w.reembedded(fiber.lattice.rank(), 0), fiber.lattice);
  return make_cycle(fiber, std::move(w), std::make_shared<const MatchingArc>(arc));
}

TwistWord twist(const IntLattice& lattice, const TwistWord& center, long long exponent, const TwistWord& target) {
  if (exponent == 0) throw Error(ErrorCode::Precondition, "twist exponent must be nonzero");
  SphereClass c = evaluate_word(lattice, center);
  check_twist_center(lattice, c);
  return target.prepended(center, c.coords, exponent);
}

LefschetzDatum hurwitz_left(const LefschetzDatum& d, std::size_t i) {
  require_pair(d, i, "hurwitzL");
  const std::size_t j = (i + 1) % d.size();
  LefschetzDatum out = d;
  out.cycles[i] = twisted(d, d.cycles[i], d.cycles[j], 1);
  out.cycles[j] = moved(d.cycles[i]);
  clear_successor(out, j);
  return out;
}

LefschetzDatum hurwitz_right(const LefschetzDatum& d, std::size_t i) {
  require_pair(d, i, "hurwitzR");
  const std::size_t j = (i + 1) % d.size();
  LefschetzDatum out = d;
  out.cycles[i] = moved(d.cycles[j]);
  out.cycles[j] = twisted(d, d.cycles[j], d.cycles[i], -1);
  clear_successor(out, j);
  return out;
}

LefschetzDatum rotate(const LefschetzDatum& d) {
  LefschetzDatum out{d.fiber, {}};
  for (std::size_t k = 1; k <= d.size(); ++k) out.cycles.push_back(moved(d.cycles[k % d.size()]));
  return out;
}

LefschetzDatum stabilize(const LefschetzDatum& d, const IntVector& pairings, std::string label) {
  if (label.empty()) label = fresh_label(d.fiber.lattice, "s", d.fiber.lattice.rank() + 1);
  auto [fiber, s] = attach_stabilizing_handle(d.fiber, pairings, label);
  LefschetzDatum out{std::move(fiber), {}};
  const std::size_t r = out.fiber.lattice.rank();
  for (const auto& c : d.cycles) {
    VanishingCycle e = c;
    e.word = e.word.reembedded(r, 0);
    e.klass.coords.push_back(0);
    out.cycles.push_back(std::move(e));
  }
  VanishingCycle sc = make_cycle(out.fiber, TwistWord::generator(s));
  sc.stabilization_sphere = true;
  out.cycles.push_back(std::move(sc));
  return out;
}

LefschetzDatum subflexibilize(const LefschetzDatum& d, const std::vector<IntVector>& t_pairings) {
  if (t_pairings.size() != d.size()) {
    std::ostringstream msg;
    msg << "subflex: " << t_pairings.size() << " disks given for " << d.size() << " vanishing cycles";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  const std::size_t r0 = d.fiber.lattice.rank();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (t_pairings[i].size() != r0) {
      std::ostringstream msg;
      msg << "subflex: disk " << i + 1 << " has " << t_pairings[i].size() << " pairings, fiber rank is " << r0;
      throw Error(ErrorCode::DimensionMismatch, msg.str());
    }
    Int p = 0;
    for (std::size_t j = 0; j < r0; ++j) p += t_pairings[i][j] * d.cycles[i].klass.coords[j];
    if (p != 1 && p != -1) {
      std::ostringstream msg;
      msg << "subflex: disk " << i + 1 << " meets cycle " << i + 1 << " with intersection number " << p
          << ", expected a single transverse point (+-1)";
      throw Error(ErrorCode::Precondition, msg.str());
    }
  }

  FiberModel fiber = d.fiber;
  std::vector<SphereClass> spheres;
  for (std::size_t i = 0; i < d.size(); ++i) {
    IntVector padded = t_pairings[i];
    padded.resize(fiber.lattice.rank(), 0);
    auto [next, s] = attach_stabilizing_handle(fiber, padded, fresh_label(fiber.lattice, "S", i + 1));
    fiber = std::move(next);
    spheres.push_back(std::move(s));
  }
  const std::size_t r = fiber.lattice.rank();
  LefschetzDatum out{std::move(fiber), {}};
  for (std::size_t i = 0; i < d.size(); ++i) {
    SphereClass s = spheres[i];
    s.coords.resize(r, 0);
    TwistWord w = d.cycles[i].word.reembedded(r, 0).prepended(TwistWord::generator(s), s.coords, 2);
    VanishingCycle c = make_cycle(out.fiber, std::move(w));
    c.subflex_handle = r0 + i;
    out.cycles.push_back(std::move(c));
  }
  return out;
}

LefschetzDatum boundary_connect_sum(const LefschetzDatum& d1, const LefschetzDatum& d2) {
  FiberModel fiber = fiber_direct_sum(d1.fiber, d2.fiber);
  const std::size_t ra = d1.fiber.lattice.rank();
  const std::size_t r = fiber.lattice.rank();
  LefschetzDatum out{std::move(fiber), {}};
  for (const auto& c : d1.cycles) {
    VanishingCycle e = moved(c);
    e.word = e.word.reembedded(r, 0);
    e.klass.coords.resize(r, 0);
    out.cycles.push_back(std::move(e));
  }
  for (const auto& c : d2.cycles) {
    VanishingCycle e = moved(c);
    e.word = relabeled(e.word.reembedded(r, ra), out.fiber.lattice);
    IntVector k(r, 0);
    for (std::size_t j = 0; j < c.klass.coords.size(); ++j) k[ra + j] = c.klass.coords[j];
    e.klass = SphereClass{std::move(k), e.word.is_generator() ? e.word.base.label : std::string{}};
    e.arc.reset();
    if (e.subflex_handle) *e.subflex_handle += ra;
    out.cycles.push_back(std::move(e));
  }
  return out;
}

LefschetzDatum add_cycle(const LefschetzDatum& d, TwistWord word, std::size_t position) {
  if (position == IntLattice::npos) position = d.size();
  if (position > d.size()) {
    std::ostringstream msg;
    msg << "cycle position " << position + 1 << " out of range for " << d.size() << " cycles";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  LefschetzDatum out = d;
  out.cycles.insert(out.cycles.begin() + static_cast<std::ptrdiff_t>(position), make_cycle(d.fiber, std::move(word)));
  return out;
}

LefschetzDatum normalize(const LefschetzDatum& d) {
  LefschetzDatum out = d;
  for (auto& c : out.cycles) {
    c.word = c.word.reduced();
    c.klass = evaluate_word(out.fiber.lattice, c.word);
    c.klass.label = c.word.is_generator() ? c.word.base.label : std::string{};
  }
  return out;
}

std::string to_string(const LefschetzDatum& d) {
  std::string out = "W(rank " + std::to_string(d.fiber.lattice.rank()) + " n=" + std::to_string(d.n()) + ";";
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? ", " : " ") + to_string(d.cycles[i].word);
  return out + ")";
}

}  // namespace lef
