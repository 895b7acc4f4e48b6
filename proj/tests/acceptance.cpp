// Acceptance criteria: one PASS/FAIL line each, with the measured time
// checked against the budget.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "lefweave/certify.hpp"
#include "lefweave/invariants.hpp"
#include "lefweave/runner.hpp"

using namespace lef;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  return out;
}

SphereClass basis(const IntLattice& L, std::size_t i) { return SphereClass{L.basis_vector(i), L.labels()[i]}; }

TwistWord gen(const IntLattice& L, std::size_t i) { return TwistWord::generator(basis(L, i)); }

std::string describe(const HomologyGroup& g) {
  std::string s = "Z^" + g.free.str();
  for (const auto& t : g.torsion) s += "+Z/" + t.str();
  return s;
}

LefschetzDatum ts3() {
  FiberModel f = plumbing_lattice(PlumbingTree::chain(1), 2);
  return make_datum(f, {gen(f.lattice, 0), gen(f.lattice, 0)});
}

// Same fiber as an SF output, original cycles without the squared twists.
LefschetzDatum untwisted(const LefschetzDatum& sf, const LefschetzDatum& d) {
  std::vector<TwistWord> words;
  for (const auto& c : d.cycles) words.push_back(c.word.reembedded(sf.fiber.lattice.rank(), 0));
  return make_datum(sf.fiber, words);
}

// Disk pairings meeting each cycle once, or empty if some cycle has no unit coefficient.
std::vector<IntVector> unit_disks(const LefschetzDatum& d) {
  std::vector<IntVector> out;
  for (const auto& c : d.cycles) {
    IntVector t(d.fiber.lattice.rank(), 0);
    bool found = false;
    for (std::size_t j = 0; j < t.size() && !found; ++j)
      if (abs(c.klass.coords[j]) == 1) {
        t[j] = 1;
        found = true;
      }
    if (!found) return {};
    out.push_back(std::move(t));
  }
  return out;
}

Outcome x1_invariants() {
  Outcome o;
  const RunResult r = run_source(read_file(std::string(LEFWEAVE_SOURCE_DIR) + "/scripts/x1.lef"), "x1.lef",
                                 RunOptions{1, 1, 1});
  const nlohmann::json& inv = r.outputs.at(0);
  const std::array<long long, 4> expected{1, 0, 1, 1};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const auto& h = inv["homology"][k];
    o.expect(h["free"] == expected[k] && h["torsion"].empty(), "H_" + std::to_string(k) + " = " + h.dump());
  }
  o.expect(inv["homology"].size() == 4, "unexpected number of degrees");
  o.expect(inv["chi"] == 1, "chi = " + inv["chi"].dump());
  return o;
}

Outcome even_twists() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 3));
    const LefschetzDatum d = random_datum(rng(), n, 4, 1);
    const IntLattice& L = d.fiber.lattice;
    SphereClass s = basis(L, rng() % L.rank());
    for (int k = 0; k < 2; ++k) s = dehn_twist(L, basis(L, rng() % L.rank()), s, rng() % 2 ? 1 : -1);
    IntVector x(L.rank());
    for (auto& c : x) c = static_cast<long long>(rng() % 11) - 5;
    const SphereClass y{x, {}};
    o.expect(dehn_twist(L, s, y, 2).coords == x, "squared twist moved a class for n=" + std::to_string(n));
    o.expect(dehn_twist(L, s, dehn_twist(L, s, y)).coords == x, "twist twice moved a class");
  }
  const IntLattice L = plumbing_lattice(PlumbingTree::chain(2), 3).lattice;
  const SphereClass got = dehn_twist(L, basis(L, 1), basis(L, 0), 2);
  o.expect(got.coords == IntVector{1, 2}, "n=3 squared twist gave " + to_string(TwistWord::generator(got)));
  return o;
}

Outcome move_invariance() {
  Outcome o;
  const FuzzReport f = move_invariance_fuzz(1, 1000);
  o.expect(f.sequences == 1000, "ran " + std::to_string(f.sequences) + " sequences");
  o.expect(f.failures == 0, std::to_string(f.failures) + " sequences changed the invariants, first #" +
                                (f.first_failure ? std::to_string(*f.first_failure) : std::string("?")));
  return o;
}

Outcome sf_even_shadow() {
  Outcome o;
  const LefschetzDatum t = ts3();
  const LefschetzDatum s = subflexibilize(t, {IntVector{1}, IntVector{1}});
  o.expect(total_space_homology(s).homology == total_space_homology(untwisted(s, t)).homology, "T*S3 differs");
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; checked < 50 && seed < 10000; ++seed) {
    const LefschetzDatum d = random_datum(seed, 2, 4, 5);
    const std::vector<IntVector> disks = unit_disks(d);
    if (disks.size() != d.size()) continue;
    ++checked;
    const LefschetzDatum sf = subflexibilize(d, disks);
    o.expect(total_space_homology(sf).homology == total_space_homology(untwisted(sf, d)).homology,
             "random datum with seed " + std::to_string(seed) + " differs");
  }
  o.expect(checked == 50, "only " + std::to_string(checked) + " random data admitted disks");
  return o;
}

Outcome sf_odd_changes_homology() {
  Outcome o;
  FiberModel f = plumbing_lattice(PlumbingTree::chain(2), 3);
  const IntLattice& L = f.lattice;
  const LefschetzDatum before = make_datum(f, {gen(L, 0), gen(L, 0)});
  const LefschetzDatum after = make_datum(f, {gen(L, 0), twist(L, gen(L, 1), 2, gen(L, 0))});
  o.expect(after.cycles[1].klass.coords == IntVector{1, 2}, "second cycle is not e1 + 2 e2");
  const HomologyGroup h_before = total_space_homology(before).homology.at(3);
  const HomologyGroup h_after = total_space_homology(after).homology.at(3);
  o.expect(h_before == HomologyGroup{3, 1, {}}, "H_3 before = " + describe(h_before) + ", expected Z");
  o.expect(h_after == HomologyGroup{3, 1, {2}}, "H_3 after = " + describe(h_after) + ", expected Z+Z/2");
  return o;
}

Outcome certificate_replay() {
  Outcome o;
  const LefschetzDatum sf = subflexibilize(ts3(), {IntVector{1}, IntVector{1}});
  const FlexifyResult fx = flexify_after_handles(sf);
  const VerifyResult a = verify_certificate(fx.interleaved, fx.certificate);
  o.expect(a.accepted, "flexify certificate rejected: " + a.reason);
  o.expect(a.hurwitz_moves == 2, "flexify used " + std::to_string(a.hurwitz_moves) + " Hurwitz moves");

  const RunResult x2 = run_source(read_file(std::string(LEFWEAVE_SOURCE_DIR) + "/scripts/x2.lef"), "x2.lef",
                                  RunOptions{1, 1, 1});
  const nlohmann::json& v2 = x2.outputs.at(1);
  o.expect(v2["accepted"] == true, "X2 certificate rejected");
  o.expect(v2["hurwitz_moves"] == 1, "X2 certificate uses " + v2["hurwitz_moves"].dump() + " moves");

  const RunResult x1 = run_source(read_file(std::string(LEFWEAVE_SOURCE_DIR) + "/scripts/x1.lef"), "x1.lef",
                                  RunOptions{1, 1, 1});
  const nlohmann::json& v1 = x1.outputs.at(1);
  o.expect(v1["accepted"] == true, "X1 plus one cycle rejected");
  o.expect(v1["moves"].size() == 2 && v1["hurwitz_moves"] == 1, "X1 plus one is not one addition and one move");
  return o;
}

Outcome bounded_search() {
  Outcome o;
  FiberModel f = ak_matching_fiber(3, 2);
  const IntLattice& L = f.lattice;
  const LefschetzDatum x1 = make_datum(f, {gen(L, 0), twist(L, gen(L, 1), 2, gen(L, 0))});
  const SearchResult s = search_certificate(x1, 4, 10000);
  o.expect(!s.certificate, "search found a certificate");
  return o;
}

Outcome arc_fidelity() {
  Outcome o;
  for (std::size_t m = 3; m <= 5; ++m) {
    const ArcSystem sys(m, 2);
    auto t = [&](std::size_t i, const MatchingArc& b) { return apply_half_twist(sys, standard_arc(sys, i), b); };
    for (std::size_t i = 1; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t e = 1; e < m; ++e) {
          const MatchingArc E = standard_arc(sys, e);
          if (j == i + 1)
            o.expect(arcs_isotopic(t(i, t(j, t(i, E))), t(j, t(i, t(j, E)))), "braid relation failed");
          else
            o.expect(arcs_isotopic(t(i, t(j, E)), t(j, t(i, E))), "far commutation failed");
        }
  }
  for (int n : {2, 3, 4}) {
    const ArcSystem sys(3, n);
    const MatchingArc s1 = standard_arc(sys, 1);
    const MatchingArc sq = apply_half_twist(sys, standard_arc(sys, 2), s1, 2);
    o.expect(!arcs_isotopic(sq, s1), "squared half-twist is isotopic to the identity");
    if (n % 2 == 0)
      o.expect(arc_to_class(sys, sq).coords == arc_to_class(sys, s1).coords, "squared half-twist moved the class");
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(trial % 2);
    const ArcSystem sys(3 + rng() % 3, n);
    const IntLattice L = arc_lattice(sys);
    auto random_arc = [&] {
      MatchingArc a = standard_arc(sys, 1 + rng() % (sys.m() - 1));
      for (std::size_t k = rng() % 5; k > 0; --k)
        a = apply_half_twist(sys, standard_arc(sys, 1 + rng() % (sys.m() - 1)), a, rng() % 2 ? 1 : -1);
      return a;
    };
    const MatchingArc a = random_arc(), b = random_arc();
    const SphereClass lhs = arc_to_class(sys, apply_half_twist(sys, a, b));
    SphereClass rhs = dehn_twist(L, arc_to_class(sys, a), arc_to_class(sys, b));
    IntVector neg = rhs.coords;
    for (auto& c : neg) c = -c;
    o.expect(lhs.coords == rhs.coords || lhs.coords == neg, "commuting square failed");
  }
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  for (const char* name : {"x1", "x2", "sf_t3s"}) {
    const std::string script = std::string(LEFWEAVE_SOURCE_DIR) + "/scripts/" + name + ".lef";
    const std::string golden = read_file(std::string(LEFWEAVE_SOURCE_DIR) + "/tests/golden/" + name + ".jsonl");
    const std::string cmd = std::string("\"") + LEFWEAVE_CLI + "\" run \"" + script + "\"";
    const std::string first = capture(cmd);
    const std::string second = capture(cmd);
    o.expect(!golden.empty(), std::string("missing golden file for ") + name);
    o.expect(first == second, std::string(name) + ": two runs differ");
    o.expect(first == golden, std::string(name) + ": output differs from the golden file");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "X1 invariants", 1.0, x1_invariants},
      {2, "even-twist triviality", 1.0, even_twists},
      {3, "move invariance", 30.0, move_invariance},
      {4, "SF homology shadow (n even)", 10.0, sf_even_shadow},
      {5, "SF changes homology for n=3", 1.0, sf_odd_changes_homology},
      {6, "certificate replay", 1.0, certificate_replay},
      {7, "bounded-search regression", 60.0, bounded_search},
      {8, "arc-engine fidelity", 10.0, arc_fidelity},
      {9, "CLI determinism", 5.0, cli_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.budget) {
      o.ok = false;
      o.detail = "over the time budget";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.0fs", secs, c.budget);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << timing << ")"
              << (o.ok ? "" : " -- " + o.detail) << "\n";
    if (!o.ok) ++failed;
  }
  std::cout << (9 - failed) << "/9 criteria passed\n";
  return failed == 0 ? 0 : 1;
}
