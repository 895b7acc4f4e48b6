#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lefweave/dsl.hpp"
#include "lefweave/runner.hpp"

using namespace lef;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string script(const std::string& name) { return slurp(std::string(LEFWEAVE_SOURCE_DIR) + "/scripts/" + name); }

// Message of the lef::Error thrown by f, or empty.
template <typename F>
std::string error_of(F&& f, ErrorCode* code = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (code) *code = e.code();
    return e.what();
  }
  return {};
}

const char* kMixed = R"(# every declaration form
fiber A = ak 4 n=2
fiber P = plumbing [a, b, c; a-b, b-c:-1] n=3
fiber C = plumbing A3 n=2
fiber B = ball n=2
fiber H = C + handle s [1, 0, 0]
datum X over A = [e1, tw(e2)^2 e1, arc(1,3; lower)] preset
datum Y over P = [a, tw(b)^-1 c]
datum Z over H = [e1, s, tw(s)^1 e2]
script S on Y { hurwitzL 1; rotate
  stabilize [1, 0, 0]; certify-stab 3 }
script T on Z { subflex [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]]; flexify }
script U on X { bsum Y; add-cycle e2; certify-loose 1 }
print invariants Y
verify S
search X depth=1 width=5
)";

}  // namespace

TEST_CASE("the first example parses to its presentation") {
  const dsl::Program p = dsl::parse(script("x1.lef"), "x1.lef");
  const dsl::Workspace ws = dsl::build_workspace(p, "x1.lef");
  REQUIRE(ws.has_datum("X1"));
  const dsl::NamedDatum& x = ws.datum("X1");
  CHECK(x.preset);
  CHECK(to_string(x.datum) == "W(rank 2 n=2; e1, tw(e2)^2 e1)");
  CHECK(ws.has_script("plus_one"));
}

TEST_CASE("empty input") {
  const dsl::Program p = dsl::parse("", "empty.lef");
  CHECK(p.statements.empty());
  CHECK(dsl::build_workspace(p).all_names().empty());
  CHECK(dsl::parse("# only a comment\n\n").statements.empty());
  const RunResult r = run_source("", "empty.lef");
  CHECK(r.outputs.empty());
  CHECK(r.exit_code == 0);
}

TEST_CASE("pretty printing round trips") {
  for (const std::string text : {std::string(kMixed), script("x1.lef"), script("x2.lef"), script("sf_t3s.lef")}) {
    const dsl::Program p = dsl::parse(text, "a.lef");
    const std::string once = dsl::pretty(p);
    const dsl::Program q = dsl::parse(once, "b.lef");
    CHECK(dsl::pretty(q) == once);
    const dsl::Workspace a = dsl::build_workspace(p, "a.lef");
    const dsl::Workspace b = dsl::build_workspace(q, "b.lef");
    CHECK(a.all_names() == b.all_names());
    for (const auto& name : a.datum_names()) {
      CHECK(a.datum(name).datum == b.datum(name).datum);
      CHECK(a.datum(name).preset == b.datum(name).preset);
    }
    for (const auto& name : a.script_names()) {
      const auto& s = a.script(name).certificate.steps;
      const auto& t = b.script(name).certificate.steps;
      REQUIRE(s.size() == t.size());
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(to_string(s[i]) == to_string(t[i]));
    }
  }
}

TEST_CASE("the declarations build what they say") {
  const dsl::Workspace ws = dsl::build_workspace(dsl::parse(kMixed));
  CHECK(ws.fiber("P").lattice.labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(ws.fiber("P").lattice.gram()(1, 2) == -1);
  CHECK(ws.fiber("B").lattice.rank() == 0);
  CHECK(ws.fiber("H").lattice.rank() == 4);
  CHECK(ws.fiber("H").is_stabilizing(3));
  const LefschetzDatum& x = ws.datum("X").datum;
  REQUIRE(x.cycles[2].arc);
  CHECK(x.cycles[2].klass.coords == IntVector{1, 1, 0});
  CHECK(ws.script("S").certificate.steps.size() == 4);
  CHECK(ws.script("S").certificate.steps[0].index == 0);
  CHECK(ws.script("U").certificate.steps[0].datum);
}

TEST_CASE("zero exponents are a parse error") {
  ErrorCode code{};
  const std::string msg =
      error_of([] { dsl::parse("fiber A = ak 3 n=2\ndatum X over A = [tw(e2)^0 e1]\n", "z.lef"); }, &code);
  CHECK(code == ErrorCode::Parse);
  CHECK(msg.rfind("z.lef:2:", 0) == 0);
}

TEST_CASE("syntax errors carry line and column") {
  ErrorCode code{};
  std::string msg = error_of([] { dsl::parse("fiber A = ak 3 n=2\nscript S on X { hurwitzL }\n", "s.lef"); }, &code);
  CHECK(code == ErrorCode::Parse);
  CHECK(msg.rfind("s.lef:2:", 0) == 0);
  msg = error_of([] { dsl::parse("fiber A = ak 3 n=2 $\n", "t.lef"); });
  CHECK(msg.rfind("t.lef:1:20:", 0) == 0);
  msg = error_of([] { dsl::parse("datum X over A = [e1\n", "u.lef"); });
  CHECK(msg.rfind("u.lef:", 0) == 0);
  msg = error_of([] { dsl::parse("script S on X { hurwitzL 0 }\n", "v.lef"); });
  CHECK(msg.rfind("v.lef:1:", 0) == 0);
}

TEST_CASE("undefined names come with suggestions and locations") {
  ErrorCode code{};
  std::string msg = error_of(
      [] { run_source("fiber A2 = ak 3 n=2\ndatum X1 over A2 = [e1]\nprint invariants X2\n", "n.lef"); }, &code);
  CHECK(code == ErrorCode::UndefinedName);
  CHECK(msg == "n.lef:3:18: undefined datum 'X2'; did you mean 'X1'?");
  msg = error_of([] { run_source("fiber A2 = ak 3 n=2\ndatum X1 over A3 = [e1]\n", "f.lef"); });
  CHECK(msg.rfind("f.lef:2:15:", 0) == 0);
  CHECK(msg.find("'A2'") != std::string::npos);
  msg = error_of([] { run_source("fiber A2 = ak 3 n=2\ndatum X1 over A2 = [e7]\n", "g.lef"); });
  CHECK(msg.rfind("g.lef:2:", 0) == 0);
  msg = error_of([] { run_source("verify nothing_close\n", "h.lef"); });
  CHECK(msg.find("did you mean") == std::string::npos);
}

TEST_CASE("names are unique") {
  ErrorCode code{};
  const std::string msg =
      error_of([] { run_source("fiber A = ak 3 n=2\ndatum A over A = [e1]\n", "d.lef"); }, &code);
  CHECK(!msg.empty());
  CHECK(msg.rfind("d.lef:2:", 0) == 0);
}

TEST_CASE("suggestions") {
  CHECK(dsl::suggest("X2", {"X1", "Y"}) == "X1");
  CHECK(dsl::suggest("plus_on", {"plus_one", "flex"}) == "plus_one");
  CHECK(dsl::suggest("zzz", {"X1", "Y"}).empty());
  CHECK(dsl::suggest("a", {}).empty());
}

TEST_CASE("exit codes") {
  CHECK(run_source(script("x2.lef"), "x2.lef").exit_code == 0);
  CHECK(run_source(script("sf_t3s.lef"), "sf_t3s.lef").exit_code == 0);
  RunOptions shallow;
  shallow.depth = 1;
  const RunResult r = run_source(script("x1.lef"), "x1.lef", shallow);
  CHECK(r.exit_code == 1);
  const RunResult rejected =
      run_source("fiber A = ak 3 n=2\ndatum X over A = [e1, e1]\nscript S on X { rotate }\nverify S\n", "r.lef");
  CHECK(rejected.exit_code == 1);
  REQUIRE(rejected.outputs.size() == 1);
  CHECK(rejected.outputs[0]["accepted"] == false);
}

TEST_CASE("invariants JSON") {
  const RunResult r = run_source(script("x1.lef"), "x1.lef", RunOptions{1, 10, 1});
  REQUIRE(r.outputs.size() == 3);
  const nlohmann::json& inv = r.outputs[0];
  CHECK(inv["command"] == "invariants");
  CHECK(inv["chi"] == 1);
  CHECK(inv["preset"] == true);
  CHECK(inv["middle_form"]["symmetry"] == "skew");
  CHECK(inv["homology"][2] == nlohmann::json{{"degree", 2}, {"free", 1}, {"torsion", nlohmann::json::array()}});
  CHECK(inv["homology"][3]["free"] == 1);
  CHECK(inv.dump() ==
        R"({"chi":1,"command":"invariants","datum":"X1","form_invariants":{"det":1,"rank":0,"signature":null},)"
        R"("homology":[{"degree":0,"free":1,"torsion":[]},{"degree":1,"free":0,"torsion":[]},)"
        R"({"degree":2,"free":1,"torsion":[]},{"degree":3,"free":1,"torsion":[]}],)"
        R"("middle_form":{"matrix":[[0]],"symmetry":"skew"},"n":2,"preset":true})");
  const nlohmann::json& v = r.outputs[1];
  for (const char* key : {"accepted", "conclusion", "moves", "certifications", "trace", "final", "hurwitz_moves",
                          "terminal_claim", "used_wrap"})
    CHECK(v.contains(key));
  CHECK(r.outputs[2]["result"] == "none");
  CHECK(r.outputs[2]["depth"] == 1);
}

TEST_CASE("large integers are strings") {
  CHECK(int_json(Int(42)) == 42);
  CHECK(int_json(Int(-7)) == -7);
  CHECK(int_json(Int("9223372036854775807")).is_number());
  CHECK(int_json(Int("9223372036854775808")) == "9223372036854775808");
  CHECK(int_json(Int("-123456789012345678901234567890")) == "-123456789012345678901234567890");
}

TEST_CASE("runs are deterministic") {
  for (const char* name : {"x1.lef", "x2.lef", "sf_t3s.lef"}) {
    const std::string text = script(name);
    const RunResult a = run_source(text, name);
    const RunResult b = run_source(text, name, RunOptions{std::nullopt, std::nullopt, 3});
    REQUIRE(a.outputs.size() == b.outputs.size());
    for (std::size_t i = 0; i < a.outputs.size(); ++i) CHECK(a.outputs[i].dump() == b.outputs[i].dump());
  }
}

TEST_CASE("move fuzzing is reproducible") {
  const FuzzReport a = move_invariance_fuzz(7, 40);
  const FuzzReport b = move_invariance_fuzz(7, 40);
  CHECK(a.failures == 0);
  CHECK(a.sequences == 40);
  CHECK(a.failures == b.failures);
  CHECK(to_string(random_datum(3, 2, 4, 5)) == to_string(random_datum(3, 2, 4, 5)));
}
