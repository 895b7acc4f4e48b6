#include "lefweave/runner.hpp"

#include <limits>
#include <random>

namespace lef {

using nlohmann::json;

json int_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

namespace {

json ints_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_json(x));
  return a;
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json steps_json(const std::vector<Step>& steps, bool moves) {
  json a = json::array();
  for (const Step& s : steps)
    if (s.is_move() == moves) a.push_back(to_string(s));
  return a;
}

json cycles_json(const LefschetzDatum& d) {
  json a = json::array();
  for (const auto& c : d.cycles) {
    json e{{"word", to_string(c.word)}, {"class", ints_json(c.klass.coords)}};
    json flags = json::array();
    if (c.stabilization_sphere) flags.push_back("stabilization");
    if (c.loose_certified) flags.push_back("loose");
    e["flags"] = std::move(flags);
    a.push_back(std::move(e));
  }
  return a;
}

}  // namespace

json export_json(const TotalSpaceInvariants& inv) {
  json h = json::array();
  for (const auto& g : inv.homology)
    h.push_back(json{{"degree", g.degree}, {"free", int_json(g.free)}, {"torsion", ints_json(g.torsion)}});
  json out{{"n", inv.n}, {"chi", int_json(inv.chi)}, {"homology", std::move(h)}};
  if (inv.middle_form)
    out["middle_form"] = json{{"matrix", matrix_json(*inv.middle_form)}, {"symmetry", to_string(inv.form_symmetry)}};
  else
    out["middle_form"] = nullptr;
  if (inv.form_invariants) {
    const auto& f = *inv.form_invariants;
    out["form_invariants"] = json{{"rank", f.rank},
                                  {"det", int_json(f.det)},
                                  {"signature", f.signature ? int_json(*f.signature) : json(nullptr)}};
  } else {
    out["form_invariants"] = nullptr;
  }
  return out;
}

json export_json(const Certificate& c) {
  return json{{"moves", steps_json(c.steps, true)},
              {"certifications", steps_json(c.steps, false)},
              {"terminal_claim", c.terminal_claim}};
}

json export_json(const VerifyResult& r) {
  json trace = json::array();
  for (const auto& t : r.trace)
    trace.push_back(json{{"step", t.step}, {"move", t.text}, {"datum", t.datum}, {"wraps", t.wraps}});
  json out{{"accepted", r.accepted},
           {"conclusion", r.conclusion},
           {"hurwitz_moves", r.hurwitz_moves},
           {"handles_attached", r.handles_attached},
           {"used_wrap", r.used_wrap},
           {"moves", steps_json(r.expanded, true)},
           {"certifications", steps_json(r.expanded, false)},
           {"trace", std::move(trace)}};
  out["terminal_claim"] = r.accepted ? json(r.terminal_claim) : json(nullptr);
  out["reason"] = r.reason.empty() ? json(nullptr) : json(r.reason);
  out["failed_step"] = r.failed_step ? json(*r.failed_step) : json(nullptr);
  if (r.final_datum) out["final"] = cycles_json(*r.final_datum);
  return out;
}

namespace {

[[noreturn]] void missing(const std::string& file, const std::string& what, const dsl::CommandDecl& cmd,
                          const std::vector<std::string>& candidates) {
  const std::string hint = dsl::suggest(cmd.target, candidates);
  throw Error(ErrorCode::UndefinedName,
              dsl::located(file, cmd.target_loc,
                           "undefined " + what + " '" + cmd.target + "'" +
                               (hint.empty() ? std::string{} : "; did you mean '" + hint + "'?")));
}

}  // namespace

RunResult run_program(const dsl::Program& program, const std::string& file, const RunOptions& options) {
  RunResult result;
  dsl::Workspace ws;
  for (const auto& st : program.statements) {
    const auto* cmd = std::get_if<dsl::CommandDecl>(&st);
    if (!cmd) {
      dsl::define(ws, st, file);
      continue;
    }
    try {
      switch (cmd->kind) {
        case dsl::CommandDecl::Kind::PrintInvariants: {
          if (!ws.has_datum(cmd->target)) missing(file, "datum", *cmd, ws.datum_names());
          const auto& nd = ws.datum(cmd->target);
          json out = export_json(compute_invariants(nd.datum));
          out["command"] = "invariants";
          out["datum"] = cmd->target;
          if (nd.preset) out["preset"] = true;
          result.outputs.push_back(std::move(out));
          break;
        }
        case dsl::CommandDecl::Kind::Verify: {
          if (!ws.has_script(cmd->target)) missing(file, "script", *cmd, ws.script_names());
          const auto& sc = ws.script(cmd->target);
          const auto& nd = ws.datum(sc.datum);
          VerifyResult r = verify_certificate(nd.datum, sc.certificate);
          json out = export_json(r);
          out["command"] = "verify";
          out["script"] = cmd->target;
          out["datum"] = sc.datum;
          if (nd.preset) out["preset"] = true;
          if (!r.accepted) result.exit_code = std::max(result.exit_code, 1);
          result.outputs.push_back(std::move(out));
          break;
        }
        case dsl::CommandDecl::Kind::Search: {
          if (!ws.has_datum(cmd->target)) missing(file, "datum", *cmd, ws.datum_names());
          const auto& nd = ws.datum(cmd->target);
          const std::size_t depth = options.depth.value_or(cmd->depth);
          const std::size_t width = options.width.value_or(cmd->width);
          SearchResult s = search_certificate(nd.datum, depth, width, options.threads);
          json out{{"command", "search"}, {"datum", cmd->target}, {"depth", depth}, {"width", width}, {"nodes", s.nodes}};
          if (s.certificate) {
            out["result"] = "found";
            out["certificate"] = export_json(*s.certificate);
          } else {
            out["result"] = "none";
            out["certificate"] = nullptr;
            result.exit_code = std::max(result.exit_code, 1);
          }
          if (nd.preset) out["preset"] = true;
          result.outputs.push_back(std::move(out));
          break;
        }
      }
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.rfind(file + ":", 0) == 0) throw;
      throw Error(e.code(), dsl::located(file, cmd->loc, msg));
    }
  }
  return result;
}

RunResult run_source(const std::string& text, const std::string& file, const RunOptions& options) {
  return run_program(dsl::parse(text, file), file, options);
}

LefschetzDatum random_datum(std::uint64_t seed, int n, std::size_t max_rank, std::size_t max_cycles) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  const std::size_t rank = static_cast<std::size_t>(uniform(1, static_cast<long long>(max_rank)));
  PlumbingTree tree;
  for (std::size_t i = 1; i <= rank; ++i) tree.vertices.push_back("e" + std::to_string(i));
  for (std::size_t i = 1; i < rank; ++i)
    tree.edges.push_back({static_cast<std::size_t>(uniform(0, static_cast<long long>(i) - 1)), i,
                          uniform(0, 1) ? 1 : -1});
  FiberModel fiber = plumbing_lattice(tree, n);
  const IntLattice& L = fiber.lattice;
  auto generator = [&](std::size_t i) { return TwistWord::generator(SphereClass{L.basis_vector(i), L.labels()[i]}); };

  const std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long long>(max_cycles)));
  std::vector<TwistWord> words;
  for (std::size_t c = 0; c < k; ++c) {
    TwistWord w = generator(static_cast<std::size_t>(uniform(0, static_cast<long long>(rank) - 1)));
    const long long letters = uniform(0, 2);
    for (long long l = 0; l < letters; ++l) {
      long long e = uniform(-2, 2);
      if (e == 0) e = 1;
      w = twist(L, generator(static_cast<std::size_t>(uniform(0, static_cast<long long>(rank) - 1))), e, w);
    }
    words.push_back(std::move(w));
  }
  return make_datum(std::move(fiber), words);
}

FuzzReport move_invariance_fuzz(std::uint64_t seed, std::size_t sequences) {
  FuzzReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  for (std::size_t s = 0; s < sequences; ++s) {
    const int n = static_cast<int>(uniform(1, 5));
    LefschetzDatum d = random_datum(rng(), n, 4, 5);
    const TotalSpaceInvariants before = compute_invariants(d);
    bool ok = true;
    const long long moves = uniform(1, 8);
    for (long long m = 0; m < moves && ok; ++m) {
      const long long kind = uniform(0, 3);
      if (kind <= 1 && d.size() >= 2) {
        const auto i = static_cast<std::size_t>(uniform(0, static_cast<long long>(d.size()) - 1));
        d = kind == 0 ? hurwitz_left(d, i) : hurwitz_right(d, i);
      } else if (kind == 2) {
        d = rotate(d);
      } else {
        IntVector p(d.fiber.lattice.rank());
        for (auto& x : p) x = uniform(-1, 1);
        d = stabilize(d, p);
      }
      ok = compute_invariants(d) == before;
    }
    ++report.sequences;
    if (!ok) {
      ++report.failures;
      if (!report.first_failure) report.first_failure = s;
    }
  }
  return report;
}

}  // namespace lef
