#pragma once

// The .lef script language: parser, canonical printer and workspace.
//
//   fiber F = ak 3 n=2
//   fiber G = plumbing [a, b, c; a-b, b-c:-1] n=3
//   fiber H = F + handle s [1,0]
//   datum X over F = [e1, tw(e2)^2 e1] preset
//   script S on X { hurwitzL 1 ; certify-stab 1 }
//   print invariants X
//   verify S
//   search X depth=4 width=10000

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lefweave/certify.hpp"
#include "lefweave/fiber.hpp"
#include "lefweave/lefschetz.hpp"

namespace lef::dsl {

struct Loc {
  std::size_t line = 1;
  std::size_t col = 1;
};

struct CycleExpr {
  enum class Kind { Label, Twist, Arc, Literal };
  Kind kind = Kind::Label;
  std::string label;
  std::shared_ptr<const CycleExpr> center;
  std::shared_ptr<const CycleExpr> target;
  long long exponent = 1;
  std::size_t arc_i = 0, arc_j = 0;
  std::string preset;
  IntVector ints;
  Loc loc;
};

struct FiberDecl {
  enum class Kind { Plumbing, Chain, Ak, Ball, Handle };
  std::string name;
  Kind kind = Kind::Chain;
  int n = 2;
  std::size_t count = 0;  // Chain: k in A<k>; Ak: m
  PlumbingTree tree;  // Plumbing
  std::string base;  // Handle: fiber being extended
  std::string handle_label;
  IntVector pairings;
  Loc loc;
};

struct DatumDecl {
  std::string name;
  std::string fiber;
  std::vector<CycleExpr> cycles;
  bool preset = false;
  Loc loc;
  Loc fiber_loc;
};

struct StepDecl {
  Step step;  // indices already 0-based; bsum operand unresolved
  Loc loc;
};

struct ScriptDecl {
  std::string name;
  std::string datum;
  std::vector<StepDecl> steps;
  Loc loc;
  Loc datum_loc;
};

struct CommandDecl {
  enum class Kind { PrintInvariants, Verify, Search };
  Kind kind = Kind::PrintInvariants;
  std::string target;
  std::size_t depth = 0;
  std::size_t width = 0;
  Loc loc;
  Loc target_loc;
};

using Statement = std::variant<FiberDecl, DatumDecl, ScriptDecl, CommandDecl>;

struct Program {
  std::vector<Statement> statements;
};

/// Throws Error(Parse) with "file:line:col: message".
Program parse(const std::string& text, const std::string& file = "<input>");

/// Canonical source; parse(pretty(p)) reproduces p.
std::string pretty(const Program& p);
std::string pretty(const CycleExpr& e);

struct NamedDatum {
  LefschetzDatum datum;
  bool preset = false;
};

struct NamedScript {
  std::string datum;
  Certificate certificate;
};

/// Everything a program defines, in definition order.
class Workspace {
 public:
  const std::vector<std::string>& fiber_names() const { return fiber_order_; }
  const std::vector<std::string>& datum_names() const { return datum_order_; }
  const std::vector<std::string>& script_names() const { return script_order_; }

  const FiberModel& fiber(const std::string& name) const { return fibers_.at(name); }
  const NamedDatum& datum(const std::string& name) const { return data_.at(name); }
  const NamedScript& script(const std::string& name) const { return scripts_.at(name); }
  bool has_datum(const std::string& name) const { return data_.count(name) > 0; }
  bool has_script(const std::string& name) const { return scripts_.count(name) > 0; }

  void add_fiber(const std::string& name, FiberModel f);
  void add_datum(const std::string& name, NamedDatum d);
  void add_script(const std::string& name, NamedScript s);

  std::vector<std::string> all_names() const;

 private:
  std::map<std::string, FiberModel> fibers_;
  std::map<std::string, NamedDatum> data_;
  std::map<std::string, NamedScript> scripts_;
  std::vector<std::string> fiber_order_, datum_order_, script_order_;
};

/// Applies one definition; errors carry the statement location.
void define(Workspace& ws, const Statement& s, const std::string& file);

/// Applies every definition (commands are skipped).
Workspace build_workspace(const Program& p, const std::string& file = "<input>");

/// Evaluates a cycle expression in a fiber.
VanishingCycle evaluate_cycle(const FiberModel& fiber, const CycleExpr& e, const std::string& file);

/// Closest candidate within a small edit distance, or empty.
std::string suggest(const std::string& name, const std::vector<std::string>& candidates);

std::string located(const std::string& file, const Loc& loc, const std::string& message);

}  // namespace lef::dsl
