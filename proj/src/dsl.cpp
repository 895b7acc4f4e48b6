#include "lefweave/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace lef::dsl {

std::string located(const std::string& file, const Loc& loc, const std::string& message) {
  return file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + message;
}

namespace {

// ------------------------------------------------------------------- lexer

enum class Tok { Ident, Number, Punct, Newline, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Loc loc;
  bool spaced = false;  // whitespace immediately before
};

std::vector<Token> lex(const std::string& text, const std::string& file) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  bool spaced = true;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    const Loc here{line, col};
    if (c == '\n') {
      out.push_back(Token{Tok::Newline, "\n", here, spaced});
      advance(1);
      spaced = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      spaced = true;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      out.push_back(Token{Tok::Ident, text.substr(i, j - i), here, spaced});
      advance(j - i);
      spaced = false;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back(Token{Tok::Number, text.substr(i, j - i), here, spaced});
      advance(j - i);
      spaced = false;
      continue;
    }
    if (std::string("=[](){},;^:+-").find(c) != std::string::npos) {
      out.push_back(Token{Tok::Punct, std::string(1, c), here, spaced});
      advance(1);
      spaced = false;
      continue;
    }
    std::string shown = static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7f
                            ? "byte " + std::to_string(static_cast<int>(static_cast<unsigned char>(c)))
                            : std::string("'") + c + "'";
    throw Error(ErrorCode::Parse, located(file, here, "unexpected character " + shown));
  }
  out.push_back(Token{Tok::End, "", Loc{line, col}, spaced});
  return out;
}

// ------------------------------------------------------------------ parser

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of file";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file) : toks_(std::move(toks)), file_(std::move(file)) {}

  Program program() {
    Program p;
    for (;;) {
      skip_newlines();
      if (peek().kind == Tok::End) break;
      p.statements.push_back(statement());
      if (peek().kind != Tok::Newline && peek().kind != Tok::End) fail(peek(), "expected end of line, found " + describe(peek()));
    }
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw Error(ErrorCode::Parse, located(file_, t.loc, msg));
  }

  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }

  bool is_punct(const std::string& p, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }

  const Token& expect_punct(const std::string& p) {
    if (!is_punct(p)) fail(peek(), "expected '" + p + "', found " + describe(peek()));
    return next();
  }

  const Token& expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what + ", found " + describe(peek()));
    return next();
  }

  void expect_keyword(const std::string& kw) {
    if (peek().kind != Tok::Ident || peek().text != kw) fail(peek(), "expected '" + kw + "', found " + describe(peek()));
    next();
  }

  // Joins hyphenated keywords such as certify-loose written without spaces.
  std::string compound_word(Loc& loc) {
    const Token& first = expect_ident("a step");
    loc = first.loc;
    std::string word = first.text;
    while (is_punct("-") && !peek().spaced && peek(1).kind == Tok::Ident && !peek(1).spaced) {
      next();
      word += "-" + next().text;
    }
    return word;
  }

  Int integer() {
    bool neg = false;
    if (is_punct("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::Number) fail(peek(), "expected an integer, found " + describe(peek()));
    Int v(next().text);
    return neg ? Int(-v) : v;
  }

  long long small_integer(const std::string& what) {
    const Token& at = peek();
    Int v = integer();
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
      fail(at, what + " is too large");
    return static_cast<long long>(v);
  }

  std::size_t count(const std::string& what, long long min) {
    const Token& at = peek();
    long long v = small_integer(what);
    if (v < min) fail(at, what + " must be at least " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }

  std::size_t position() {
    const Token& at = peek();
    long long v = small_integer("position");
    if (v < 1) fail(at, "positions start at 1");
    return static_cast<std::size_t>(v - 1);
  }

  IntVector int_list() {
    expect_punct("[");
    IntVector out;
    skip_newlines();
    if (is_punct("]")) {
      next();
      return out;
    }
    for (;;) {
      skip_newlines();
      out.push_back(integer());
      skip_newlines();
      if (is_punct("]")) break;
      expect_punct(",");
    }
    next();
    return out;
  }

  int half_dimension() {
    expect_keyword("n");
    expect_punct("=");
    const Token& at = peek();
    long long n = small_integer("n");
    if (n < 1 || n > 1000) fail(at, "n must be between 1 and 1000");
    return static_cast<int>(n);
  }

  Statement statement() {
    const Token& kw = expect_ident("a statement");
    if (kw.text == "fiber") return fiber(kw.loc);
    if (kw.text == "datum") return datum(kw.loc);
    if (kw.text == "script") return script(kw.loc);
    if (kw.text == "print" || kw.text == "verify" || kw.text == "search") return command(kw);
    std::string hint = suggest(kw.text, {"fiber", "datum", "script", "print", "verify", "search"});
    fail(kw, "unknown statement '" + kw.text + "'" + (hint.empty() ? "" : "; did you mean '" + hint + "'?"));
  }

  FiberDecl fiber(Loc loc) {
    FiberDecl f;
    f.loc = loc;
    f.name = expect_ident("a fiber name").text;
    expect_punct("=");
    const Token& kind = expect_ident("plumbing, ak, ball or a fiber name");
    if (kind.text == "plumbing") {
      if (is_punct("[")) {
        f.kind = FiberDecl::Kind::Plumbing;
        f.tree = tree();
      } else {
        const Token& t = expect_ident("a tree such as A2 or [a, b; a-b]");
        if (t.text.size() < 2 || t.text[0] != 'A' ||
            !std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          fail(t, "expected a tree such as A2 or [a, b; a-b], found '" + t.text + "'");
        f.kind = FiberDecl::Kind::Chain;
        f.count = static_cast<std::size_t>(std::stoull(t.text.substr(1)));
        if (f.count < 1 || f.count > 100000) fail(t, "A<k> needs 1 <= k <= 100000");
      }
      f.n = half_dimension();
    } else if (kind.text == "ak") {
      f.kind = FiberDecl::Kind::Ak;
      f.count = count("marked point count", 2);
      f.n = half_dimension();
    } else if (kind.text == "ball") {
      f.kind = FiberDecl::Kind::Ball;
      f.n = half_dimension();
    } else {
      f.kind = FiberDecl::Kind::Handle;
      f.base = kind.text;
      expect_punct("+");
      expect_keyword("handle");
      f.handle_label = expect_ident("a handle label").text;
      f.pairings = int_list();
    }
    return f;
  }

  PlumbingTree tree() {
    PlumbingTree t;
    expect_punct("[");
    skip_newlines();
    while (peek().kind == Tok::Ident) {
      t.vertices.push_back(next().text);
      skip_newlines();
      if (is_punct(",")) next();
      skip_newlines();
    }
    if (t.vertices.empty()) fail(peek(), "a plumbing tree needs at least one vertex");
    if (is_punct(";")) {
      next();
      skip_newlines();
      while (peek().kind == Tok::Ident) {
        const Token& a = next();
        expect_punct("-");
        const Token& b = expect_ident("an edge endpoint");
        PlumbingEdge e;
        e.u = vertex(t, a);
        e.v = vertex(t, b);
        if (is_punct(":")) {
          next();
          const Token& at = peek();
          long long s = small_integer("edge sign");
          if (s != 1 && s != -1) fail(at, "edge sign must be 1 or -1");
          e.sign = static_cast<int>(s);
        }
        t.edges.push_back(e);
        skip_newlines();
        if (is_punct(",")) next();
        skip_newlines();
      }
    }
    expect_punct("]");
    return t;
  }

  std::size_t vertex(const PlumbingTree& t, const Token& tok) const {
    for (std::size_t i = 0; i < t.vertices.size(); ++i)
      if (t.vertices[i] == tok.text) return i;
    std::string hint = suggest(tok.text, t.vertices);
    fail(tok, "edge uses unknown vertex '" + tok.text + "'" + (hint.empty() ? "" : "; did you mean '" + hint + "'?"));
  }

  DatumDecl datum(Loc loc) {
    DatumDecl d;
    d.loc = loc;
    d.name = expect_ident("a datum name").text;
    expect_keyword("over");
    const Token& f = expect_ident("a fiber name");
    d.fiber = f.text;
    d.fiber_loc = f.loc;
    expect_punct("=");
    expect_punct("[");
    skip_newlines();
    if (!is_punct("]")) {
      for (;;) {
        skip_newlines();
        d.cycles.push_back(cycle());
        skip_newlines();
        if (is_punct("]")) break;
        expect_punct(",");
      }
    }
    next();
    if (peek().kind == Tok::Ident && peek().text == "preset") {
      next();
      d.preset = true;
    }
    return d;
  }

  CycleExpr cycle() {
    CycleExpr e;
    e.loc = peek().loc;
    if (is_punct("[")) {
      e.kind = CycleExpr::Kind::Literal;
      e.ints = int_list();
      return e;
    }
    const Token& id = expect_ident("a cycle expression");
    if (id.text == "tw" && is_punct("(")) {
      next();
      e.kind = CycleExpr::Kind::Twist;
      e.center = std::make_shared<const CycleExpr>(cycle());
      expect_punct(")");
      expect_punct("^");
      const Token& at = peek();
      e.exponent = small_integer("twist exponent");
      if (e.exponent == 0) fail(at, "twist exponent must be nonzero");
      e.target = std::make_shared<const CycleExpr>(cycle());
      return e;
    }
    if (id.text == "arc" && is_punct("(")) {
      next();
      e.kind = CycleExpr::Kind::Arc;
      e.arc_i = count("arc endpoint", 1);
      expect_punct(",");
      e.arc_j = count("arc endpoint", 1);
      expect_punct(";");
      e.preset = expect_ident("an arc preset").text;
      expect_punct(")");
      return e;
    }
    e.kind = CycleExpr::Kind::Label;
    e.label = id.text;
    return e;
  }

  ScriptDecl script(Loc loc) {
    ScriptDecl s;
    s.loc = loc;
    s.name = expect_ident("a script name").text;
    expect_keyword("on");
    const Token& d = expect_ident("a datum name");
    s.datum = d.text;
    s.datum_loc = d.loc;
    skip_newlines();
    expect_punct("{");
    for (;;) {
      while (peek().kind == Tok::Newline || is_punct(";")) next();
      if (is_punct("}")) break;
      if (peek().kind == Tok::End) fail(peek(), "unterminated script; expected '}'");
      s.steps.push_back(step());
      if (!is_punct(";") && !is_punct("}") && peek().kind != Tok::Newline)
        fail(peek(), "expected ';' or end of line after a step, found " + describe(peek()));
    }
    next();
    return s;
  }

  StepDecl step() {
    StepDecl d;
    const std::string word = compound_word(d.loc);
    Step& s = d.step;
    if (word == "hurwitzL") {
      s.kind = StepKind::HurwitzLeft;
      s.index = position();
    } else if (word == "hurwitzR") {
      s.kind = StepKind::HurwitzRight;
      s.index = position();
    } else if (word == "rotate") {
      s.kind = StepKind::Rotate;
    } else if (word == "stabilize") {
      s.kind = StepKind::Stabilize;
      s.ints = int_list();
    } else if (word == "subflex") {
      s.kind = StepKind::Subflex;
      expect_punct("[");
      skip_newlines();
      if (!is_punct("]")) {
        for (;;) {
          skip_newlines();
          s.lists.push_back(int_list());
          skip_newlines();
          if (is_punct("]")) break;
          expect_punct(",");
        }
      }
      next();
    } else if (word == "bsum") {
      s.kind = StepKind::BoundarySum;
      s.name = expect_ident("a datum name").text;
    } else if (word == "add-cycle") {
      s.kind = StepKind::AddCycle;
      s.name = expect_ident("a basis sphere label").text;
      s.index = IntLattice::npos;
      if (peek().kind == Tok::Number) s.index = position();
    } else if (word == "certify-loose") {
      s.kind = StepKind::CertifyLoose;
      s.index = position();
    } else if (word == "certify-stab") {
      s.kind = StepKind::CertifyStab;
      s.index = position();
    } else if (word == "flexify") {
      s.kind = StepKind::Flexify;
    } else {
      std::string hint = suggest(word, {"hurwitzL", "hurwitzR", "rotate", "stabilize", "subflex", "bsum", "add-cycle",
                                        "certify-loose", "certify-stab", "flexify"});
      throw Error(ErrorCode::Parse, located(file_, d.loc, "unknown step '" + word + "'" +
                                                              (hint.empty() ? "" : "; did you mean '" + hint + "'?")));
    }
    return d;
  }

  CommandDecl command(const Token& kw) {
    CommandDecl c;
    c.loc = kw.loc;
    if (kw.text == "print") {
      expect_keyword("invariants");
      c.kind = CommandDecl::Kind::PrintInvariants;
    } else if (kw.text == "verify") {
      c.kind = CommandDecl::Kind::Verify;
    } else {
      c.kind = CommandDecl::Kind::Search;
      c.depth = 4;
      c.width = 10000;
    }
    const Token& t = expect_ident("a name");
    c.target = t.text;
    c.target_loc = t.loc;
    if (c.kind == CommandDecl::Kind::Search) {
      while (peek().kind == Tok::Ident) {
        const Token& opt = next();
        expect_punct("=");
        if (opt.text == "depth")
          c.depth = count("depth", 0);
        else if (opt.text == "width")
          c.width = count("width", 1);
        else
          fail(opt, "unknown search option '" + opt.text + "' (expected depth or width)");
      }
    }
    return c;
  }
};

// ----------------------------------------------------------------- printer

std::string ints_text(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + "]";
}

std::string pretty_statement(const FiberDecl& f) {
  std::string out = "fiber " + f.name + " = ";
  const std::string n = " n=" + std::to_string(f.n);
  switch (f.kind) {
    case FiberDecl::Kind::Chain: return out + "plumbing A" + std::to_string(f.count) + n;
    case FiberDecl::Kind::Ak: return out + "ak " + std::to_string(f.count) + n;
    case FiberDecl::Kind::Ball: return out + "ball" + n;
    case FiberDecl::Kind::Handle: return out + f.base + " + handle " + f.handle_label + " " + ints_text(f.pairings);
    case FiberDecl::Kind::Plumbing: {
      out += "plumbing [";
      for (std::size_t i = 0; i < f.tree.vertices.size(); ++i) out += (i ? ", " : "") + f.tree.vertices[i];
      out += ";";
      for (std::size_t i = 0; i < f.tree.edges.size(); ++i) {
        const auto& e = f.tree.edges[i];
        out += (i ? ", " : " ") + f.tree.vertices[e.u] + "-" + f.tree.vertices[e.v];
        if (e.sign != 1) out += ":" + std::to_string(e.sign);
      }
      return out + "]" + n;
    }
  }
  return out;
}

std::string pretty_statement(const DatumDecl& d) {
  std::string out = "datum " + d.name + " over " + d.fiber + " = [";
  for (std::size_t i = 0; i < d.cycles.size(); ++i) out += (i ? ", " : "") + pretty(d.cycles[i]);
  out += "]";
  if (d.preset) out += " preset";
  return out;
}

std::string pretty_statement(const ScriptDecl& s) {
  std::string out = "script " + s.name + " on " + s.datum + " {\n";
  for (const auto& st : s.steps) out += "  " + to_string(st.step) + "\n";
  return out + "}";
}

std::string pretty_statement(const CommandDecl& c) {
  switch (c.kind) {
    case CommandDecl::Kind::PrintInvariants: return "print invariants " + c.target;
    case CommandDecl::Kind::Verify: return "verify " + c.target;
    case CommandDecl::Kind::Search:
      return "search " + c.target + " depth=" + std::to_string(c.depth) + " width=" + std::to_string(c.width);
  }
  return {};
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::string pretty(const CycleExpr& e) {
  switch (e.kind) {
    case CycleExpr::Kind::Label: return e.label;
    case CycleExpr::Kind::Literal: return ints_text(e.ints);
    case CycleExpr::Kind::Arc:
      return "arc(" + std::to_string(e.arc_i) + "," + std::to_string(e.arc_j) + "; " + e.preset + ")";
    case CycleExpr::Kind::Twist:
      return "tw(" + pretty(*e.center) + ")^" + std::to_string(e.exponent) + " " + pretty(*e.target);
  }
  return {};
}

Program parse(const std::string& text, const std::string& file) { return Parser(lex(text, file), file).program(); }

std::string pretty(const Program& p) {
  std::string out;
  for (const auto& s : p.statements) out += std::visit([](const auto& x) { return pretty_statement(x); }, s) + "\n";
  return out;
}

std::string suggest(const std::string& name, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(name, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  const std::size_t limit = std::max<std::size_t>(2, name.size() / 3);
  return best_d <= limit && best_d > 0 ? best : std::string{};
}

// --------------------------------------------------------------- workspace

void Workspace::add_fiber(const std::string& name, FiberModel f) {
  fibers_.emplace(name, std::move(f));
  fiber_order_.push_back(name);
}

void Workspace::add_datum(const std::string& name, NamedDatum d) {
  data_.emplace(name, std::move(d));
  datum_order_.push_back(name);
}

void Workspace::add_script(const std::string& name, NamedScript s) {
  scripts_.emplace(name, std::move(s));
  script_order_.push_back(name);
}

std::vector<std::string> Workspace::all_names() const {
  std::vector<std::string> out = fiber_order_;
  out.insert(out.end(), datum_order_.begin(), datum_order_.end());
  out.insert(out.end(), script_order_.begin(), script_order_.end());
  return out;
}

namespace {

std::string undefined(const std::string& what, const std::string& name, const std::vector<std::string>& candidates) {
  std::string hint = suggest(name, candidates);
  return "undefined " + what + " '" + name + "'" + (hint.empty() ? "" : "; did you mean '" + hint + "'?");
}

// Rethrows module errors with a source location, keeping the code.
template <class F>
auto at(const std::string& file, const Loc& loc, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string msg = e.what();
    if (msg.rfind(file + ":", 0) == 0) throw;
    throw Error(e.code(), located(file, loc, msg));
  }
}

void check_fresh(const Workspace& ws, const std::string& name, const std::string& file, const Loc& loc) {
  const auto names = ws.all_names();
  if (std::find(names.begin(), names.end(), name) != names.end())
    throw Error(ErrorCode::Precondition, located(file, loc, "name '" + name + "' is already defined"));
}

}  // namespace

VanishingCycle evaluate_cycle(const FiberModel& fiber, const CycleExpr& e, const std::string& file) {
  const IntLattice& L = fiber.lattice;
  return at(file, e.loc, [&]() -> VanishingCycle {
    switch (e.kind) {
      case CycleExpr::Kind::Label: {
        std::size_t idx = L.find_label(e.label);
        if (idx == IntLattice::npos && e.label.size() > 1 && e.label[0] == 'e' &&
            std::all_of(e.label.begin() + 1, e.label.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          const std::size_t k = static_cast<std::size_t>(std::stoull(e.label.substr(1)));
          if (k >= 1 && k <= L.rank()) idx = k - 1;
        }
        if (idx == IntLattice::npos) throw Error(ErrorCode::UndefinedName, undefined("basis sphere", e.label, L.labels()));
        VanishingCycle c = make_cycle(fiber, TwistWord::generator(SphereClass{L.basis_vector(idx), e.label}));
        if (fiber.arcs && idx + 1 < fiber.arcs->m() && L.labels()[idx] == "e" + std::to_string(idx + 1))
          c.arc = std::make_shared<const MatchingArc>(standard_arc(*fiber.arcs, idx + 1));
        return c;
      }
      case CycleExpr::Kind::Literal: {
        if (e.ints.size() != L.rank())
          throw Error(ErrorCode::DimensionMismatch, "class literal has " + std::to_string(e.ints.size()) +
                                                        " entries, fiber rank is " + std::to_string(L.rank()));
        return make_cycle(fiber, TwistWord::generator(SphereClass{e.ints, {}}));
      }
      case CycleExpr::Kind::Arc: {
        if (!fiber.arcs) throw Error(ErrorCode::Precondition, "arc() needs a fiber built with ak");
        return cycle_from_arc(fiber, fiber.arcs->preset(e.preset, e.arc_i, e.arc_j));
      }
      case CycleExpr::Kind::Twist: {
        VanishingCycle center = evaluate_cycle(fiber, *e.center, file);
        VanishingCycle target = evaluate_cycle(fiber, *e.target, file);
        TwistWord w = twist(L, center.word, e.exponent, target.word);
        std::shared_ptr<const MatchingArc> arc;
        if (center.arc && target.arc && fiber.arcs)
          arc = std::make_shared<const MatchingArc>(apply_half_twist(*fiber.arcs, *center.arc, *target.arc, e.exponent));
        return make_cycle(fiber, std::move(w), std::move(arc));
      }
    }
    throw Error(ErrorCode::Internal, "unknown cycle expression");
  });
}

void define(Workspace& ws, const Statement& st, const std::string& file) {
  if (const auto* f = std::get_if<FiberDecl>(&st)) {
    check_fresh(ws, f->name, file, f->loc);
    FiberModel model = at(file, f->loc, [&]() -> FiberModel {
      switch (f->kind) {
        case FiberDecl::Kind::Chain: return plumbing_lattice(PlumbingTree::chain(f->count), f->n);
        case FiberDecl::Kind::Plumbing: return plumbing_lattice(f->tree, f->n);
        case FiberDecl::Kind::Ak: return ak_matching_fiber(f->count, f->n);
        case FiberDecl::Kind::Ball: return ball_fiber(f->n);
        case FiberDecl::Kind::Handle: {
          const auto& names = ws.fiber_names();
          if (std::find(names.begin(), names.end(), f->base) == names.end())
            throw Error(ErrorCode::UndefinedName, undefined("fiber", f->base, names));
          return attach_stabilizing_handle(ws.fiber(f->base), f->pairings, f->handle_label).first;
        }
      }
      throw Error(ErrorCode::Internal, "unknown fiber kind");
    });
    ws.add_fiber(f->name, std::move(model));
  } else if (const auto* d = std::get_if<DatumDecl>(&st)) {
    check_fresh(ws, d->name, file, d->loc);
    const auto& names = ws.fiber_names();
    if (std::find(names.begin(), names.end(), d->fiber) == names.end())
      throw Error(ErrorCode::UndefinedName, located(file, d->fiber_loc, undefined("fiber", d->fiber, names)));
    const FiberModel& fiber = ws.fiber(d->fiber);
    LefschetzDatum datum{fiber, {}};
    for (const auto& c : d->cycles) datum.cycles.push_back(evaluate_cycle(fiber, c, file));
    ws.add_datum(d->name, NamedDatum{std::move(datum), d->preset});
  } else if (const auto* s = std::get_if<ScriptDecl>(&st)) {
    check_fresh(ws, s->name, file, s->loc);
    if (!ws.has_datum(s->datum))
      throw Error(ErrorCode::UndefinedName, located(file, s->datum_loc, undefined("datum", s->datum, ws.datum_names())));
    NamedScript script{s->datum, {}};
    for (const auto& sd : s->steps) {
      Step step = sd.step;
      if (step.kind == StepKind::BoundarySum) {
        if (!ws.has_datum(step.name))
          throw Error(ErrorCode::UndefinedName, located(file, sd.loc, undefined("datum", step.name, ws.datum_names())));
        step.datum = std::make_shared<const LefschetzDatum>(ws.datum(step.name).datum);
      }
      script.certificate.steps.push_back(std::move(step));
    }
    ws.add_script(s->name, std::move(script));
  }
}

Workspace build_workspace(const Program& p, const std::string& file) {
  Workspace ws;
  for (const auto& s : p.statements) define(ws, s, file);
  return ws;
}

}  // namespace lef::dsl
