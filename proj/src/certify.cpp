#include "lefweave/certify.hpp"

#include <future>
#include <sstream>
#include <unordered_set>

namespace lef {

namespace {

std::string ints_text(const IntVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out + "]";
}

std::string cycle_name(std::size_t i) { return "cycle " + std::to_string(i + 1); }

Step make_step(StepKind kind, std::size_t index = 0) {
  Step s;
  s.kind = kind;
  s.index = index;
  return s;
}

}  // namespace

std::string to_string(const Step& s) {
  switch (s.kind) {
    case StepKind::HurwitzLeft: return "hurwitzL " + std::to_string(s.index + 1);
    case StepKind::HurwitzRight: return "hurwitzR " + std::to_string(s.index + 1);
    case StepKind::Rotate: return "rotate";
    case StepKind::Stabilize: return "stabilize " + ints_text(s.ints);
    case StepKind::Subflex: {
      std::string out = "subflex [";
      for (std::size_t i = 0; i < s.lists.size(); ++i) out += (i ? "," : "") + ints_text(s.lists[i]);
      return out + "]";
    }
    case StepKind::BoundarySum: return "bsum " + s.name;
    case StepKind::AddCycle:
      return "add-cycle " + s.name + (s.index == IntLattice::npos ? std::string{} : " " + std::to_string(s.index + 1));
    case StepKind::CertifyLoose: return "certify-loose " + std::to_string(s.index + 1);
    case StepKind::CertifyStab: return "certify-stab " + std::to_string(s.index + 1);
    case StepKind::Flexify: return "flexify";
  }
  return "?";
}

std::optional<std::string> stabilization_violation(const LefschetzDatum& d, std::size_t i) {
  if (i >= d.size()) return cycle_name(i) + " does not exist";
  const VanishingCycle& c = d.cycles[i];
  if (!c.word.is_generator()) return cycle_name(i) + " is not a bare basis sphere";
  const std::size_t v = unit_index(c.word.base);
  if (v == IntLattice::npos) return cycle_name(i) + " is not a basis sphere";
  for (std::size_t j = 0; j < i; ++j)
    if (d.cycles[j].word.support().count(v))
      return cycle_name(j) + " runs through the handle of " + d.fiber.lattice.labels()[v] + " before " + cycle_name(i);
  return std::nullopt;
}

std::optional<std::string> loose_pair_violation(const LefschetzDatum& d, std::size_t i) {
  if (i + 1 >= d.size()) return "no cycle follows " + cycle_name(i);
  const VanishingCycle& s = d.cycles[i];
  const VanishingCycle& l = d.cycles[i + 1];
  if (!s.stabilization_sphere) return cycle_name(i) + " is not a certified stabilization sphere";
  if (!s.word.is_generator()) return cycle_name(i) + " is not a bare basis sphere";
  const std::size_t v = unit_index(s.word.base);
  if (v == IntLattice::npos) return cycle_name(i) + " is not a basis sphere";
  if (l.word.letters.empty() || !(*l.word.letters.front().center == s.word))
    return cycle_name(i + 1) + " is not a twist of " + cycle_name(i) + "'s sphere";
  if (l.word.letters.front().exponent != 1)
    return cycle_name(i + 1) + " twists by " + std::to_string(l.word.letters.front().exponent) + ", not +1";
  TwistWord rest = l.word;
  rest.letters.erase(rest.letters.begin());
  const Int p = pairing(d.fiber.lattice, s.klass, evaluate_word(d.fiber.lattice, rest));
  if (p != 1 && p != -1) return "the untwisted part of " + cycle_name(i + 1) + " meets the sphere " + p.str() + " times";
  if (rest.support().count(v)) return "the untwisted part of " + cycle_name(i + 1) + " already runs through the handle";
  return std::nullopt;
}

LefschetzDatum rule_loose_pair(const LefschetzDatum& d, std::size_t i) {
  if (auto why = loose_pair_violation(d, i)) throw Error(ErrorCode::Precondition, "certify-loose: " + *why);
  LefschetzDatum out = d;
  out.cycles[i + 1].loose_certified = true;
  return out;
}

LefschetzDatum rule_stabilization_sphere(const LefschetzDatum& d, std::size_t i) {
  if (auto why = stabilization_violation(d, i)) throw Error(ErrorCode::Precondition, "certify-stab: " + *why);
  LefschetzDatum out = d;
  out.cycles[i].stabilization_sphere = true;
  return out;
}

std::optional<std::string> certified_failure(const LefschetzDatum& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    const VanishingCycle& c = d.cycles[i];
    if (c.stabilization_sphere) {
      if (auto why = stabilization_violation(d, i)) return why;
    } else if (c.loose_certified) {
      if (i == 0) return cycle_name(i) + " is flagged loose with no sphere before it";
      if (auto why = loose_pair_violation(d, i - 1)) return why;
    } else {
      return cycle_name(i) + " is not certified";
    }
  }
  return std::nullopt;
}

LefschetzDatum apply_step(const LefschetzDatum& d, const Step& s) {
  switch (s.kind) {
    case StepKind::HurwitzLeft: return hurwitz_left(d, s.index);
    case StepKind::HurwitzRight: return hurwitz_right(d, s.index);
    case StepKind::Rotate: return rotate(d);
    case StepKind::Stabilize: return stabilize(d, s.ints, s.name);
    case StepKind::Subflex: return subflexibilize(d, s.lists);
    case StepKind::BoundarySum:
      if (!s.datum) throw Error(ErrorCode::Internal, "bsum step without operand");
      return boundary_connect_sum(d, *s.datum);
    case StepKind::AddCycle: {
      const std::size_t b = d.fiber.lattice.find_label(s.name);
      if (b == IntLattice::npos) throw Error(ErrorCode::UndefinedName, "add-cycle: no basis sphere '" + s.name + "'");
      return add_cycle(d, TwistWord::generator(SphereClass{d.fiber.lattice.basis_vector(b), s.name}), s.index);
    }
    case StepKind::CertifyLoose: return rule_loose_pair(d, s.index);
    case StepKind::CertifyStab: return rule_stabilization_sphere(d, s.index);
    case StepKind::Flexify: throw Error(ErrorCode::Internal, "flexify must be expanded before it is applied");
  }
  throw Error(ErrorCode::Internal, "unknown step");
}

FlexifyResult flexify_after_handles(const LefschetzDatum& d_sf) {
  const std::size_t k = d_sf.size();
  FlexifyResult out{d_sf, {}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    const VanishingCycle& c = d_sf.cycles[i];
    if (!c.subflex_handle)
      throw Error(ErrorCode::Precondition, "flexify: " + cycle_name(i) + " did not come out of subflex");
    const std::size_t h = *c.subflex_handle;
    const bool shape = !c.word.letters.empty() && c.word.letters.front().exponent == 2 &&
                       c.word.letters.front().center->is_generator() &&
                       unit_index(c.word.letters.front().center->base) == h;
    if (!shape)
      throw Error(ErrorCode::Precondition,
                  "flexify: " + cycle_name(i) + " no longer has the form tw(S)^2 V left by subflex");
  }
  for (std::size_t i = 0; i < k; ++i) {
    Step add = make_step(StepKind::AddCycle, 2 * i + 1);
    add.name = d_sf.fiber.lattice.labels()[*d_sf.cycles[i].subflex_handle];
    out.interleaved = apply_step(out.interleaved, add);
    out.add_steps.push_back(std::move(add));
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.certificate.steps.push_back(make_step(StepKind::HurwitzRight, 2 * i));
    out.certificate.steps.push_back(make_step(StepKind::CertifyStab, 2 * i));
    out.certificate.steps.push_back(make_step(StepKind::CertifyLoose, 2 * i));
  }
  out.certificate.terminal_claim = k == 0 ? "subcritical" : "flexible";
  return out;
}

VerifyResult verify_certificate(const LefschetzDatum& d, const Certificate& c) {
  VerifyResult r;
  r.conclusion = "rejected";
  LefschetzDatum cur = d;
  std::vector<Step> pending(c.steps.rbegin(), c.steps.rend());
  while (!pending.empty()) {
    Step s = std::move(pending.back());
    pending.pop_back();
    const std::size_t pos = r.expanded.size() + 1;
    try {
      if (s.kind == StepKind::Flexify) {
        FlexifyResult fx = flexify_after_handles(cur);
        for (auto it = fx.certificate.steps.rbegin(); it != fx.certificate.steps.rend(); ++it) pending.push_back(*it);
        for (auto it = fx.add_steps.rbegin(); it != fx.add_steps.rend(); ++it) pending.push_back(*it);
        continue;
      }
      const bool wraps = (s.kind == StepKind::HurwitzLeft || s.kind == StepKind::HurwitzRight) && move_wraps(cur, s.index);
      cur = apply_step(cur, s);
      if (s.kind == StepKind::HurwitzLeft || s.kind == StepKind::HurwitzRight) ++r.hurwitz_moves;
      if (s.kind == StepKind::AddCycle) ++r.handles_attached;
      r.used_wrap = r.used_wrap || wraps;
      r.trace.push_back(TraceEntry{pos, to_string(s), to_string(cur), wraps});
      r.expanded.push_back(std::move(s));
    } catch (const Error& e) {
      r.failed_step = pos;
      r.reason = "step " + std::to_string(pos) + " (" + to_string(s) + "): " + e.what();
      r.final_datum = cur;
      return r;
    }
  }
  r.final_datum = cur;
  if (auto why = certified_failure(cur)) {
    r.reason = *why;
    return r;
  }
  if (!audit_certificate(d, r.expanded)) {
    r.reason = "independent replay disagrees with the verifier";
    return r;
  }
  r.accepted = true;
  r.terminal_claim = cur.size() == 0 ? "subcritical" : "flexible";
  r.conclusion = r.handles_attached > 0 ? "subflexible" : "flexible";
  return r;
}

bool audit_certificate(const LefschetzDatum& d, const std::vector<Step>& expanded) {
  // Replays from normalized data, re-evaluating every class from its word,
  // and checks flags directly against the rule patterns at the end.
  try {
    LefschetzDatum cur = normalize(d);
    for (const Step& s : expanded) {
      if (s.kind == StepKind::Flexify) return false;
      if (s.kind == StepKind::CertifyLoose) {
        if (loose_pair_violation(cur, s.index)) return false;
        cur.cycles[s.index + 1].loose_certified = true;
        continue;
      }
      if (s.kind == StepKind::CertifyStab) {
        if (stabilization_violation(cur, s.index)) return false;
        cur.cycles[s.index].stabilization_sphere = true;
        continue;
      }
      cur = normalize(apply_step(cur, s));
    }
    for (const auto& c : cur.cycles)
      if (!(evaluate_word(cur.fiber.lattice, c.word).coords == c.klass.coords)) return false;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const auto& c = cur.cycles[i];
      const bool ok = c.stabilization_sphere ? !stabilization_violation(cur, i)
                                             : c.loose_certified && i > 0 && !loose_pair_violation(cur, i - 1);
      if (!ok) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Step> greedy_certify(LefschetzDatum& d) {
  std::vector<Step> steps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d.cycles[i].stabilization_sphere && !d.cycles[i].loose_certified && !stabilization_violation(d, i)) {
        d.cycles[i].stabilization_sphere = true;
        steps.push_back(make_step(StepKind::CertifyStab, i));
        changed = true;
      }
      if (i + 1 < d.size() && d.cycles[i].stabilization_sphere && !d.cycles[i + 1].loose_certified &&
          !d.cycles[i + 1].stabilization_sphere && !loose_pair_violation(d, i)) {
        d.cycles[i + 1].loose_certified = true;
        steps.push_back(make_step(StepKind::CertifyLoose, i));
        changed = true;
      }
    }
  }
  return steps;
}

namespace {

struct Node {
  LefschetzDatum datum;
  std::vector<Step> moves;
};

std::string state_key(const LefschetzDatum& d) {
  std::string key = std::to_string(d.fiber.lattice.rank()) + "|";
  for (const auto& c : d.cycles) {
    key += to_string(c.word);
    key += c.stabilization_sphere ? "#s" : "";
    key += ";";
  }
  return key;
}

std::vector<Node> expand(const Node& node) {
  std::vector<Node> out;
  const LefschetzDatum& d = node.datum;
  auto push = [&](Step s) {
    try {
      LefschetzDatum next = apply_step(d, s);
      std::vector<Step> moves = node.moves;
      moves.push_back(std::move(s));
      out.push_back(Node{std::move(next), std::move(moves)});
    } catch (const Error&) {
      // Moves that do not apply here are simply not edges.
    }
  };
  if (d.size() >= 2) push(make_step(StepKind::Rotate));
  if (d.size() >= 2) {
    for (std::size_t i = 0; i < d.size(); ++i) push(make_step(StepKind::HurwitzLeft, i));
    for (std::size_t i = 0; i < d.size(); ++i) push(make_step(StepKind::HurwitzRight, i));
  }
  for (std::size_t j = 0; j < d.fiber.lattice.rank(); ++j) {
    Step s = make_step(StepKind::Stabilize);
    s.ints = d.fiber.lattice.basis_vector(j);
    push(std::move(s));
  }
  return out;
}

std::optional<Certificate> accept_node(const Node& node) {
  LefschetzDatum d = node.datum;
  std::vector<Step> certs = greedy_certify(d);
  if (certified_failure(d)) return std::nullopt;
  Certificate c;
  c.steps = node.moves;
  c.steps.insert(c.steps.end(), certs.begin(), certs.end());
  c.terminal_claim = d.size() == 0 ? "subcritical" : "flexible";
  return c;
}

}  // namespace

SearchResult search_certificate(const LefschetzDatum& d, std::size_t depth, std::size_t width, unsigned threads) {
  SearchResult result;
  std::unordered_set<std::string> seen;
  std::vector<Node> frontier;
  frontier.push_back(Node{d, {}});
  seen.insert(state_key(d));
  result.nodes = 1;
  if (auto c = accept_node(frontier.front())) {
    result.certificate = std::move(c);
    return result;
  }
  if (threads == 0) threads = 1;

  for (std::size_t level = 1; level <= depth && !frontier.empty(); ++level) {
    result.depth_reached = level;
    // Children are produced per chunk in parallel and merged in frontier order.
    const std::size_t chunks = std::min<std::size_t>(threads, frontier.size());
    const std::size_t per = (frontier.size() + chunks - 1) / chunks;
    std::vector<std::future<std::vector<Node>>> jobs;
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * per, hi = std::min(frontier.size(), lo + per);
      auto work = [&frontier, lo, hi] {
        std::vector<Node> out;
        for (std::size_t i = lo; i < hi; ++i) {
          auto kids = expand(frontier[i]);
          for (auto& k : kids) out.push_back(std::move(k));
        }
        return out;
      };
      jobs.push_back(std::async(chunks > 1 ? std::launch::async : std::launch::deferred, work));
    }
    std::vector<Node> next;
    for (auto& job : jobs) {
      for (auto& child : job.get()) {
        if (!seen.insert(state_key(child.datum)).second) continue;
        ++result.nodes;
        if (auto c = accept_node(child)) {
          result.certificate = std::move(c);
          return result;
        }
        if (next.size() < width) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return result;
}

}  // namespace lef
