#include "lefweave/fiber.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace lef {

PlumbingTree PlumbingTree::chain(std::size_t k) {
  PlumbingTree t;
  for (std::size_t i = 1; i <= k; ++i) t.vertices.push_back("e" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < k; ++i) t.edges.push_back({i, i + 1, 1});
  return t;
}

bool FiberModel::is_stabilizing(std::size_t basis_index) const {
  const std::string& label = lattice.labels().at(basis_index);
  for (const auto& h : stabilizing)
    if (h.label == label) return true;
  return false;
}

Int FiberModel::euler_characteristic() const {
  Int chi = 0;
  for (std::size_t d = 0; d < low_degree_ranks.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * low_degree_ranks[d];
  const Int middle = static_cast<long long>(lattice.rank());
  return lattice.n() % 2 == 0 ? chi + middle : chi - middle;
}

namespace {

std::vector<long long> connected_low_degrees(int n) {
  std::vector<long long> r(static_cast<std::size_t>(n), 0);
  r[0] = 1;
  return r;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

FiberModel plumbing_lattice(const PlumbingTree& tree, int n) {
  const std::size_t r = tree.vertices.size();
  if (r == 0) throw Error(ErrorCode::Precondition, "plumbing tree has no vertices");
  if (n < 1) throw Error(ErrorCode::Precondition, "half-dimension must be positive");
  std::set<std::string> seen;
  for (const auto& v : tree.vertices)
    if (!seen.insert(v).second) throw Error(ErrorCode::Precondition, "duplicate plumbing vertex '" + v + "'");

  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  IntMatrix gram(r, r);
  const Int diag = sphere_self_pairing(n);
  for (std::size_t i = 0; i < r; ++i) gram(i, i) = diag;
  for (const auto& e : tree.edges) {
    if (e.u >= r || e.v >= r) throw Error(ErrorCode::OutOfRange, "plumbing edge refers to a missing vertex");
    if (e.u == e.v) throw Error(ErrorCode::Precondition, "plumbing edge is a loop at '" + tree.vertices[e.u] + "'");
    if (e.sign != 1 && e.sign != -1) throw Error(ErrorCode::Precondition, "plumbing edge sign must be +1 or -1");
    const std::size_t a = find_root(parent, e.u), b = find_root(parent, e.v);
    if (a == b)
      throw Error(ErrorCode::Precondition,
                  "plumbing graph has a cycle through " + tree.vertices[e.u] + "-" + tree.vertices[e.v]);
    parent[a] = b;
    const std::size_t lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
    gram(lo, hi) = e.sign;
    gram(hi, lo) = n % 2 == 0 ? e.sign : -e.sign;
  }
  return FiberModel{IntLattice(n, std::move(gram), tree.vertices), {}, nullptr, connected_low_degrees(n)};
}

FiberModel ball_fiber(int n) {
  if (n < 1) throw Error(ErrorCode::Precondition, "half-dimension must be positive");
  return FiberModel{IntLattice(n, IntMatrix(0, 0), {}), {}, nullptr, connected_low_degrees(n)};
}

FiberModel ak_matching_fiber(std::size_t m, int n) {
  if (m < 2) throw Error(ErrorCode::Precondition, "ak fiber needs m >= 2 marked points");
  FiberModel f = plumbing_lattice(PlumbingTree::chain(m - 1), n);
  f.arcs = std::make_shared<const ArcSystem>(m, n);
  return f;
}

std::pair<FiberModel, SphereClass> attach_stabilizing_handle(const FiberModel& fiber, const IntVector& pairings,
                                                             const std::string& label) {
  const IntLattice& old = fiber.lattice;
  const std::size_t r = old.rank();
  if (pairings.size() != r) {
    std::ostringstream msg;
    msg << "handle '" << label << "': " << pairings.size() << " pairings given for a fiber of rank " << r;
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  if (old.find_label(label) != IntLattice::npos)
    throw Error(ErrorCode::Precondition, "basis label '" + label + "' already exists in the fiber");
  const int n = old.n();
  IntMatrix gram(r + 1, r + 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram(i, j) = old.gram()(i, j);
  for (std::size_t j = 0; j < r; ++j) {
    gram(r, j) = pairings[j];
    gram(j, r) = n % 2 == 0 ? pairings[j] : Int(-pairings[j]);
  }
  gram(r, r) = sphere_self_pairing(n);
  std::vector<std::string> labels = old.labels();
  labels.push_back(label);

  FiberModel out{IntLattice(n, std::move(gram), std::move(labels)), fiber.stabilizing, fiber.arcs,
                 fiber.low_degree_ranks};
  out.stabilizing.push_back(StabilizingHandle{label, pairings});
  SphereClass s{out.lattice.basis_vector(r), label};
  return {std::move(out), std::move(s)};
}

FiberModel fiber_direct_sum(const FiberModel& a, const FiberModel& b) {
  if (a.lattice.n() != b.lattice.n()) {
    std::ostringstream msg;
    msg << "cannot sum fibers of half-dimension " << a.lattice.n() << " and " << b.lattice.n();
    throw Error(ErrorCode::ParityMismatch, msg.str());
  }
  const std::size_t ra = a.lattice.rank(), rb = b.lattice.rank();
  IntMatrix gram(ra + rb, ra + rb);
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j) gram(i, j) = a.lattice.gram()(i, j);
  for (std::size_t i = 0; i < rb; ++i)
    for (std::size_t j = 0; j < rb; ++j) gram(ra + i, ra + j) = b.lattice.gram()(i, j);

  std::vector<std::string> labels = a.lattice.labels();
  std::set<std::string> taken(labels.begin(), labels.end());
  std::vector<std::string> renamed;
  for (const auto& l : b.lattice.labels()) {
    std::string name = l;
    for (int k = 2; taken.count(name); ++k) name = l + "_" + std::to_string(k);
    taken.insert(name);
    renamed.push_back(name);
    labels.push_back(name);
  }

  FiberModel out{IntLattice(a.lattice.n(), std::move(gram), std::move(labels)), a.stabilizing, a.arcs,
                 a.low_degree_ranks};
  for (const auto& h : b.stabilizing) {
    StabilizingHandle moved = h;
    moved.label = renamed[b.lattice.find_label(h.label)];
    IntVector padded(ra, 0);
    padded.insert(padded.end(), h.pairings.begin(), h.pairings.end());
    moved.pairings = std::move(padded);
    out.stabilizing.push_back(std::move(moved));
  }
  for (std::size_t d = 1; d < out.low_degree_ranks.size(); ++d) out.low_degree_ranks[d] += b.low_degree_ranks[d];
  return out;
}

}  // namespace lef
