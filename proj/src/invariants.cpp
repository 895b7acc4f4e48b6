#include "lefweave/invariants.hpp"

#include <boost/integer/common_factor.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

namespace lef {

namespace {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

IntMatrix boundary_matrix(const LefschetzDatum& d) {
  std::vector<IntVector> cols;
  for (const auto& c : d.cycles) cols.push_back(c.klass.coords);
  return IntMatrix::from_columns(d.fiber.lattice.rank(), cols);
}

Int sign_power(long long e) { return e % 2 == 0 ? Int(1) : Int(-1); }

}  // namespace

bool operator==(const TotalSpaceInvariants& a, const TotalSpaceInvariants& b) {
  return a.n == b.n && a.chi == b.chi && a.homology == b.homology && a.form_symmetry == b.form_symmetry &&
         a.form_invariants == b.form_invariants;
}

std::vector<Int> canonical_torsion(const std::vector<Int>& orders) {
  IntMatrix diag(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = orders[i];
  std::vector<Int> out;
  for (const Int& dv : smith_normal_form(diag).divisors)
    if (dv > 1) out.push_back(dv);
  return out;
}

TotalSpaceInvariants total_space_homology(const LefschetzDatum& d) {
  const int n = d.n();
  const std::size_t r = d.fiber.lattice.rank();
  const std::size_t k = d.size();
  const SmithForm snf = smith_normal_form(boundary_matrix(d));

  TotalSpaceInvariants inv;
  inv.n = n;
  inv.form_symmetry = (n + 1) % 2 == 0 ? Symmetry::Symmetric : Symmetry::Skew;
  for (int deg = 0; deg < n; ++deg)
    inv.homology.push_back(HomologyGroup{deg, Int(d.fiber.low_degree_ranks.at(static_cast<std::size_t>(deg))), {}});
  HomologyGroup hn{n, Int(static_cast<long long>(r - snf.rank)), {}};
  for (const Int& dv : snf.divisors)
    if (dv > 1) hn.torsion.push_back(dv);
  inv.homology.push_back(std::move(hn));
  inv.homology.push_back(HomologyGroup{n + 1, Int(static_cast<long long>(k - snf.rank)), {}});

  Int alt = 0;
  for (const auto& h : inv.homology) alt += sign_power(h.degree) * h.free;
  const Int formula = d.fiber.euler_characteristic() + sign_power(n + 1) * Int(static_cast<long long>(k));
  if (alt != formula) {
    std::ostringstream msg;
    msg << "euler characteristic mismatch: alternating sum " << alt << ", cell count " << formula;
    throw Error(ErrorCode::Internal, msg.str());
  }
  inv.chi = formula;
  return inv;
}

Int euler_characteristic(const LefschetzDatum& d) { return total_space_homology(d).chi; }

IntMatrix middle_intersection_form(const LefschetzDatum& d) {
  const int n = d.n();
  const std::size_t k = d.size();
  const SmithForm snf = smith_normal_form(boundary_matrix(d));

  // Thimble pairing, doubled on the diagonal so that restriction to the
  // kernel is exactly twice the form.
  const Int sigma = n % 2 == 0 ? Int(1) : sign_power(static_cast<long long>(n + 1) * (n + 2) / 2);
  const Int flip = sign_power(n + 1);
  IntMatrix q(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    q(i, i) = n % 2 == 0 ? Int(0) : Int(2 * sigma);
    for (std::size_t j = i + 1; j < k; ++j) {
      q(i, j) = sigma * pairing(d.fiber.lattice, d.cycles[i].klass, d.cycles[j].klass);
      q(j, i) = flip * q(i, j);
    }
  }
  IntMatrix kb(k, k - snf.rank);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = snf.rank; c < k; ++c) kb(i, c - snf.rank) = snf.V(i, c);
  IntMatrix form = kb.transpose() * q * kb;
  for (std::size_t i = 0; i < form.rows(); ++i)
    for (std::size_t j = 0; j < form.cols(); ++j) {
      if (form(i, j) % 2 != 0) throw Error(ErrorCode::Internal, "middle form is not even on the kernel");
      form(i, j) /= 2;
    }
  return form;
}

FormInvariants form_invariants(const IntMatrix& form, Symmetry symmetry) {
  FormInvariants out;
  const SmithForm snf = smith_normal_form(form);
  out.rank = snf.rank;
  out.det = 1;
  for (const Int& dv : snf.divisors) out.det *= dv;
  if (symmetry != Symmetry::Symmetric) return out;

  // Congruence diagonalization over Q.
  const std::size_t m = form.rows();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = Rational(form(i, j));
  std::vector<bool> done(m, false);
  long long pos = 0, neg = 0;
  for (;;) {
    std::size_t p = m;
    for (std::size_t i = 0; i < m && p == m; ++i)
      if (!done[i] && a[i][i] != 0) p = i;
    if (p == m) {
      // No usable diagonal entry: e_i += e_j makes one when a_ij != 0.
      std::size_t bi = m, bj = m;
      for (std::size_t i = 0; i < m && bi == m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi == m) break;
      for (std::size_t c = 0; c < m; ++c) a[bi][c] += a[bj][c];
      for (std::size_t r = 0; r < m; ++r) a[r][bi] += a[r][bj];
      p = bi;
    }
    const Rational piv = a[p][p];
    (piv > 0 ? pos : neg) += 1;
    done[p] = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      const Rational f = a[i][p] / piv;
      for (std::size_t j = 0; j < m; ++j) a[i][j] -= f * a[p][j];
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (done[j] || a[p][j] == 0) continue;
      const Rational f = a[p][j] / piv;
      for (std::size_t i = 0; i < m; ++i) a[i][j] -= f * a[i][p];
    }
  }
  out.signature = Int(pos - neg);
  return out;
}

TotalSpaceInvariants compute_invariants(const LefschetzDatum& d) {
  TotalSpaceInvariants inv = total_space_homology(d);
  IntMatrix form = middle_intersection_form(d);
  inv.form_invariants = form_invariants(form, inv.form_symmetry);
  inv.middle_form = std::move(form);
  return inv;
}

std::vector<HomologyGroup> kunneth(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b) {
  if (a.empty() || b.empty()) return {};
  const int top = a.back().degree + b.back().degree;
  std::vector<HomologyGroup> out;
  for (int deg = 0; deg <= top; ++deg) out.push_back(HomologyGroup{deg, 0, {}});
  std::vector<std::vector<Int>> orders(static_cast<std::size_t>(top) + 1);
  for (const auto& x : a)
    for (const auto& y : b) {
      const auto d = static_cast<std::size_t>(x.degree + y.degree);
      out[d].free += x.free * y.free;
      for (const Int& t : x.torsion)
        for (Int c = 0; c < y.free; ++c) orders[d].push_back(t);
      for (const Int& t : y.torsion)
        for (Int c = 0; c < x.free; ++c) orders[d].push_back(t);
      for (const Int& s : x.torsion)
        for (const Int& t : y.torsion) {
          const Int g = boost::integer::gcd(s, t);
          if (g > 1) {
            std::ostringstream msg;
            msg << "product: Tor(Z/" << s << ", Z/" << t << ") is nonzero";
            throw Error(ErrorCode::Unsupported, msg.str());
          }
        }
    }
  for (std::size_t d = 0; d < out.size(); ++d) out[d].torsion = canonical_torsion(orders[d]);
  return out;
}

TotalSpaceInvariants product_with_cotangent_sphere(const TotalSpaceInvariants& inv, int j) {
  if (j < 1) throw Error(ErrorCode::Precondition, "sphere dimension must be at least 1");
  std::vector<HomologyGroup> sphere;
  for (int deg = 0; deg <= j; ++deg) sphere.push_back(HomologyGroup{deg, deg == 0 || deg == j ? 1 : 0, {}});
  TotalSpaceInvariants out;
  out.n = inv.n + j;
  out.homology = kunneth(inv.homology, sphere);
  out.chi = inv.chi * (1 + sign_power(j));
  out.form_symmetry = (out.n + 1) % 2 == 0 ? Symmetry::Symmetric : Symmetry::Skew;
  return out;
}

}  // namespace lef
