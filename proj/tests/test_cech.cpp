#include "doctest.h"

#include <cmath>

#include "ptk/cech.hpp"
#include "ptk/random.hpp"

using namespace ptk;

namespace {

IntMatrix random_int_matrix(int r, int c, Rng& rng) {
  IntMatrix m(r, c);
  for (auto& x : m.a) x = rng.uniform(-4, 4);
  return m;
}

std::map<std::pair<int, int>, cd> random_phases(const Nerve& N, Rng& rng) {
  std::map<std::pair<int, int>, cd> out;
  for (const auto& e : N.simplices(1)) out[{e[0], e[1]}] = std::polar(1.0, rng.uniform_real(0, 2 * M_PI));
  return out;
}

bool same_class_shape(const CohomologyClass& a, const CohomologyClass& b) {
  return a.torsion_orders == b.torsion_orders && a.free_rank == b.free_rank && a.order() == b.order();
}

}  // namespace

TEST_CASE("Smith normal form") {
  Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    int r = static_cast<int>(rng.uniform(1, 6)), c = static_cast<int>(rng.uniform(1, 6));
    IntMatrix A = random_int_matrix(r, c, rng);
    SmithForm S = smith_normal_form(A);
    IntMatrix D = S.U * A * S.V;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        Integer expect = (i == j && i < S.rank()) ? S.diag[i] : Integer(0);
        CHECK(D(i, j) == expect);
      }
    for (int i = 0; i + 1 < S.rank(); ++i) CHECK(mpz_divisible_p(S.diag[i + 1].get_mpz_t(), S.diag[i].get_mpz_t()));
    CHECK(S.U * S.Uinv == IntMatrix::identity(r));
    CHECK(S.V * S.Vinv == IntMatrix::identity(c));
    std::vector<Integer> x(c);
    for (auto& v : x) v = rng.uniform(-3, 3);
    auto sol = integer_solve(A, A.apply(x));
    REQUIRE(sol);
    CHECK(A.apply(*sol) == A.apply(x));
  }
  IntMatrix two(1, 1);
  two(0, 0) = 2;
  CHECK(!integer_solve(two, {Integer(1)}));
}

TEST_CASE("nerves and integer cohomology") {
  Nerve S3 = Nerve::boundary_of_4_simplex();
  CHECK(S3.simplices(3).size() == 5);
  CHECK(S3.simplices(2).size() == 10);
  for (int k = 0; k + 2 <= S3.dim(); ++k) {
    IntMatrix dd = S3.coboundary(k + 1) * S3.coboundary(k);
    for (const auto& x : dd.a) CHECK(x == 0);
  }
  std::vector<long> gen(5, 0);
  gen[0] = 1;
  auto c = h3_class(S3, gen);
  CHECK(c.free_rank == 1);
  CHECK(c.torsion_orders.empty());
  CHECK(!c.is_zero());
  CHECK(c.order() == 0);
  CHECK((c.free_coords[0] == 1 || c.free_coords[0] == -1));
  // an integer coboundary is the zero class
  Rng rng(52);
  std::vector<Integer> f(10);
  for (auto& x : f) x = rng.uniform(-3, 3);
  auto df = coboundary(S3, 2, f);
  std::vector<long> dl;
  for (const auto& x : df) dl.push_back(x.get_si());
  CHECK(h3_class(S3, dl).is_zero());
  std::vector<long> notclosed(5, 0);
  CHECK_NOTHROW(h3_class(S3, notclosed));

  auto sc = rp2_times_circle();
  std::vector<Integer> zero2(sc.nerve.simplices(2).size());
  // H^2(RP^2 x S^1) = Z/2 (+) 0 and H^3 = Z/2
  auto h2 = cohomology_class(sc.nerve, 2, zero2);
  CHECK(h2.torsion_orders == std::vector<Integer>{2});
  CHECK(h2.free_rank == 0);
  std::vector<long> zero3(sc.nerve.simplices(3).size(), 0);
  auto h3 = h3_class(sc.nerve, zero3);
  CHECK(h3.torsion_orders == std::vector<Integer>{2});
  CHECK(h3.free_rank == 0);
}

TEST_CASE("Dixmier-Douady cocycles") {
  Nerve tri = Nerve::from_simplices({{0, 1, 2}});
  UnitaryCochain id;
  id.n = 2;
  for (const auto& e : tri.simplices(1)) id.exact[{e[0], e[1]}] = MatQ::identity(2);
  auto c0 = scalar_check_and_mu(id, tri);
  CHECK(c0.mu_exact == std::vector<Gq>{Gq(1)});

  auto pt = pauli_triangle();
  auto cp = scalar_check_and_mu(pt.transitions, pt.nerve);
  REQUIRE(cp.mu_exact.size() == 1);
  CHECK(cp.mu_exact[0] == Gq::I());
  CHECK(cp.nu[0] == 0.25);

  UnitaryCochain bad = pt.transitions;
  bad.exact[{0, 2}] = MatQ::identity(2);
  CHECK_THROWS_WITH_AS(scalar_check_and_mu(bad, pt.nerve), "transition data is not a projective cocycle",
                       std::domain_error);

  // determinant normalization puts mu into {+1, -1}
  auto lifted = lift_from_determinant(pt.transitions);
  auto cl = scalar_check_and_mu(lifted, pt.nerve);
  CHECK(std::min(std::abs(cl.mu[0] - cd(1, 0)), std::abs(cl.mu[0] - cd(-1, 0))) < 1e-12);
  CHECK(std::abs(2 * cl.nu[0] - std::round(2 * cl.nu[0])) < 1e-12);

  auto sc = rp2_times_circle();
  auto dd = scalar_check_and_mu(sc.transitions, sc.nerve);
  CHECK(dd.dmu_is_one);
  CHECK(dd.max_rounding == 0.0);
  auto cls = h3_class(sc.nerve, dd.delta);
  CHECK(!cls.is_zero());
  CHECK(cls.order() == 2);
  auto w = torsion_witness(sc.nerve, dd.delta, 2);
  REQUIRE(w);
  auto dw = coboundary(sc.nerve, 2, *w);
  for (std::size_t i = 0; i < dw.size(); ++i) CHECK(dw[i] == 2 * dd.delta[i]);
  CHECK(!torsion_witness(sc.nerve, dd.delta, 1));

  Rng rng(53);
  for (int t = 0; t < 10; ++t) {
    auto re = rephased(sc.transitions, random_phases(sc.nerve, rng));
    auto d2 = scalar_check_and_mu(re, sc.nerve);
    CHECK(d2.dmu_is_one);
    auto c2 = h3_class(sc.nerve, d2.delta);
    CHECK(c2.torsion_coords == cls.torsion_coords);
    CHECK(c2.free_coords == cls.free_coords);
  }

  // relabeling the vertices keeps the class
  std::vector<int> perm(sc.nerve.vertex_count());
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) perm[i] = static_cast<int>(perm.size()) - 1 - i;
  Nerve N2 = sc.nerve.relabeled(perm);
  auto d3 = scalar_check_and_mu(relabeled(sc.transitions, perm), N2);
  auto c3 = h3_class(N2, d3.delta);
  CHECK(same_class_shape(c3, cls));
  CHECK(!c3.is_zero());

  // shifting nu by an integer 2-cochain changes delta by a coboundary
  std::vector<Integer> shift(sc.nerve.simplices(2).size());
  for (auto& x : shift) x = rng.uniform(-1, 1);
  auto ds = coboundary(sc.nerve, 2, shift);
  std::vector<long> d4 = dd.delta;
  for (std::size_t i = 0; i < d4.size(); ++i) d4[i] += ds[i].get_si();
  auto c4 = h3_class(sc.nerve, d4);
  CHECK(c4.torsion_coords == cls.torsion_coords);
}
