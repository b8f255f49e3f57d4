#include "doctest.h"

#include <cmath>

#include "ptk/chkr.hpp"
#include "ptk/random.hpp"

using namespace ptk;

namespace {

std::vector<Form> random_elements(const ChartPtr& chart, int m, int count, Rng& rng, int degree = 1) {
  std::vector<Form> a;
  for (int i = 0; i < count; ++i) a.push_back(random_function(chart, m, degree, rng));
  return a;
}

// Midpoint rule for prod s_i^{m_i} over {s_1 + ... + s_k <= 1}, s_0 = 1 - sum.
double simplex_moment_numeric(const std::vector<int>& m, int n) {
  int k = static_cast<int>(m.size()) - 1;
  double h = 1.0 / n, sum = 0;
  std::vector<int> idx(k, 0);
  while (true) {
    double tot = 0, prod = 1;
    for (int i = 0; i < k; ++i) {
      double s = (idx[i] + 0.5) * h;
      tot += s;
      prod *= std::pow(s, m[i + 1]);
    }
    if (tot < 1) sum += prod * std::pow(1 - tot, m[0]);
    int s = 0;
    while (s < k && ++idx[s] == n) idx[s++] = 0;
    if (s == k) break;
  }
  return sum * std::pow(h, k);
}

}  // namespace

TEST_CASE("psi: term counts and the recursion") {
  auto R = Chart::polynomial(2);
  Rng rng(31);
  ConnectionData conn = curvature_and_lift(random_connection(R, 1, 1, rng));
  const std::uint64_t expect[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89};
  for (int k = 0; k <= 10; ++k) {
    auto a = random_elements(R, 1, k, rng);
    CHECK(psi(conn, a).terms.size() == expect[k]);
    CHECK(fibonacci(k + 1) == expect[k]);
  }
  CHECK(psi(conn, {}).sum == Form::identity(2, 1));

  auto R3 = Chart::polynomial(3);
  for (int t = 0; t < 10; ++t) {
    ConnectionData c = curvature_and_lift(random_connection(R3, 2, 1, rng));
    for (int k = 0; k <= 7; ++k) {
      auto a = random_elements(R3, 2, k, rng);
      CHECK(psi(c, a).sum == psi_recursive(c, a));
    }
    auto a = random_elements(R3, 2, 2, rng);
    CHECK(psi_recursive(c, a) == nabla(c, a[0]) * nabla(c, a[1]) + a[0] * c.sigma * a[1]);
  }
}

TEST_CASE("rho: low degrees, b-cocycle property and cyclic defect") {
  auto R3 = Chart::polynomial(3);
  Rng rng(32);
  ConnectionData c = curvature_and_lift(random_connection(R3, 2, 1, rng));
  auto a = random_elements(R3, 2, 1, rng);
  CHECK(rho(c, a) == a[0].trace());
  for (int t = 0; t < 20; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    ConnectionData cc = curvature_and_lift(random_connection(R3, m, 1, rng));
    int k = static_cast<int>(rng.uniform(1, 4));
    auto ts = random_tensors(R3, m, k + 1, 1, rng);
    CHECK(rho(cc, hochschild_b(ts)).is_zero());
    auto b = random_elements(R3, m, k + 1, rng);
    CHECK(cyclic_defect(cc, b).is_zero());
  }
}

TEST_CASE("induction identity") {
  auto R2 = Chart::polynomial(2);
  Rng rng(33);
  ConnectionData flat = curvature_and_lift(Form(2, 2));
  auto a = random_elements(R2, 2, 1, rng);
  CHECK(verify_induction_identity(flat, a).holds);
  // with sigma = 0 and k = 2 the identity is the graded Leibniz rule
  ConnectionData ab = curvature_and_lift(random_connection(R2, 1, 1, rng));
  auto b = random_elements(R2, 1, 3, rng);
  CHECK(ab.sigma.is_zero());
  CHECK(verify_induction_identity(ab, b).holds);
  auto R3 = Chart::polynomial(3);
  for (int t = 0; t < 10; ++t) {
    ConnectionData c = curvature_and_lift(random_connection(R3, 2, 1, rng));
    for (int k = 0; k <= 5; ++k) {
      auto x = random_elements(R3, 2, k + 1, rng);
      auto r = verify_induction_identity(c, x);
      CHECK(r.holds);
      CHECK(r.defect.is_zero());
    }
  }
}

TEST_CASE("Chern character under rho") {
  Rng rng(34);
  auto T = Chart::torus(3);
  // (projection size, number of blocks): the algebra is M_{size/blocks}
  const int shapes[][2] = {{2, 1}, {2, 2}, {3, 3}, {2, 1}, {4, 2}};
  for (const auto& [size, blocks] : shapes) {
    ConnectionData c = curvature_and_lift(random_connection(T, size / blocks, 1, rng));
    Elem p = random_trig_projection(T, size, rng);
    REQUIRE(is_projection(p));
    for (int n = 0; n <= 1; ++n) {
      Form r = rho(c, chern_cyclic_terms(p, blocks, n));
      CHECK(r == rho_chern_closed_form(c, p, blocks, n));
      CHECK(d(r).is_zero());
    }
  }
}

TEST_CASE("JLO-type character") {
  CHECK(simplex_moment({1, 0, 0}) == Rational(1, 6));
  CHECK(simplex_moment({0}) == Rational(1));
  CHECK(simplex_moment({0, 0, 0, 0}) == Rational(1, 6));
  for (auto m : std::vector<std::vector<int>>{{1, 0, 0}, {2, 1}, {0, 1, 2}, {1, 1, 1}}) {
    double exact = simplex_moment(m).get_d();
    CHECK(std::abs(simplex_moment_numeric(m, m.size() == 2 ? 200000 : 2000) - exact) < 1e-4);
  }

  Rng rng(35);
  auto R3 = Chart::polynomial(3);
  ConnectionData c = curvature_and_lift(random_connection(R3, 2, 1, rng));
  auto a = random_elements(R3, 2, 1, rng);
  CHECK(jlo_chkr(c, a) == (a[0] * form_exp(-c.sigma)).trace());

  ConnectionData flat = curvature_and_lift(random_connection(R3, 1, 1, rng));
  for (int k = 0; k <= 3; ++k) {
    auto b = random_elements(R3, 1, k + 1, rng);
    Form prod = b[0];
    for (int i = 1; i <= k; ++i) prod = prod * nabla(flat, b[i]);
    CHECK(jlo_chkr(flat, b) == prod.trace().scaled(Gq(Rational(1) / factorial(k))));
  }
}

TEST_CASE("JLO and rho agree on torus integrals") {
  Rng rng(36);
  auto T = Chart::torus(2);
  // flat: sigma = 0
  ConnectionData flat = curvature_and_lift(random_connection(T, 1, 1, rng));
  Elem p = random_trig_projection(T, 2, rng);
  auto cmp = compare_chkr_rho(flat, p, 2, T);
  CHECK(cmp.exact_agree);
  CHECK(cmp.numeric_difference < 1e-10);

  Elem q = to_poly_matrix(MatQ::identity(2));
  q(1, 1) = Poly(0);
  auto zero = compare_chkr_rho(flat, q, 2, T);
  CHECK(zero.jlo_exact.is_zero());
  CHECK(zero.rho_exact.is_zero());

  ConnectionData curved = curvature_and_lift(random_connection(T, 2, 1, rng));
  CHECK(!curved.sigma.is_zero());
  Elem p4 = random_trig_projection(T, 4, rng);
  auto cmp2 = compare_chkr_rho(curved, p4, 2, T);
  CHECK(cmp2.exact_agree);
  CHECK(cmp2.numeric_difference < 1e-8);
  CHECK_THROWS_AS(compare_chkr_rho(curved, p4, 2, T, 64, false), std::invalid_argument);
}
