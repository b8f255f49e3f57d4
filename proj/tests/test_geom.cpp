#include "doctest.h"

#include <cmath>
#include <numbers>

#include "ptk/clifford.hpp"
#include "ptk/geom.hpp"
#include "ptk/random.hpp"

using namespace ptk;

namespace {

constexpr double kPi = std::numbers::pi;

Form two_form(int d, int i, int j, const Gq& c) {
  Matrix<Poly> a(1, 1);
  a(0, 0) = Poly(c);
  return Form::basis(d, (FormMask(1) << i) | (FormMask(1) << j), a);
}

// Block-diagonal curvature with 2 x 2 blocks [[0, x_j], [-x_j, 0]].
Form rotation_blocks(const std::vector<Form>& x) {
  int d = x.front().dim(), n = 2 * static_cast<int>(x.size());
  Form R(d, n);
  for (std::size_t j = 0; j < x.size(); ++j)
    for (const auto& [I, a] : x[j].comps()) {
      Matrix<Poly> m(n, n);
      m(2 * j, 2 * j + 1) = a(0, 0);
      m(2 * j + 1, 2 * j) = -a(0, 0);
      R.add(I, m);
    }
  return R;
}

Form block_sum(const Form& a, const Form& b) {
  Form out(a.dim(), a.size() + b.size());
  for (const auto& [I, m] : a.comps()) {
    Matrix<Poly> big(out.size(), out.size());
    big.set_block(0, 0, m);
    out.add(I, big);
  }
  for (const auto& [I, m] : b.comps()) {
    Matrix<Poly> big(out.size(), out.size());
    big.set_block(a.size(), a.size(), m);
    out.add(I, big);
  }
  return out;
}

Form random_two_form(int d, Rng& rng) {
  Form x(d, 1);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rng.coin()) x += two_form(d, i, j, rng.small_gq(3, 2, false));
  return x;
}

std::vector<std::vector<Rational>> random_symmetric(int d, Rng& rng) {
  std::vector<std::vector<Rational>> h(d, std::vector<Rational>(d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) h[i][j] = h[j][i] = rng.small_gq(3, 2, false).re;
  return h;
}

std::vector<std::vector<Gq>> random_antisymmetric(int d, Rng& rng) {
  std::vector<std::vector<Gq>> A(d, std::vector<Gq>(d));
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      A[k][l] = rng.small_gq(3, 2, false);
      A[l][k] = -A[k][l];
    }
  return A;
}

}  // namespace

TEST_CASE("Gauss-Legendre and chart quadrature") {
  std::vector<double> x, w;
  gauss_legendre(5, -1, 1, x, w);
  double s = 0, m8 = 0;
  for (int i = 0; i < 5; ++i) {
    s += w[i];
    m8 += w[i] * std::pow(x[i], 8);
  }
  CHECK(s == doctest::Approx(2).epsilon(1e-14));
  CHECK(m8 == doctest::Approx(2.0 / 9).epsilon(1e-13));  // exact to degree 9
  CHECK_THROWS_AS(gauss_legendre(0, 0, 1, x, w), std::invalid_argument);

  Geometry S = sphere2(), T = torus2();
  CHECK(std::abs(S.quadrature(8).integrate(S.volume) - cd(4 * kPi)) < 1e-10);
  // Coarse sphere levels are kept on purpose so refinement trends stay visible.
  double e0 = std::abs(S.quadrature(0).integrate(S.volume) - cd(4 * kPi));
  double e2 = std::abs(S.quadrature(2).integrate(S.volume) - cd(4 * kPi));
  CHECK(e2 < e0 / 100);
  CHECK(std::abs(T.quadrature(0).integrate(T.volume) - cd(4 * kPi * kPi)) < 1e-10);

  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    Poly fs = random_poly(S.chart, 3, rng) * S.volume;
    Poly ft = random_poly(T.chart, 3, rng);
    CHECK(std::abs(S.quadrature(8).integrate(fs) - integrate_exact(fs, S.chart).value()) < 1e-9);
    CHECK(std::abs(T.quadrature(0).integrate(ft) - integrate_exact(ft, T.chart).value()) < 1e-9);
  }
  CHECK_THROWS_AS(formal4(std::vector<Rational>(256)).quadrature(0), std::invalid_argument);
}

TEST_CASE("curvature tensors: symmetries and the structure equation") {
  Geometry S = sphere2(), T = torus2();
  CHECK(check_symmetries(S).ok());
  CHECK(check_symmetries(T).ok());
  CHECK(S.R(0, 1, 0, 1) == Poly(-1));
  CHECK(curvature_matches_connection(S));
  CHECK(curvature_matches_connection(T));
  CHECK(S.curvature().component(3)(0, 1) == S.volume);

  // Torsion-free: de^k + omega_kl ^ e^l = 0.
  for (int k = 0; k < 2; ++k) {
    Form t = d(S.coframe[k]);
    for (int l = 0; l < 2; ++l) {
      Matrix<Poly> a(1, 1);
      a(0, 0) = S.connection.component(FormMask(1) << 1)(k, l);
      t += Form::basis(2, 2, a) * S.coframe[l];
    }
    CHECK(t.is_zero());
  }

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Geometry g = formal4(kulkarni_nomizu(random_symmetric(4, rng), random_symmetric(4, rng)));
    CHECK(check_symmetries(g).ok());
    CHECK_FALSE(curvature_matches_connection(g));
  }
  std::vector<Rational> bad(256);
  bad[1 * 64 + 0 * 16 + 2 * 4 + 3] = 1;  // R_1034 alone breaks antisymmetry in i, j
  CHECK_FALSE(check_symmetries(formal4(bad)).antisymmetric_ij);
}

TEST_CASE("spin lift of the connection") {
  // For constant antisymmetric A, S = (1/4) sum A_kl c_L(e_l e_k) satisfies
  // [S, c_L(e_j)] = c_L(sum_k A_kj e_k).
  Rng rng(11);
  for (int d : {2, 3, 4}) {
    auto A = random_antisymmetric(d, rng);
    MatQ S(1 << d, 1 << d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        S += scaled(left_matrix(CliffordElement::gen(d, l + 1) * CliffordElement::gen(d, k + 1)),
                    A[k][l] * Gq::frac(1, 4));
    for (int j = 0; j < d; ++j) {
      MatQ lhs = commutator(S, left_matrix(CliffordElement::gen(d, j + 1)));
      MatQ rhs(1 << d, 1 << d);
      for (int k = 0; k < d; ++k) rhs += scaled(left_matrix(CliffordElement::gen(d, k + 1)), A[k][j]);
      CHECK(lhs == rhs);
    }
  }

  Geometry S2 = sphere2();
  Form theta = spin_connection_left(S2);
  Form spin_curv = d(theta) + theta * theta;
  CHECK(spin_curv == -clifford_curvature_left(S2));
  CHECK(spin_connection_left(torus2()).is_zero());
  CHECK(clifford_curvature_left(torus2()).is_zero());
  ConnectionData g = geometric_connection(S2, 2);
  CHECK(g.theta.size() == 8);
  CHECK(g.omega == kron_form(MatQ::identity(2), spin_curv));
}

TEST_CASE("A-hat form") {
  Form zero(4, 4);
  CHECK(a_hat(zero).form == Form::identity(4, 1));
  CHECK(a_hat(sphere2()).form == Form::identity(2, 1));
  CHECK(a_hat(torus2()).form == Form::identity(2, 1));
  CHECK(a_hat_log_coefficients()[0] == Rational(-1, 24));

  Form notanti(2, 2);
  {
    Matrix<Poly> m(2, 2);
    m(0, 1) = Poly(1);
    notanti.add(3, m);
  }
  CHECK_THROWS_AS(a_hat(notanti), std::invalid_argument);

  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    // Four dimensions: A-hat = 1 - tr(R^2)/48 verbatim, and the Chern-Weil
    // normalization multiplies the degree-4 part by i^2.
    Geometry g = formal4(kulkarni_nomizu(random_symmetric(4, rng), random_symmetric(4, rng)));
    Form R = g.curvature();
    Form expected = Form::identity(4, 1) - (R * R).trace().scaled(Gq::frac(1, 48));
    CHECK(a_hat(g, Normalization::verbatim).form == expected);
    CHECK(a_hat(g, Normalization::chern_weil).form.degree_part(4) == -expected.degree_part(4));

    // Eigenvalue oracle: blocks with eigenvalues +-i x_j contribute
    // (x/2)/sin(x/2) = 1 + x^2/24 + 7 x^4/5760.
    std::vector<Form> x;
    for (int j = 0; j < 4; ++j) x.push_back(random_two_form(8, rng));
    Form oracle = Form::identity(8, 1);
    for (const auto& xj : x) {
      Form x2 = xj * xj;
      oracle = oracle * (Form::identity(8, 1) + x2.scaled(Gq::frac(1, 24)) + (x2 * x2).scaled(Gq::frac(7, 5760)));
    }
    CHECK(a_hat(rotation_blocks(x), Normalization::verbatim).form == oracle);

    // Multiplicativity over direct sums.
    Form R1 = rotation_blocks({x[0], x[1]}), R2 = rotation_blocks({x[2]});
    CHECK(a_hat(block_sum(R1, R2)).form == (a_hat(R1).wedge(a_hat(R2))).form);
  }
}

TEST_CASE("twisting curvature and relative Chern character") {
  Geometry S = sphere2(), T = torus2();
  Elem one = Elem::identity(1);
  CHECK(twisting_curvature(T, one).is_zero());
  CHECK(twisting_curvature(S, one) == -clifford_curvature_left(S));

  Elem p = bott_projection(S.chart);
  CHECK(p * p == p);
  Form P = Form::function(2, p);
  Form pdpdp = (P * d(P) * d(P)).trace();
  Form Tb = twisting_curvature(S, p);
  CharacteristicForm ch = relative_chern(S, Tb, Normalization::verbatim, p);
  CHECK(ch.form.degree_part(2) == pdpdp.scaled(Gq(-2)));
  CHECK(ch.form.degree_part(0) == Form::identity(2, 1).scaled(Gq(2)));
  CHECK(relative_chern(S, Tb, Normalization::chern_weil, p).form.degree_part(2) == pdpdp.scaled(Gq(0, -2)));

  // Additivity over orthogonal sums p (+) q.
  Elem q = conjugate_entries(p);
  Elem pq(4, 4);
  pq.set_block(0, 0, p);
  pq.set_block(2, 2, q);
  Form sum = relative_chern(S, twisting_curvature(S, pq), Normalization::chern_weil, pq).form;
  Form parts = relative_chern(S, twisting_curvature(S, p), Normalization::chern_weil, p).form +
               relative_chern(S, twisting_curvature(S, q), Normalization::chern_weil, q).form;
  CHECK(sum == parts);
  CHECK_THROWS_AS(relative_chern(S, Tb, Normalization::verbatim, one), std::invalid_argument);
}

TEST_CASE("Chern numbers of projections on the sphere") {
  Geometry S = sphere2();
  Elem p = bott_projection(S.chart);
  Form P = Form::function(2, p);
  Poly top = (P * d(P) * d(P)).trace().coeff(3);
  CHECK(top == S.volume.scaled(Gq(0, Rational(1, 2))));

  ChernNumber c = chern_number(S, p);
  CHECK(c.snapped.integer == 1);
  CHECK(c.snapped.residual < 1e-10);
  CHECK(c.exact_integral.value() == cd(0, 2 * kPi));
  CHECK(chern_number(S, conjugate_entries(p)).snapped.integer == -1);
  CHECK(chern_number(S, Elem::identity(2)).snapped.integer == 0);
  CHECK_THROWS_AS(chern_number(formal4(std::vector<Rational>(256)), Elem::identity(1)), std::invalid_argument);
}

TEST_CASE("local index formula") {
  Geometry S = sphere2(), T = torus2();
  CHECK(local_index(S, Elem(1, 1)).snapped.integer == 0);
  CHECK(local_index(S, Elem::identity(1)).exact_integral.is_zero());
  CHECK(local_index(T, Elem::identity(3)).exact_integral.is_zero());

  Elem p = bott_projection(S.chart);
  LocalIndex li = local_index(S, p, 2);
  CHECK(li.snapped.integer == 2);
  CHECK(std::abs(li.exact_value - cd(2)) < 1e-12);

  RefinementTrend trend = index_refinement(S, p, 2);
  REQUIRE(trend.levels.size() == 3);
  CHECK(trend.decreasing());
  CHECK(trend.levels.back().snapped.residual < 1e-4);
  for (const auto& l : trend.levels) CHECK(l.snapped.integer == 2);
  CHECK(trend.to_text().find("level=2") != std::string::npos);

  // On the flat torus the index is twice the Chern number, which is computed separately.
  Rng rng(2025);
  for (int trial = 0; trial < 3; ++trial) {
    Elem q = random_trig_projection(T.chart, 2, rng);
    long c = chern_number(T, q, 8).snapped.integer;
    LocalIndex lq = local_index(T, q, 8);
    CHECK(lq.snapped.residual < 1e-6);
    CHECK(lq.snapped.integer == 2 * c);
    CHECK(std::abs(lq.exact_value - cd(2.0 * c)) < 1e-9);
  }
}

TEST_CASE("character cocycle and the assembled pairing") {
  Geometry T = torus2(), S = sphere2();
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Elem> a;
    for (int k = 0; k < 3; ++k) {
      Elem e(1, 1);
      e(0, 0) = random_poly(T.chart, 2, rng);
      a.push_back(e);
    }
    TensorSum chain{{Gq(1), a}};
    TensorSum rotated{{Gq(1), {a[2], a[0], a[1]}}};
    CocycleValue v = character_cocycle_eval(T, chain, 4);
    CocycleValue w = character_cocycle_eval(T, rotated, 4);
    CHECK(std::abs(v.exact - w.exact) < 1e-8);
    CHECK(std::abs(v.quadrature - v.exact) < 1e-8);

    // Flat torus oracle: (i / 2 pi) int a_0 da_1 da_2.
    Form f0 = Form::function(2, a[0]), f1 = Form::function(2, a[1]), f2 = Form::function(2, a[2]);
    cd oracle = integrate_exact((f0 * d(f1) * d(f2)).coeff(3), T.chart).value() * cd(0, 1) / (2 * kPi);
    CHECK(std::abs(v.exact - oracle) < 1e-9);

    TensorSum constants{{Gq(1), {Elem::identity(1), Elem::identity(1), a[2]}}};
    CHECK(std::abs(character_cocycle_eval(T, constants, 4).exact) < 1e-12);
  }
  CHECK_THROWS_AS(character_cocycle_eval(T, {{Gq(1), {Elem::identity(1), Elem::identity(1)}}}),
                  std::invalid_argument);

  Elem p = bott_projection(S.chart);
  PairingAssembly one = assembled_pairing(S, p, 1, 8);
  PairingAssembly two = assembled_pairing(S, p, 2, 8);
  LocalIndex li = local_index(S, p, 8);
  CHECK(std::abs(one.total_exact - li.exact_value) < 1e-9);
  CHECK(std::abs(one.total_quadrature - li.exact_value) < 1e-6);
  CHECK(std::abs(two.total_exact - one.total_exact) < 1e-12);
  CHECK(std::abs(one.by_degree[0].exact) < 1e-12);
}
