#include "doctest.h"

#include <cmath>

#include "ptk/forms.hpp"
#include "ptk/random.hpp"

using namespace ptk;

namespace {

Matrix<Poly> pm(std::initializer_list<std::initializer_list<long>> rows) {
  int n = static_cast<int>(rows.size());
  Matrix<Poly> m(n, n);
  int i = 0;
  for (auto r : rows) {
    int j = 0;
    for (long v : r) m(i, j++) = Poly(v);
    ++i;
  }
  return m;
}

Form x(const ChartPtr& c, int i, int m = 1) { return coordinate_function(c, Poly::var(c, i - 1), m); }
Form dx(const ChartPtr& c, FormMask I, int m = 1) { return Form::basis(c->dim, I, Matrix<Poly>::identity(m)); }

}  // namespace

TEST_CASE("polynomial normal form on angle charts") {
  auto T = Chart::torus(2);
  Poly c1 = Poly::var(T, 0), s1 = Poly::var(T, 1);
  CHECK(c1 * c1 + s1 * s1 == Poly(1));
  CHECK(c1.derivative(0) == -s1);
  CHECK(s1.derivative(0) == c1);
  CHECK(s1.derivative(1).is_zero());
  // derivative agrees with a centered difference at a sample point
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    Poly f = random_poly(T, 4, rng, 5);
    std::vector<double> p = {rng.uniform_real(0, 6), rng.uniform_real(0, 6)};
    for (int i = 0; i < 2; ++i) {
      double h = 1e-5;
      auto pp = p, pmn = p;
      pp[i] += h;
      pmn[i] -= h;
      cd fd = (f.eval(T->variable_values(pp)) - f.eval(T->variable_values(pmn))) / (2 * h);
      cd an = f.derivative(i).eval(T->variable_values(p));
      CHECK(std::abs(fd - an) < 1e-6);
    }
  }
}

TEST_CASE("exact integrals match quadrature") {
  auto T = Chart::torus(2);
  auto S = Chart::sphere();
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    Poly f = random_poly(T, 5, rng, 6);
    int n = 40;
    cd q(0, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) q += f.eval(T->variable_values({2 * M_PI * a / n, 2 * M_PI * b / n}));
    q *= std::pow(2 * M_PI / n, 2);
    CHECK(std::abs(integrate_exact(f, T).value() - q) < 1e-10);

    Poly g = random_poly(S, 5, rng, 6);
    int nt = 4000;
    cd r(0, 0);
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < 16; ++b)
        r += g.eval(S->variable_values({M_PI * (a + 0.5) / nt, 2 * M_PI * b / 16}));
    r *= (M_PI / nt) * (2 * M_PI / 16);
    CHECK(std::abs(integrate_exact(g, S).value() - r) < 1e-5);
  }
  Poly area = Poly::var(S, 1);
  CHECK(integrate_exact(area, S).c.at(1) == Gq(4));
}

TEST_CASE("wedge product") {
  auto R3 = Chart::polynomial(3);
  CHECK((dx(R3, 1) * dx(R3, 1)).is_zero());
  auto A = pm({{1, 2}, {0, 1}}), B = pm({{0, 1}, {3, 0}});
  Form a = Form::basis(3, 0b001, A), b = Form::basis(3, 0b010, B);
  CHECK(a * b + b * a == Form::basis(3, 0b011, A * B - B * A));
  CHECK(Form::function(3, A) * Form::function(3, B) == Form::function(3, A * B));

  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    int p = static_cast<int>(rng.uniform(0, 2)), q = static_cast<int>(rng.uniform(0, 2));
    Form u = random_form(R3, 2, p, 2, rng), v = random_form(R3, 2, q, 2, rng), w = random_form(R3, 2, 1, 1, rng);
    CHECK((u * v) * w == u * (v * w));
    Form lhs = (u * v).trace(), rhs = (v * u).trace();
    CHECK(lhs == ((p * q) % 2 ? -rhs : rhs));
  }
}

TEST_CASE("exterior derivative") {
  auto R3 = Chart::polynomial(3);
  Form f = x(R3, 1) * dx(R3, 0b010);
  CHECK(d(f) == dx(R3, 0b011));
  Form g = x(R3, 1) * x(R3, 2);
  CHECK(d(g) == x(R3, 2) * dx(R3, 0b001) + x(R3, 1) * dx(R3, 0b010));
  Rng rng(8);
  auto R4 = Chart::polynomial(4);
  for (int t = 0; t < 50; ++t) {
    int p = static_cast<int>(rng.uniform(0, 2)), q = static_cast<int>(rng.uniform(0, 2));
    Form a = random_form(R4, 2, p, 3, rng), b = random_form(R4, 2, q, 3, rng);
    CHECK(d(d(a)).is_zero());
    Form leib = d(a) * b + (p % 2 ? -(a * d(b)) : a * d(b));
    CHECK(d(a * b) == leib);
  }
}

TEST_CASE("connections, curvature and the traceless lift") {
  auto R2 = Chart::polynomial(2);
  ConnectionData flat = curvature_and_lift(Form(2, 2));
  CHECK(flat.omega.is_zero());
  CHECK(flat.sigma.is_zero());

  ConnectionData rank1 = curvature_and_lift(x(R2, 1) * dx(R2, 0b10));
  CHECK(rank1.omega == dx(R2, 0b11));
  CHECK(rank1.sigma.is_zero());

  auto A = pm({{1, 2}, {0, 1}}), B = pm({{0, 1}, {3, 0}});
  ConnectionData cst = curvature_and_lift(Form::basis(2, 0b01, A) + Form::basis(2, 0b10, B));
  CHECK(cst.omega == Form::basis(2, 0b11, A * B - B * A));

  Rng rng(9);
  Form a = random_function(R2, 2, 2, rng);
  CHECK(nabla(flat, a) == d(a));
  Form db = nabla(cst, a);
  Form theta = cst.theta;
  CHECK(db == d(a) + theta * a - a * theta);
}

TEST_CASE("Bianchi identity, trace compatibility and nabla squared") {
  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    int dim = static_cast<int>(rng.uniform(2, 4));
    int m = static_cast<int>(rng.uniform(1, 3));
    auto R = Chart::polynomial(dim);
    ConnectionData c = curvature_and_lift(random_connection(R, m, 2, rng));
    CHECK(nabla(c, c.omega).is_zero());
    CHECK(nabla(c, c.sigma).is_zero());
    CHECK(c.sigma.trace().is_zero());
    int k = static_cast<int>(rng.uniform(0, 2));
    Form a = random_form(R, m, k, 2, rng);
    CHECK(d(a.trace()) == nabla(c, a).trace());
    if (t % 4 == 0) CHECK(nabla(c, nabla(c, a)) == c.sigma * a - a * c.sigma);
  }
}

TEST_CASE("twisted differential and the exp(beta) intertwiner") {
  auto R3 = Chart::polynomial(3);
  Rng rng(11);
  Form w0 = random_form(R3, 2, 1, 2, rng);
  CHECK(d_twisted(Form(3, 1), w0) == d(w0));
  Form c = d(random_form(R3, 1, 2, 3, rng));
  CHECK(d_twisted(c, Form::identity(3, 1)) == c);
  CHECK_THROWS(d_twisted(x(R3, 1) * dx(R3, 0b011) , w0.trace()));
  CHECK_THROWS(d_twisted(x(R3, 1) * dx(R3, 0b011) + x(R3, 2) * dx(R3, 0b101), w0.trace()));
  CHECK_THROWS(d_twisted(dx(R3, 0b011), w0.trace()));

  Form beta = random_form(R3, 1, 2, 2, rng);
  CHECK(form_exp(beta) == Form::identity(3, 1) + beta);
  CHECK(exp_beta_intertwiner(Form(3, 1), w0) == w0);

  auto R4 = Chart::polynomial(4);
  for (int t = 0; t < 100; ++t) {
    auto R = (t % 2) ? R3 : R4;
    int dim = R->dim;
    Form c2 = d(random_form(R, 1, 2, 2, rng));
    if (rng.coin()) c2 += Form::basis(dim, 0b0111, Matrix<Poly>::identity(1)).scaled(rng.small_gq());
    Form b = random_form(R, 1, 2, 2, rng);
    Form c1 = c2 + d(b);
    int k = static_cast<int>(rng.uniform(0, 2));
    Form w = random_form(R, static_cast<int>(rng.uniform(1, 2)), k, 2, rng);
    CHECK(d_twisted(c2, d_twisted(c2, w)).is_zero());
    CHECK(d_twisted(c2, exp_beta_intertwiner(b, w)) == exp_beta_intertwiner(b, d_twisted(c1, w)));
  }
}

TEST_CASE("Dixmier-Douady representative on a chart") {
  Rng rng(12);
  auto R3 = Chart::polynomial(3);
  ConnectionData c = curvature_and_lift(random_connection(R3, 2, 2, rng));
  CHECK(dd_representative(c).is_zero());
  Form beta = random_form(R3, 1, 2, 3, rng);
  Form rep = dd_representative(c, beta);
  CHECK(rep == d(beta));
  CHECK(d(rep).is_zero());
}

TEST_CASE("structured text serialization") {
  auto R2 = Chart::polynomial(2);
  Form f = x(R2, 1) * dx(R2, 0b10) + Form::basis(2, 0b11, pm({{3}})).scaled(Gq::frac(1, 2));
  CHECK(to_text(f) ==
        "form dim=2 size=1\n"
        "  degree 1 [2]\n"
        "    x1\n"
        "  degree 2 [1 2]\n"
        "    3/2\n");
}
