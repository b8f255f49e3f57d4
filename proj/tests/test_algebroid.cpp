#include "doctest.h"

#include "ptk/algebroid.hpp"
#include "ptk/random.hpp"

using namespace ptk;

namespace {

Derivation random_derivation(const DerivationAlgebra& g, const ChartPtr& chart, Rng& rng) {
  Derivation X{random_poly_matrix(chart, g.size(), 1, rng, 2), {}};
  for (int i = 0; i < g.dim(); ++i) X.v.push_back(rng.coin() ? rng.small_gq(2, 1, false) : Gq(0));
  return X;
}

std::vector<Derivation> random_derivations(const DerivationAlgebra& g, const ChartPtr& chart, int n, Rng& rng) {
  std::vector<Derivation> out;
  for (int i = 0; i < n; ++i) out.push_back(random_derivation(g, chart, rng));
  return out;
}

// Pairwise commuting inner derivations U diag(f_i) U^*.
std::vector<Derivation> commuting_family(const DerivationAlgebra& g, const ChartPtr& chart, int n, Rng& rng) {
  Elem U = to_poly_matrix(random_rational_unitary(g.size(), rng));
  Elem Us = U.adjoint();
  std::vector<Derivation> out;
  for (int i = 0; i < n; ++i) {
    Elem D(g.size(), g.size());
    for (int a = 0; a < g.size(); ++a) D(a, a) = random_poly(chart, 1, rng, 2);
    out.push_back(g.inner(U * D * Us));
  }
  return out;
}

}  // namespace

TEST_CASE("derivations: Leibniz rule and brackets") {
  auto R = Chart::polynomial(2);
  Rng rng(41);
  for (int t = 0; t < 20; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    DerivationAlgebra g(curvature_and_lift(random_connection(R, m, 1, rng)));
    Derivation X = random_derivation(g, R, rng), Y = random_derivation(g, R, rng);
    Elem a = random_poly_matrix(R, m, 2, rng), b = random_poly_matrix(R, m, 2, rng);
    CHECK(g.apply(X, a * b) == g.apply(X, a) * b + a * g.apply(X, b));
    Elem lhs = g.apply(g.bracket(X, Y), a);
    CHECK(lhs == g.apply(X, g.apply(Y, a)) - g.apply(Y, g.apply(X, a)));
    Poly f = random_poly(R, 2, rng);
    CHECK(g.apply(X, Elem::scalar(m, f)) == Elem::scalar(m, g.apply_scalar(X, f)));
  }
}

TEST_CASE("Chevalley-Eilenberg differential") {
  auto R = Chart::polynomial(2);
  Rng rng(42);
  DerivationAlgebra g(curvature_and_lift(random_connection(R, 2, 1, rng)));
  Poly f = random_poly(R, 2, rng);
  CEForm w0{0, [f](const std::vector<Derivation>&) { return f; }};
  Derivation X = random_derivation(g, R, rng), Y = random_derivation(g, R, rng);
  CHECK(ce_differential(g, w0).eval({X}) == g.apply_scalar(X, f));

  auto ts = random_tensors(R, 2, 1, 2, rng);
  CEForm w1 = varrho_form(g, ts, 1);
  Poly expect = g.apply_scalar(X, w1.eval({Y})) - g.apply_scalar(Y, w1.eval({X})) - w1.eval({g.bracket(X, Y)});
  CHECK(ce_differential(g, w1).eval({X, Y}) == expect);

  for (int t = 0; t < 50; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    DerivationAlgebra h(curvature_and_lift(random_connection(R, m, 1, rng)));
    int p = static_cast<int>(rng.uniform(0, 1));
    CEForm w = varrho_form(h, random_tensors(R, m, p, 2, rng), p);
    CEForm dd = ce_differential(h, ce_differential(h, w));
    CHECK(dd.eval(random_derivations(h, R, p + 2, rng)).is_zero());
  }
}

TEST_CASE("varrho") {
  auto R = Chart::polynomial(2);
  Rng rng(43);
  DerivationAlgebra g(curvature_and_lift(random_connection(R, 2, 1, rng)));
  Elem b0 = random_poly_matrix(R, 2, 1, rng), b1 = random_poly_matrix(R, 2, 1, rng);
  CHECK(varrho(g, Tensor{Gq(1), {b0}}, {}) == b0.trace());
  Derivation X = random_derivation(g, R, rng), Y = random_derivation(g, R, rng);
  CHECK(varrho(g, Tensor{Gq(1), {b0, b1}}, {X}) == (b0 * g.apply(X, b1)).trace());
  auto ts = random_tensors(R, 2, 2, 1, rng);
  CHECK(varrho(g, ts, {X, Y}) == -varrho(g, ts, {Y, X}));

  for (int t = 0; t < 30; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    DerivationAlgebra h(curvature_and_lift(random_connection(R, m, 1, rng)));
    int k = static_cast<int>(rng.uniform(0, 2));
    auto c = random_tensors(R, m, k + 1, 2, rng);
    CHECK(varrho(h, hochschild_b(c), random_derivations(h, R, k, rng)).is_zero());
    auto c2 = random_tensors(R, m, k, 2, rng);
    auto Xs = random_derivations(h, R, k + 1, rng);
    Poly lhs = varrho_normalized_form(h, connes_B(c2), k + 1).eval(Xs);
    CHECK(lhs == ce_differential(h, varrho_normalized_form(h, c2, k)).eval(Xs));
    // the unnormalized map picks up the factor k + 1
    CHECK(varrho(h, connes_B(c2), Xs) == ce_differential(h, varrho_form(h, c2, k)).eval(Xs).scaled(Gq(k + 1)));
  }
}

TEST_CASE("vanishing on commuting inner derivations") {
  Rng rng(44);
  auto P = Chart::polynomial(0);
  DerivationAlgebra point(curvature_and_lift(Form(0, 2)));
  Elem p = to_poly_matrix(MatQ::identity(2));
  p(1, 1) = Poly(0);
  MatQ u = random_rational_unitary(4, rng);
  Elem big(4, 4);
  big.set_block(0, 0, p);
  big = to_poly_matrix(u) * big * to_poly_matrix(u.adjoint());
  REQUIRE(is_projection(big));
  auto fam = commuting_family(point, P, 2, rng);
  CHECK(varrho(point, chern_cyclic_terms(big, 2, 1), fam).is_zero());

  auto R = Chart::polynomial(2);
  bool saw_nonzero = false;
  for (int t = 0; t < 30; ++t) {
    int m = static_cast<int>(rng.uniform(2, 3));
    DerivationAlgebra g(curvature_and_lift(random_connection(R, m, 1, rng)));
    int k = static_cast<int>(rng.uniform(1, 3));
    auto fam2 = commuting_family(g, R, k, rng);
    auto cycle = hochschild_b(random_tensors(R, m, k + 1, 2, rng));
    CHECK(varrho(g, cycle, fam2).is_zero());
    auto noncycle = random_tensors(R, m, k, 2, rng);
    if (!varrho(g, noncycle, fam2).is_zero()) saw_nonzero = true;
  }
  CHECK(saw_nonzero);
}
