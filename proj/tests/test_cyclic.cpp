#include "doctest.h"

#include "ptk/cyclic.hpp"
#include "ptk/random.hpp"

using namespace ptk;

namespace {

Elem bott(const ChartPtr& S) {
  Poly ct = Poly::var(S, 0), st = Poly::var(S, 1), cp = Poly::var(S, 2), sp = Poly::var(S, 3);
  Gq h = Gq::frac(1, 2);
  Elem p(2, 2);
  p(0, 0) = (Poly(1) + ct).scaled(h);
  p(1, 1) = (Poly(1) - ct).scaled(h);
  p(0, 1) = (st * (cp - sp.scaled(Gq::I()))).scaled(h);
  p(1, 0) = (st * (cp + sp.scaled(Gq::I()))).scaled(h);
  return p;
}

Elem constant(std::initializer_list<std::initializer_list<Gq>> rows) {
  int n = static_cast<int>(rows.size());
  Elem a(n, n);
  int i = 0;
  for (auto r : rows) {
    int j = 0;
    for (const auto& v : r) a(i, j++) = Poly(v);
    ++i;
  }
  return a;
}

}  // namespace

TEST_CASE("b on low degrees") {
  auto R = Chart::polynomial(2);
  Rng rng(21);
  Elem a0 = random_poly_matrix(R, 2, 2, rng), a1 = random_poly_matrix(R, 2, 2, rng);
  Chain c = Chain::from_tensors({{Gq(1), {a0, a1}}}, ChainMode::hochschild);
  Chain expect = Chain::from_tensors({{Gq(1), {a0 * a1 - a1 * a0}}}, ChainMode::hochschild);
  CHECK(hochschild_b(c) == expect);

  Elem p = constant({{Gq(1), Gq(0)}, {Gq(0), Gq(0)}});
  Chain ppp = Chain::from_tensors({{Gq(1), {p, p, p}}}, ChainMode::hochschild);
  CHECK(hochschild_b(ppp) == Chain::from_tensors({{Gq(1), {p, p}}}, ChainMode::hochschild));
}

TEST_CASE("reduced and cyclic normal forms") {
  auto R = Chart::polynomial(1);
  Elem x = Elem::scalar(1, Poly::var(R, 0));
  Elem one = Elem::identity(1);
  CHECK(Chain::from_tensors({{Gq(1), {x, one}}}, ChainMode::reduced).is_zero());
  CHECK(!Chain::from_tensors({{Gq(1), {one, x}}}, ChainMode::reduced).is_zero());
  // (a, b) = -(b, a) in degree 1 of the cyclic quotient
  Elem y = Elem::scalar(1, Poly::var(R, 0) * Poly::var(R, 0));
  Chain ab = Chain::from_tensors({{Gq(1), {x, y}}, {Gq(1), {y, x}}}, ChainMode::cyclic);
  CHECK(ab.is_zero());
  CHECK(Chain::from_tensors({{Gq(1), {x, x}}}, ChainMode::cyclic).is_zero());
  CHECK(!Chain::from_tensors({{Gq(1), {x, x, x}}}, ChainMode::cyclic).is_zero());
  // E11 == -E22 modulo scalars
  Elem e11 = constant({{Gq(1), Gq(0)}, {Gq(0), Gq(0)}}), e22 = constant({{Gq(0), Gq(0)}, {Gq(0), Gq(1)}});
  Elem a = random_poly_matrix(R, 2, 1, *new Rng(3));
  CHECK((Chain::from_tensors({{Gq(1), {a, e11}}, {Gq(1), {a, e22}}}, ChainMode::reduced)).is_zero());
}

TEST_CASE("B on degree 0 and the (b, B) relations") {
  auto R = Chart::polynomial(2);
  Rng rng(22);
  Elem a0 = random_poly_matrix(R, 2, 2, rng);
  Chain c0 = Chain::from_tensors({{Gq(1), {a0}}}, ChainMode::reduced);
  CHECK(connes_B(c0) == Chain::from_tensors({{Gq(1), {Elem::identity(2), a0}}}, ChainMode::reduced));
  for (int t = 0; t < 100; ++t) {
    int m = static_cast<int>(rng.uniform(1, 3));
    int k = static_cast<int>(rng.uniform(1, 4));
    auto ts = random_tensors(R, m, k, 2, rng);
    Chain h = Chain::from_tensors(ts, ChainMode::hochschild);
    Chain r = Chain::from_tensors(ts, ChainMode::reduced);
    Chain z = Chain::from_tensors(ts, ChainMode::cyclic);
    if (k >= 2) {
      CHECK(hochschild_b(hochschild_b(h)).is_zero());
      CHECK(hochschild_b(hochschild_b(r)).is_zero());
      CHECK(hochschild_b(hochschild_b(z)).is_zero());
    }
    CHECK(connes_B(connes_B(r)).is_zero());
    CHECK((hochschild_b(connes_B(r)) + connes_B(hochschild_b(r))).is_zero());
  }
}

TEST_CASE("Chern characters of projections") {
  auto S = Chart::sphere();
  Elem p = bott(S);
  REQUIRE(is_projection(p));
  CHECK(chern_coefficient(0) == Gq(1));
  CHECK(chern_coefficient(1) == Gq(-2));
  CHECK(chern_coefficient(2) == Gq(12));
  CHECK(chern_cyclic(p, 2, 0) == Chain::from_tensors({{Gq(1), {Elem::scalar(1, p.trace())}}}, ChainMode::cyclic));
  auto t1 = chern_cyclic_terms(p, 2, 1);
  CHECK(t1.size() == 8);
  for (const auto& x : t1) CHECK(x.coef == Gq(-2));
  CHECK(hochschild_b(chern_cyclic(p, 2, 1)).is_zero());
  CHECK(hochschild_b(chern_cyclic(p, 2, 2)).is_zero());

  // (b + B) ch^{(b,B)} = 0 across degrees 0, 2, 4
  Chain c0 = chern_bB(p, 2, 0), c2 = chern_bB(p, 2, 1), c4 = chern_bB(p, 2, 2);
  CHECK(c0 == Chain::from_tensors({{Gq(1), {Elem::scalar(1, p.trace() - Poly(1))}}}, ChainMode::reduced));
  CHECK((hochschild_b(c2) + connes_B(c0)).is_zero());
  CHECK((hochschild_b(c4) + connes_B(c2)).is_zero());

  Rng rng(23);
  auto T = Chart::torus(2);
  for (int t = 0; t < 10; ++t) {
    Elem q = random_trig_projection(T, 2 + static_cast<int>(rng.uniform(0, 1)), rng);
    REQUIRE(is_projection(q));
    int blocks = q.rows();
    CHECK(hochschild_b(chern_cyclic(q, blocks, 1)).is_zero());
  }
}

TEST_CASE("pushforward along algebra morphisms") {
  auto R = Chart::polynomial(2);
  Rng rng(24);
  AlgebraMorphism id = amplification(MatQ::identity(1), 1, 0, 2);
  auto ts = random_tensors(R, 2, 2, 3, rng);
  Chain c = Chain::from_tensors(ts, ChainMode::hochschild);
  CHECK(pushforward_chain(id, c) == c);

  for (int t = 0; t < 50; ++t) {
    int m = static_cast<int>(rng.uniform(1, 2));
    int r = static_cast<int>(rng.uniform(1, 2)), z = static_cast<int>(rng.uniform(0, 1));
    AlgebraMorphism alpha = amplification(random_rational_unitary(r + z, rng), r, z, m);
    int k = static_cast<int>(rng.uniform(1, 3));
    Chain h = Chain::from_tensors(random_tensors(R, m, k, 2, rng), ChainMode::hochschild);
    CHECK(hochschild_b(pushforward_chain(alpha, h)) == pushforward_chain(alpha, hochschild_b(h)));
    if (z == 0) {
      Chain red = h.in_mode(ChainMode::reduced);
      CHECK(connes_B(pushforward_chain(alpha, red)) == pushforward_chain(alpha, connes_B(red)));
    } else {
      CHECK_THROWS_AS(pushforward_chain(alpha, h.in_mode(ChainMode::reduced)), std::domain_error);
    }
  }

  // ch(alpha(q)) = push(ch(q)) at chain level
  auto T = Chart::torus(1);
  Elem q = random_trig_projection(T, 2, rng);
  AlgebraMorphism alpha = amplification(random_rational_unitary(2, rng), 1, 1, 1);
  Elem aq(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Elem e(1, 1);
      e(0, 0) = q(i, j);
      Elem img = alpha.apply(e);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) aq(2 * i + a, 2 * j + b) = img(a, b);
    }
  REQUIRE(is_projection(aq));
  for (int n = 0; n <= 1; ++n) {
    Chain lhs = chern_cyclic(aq, 4, n);
    Chain rhs = Chain::from_tensors(pushforward_tensors(alpha, chern_cyclic_terms(q, 2, n)), ChainMode::cyclic);
    CHECK(lhs == rhs);
  }

  AlgebraMorphism bad = alpha;
  bad.unit_image = Elem::identity(2);
  Chain h1 = Chain::from_tensors(random_tensors(R, 1, 1, 1, rng), ChainMode::hochschild);
  CHECK_THROWS_AS(pushforward_chain(bad, h1), std::domain_error);
}

TEST_CASE("chain serialization") {
  auto R = Chart::polynomial(2);
  Elem x = Elem::scalar(1, Poly::var(R, 0));
  Elem y = Elem::scalar(1, Poly::var(R, 1).scaled(Gq(3)));
  Chain c = Chain::from_tensors({{Gq::frac(1, 2), {x, y}}}, ChainMode::cyclic);
  CHECK(to_text(c) == "chain mode=cyclic degree=1 size=1 terms=1\n  3/2 : E1,1*x1 E1,1*x2\n");
}
