#include "doctest.h"

#include "ptk/clifford.hpp"
#include "ptk/rng.hpp"

using namespace ptk;

namespace {

CliffordElement random_element(int n, Rng& rng, bool even_only = false) {
  CliffordElement a(n);
  for (Blade I = 0; I < (Blade(1) << n); ++I) {
    if (even_only && (std::popcount(I) & 1)) continue;
    if (rng.uniform(0, 2) == 0) continue;
    a.set(I, rng.small_gq());
  }
  return a;
}

MatQ parity(int n) {
  MatQ m(1 << n, 1 << n);
  for (int I = 0; I < (1 << n); ++I) m(I, I) = (std::popcount(unsigned(I)) & 1) ? -1 : 1;
  return m;
}

}  // namespace

TEST_CASE("generator relations") {
  for (int n = 1; n <= 6; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        auto ei = CliffordElement::gen(n, i), ej = CliffordElement::gen(n, j);
        auto anti = ei * ej + ej * ei;
        CHECK(anti == CliffordElement::scalar(n, Gq(i == j ? -2 : 0)));
      }
  auto e1 = CliffordElement::gen(3, 1);
  CHECK(e1 * e1 == CliffordElement::scalar(3, Gq(-1)));
  Rng rng(11);
  auto x = random_element(3, rng);
  CHECK(CliffordElement::scalar(3, Gq(1)) * x == x);
}

TEST_CASE("associativity on random triples") {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    int n = static_cast<int>(rng.uniform(1, 5));
    auto a = random_element(n, rng), b = random_element(n, rng), c = random_element(n, rng);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("chirality") {
  auto w2 = chirality(2);
  CHECK(w2.coeff(0b11) == Gq::I());
  auto w1 = chirality(1);
  CHECK(w1.coeff(0b1) == Gq::I());
  auto w4 = chirality(4);
  CHECK(w4.coeff(0b1111) == Gq(-1));
  for (int n = 1; n <= 8; ++n) {
    auto w = chirality(n);
    CHECK(w * w == CliffordElement::scalar(n, Gq(1)));
    for (int i = 1; i <= n; ++i) {
      auto e = CliffordElement::gen(n, i);
      if (n % 2 == 0)
        CHECK(w * e + e * w == CliffordElement(n));
      else
        CHECK(w * e == e * w);
      for (int j = 1; j <= n; ++j) {
        auto ee = e * CliffordElement::gen(n, j);
        CHECK(w * ee == ee * w);
      }
    }
  }
}

TEST_CASE("spinor representation") {
  Rng rng(13);
  for (int n = 1; n <= 6; ++n) {
    SpinorRep c(n);
    int s = c.spinor_dim();
    for (int i = 1; i <= n; ++i) {
      CHECK(c.gamma(i).adjoint() == -c.gamma(i));
      for (int j = 1; j <= n; ++j) {
        MatQ anti = c.gamma(i) * c.gamma(j) + c.gamma(j) * c.gamma(i);
        CHECK(anti == scaled(MatQ::identity(s), Gq(i == j ? -2 : 0)));
      }
    }
    bool even_only = (n % 2 == 1);
    for (int t = 0; t < 200 / 6; ++t) {
      auto a = random_element(n, rng, even_only), b = random_element(n, rng, even_only);
      CHECK(c(a * b) == c(a) * c(b));
      CHECK(clifford_trace(a) == c(a).trace());
      CHECK(clifford_trace(a * b) == clifford_trace(b * a));
    }
  }
  SpinorRep c2(2);
  MatQ w = c2(chirality(2));
  MatQ expect(2, 2);
  expect(0, 0) = 1;
  expect(1, 1) = -1;
  CHECK(w == expect);
  CHECK(clifford_trace(CliffordElement::scalar(2, Gq(1))) == Gq(2));
  CHECK(clifford_trace(CliffordElement::blade(2, 0b11, Gq(1))) == Gq(0));
}

TEST_CASE("odd dimension: B_3 acts irreducibly on S_3") {
  SpinorRep c(3);
  auto w = chirality(3);
  auto g1 = c(w * CliffordElement::blade(3, 0b011, Gq(1)));
  auto g2 = c(w * CliffordElement::blade(3, 0b110, Gq(1)));
  // span of words in g1, g2 must be all of M_2
  std::vector<MatQ> words = {MatQ::identity(2), g1, g2, g1 * g2};
  MatQ flat(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int e = 0; e < 4; ++e) flat(e, k) = words[k](e / 2, e % 2);
  CHECK(rank(flat) == 4);
}

TEST_CASE("left and right actions on the exterior algebra") {
  auto e1 = CliffordElement::gen(2, 1);
  auto one = CliffordElement::scalar(2, Gq(1));
  CHECK(left_action(e1, one) == e1);
  CHECK(left_action(e1, e1) == CliffordElement::scalar(2, Gq(-1)));
  for (int n = 1; n <= 6; ++n) {
    int N = 1 << n;
    for (int i = 1; i <= n; ++i) {
      auto ei = CliffordElement::gen(n, i);
      MatQ L = left_matrix(ei), R = right_matrix(ei);
      CHECK(L == exterior_mult(n, i) - contraction(n, i));
      CHECK(R == (exterior_mult(n, i) + contraction(n, i)) * parity(n));
      for (int j = 1; j <= n; ++j) {
        auto ej = CliffordElement::gen(n, j);
        MatQ Lj = left_matrix(ej), Rj = right_matrix(ej);
        MatQ rel = scaled(MatQ::identity(N), Gq(i == j ? -2 : 0));
        CHECK(L * Lj + Lj * L == rel);
        CHECK(R * Rj + Rj * R == rel);
        CHECK(L * Rj == Rj * L);
      }
    }
  }
}
