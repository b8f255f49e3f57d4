#include "ptk/random.hpp"

#include <algorithm>

namespace ptk {

Poly random_poly(const ChartPtr& chart, int degree, Rng& rng, int max_terms) {
  std::vector<Poly::Term> terms;
  int nterms = static_cast<int>(rng.uniform(1, max_terms));
  for (int t = 0; t < nterms; ++t) {
    Mono m = 0;
    int deg = static_cast<int>(rng.uniform(0, degree));
    for (int k = 0; k < deg && chart->nvars > 0; ++k) m += mono_unit(static_cast<int>(rng.uniform(0, chart->nvars - 1)));
    terms.emplace_back(m, rng.small_gq());
  }
  return Poly(chart, std::move(terms));
}

Matrix<Poly> random_poly_matrix(const ChartPtr& chart, int m, int degree, Rng& rng, int max_terms) {
  Matrix<Poly> a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (rng.uniform(0, 3) != 0) a(i, j) = random_poly(chart, degree, rng, max_terms);
  return a;
}

Form random_function(const ChartPtr& chart, int m, int degree, Rng& rng) {
  return Form::function(chart->dim, random_poly_matrix(chart, m, degree, rng));
}

Form random_form(const ChartPtr& chart, int m, int form_degree, int degree, Rng& rng) {
  Form f(chart->dim, m);
  for (FormMask I = 0; I < (FormMask(1) << chart->dim); ++I)
    if (std::popcount(I) == form_degree && rng.uniform(0, 2) != 0)
      f.add(I, random_poly_matrix(chart, m, degree, rng));
  if (f.is_zero() && form_degree <= chart->dim) {
    FormMask I = (FormMask(1) << form_degree) - 1;
    f.add(I, Matrix<Poly>::scalar(m, random_poly(chart, degree, rng) + Poly(1)));
  }
  return f;
}

Form random_connection(const ChartPtr& chart, int m, int degree, Rng& rng) {
  Form theta(chart->dim, m);
  for (int i = 0; i < chart->dim; ++i) theta.add(FormMask(1) << i, random_poly_matrix(chart, m, degree, rng, 2));
  return theta;
}

MatQ random_rational_unitary(int n, Rng& rng) {
  MatQ h(n, n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = Gq(Rational(rng.uniform(-2, 2), rng.uniform(1, 2)));
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = rng.small_gq(2, 2);
      h(j, i) = h(i, j).conj();
    }
  }
  MatQ ih = scaled(h, Gq::I());
  MatQ one = MatQ::identity(n);
  return (one - ih) * inverse(one + ih);
}

std::pair<Poly, Poly> trig_of_combination(const ChartPtr& chart, const std::vector<int>& k) {
  Poly c(1), s(0);
  for (int i = 0; i < static_cast<int>(k.size()); ++i) {
    Poly ci = Poly::var(chart, 2 * i), si = Poly::var(chart, 2 * i + 1);
    int steps = std::abs(k[i]);
    if (k[i] < 0) si = -si;
    for (int r = 0; r < steps; ++r) {
      Poly nc = c * ci - s * si;
      Poly ns = s * ci + c * si;
      c = nc;
      s = ns;
    }
  }
  return {c, s};
}

Matrix<Poly> to_poly_matrix(const MatQ& m) {
  Matrix<Poly> p(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) p(i, j) = Poly(m(i, j));
  return p;
}

Matrix<Poly> random_trig_projection(const ChartPtr& chart, int s, Rng& rng) {
  if (chart->kind != Chart::Kind::torus) throw std::invalid_argument("trigonometric projections need a torus chart");
  if (s < 2) throw std::invalid_argument("projection size must be at least 2");
  std::vector<int> ka(chart->dim), kb(chart->dim);
  for (int i = 0; i < chart->dim; ++i) {
    ka[i] = static_cast<int>(rng.uniform(-1, 1));
    kb[i] = static_cast<int>(rng.uniform(-1, 1));
  }
  if (std::all_of(ka.begin(), ka.end(), [](int x) { return x == 0; })) ka[0] = 1;
  auto [ca, sa] = trig_of_combination(chart, ka);
  auto [cb, sb] = trig_of_combination(chart, kb);
  Poly nx = sa * cb, ny = sa * sb, nz = ca;
  Gq half = Gq::frac(1, 2);
  Matrix<Poly> p(s, s);
  p(0, 0) = (Poly(1) + nz).scaled(half);
  p(1, 1) = (Poly(1) - nz).scaled(half);
  p(0, 1) = (nx - ny.scaled(Gq::I())).scaled(half);
  p(1, 0) = (nx + ny.scaled(Gq::I())).scaled(half);
  for (int i = 2; i < s; ++i)
    if (rng.coin()) p(i, i) = Poly(1);
  MatQ u = random_rational_unitary(s, rng);
  return to_poly_matrix(u) * p * to_poly_matrix(u.adjoint());
}

}  // namespace ptk

namespace ptk {

Matrix<Poly> random_sparse_matrix(const ChartPtr& chart, int m, int degree, int nonzeros, Rng& rng, int max_terms) {
  Matrix<Poly> a(m, m);
  for (int t = 0; t < nonzeros; ++t) {
    int i = static_cast<int>(rng.uniform(0, m - 1)), j = static_cast<int>(rng.uniform(0, m - 1));
    a(i, j) += random_poly(chart, degree, rng, max_terms);
  }
  return a;
}

TensorSum random_tensors(const ChartPtr& chart, int m, int k, int terms, Rng& rng, int degree) {
  TensorSum out;
  for (int t = 0; t < terms; ++t) {
    Tensor x{rng.small_gq(), {}};
    for (int s = 0; s <= k; ++s) x.slots.push_back(random_sparse_matrix(chart, m, degree, 1 + (m > 1), rng));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace ptk
