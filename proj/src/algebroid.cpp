#include "ptk/algebroid.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ptk {

DerivationAlgebra::DerivationAlgebra(ConnectionData conn)
    : conn_(std::move(conn)), d_(conn_.theta.dim()), m_(conn_.theta.size()) {
  for (int i = 0; i < d_; ++i) theta_.push_back(conn_.theta.component(FormMask(1) << i));
  omega_.assign(d_, std::vector<Elem>(d_, Elem(m_, m_)));
  for (int i = 0; i < d_; ++i)
    for (int j = i + 1; j < d_; ++j) {
      Elem w = conn_.omega.component((FormMask(1) << i) | (FormMask(1) << j));
      omega_[i][j] = w;
      omega_[j][i] = -w;
    }
}

namespace {

Elem derivative(const Elem& b, int i) {
  Elem out(b.rows(), b.cols());
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) out(r, c) = b(r, c).derivative(i);
  return out;
}

Elem times(const Elem& b, const Gq& s) { return b.times(Poly(s)); }

}  // namespace

Elem DerivationAlgebra::covariant(const std::vector<Gq>& v, const Elem& b) const {
  if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("vector field dimension mismatch");
  Elem out(m_, m_);
  for (int i = 0; i < d_; ++i) {
    if (v[i].is_zero()) continue;
    out += times(derivative(b, i) + commutator(theta_[i], b), v[i]);
  }
  return out;
}

Elem DerivationAlgebra::apply(const Derivation& X, const Elem& b) const {
  if (b.rows() != m_ || X.beta.rows() != m_) throw std::invalid_argument("derivation size mismatch");
  return commutator(X.beta, b) + covariant(X.v, b);
}

Poly DerivationAlgebra::apply_scalar(const Derivation& X, const Poly& f) const {
  Poly out;
  for (int i = 0; i < d_; ++i)
    if (!X.v[i].is_zero()) out += f.derivative(i).scaled(X.v[i]);
  return out;
}

Derivation DerivationAlgebra::bracket(const Derivation& X, const Derivation& Y) const {
  Elem beta = commutator(X.beta, Y.beta) + covariant(X.v, Y.beta) - covariant(Y.v, X.beta);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      if (i != j && !X.v[i].is_zero() && !Y.v[j].is_zero()) beta += times(omega_[i][j], X.v[i] * Y.v[j]);
  return inner(beta);
}

CEForm ce_differential(const DerivationAlgebra& g, const CEForm& w) {
  int p = w.degree;
  CEForm out;
  out.degree = p + 1;
  out.eval = [&g, w, p](const std::vector<Derivation>& X) {
    if (static_cast<int>(X.size()) != p + 1) throw std::invalid_argument("CE form arity mismatch");
    Poly acc;
    for (int i = 0; i <= p; ++i) {
      std::vector<Derivation> rest;
      for (int r = 0; r <= p; ++r)
        if (r != i) rest.push_back(X[r]);
      Poly term = g.apply_scalar(X[i], w.eval(rest));
      acc += (i % 2) ? -term : term;
    }
    for (int i = 0; i <= p; ++i)
      for (int j = i + 1; j <= p; ++j) {
        std::vector<Derivation> args{g.bracket(X[i], X[j])};
        for (int r = 0; r <= p; ++r)
          if (r != i && r != j) args.push_back(X[r]);
        Poly term = w.eval(args);
        acc += ((i + j) % 2) ? -term : term;
      }
    return acc;
  };
  return out;
}

Poly varrho(const DerivationAlgebra& g, const Tensor& t, const std::vector<Derivation>& X) {
  int k = static_cast<int>(t.slots.size()) - 1;
  if (static_cast<int>(X.size()) != k) throw std::invalid_argument("varrho arity mismatch");
  // images[a][s] = X_a(b_{s+1})
  std::vector<std::vector<Elem>> img(k, std::vector<Elem>(k));
  for (int a = 0; a < k; ++a)
    for (int s = 0; s < k; ++s) img[a][s] = g.apply(X[a], t.slots[s + 1]);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Elem acc(g.size(), g.size());
  do {
    int inv = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) inv += perm[i] > perm[j];
    Elem prod = t.slots[0];
    for (int s = 0; s < k; ++s) prod = prod * img[perm[s]][s];
    acc += (inv % 2) ? -prod : prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc.trace().scaled(t.coef);
}

Poly varrho(const DerivationAlgebra& g, const TensorSum& t, const std::vector<Derivation>& X) {
  Poly acc;
  for (const auto& x : t) acc += varrho(g, x, X);
  return acc;
}

CEForm varrho_form(const DerivationAlgebra& g, const TensorSum& t, int k) {
  for (const auto& x : t)
    if (static_cast<int>(x.slots.size()) != k + 1) throw std::invalid_argument("varrho arity mismatch");
  return {k, [&g, t](const std::vector<Derivation>& X) { return varrho(g, t, X); }};
}

CEForm varrho_normalized_form(const DerivationAlgebra& g, const TensorSum& t, int k) {
  CEForm f = varrho_form(g, t, k);
  Gq s(Rational(1) / factorial(k));
  return {k, [f, s](const std::vector<Derivation>& X) { return f.eval(X).scaled(s); }};
}

}  // namespace ptk
