#pragma once

#include <functional>
#include <vector>

#include "ptk/cyclic.hpp"
#include "ptk/forms.hpp"

namespace ptk {

// X = ad(beta) + nabla_v with v a constant vector field on the chart.
struct Derivation {
  Elem beta;
  std::vector<Gq> v;
};

// Derivations of M_m(functions) on a chart, lifted through a connection.
class DerivationAlgebra {
 public:
  explicit DerivationAlgebra(ConnectionData conn);

  int dim() const { return d_; }
  int size() const { return m_; }
  const ConnectionData& connection() const { return conn_; }

  Derivation inner(const Elem& beta) const { return {beta, std::vector<Gq>(d_, Gq(0))}; }
  // X(b) = [beta, b] + sum_i v_i (d_i b + [theta_i, b]).
  Elem apply(const Derivation& X, const Elem& b) const;
  // Anchor: X(f) = sum_i v_i d_i f on central functions.
  Poly apply_scalar(const Derivation& X, const Poly& f) const;
  // nabla_v b.
  Elem covariant(const std::vector<Gq>& v, const Elem& b) const;
  // [X, Y] = ad([beta, beta'] + nabla_v beta' - nabla_w beta + omega(v, w)).
  Derivation bracket(const Derivation& X, const Derivation& Y) const;

 private:
  ConnectionData conn_;
  int d_;
  int m_;
  std::vector<Elem> theta_;               // theta_i
  std::vector<std::vector<Elem>> omega_;  // omega_ij, antisymmetric
};

// Alternating form on derivations with values in central functions.
struct CEForm {
  int degree = 0;
  std::function<Poly(const std::vector<Derivation>&)> eval;
};

// (dw)(X_0..X_p) = sum_i (-1)^i X_i(w(..^X_i..)) + sum_{i<j} (-1)^{i+j} w([X_i, X_j], ..^X_i..^X_j..).
CEForm ce_differential(const DerivationAlgebra& g, const CEForm& w);

// varrho(b_0..b_k)(X_1..X_k) = sum_sigma sgn(sigma) tr(b_0 X_sigma(1)(b_1) ... X_sigma(k)(b_k)).
Poly varrho(const DerivationAlgebra& g, const Tensor& t, const std::vector<Derivation>& X);
Poly varrho(const DerivationAlgebra& g, const TensorSum& t, const std::vector<Derivation>& X);
CEForm varrho_form(const DerivationAlgebra& g, const TensorSum& t, int k);
// varrho_k / k!, which intertwines B with the Chevalley-Eilenberg differential.
CEForm varrho_normalized_form(const DerivationAlgebra& g, const TensorSum& t, int k);

}  // namespace ptk
