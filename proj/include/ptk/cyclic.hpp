#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ptk/matrix.hpp"
#include "ptk/poly.hpp"

namespace ptk {

// Degree-0 element of the local algebra M_m(functions).
using Elem = Matrix<Poly>;

// Unexpanded elementary tensor coef * (a_0, ..., a_k).
struct Tensor {
  Gq coef;
  std::vector<Elem> slots;
};
using TensorSum = std::vector<Tensor>;

// Hochschild: plain tensors. Reduced: slots >= 1 taken modulo scalars.
// Cyclic: tensors modulo t = (-1)^k (a_k, a_0, ..., a_{k-1}).
enum class ChainMode { hochschild, reduced, cyclic };

// Matrix unit E_ij times a monomial.
struct BasisElt {
  int i = 0, j = 0;
  Mono mono = 0;
  auto operator<=>(const BasisElt&) const = default;
};
using BasisTensor = std::vector<BasisElt>;

// Canonical chain: coefficients on tensors of basis elements.
class Chain {
 public:
  Chain() = default;
  Chain(ChainMode mode, int m, int k, ChartPtr chart = nullptr) : mode_(mode), m_(m), k_(k), chart_(std::move(chart)) {}

  // Multilinear expansion followed by canonicalization in the given mode.
  static Chain from_tensors(const TensorSum& t, ChainMode mode);

  ChainMode mode() const { return mode_; }
  int size() const { return m_; }
  int degree() const { return k_; }
  const ChartPtr& chart() const { return chart_; }
  const std::map<BasisTensor, Gq>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  // Adds coef * tensor after canonicalization.
  void add(const BasisTensor& t, const Gq& coef);
  Chain& operator+=(const Chain& o);
  Chain& operator-=(const Chain& o);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  Chain scaled(const Gq& s) const;
  Chain in_mode(ChainMode mode) const;

  Elem element(const BasisElt& e) const;
  TensorSum to_tensors() const;

  friend bool operator==(const Chain& a, const Chain& b) {
    return a.k_ == b.k_ && a.m_ == b.m_ && a.mode_ == b.mode_ && a.t_ == b.t_;
  }

 private:
  void add_raw(BasisTensor t, Gq coef, std::size_t from_slot);
  void check(const Chain& o) const;

  ChainMode mode_ = ChainMode::hochschild;
  int m_ = 1;
  int k_ = 0;
  ChartPtr chart_;
  std::map<BasisTensor, Gq> t_;
};

// Operators on unexpanded tensors (formulas only, no quotient).
TensorSum hochschild_b(const TensorSum& t);
// Normalized B: B(a_0..a_k) = sum_i (-1)^{ki} (1, a_i, ..., a_k, a_0, ..., a_{i-1}).
TensorSum connes_B(const TensorSum& t);

// Canonical versions. B needs a reduced chain.
Chain hochschild_b(const Chain& c);
Chain connes_B(const Chain& c);

// Partial trace over the auxiliary block index:
// sum over i_0..i_k of (x_0[i_0 i_1], x_1[i_1 i_2], ..., x_k[i_k i_0]).
TensorSum partial_trace(const Gq& coef, const std::vector<Elem>& slots, int blocks);

// (-1)^n (2n)!/n!, the coefficient of the degree-2n Chern character.
Gq chern_coefficient(int n);

// ch^lambda_{2n}(p) = c_n tr(p^{(x) 2n+1}) for a projection p in M_blocks(M_m(functions)).
TensorSum chern_cyclic_terms(const Elem& p, int blocks, int n);
Chain chern_cyclic(const Elem& p, int blocks, int n);
// ch^{(b,B)}_{2n}(p) = c_n tr((p - 1/2) (x) p^{(x) 2n}), a reduced chain.
TensorSum chern_bB_terms(const Elem& p, int blocks, int n);
Chain chern_bB(const Elem& p, int blocks, int n);

// Algebra morphism alpha: M_m(functions) -> p M_N(M_m'(functions)) p.
struct AlgebraMorphism {
  int blocks = 1;                           // N
  Elem unit_image;                          // p = alpha(1)
  std::function<Elem(const Elem&)> apply;  // must be multiplicative and linear
};

// Conjugated amplification a -> U (I_r (x) a (+) 0_z) U^*, with U a constant
// unitary acting on the block index.
AlgebraMorphism amplification(const MatQ& U, int r, int zeros, int m);

// tr(alpha(b_0) (x) ... (x) alpha(b_k)). Throws std::domain_error if alpha(1)
// differs from the declared p, or if a reduced chain is pushed along a
// non-unital alpha.
Chain pushforward_chain(const AlgebraMorphism& alpha, const Chain& c);
TensorSum pushforward_tensors(const AlgebraMorphism& alpha, const TensorSum& t);

bool is_projection(const Elem& p);

// Term list with rational coefficients, one line per basis tensor.
std::string to_text(const Chain& c);

}  // namespace ptk
