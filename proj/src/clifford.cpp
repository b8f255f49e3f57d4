#include "ptk/clifford.hpp"

namespace ptk {

CliffordElement chirality(int n) {
  if (n < 1) throw std::invalid_argument("chirality needs n >= 1");
  Blade top = (Blade(1) << n) - 1;
  return CliffordElement::blade(n, top, ipow((n + 1) / 2));
}

Gq clifford_trace(const CliffordElement& a) {
  return a.coeff(0) * Gq(static_cast<long>(1) << (a.dim() / 2));
}

namespace {

MatQ pauli(char which) {
  MatQ m(2, 2);
  switch (which) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = -Gq::I(); m(1, 0) = Gq::I(); break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

MatQ tensor_chain(const std::vector<char>& factors) {
  MatQ m = MatQ::identity(1);
  for (char f : factors) m = kron(m, pauli(f));
  return m;
}

}  // namespace

SpinorRep::SpinorRep(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("spinor_rep needs n >= 1");
  int k = n / 2;
  for (int j = 0; j < k; ++j)
    for (char p : {'X', 'Y'}) {
      std::vector<char> f(k, 'I');
      for (int t = 0; t < j; ++t) f[t] = 'Z';
      f[j] = p;
      gens_.push_back(scaled(tensor_chain(f), Gq::I()));
    }
  if (n % 2 == 1) gens_.push_back(scaled(tensor_chain(std::vector<char>(k, 'Z')), Gq::I()));
}

MatQ SpinorRep::operator()(const CliffordElement& a) const {
  if (a.dim() != n_) throw std::invalid_argument("spinor_rep dimension mismatch");
  int s = spinor_dim();
  MatQ out(s, s);
  for (const auto& [I, x] : a.terms()) {
    MatQ m = MatQ::identity(s);
    for (Blade b = I; b; b &= b - 1) m = m * gens_[std::countr_zero(b)];
    out += scaled(m, x);
  }
  return out;
}

MatQ exterior_mult(int n, int i) {
  int N = 1 << n;
  Blade e = Blade(1) << (i - 1);
  MatQ m(N, N);
  for (Blade I = 0; I < Blade(N); ++I) {
    if (I & e) continue;
    int before = std::popcount(I & (e - 1));
    m(static_cast<int>(I | e), static_cast<int>(I)) = (before & 1) ? -1 : 1;
  }
  return m;
}

MatQ contraction(int n, int i) {
  int N = 1 << n;
  Blade e = Blade(1) << (i - 1);
  MatQ m(N, N);
  for (Blade I = 0; I < Blade(N); ++I) {
    if (!(I & e)) continue;
    int before = std::popcount(I & (e - 1));
    m(static_cast<int>(I ^ e), static_cast<int>(I)) = (before & 1) ? -1 : 1;
  }
  return m;
}

CliffordElement left_action(const CliffordElement& a, const CliffordElement& form) {
  if (a.dim() != form.dim()) throw std::invalid_argument("left_action dimension mismatch");
  return a * form;
}

CliffordElement right_action(const CliffordElement& a, const CliffordElement& form) {
  if (a.dim() != form.dim()) throw std::invalid_argument("right_action dimension mismatch");
  return form * a;
}

namespace {

template <bool Left>
MatQ action_matrix(const CliffordElement& a) {
  int n = a.dim();
  int N = 1 << n;
  MatQ m(N, N);
  for (Blade J = 0; J < Blade(N); ++J) {
    CliffordElement basis = CliffordElement::blade(n, J, Gq(1));
    CliffordElement img = Left ? a * basis : basis * a;
    for (const auto& [I, x] : img.terms()) m(static_cast<int>(I), static_cast<int>(J)) = x;
  }
  return m;
}

}  // namespace

MatQ left_matrix(const CliffordElement& a) { return action_matrix<true>(a); }
MatQ right_matrix(const CliffordElement& a) { return action_matrix<false>(a); }

}  // namespace ptk
