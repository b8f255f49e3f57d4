#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "ptk/matrix.hpp"
#include "ptk/scalar.hpp"

namespace ptk {

using Blade = std::uint32_t;  // bit i <-> generator e_{i+1}

// Sign of e_I e_J in Cl_n with e_i^2 = -1: reordering swaps plus one -1 per
// repeated generator. The product blade is I xor J.
inline int blade_sign(Blade I, Blade J) {
  int swaps = 0;
  for (Blade j = J; j; j &= j - 1) {
    int b = std::countr_zero(j);
    swaps += std::popcount(I >> (b + 1));
  }
  swaps += std::popcount(I & J);
  return (swaps & 1) ? -1 : 1;
}

template <class S>
class CliffordT {
 public:
  explicit CliffordT(int n = 0) : n_(n) {
    if (n < 0 || n > 16) throw std::invalid_argument("Clifford dimension out of range");
  }
  static CliffordT scalar(int n, const S& s) {
    CliffordT a(n);
    a.set(0, s);
    return a;
  }
  // Generator e_i, 1-based.
  static CliffordT gen(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("generator index");
    CliffordT a(n);
    a.set(Blade(1) << (i - 1), from_gq<S>(Gq(1)));
    return a;
  }
  static CliffordT blade(int n, Blade I, const S& s) {
    CliffordT a(n);
    a.set(I, s);
    return a;
  }

  int dim() const { return n_; }
  const std::map<Blade, S>& terms() const { return c_; }
  S coeff(Blade I) const {
    auto it = c_.find(I);
    return it == c_.end() ? S{} : it->second;
  }
  void set(Blade I, const S& s) {
    if (I >> n_) throw std::out_of_range("blade outside dimension");
    if (is_zero(s))
      c_.erase(I);
    else
      c_[I] = s;
  }
  void add(Blade I, const S& s) {
    S v = coeff(I);
    v += s;
    set(I, v);
  }
  bool is_zero_element() const { return c_.empty(); }

  CliffordT& operator+=(const CliffordT& o) {
    check(o);
    for (const auto& [I, s] : o.c_) add(I, s);
    return *this;
  }
  CliffordT& operator-=(const CliffordT& o) {
    check(o);
    for (const auto& [I, s] : o.c_) add(I, -s);
    return *this;
  }
  friend CliffordT operator+(CliffordT a, const CliffordT& b) { return a += b; }
  friend CliffordT operator-(CliffordT a, const CliffordT& b) { return a -= b; }
  friend CliffordT operator*(const CliffordT& a, const CliffordT& b) {
    a.check(b);
    CliffordT r(a.n_);
    for (const auto& [I, x] : a.c_)
      for (const auto& [J, y] : b.c_) {
        S v = x * y;
        if (blade_sign(I, J) < 0) v = -v;
        r.add(I ^ J, v);
      }
    return r;
  }
  CliffordT times(const S& s) const {
    CliffordT r(n_);
    for (const auto& [I, x] : c_) r.set(I, s * x);
    return r;
  }
  // Even part Cl_n^0.
  bool is_even() const {
    for (const auto& [I, x] : c_)
      if (std::popcount(I) & 1) return false;
    return true;
  }
  friend bool operator==(const CliffordT& a, const CliffordT& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

 private:
  void check(const CliffordT& o) const {
    if (n_ != o.n_) throw std::invalid_argument("Clifford dimension mismatch");
  }
  int n_;
  std::map<Blade, S> c_;
};

using CliffordElement = CliffordT<Gq>;
using CliffordElementN = CliffordT<cd>;

inline CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b) { return a * b; }

// omega_n = i^{floor((n+1)/2)} e_1 ... e_n
CliffordElement chirality(int n);

// Normalized trace 2^{floor(n/2)} * (scalar coefficient).
Gq clifford_trace(const CliffordElement& a);

// Irreducible complex representation by the Jordan-Wigner tensor construction:
// gamma_{2j+1} = Z^{(j)} X I..., gamma_{2j+2} = Z^{(j)} Y I..., c(e_i) = i gamma_i,
// and for odd n the last generator acts by i Z...Z.
class SpinorRep {
 public:
  explicit SpinorRep(int n);
  int dim() const { return n_; }
  int spinor_dim() const { return 1 << (n_ / 2); }
  const MatQ& gamma(int i) const { return gens_.at(i - 1); }  // c(e_i), 1-based
  MatQ operator()(const CliffordElement& a) const;

 private:
  int n_;
  std::vector<MatQ> gens_;
};

// Exterior algebra fiber Lambda^*(R^n) identified with Cl_n by the symbol map
// e^{i_1} ^ ... ^ e^{i_k} <-> e_{i_1} ... e_{i_k}; basis ordered by blade mask.
MatQ exterior_mult(int n, int i);   // e^i ^ .
MatQ contraction(int n, int i);     // iota(e_i)
// Left action c_L(a): omega -> a omega; right action c_R(a): omega -> omega a.
CliffordElement left_action(const CliffordElement& a, const CliffordElement& form);
CliffordElement right_action(const CliffordElement& a, const CliffordElement& form);
MatQ left_matrix(const CliffordElement& a);
MatQ right_matrix(const CliffordElement& a);

}  // namespace ptk
