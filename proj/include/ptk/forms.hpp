#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptk/matrix.hpp"
#include "ptk/poly.hpp"
#include "ptk/sample.hpp"

namespace ptk {

using FormMask = std::uint32_t;  // bit i <-> dx_{i+1}

// Sign of dx_I ^ dx_J for disjoint I, J.
inline int koszul_sign(FormMask I, FormMask J) {
  int swaps = 0;
  for (FormMask j = J; j; j &= j - 1) swaps += std::popcount(I >> (std::countr_zero(j) + 1));
  return (swaps & 1) ? -1 : 1;
}

// m x m matrix-valued differential form on a d-dimensional chart. Only nonzero
// components are stored, keyed by the sorted index set I of dx_I.
template <class R>
class MatrixForm {
 public:
  using Mat = Matrix<R>;

  MatrixForm() = default;
  MatrixForm(int d, int m) : d_(d), m_(m) {
    if (d < 0 || d > 16 || m < 1) throw std::invalid_argument("bad form shape");
  }
  static MatrixForm function(int d, const Mat& a) {
    MatrixForm f(d, a.rows());
    f.add(0, a);
    return f;
  }
  static MatrixForm basis(int d, FormMask I, const Mat& a) {
    MatrixForm f(d, a.rows());
    f.add(I, a);
    return f;
  }
  static MatrixForm identity(int d, int m) { return function(d, Mat::identity(m)); }
  static MatrixForm scalar(int d, const R& s) {
    Mat a(1, 1);
    a(0, 0) = s;
    return function(d, a);
  }

  int dim() const { return d_; }
  int size() const { return m_; }
  const std::map<FormMask, Mat>& comps() const { return c_; }
  Mat component(FormMask I) const {
    auto it = c_.find(I);
    return it == c_.end() ? Mat(m_, m_) : it->second;
  }
  // Scalar coefficient of a 1x1 form.
  R coeff(FormMask I) const {
    auto it = c_.find(I);
    return it == c_.end() ? R{} : it->second(0, 0);
  }
  void add(FormMask I, const Mat& a) {
    if (I >> d_) throw std::out_of_range("form index outside chart dimension");
    if (a.rows() != m_ || a.cols() != m_) throw std::invalid_argument("form component shape mismatch");
    auto it = c_.find(I);
    if (it == c_.end()) {
      if (!a.is_zero()) c_.emplace(I, a);
      return;
    }
    it->second += a;
    if (it->second.is_zero()) c_.erase(it);
  }

  bool is_zero() const { return c_.empty(); }
  int max_degree() const {
    int k = -1;
    for (const auto& [I, a] : c_) k = std::max(k, std::popcount(I));
    return k;
  }
  // Degree of a nonzero homogeneous form, -1 for 0, -2 for mixed degree.
  int degree() const {
    int k = -1;
    for (const auto& [I, a] : c_) {
      int p = std::popcount(I);
      if (k == -1)
        k = p;
      else if (k != p)
        return -2;
    }
    return k;
  }
  MatrixForm degree_part(int k) const {
    MatrixForm f(d_, m_);
    for (const auto& [I, a] : c_)
      if (std::popcount(I) == k) f.c_.emplace(I, a);
    return f;
  }
  // Sum_k (-1)^k a_k.
  MatrixForm parity_twisted() const {
    MatrixForm f(d_, m_);
    for (const auto& [I, a] : c_) f.c_.emplace(I, (std::popcount(I) & 1) ? -a : a);
    return f;
  }

  MatrixForm& operator+=(const MatrixForm& o) {
    check(o);
    for (const auto& [I, a] : o.c_) add(I, a);
    return *this;
  }
  MatrixForm& operator-=(const MatrixForm& o) {
    check(o);
    for (const auto& [I, a] : o.c_) add(I, -a);
    return *this;
  }
  MatrixForm operator-() const {
    MatrixForm f(d_, m_);
    for (const auto& [I, a] : c_) f.c_.emplace(I, -a);
    return f;
  }
  friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }
  friend MatrixForm operator-(MatrixForm a, const MatrixForm& b) { return a -= b; }

  MatrixForm scaled(const Gq& s) const {
    MatrixForm f(d_, m_);
    if (s.is_zero()) return f;
    R r = from_gq<R>(s);
    for (const auto& [I, a] : c_) f.c_.emplace(I, a.times(r));
    return f;
  }

  // Graded product: (A dx_I)(B dx_J) = sign(I,J) AB dx_{I u J}.
  friend MatrixForm operator*(const MatrixForm& a, const MatrixForm& b) {
    a.check(b);
    MatrixForm f(a.d_, a.m_);
    for (const auto& [I, A] : a.c_)
      for (const auto& [J, B] : b.c_) {
        if (I & J) continue;
        Mat prod = A * B;
        f.add(I | J, koszul_sign(I, J) < 0 ? -prod : prod);
      }
    return f;
  }

  // Scalar (1x1) form times a matrix form.
  friend MatrixForm scalar_wedge(const MatrixForm& s, const MatrixForm& a) {
    if (s.m_ != 1 || s.d_ != a.d_) throw std::invalid_argument("scalar_wedge needs a 1x1 form on the same chart");
    MatrixForm f(a.d_, a.m_);
    for (const auto& [I, S] : s.c_)
      for (const auto& [J, A] : a.c_) {
        if (I & J) continue;
        Mat prod = A.times(S(0, 0));
        f.add(I | J, koszul_sign(I, J) < 0 ? -prod : prod);
      }
    return f;
  }

  MatrixForm trace() const {
    MatrixForm f(d_, 1);
    for (const auto& [I, a] : c_) {
      Mat t(1, 1);
      t(0, 0) = a.trace();
      f.add(I, t);
    }
    return f;
  }

  MatrixForm adjoint_entries() const {
    MatrixForm f(d_, m_);
    for (const auto& [I, a] : c_) f.add(I, a.adjoint());
    return f;
  }

  template <class S, class F>
  MatrixForm<S> map(F f) const {
    MatrixForm<S> out(d_, m_);
    for (const auto& [I, a] : c_) {
      Matrix<S> b(m_, m_);
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) b(i, j) = f(a(i, j));
      out.add(I, b);
    }
    return out;
  }

  friend bool operator==(const MatrixForm& a, const MatrixForm& b) {
    return a.d_ == b.d_ && a.m_ == b.m_ && a.c_ == b.c_;
  }

 private:
  void check(const MatrixForm& o) const {
    if (d_ != o.d_ || m_ != o.m_) throw std::invalid_argument("form shape mismatch");
  }
  int d_ = 0;
  int m_ = 1;
  std::map<FormMask, Mat> c_;
};

template <class R>
MatrixForm<R> wedge(const MatrixForm<R>& a, const MatrixForm<R>& b) {
  return a * b;
}

// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba, expanded over homogeneous parts.
template <class R>
MatrixForm<R> graded_commutator(const MatrixForm<R>& a, const MatrixForm<R>& b) {
  MatrixForm<R> out = a * b;
  for (int k = 0; k <= a.dim(); ++k) {
    auto ak = a.degree_part(k);
    if (ak.is_zero()) continue;
    auto bb = (k & 1) ? b.parity_twisted() : b;
    out -= bb * ak;
  }
  return out;
}

// Exponential of an even-degree form with positive-degree part nilpotent:
// exp(x) = sum_j x^j / j!, truncated once x^j vanishes.
template <class R>
MatrixForm<R> form_exp(const MatrixForm<R>& x) {
  if (!x.degree_part(0).is_zero()) throw std::invalid_argument("form_exp needs a form without degree-0 part");
  MatrixForm<R> term = MatrixForm<R>::identity(x.dim(), x.size());
  MatrixForm<R> sum = term;
  for (int j = 1; !term.is_zero(); ++j) {
    term = (term * x).scaled(Gq(Rational(1, j)));
    sum += term;
  }
  return sum;
}

using Form = MatrixForm<Poly>;
using NForm = MatrixForm<SampleField>;

// Exterior derivative (exact backend).
Form d(const Form& a);

// Chart for a form; forms carry no chart pointer, so callers pass it when
// building coordinate functions.
Form coordinate_function(const ChartPtr& chart, const Poly& f, int m = 1);

struct ConnectionData {
  Form theta;  // unitary-lift connection 1-form
  Form omega;  // d theta + theta ^ theta
  Form sigma;  // traceless part of omega
};

ConnectionData curvature_and_lift(const Form& theta);
// Graded adjoint action: da + theta a - (-1)^{|a|} a theta, per homogeneous part.
Form nabla(const ConnectionData& conn, const Form& a);

// Scalar 3-form -(1/2 pi i) nabla(sigma - 2 pi i beta) on one chart; since
// nabla sigma vanishes identically this is d beta. Throws std::logic_error if
// the Bianchi identity fails.
Form dd_representative(const ConnectionData& conn, const Form& beta = Form());

// d_c w = dw + c ^ w for a closed scalar 3-form c.
Form d_twisted(const Form& c, const Form& w);
// w ^ exp(beta) for a scalar 2-form beta.
Form exp_beta_intertwiner(const Form& beta, const Form& w);

// Structured text serialization: one block per nonzero component.
std::string to_text(const Form& f);

// Evaluate every coefficient on a grid of variable values.
NForm sample(const Form& f, const std::vector<std::vector<double>>& var_values);

}  // namespace ptk
