#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

#include "ptk/scalar.hpp"

namespace ptk {

// Coefficient-ring adaptors. A ring R used in Matrix<R> must be default
// constructible to zero and support + - * and these free functions.
template <class R>
R from_gq(const Gq& z);
template <>
inline Gq from_gq<Gq>(const Gq& z) {
  return z;
}
template <>
inline cd from_gq<cd>(const Gq& z) {
  return z.to_complex();
}
inline cd conj(const cd& z) { return std::conj(z); }

template <class R>
bool ring_is_zero(const R& x) {
  return is_zero(x);
}

template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = from_gq<R>(Gq(1));
    return m;
  }
  static Matrix scalar(int n, const R& s) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool square() const { return r_ == c_; }

  R& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const R& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const std::vector<R>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!ptk_is_zero(x)) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Matrix operator-() const {
    Matrix m(r_, c_);
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const R& x = a(i, k);
        if (ptk_is_zero(x)) continue;
        for (int j = 0; j < b.c_; ++j) {
          const R& y = b(k, j);
          if (ptk_is_zero(y)) continue;
          m(i, j) += x * y;
        }
      }
    return m;
  }

  // Entrywise multiplication by a ring element from the left.
  Matrix times(const R& s) const {
    Matrix m(r_, c_);
    if (ptk_is_zero(s)) return m;
    for (std::size_t k = 0; k < a_.size(); ++k)
      if (!ptk_is_zero(a_[k])) m.a_[k] = s * a_[k];
    return m;
  }

  R trace() const {
    if (!square()) throw std::invalid_argument("trace of non-square matrix");
    R t{};
    for (int i = 0; i < r_; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix adjoint() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = conj((*this)(i, j));
    return m;
  }

  Matrix block(int i0, int j0, int rows, int cols) const {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
    return m;
  }
  void set_block(int i0, int j0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  static bool ptk_is_zero(const R& x) { return ring_is_zero(x); }
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
  }

  int r_ = 0;
  int c_ = 0;
  std::vector<R> a_;
};

// Kronecker product with R-entries on both sides.
template <class R>
Matrix<R> kron(const Matrix<R>& a, const Matrix<R>& b) {
  Matrix<R> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (ring_is_zero(a(i, j))) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

template <class R>
Matrix<R> commutator(const Matrix<R>& a, const Matrix<R>& b) {
  return a * b - b * a;
}

template <class R>
Matrix<R> scaled(const Matrix<R>& m, const Gq& s) {
  return m.times(from_gq<R>(s));
}

using MatQ = Matrix<Gq>;
using MatC = Matrix<cd>;

MatC to_numeric(const MatQ& m);

// Exact linear algebra over Q(i).
int rank(MatQ m);
// Basis of the null space (columns of the result).
MatQ kernel(const MatQ& m);
// Some x with m x = b, or throws std::domain_error if inconsistent.
MatQ solve(const MatQ& m, const MatQ& b);
MatQ inverse(const MatQ& m);
Gq determinant(MatQ m);

}  // namespace ptk
