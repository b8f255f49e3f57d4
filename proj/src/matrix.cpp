#include "ptk/matrix.hpp"

#include <numeric>

namespace ptk {

MatC to_numeric(const MatQ& m) {
  MatC out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex();
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(MatQ& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Gq inv = m(row, col).inverse();
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Gq f = m(i, col);
      for (int j = col; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(MatQ m) { return static_cast<int>(rref(m).size()); }

MatQ kernel(const MatQ& m) {
  MatQ r = m;
  auto piv = rref(r);
  std::vector<bool> is_piv(m.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  MatQ k(m.cols(), static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], static_cast<int>(f)) = Gq(1);
    for (std::size_t p = 0; p < piv.size(); ++p) k(piv[p], static_cast<int>(f)) = -r(static_cast<int>(p), free[f]);
  }
  return k;
}

MatQ solve(const MatQ& m, const MatQ& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  MatQ aug(m.rows(), m.cols() + b.cols());
  aug.set_block(0, 0, m);
  aug.set_block(0, m.cols(), b);
  auto piv = rref(aug);
  for (int p : piv)
    if (p >= m.cols()) throw std::domain_error("solve: inconsistent system");
  MatQ x(m.cols(), b.cols());
  for (std::size_t p = 0; p < piv.size(); ++p)
    for (int j = 0; j < b.cols(); ++j) x(piv[p], j) = aug(static_cast<int>(p), m.cols() + j);
  return x;
}

MatQ inverse(const MatQ& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  if (rank(m) != m.rows()) throw std::domain_error("singular matrix");
  return solve(m, MatQ::identity(m.rows()));
}

Gq determinant(MatQ m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  int n = m.rows();
  Gq det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!m(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return Gq(0);
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    Gq inv = m(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Gq f = m(i, col) * inv;
      for (int j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace ptk
