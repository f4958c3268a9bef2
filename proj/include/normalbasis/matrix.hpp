// Small dense matrices over F: classical products, elimination, rank.
#ifndef NORMALBASIS_MATRIX_HPP
#define NORMALBASIS_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "normalbasis/scalar.hpp"

namespace normalbasis {

/// Row-major.
template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill) : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  const T* row(std::size_t i) const { return data.data() + i * cols; }
  T* row(std::size_t i) { return data.data() + i * cols; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <class T>
Matrix<T> identity_matrix(const CoeffField& f, std::size_t n) {
  Matrix<T> m(n, n, zero_of<T>(f));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = one_of<T>(f);
  return m;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t;
  t.rows = a.cols;
  t.cols = a.rows;
  t.data.resize(a.data.size());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t.data[j * a.rows + i] = a.data[i * a.cols + j];
  return t;
}

/// A * Bt^T, where the right factor is supplied already transposed so both
/// operands are walked row by row.
template <class T>
Matrix<T> matmul_transB(const CoeffField& f, const Matrix<T>& a, const Matrix<T>& bt) {
  if (a.cols != bt.cols) throw UsageError("matmul: inner dimensions differ");
  Matrix<T> c(a.rows, bt.rows, zero_of<T>(f));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < bt.rows; ++j) c(i, j) = dot(f, a.row(i), bt.row(j), a.cols);
  return c;
}

template <class T>
Matrix<T> matmul(const CoeffField& f, const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols != b.rows) throw UsageError("matmul: inner dimensions differ");
  return matmul_transB(f, a, transpose(b));
}

template <class T>
std::vector<T> matvec(const CoeffField& f, const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols != v.size()) throw UsageError("matvec: dimension mismatch");
  std::vector<T> out(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) out[i] = dot(f, a.row(i), v.data(), a.cols);
  return out;
}

namespace detail {

// In-place row echelon form; returns (rank, determinant of the leading square
// block when the matrix is square).
template <class T>
std::pair<std::size_t, T> eliminate(const CoeffField& f, Matrix<T>& a) {
  T det = one_of<T>(f);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t piv = r;
    while (piv < a.rows && Scalar<T>::is_zero(a(piv, c))) ++piv;
    if (piv == a.rows) {
      det = zero_of<T>(f);
      continue;
    }
    if (piv != r) {
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(r, j));
      det = -det;
    }
    det *= a(r, c);
    T inv = Scalar<T>::inverse(a(r, c));
    for (std::size_t i = r + 1; i < a.rows; ++i) {
      if (Scalar<T>::is_zero(a(i, c))) continue;
      T factor = a(i, c) * inv;
      for (std::size_t j = c; j < a.cols; ++j) a(i, j) -= factor * a(r, j);
    }
    ++r;
  }
  if (r < a.rows) det = zero_of<T>(f);
  return {r, det};
}

}  // namespace detail

template <class T>
T determinant(const CoeffField& f, Matrix<T> a) {
  if (a.rows != a.cols) throw UsageError("determinant: matrix is not square");
  return detail::eliminate(f, a).second;
}

template <class T>
std::size_t rank(const CoeffField& f, Matrix<T> a) {
  return detail::eliminate(f, a).first;
}

}  // namespace normalbasis

#endif
