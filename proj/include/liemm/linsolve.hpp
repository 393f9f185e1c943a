#pragma once

#include <optional>
#include <vector>

#include "liemm/matrix.hpp"

namespace liemm {

// Reduced row echelon form over an exact field; returns pivot columns.
template <class T>
std::vector<std::size_t> rref_inplace(Mat<T>& a) {
  static_assert(ScalarTraits<T>::is_field, "rref needs a field");
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && ScalarTraits<T>::is_zero(a(p, col))) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    T iv = ScalarTraits<T>::one() / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * iv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || ScalarTraits<T>::is_zero(a(i, col))) continue;
      T f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!ScalarTraits<T>::is_zero(a(row, j))) a(i, j) -= f * a(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

template <class T>
std::size_t rank(Mat<T> a) {
  return rref_inplace(a).size();
}

// One solution of A x = b (free variables set to zero), or nullopt when the
// system is inconsistent.
template <class T>
std::optional<Mat<T>> solve(const Mat<T>& A, const Mat<T>& b) {
  if (A.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  std::size_t n = A.cols(), k = b.cols();
  Mat<T> aug(A.rows(), n + k);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  auto piv = rref_inplace(aug);
  for (std::size_t r = 0; r < piv.size(); ++r)
    if (piv[r] >= n) return std::nullopt;
  // rows past the pivots must vanish on the right-hand side
  for (std::size_t r = piv.size(); r < aug.rows(); ++r)
    for (std::size_t j = 0; j < k; ++j)
      if (!ScalarTraits<T>::is_zero(aug(r, n + j))) return std::nullopt;
  Mat<T> x(n, k);
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < k; ++j) x(piv[r], j) = aug(r, n + j);
  return x;
}

template <class T>
Mat<T> mat_inverse(const Mat<T>& a) {
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  auto x = solve(a, Mat<T>::identity(a.rows()));
  if (!x) throw std::domain_error("matrix is singular");
  return *x;
}

}  // namespace liemm
