#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "buyhold/errors.hpp"

namespace buyhold {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// Inverse of a square matrix by Gauss-Jordan elimination with row pivoting.
///
/// Throws SingularMatrix as soon as the best available pivot in a column has
/// magnitude below `pivot_threshold`.
template <typename Derived>
MatrixX<typename Derived::Scalar> invert_matrix(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar pivot_threshold = typename Derived::Scalar(1e-12)) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("invert_matrix: matrix must be square and non-empty");
  }
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> a = m;
  MatrixX<Scalar> inv = MatrixX<Scalar>::Identity(n, n);

  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot_row = col;
    a.col(col).tail(n - col).cwiseAbs().maxCoeff(&pivot_row);
    pivot_row += col;
    if (abs(a(pivot_row, col)) < pivot_threshold) {
      throw SingularMatrix("invert_matrix: pivot below threshold in column " +
                           std::to_string(col));
    }
    if (pivot_row != col) {
      a.row(col).swap(a.row(pivot_row));
      inv.row(col).swap(inv.row(pivot_row));
    }
    const Scalar pivot = a(col, col);
    a.row(col) /= pivot;
    inv.row(col) /= pivot;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar factor = a(r, col);
      if (factor == Scalar(0)) continue;
      a.row(r) -= factor * a.row(col);
      inv.row(r) -= factor * inv.row(col);
    }
  }
  return inv;
}

/// Determinant via LU elimination with row pivoting. Never throws on
/// singular input; an exactly zero pivot column yields zero.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionMismatch("determinant: matrix must be square and non-empty");
  }
  const Eigen::Index n = m.rows();
  MatrixX<Scalar> a = m;
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot_row = col;
    a.col(col).tail(n - col).cwiseAbs().maxCoeff(&pivot_row);
    pivot_row += col;
    if (a(pivot_row, col) == Scalar(0)) return Scalar(0);
    if (pivot_row != col) {
      a.row(col).swap(a.row(pivot_row));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar factor = a(r, col) / a(col, col);
      a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
    }
  }
  return det;
}

/// Max-row-sum norm of M * M^-1 - I.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inverse_residual(const Eigen::MatrixBase<DerivedA>& m,
                                           const Eigen::MatrixBase<DerivedB>& inv) {
  using Scalar = typename DerivedA::Scalar;
  const MatrixX<Scalar> r = m * inv - MatrixX<Scalar>::Identity(m.rows(), m.cols());
  return r.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace buyhold
