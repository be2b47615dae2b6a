#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "buyhold/errors.hpp"
#include "buyhold/linalg.hpp"

namespace buyhold {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

/// minimize c^T x  subject to  A x (relation) b,  x >= 0.
template <typename Scalar>
struct LinearProgram {
  MatrixX<Scalar> a;
  VectorX<Scalar> b;
  VectorX<Scalar> c;
  std::vector<Relation> relations;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename Scalar>
struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  VectorX<Scalar> x;
  // Row duals y with A^T y <= c; y_i >= 0 on >= rows, y_i <= 0 on <= rows.
  VectorX<Scalar> duals;
  Scalar objective = Scalar(0);
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-12;
  double feasibility = 1e-9;
  // 0 selects a cap proportional to the tableau size.
  int max_iterations = 0;
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  Tableau(MatrixX<Scalar> body, std::vector<Eigen::Index> basis, SimplexOptions opts)
      : t_(std::move(body)), basis_(std::move(basis)), opts_(opts) {}

  Eigen::Index rows() const { return t_.rows(); }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }
  const MatrixX<Scalar>& body() const { return t_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }
  const RowVectorX<Scalar>& reduced() const { return d_; }
  Scalar objective() const { return -d_(rhs_col()); }

  // Reduced cost row for column costs `cost` (length = cols - 1).
  void price(const VectorX<Scalar>& cost) {
    d_.setZero(t_.cols());
    d_.head(cost.size()) = cost.transpose();
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const Scalar cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != Scalar(0)) d_ -= cb * t_.row(i);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t_(i, c);
      if (f != Scalar(0)) t_.row(i) -= f * t_.row(r);
    }
    const Scalar f = d_(c);
    if (f != Scalar(0)) d_ -= f * t_.row(r);
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule over columns [0, allowed_cols). Returns false when unbounded.
  bool run(Eigen::Index allowed_cols, int& iterations, int max_iterations) {
    using std::abs;
    const Scalar tol(opts_.pivot_tolerance);
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed_cols; ++j) {
        if (d_(j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < rows(); ++i) {
        const Scalar coef = t_(i, enter);
        if (coef <= tol) continue;
        const Scalar ratio = std::max(Scalar(0), t_(i, rhs_col())) / coef;
        const Scalar slack = tol * (Scalar(1) + abs(best));
        if (leave < 0 || ratio < best - slack) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + slack &&
                   basis_[static_cast<std::size_t>(i)] <
                       basis_[static_cast<std::size_t>(leave)]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      if (++iterations > max_iterations) {
        throw NumericalFailure("simplex: iteration cap of " +
                               std::to_string(max_iterations) + " exceeded");
      }
      pivot(leave, enter);
    }
  }

 private:
  MatrixX<Scalar> t_;
  std::vector<Eigen::Index> basis_;
  RowVectorX<Scalar> d_;
  SimplexOptions opts_;
};

}  // namespace detail

/// Two-phase dense tableau simplex with Bland's anticycling rule.
///
/// Phase one minimizes the sum of artificial variables from the slack and
/// artificial starting basis; phase two optimizes the real objective with
/// artificial columns barred from re-entering. Duals are read from the
/// reduced costs of each row's initial identity column.
template <typename Scalar>
LpResult<Scalar> solve_lp(const LinearProgram<Scalar>& lp, SimplexOptions opts = {}) {
  using std::abs;
  const Eigen::Index m = lp.a.rows();
  const Eigen::Index n = lp.a.cols();
  if (lp.b.size() != m || lp.c.size() != n ||
      lp.relations.size() != static_cast<std::size_t>(m)) {
    throw DimensionMismatch("solve_lp: inconsistent problem dimensions");
  }

  // Normalize rows to a nonnegative right-hand side.
  std::vector<Scalar> sign(static_cast<std::size_t>(m), Scalar(1));
  std::vector<Relation> rel = lp.relations;
  Eigen::Index n_slack = 0, n_art = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    auto& r = rel[static_cast<std::size_t>(i)];
    if (lp.b(i) < Scalar(0)) {
      sign[static_cast<std::size_t>(i)] = Scalar(-1);
      if (r == Relation::kLessEqual) {
        r = Relation::kGreaterEqual;
      } else if (r == Relation::kGreaterEqual) {
        r = Relation::kLessEqual;
      }
    }
    if (r != Relation::kEqual) ++n_slack;
    if (r != Relation::kLessEqual) ++n_art;
  }

  const Eigen::Index art_begin = n + n_slack;
  const Eigen::Index total = art_begin + n_art;
  MatrixX<Scalar> body = MatrixX<Scalar>::Zero(m, total + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  std::vector<Eigen::Index> identity_col(static_cast<std::size_t>(m));
  {
    Eigen::Index s = n, a = art_begin;
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      body.row(i).head(n) = sign[iu] * lp.a.row(i);
      body(i, total) = sign[iu] * lp.b(i);
      switch (rel[iu]) {
        case Relation::kLessEqual:
          body(i, s) = Scalar(1);
          basis[iu] = identity_col[iu] = s++;
          break;
        case Relation::kGreaterEqual:
          body(i, s++) = Scalar(-1);
          body(i, a) = Scalar(1);
          basis[iu] = identity_col[iu] = a++;
          break;
        case Relation::kEqual:
          body(i, a) = Scalar(1);
          basis[iu] = identity_col[iu] = a++;
          break;
      }
    }
  }

  const int cap = opts.max_iterations > 0
                      ? opts.max_iterations
                      : static_cast<int>(50 * (m + total) + 1000);
  LpResult<Scalar> result;
  detail::Tableau<Scalar> tab(std::move(body), std::move(basis), opts);

  // Phase one.
  if (n_art > 0) {
    VectorX<Scalar> phase1 = VectorX<Scalar>::Zero(total);
    phase1.tail(n_art).setOnes();
    tab.price(phase1);
    tab.run(total, result.iterations, cap);
    const Scalar scale = std::max(Scalar(1), lp.b.cwiseAbs().maxCoeff());
    if (tab.objective() > Scalar(opts.feasibility) * scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < art_begin) continue;
      for (Eigen::Index j = 0; j < art_begin; ++j) {
        if (abs(tab.body()(i, j)) > Scalar(opts.pivot_tolerance)) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase two.
  VectorX<Scalar> phase2 = VectorX<Scalar>::Zero(total);
  phase2.head(n) = lp.c;
  tab.price(phase2);
  if (!tab.run(art_begin, result.iterations, cap)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x = VectorX<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index col = tab.basis()[static_cast<std::size_t>(i)];
    if (col < n) result.x(col) = std::max(Scalar(0), tab.body()(i, tab.rhs_col()));
  }
  result.duals.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    result.duals(i) = -sign[iu] * tab.reduced()(identity_col[iu]);
  }
  result.objective = lp.c.dot(result.x);
  return result;
}

}  // namespace buyhold
