#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "buyhold/errors.hpp"
#include "buyhold/linalg.hpp"
#include "buyhold/simplex.hpp"
#include "buyhold/tolerances.hpp"

namespace buyhold {

/// Payoff matrix of a finite zero-sum game. Rows index the online player's
/// pure strategies (maximizer), columns the adversary's (minimizer). Every
/// entry is a ratio of accumulations and therefore strictly positive.
template <typename Scalar>
class PayoffMatrix {
 public:
  explicit PayoffMatrix(MatrixX<Scalar> entries) : h_(std::move(entries)) {
    using std::isfinite;
    if (h_.rows() < 1 || h_.cols() < 1) {
      throw InvalidArgument("PayoffMatrix: needs at least one row and one column");
    }
    for (Eigen::Index i = 0; i < h_.rows(); ++i) {
      for (Eigen::Index j = 0; j < h_.cols(); ++j) {
        if (!isfinite(h_(i, j)) || !(h_(i, j) > Scalar(0))) {
          throw InvalidArgument("PayoffMatrix: entry (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") is not finite and positive");
        }
      }
    }
  }

  Eigen::Index rows() const { return h_.rows(); }
  Eigen::Index cols() const { return h_.cols(); }
  bool square() const { return h_.rows() == h_.cols(); }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return h_(i, j); }
  const MatrixX<Scalar>& matrix() const { return h_; }

  PayoffMatrix scaled(Scalar lambda) const { return PayoffMatrix(lambda * h_); }

 private:
  MatrixX<Scalar> h_;
};

/// Probability density over a finite index set.
template <typename Scalar>
class MixedStrategy {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit MixedStrategy(VectorX<Scalar> weights) : w_(std::move(weights)) {
    using std::abs;
    if (w_.size() < 1) throw InvalidArgument("MixedStrategy: empty weight vector");
    if ((w_.array() < Scalar(0)).any()) {
      throw InvalidArgument("MixedStrategy: negative weight");
    }
    if (abs(w_.sum() - Scalar(1)) > Scalar(kSumTolerance)) {
      throw InvalidArgument("MixedStrategy: weights do not sum to 1");
    }
  }

  // Normalizes a nonnegative, nonzero vector onto the simplex.
  static MixedStrategy normalized(const VectorX<Scalar>& v) {
    const Scalar total = v.sum();
    if (!(total > Scalar(0))) throw InvalidArgument("MixedStrategy: zero mass");
    return MixedStrategy(v / total);
  }

  Eigen::Index size() const { return w_.size(); }
  Scalar operator()(Eigen::Index i) const { return w_(i); }
  const VectorX<Scalar>& weights() const { return w_; }

 private:
  VectorX<Scalar> w_;
};

/// Optimal primal/dual pair of the game LPs
///   primal: minimize x^T u_m  s.t.  x^T H >= u_n^T, x >= 0
///   dual:   maximize y^T u_n  s.t.  H y <= u_m,     y >= 0
template <typename Scalar>
struct LpSolution {
  VectorX<Scalar> primal;
  VectorX<Scalar> dual;
  Scalar primal_objective;
  Scalar dual_objective;
};

enum class SolveRoute { kLinearProgram, kClosedForm };

inline const char* route_name(SolveRoute r) {
  return r == SolveRoute::kClosedForm ? "closed_form" : "linear_program";
}

template <typename Scalar>
struct GameSolution {
  Scalar value;  // v*
  Scalar ratio;  // r* = 1 / v*
  MixedStrategy<Scalar> online;
  MixedStrategy<Scalar> adversary;
  bool unique;  // certified only by the closed-form route
  SolveRoute route;
};

/// Primal and dual optimal solutions by the two-phase simplex. The dual is
/// read off the primal's final tableau; both are checked for feasibility and
/// for a duality gap within `tol.optimality`.
template <typename Scalar>
LpSolution<Scalar> solve_game_primal_dual(const PayoffMatrix<Scalar>& h,
                                          const Tolerances& tol = {}) {
  const Eigen::Index m = h.rows(), n = h.cols();
  LinearProgram<Scalar> lp;
  lp.a = h.matrix().transpose();
  lp.b = VectorX<Scalar>::Ones(n);
  lp.c = VectorX<Scalar>::Ones(m);
  lp.relations.assign(static_cast<std::size_t>(n), Relation::kGreaterEqual);

  SimplexOptions opts;
  opts.pivot_tolerance = tol.singular_pivot;
  opts.feasibility = tol.feasibility;
  const auto res = solve_lp(lp, opts);
  if (res.status != LpStatus::kOptimal) {
    // A positive payoff matrix always gives a feasible bounded primal.
    throw NumericalFailure("solve_game_lp: simplex did not reach an optimum");
  }

  LpSolution<Scalar> out;
  out.primal = res.x;
  out.dual = res.duals.cwiseMax(Scalar(0));
  out.primal_objective = out.primal.sum();
  out.dual_objective = out.dual.sum();

  const Scalar feas(tol.feasibility);
  const RowVectorX<Scalar> cover = out.primal.transpose() * h.matrix();
  const VectorX<Scalar> load = h.matrix() * out.dual;
  if ((cover.array() < Scalar(1) - feas).any() || (load.array() > Scalar(1) + feas).any()) {
    throw NumericalFailure("solve_game_lp: returned solution is infeasible");
  }
  using std::abs;
  if (abs(out.primal_objective - out.dual_objective) > Scalar(tol.optimality)) {
    throw NumericalFailure("solve_game_lp: duality gap exceeds tolerance");
  }
  return out;
}

template <typename Scalar>
GameSolution<Scalar> solve_game_lp(const PayoffMatrix<Scalar>& h, const Tolerances& tol = {}) {
  const auto lp = solve_game_primal_dual(h, tol);
  const Scalar ratio = lp.primal_objective;
  return GameSolution<Scalar>{Scalar(1) / ratio,
                              ratio,
                              MixedStrategy<Scalar>::normalized(lp.primal),
                              MixedStrategy<Scalar>::normalized(lp.dual),
                              false,
                              SolveRoute::kLinearProgram};
}

namespace detail {

// Rounds components in [-slack, 0) to zero; throws when anything is lower.
template <typename Scalar>
void clamp_noise(VectorX<Scalar>& v, Scalar slack, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) < -slack) {
      throw PreconditionViolated(std::string("solve_game_closed_form: ") + what +
                                 " has a negative component; use solve_game_lp");
    }
    if (v(i) < Scalar(0)) v(i) = Scalar(0);
  }
}

}  // namespace detail

/// Square nonsingular games with x = (u^T H^-1)^T >= 0 and y = H^-1 u >= 0.
/// Both are then optimal, r* = x^T u, and when every component of x and y is
/// strictly positive they are the only optimal solutions.
template <typename Scalar>
GameSolution<Scalar> solve_game_closed_form(const PayoffMatrix<Scalar>& h,
                                            const Tolerances& tol = {}) {
  if (!h.square()) {
    throw PreconditionViolated("solve_game_closed_form: payoff matrix is not square");
  }
  const MatrixX<Scalar> inv = invert_matrix(h.matrix(), Scalar(tol.singular_pivot));
  VectorX<Scalar> x = inv.colwise().sum().transpose();
  VectorX<Scalar> y = inv.rowwise().sum();
  const Scalar slack(tol.negative_slack);
  detail::clamp_noise(x, slack, "u^T H^-1");
  detail::clamp_noise(y, slack, "H^-1 u");

  const bool unique = (x.array() > slack).all() && (y.array() > slack).all();
  const Scalar ratio = x.sum();
  return GameSolution<Scalar>{Scalar(1) / ratio,
                              ratio,
                              MixedStrategy<Scalar>::normalized(x),
                              MixedStrategy<Scalar>::normalized(y),
                              unique,
                              SolveRoute::kClosedForm};
}

/// Closed form when it applies, LP otherwise.
template <typename Scalar>
GameSolution<Scalar> solve_game(const PayoffMatrix<Scalar>& h, const Tolerances& tol = {}) {
  if (h.square()) {
    try {
      return solve_game_closed_form(h, tol);
    } catch (const SingularMatrix&) {
    } catch (const PreconditionViolated&) {
    }
  }
  return solve_game_lp(h, tol);
}

/// Zero-based columns j attaining min_l x^T H^l within `tolerance`: the
/// adversary's worst-case pure strategies against the mixed strategy x / |x|.
template <typename Scalar>
std::vector<Eigen::Index> worst_case_columns(const PayoffMatrix<Scalar>& h,
                                             const VectorX<std::type_identity_t<Scalar>>& x,
                                             std::type_identity_t<Scalar> tolerance = 1e-10) {
  if (x.size() != h.rows()) {
    throw DimensionMismatch("worst_case_columns: x length differs from row count");
  }
  if ((x.array() < Scalar(0)).any() || !(x.sum() > Scalar(0))) {
    throw InvalidArgument("worst_case_columns: x must be nonnegative and nonzero");
  }
  const RowVectorX<Scalar> cover = x.transpose() * h.matrix();
  const Scalar lowest = cover.minCoeff();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < cover.size(); ++j) {
    if (cover(j) <= lowest + tolerance) cols.push_back(j);
  }
  return cols;
}

/// Checks a caller-supplied extreme-point certificate (I, J) for optimal
/// x and y: the submatrix H[I, J] is square and nonsingular, x covers every
/// column of J and y loads every row of I with equality, and both vanish
/// off their index sets. Index sets are zero-based.
template <typename Scalar>
bool check_extreme_point(const PayoffMatrix<Scalar>& h,
                         const VectorX<std::type_identity_t<Scalar>>& x,
                         const VectorX<std::type_identity_t<Scalar>>& y,
                         const std::vector<Eigen::Index>& rows,
                         const std::vector<Eigen::Index>& cols,
                         std::type_identity_t<Scalar> tolerance = 1e-9) {
  using std::abs;
  if (x.size() != h.rows() || y.size() != h.cols()) {
    throw DimensionMismatch("check_extreme_point: x or y length differs from H");
  }
  for (auto i : rows) {
    if (i < 0 || i >= h.rows()) throw DimensionMismatch("check_extreme_point: row index out of range");
  }
  for (auto j : cols) {
    if (j < 0 || j >= h.cols()) throw DimensionMismatch("check_extreme_point: column index out of range");
  }
  if (rows.size() != cols.size() || rows.empty()) return false;

  const auto k = static_cast<Eigen::Index>(rows.size());
  MatrixX<Scalar> sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      sub(a, b) = h(rows[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(b)]);
    }
  }
  try {
    (void)invert_matrix(sub);
  } catch (const SingularMatrix&) {
    return false;
  }

  for (auto j : cols) {
    Scalar s(0);
    for (auto i : rows) s += h(i, j) * x(i);
    if (abs(s - Scalar(1)) > tolerance) return false;
  }
  for (auto i : rows) {
    Scalar s(0);
    for (auto j : cols) s += h(i, j) * y(j);
    if (abs(s - Scalar(1)) > tolerance) return false;
  }
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    if (std::find(rows.begin(), rows.end(), i) == rows.end() && abs(x(i)) > tolerance) return false;
  }
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    if (std::find(cols.begin(), cols.end(), j) == cols.end() && abs(y(j)) > tolerance) return false;
  }
  return true;
}

}  // namespace buyhold
