#pragma once

namespace buyhold {

// Numerical thresholds shared by the game solvers. Defaults are sized for
// double precision on payoff matrices up to a few hundred rows.
struct Tolerances {
  // Primal/dual constraint slack accepted as feasible.
  double feasibility = 1e-9;
  // Largest duality gap accepted as optimal.
  double optimality = 1e-8;
  // Pivots below this magnitude mean the matrix is numerically singular.
  double singular_pivot = 1e-12;
  // Closed-form components in [-negative_slack, 0) are rounded to zero.
  double negative_slack = 1e-12;
};

}  // namespace buyhold
