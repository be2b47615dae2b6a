#include <random>

#include "doctest.h"

#include "buyhold/simplex.hpp"

using namespace buyhold;

namespace {

LinearProgram<double> make_lp(Eigen::MatrixXd a, Eigen::VectorXd b, Eigen::VectorXd c,
                              std::vector<Relation> rel) {
  return {std::move(a), std::move(b), std::move(c), std::move(rel)};
}

}  // namespace

TEST_CASE("solve_lp: textbook maximization through the slack basis") {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  auto lp = make_lp(a, Eigen::Vector3d(4, 12, 18), Eigen::Vector2d(-3, -5),
                    std::vector<Relation>(3, Relation::kLessEqual));
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x(0) == doctest::Approx(2));
  CHECK(r.x(1) == doctest::Approx(6));
  CHECK(r.objective == doctest::Approx(-36));
  // Shadow prices of the maximization are (0, 3/2, 1).
  CHECK(r.duals(0) == doctest::Approx(0));
  CHECK(r.duals(1) == doctest::Approx(-1.5));
  CHECK(r.duals(2) == doctest::Approx(-1));
}

TEST_CASE("solve_lp: negative right-hand sides need phase one") {
  // min -x1 + x2 s.t. -4x1 - x2 <= -5, x1 - 4x2 <= -3, 2x1 - x2 <= 8
  Eigen::MatrixXd a(3, 2);
  a << -4, -1, 1, -4, 2, -1;
  auto lp = make_lp(a, Eigen::Vector3d(-5, -3, 8), Eigen::Vector2d(-1, 1),
                    std::vector<Relation>(3, Relation::kLessEqual));
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x(0) == doctest::Approx(5));
  CHECK(r.x(1) == doctest::Approx(2));
  CHECK(r.objective == doctest::Approx(-3));
  CHECK(r.duals.dot(lp.b) == doctest::Approx(r.objective));
}

TEST_CASE("solve_lp: equality constraints") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 1, -1;
  auto lp = make_lp(a, Eigen::Vector2d(2, 0), Eigen::Vector2d(1, 2),
                    {Relation::kEqual, Relation::kEqual});
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.x(0) == doctest::Approx(1));
  CHECK(r.x(1) == doctest::Approx(1));
  CHECK(r.duals.dot(lp.b) == doctest::Approx(3));
}

TEST_CASE("solve_lp: redundant equality row keeps a zero artificial") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 2, 2;
  auto lp = make_lp(a, Eigen::Vector2d(1, 2), Eigen::Vector2d(1, 3),
                    {Relation::kEqual, Relation::kEqual});
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1));
}

TEST_CASE("solve_lp: infeasible and unbounded problems are reported") {
  Eigen::MatrixXd a(2, 1);
  a << 1, 1;
  auto infeasible = make_lp(a, Eigen::Vector2d(2, 1), Eigen::VectorXd::Ones(1),
                            {Relation::kGreaterEqual, Relation::kLessEqual});
  CHECK(solve_lp(infeasible).status == LpStatus::kInfeasible);

  auto unbounded = make_lp(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1),
                           -Eigen::VectorXd::Ones(1), {Relation::kGreaterEqual});
  CHECK(solve_lp(unbounded).status == LpStatus::kUnbounded);
}

TEST_CASE("solve_lp: Bland's rule terminates on Beale's cycling example") {
  Eigen::MatrixXd a(3, 4);
  a << 0.25, -60, -1.0 / 25, 9,  //
      0.5, -90, -1.0 / 50, 3,    //
      0, 0, 1, 0;
  Eigen::Vector4d c(-0.75, 150, -1.0 / 50, 6);
  auto lp = make_lp(a, Eigen::Vector3d(0, 0, 1), c,
                    std::vector<Relation>(3, Relation::kLessEqual));
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-0.05));
  CHECK(r.x(0) == doctest::Approx(1.0 / 25));
  CHECK(r.x(2) == doctest::Approx(1));
}

TEST_CASE("solve_lp: iteration cap raises NumericalFailure") {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 2, 3, 2;
  auto lp = make_lp(a, Eigen::Vector3d(4, 12, 18), Eigen::Vector2d(-3, -5),
                    std::vector<Relation>(3, Relation::kLessEqual));
  SimplexOptions opts;
  opts.max_iterations = 1;
  CHECK_THROWS_AS(solve_lp(lp, opts), NumericalFailure);
}

TEST_CASE("solve_lp: mismatched dimensions throw") {
  auto lp = make_lp(Eigen::MatrixXd::Ones(2, 2), Eigen::VectorXd::Ones(3),
                    Eigen::VectorXd::Ones(2), std::vector<Relation>(2, Relation::kEqual));
  CHECK_THROWS_AS(solve_lp(lp), DimensionMismatch);
}

TEST_CASE("solve_lp: strong duality on random covering problems") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int rep = 0; rep < 200; ++rep) {
    const int m = dim(rng), n = dim(rng);
    Eigen::MatrixXd a = Eigen::MatrixXd::NullaryExpr(m, n, [&] { return u(rng); });
    Eigen::VectorXd b = Eigen::VectorXd::NullaryExpr(m, [&] { return u(rng); });
    Eigen::VectorXd c = Eigen::VectorXd::NullaryExpr(n, [&] { return u(rng); });
    auto lp = make_lp(a, b, c, std::vector<Relation>(static_cast<std::size_t>(m),
                                                     Relation::kGreaterEqual));
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(((a * r.x - b).array() >= -1e-9).all());
    CHECK((r.duals.array() >= -1e-12).all());
    CHECK(((a.transpose() * r.duals - c).array() <= 1e-9).all());
    CHECK(std::abs(r.duals.dot(b) - r.objective) <= 1e-9 * std::max(1.0, std::abs(r.objective)));
  }
}
