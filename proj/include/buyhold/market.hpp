#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "buyhold/errors.hpp"
#include "buyhold/game.hpp"
#include "buyhold/linalg.hpp"

namespace buyhold {

/// Bounded daily return market: each day's rate e' satisfies
/// e / beta <= e' <= e * alpha, over a horizon of `days` trading days.
template <typename Scalar>
struct MarketParams {
  Scalar alpha;
  Scalar beta;
  int days;

  MarketParams(Scalar up, Scalar down, int horizon) : alpha(up), beta(down), days(horizon) {
    using std::isfinite;
    if (!isfinite(alpha) || !(alpha > Scalar(1))) {
      throw InvalidArgument("MarketParams: alpha must be a finite real > 1");
    }
    if (!isfinite(beta) || !(beta > Scalar(1))) {
      throw InvalidArgument("MarketParams: beta must be a finite real > 1");
    }
    if (days < 2) throw InvalidArgument("MarketParams: horizon must be at least 2 days");
  }

  MarketParams with_days(int horizon) const { return MarketParams(alpha, beta, horizon); }
  MarketParams swapped() const { return MarketParams(beta, alpha, days); }
};

/// Exchange rates e_1..e_n (shares per unit of capital); e_0 = 1 is implicit.
template <typename Scalar>
class RateSequence {
 public:
  explicit RateSequence(VectorX<Scalar> rates) : e_(std::move(rates)) {
    using std::isfinite;
    if (e_.size() < 1) throw InvalidArgument("RateSequence: empty");
    for (Eigen::Index i = 0; i < e_.size(); ++i) {
      if (!isfinite(e_(i)) || !(e_(i) > Scalar(0))) {
        throw InvalidArgument("RateSequence: rates must be finite and positive");
      }
    }
  }

  Eigen::Index size() const { return e_.size(); }
  Scalar operator()(Eigen::Index i) const { return e_(i); }
  const VectorX<Scalar>& rates() const { return e_; }

 private:
  VectorX<Scalar> e_;
};

/// Dollars invested on each day from an initial capital of one dollar.
/// Equivalently, a mixture of trade-once algorithms.
template <typename Scalar>
class StaticStrategy : public MixedStrategy<Scalar> {
 public:
  explicit StaticStrategy(VectorX<Scalar> weights) : MixedStrategy<Scalar>(std::move(weights)) {}
  explicit StaticStrategy(const MixedStrategy<Scalar>& m) : MixedStrategy<Scalar>(m) {}

  // Invests the whole dollar on `day` (zero-based).
  static StaticStrategy trade_once(int days, int day) {
    if (day < 0 || day >= days) throw InvalidArgument("trade_once: day out of range");
    VectorX<Scalar> w = VectorX<Scalar>::Zero(days);
    w(day) = Scalar(1);
    return StaticStrategy(std::move(w));
  }
};

inline constexpr double kAdmissibilitySlack = 1e-12;

/// True when every step satisfies the daily bounds, starting from e_0 = 1.
template <typename Scalar>
bool validate_sequence(const MarketParams<Scalar>& params, const RateSequence<Scalar>& e,
                       Scalar relative_slack = Scalar(kAdmissibilitySlack)) {
  if (e.size() != params.days) {
    throw LengthMismatch("validate_sequence: sequence length " + std::to_string(e.size()) +
                         " differs from horizon " + std::to_string(params.days));
  }
  Scalar prev(1);
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    const Scalar lo = prev / params.beta * (Scalar(1) - relative_slack);
    const Scalar hi = prev * params.alpha * (Scalar(1) + relative_slack);
    if (e(i) < lo || e(i) > hi) return false;
    prev = e(i);
  }
  return true;
}

/// Accumulation of the optimal offline algorithm: trade everything on the
/// best day.
template <typename Scalar>
Scalar offline_optimum(const RateSequence<Scalar>& e) {
  return e.rates().maxCoeff();
}

template <typename Scalar>
Scalar evaluate_static(const StaticStrategy<Scalar>& s, const RateSequence<Scalar>& e) {
  if (s.size() != e.size()) {
    throw LengthMismatch("evaluate_static: strategy and sequence lengths differ");
  }
  return s.weights().dot(e.rates());
}

/// The n downturns: rise by alpha for j days, then fall by 1/beta each day.
/// Element j-1 of the result is downturn j.
template <typename Scalar>
std::vector<RateSequence<Scalar>> downturns(const MarketParams<Scalar>& params) {
  const int n = params.days;
  std::vector<RateSequence<Scalar>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    VectorX<Scalar> e(n);
    Scalar rate(1);
    for (int i = 0; i < n; ++i) {
      rate = i < j ? rate * params.alpha : rate / params.beta;
      e(i) = rate;
    }
    out.emplace_back(std::move(e));
  }
  return out;
}

/// K(i, j) = alpha^(i-j) for i <= j, beta^(j-i) otherwise (one-based),
/// i.e. the payoff of trade-once day i against downturn j.
template <typename Scalar>
PayoffMatrix<Scalar> payoff_matrix_K(const MarketParams<Scalar>& params) {
  using std::pow;
  const int n = params.days;
  MatrixX<Scalar> k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k(i, j) = i <= j ? pow(params.alpha, Scalar(i - j)) : pow(params.beta, Scalar(j - i));
    }
  }
  return PayoffMatrix<Scalar>(std::move(k));
}

template <typename Scalar>
Scalar det_K_closed_form(const MarketParams<Scalar>& params) {
  using std::pow;
  return pow(Scalar(1) - Scalar(1) / (params.alpha * params.beta), Scalar(params.days - 1));
}

namespace detail {

// n*alpha*beta - (n-1)(alpha+beta) + (n-2)
template <typename Scalar>
Scalar balanced_denominator(const MarketParams<Scalar>& p) {
  const Scalar n(p.days);
  return n * p.alpha * p.beta - (n - Scalar(1)) * (p.alpha + p.beta) + (n - Scalar(2));
}

}  // namespace detail

/// Weights of the balanced strategy BAL.
template <typename Scalar>
StaticStrategy<Scalar> bal_weights(const MarketParams<Scalar>& params) {
  const Scalar a = params.alpha, b = params.beta;
  const Scalar d = detail::balanced_denominator(params);
  const int n = params.days;
  VectorX<Scalar> w = VectorX<Scalar>::Constant(n, (a - Scalar(1)) * (b - Scalar(1)) / d);
  w(0) = a * (b - Scalar(1)) / d;
  w(n - 1) = (a - Scalar(1)) * b / d;
  // The closed form sums to one exactly; remove rounding drift.
  w /= w.sum();
  return StaticStrategy<Scalar>(std::move(w));
}

/// Adversary's optimal mix over the downturns: BAL with first and last
/// components exchanged.
template <typename Scalar>
MixedStrategy<Scalar> bal_adversary(const MarketParams<Scalar>& params) {
  VectorX<Scalar> w = bal_weights(params).weights();
  std::swap(w(0), w(w.size() - 1));
  return MixedStrategy<Scalar>(std::move(w));
}

/// Competitive ratio of BAL, the smallest achievable by any static algorithm.
template <typename Scalar>
Scalar bal_ratio(const MarketParams<Scalar>& params) {
  return detail::balanced_denominator(params) / (params.alpha * params.beta - Scalar(1));
}

/// Dollar averaging: 1/n per day.
template <typename Scalar>
StaticStrategy<Scalar> da_weights(int days) {
  if (days < 2) throw InvalidArgument("da_weights: horizon must be at least 2 days");
  return StaticStrategy<Scalar>(VectorX<Scalar>::Constant(days, Scalar(1) / Scalar(days)));
}

template <typename Scalar>
Scalar da_ratio(const MarketParams<Scalar>& params) {
  using std::pow;
  const Scalar n(params.days);
  const auto term = [&](Scalar f) {
    return n * (Scalar(1) - Scalar(1) / f) / (Scalar(1) - pow(f, -n));
  };
  return std::max(term(params.alpha), term(params.beta));
}

/// A(e_j) / S(e_j) for each downturn j.
template <typename Scalar>
VectorX<Scalar> downturn_ratios(const StaticStrategy<Scalar>& s,
                                const MarketParams<Scalar>& params) {
  if (s.size() != params.days) {
    throw LengthMismatch("downturn_ratios: strategy length differs from horizon");
  }
  const auto seqs = downturns(params);
  VectorX<Scalar> out(params.days);
  for (int j = 0; j < params.days; ++j) {
    const auto& e = seqs[static_cast<std::size_t>(j)];
    const Scalar got = evaluate_static(s, e);
    if (!(got > Scalar(0))) {
      throw DivisionByZero("downturn_ratios: strategy accumulates nothing on downturn " +
                           std::to_string(j + 1));
    }
    out(j) = offline_optimum(e) / got;
  }
  return out;
}

/// Competitive ratio of any static strategy. The downturns dominate every
/// admissible sequence, so the worst case is the worst downturn.
template <typename Scalar>
Scalar static_ratio_via_downturns(const StaticStrategy<Scalar>& s,
                                  const MarketParams<Scalar>& params) {
  return downturn_ratios(s, params).maxCoeff();
}

}  // namespace buyhold
