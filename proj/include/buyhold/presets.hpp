#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "buyhold/market.hpp"

namespace buyhold {

// Circuit-breaker limits: the daily floor 1/alpha and the daily cap beta on
// price moves. Rates are reciprocal prices, so a price floor bounds the rate
// rise (alpha) and a price cap bounds the rate fall (1/beta).
struct CircuitBreaker {
  std::string_view name;
  double alpha_inverse;
  double beta;

  double alpha() const { return 1.0 / alpha_inverse; }
  MarketParams<double> params(int days) const { return {alpha(), beta, days}; }
};

inline constexpr std::array<CircuitBreaker, 7> kCircuitBreakers{{
    {"amsterdam", 0.90, 1.10},
    {"bangkok", 0.90, 1.10},
    {"paris", 0.95, 1.10},
    {"taipei", 0.93, 1.07},
    {"tel-aviv", 0.95, 1.10},
    {"tokyo", 0.95, 1.30},
    {"vienna", 0.95, 1.05},
}};

inline std::optional<CircuitBreaker> find_preset(std::string_view name) {
  for (const auto& p : kCircuitBreakers) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace buyhold
