#include <chrono>
#include <random>

#include "buyhold/backtest.hpp"
#include "buyhold/report.hpp"

namespace buyhold {

PriceSeries synthesize_prices(const ReturnBounds& bounds, const SynthOptions& options) {
  using namespace std::chrono;
  (void)bounds.for_days(2);
  if (options.months < 1) throw InvalidArgument("synthesize_prices: months must be positive");
  if (!(options.start_price > 0.0)) {
    throw InvalidArgument("synthesize_prices: start price must be positive");
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> factor(1.0 / bounds.beta, bounds.alpha);

  const sys_days first{options.start / day{1}};
  const sys_days end{(options.start + months{options.months}) / day{1}};
  std::vector<PricePoint> points;
  double price = round_significant(options.start_price);
  bool first_day = true;
  for (sys_days d = first; d < end; d += days{1}) {
    const weekday wd{d};
    if (wd == Saturday || wd == Sunday) continue;
    // Rate factor f means the price moves by 1/f.
    if (!first_day) price = round_significant(price / factor(rng));
    first_day = false;
    points.push_back({year_month_day{d}, price});
  }
  return PriceSeries(std::move(points));
}

}  // namespace buyhold
