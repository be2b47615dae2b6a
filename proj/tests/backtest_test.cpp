#include <algorithm>
#include <sstream>

#include "doctest.h"

#include "buyhold/backtest.hpp"
#include "buyhold/presets.hpp"
#include "buyhold/report.hpp"

using namespace buyhold;
using namespace std::chrono;

namespace {

PriceSeries parse(const std::string& text) {
  std::istringstream in(text);
  return load_prices(in);
}

PlanWindow window(std::initializer_list<double> closes) {
  PlanWindow w;
  w.label = "2000-01";
  unsigned d = 3;
  for (double c : closes) w.days.push_back({year{2000} / January / day{d++}, c});
  return w;
}

const ReturnBounds kTaipei{1.0 / 0.93, 1.07};
const ReturnBounds kTwo{2.0, 2.0};

std::vector<NamedStrategy> bal_and_da() { return {bal_strategy(), da_strategy()}; }

}  // namespace

TEST_CASE("parse_date and format_date") {
  const auto d = parse_date("1997-01-02");
  REQUIRE(d.has_value());
  CHECK(*d == year{1997} / January / day{2});
  CHECK(format_date(*d) == "1997-01-02");
  CHECK(format_month(*d) == "1997-01");
  CHECK_FALSE(parse_date("1997-1-02"));
  CHECK_FALSE(parse_date("1997-02-30"));
  CHECK_FALSE(parse_date("19970102"));
  CHECK_FALSE(parse_date("1997-01-02 "));
}

TEST_CASE("load_prices: minimal file") {
  const auto s = parse("date,close\n1997-01-02,100.0\n1997-01-03,107.0");
  REQUIRE(s.size() == 2);
  CHECK(s.points()[1].close == 107.0);
  CHECK_FALSE(s.reordered());
}

TEST_CASE("load_prices: CRLF, BOM and blank lines") {
  const auto s = parse("\xEF\xBB\xBF" "date,close\r\n1997-01-02,100\r\n\r\n1997-01-03,99.5\r\n");
  REQUIRE(s.size() == 2);
  CHECK(s.points()[1].close == 99.5);
}

TEST_CASE("load_prices: malformed input") {
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("date,close\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("no data rows") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("day,price\n1997-01-02,1\n"), ParseError);
  CHECK_THROWS_AS(parse("date,close\n1997-01-02\n"), ParseError);
  CHECK_THROWS_AS(parse("date,close\n1997-01-02,1,2\n"), ParseError);
  CHECK_THROWS_AS(parse("date,close\n1997-01-02,abc\n"), ParseError);

  try {
    parse("date,close\n1997-01-02,1\n1997-13-01,1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == 1);
  }
  try {
    parse("date,close\n1997-01-02,1\n1997-01-03,-4\n");
    FAIL("expected NonPositivePrice");
  } catch (const NonPositivePrice& e) {
    CHECK(e.row() == 3);
    CHECK(e.column() == 2);
  }
  CHECK_THROWS_AS(parse("date,close\n1997-01-02,0\n"), NonPositivePrice);
  CHECK_THROWS_AS(parse("date,close\n1997-01-02,1\n1997-01-02,2\n"), DuplicateDate);
}

TEST_CASE("load_prices: out-of-order rows are sorted and flagged") {
  const auto shuffled =
      parse("date,close\n1997-01-06,3\n1997-01-02,1\n1997-01-03,2\n");
  const auto sorted =
      parse("date,close\n1997-01-02,1\n1997-01-03,2\n1997-01-06,3\n");
  CHECK(shuffled.reordered());
  CHECK_FALSE(sorted.reordered());
  REQUIRE(shuffled.size() == sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    CHECK(shuffled.points()[i].date == sorted.points()[i].date);
    CHECK(shuffled.points()[i].close == sorted.points()[i].close);
  }
  std::ostringstream a, b;
  write_prices(a, shuffled);
  write_prices(b, sorted);
  CHECK(a.str() == b.str());
}

TEST_CASE("write_prices round-trips through load_prices") {
  const auto s = synthesize_prices(kTaipei, {});
  std::ostringstream out;
  write_prices(out, s);
  const auto back = parse(out.str());
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.points()[i].date == s.points()[i].date);
    CHECK(back.points()[i].close == s.points()[i].close);
  }
}

TEST_CASE("segment_monthly") {
  SUBCASE("January to March gives three windows") {
    const auto s = parse(
        "date,close\n1997-01-02,1\n1997-01-03,1\n1997-02-03,1\n1997-02-04,1\n"
        "1997-03-03,1\n1997-03-04,1\n1997-03-05,1\n");
    const auto seg = segment_monthly(s);
    REQUIRE(seg.windows.size() == 3);
    CHECK(seg.windows[0].label == "1997-01");
    CHECK(seg.windows[2].label == "1997-03");
    CHECK(seg.windows[2].size() == 3);
    CHECK(seg.skipped.empty());
  }
  SUBCASE("single-day month is skipped") {
    const auto s =
        parse("date,close\n1997-01-02,1\n1997-01-03,1\n1997-02-03,1\n1997-03-03,1\n1997-03-04,1\n");
    const auto seg = segment_monthly(s);
    CHECK(seg.windows.size() == 2);
    REQUIRE(seg.skipped.size() == 1);
    CHECK(seg.skipped[0] == "1997-02");
  }
  SUBCASE("same month in different years stays separate") {
    const auto s =
        parse("date,close\n1997-01-02,1\n1997-01-03,1\n1998-01-02,1\n1998-01-05,1\n");
    CHECK(segment_monthly(s).windows.size() == 2);
  }
  SUBCASE("twelve synthetic months") {
    const auto seg = segment_monthly(synthesize_prices(kTaipei, {}));
    CHECK(seg.windows.size() == 12);
    CHECK(seg.skipped.empty());
    for (const auto& w : seg.windows) {
      CHECK(w.size() >= 20);
      CHECK(w.size() <= 23);
    }
  }
}

TEST_CASE("run_plan: flat prices") {
  const auto w = window({100, 100, 100, 100});
  for (const auto& s : bal_and_da()) {
    const auto r = run_plan(s.make, w, kTaipei);
    CHECK(r.shares == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(r.realized_ratio == doctest::Approx(1).epsilon(1e-14));
    CHECK(r.violations.empty());
  }
}

TEST_CASE("run_plan: downturn window realizes the BAL ratio") {
  const auto r = run_plan(bal_strategy().make, window({0.5, 0.25, 0.5}), kTwo);
  CHECK(std::abs(r.realized_ratio - 5.0 / 3) < 1e-12);
  CHECK(r.shares == doctest::Approx(2.4));
  CHECK(r.currency_value == doctest::Approx(1.2));
  CHECK(r.violations.empty());
}

TEST_CASE("run_plan: length mismatch") {
  const auto fixed = fixed_strategy("F", Eigen::Vector2d(0.5, 0.5));
  CHECK_THROWS_AS(run_plan(fixed.make, window({1, 1, 1}), kTwo), LengthMismatch);
  CHECK_NOTHROW(run_plan(fixed.make, window({1, 1}), kTwo));
}

TEST_CASE("run_plan: violations are reported and the window still evaluated") {
  // Price halves on day 3: the rate doubles, above alpha = 1/0.93.
  const auto r = run_plan(bal_strategy().make, window({100, 101, 50.5, 51}), kTaipei);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].day == 3);
  CHECK(r.violations[0].factor == doctest::Approx(2.0));
  CHECK(r.violations[0].high == doctest::Approx(1.0 / 0.93));
  CHECK(r.violations[0].low == doctest::Approx(1.0 / 1.07));
  CHECK(r.realized_ratio >= 1.0);

  // A jump in price beyond beta is a downward rate violation.
  const auto up = run_plan(da_strategy().make, window({100, 120}), kTaipei);
  REQUIRE(up.violations.size() == 1);
  CHECK(up.violations[0].factor < up.violations[0].low);
}

TEST_CASE("find_violations honours the relative slack") {
  // Exactly at the bound, then a hair beyond it.
  const double a = kTaipei.alpha;
  CHECK(find_violations(window({a, 1.0}), kTaipei).empty());
  CHECK(find_violations(window({a * (1 + 1e-12), 1.0}), kTaipei).empty());
  CHECK(find_violations(window({a * (1 + 1e-6), 1.0}), kTaipei).size() == 1);
  CHECK(find_violations(window({a * (1 + 1e-6), 1.0}), kTaipei, 1e-3).empty());
}

TEST_CASE("admissible windows respect the theoretical bounds") {
  const auto series = synthesize_prices(kTaipei, {.seed = 7, .months = 24});
  for (const auto& w : segment_monthly(series).windows) {
    CHECK(find_violations(w, kTaipei).empty());
    const auto p = kTaipei.for_days(w.size());
    const auto bal = run_plan(bal_strategy().make, w, kTaipei);
    const auto da = run_plan(da_strategy().make, w, kTaipei);
    CHECK(bal.realized_ratio <= bal_ratio(p) + 1e-9);
    CHECK(da.realized_ratio <= da_ratio(p) + 1e-9);
    CHECK(bal.realized_ratio >= 1.0 - 1e-12);
    CHECK(da.realized_ratio >= 1.0 - 1e-12);
  }
}

TEST_CASE("realized ratio is scale invariant") {
  const auto series = synthesize_prices(kTaipei, {.seed = 3, .months = 3});
  for (const auto& w : segment_monthly(series).windows) {
    for (double lambda : {1e-3, 0.7, 13.0, 4096.0}) {
      PlanWindow scaled = w;
      for (auto& d : scaled.days) d.close *= lambda;
      const auto a = run_plan(bal_strategy().make, w, kTaipei);
      const auto b = run_plan(bal_strategy().make, scaled, kTaipei);
      CHECK(std::abs(a.realized_ratio - b.realized_ratio) <= 1e-10);
      CHECK(b.violations.size() == a.violations.size());
    }
  }
}

TEST_CASE("accounting identity") {
  const auto series = synthesize_prices(kTaipei, {.seed = 5, .months = 6});
  const auto report = compare_report(series, kTaipei, bal_and_da());
  const auto seg = segment_monthly(series);
  for (const auto& row : summary_rows(report)) {
    const auto& win = *std::find_if(seg.windows.begin(), seg.windows.end(),
                                    [&](const PlanWindow& x) { return x.label == row.label; });
    CHECK(std::abs(row.currency_value / row.shares / win.last_close() - 1) <= 1e-12);
  }
}

TEST_CASE("compare_report") {
  SUBCASE("twelve months, two strategies, 24 rows") {
    const auto report = compare_report(synthesize_prices(kTaipei, {}), kTaipei, bal_and_da());
    CHECK(report.windows.size() == 12);
    CHECK(summary_rows(report).size() == 24);
    for (const auto& row : summary_rows(report)) CHECK(row.violation_count == 0);
    for (std::size_t i = 1; i < report.windows.size(); ++i) {
      CHECK(report.windows[i - 1].label < report.windows[i].label);
    }
  }
  SUBCASE("injected violation flags exactly one window") {
    auto pts = synthesize_prices(kTaipei, {}).points();
    for (std::size_t i = 30; i < pts.size(); ++i) pts[i].close *= 0.5;
    const auto report = compare_report(PriceSeries(pts), kTaipei, bal_and_da());
    const auto rows = summary_rows(report);
    CHECK(rows.size() == 24);
    std::size_t flagged = 0;
    for (const auto& row : rows) flagged += row.violation_count;
    CHECK(flagged == 2);  // one window, seen by both strategies
  }
  SUBCASE("all-rise month realizes bal_ratio") {
    std::vector<PricePoint> pts;
    double price = 100.0;
    for (unsigned d = 1; d <= 20; ++d) {
      pts.push_back({year{2001} / March / day{d}, price});
      price /= kTaipei.alpha;
    }
    const auto report = compare_report(PriceSeries(pts), kTaipei, bal_and_da());
    REQUIRE(report.windows.size() == 1);
    const auto& bal = report.windows[0].strategies[0];
    REQUIRE(bal.result.has_value());
    CHECK(bal.result->violations.empty());
    CHECK(std::abs(bal.result->realized_ratio - bal_ratio(kTaipei.for_days(20))) <= 1e-9);
  }
  SUBCASE("strategy errors become annotated skips") {
    std::vector<NamedStrategy> s = bal_and_da();
    s.push_back(fixed_strategy("FIXED3", Eigen::Vector3d(0.2, 0.3, 0.5)));
    const auto report = compare_report(synthesize_prices(kTaipei, {}), kTaipei, s);
    CHECK(report.windows.size() == 12);
    for (const auto& w : report.windows) {
      REQUIRE(w.strategies.size() == 3);
      CHECK_FALSE(w.strategies[2].result.has_value());
      CHECK_FALSE(w.strategies[2].skip_reason.empty());
    }
    CHECK(summary_rows(report).size() == 24);
  }
  SUBCASE("no strategies") {
    CHECK_THROWS_AS(compare_report(synthesize_prices(kTaipei, {}), kTaipei, {}), InvalidArgument);
  }
}

TEST_CASE("synthesize_prices") {
  const auto a = synthesize_prices(kTaipei, {});
  const auto b = synthesize_prices(kTaipei, {});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.points()[i].close == b.points()[i].close);
  CHECK(a.points().front().date == year{1997} / January / day{1});
  for (const auto& p : a.points()) {
    CHECK(weekday{sys_days{p.date}} != Saturday);
    CHECK(weekday{sys_days{p.date}} != Sunday);
  }
  const auto c = synthesize_prices(kTaipei, {.seed = 1998});
  CHECK(c.points()[5].close != a.points()[5].close);
  CHECK(segment_monthly(synthesize_prices(kTaipei, {.months = 3})).windows.size() == 3);
}

TEST_CASE("report output is byte-identical across runs") {
  const auto make = [] {
    const auto series = synthesize_prices(kTaipei, {.seed = 11});
    const auto report = compare_report(series, kTaipei, bal_and_da());
    return report_json(report).dump(2) + report_csv(report) + report_text(report) +
           report_svg(report);
  };
  CHECK(make() == make());
}
