// buyhold: balanced buy-and-hold strategies, game solving, and backtests.
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "buyhold/backtest.hpp"
#include "buyhold/errors.hpp"
#include "buyhold/game.hpp"
#include "buyhold/market.hpp"
#include "buyhold/matrix_io.hpp"
#include "buyhold/presets.hpp"
#include "buyhold/report.hpp"

namespace {

using namespace buyhold;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string preset;
  int days = 0;
  std::string format = "text";
  std::string out;
  double tolerance = kViolationSlack;
  std::uint64_t seed = 1997;

  // weights
  std::string matrix_out;
  // solve / backtest
  std::string input;
  // sweep
  int from = 2;
  int to = 100;
  // backtest
  std::vector<double> custom_weights;
  // synth
  int months = 12;
  std::string start = "1997-01";
  double start_price = 100.0;
};

void add_market_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--alpha", cfg.alpha, "maximum daily rate up-factor (> 1)");
  cmd->add_option("--beta", cfg.beta, "reciprocal of the maximum daily rate down-factor (> 1)");
  cmd->add_option("--preset", cfg.preset, "circuit-breaker preset, e.g. taipei");
}

void add_output_flags(CLI::App* cmd, Config& cfg, const std::vector<std::string>& formats) {
  cmd->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out, "write output to PATH instead of stdout");
}

ReturnBounds resolve_bounds(const Config& cfg) {
  const bool manual = cfg.alpha.has_value() || cfg.beta.has_value();
  if (!cfg.preset.empty()) {
    if (manual) throw UsageError("use either --preset or --alpha/--beta, not both");
    const auto p = find_preset(cfg.preset);
    if (!p) throw UsageError("unknown preset '" + cfg.preset + "'");
    return {p->alpha(), p->beta};
  }
  if (!cfg.alpha || !cfg.beta) throw UsageError("give --alpha and --beta, or --preset");
  if (!(*cfg.alpha > 1.0) || !(*cfg.beta > 1.0)) {
    throw UsageError("--alpha and --beta must both exceed 1");
  }
  return {*cfg.alpha, *cfg.beta};
}

MarketParams<double> resolve_params(const Config& cfg) {
  const auto b = resolve_bounds(cfg);
  if (cfg.days < 2) throw UsageError("--days must be at least 2");
  return b.for_days(cfg.days);
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw DataError("cannot open output file '" + cfg.out + "'");
  f << text;
}

std::string join(const VectorX<double>& v, const char* sep) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_number(v(i));
  }
  return s;
}

json to_json(const VectorX<double>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(round_significant(v(i)));
  return a;
}

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  throw UsageError("format '" + cfg.format + "' is not supported by this command");
}

int cmd_weights(const Config& cfg) {
  require_format(cfg, {"text", "json", "csv"});
  const auto p = resolve_params(cfg);
  const auto b = bal_weights(p).weights();
  const auto c = bal_adversary(p).weights();
  const double r = bal_ratio(p);

  if (!cfg.matrix_out.empty()) {
    std::ofstream f(cfg.matrix_out, std::ios::binary);
    if (!f) throw DataError("cannot open matrix output file '" + cfg.matrix_out + "'");
    write_matrix_csv(f, payoff_matrix_K(p).matrix());
  }

  std::ostringstream o;
  if (cfg.format == "json") {
    json j{{"alpha", round_significant(p.alpha)},
           {"beta", round_significant(p.beta)},
           {"days", p.days},
           {"weights", to_json(b)},
           {"adversary", to_json(c)},
           {"ratio", round_significant(r)}};
    o << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    o << "day,weight,adversary,ratio\n";
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      o << i + 1 << ',' << format_number(b(i)) << ',' << format_number(c(i)) << ','
        << format_number(r) << '\n';
    }
  } else {
    o << "alpha " << format_number(p.alpha) << "\nbeta " << format_number(p.beta) << "\ndays "
      << p.days << "\nratio " << format_number(r) << "\nweights " << join(b, " ")
      << "\nadversary " << join(c, " ") << '\n';
  }
  emit(cfg, o.str());
  return 0;
}

int cmd_solve(const Config& cfg) {
  require_format(cfg, {"text", "json", "csv"});
  std::ifstream f(cfg.input, std::ios::binary);
  if (!f) throw DataError("cannot open matrix file '" + cfg.input + "'");
  const auto h = load_matrix_csv(f);
  const auto sol = solve_game(h);

  std::ostringstream o;
  if (cfg.format == "json") {
    json j{{"route", route_name(sol.route)},
           {"value", round_significant(sol.value)},
           {"ratio", round_significant(sol.ratio)},
           {"unique", sol.unique},
           {"online", to_json(sol.online.weights())},
           {"adversary", to_json(sol.adversary.weights())}};
    o << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    o << "route,value,ratio,unique,online,adversary\n"
      << route_name(sol.route) << ',' << format_number(sol.value) << ','
      << format_number(sol.ratio) << ',' << (sol.unique ? "true" : "false") << ','
      << join(sol.online.weights(), " ") << ',' << join(sol.adversary.weights(), " ") << '\n';
  } else {
    o << "route " << route_name(sol.route) << "\nvalue " << format_number(sol.value)
      << "\nratio " << format_number(sol.ratio) << "\nunique "
      << (sol.unique ? "true" : "false") << "\nonline " << join(sol.online.weights(), " ")
      << "\nadversary " << join(sol.adversary.weights(), " ") << '\n';
  }
  emit(cfg, o.str());
  return 0;
}

int cmd_sweep(const Config& cfg) {
  const auto b = resolve_bounds(cfg);
  if (cfg.from < 2 || cfg.to > 10000 || cfg.to < cfg.from) {
    throw UsageError("sweep range must satisfy 2 <= --from <= --to <= 10000");
  }
  const auto rows = sweep_ratios(b.alpha, b.beta, cfg.from, cfg.to);

  std::ostringstream o;
  if (cfg.format == "json") {
    json a = json::array();
    for (const auto& r : rows) {
      a.push_back({{"n", r.days}, {"bal", round_significant(r.bal)}, {"da", round_significant(r.da)}});
    }
    o << json{{"alpha", round_significant(b.alpha)}, {"beta", round_significant(b.beta)}, {"rows", a}}
             .dump(2)
      << '\n';
  } else if (cfg.format == "csv") {
    o << "n,bal_ratio,da_ratio\n";
    for (const auto& r : rows) {
      o << r.days << ',' << format_number(r.bal) << ',' << format_number(r.da) << '\n';
    }
  } else if (cfg.format == "svg") {
    std::vector<std::string> labels;
    ChartSeries bal{"BAL", {}, false}, da{"DA", {}, true};
    for (const auto& r : rows) {
      labels.push_back(std::to_string(r.days));
      bal.values.push_back(r.bal);
      da.values.push_back(r.da);
    }
    o << svg_line_chart("Competitive ratios of BAL and DA by horizon", labels, {da, bal});
  } else {
    o << "n bal da\n";
    for (const auto& r : rows) {
      o << r.days << ' ' << format_number(r.bal) << ' ' << format_number(r.da) << '\n';
    }
  }
  emit(cfg, o.str());
  return 0;
}

int cmd_downturns(const Config& cfg) {
  require_format(cfg, {"text", "json", "csv"});
  const auto p = resolve_params(cfg);
  const auto seqs = downturns(p);

  std::ostringstream o;
  if (cfg.format == "json") {
    json a = json::array();
    for (const auto& e : seqs) a.push_back(to_json(e.rates()));
    o << json{{"alpha", round_significant(p.alpha)},
              {"beta", round_significant(p.beta)},
              {"days", p.days},
              {"downturns", a}}
             .dump(2)
      << '\n';
  } else if (cfg.format == "csv") {
    for (const auto& e : seqs) o << join(e.rates(), ",") << '\n';
  } else {
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      o << "e_" << j + 1 << ' ' << join(seqs[j].rates(), " ") << '\n';
    }
  }
  emit(cfg, o.str());
  return 0;
}

int cmd_backtest(const Config& cfg) {
  const auto b = resolve_bounds(cfg);
  if (!(cfg.tolerance >= 0.0)) throw UsageError("--tolerance must be nonnegative");
  std::ifstream f(cfg.input, std::ios::binary);
  if (!f) throw DataError("cannot open prices file '" + cfg.input + "'");
  const auto series = load_prices(f);

  std::vector<NamedStrategy> strategies{bal_strategy(), da_strategy()};
  if (!cfg.custom_weights.empty()) {
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(
        cfg.custom_weights.data(), static_cast<Eigen::Index>(cfg.custom_weights.size()));
    try {
      strategies.push_back(fixed_strategy("custom", w));
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--weights: ") + e.what());
    }
  }
  const auto report = compare_report(series, b, strategies, cfg.tolerance);
  if (series.reordered()) std::cerr << "warning: input rows were not in date order; sorted\n";

  if (cfg.format == "json") {
    emit(cfg, report_json(report).dump(2) + "\n");
  } else if (cfg.format == "csv") {
    emit(cfg, report_csv(report));
  } else if (cfg.format == "svg") {
    emit(cfg, report_svg(report));
  } else {
    emit(cfg, report_text(report));
  }
  return 0;
}

int cmd_synth(const Config& cfg) {
  require_format(cfg, {"text", "csv"});
  const auto b = resolve_bounds(cfg);
  const auto start = parse_date(cfg.start + "-01");
  if (!start) throw UsageError("--start must be YYYY-MM");
  if (cfg.months < 1) throw UsageError("--months must be positive");
  if (!(cfg.start_price > 0.0)) throw UsageError("--start-price must be positive");
  SynthOptions opts;
  opts.seed = cfg.seed;
  opts.months = cfg.months;
  opts.start = start->year() / start->month();
  opts.start_price = cfg.start_price;
  std::ostringstream o;
  write_prices(o, synthesize_prices(b, opts));
  emit(cfg, o.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Optimal static buy-and-hold strategies under bounded daily returns"};
  app.require_subcommand(1);

  const std::vector<std::string> table_formats{"text", "json", "csv"};
  const std::vector<std::string> chart_formats{"text", "json", "csv", "svg"};

  auto* weights = app.add_subcommand("weights", "balanced strategy weights and competitive ratio");
  add_market_flags(weights, cfg);
  weights->add_option("--days", cfg.days, "horizon n (>= 2)")->required();
  weights->add_option("--matrix-out", cfg.matrix_out, "also write the payoff matrix K as CSV");
  add_output_flags(weights, cfg, table_formats);

  auto* solve = app.add_subcommand("solve", "solve a zero-sum game from a CSV payoff matrix");
  solve->add_option("matrix", cfg.input, "CSV matrix, row-major, no header")->required();
  add_output_flags(solve, cfg, table_formats);

  auto* sweep = app.add_subcommand("sweep", "competitive ratios of BAL and DA over a horizon range");
  add_market_flags(sweep, cfg);
  sweep->add_option("--from", cfg.from, "first horizon")->capture_default_str();
  sweep->add_option("--to", cfg.to, "last horizon")->capture_default_str();
  add_output_flags(sweep, cfg, chart_formats);

  auto* down = app.add_subcommand("downturns", "the n adversarial downturn sequences");
  add_market_flags(down, cfg);
  down->add_option("--days", cfg.days, "horizon n (>= 2)")->required();
  add_output_flags(down, cfg, table_formats);

  auto* backtest = app.add_subcommand("backtest", "monthly BAL and DA plans on a price CSV");
  add_market_flags(backtest, cfg);
  backtest->add_option("prices", cfg.input, "CSV with header date,close")->required();
  backtest->add_option("--tolerance", cfg.tolerance, "relative slack for bound violations")
      ->capture_default_str();
  backtest->add_option("--weights", cfg.custom_weights, "extra fixed static strategy")
      ->delimiter(',');
  add_output_flags(backtest, cfg, chart_formats);

  auto* synth = app.add_subcommand("synth", "seeded synthetic admissible price CSV");
  add_market_flags(synth, cfg);
  synth->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  synth->add_option("--months", cfg.months, "number of calendar months")->capture_default_str();
  synth->add_option("--start", cfg.start, "first month, YYYY-MM")->capture_default_str();
  synth->add_option("--start-price", cfg.start_price, "first close")->capture_default_str();
  add_output_flags(synth, cfg, {"text", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*weights) return cmd_weights(cfg);
    if (*solve) return cmd_solve(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*down) return cmd_downturns(cfg);
    if (*backtest) return cmd_backtest(cfg);
    if (*synth) return cmd_synth(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
