#include "cli_app.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "ginin/bounds.hpp"
#include "ginin/distortion.hpp"
#include "ginin/elicitability.hpp"
#include "ginin/errors.hpp"
#include "ginin/estimation.hpp"
#include "ginin/gini.hpp"
#include "ginin/ingest.hpp"
#include "ginin/quantile.hpp"

namespace ginin::cli {

namespace {

using nlohmann::json;

std::string digits9(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.9g", v);
  return buffer;
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != token.size() || token.empty()) {
      throw std::domain_error(std::string("cannot parse ") + what + " list near '" + token + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::domain_error(std::string(what) + " list is empty");
  return values;
}

std::vector<int> parse_order_list(const std::string& text) {
  std::vector<int> orders;
  for (double v : parse_number_list(text, "order")) {
    const int n = static_cast<int>(v);
    if (v != n || n < 2) throw std::domain_error("orders must be integers >= 2");
    orders.push_back(n);
  }
  return orders;
}

// family:p1[,p2[,p3]] e.g. pareto:3,2 lognormal:0,1 twopoint:0,1,0.5
ParametricDistribution parse_distribution(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::domain_error("--dist expects family:p1[,p2[,p3]] (e.g. pareto:3,2)");
  }
  const std::string family = spec.substr(0, colon);
  const auto params = parse_number_list(spec.substr(colon + 1), "parameter");
  const auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw std::domain_error("--dist " + family + " expects " + std::to_string(k) +
                              " parameter(s)");
    }
  };
  if (family == "bernoulli") {
    need(1);
    return ParametricDistribution::bernoulli(params[0]);
  }
  if (family == "twopoint") {
    need(3);
    return ParametricDistribution::two_point(params[0], params[1], params[2]);
  }
  if (family == "beta") {
    need(2);
    return ParametricDistribution::beta(params[0], params[1]);
  }
  if (family == "lognormal") {
    need(2);
    return ParametricDistribution::log_normal(params[0], params[1]);
  }
  if (family == "exponential") {
    need(1);
    return ParametricDistribution::exponential(params[0]);
  }
  if (family == "pareto") {
    need(2);
    return ParametricDistribution::pareto(params[0], params[1]);
  }
  throw std::domain_error("unknown distribution family '" + family + "'");
}

std::vector<double> read_decimal_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open input file '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != line.size()) {
      throw std::domain_error("input file '" + path + "', line " + std::to_string(line_number) +
                              ": not a decimal number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::domain_error("input file '" + path + "' holds no numbers");
  return values;
}

struct GlobalOptions {
  std::string format = "csv";
  std::uint64_t seed = 0;
  int threads = 1;
};

const char* scheme_name(WeightScheme scheme) {
  return scheme == WeightScheme::PaperWeights ? "paper" : "exact";
}

void emit_estimate(const EstimateReport& report, int order, const std::string& target,
                   const GlobalOptions& global, std::ostream& out) {
  if (global.format == "json") {
    json j{{"target", target},
           {"order", order},
           {"point", report.point},
           {"scheme", scheme_name(report.scheme)},
           {"std_error", report.std_error},
           {"ci_level", report.ci_level},
           {"ci_lo", report.ci_lo},
           {"ci_hi", report.ci_hi},
           {"method", report.method}};
    out << j.dump() << '\n';
    return;
  }
  out << "target,order,point,scheme,std_error,ci_level,ci_lo,ci_hi,method\n";
  out << target << ',' << order << ',' << digits9(report.point) << ','
      << scheme_name(report.scheme) << ',' << digits9(report.std_error) << ','
      << digits9(report.ci_level) << ',' << digits9(report.ci_lo) << ','
      << digits9(report.ci_hi) << ',' << report.method << '\n';
}

int run_or_report(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_or_report(args, out, err);
  } catch (const convergence_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

namespace {

int run_or_report(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"higher-order Gini deviations and coefficients"};
  app.require_subcommand(1);

  GlobalOptions global;
  if (const char* env_seed = std::getenv("GININ_SEED")) {
    global.seed = std::strtoull(env_seed, nullptr, 10);
  }
  app.add_option("--format", global.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}), "format");
  app.add_option("--seed", global.seed, "random seed (overrides GININ_SEED)");
  app.add_option("--threads", global.threads, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  // compute
  auto* compute = app.add_subcommand("compute", "closed-form/quadrature GD_n and GC_n");
  std::string compute_dist, compute_orders;
  compute->add_option("--dist", compute_dist, "family:p1[,p2[,p3]]")->required();
  compute->add_option("--order", compute_orders, "order n or list n1,n2,...")->required();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "estimate GD_n/GC_n from a sample file");
  std::string est_input, est_scheme = "paper", est_target = "gd";
  int est_order = 2;
  std::size_t est_bootstrap = 0;
  double est_level = 0.95;
  estimate->add_option("--input", est_input, "newline-delimited decimal sample")->required();
  estimate->add_option("--order", est_order, "order n")->required()->check(CLI::Range(2, 1000));
  estimate->add_option("--scheme", est_scheme, "rank weights")
      ->check(CLI::IsMember({"paper", "exact"}));
  estimate->add_option("--target", est_target, "estimand")->check(CLI::IsMember({"gd", "gc"}));
  estimate->add_option("--bootstrap", est_bootstrap, "bootstrap replications");
  estimate->add_option("--level", est_level, "confidence level");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "sampling-distribution study");
  std::string sim_dist, sim_target = "gd";
  int sim_order = 5;
  std::size_t sim_size = 5000, sim_reps = 2000;
  simulate->add_option("--dist", sim_dist, "family:p1[,p2]")->required();
  simulate->add_option("--order", sim_order, "order n")->required()->check(CLI::Range(2, 1000));
  simulate->add_option("--sample-size", sim_size, "sample size per replication")->required();
  simulate->add_option("--reps", sim_reps, "replications")->required();
  simulate->add_option("--target", sim_target, "estimand")
      ->required()
      ->check(CLI::IsMember({"gd", "gc"}));

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "sharp bound values with witnesses");
  std::string bounds_kind, bounds_h, bounds_g;
  int bounds_m = 2, bounds_n = 2;
  std::size_t bounds_grid = 100000;
  bounds_cmd->add_option("--kind", bounds_kind, "sd | ratio | choquet")
      ->required()
      ->check(CLI::IsMember({"sd", "ratio", "choquet"}));
  bounds_cmd->add_option("--m", bounds_m, "lower order m");
  bounds_cmd->add_option("--n", bounds_n, "order n");
  bounds_cmd->add_option("--grid", bounds_grid, "scan grid size");
  bounds_cmd->add_option("--h-coeffs", bounds_h, "numerator distortion coefficients c1,c2,...");
  bounds_cmd->add_option("--g-coeffs", bounds_g, "denominator distortion coefficients c1,c2,...");

  // backtest
  auto* backtest = app.add_subcommand("backtest", "comparative forecast backtest");
  std::string bt_variant, bt_input;
  int bt_order = 2;
  double bt_a = 0.0, bt_b = 0.0;
  backtest->add_option("--variant", bt_variant, "score variant")
      ->required()
      ->check(CLI::IsMember({"gd-m2", "gd-m1", "gc-m1"}));
  backtest->add_option("--order", bt_order, "order n")->required()->check(CLI::Range(2, 1000));
  backtest->add_option("--input", bt_input, "newline-delimited decimals, chunked into n-tuples")
      ->required();
  backtest->add_option("--a", bt_a, "forecast a")->required();
  backtest->add_option("--b", bt_b, "forecast b")->required();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "grouped percentile CSV panel");
  std::string an_input, an_orders = "2,5,10,20", an_shares = "0.01,0.1";
  bool an_allow_nonmonotone = false;
  analyze->add_option("--input", an_input, "CSV entity,year,p_lo,p_hi,avg")->required();
  analyze->add_option("--orders", an_orders, "orders, e.g. 2,5,10,20");
  analyze->add_option("--shares", an_shares, "top-share fractions, e.g. 0.01,0.1");
  analyze->add_flag("--allow-nonmonotone", an_allow_nonmonotone,
                    "sort nonmonotone bracket means instead of failing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends print to stdout and succeed.
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << '\n';
    return 1;
  }

  if (compute->parsed()) {
    const auto dist = parse_distribution(compute_dist);
    const auto orders = parse_order_list(compute_orders);
    const QuantileFunction q(dist);
    json rows = json::array();
    std::ostringstream csv;
    csv << "order,gd,gc,method\n";
    for (int n : orders) {
      const GiniOrder order(n);
      const bool closed = dist.closed_form_gd(order).has_value();
      const double gd = gd_n(q, order);
      const double gc = gc_n(q, order);
      const char* method = closed ? "closed-form" : "quadrature";
      csv << n << ',' << digits9(gd) << ',' << digits9(gc) << ',' << method << '\n';
      rows.push_back(json{{"order", n}, {"gd", gd}, {"gc", gc}, {"method", method}});
    }
    if (global.format == "json") {
      out << json{{"dist", dist.name()}, {"rows", rows}}.dump() << '\n';
    } else {
      out << csv.str();
    }
    return 0;
  }

  if (estimate->parsed()) {
    const Sample sample(read_decimal_lines(est_input));
    const GiniOrder order(est_order);
    const WeightScheme scheme =
        est_scheme == "paper" ? WeightScheme::PaperWeights : WeightScheme::ExactChoquet;
    const EstimandTarget target = est_target == "gd" ? EstimandTarget::GD : EstimandTarget::GC;
    EstimateReport report;
    if (est_bootstrap > 0) {
      report = bootstrap_ci(sample, order, target, est_level, est_bootstrap, global.seed, scheme);
    } else {
      report = plugin_asymptotic_report(sample, order, target, est_level, scheme);
    }
    emit_estimate(report, est_order, est_target, global, out);
    return 0;
  }

  if (simulate->parsed()) {
    const auto dist = parse_distribution(sim_dist);
    const EstimandTarget target = sim_target == "gd" ? EstimandTarget::GD : EstimandTarget::GC;
    const SimulationSummary summary = simulate_sampling_distribution(
        dist, GiniOrder(sim_order), sim_size, sim_reps, global.seed, target, global.threads);
    const json j{{"replications", summary.replications},
                 {"estimate_mean", summary.estimate_mean},
                 {"estimate_variance", summary.estimate_variance},
                 {"predicted_mean", summary.predicted_mean},
                 {"predicted_variance_over_N", summary.predicted_variance_over_n},
                 {"ks_distance", summary.ks_distance}};
    out << j.dump() << '\n';
    return 0;
  }

  if (bounds_cmd->parsed()) {
    json j;
    std::ostringstream csv;
    if (bounds_kind == "sd") {
      const double bound = sd_ratio_upper_bound(GiniOrder(bounds_n));
      csv << "kind,n,upper,witness\n";
      csv << "sd," << bounds_n << ',' << digits9(bound)
          << ",step-discretized quantile t -> phi_n(t)/||h_n'||_2\n";
      j = json{{"kind", "sd"},
               {"n", bounds_n},
               {"upper", bound},
               {"witness", "step-discretized quantile t -> phi_n(t)/||h_n'||_2"}};
    } else if (bounds_kind == "ratio") {
      const RatioBound rb = gd_ratio_bounds(GiniOrder(bounds_m), GiniOrder(bounds_n));
      csv << "kind,m,n,lower,upper,lower_witness,upper_witness\n";
      csv << "ratio," << bounds_m << ',' << bounds_n << ',' << digits9(rb.lower) << ','
          << digits9(rb.upper) << ',' << rb.lower_witness << ',' << rb.upper_witness << '\n';
      j = json{{"kind", "ratio"},       {"m", bounds_m},
               {"n", bounds_n},         {"lower", rb.lower},
               {"upper", rb.upper},     {"lower_witness", rb.lower_witness},
               {"upper_witness", rb.upper_witness}};
    } else {
      if (bounds_h.empty() || bounds_g.empty()) {
        throw std::domain_error("bounds --kind choquet needs --h-coeffs and --g-coeffs lists");
      }
      const DistortionFunction h_fn(parse_number_list(bounds_h, "h coefficient"));
      const DistortionFunction g_fn(parse_number_list(bounds_g, "g coefficient"));
      const RatioBound rb = choquet_ratio_bounds(h_fn, g_fn, bounds_grid);
      csv << "kind,lower,upper,lower_witness,upper_witness\n";
      csv << "choquet," << digits9(rb.lower) << ',' << digits9(rb.upper) << ','
          << rb.lower_witness << ',' << rb.upper_witness << '\n';
      j = json{{"kind", "choquet"},
               {"lower", rb.lower},
               {"upper", rb.upper},
               {"lower_witness", rb.lower_witness},
               {"upper_witness", rb.upper_witness}};
    }
    if (global.format == "json") {
      out << j.dump() << '\n';
    } else {
      out << csv.str();
    }
    return 0;
  }

  if (backtest->parsed()) {
    const GiniOrder order(bt_order);
    ScoreVariant variant = bt_variant == "gd-m2"   ? ScoreVariant::gd_squared(order)
                           : bt_variant == "gd-m1" ? ScoreVariant::gd_linear(order)
                                                   : ScoreVariant::gc_linear(order);
    const TupleSet tuples = TupleSet::from_stream(read_decimal_lines(bt_input), bt_order);
    const BacktestReport report = comparative_backtest(variant, bt_a, bt_b, tuples);
    const json j{{"variant", variant.name()},
                 {"n", bt_order},
                 {"forecast_a", bt_a},
                 {"forecast_b", bt_b},
                 {"mean_score_a", report.mean_score_a},
                 {"mean_score_b", report.mean_score_b},
                 {"mean_diff", report.mean_diff},
                 {"t_statistic", report.t_statistic},
                 {"tuples", report.tuple_count},
                 {"degenerate_variance", report.degenerate_variance}};
    if (global.format == "json") {
      out << j.dump() << '\n';
    } else {
      out << "variant,n,forecast_a,forecast_b,mean_score_a,mean_score_b,mean_diff,t_statistic,"
             "tuples,degenerate_variance\n";
      out << variant.name() << ',' << bt_order << ',' << digits9(bt_a) << ',' << digits9(bt_b)
          << ',' << digits9(report.mean_score_a) << ',' << digits9(report.mean_score_b) << ','
          << digits9(report.mean_diff) << ',' << digits9(report.t_statistic) << ','
          << report.tuple_count << ',' << (report.degenerate_variance ? "true" : "false") << '\n';
    }
    return 0;
  }

  if (analyze->parsed()) {
    std::ifstream in(an_input);
    if (!in) throw std::domain_error("cannot open input file '" + an_input + "'");
    ParseOptions options;
    options.allow_nonmonotone = an_allow_nonmonotone;
    const ParseResult parsed = parse_percentile_csv(in, options);
    for (const auto& warning : parsed.warnings) err << "warning: " << warning << '\n';
    const auto orders = parse_order_list(an_orders);
    const auto shares = parse_number_list(an_shares, "share");
    const PanelTable table = gini_panel(parsed.groups, orders, shares);
    for (const auto& row : table.rows) {
      if (!row.error.empty()) {
        err << "row error (" << row.entity << ',' << row.year << "): " << row.error << '\n';
      }
    }
    if (global.format == "json") {
      json rows = json::array();
      for (const auto& row : table.rows) {
        if (!row.error.empty()) continue;
        json r{{"entity", row.entity}, {"year", row.year}};
        for (std::size_t i = 0; i < table.orders.size(); ++i) {
          r["gc_" + std::to_string(table.orders[i])] = row.gc[i];
        }
        for (std::size_t i = 0; i < table.share_alphas.size(); ++i) {
          char name[64];
          std::snprintf(name, sizeof(name), "top_%g", table.share_alphas[i] * 100.0);
          r[name] = row.shares[i];
        }
        rows.push_back(std::move(r));
      }
      out << rows.dump() << '\n';
    } else {
      out << table.to_csv();
    }
    return 0;
  }

  err << "usage error: no subcommand selected\n";
  return 1;
}

}  // namespace

}  // namespace ginin::cli
