#include "kurtail/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "kurtail/appendix_search.hpp"
#include "kurtail/chebyshev_bounds.hpp"
#include "kurtail/distributions.hpp"
#include "kurtail/errors.hpp"
#include "kurtail/extreme_point.hpp"
#include "kurtail/output.hpp"
#include "kurtail/return_series_csv.hpp"
#include "kurtail/validator.hpp"

namespace kurtail::cli {

namespace {

struct GlobalOptions {
  std::string format = "csv";
  std::string output;
  std::string precision = "3";
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

int parse_precision(const std::string& s) {
  if (s == "full") return kFullPrecision;
  try {
    std::size_t used = 0;
    const int p = std::stoi(s, &used);
    if (used == s.size() && p >= 0 && p <= 17) return p;
  } catch (const std::exception&) {
  }
  throw UsageError("--precision must be an integer in [0, 17] or 'full'");
}

std::string format_kappa(double kappa) { return format_number(kappa, kFullPrecision); }

Cell count_cell(double n) {
  if (n == std::floor(n) && std::fabs(n) < 9.0e15) {
    return static_cast<std::int64_t>(n);
  }
  return n;
}

// CLI11 turns an empty list element into 0; reject it before conversion.
const CLI::Validator kNoEmptyItems(
    [](std::string& s) { return s.empty() ? std::string("empty list element") : std::string(); }, "", "NONEMPTY");

void require_nonempty(const std::vector<double>& v, const char* flag) {
  if (v.empty()) {
    throw UsageError(std::string(flag) + " needs at least one value");
  }
}

// --- shock-table -----------------------------------------------------------

struct ShockTableArgs {
  std::vector<double> n{250, 500, 1000, 10000, 100000, 1000000, 833208};
  std::vector<double> kappa{7, 10, 13, 16};
};

OutputDocument shock_table(const ShockTableArgs& args) {
  require_nonempty(args.n, "--n");
  require_nonempty(args.kappa, "--kappa");
  OutputDocument doc;
  doc.title = "a = (max - mean)/sigma for given N and kurtosis";
  doc.headers = {"N", "sqrt(N-1)"};
  for (double k : args.kappa) doc.headers.push_back("kappa=" + format_kappa(k));
  for (double n : args.n) {
    std::vector<Cell> row{count_cell(n)};
    row.emplace_back(n >= 1 ? Cell{std::sqrt(n - 1.0)} : Cell{CellError{"N < 1"}});
    for (double k : args.kappa) {
      try {
        row.emplace_back(solve_extreme_point<double>(n, k).a);
      } catch (const DomainError& e) {
        row.emplace_back(CellError{e.what()});
      }
    }
    doc.add_row(std::move(row));
  }
  doc.notes.push_back("N is the number of observations; a solves the kurtosis-constrained extreme point");
  return doc;
}

// --- bounds ----------------------------------------------------------------

struct BoundsArgs {
  std::string method = "zelen";
  std::string value = "auto";
  std::vector<double> n;
  std::vector<double> kappa{7, 10, 13, 16};
};

OutputDocument bounds_table(BoundsArgs args) {
  BoundMethod method;
  if (args.method == "even-moment") {
    method = BoundMethod::even_moment;
  } else if (args.method == "zelen") {
    method = BoundMethod::zelen;
  } else if (args.method == "bhattacharyya") {
    method = BoundMethod::bhattacharyya;
  } else {
    throw UsageError("--method must be even-moment, zelen or bhattacharyya");
  }
  if (args.n.empty()) {
    args.n = method == BoundMethod::bhattacharyya
                 ? std::vector<double>{1e4, 1e5, 1e6, 1e7, 1e8}
                 : std::vector<double>{250, 500, 1000, 1e4, 1e5, 1e6};
  }
  require_nonempty(args.kappa, "--kappa");

  std::string value = args.value;
  if (value == "auto") {
    value = method == BoundMethod::even_moment ? "threshold"
            : method == BoundMethod::zelen     ? "one-in-n"
                                               : "probability";
  }
  if (value != "threshold" && value != "probability" && value != "one-in-n") {
    throw UsageError("--value must be auto, threshold, probability or one-in-n");
  }

  OutputDocument doc;
  doc.title = std::string(to_string(method)) + " bound at the extreme point (" + value + ")";
  doc.headers = {"N"};
  for (double k : args.kappa) doc.headers.push_back("kappa=" + format_kappa(k));
  for (double n : args.n) {
    std::vector<Cell> row{count_cell(n)};
    for (double k : args.kappa) {
      try {
        const auto ev = bound_at_extreme_point<double>(method, n, k);
        if (!ev.valid) {
          row.emplace_back(CellError{to_string(*ev.violation)});
        } else if (value == "threshold") {
          row.emplace_back(ev.threshold_t);
        } else if (value == "probability") {
          row.emplace_back(*ev.probability);
        } else {
          row.emplace_back(*ev.one_in_n);
        }
      } catch (const DomainError& e) {
        row.emplace_back(CellError{e.what()});
      }
    }
    doc.add_row(std::move(row));
  }
  if (method == BoundMethod::even_moment) {
    doc.notes.push_back("threshold is (kappa N)^(1/4) at probability 1/N");
  } else {
    doc.notes.push_back("t = a(N, kappa), theta3 from the extreme point, theta4 = kappa");
  }
  if (method == BoundMethod::bhattacharyya) {
    doc.notes.push_back("one-sided bound on P(X >= t sigma)");
  }
  return doc;
}

// --- tail-factor -----------------------------------------------------------

struct TailFactorArgs {
  std::string model = "normal";
  std::vector<int> dof;
  std::vector<double> horizon{250, 500, 1000, 1e4, 1e5, 1e6};
  std::vector<double> kappa;
};

OutputDocument tail_factor_table(const TailFactorArgs& args, std::ostream& err) {
  require_nonempty(args.horizon, "--horizon");
  const bool student = args.model == "student-t";
  if (!student && args.model != "normal") {
    throw UsageError("--model must be normal or student-t");
  }
  if (student && args.dof.empty()) {
    throw UsageError("--dof is required for --model student-t");
  }
  for (int d : args.dof) {
    if (d <= 2) {
      err << "warning: dof=" << d << " has infinite variance; quantile still computed\n";
    }
  }
  OutputDocument doc;
  doc.title = student ? "Student-t tail factors (raw quantile at 1 - 1/N)" : "Normal tail factors (quantile at 1 - 1/N)";
  doc.headers = {"N", "p"};
  if (student) {
    for (int d : args.dof) doc.headers.push_back("t(dof=" + std::to_string(d) + ")");
  } else {
    doc.headers.push_back("normal");
  }
  for (double k : args.kappa) doc.headers.push_back("a(N, kappa=" + format_kappa(k) + ")");

  for (double n : args.horizon) {
    std::vector<Cell> row{count_cell(n)};
    try {
      row.emplace_back(horizon_probability(n));
    } catch (const DomainError& e) {
      row.emplace_back(CellError{e.what()});
    }
    auto quantile_cell = [&](auto model) -> Cell {
      try {
        return tail_factor(n, model);
      } catch (const DomainError& e) {
        return CellError{e.what()};
      }
    };
    if (student) {
      for (int d : args.dof) row.push_back(quantile_cell(StudentTModel{d}));
    } else {
      row.push_back(quantile_cell(NormalModel{}));
    }
    for (double k : args.kappa) {
      try {
        row.emplace_back(solve_extreme_point<double>(n, k).a);
      } catch (const DomainError& e) {
        row.emplace_back(CellError{e.what()});
      }
    }
    doc.add_row(std::move(row));
  }
  return doc;
}

// --- validate / empirical --------------------------------------------------

struct ValidateArgs {
  std::optional<double> tail_factor;
  std::optional<double> history;
  std::optional<double> kappa;
  bool blr = false;
  std::optional<std::string> g_inv;
  double days_per_year = kDefaultDaysPerYear;
  std::int64_t ceiling = kDefaultHistoryCeiling;
};

void add_verdict_rows(OutputDocument& doc, const ModelVerdict& v, double days_per_year) {
  doc.add_row({std::string("tail_factor"), v.tail_factor});
  doc.add_row({std::string("history_n"), count_cell(v.history_n)});
  doc.add_row({std::string("kappa"), v.kappa});
  doc.add_row({std::string("required_a"), v.required_a});
  doc.add_row({std::string("margin"), v.margin});
  doc.add_row({std::string("kurtosis_feasible"), std::string(v.kurtosis_feasible ? "true" : "false")});
  doc.add_row({std::string("max_safe_history"), to_string(v.max_safe_history)});
  if (v.max_safe_history.bounded()) {
    doc.add_row({std::string("max_safe_history_years"), history_in_years(v.max_safe_history.n, days_per_year)});
  }
  doc.add_row({std::string("verdict"), std::string(v.pass ? "PASS" : "FAIL")});
}

struct CommandResult {
  OutputDocument doc;
  int exit_code = kSuccess;
};

CommandResult validate(const ValidateArgs& args) {
  if (!args.history || !args.kappa) {
    throw UsageError("validate requires --history and --kurtosis");
  }
  OutputDocument doc;
  doc.headers = {"field", "value"};
  ModelVerdict v;
  if (args.blr) {
    if (!args.g_inv) {
      throw UsageError("--blr requires --g-inv (1m..6m)");
    }
    v = validate_blr(*args.g_inv, *args.kappa, *args.history, args.ceiling);
    doc.title = "Brace-Lauer-Rado tail factor validation";
    doc.add_row({std::string("model"), "blr g^-1=" + *args.g_inv});
  } else {
    if (!args.tail_factor) {
      throw UsageError("validate requires --tail-factor (or --blr --g-inv)");
    }
    v = validate_model(*args.tail_factor, *args.history, *args.kappa, args.ceiling);
    doc.title = "Tail factor validation";
    doc.add_row({std::string("model"), std::string("fixed tail factor")});
  }
  add_verdict_rows(doc, v, args.days_per_year);
  return {std::move(doc), v.pass ? kSuccess : kFail};
}

struct EmpiricalArgs {
  std::string file;
  std::optional<double> tail_factor;
  bool echo = false;
  double days_per_year = kDefaultDaysPerYear;
  std::int64_t ceiling = kDefaultHistoryCeiling;
};

CommandResult empirical(const EmpiricalArgs& args) {
  if (args.file.empty() || !args.tail_factor) {
    throw UsageError("empirical requires --file and --tail-factor");
  }
  auto parsed = read_returns_csv(args.file);
  ReturnSeries series;
  try {
    series = make_return_series(std::move(parsed.values), std::move(parsed.dates));
  } catch (const DegenerateData&) {
    throw;
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto report = empirical_validate(series, *args.tail_factor, args.ceiling);
  const int code = report.verdict.pass ? kSuccess : kFail;

  OutputDocument doc;
  if (args.echo) {
    doc.title = "Observations";
    doc.headers = {"date", "value", "deviation_in_sigmas"};
    for (Eigen::Index i = 0; i < series.values.size(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      doc.add_row({series.dates.empty() ? std::string() : series.dates[idx], series.values(i),
                   (series.values(i) - series.mean) / series.sigma});
    }
    return {std::move(doc), code};
  }
  doc.title = "Empirical validation of " + args.file;
  doc.headers = {"field", "value"};
  doc.add_row({std::string("n"), series.n});
  doc.add_row({std::string("mean"), series.mean});
  doc.add_row({std::string("sigma"), series.sigma});
  doc.add_row({std::string("skewness"), series.skewness});
  doc.add_row({std::string("kurtosis"), series.kurtosis});
  doc.add_row({std::string("max_abs_deviation_in_sigmas"), series.max_abs_deviation_in_sigmas});
  doc.add_row({std::string("historical_breach"), std::string(report.historical_breach ? "true" : "false")});
  doc.add_row({std::string("theoretical_exposure"), std::string(report.theoretical_exposure ? "true" : "false")});
  add_verdict_rows(doc, report.verdict, args.days_per_year);
  doc.notes.push_back("population moments (divisor N), non-excess kurtosis");
  if (!report.verdict.kurtosis_feasible) {
    doc.notes.push_back("observed kurtosis outside the closed-form range; required_a is sqrt(N-1)");
  }
  return {std::move(doc), code};
}

// --- appendix --------------------------------------------------------------

struct AppendixArgs {
  std::vector<std::int64_t> n{500, 1000, 2000, 3000, 4000, 5000, 10000};
  double kappa = 16.0;
};

OutputDocument appendix_table(const AppendixArgs& args) {
  if (args.n.empty()) {
    throw UsageError("--n needs at least one value");
  }
  const auto rows = comparison_table(args.n, args.kappa);
  OutputDocument doc;
  doc.title = "Extreme point statistic by base shape, kappa=" + format_kappa(args.kappa);
  doc.headers = {"N-1", "sqrt(N-1)", "bimodal", "trimodal", "two_thirds", "uniform"};
  for (const auto& r : rows) {
    doc.add_row({r.base_count, r.samuelson_bound, r.bimodal, r.trimodal, r.two_thirds, r.uniform});
  }
  doc.notes.push_back("N-1 base points plus one outlier searched to hit the target kurtosis");
  return doc;
}

void emit(const OutputDocument& doc, const GlobalOptions& g, std::ostream& out) {
  const auto text = render(doc, parse_output_format(g.format), parse_precision(g.precision));
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file || !(file << text)) {
    throw UsageError("cannot write '" + g.output + "'");
  }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kurtosis-constrained extreme deviations, tail-factor validation and Chebyshev-type bounds",
               "kurtail"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "markdown"}))
      ->capture_default_str();
  app.add_option("--output", global.output, "Write to this file instead of stdout");
  app.add_option("--precision", global.precision, "Decimals for display, or 'full'")->capture_default_str();

  ShockTableArgs shock;
  auto* shock_cmd = app.add_subcommand("shock-table", "a(N, kappa) grid with the sqrt(N-1) reference");
  shock_cmd->add_option("--n", shock.n, "Observation counts")->check(kNoEmptyItems)->delimiter(',')->capture_default_str();
  shock_cmd->add_option("--kappa", shock.kappa, "Kurtosis values")->check(kNoEmptyItems)->delimiter(',')->capture_default_str();

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Chebyshev-type bounds evaluated at the extreme point");
  bounds_cmd->add_option("--method", bounds.method, "even-moment | zelen | bhattacharyya")
      ->check(CLI::IsMember({"even-moment", "zelen", "bhattacharyya"}))
      ->capture_default_str();
  bounds_cmd->add_option("--value", bounds.value, "auto | threshold | probability | one-in-n")
      ->check(CLI::IsMember({"auto", "threshold", "probability", "one-in-n"}))
      ->capture_default_str();
  bounds_cmd->add_option("--n", bounds.n, "Observation counts")->check(kNoEmptyItems)->delimiter(',');
  bounds_cmd->add_option("--kappa", bounds.kappa, "Kurtosis values")->check(kNoEmptyItems)->delimiter(',')->capture_default_str();

  TailFactorArgs tail;
  auto* tail_cmd = app.add_subcommand("tail-factor", "Quantile at 1 - 1/N for the normal or Student-t model");
  tail_cmd->add_option("--model", tail.model, "normal | student-t")
      ->check(CLI::IsMember({"normal", "student-t"}))
      ->capture_default_str();
  tail_cmd->add_option("--dof", tail.dof, "Degrees of freedom (student-t)")->check(kNoEmptyItems)->delimiter(',');
  tail_cmd->add_option("--horizon", tail.horizon, "1-in-N horizons")->check(kNoEmptyItems)->delimiter(',')->capture_default_str();
  tail_cmd->add_option("--kappa", tail.kappa, "Also tabulate a(N, kappa) for these kurtosis values")
      ->check(kNoEmptyItems)
      ->delimiter(',');

  ValidateArgs val;
  auto* val_cmd = app.add_subcommand("validate", "Check a tail factor against a(N, kappa)");
  val_cmd->add_option("--tail-factor", val.tail_factor, "Shock size in standard deviations");
  val_cmd->add_option("--history", val.history, "History length N");
  val_cmd->add_option("--kurtosis", val.kappa, "Kurtosis (non-excess)");
  val_cmd->add_flag("--blr", val.blr, "Use the published Brace-Lauer-Rado tail factor");
  val_cmd->add_option("--g-inv", val.g_inv, "BLR mean-reversion horizon: 1m..6m");
  val_cmd->add_option("--days-per-year", val.days_per_year, "Business days per year")->capture_default_str();
  val_cmd->add_option("--ceiling", val.ceiling, "Search ceiling for max safe history")->capture_default_str();

  EmpiricalArgs emp;
  auto* emp_cmd = app.add_subcommand("empirical", "Validate a tail factor against a CSV of daily returns");
  emp_cmd->add_option("--file", emp.file, "CSV with 'value' or 'date,value' lines");
  emp_cmd->add_option("--tail-factor", emp.tail_factor, "Shock size in standard deviations");
  emp_cmd->add_flag("--echo", emp.echo, "Print the parsed observations instead of the verdict");
  emp_cmd->add_option("--days-per-year", emp.days_per_year, "Business days per year")->capture_default_str();
  emp_cmd->add_option("--ceiling", emp.ceiling, "Search ceiling for max safe history")->capture_default_str();

  AppendixArgs appx;
  auto* appx_cmd = app.add_subcommand("appendix", "Outlier search over alternative base shapes");
  appx_cmd->add_option("--n", appx.n, "Base point counts (N-1)")->check(kNoEmptyItems)->delimiter(',')->capture_default_str();
  appx_cmd->add_option("--kappa", appx.kappa, "Target kurtosis")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (shock_cmd->parsed()) {
      const auto doc = shock_table(shock);
      emit(doc, global, out);
      return doc.has_errors() ? kInfeasible : kSuccess;
    }
    if (bounds_cmd->parsed()) {
      const auto doc = bounds_table(bounds);
      emit(doc, global, out);
      return doc.has_errors() ? kInfeasible : kSuccess;
    }
    if (tail_cmd->parsed()) {
      const auto doc = tail_factor_table(tail, err);
      emit(doc, global, out);
      return doc.has_errors() ? kInfeasible : kSuccess;
    }
    if (val_cmd->parsed()) {
      auto result = validate(val);
      emit(result.doc, global, out);
      return result.exit_code;
    }
    if (emp_cmd->parsed()) {
      auto result = empirical(emp);
      emit(result.doc, global, out);
      return result.exit_code;
    }
    if (appx_cmd->parsed()) {
      emit(appendix_table(appx), global, out);
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SearchError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  }
  err << "error: no subcommand\n";
  return kUsageError;
}

} // namespace kurtail::cli
