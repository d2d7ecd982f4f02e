#include "madcdf/cli_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "madcdf/error.hpp"

namespace madcdf {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto blank = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

bool blank_record(const std::vector<std::string>& row) { return row.size() == 1 && trim(row[0]).empty(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::FileNotFound, "cannot write '" + path + "'");
  f << content;
  if (!f) throw Error(ErrorCode::FileNotFound, "write failed for '" + path + "'");
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string_view rule_name(StepRule r) { return r == StepRule::Range ? "range" : "robust"; }

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;  // something seen on the current record
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted field in record " + std::to_string(rows.size() + 1));
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<double> parse_double(std::string_view cell) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool is_missing_cell(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return true;
  std::string lower(cell);
  std::ranges::transform(lower, lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "na" || lower == "n/a" || lower == "nan";
}

std::vector<double> load_column(const ColumnSelector& sel) {
  auto rows = parse_csv(read_file(sel.path));
  std::erase_if(rows, blank_record);
  if (rows.empty()) throw Error(ErrorCode::EmptyAfterFilter, "'" + sel.path + "' has no records");

  const auto& first = rows.front();
  const bool has_header =
      std::ranges::any_of(first, [](const std::string& c) { return !is_missing_cell(c) && !parse_double(c); });
  const std::size_t data_begin = has_header ? 1 : 0;
  const std::size_t width = first.size();

  std::size_t col = 0;
  if (sel.column) {
    const std::string& want = *sel.column;
    const auto named = has_header ? std::ranges::find(first, want) : first.end();
    if (named != first.end()) {
      col = static_cast<std::size_t>(named - first.begin());
    } else if (!want.empty() && std::ranges::all_of(want, [](char c) { return c >= '0' && c <= '9'; })) {
      const auto [ptr, ec] = std::from_chars(want.data(), want.data() + want.size(), col);
      if (ec != std::errc() || col >= width) {
        throw Error(ErrorCode::ColumnNotFound, "column index " + want + " out of range (" + std::to_string(width) +
                                                   " columns)");
      }
    } else {
      throw Error(ErrorCode::ColumnNotFound, "no column named '" + want + "'");
    }
  } else {
    // First column holding a number in any data row.
    std::size_t best = std::numeric_limits<std::size_t>::max();
    bool only_missing = true;
    for (std::size_t r = data_begin; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < std::min(rows[r].size(), best); ++c) {
        if (parse_double(rows[r][c])) {
          best = c;
        } else if (!is_missing_cell(rows[r][c])) {
          only_missing = false;
        }
      }
    }
    if (best == std::numeric_limits<std::size_t>::max()) {
      if (only_missing) throw Error(ErrorCode::EmptyAfterFilter, "'" + sel.path + "' has no values");
      throw Error(ErrorCode::ColumnNotFound, "no numeric column in '" + sel.path + "'");
    }
    col = best;
  }
  const std::string col_label = has_header && col < width ? "'" + first[col] + "'" : std::to_string(col);

  std::vector<double> values;
  for (std::size_t r = data_begin; r < rows.size(); ++r) {
    const std::string cell = col < rows[r].size() ? rows[r][col] : std::string();
    const std::string where = "row " + std::to_string(r + 1) + ", column " + col_label;
    if (is_missing_cell(cell)) {
      if (sel.missing == MissingPolicy::Skip) continue;
      throw Error(ErrorCode::ParseError, where + ": missing value");
    }
    const auto v = parse_double(cell);
    if (!v) throw Error(ErrorCode::ParseError, where + ": '" + cell + "' is not a finite number");
    values.push_back(*v);
  }
  if (values.empty()) throw Error(ErrorCode::EmptyAfterFilter, "column " + col_label + " has no values");
  return values;
}

Sample load_csv(const ColumnSelector& sel) { return Sample(load_column(sel)); }

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string shape_json(const ShapeSummary& s) {
  Json j;
  j["w_r"] = s.w_r;
  j["w_l"] = s.w_l;
  j["w"] = s.w;
  j["l"] = s.l;
  j["t_r"] = s.t_r;
  j["t_l"] = s.t_l;
  j["t_r1"] = finite_or_null(s.t_r1);
  j["t_l1"] = finite_or_null(s.t_l1);
  j["sk1"] = s.sk1;
  j["sk2"] = s.sk2;
  j["sk21"] = finite_or_null(s.sk21);
  j["mean"] = s.mean;
  j["median"] = s.median;
  j["sd_pop"] = s.sd_pop;
  j["mad_about_median"] = s.mad_about_median;
  j["delta_max_r"] = s.delta_max_r;
  j["delta_max_l"] = s.delta_max_l;
  j["pearson_skew"] = s.pearson_skew;
  j["pearson_kurt"] = s.pearson_kurt;
  return j.dump(2) + "\n";
}

std::string mad_curve_csv(const MadCurve& c) {
  std::string out = "v,delta,delta_plus,delta_minus,line_left,line_right\n";
  for (const MadPoint& p : c.points) {
    out += format_double(p.v) + ',' + format_double(p.delta) + ',' + format_double(p.delta_plus) + ',' +
           format_double(p.delta_minus) + ',' + format_double(p.line_left) + ',' + format_double(p.line_right) + '\n';
  }
  return out;
}

std::string cdf_csv(const CdfEstimate& e, const std::vector<ConfidencePoint>* ci) {
  std::string out = ci ? "v,p,lo,hi\n" : "v,p\n";
  for (std::size_t i = 0; i < e.points.size(); ++i) {
    out += format_double(e.points[i].v) + ',' + format_double(e.points[i].p);
    if (ci) out += ',' + format_double((*ci)[i].lo) + ',' + format_double((*ci)[i].hi);
    out += '\n';
  }
  return out;
}

std::string bench_csv(const BenchReport& r) {
  std::string out = "dist,n,estimator,mean_ase,mc_se,reps\n";
  for (const BenchCell& c : r.cells) {
    out += csv_field(c.dist) + ',' + std::to_string(c.n) + ',' + std::string(to_string(c.estimator)) + ',' +
           format_double(c.mean_ase) + ',' + format_double(c.mc_std_error) + ',' + std::to_string(c.reps) + '\n';
  }
  return out;
}

std::string bench_json(const BenchReport& r) {
  const BenchConfig& cfg = r.config;
  Json j;
  j["version"] = r.version;
  j["master_seed"] = cfg.master_seed;
  Json c;
  c["distributions"] = cfg.distributions;
  c["sizes"] = cfg.sizes;
  c["reps"] = cfg.reps;
  Json est = Json::array();
  for (Method m : cfg.estimators) est.push_back(std::string(to_string(m)));
  c["estimators"] = est;
  c["sc_variant"] = cfg.sc_variant == ScVariant::PaperLiteral ? "paper_literal" : "marron_wand";
  Json rich;
  rich["h0"] = cfg.richardson.h0 ? Json(*cfg.richardson.h0) : Json(nullptr);
  rich["step_rule"] = std::string(rule_name(cfg.richardson.rule));
  rich["step_scale"] = cfg.richardson.step_scale;
  rich["levels"] = cfg.richardson.max_levels;
  rich["tol"] = cfg.richardson.tol;
  c["richardson"] = rich;
  j["config"] = c;
  Json cells = Json::array();
  for (const BenchCell& cell : r.cells) {
    Json e;
    e["dist"] = cell.dist;
    e["n"] = cell.n;
    e["estimator"] = std::string(to_string(cell.estimator));
    e["mean_ase"] = cell.mean_ase;
    e["mc_se"] = cell.mc_std_error;
    e["reps"] = cell.reps;
    cells.push_back(e);
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

std::vector<Table1Row> table1(std::size_t grid_n) {
  const std::vector<std::pair<std::string, DistSpec>> dists = {
      {"beta(0.1,0.1)", DistSpec::beta(0.1, 0.1)}, {"beta(1,1)", DistSpec::beta(1.0, 1.0)},
      {"normal", DistSpec::normal()},             {"logistic", DistSpec::logistic()},
      {"laplace", DistSpec::laplace()},           {"t3", DistSpec::student_t3()},
  };
  std::vector<Table1Row> rows;
  for (const auto& [name, d] : dists) rows.push_back({name, theoretical_shape(d, grid_n)});
  return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out = "dist,w_r,w_l,w,l\n";
  for (const auto& r : rows) {
    out += csv_field(r.dist) + ',' + format_double(r.shape.w_r) + ',' + format_double(r.shape.w_l) + ',' +
           format_double(r.shape.w) + ',' + format_double(r.shape.l) + '\n';
  }
  return out;
}

namespace {

struct DataArgs {
  std::string path;
  std::string column;
  std::string missing = "error";

  void attach(CLI::App* cmd) {
    cmd->add_option("csv", path, "Input CSV file")->required();
    cmd->add_option("--col", column, "Column name or 0-based index (default: first numeric column)");
    cmd->add_option("--missing", missing, "Empty/NA cells: error or skip")
        ->check(CLI::IsMember({"error", "skip"}));
  }

  [[nodiscard]] Sample load() const {
    ColumnSelector sel{path, std::nullopt, missing == "skip" ? MissingPolicy::Skip : MissingPolicy::Error};
    if (!column.empty()) sel.column = column;
    return load_csv(sel);
  }
};

struct StepArgs {
  double h0 = 0.0;
  int levels = RichardsonOptions{}.max_levels;
  std::string rule = "robust";
  double scale = RichardsonOptions{}.step_scale;

  void attach(CLI::App* cmd) {
    cmd->add_option("--h0", h0, "Initial Richardson step (default: from --step-rule)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--levels", levels, "Richardson tableau depth")->check(CLI::Range(1, 60));
    cmd->add_option("--step-rule", rule, "Data-driven step: robust or range")
        ->check(CLI::IsMember({"robust", "range"}));
    cmd->add_option("--step-scale", scale, "Multiplier for the data-driven step")->check(CLI::PositiveNumber);
  }

  [[nodiscard]] RichardsonOptions options() const {
    RichardsonOptions o;
    if (h0 > 0.0) o.h0 = h0;
    o.max_levels = levels;
    o.rule = rule == "range" ? StepRule::Range : StepRule::RobustSpread;
    o.step_scale = scale;
    return o;
  }
};

const CLI::Validator kMethodName(
    [](std::string& s) -> std::string {
      try {
        (void)parse_method(s);
        return {};
      } catch (const Error&) {
        return "unknown estimator '" + s + "'";
      }
    },
    "METHOD");

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"MAD-curve shape measures and distribution-function estimators", "madcdf"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  DataArgs shape_args;
  auto* shape_cmd = app.add_subcommand("shape", "Wideness, tail and skewness summary as JSON");
  shape_args.attach(shape_cmd);

  DataArgs plot_args;
  std::size_t plot_grid = 0;
  std::string plot_out;
  auto* plot_cmd = app.add_subcommand("madplot", "MAD curve and branches as CSV");
  plot_args.attach(plot_cmd);
  plot_cmd->add_option("--grid", plot_grid, "Evaluate on N equally spaced points instead of the data")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  plot_cmd->add_option("--out", plot_out, "Output CSV ('-' for stdout)")->required();

  DataArgs cdf_args;
  StepArgs cdf_step;
  std::string cdf_method;
  double cdf_ci = 0.0;
  std::string cdf_out;
  auto* cdf_cmd = app.add_subcommand("cdf", "Distribution-function estimate at the distinct data values");
  cdf_args.attach(cdf_cmd);
  cdf_step.attach(cdf_cmd);
  cdf_cmd->add_option("--method", cdf_method, "Estimator")->required()->check(kMethodName);
  cdf_cmd->add_option("--ci", cdf_ci, "Add a pointwise band at this level, e.g. 0.95")
      ->check(CLI::Range(0.0, 1.0));
  cdf_cmd->add_option("--out", cdf_out, "Output CSV ('-' for stdout)")->required();

  DataArgs q_args;
  StepArgs q_step;
  double q_prob = 0.0;
  std::string q_method;
  auto* q_cmd = app.add_subcommand("quantile", "Quantile read off an estimated distribution function");
  q_args.attach(q_cmd);
  q_step.attach(q_cmd);
  q_cmd->add_option("--p", q_prob, "Probability")->required();
  q_cmd->add_option("--method", q_method, "Estimator")->required()->check(kMethodName);

  std::vector<std::string> b_dists = builtin_names();
  std::vector<std::size_t> b_sizes = BenchConfig{}.sizes;
  std::size_t b_reps = BenchConfig{}.reps;
  std::uint64_t b_seed = 0;
  std::vector<std::string> b_est;
  bool b_literal = false;
  unsigned b_threads = 0;
  StepArgs b_step;
  std::string b_out;
  auto* bench_cmd = app.add_subcommand("bench", "Monte Carlo ASE benchmark over the mixture test set");
  bench_cmd->add_option("--dist", b_dists, "Comma-separated distributions")
      ->delimiter(',')
      ->check(CLI::IsMember(builtin_names()));
  bench_cmd->add_option("--n", b_sizes, "Comma-separated sample sizes")->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--reps", b_reps, "Replications per cell")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", b_seed, "Master seed")->required();
  bench_cmd->add_option("--estimators", b_est, "Comma-separated estimators")->delimiter(',')->check(kMethodName);
  bench_cmd->add_flag("--sc-paper-literal", b_literal, "Use sd (32/63)^l for the SC components");
  bench_cmd->add_option("--threads", b_threads, "Worker threads (default: MADCDF_THREADS or all cores)");
  b_step.attach(bench_cmd);
  bench_cmd->add_option("--out", b_out, "Output CSV; the JSON sidecar goes to FILE.json")->required();

  std::size_t t_grid = 100000;
  std::string t_out = "-";
  auto* t_cmd = app.add_subcommand("table1", "Wideness of six reference distributions");
  t_cmd->add_option("--grid", t_grid, "Quantile grid size")->check(CLI::Range(std::size_t{100}, std::size_t{100000000}));
  t_cmd->add_option("--out", t_out, "Output CSV ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (shape_cmd->parsed()) {
      out << shape_json(shape_summary(shape_args.load()));
    } else if (plot_cmd->parsed()) {
      const Sample s = plot_args.load();
      const MadCurve c = plot_grid > 0 ? build_mad_curve(s, uniform_grid(s, plot_grid)) : build_mad_curve(s);
      write_output(plot_out, mad_curve_csv(c), out);
    } else if (cdf_cmd->parsed()) {
      const CdfEstimate e = estimate(cdf_args.load(), parse_method(cdf_method), cdf_step.options());
      if (cdf_cmd->count("--ci") > 0) {
        const auto band = pointwise_ci(e, cdf_ci);
        write_output(cdf_out, cdf_csv(e, &band), out);
      } else {
        write_output(cdf_out, cdf_csv(e), out);
      }
    } else if (q_cmd->parsed()) {
      const CdfEstimate e = estimate(q_args.load(), parse_method(q_method), q_step.options());
      const QuantileResult q = quantile_from_estimate(e, q_prob);
      if (q.clamped) err << "note: p lies outside the estimated range; clamped to the nearest data value\n";
      out << format_double(q.value) << '\n';
    } else if (bench_cmd->parsed()) {
      BenchConfig cfg;
      cfg.distributions = b_dists;
      cfg.sizes = b_sizes;
      cfg.reps = b_reps;
      cfg.master_seed = b_seed;
      if (!b_est.empty()) {
        cfg.estimators.clear();
        for (const auto& name : b_est) cfg.estimators.push_back(parse_method(name));
      }
      cfg.sc_variant = b_literal ? ScVariant::PaperLiteral : ScVariant::MarronWand;
      cfg.richardson = b_step.options();
      cfg.threads = b_threads;
      const BenchReport r = run_benchmark(cfg);
      write_output(b_out, bench_csv(r), out);
      write_output(b_out == "-" ? "-" : b_out + ".json", bench_json(r), out);
    } else if (t_cmd->parsed()) {
      write_output(t_out, table1_csv(table1(t_grid)), out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cli_dispatch(int argc, const char* const* argv) { return cli_dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace madcdf
