#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/detector.hpp"
#include "cod/error.hpp"
#include "cod/metrics.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("COD_LOG");
    if (!env) return 0;
    const std::string value(env);
    if (value == "debug") return 2;
    if (value == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& message) {
  if (log_level() >= 1) std::cerr << "[cod] " << message << "\n";
}

std::map<std::string, double> parse_fixed_radii(const std::string& spec) {
  std::map<std::string, double> radii;
  std::size_t start = 0;
  while (start < spec.size()) {
    std::size_t comma = spec.find(',', start);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(start, comma - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      cod::fail(cod::ErrorKind::ConfigInvalid, "--fix-lambda expects name=value[,...], got '" +
                                                   item + "'");
    }
    try {
      radii[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      cod::fail(cod::ErrorKind::ConfigInvalid, "--fix-lambda value in '" + item + "'");
    }
    start = comma + 1;
  }
  return radii;
}

cod::Dataset load_input(const std::string& data_path, const std::string& schema_path,
                        cod::MissingPolicy missing) {
  const auto schema = cod::DatasetSchema::from_json_file(schema_path);
  cod::Dataset dataset = cod::load_csv(data_path, schema, missing);
  cod::normalize(dataset);
  log_info("loaded " + std::to_string(dataset.n) + " rows, " +
           std::to_string(dataset.columns.size()) + " attributes");
  return dataset;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) cod::fail(cod::ErrorKind::ConfigInvalid, "cannot write '" + path + "'");
  return out;
}

struct CommonOptions {
  std::string data;
  std::string schema;
  std::string out;
  std::size_t n_negatives = 100;
  std::string threshold_mode = "labels";
  double contamination = 0.05;
  std::string fix_lambda;
  bool impute = false;
  int threads = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_out = true) {
  cmd->add_option("--data", opts.data, "input CSV file")->required();
  cmd->add_option("--schema", opts.schema, "schema JSON file")->required();
  auto* out = cmd->add_option("--out", opts.out, "output file path");
  if (needs_out) out->required();
  cmd->add_option("--n-neg", opts.n_negatives, "number of candidate negative instances")
      ->default_val(100);
  cmd->add_option("--threshold-mode", opts.threshold_mode, "labels|quantile")
      ->check(CLI::IsMember({"labels", "quantile"}));
  cmd->add_option("--contamination", opts.contamination,
                  "outlier fraction for quantile thresholding");
  cmd->add_option("--fix-lambda", opts.fix_lambda, "fixed radii, e.g. a2=0.539,a3=0.498");
  cmd->add_flag("--impute", opts.impute, "impute missing values instead of rejecting");
  cmd->add_option("--threads", opts.threads, "worker thread cap")->default_val(1);
  cmd->add_option("--seed", opts.seed, "random seed for trial sampling")->default_val(0);
}

cod::CodConfig make_config(const CommonOptions& opts) {
  cod::CodConfig config;
  config.n_negatives = opts.n_negatives;
  config.threshold_mode = opts.threshold_mode == "quantile"
                              ? cod::ThresholdMode::ContaminationQuantile
                              : cod::ThresholdMode::FromLabels;
  config.contamination = opts.contamination;
  config.missing = opts.impute ? cod::MissingPolicy::Impute : cod::MissingPolicy::Reject;
  if (!opts.fix_lambda.empty()) config.fixed_radii = parse_fixed_radii(opts.fix_lambda);
  config.threads = opts.threads;
  config.seed = opts.seed;
  return config;
}

int run_detect(const CommonOptions& opts, const std::string& diagnostics_path) {
  const cod::CodConfig config = make_config(opts);
  const cod::Dataset dataset = load_input(opts.data, opts.schema, config.missing);
  const cod::OutlierReport report = cod::detect(dataset, config);

  auto out = open_output(opts.out);
  cod::write_scores_csv(report, out);

  const std::string diag_path =
      diagnostics_path.empty() ? opts.out + ".diag.json" : diagnostics_path;
  auto diag = open_output(diag_path);
  diag << cod::report_to_json(report, config).dump(2) << "\n";

  std::size_t flagged = 0;
  for (const auto flag : report.flags) flagged += flag;
  std::printf("theta=%.6f flagged=%zu of %zu\n", report.threshold, flagged, dataset.n);
  return 0;
}

int run_eval(const CommonOptions& opts, std::size_t labeled_count, std::size_t trials) {
  const cod::CodConfig config = make_config(opts);
  const cod::Dataset dataset = load_input(opts.data, opts.schema, config.missing);

  cod::TrialSpec spec;
  spec.labeled_count = labeled_count;
  spec.repetitions = trials;
  spec.seed = opts.seed;
  spec.n_negatives = opts.n_negatives;
  const cod::MetricResult result = cod::run_trials(dataset, spec, config);

  std::vector<cod::SweepRow> rows;
  for (const auto& outcome : result.trials) {
    rows.push_back({opts.data, spec.labeled_count, spec.n_negatives, outcome.trial,
                    outcome.auc_roc, outcome.auc_pr});
  }
  auto out = open_output(opts.out);
  cod::write_sweep_csv(rows, out);

  nlohmann::json summary{{"labeled_count", spec.labeled_count},
                         {"trials", spec.repetitions},
                         {"seed", spec.seed},
                         {"n_neg", spec.n_negatives},
                         {"mean_auc_roc", result.mean_auc_roc},
                         {"mean_auc_pr", result.mean_auc_pr},
                         {"stddev_auc_roc", result.stddev_auc_roc},
                         {"stddev_auc_pr", result.stddev_auc_pr}};
  auto summary_out = open_output(opts.out + ".summary.json");
  summary_out << summary.dump(2) << "\n";

  std::printf("mean_auc_roc=%.6f mean_auc_pr=%.6f over %zu trials\n", result.mean_auc_roc,
              result.mean_auc_pr, result.trials.size());
  return 0;
}

int run_sweep(const CommonOptions& opts, const std::string& grid_path, std::size_t labeled_count,
              std::size_t trials) {
  const cod::CodConfig config = make_config(opts);
  const cod::Dataset dataset = load_input(opts.data, opts.schema, config.missing);

  std::ifstream grid_in(grid_path);
  if (!grid_in) cod::fail(cod::ErrorKind::ConfigInvalid, "cannot open grid file '" + grid_path + "'");
  nlohmann::json grid_doc;
  try {
    grid_doc = nlohmann::json::parse(grid_in);
  } catch (const nlohmann::json::parse_error& e) {
    cod::fail(cod::ErrorKind::ConfigInvalid, std::string("grid JSON: ") + e.what());
  }
  if (!grid_doc.is_array()) cod::fail(cod::ErrorKind::ConfigInvalid, "grid must be a JSON list");

  std::vector<cod::SweepCell> grid;
  for (const auto& cell : grid_doc) {
    cod::TrialSpec spec;
    spec.labeled_count = labeled_count;
    spec.repetitions = trials;
    spec.seed = opts.seed;
    spec.n_negatives = opts.n_negatives;
    if (cell.is_number_unsigned()) {
      spec.n_negatives = cell.get<std::size_t>();  // bare numbers sweep N-
    } else if (cell.is_object()) {
      if (cell.contains("n_neg")) spec.n_negatives = cell["n_neg"].get<std::size_t>();
      if (cell.contains("labeled_count")) spec.labeled_count = cell["labeled_count"].get<std::size_t>();
      if (cell.contains("trials")) spec.repetitions = cell["trials"].get<std::size_t>();
    } else {
      cod::fail(cod::ErrorKind::ConfigInvalid, "grid cells must be numbers or objects");
    }
    grid.push_back({opts.data, spec});
  }

  const std::vector<cod::SweepRow> rows = cod::sweep(dataset, grid, config);
  auto out = open_output(opts.out);
  cod::write_sweep_csv(rows, out);
  std::printf("wrote %zu rows for %zu grid cells\n", rows.size(), grid.size());
  return 0;
}

int run_dump_diagnostics(const CommonOptions& opts) {
  cod::CodConfig config = make_config(opts);
  const cod::Dataset dataset = load_input(opts.data, opts.schema, config.missing);
  if (dataset.positives().empty()) config.threshold_mode = cod::ThresholdMode::ContaminationQuantile;
  const cod::OutlierReport report = cod::detect(dataset, config);

  auto out = open_output(opts.out);
  out << "attribute,kind,lambda,gamma,xi\n";
  char lambda[32];
  char gamma[32];
  char xi[32];
  for (const auto& diag : report.attributes) {
    std::snprintf(gamma, sizeof(gamma), "%.6f", diag.gamma);
    std::snprintf(xi, sizeof(xi), "%.6f", diag.xi);
    if (diag.numeric) {
      std::snprintf(lambda, sizeof(lambda), "%.6f", diag.lambda);
    } else {
      std::snprintf(lambda, sizeof(lambda), "%s", "");
    }
    out << diag.name << ',' << (diag.numeric ? "numeric" : "nominal") << ',' << lambda << ','
        << gamma << ',' << xi << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistency-guided outlier detection for mixed tabular data"};
  app.require_subcommand(1);

  CommonOptions detect_opts;
  std::string diagnostics_path;
  auto* detect_cmd = app.add_subcommand("detect", "score a dataset and flag outliers");
  add_common(detect_cmd, detect_opts);
  detect_cmd->add_option("--diagnostics", diagnostics_path,
                         "diagnostics JSON path (default: <out>.diag.json)");

  CommonOptions eval_opts;
  std::size_t labeled_count = 5;
  std::size_t trials = 10;
  auto* eval_cmd = app.add_subcommand("eval", "repeated-trial evaluation with sampled labels");
  add_common(eval_cmd, eval_opts);
  eval_cmd->add_option("--labeled-count", labeled_count, "labeled outliers per trial")
      ->required()
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--trials", trials, "number of repetitions")->default_val(10);

  CommonOptions sweep_opts;
  std::string grid_path;
  std::size_t sweep_labeled = 5;
  std::size_t sweep_trials = 10;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of evaluation cells");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--grid", grid_path, "grid JSON file")->required();
  sweep_cmd->add_option("--labeled-count", sweep_labeled, "default labeled outliers per cell");
  sweep_cmd->add_option("--trials", sweep_trials, "default repetitions per cell");

  CommonOptions dump_opts;
  auto* dump_cmd = app.add_subcommand("dump-diagnostics", "per-attribute lambda/gamma/xi table");
  add_common(dump_cmd, dump_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (detect_cmd->parsed()) return run_detect(detect_opts, diagnostics_path);
    if (eval_cmd->parsed()) return run_eval(eval_opts, labeled_count, trials);
    if (sweep_cmd->parsed()) return run_sweep(sweep_opts, grid_path, sweep_labeled, sweep_trials);
    if (dump_cmd->parsed()) return run_dump_diagnostics(dump_opts);
  } catch (const cod::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
