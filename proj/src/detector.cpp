#include "cod/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "cod/consistency.hpp"
#include "cod/error.hpp"
#include "cod/fuzzy.hpp"
#include "cod/parallel.hpp"

namespace cod {

namespace {

double relation_entry(const Column& column, std::optional<double> lambda, std::size_t i,
                      std::size_t j) {
  if (column.kind == AttributeKind::Nominal) {
    return column.codes[i] == column.codes[j] ? 1.0 : 0.0;
  }
  const double d = std::abs(column.values[i] - column.values[j]);
  return d <= *lambda ? 1.0 - d : 0.0;
}

void validate_config(const Dataset& dataset, const CodConfig& config) {
  if (dataset.n == 0) fail(ErrorKind::EmptyDataset, "no objects");
  if (dataset.columns.empty()) fail(ErrorKind::EmptyDataset, "no attributes");
  if (config.n_negatives < 1) fail(ErrorKind::ConfigInvalid, "n_negatives must be >= 1");
  if (config.threshold_mode == ThresholdMode::ContaminationQuantile &&
      !(config.contamination > 0.0 && config.contamination < 1.0)) {
    fail(ErrorKind::ConfigInvalid, "contamination must lie in (0,1)");
  }
  for (const auto& [name, value] : config.fixed_radii) {
    const auto it = std::find_if(dataset.columns.begin(), dataset.columns.end(),
                                 [&](const Column& c) { return c.name == name; });
    if (it == dataset.columns.end()) {
      fail(ErrorKind::ConfigInvalid, "fixed radius for unknown attribute '" + name + "'");
    }
    if (it->kind != AttributeKind::Numeric) {
      fail(ErrorKind::ConfigInvalid, "fixed radius for nominal attribute '" + name + "'");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      fail(ErrorKind::ConfigInvalid, "fixed radius for '" + name + "' outside [0,1]");
    }
  }
}

double quantile_threshold(std::vector<double> scores, double contamination) {
  std::sort(scores.begin(), scores.end());
  const double rank = std::ceil((1.0 - contamination) * static_cast<double>(scores.size()));
  const std::size_t index =
      std::min(scores.size() - 1, static_cast<std::size_t>(std::max(rank - 1.0, 0.0)));
  return scores[index];
}

}  // namespace

double outlier_factor(double row_sum, std::size_t n) {
  return 1.0 - row_sum / static_cast<double>(n);
}

double cod_score(std::span<const double> factors, std::span<const double> consistencies) {
  if (factors.size() != consistencies.size() || factors.empty()) {
    fail(ErrorKind::LengthMismatch, "one consistency weight per outlier factor expected");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < factors.size(); ++k) sum += factors[k] * consistencies[k];
  return sum / static_cast<double>(factors.size());
}

double threshold_from_labels(std::span<const double> scores,
                             const std::vector<std::size_t>& positives) {
  if (positives.empty()) fail(ErrorKind::NoLabeledOutliers, "threshold needs labeled outliers");
  double minimum = std::numeric_limits<double>::infinity();
  for (const std::size_t i : positives) {
    if (i >= scores.size()) fail(ErrorKind::IndexOutOfRange, "positive index " + std::to_string(i));
    minimum = std::min(minimum, scores[i]);
  }
  return minimum;
}

OutlierReport detect(const Dataset& dataset, const CodConfig& config) {
  validate_config(dataset, config);
  const std::size_t n = dataset.n;
  const std::size_t m = dataset.columns.size();

  const std::vector<std::size_t> positives = dataset.positives();
  const bool label_informed = !positives.empty();
  if (!label_informed && config.threshold_mode == ThresholdMode::FromLabels) {
    fail(ErrorKind::NoLabeledOutliers,
         "FromLabels threshold requires at least one labeled outlier");
  }

  DecisionContext context;
  if (label_informed) {
    context = select_candidate_negatives(dataset, config.n_negatives, positives);
  }

  OutlierReport report;
  report.label_informed = label_informed;
  report.attributes.resize(m);

  // Stage 1: per-attribute fuzzy radii. Without labels the radius
  // optimization has no signal; the relation falls back to the plain
  // 1 - distance similarity (lambda = 1).
  std::vector<std::optional<double>> radii(m);
  parallel_for(m, config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const Column& column = dataset.columns[k];
      AttributeDiagnostics& diag = report.attributes[k];
      diag.name = column.name;
      diag.numeric = column.kind == AttributeKind::Numeric;
      if (!diag.numeric) continue;
      const auto fixed = config.fixed_radii.find(column.name);
      if (fixed != config.fixed_radii.end()) {
        radii[k] = fixed->second;
        diag.lambda_fixed = true;
      } else if (label_informed) {
        radii[k] = optimize_fuzzy_radius(column, context, k).value;
      } else {
        radii[k] = 1.0;
      }
      diag.lambda = *radii[k];
    }
  });

  // Stage 2: consistency weights over the restricted decision system.
  std::vector<double> consistencies(m, 1.0);
  if (label_informed) {
    const DecisionSystem system = build_decision_system(dataset, context, radii);
    parallel_for(m, config.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t k = begin; k < end; ++k) {
        const std::vector<std::size_t> singleton{k};
        consistencies[k] = classification_consistency(system, singleton);
        report.attributes[k].gamma = fuzzy_dependency(system, singleton);
      }
    });
  }
  for (std::size_t k = 0; k < m; ++k) report.attributes[k].xi = consistencies[k];

  // Stage 3: outlier factors over the full universe. Small n keeps the
  // materialized relation; large n streams row sums to stay O(n) in memory.
  report.outlier_factors.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    const Column& column = dataset.columns[k];
    std::vector<double>& factors = report.outlier_factors[k];
    if (n <= config.dense_relation_limit) {
      const FuzzyRelationMatrix relation = attribute_relation(column, radii[k]);
      parallel_for(n, config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) factors[i] = outlier_factor(relation.row_sum(i), n);
      });
    } else {
      parallel_for(n, config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          double sum = 0.0;
          for (std::size_t j = 0; j < n; ++j) sum += relation_entry(column, radii[k], i, j);
          factors[i] = outlier_factor(sum, n);
        }
      });
    }
  }

  report.scores.resize(n);
  parallel_for(n, config.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> factors(m);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t k = 0; k < m; ++k) factors[k] = report.outlier_factors[k][i];
      report.scores[i] = cod_score(factors, consistencies);
    }
  });

  report.threshold = config.threshold_mode == ThresholdMode::FromLabels
                         ? threshold_from_labels(report.scores, positives)
                         : quantile_threshold(report.scores, config.contamination);

  report.flags.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) report.flags[i] = report.scores[i] > report.threshold ? 1 : 0;
  // Labeled outliers are ground truth; the minimal one sits exactly at the
  // threshold and would otherwise escape the strict comparison.
  if (config.threshold_mode == ThresholdMode::FromLabels) {
    for (const std::size_t i : positives) report.flags[i] = 1;
  }
  return report;
}

void write_scores_csv(const OutlierReport& report, std::ostream& out) {
  out << "row_id,score,flag\n";
  char buffer[32];
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.6f", report.scores[i]);
    out << i << ',' << buffer << ',' << static_cast<int>(report.flags[i]) << '\n';
  }
}

nlohmann::json report_to_json(const OutlierReport& report, const CodConfig& config) {
  nlohmann::json attributes = nlohmann::json::array();
  for (const auto& diag : report.attributes) {
    nlohmann::json entry{{"name", diag.name},
                         {"kind", diag.numeric ? "numeric" : "nominal"},
                         {"xi", diag.xi},
                         {"gamma", diag.gamma}};
    if (diag.numeric) {
      entry["lambda"] = diag.lambda;
      entry["lambda_fixed"] = diag.lambda_fixed;
    }
    attributes.push_back(std::move(entry));
  }
  nlohmann::json effective{{"n_negatives", config.n_negatives},
                           {"threshold_mode", config.threshold_mode == ThresholdMode::FromLabels
                                                  ? "labels"
                                                  : "quantile"},
                           {"contamination", config.contamination},
                           {"missing_policy",
                            config.missing == MissingPolicy::Reject ? "reject" : "impute"},
                           {"fixed_radii", config.fixed_radii},
                           {"threads", config.threads},
                           {"dense_relation_limit", config.dense_relation_limit},
                           {"seed", config.seed}};
  return nlohmann::json{{"config", effective},
                        {"label_informed", report.label_informed},
                        {"threshold", report.threshold},
                        {"attributes", attributes},
                        {"scores", report.scores},
                        {"flags", report.flags},
                        {"outlier_factors", report.outlier_factors}};
}

}  // namespace cod
