#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/relation.hpp"

#include "json.hpp"

namespace cod {

enum class ThresholdMode { FromLabels, ContaminationQuantile };

struct CodConfig {
  std::size_t n_negatives = 100;
  ThresholdMode threshold_mode = ThresholdMode::FromLabels;
  double contamination = 0.05;  // used by ContaminationQuantile only
  MissingPolicy missing = MissingPolicy::Reject;
  std::map<std::string, double> fixed_radii;  // attribute name -> lambda override
  int threads = 1;
  // Above this row count, outlier factors are computed from streamed row
  // sums instead of materialized n x n relations.
  std::size_t dense_relation_limit = 4096;
  std::uint64_t seed = 0;  // harness sampling only; detect() itself is deterministic
};

struct AttributeDiagnostics {
  std::string name;
  bool numeric = false;
  bool lambda_fixed = false;
  double lambda = 0.0;       // meaningful for numeric attributes only
  double gamma = 0.0;        // fuzzy dependency of the singleton attribute
  double xi = 0.0;           // classification consistency weight
};

struct OutlierReport {
  std::vector<double> scores;   // COD(x_i)
  double threshold = 0.0;
  std::vector<std::uint8_t> flags;
  bool label_informed = true;   // false when run without any labeled outlier
  std::vector<AttributeDiagnostics> attributes;
  std::vector<std::vector<double>> outlier_factors;  // [attribute][object]
};

/// OF(x_i) = 1 - row_sum / n, over the full universe.
double outlier_factor(double row_sum, std::size_t n);

/// Mean of per-attribute outlier factors weighted by consistency.
double cod_score(std::span<const double> factors, std::span<const double> consistencies);

/// Minimum score among labeled outliers.
double threshold_from_labels(std::span<const double> scores,
                             const std::vector<std::size_t>& positives);

/// Runs the whole pipeline: candidate-inlier selection, per-attribute radius
/// optimization, relations, consistency weights, outlier factors, scores,
/// threshold and flags. Deterministic for fixed input and config.
OutlierReport detect(const Dataset& dataset, const CodConfig& config);

/// row_id,score,flag with scores at 6 decimal places.
void write_scores_csv(const OutlierReport& report, std::ostream& out);

/// Full diagnostics including the effective config.
nlohmann::json report_to_json(const OutlierReport& report, const CodConfig& config);

}  // namespace cod
