#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/detector.hpp"

namespace cod {

/// Mann-Whitney AUC with midrank tie handling:
/// P(score+ > score-) + 0.5 * P(score+ = score-).
/// Requires at least one positive and one negative.
double auc_roc(std::span<const double> scores, std::span<const std::uint8_t> truth);

/// Average precision over the descending-score ranking, ties broken by
/// stable original order. When `ties_at_cut` is non-null it is set whenever
/// a positive and a negative share a score (the ranking is then order
/// dependent).
double auc_pr(std::span<const double> scores, std::span<const std::uint8_t> truth,
              bool* ties_at_cut = nullptr);

struct TrialSpec {
  std::size_t labeled_count = 5;   // sampled true outliers used as U+
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::size_t n_negatives = 100;
};

struct TrialOutcome {
  std::size_t trial = 0;
  double auc_roc = 0.0;
  double auc_pr = 0.0;
  bool score_ties = false;
};

struct MetricResult {
  std::vector<TrialOutcome> trials;
  double mean_auc_roc = 0.0;
  double mean_auc_pr = 0.0;
  double stddev_auc_roc = 0.0;
  double stddev_auc_pr = 0.0;
};

/// Repeatedly samples `labeled_count` true outliers (seeded, without
/// replacement) as training labels, runs detect(), and scores both AUCs over
/// the objects not used for training. Fully reproducible from the seed.
MetricResult run_trials(const Dataset& dataset, const TrialSpec& spec, const CodConfig& base);

struct SweepCell {
  std::string dataset_name;
  TrialSpec spec;
};

struct SweepRow {
  std::string dataset_name;
  std::size_t labeled_count = 0;
  std::size_t n_negatives = 0;
  std::size_t trial = 0;
  double auc_roc = 0.0;
  double auc_pr = 0.0;
};

std::vector<SweepRow> sweep(const Dataset& dataset, const std::vector<SweepCell>& grid,
                            const CodConfig& base);

/// Long-format CSV: dataset,labeled_count,n_neg,trial,auc_roc,auc_pr.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace cod
