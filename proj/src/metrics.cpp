#include "cod/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "cod/error.hpp"
#include "cod/rng.hpp"

namespace cod {

double auc_roc(std::span<const double> scores, std::span<const std::uint8_t> truth) {
  if (scores.size() != truth.size()) fail(ErrorKind::LengthMismatch, "scores vs truth");
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (const std::uint8_t t : truth) n_pos += t != 0;
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    fail(ErrorKind::DegenerateTruth, "need at least one positive and one negative");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // rank sum of positives with midranks over tie groups
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (truth[order[k]]) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double p = static_cast<double>(n_pos);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(n_neg));
}

double auc_pr(std::span<const double> scores, std::span<const std::uint8_t> truth,
              bool* ties_at_cut) {
  if (scores.size() != truth.size()) fail(ErrorKind::LengthMismatch, "scores vs truth");
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (const std::uint8_t t : truth) n_pos += t != 0;
  if (n_pos == 0) fail(ErrorKind::DegenerateTruth, "need at least one positive");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  if (ties_at_cut) {
    *ties_at_cut = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::size_t j = i;
      bool any_pos = false;
      bool any_neg = false;
      while (j < n && scores[order[j]] == scores[order[i]]) {
        (truth[order[j]] ? any_pos : any_neg) = true;
        ++j;
      }
      if (any_pos && any_neg) {
        *ties_at_cut = true;
        break;
      }
      i = j - 1;
    }
  }

  double hits = 0.0;
  double precision_sum = 0.0;
  for (std::size_t rank = 0; rank < n; ++rank) {
    if (truth[order[rank]]) {
      hits += 1.0;
      precision_sum += hits / static_cast<double>(rank + 1);
    }
  }
  return precision_sum / static_cast<double>(n_pos);
}

MetricResult run_trials(const Dataset& dataset, const TrialSpec& spec, const CodConfig& base) {
  const std::vector<std::size_t> true_outliers = dataset.positives();
  if (spec.labeled_count > true_outliers.size()) {
    fail(ErrorKind::InsufficientOutliers,
         "requested " + std::to_string(spec.labeled_count) + " labeled outliers, dataset has " +
             std::to_string(true_outliers.size()));
  }
  if (spec.labeled_count == 0) fail(ErrorKind::ConfigInvalid, "labeled count must be >= 1");

  MetricResult result;
  for (std::size_t trial = 0; trial < spec.repetitions; ++trial) {
    SplitMix64 rng(spec.seed, trial);
    const std::vector<std::size_t> sampled =
        sample_without_replacement(true_outliers, spec.labeled_count, rng);

    Dataset training = dataset;
    training.labels.assign(dataset.n, Label::Unlabeled);
    for (const std::size_t i : sampled) training.labels[i] = Label::PositiveOutlier;

    CodConfig config = base;
    config.n_negatives = spec.n_negatives;
    const OutlierReport report = detect(training, config);

    // Evaluate only over objects not used as training labels.
    std::vector<char> in_training(dataset.n, 0);
    for (const std::size_t i : sampled) in_training[i] = 1;
    std::vector<double> eval_scores;
    std::vector<std::uint8_t> eval_truth;
    for (std::size_t i = 0; i < dataset.n; ++i) {
      if (in_training[i]) continue;
      eval_scores.push_back(report.scores[i]);
      eval_truth.push_back(dataset.labels[i] == Label::PositiveOutlier ? 1 : 0);
    }

    TrialOutcome outcome;
    outcome.trial = trial;
    outcome.auc_roc = auc_roc(eval_scores, eval_truth);
    outcome.auc_pr = auc_pr(eval_scores, eval_truth, &outcome.score_ties);
    result.trials.push_back(outcome);
  }

  const double reps = static_cast<double>(result.trials.size());
  for (const TrialOutcome& outcome : result.trials) {
    result.mean_auc_roc += outcome.auc_roc / reps;
    result.mean_auc_pr += outcome.auc_pr / reps;
  }
  for (const TrialOutcome& outcome : result.trials) {
    result.stddev_auc_roc += (outcome.auc_roc - result.mean_auc_roc) *
                             (outcome.auc_roc - result.mean_auc_roc) / reps;
    result.stddev_auc_pr +=
        (outcome.auc_pr - result.mean_auc_pr) * (outcome.auc_pr - result.mean_auc_pr) / reps;
  }
  result.stddev_auc_roc = std::sqrt(result.stddev_auc_roc);
  result.stddev_auc_pr = std::sqrt(result.stddev_auc_pr);
  return result;
}

std::vector<SweepRow> sweep(const Dataset& dataset, const std::vector<SweepCell>& grid,
                            const CodConfig& base) {
  std::vector<SweepRow> rows;
  for (const SweepCell& cell : grid) {
    const MetricResult result = run_trials(dataset, cell.spec, base);
    for (const TrialOutcome& outcome : result.trials) {
      rows.push_back({cell.dataset_name, cell.spec.labeled_count, cell.spec.n_negatives,
                      outcome.trial, outcome.auc_roc, outcome.auc_pr});
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "dataset,labeled_count,n_neg,trial,auc_roc,auc_pr\n";
  char roc[32];
  char pr[32];
  for (const SweepRow& row : rows) {
    std::snprintf(roc, sizeof(roc), "%.6f", row.auc_roc);
    std::snprintf(pr, sizeof(pr), "%.6f", row.auc_pr);
    out << row.dataset_name << ',' << row.labeled_count << ',' << row.n_negatives << ','
        << row.trial << ',' << roc << ',' << pr << '\n';
  }
}

}  // namespace cod
