#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cod/error.hpp"
#include "cod/metrics.hpp"
#include "cod/rng.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace cod;
using namespace cod::testing;

namespace {

const std::vector<double> kScores{0.9, 0.3, 0.5, 0.1};

std::vector<std::uint8_t> truth(std::initializer_list<int> bits) {
  return std::vector<std::uint8_t>(bits.begin(), bits.end());
}

}  // namespace

TEST_CASE("ranking AUC golden values from pair enumeration") {
  CHECK(auc_roc(kScores, truth({1, 0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(auc_roc(kScores, truth({0, 1, 0, 1})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(auc_roc(kScores, truth({1, 0, 1, 0})) == doctest::Approx(1.0).epsilon(1e-12));
  // 0.5 beats 0.3 and 0.1 but loses to 0.9: 2 of 3 pairs
  CHECK(auc_roc(kScores, truth({0, 0, 1, 0})) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("tied scores count half a pair") {
  const std::vector<double> scores{0.5, 0.5, 0.2};
  CHECK(auc_roc(scores, truth({1, 0, 0})) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("average precision golden values") {
  CHECK(auc_pr(kScores, truth({1, 0, 0, 0})) == doctest::Approx(1.0).epsilon(1e-12));
  // positives land at ranks 3 and 4 of the descending order
  CHECK(auc_pr(kScores, truth({0, 1, 0, 1})) == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  CHECK(auc_pr(kScores, truth({1, 0, 1, 0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(auc_pr(kScores, truth({0, 0, 1, 0})) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cross-class score ties are reported") {
  const std::vector<double> tied{0.5, 0.5, 0.2};
  bool ties = false;
  auc_pr(tied, truth({1, 0, 0}), &ties);
  CHECK(ties);
  auc_pr(tied, truth({1, 1, 0}), &ties);
  CHECK_FALSE(ties);  // the tie group is purely positive
  auc_pr(kScores, truth({1, 0, 1, 0}), &ties);
  CHECK_FALSE(ties);
}

TEST_CASE("single-class truth is rejected") {
  CHECK_THROWS_WITH_AS(auc_roc(kScores, truth({0, 0, 0, 0})),
                       doctest::Contains("DegenerateTruth"), Error);
  CHECK_THROWS_WITH_AS(auc_roc(kScores, truth({1, 1, 1, 1})),
                       doctest::Contains("DegenerateTruth"), Error);
  CHECK_THROWS_WITH_AS(auc_pr(kScores, truth({0, 0, 0, 0})),
                       doctest::Contains("DegenerateTruth"), Error);
  CHECK_THROWS_WITH_AS(auc_roc(kScores, truth({1, 0})), doctest::Contains("LengthMismatch"),
                       Error);
}

TEST_CASE("ranking AUC is invariant under strictly increasing transforms") {
  SplitMix64 rng(61, 0);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 4 + rng.next_below(30);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    bool has_pos = false;
    bool has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = rng.next_double();
      labels[i] = static_cast<std::uint8_t>(rng.next_below(2));
      (labels[i] ? has_pos : has_neg) = true;
    }
    if (!has_pos) labels[0] = 1;
    if (!has_neg) labels[1] = 0;

    std::vector<double> warped(n);
    for (std::size_t i = 0; i < n; ++i) {
      warped[i] = scores[i] * scores[i] * scores[i] + 2.0 * scores[i];
    }
    REQUIRE(std::abs(auc_roc(scores, labels) - auc_roc(warped, labels)) <= 1e-12);
    REQUIRE(std::abs(auc_pr(scores, labels) - auc_pr(warped, labels)) <= 1e-12);
  }
}

TEST_CASE("negating tie-free scores reflects the AUC around one half") {
  SplitMix64 rng(61, 1);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 4 + rng.next_below(30);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = rng.next_double();  // ties have probability zero
      labels[i] = static_cast<std::uint8_t>(rng.next_below(2));
    }
    labels[0] = 1;
    labels[1] = 0;

    std::vector<double> negated(n);
    for (std::size_t i = 0; i < n; ++i) negated[i] = -scores[i];
    const double forward = auc_roc(scores, labels);
    REQUIRE(forward >= 0.0);
    REQUIRE(forward <= 1.0);
    REQUIRE(std::abs(forward + auc_roc(negated, labels) - 1.0) <= 1e-12);

    const double ap = auc_pr(scores, labels);
    REQUIRE(ap > 0.0);
    REQUIRE(ap <= 1.0);
  }
}

TEST_CASE("perfectly separated scores achieve both maxima") {
  SplitMix64 rng(61, 2);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 4 + rng.next_below(20);
    std::vector<double> scores(n);
    std::vector<std::uint8_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<std::uint8_t>(rng.next_below(2));
      scores[i] = (labels[i] ? 0.5 : 0.0) + 0.4 * rng.next_double();
    }
    labels[0] = 1;
    scores[0] = 0.7;
    labels[1] = 0;
    scores[1] = 0.2;
    REQUIRE(auc_roc(scores, labels) == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(auc_pr(scores, labels) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("trial harness is reproducible and validates its inputs") {
  const Dataset dataset = planted_outlier_dataset(7, 80, 0.1);
  TrialSpec spec;
  spec.labeled_count = 3;
  spec.repetitions = 4;
  spec.seed = 99;
  spec.n_negatives = 30;
  const CodConfig base;

  const MetricResult first = run_trials(dataset, spec, base);
  const MetricResult second = run_trials(dataset, spec, base);
  REQUIRE(first.trials.size() == 4);
  for (std::size_t t = 0; t < 4; ++t) {
    CHECK(first.trials[t].auc_roc == second.trials[t].auc_roc);
    CHECK(first.trials[t].auc_pr == second.trials[t].auc_pr);
  }
  CHECK(first.mean_auc_roc == second.mean_auc_roc);
  CHECK(first.stddev_auc_roc >= 0.0);

  TrialSpec greedy = spec;
  greedy.labeled_count = 1000;
  CHECK_THROWS_WITH_AS(run_trials(dataset, greedy, base),
                       doctest::Contains("InsufficientOutliers"), Error);
  TrialSpec zero = spec;
  zero.labeled_count = 0;
  CHECK_THROWS_WITH_AS(run_trials(dataset, zero, base), doctest::Contains("ConfigInvalid"),
                       Error);
}

TEST_CASE("planted outliers are recovered with high ranking quality") {
  const Dataset dataset = planted_outlier_dataset(11, 200, 0.05);
  TrialSpec spec;
  spec.labeled_count = 3;
  spec.repetitions = 5;
  spec.seed = 5;
  spec.n_negatives = 50;
  const MetricResult result = run_trials(dataset, spec, CodConfig{});
  CHECK(result.mean_auc_roc >= 0.9);
  CHECK(result.mean_auc_pr >= 0.5);
}

TEST_CASE("sweep emits one row per trial and matches the single-cell run") {
  const Dataset dataset = planted_outlier_dataset(7, 80, 0.1);
  const CodConfig base;

  CHECK(sweep(dataset, {}, base).empty());

  SweepCell cell;
  cell.dataset_name = "planted";
  cell.spec.labeled_count = 2;
  cell.spec.repetitions = 3;
  cell.spec.seed = 17;
  cell.spec.n_negatives = 25;
  const auto rows = sweep(dataset, {cell}, base);
  REQUIRE(rows.size() == 3);

  const MetricResult direct = run_trials(dataset, cell.spec, base);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(rows[t].dataset_name == "planted");
    CHECK(rows[t].labeled_count == 2);
    CHECK(rows[t].n_negatives == 25);
    CHECK(rows[t].trial == t);
    CHECK(rows[t].auc_roc == direct.trials[t].auc_roc);
    CHECK(rows[t].auc_pr == direct.trials[t].auc_pr);
  }

  std::ostringstream out;
  write_sweep_csv(rows, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "dataset,labeled_count,n_neg,trial,auc_roc,auc_pr");
  std::getline(in, line);
  CHECK(line.substr(0, 15) == "planted,2,25,0,");
}
