#include "cod/relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cod/error.hpp"

namespace cod {

namespace {

double pair_distance(const Column& column, std::size_t i, std::size_t j) {
  if (column.kind == AttributeKind::Nominal) {
    return column.codes[i] == column.codes[j] ? 0.0 : 1.0;
  }
  return std::abs(column.values[i] - column.values[j]);
}

const std::vector<double>& normalized_values(const Column& column) {
  if (column.values.size() != column.raw.size()) {
    fail(ErrorKind::ConfigInvalid, "numeric column '" + column.name + "' is not normalized");
  }
  return column.values;
}

// Sum over the universe of per-attribute distances from every object. Exact
// ties in the totals are common (symmetric values, shared categories) and
// break by row order downstream, so the summation order must stay the plain
// j-ascending loop of the definition; a cleverer prefix-sum formulation
// rounds differently and can flip those ties.
std::vector<double> distance_sums(const Column& column, std::size_t n) {
  std::vector<double> sums(n, 0.0);
  if (column.kind == AttributeKind::Nominal) {
    std::vector<std::size_t> count(column.categories.size(), 0);
    for (const int code : column.codes) ++count[static_cast<std::size_t>(code)];
    for (std::size_t i = 0; i < n; ++i) {
      sums[i] = static_cast<double>(n - count[static_cast<std::size_t>(column.codes[i])]);
    }
    return sums;
  }
  const auto& values = normalized_values(column);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += std::abs(values[i] - values[j]);
    sums[i] = sum;
  }
  return sums;
}

double relation_entry(const Column& column, std::optional<double> lambda, std::size_t i,
                      std::size_t j) {
  if (column.kind == AttributeKind::Nominal) {
    return column.codes[i] == column.codes[j] ? 1.0 : 0.0;
  }
  const double d = std::abs(column.values[i] - column.values[j]);
  return d <= *lambda ? 1.0 - d : 0.0;
}

void check_radius_argument(const Column& column, const std::optional<double>& lambda) {
  if (column.kind == AttributeKind::Numeric) {
    if (!lambda) fail(ErrorKind::MissingRadius, "numeric column '" + column.name + "'");
    normalized_values(column);
  } else if (lambda) {
    fail(ErrorKind::UnexpectedRadius, "nominal column '" + column.name + "'");
  }
}

}  // namespace

DecisionContext select_candidate_negatives(const Dataset& dataset, std::size_t n_negatives,
                                           const std::vector<std::size_t>& positives) {
  if (n_negatives < 1) fail(ErrorKind::ConfigInvalid, "candidate negative count must be >= 1");
  const std::size_t n = dataset.n;
  if (dataset.columns.empty()) fail(ErrorKind::EmptyDataset, "dataset has no attributes");

  std::vector<double> average_distance(n, 0.0);
  for (const Column& column : dataset.columns) {
    const auto sums = distance_sums(column, n);
    for (std::size_t i = 0; i < n; ++i) average_distance[i] += sums[i] / static_cast<double>(n);
  }
  const double m = static_cast<double>(dataset.columns.size());
  for (double& d : average_distance) d /= m;

  std::vector<char> is_positive(n, 0);
  for (const std::size_t p : positives) is_positive[p] = 1;

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_positive[i]) candidates.push_back(i);
  }
  if (candidates.empty()) fail(ErrorKind::NoUnlabeledObjects, "every object is a labeled outlier");

  // smallest average distance first; stable keeps row-order tie-break
  std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    return average_distance[a] < average_distance[b];
  });
  candidates.resize(std::min(n_negatives, candidates.size()));
  std::sort(candidates.begin(), candidates.end());

  DecisionContext context;
  context.positives = positives;
  std::sort(context.positives.begin(), context.positives.end());
  context.negatives = std::move(candidates);
  context.requested_negatives = n_negatives;
  return context;
}

FuzzyRelationMatrix attribute_relation(const Column& column, std::optional<double> lambda) {
  check_radius_argument(column, lambda);
  const std::size_t n = column.size();
  FuzzyRelationMatrix relation(n);
  // fill whole rows: mirroring the upper triangle writes with stride n,
  // which falls off a cliff once the matrix outgrows the cache
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      relation(i, j) = relation_entry(column, lambda, i, j);
    }
  }
  return relation;
}

FuzzyRelationMatrix attribute_relation_restricted(const Column& column,
                                                  std::optional<double> lambda,
                                                  const std::vector<std::size_t>& rows) {
  check_radius_argument(column, lambda);
  const std::size_t k = rows.size();
  FuzzyRelationMatrix relation(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double r = relation_entry(column, lambda, rows[a], rows[b]);
      relation(a, b) = r;
      relation(b, a) = r;
    }
  }
  return relation;
}

std::vector<double> attribute_relation_row_sums(const Column& column,
                                                std::optional<double> lambda) {
  check_radius_argument(column, lambda);
  const std::size_t n = column.size();
  std::vector<double> sums(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += relation_entry(column, lambda, i, j);
    sums[i] = sum;
  }
  return sums;
}

double radius_objective(const Column& column, const DecisionContext& context, double lambda) {
  if (context.negatives.empty() || context.positives.empty()) {
    fail(ErrorKind::EmptyContext, "radius objective needs labeled positives and candidates");
  }
  const auto& values = normalized_values(column);
  const std::size_t n = values.size();
  auto class_mass = [&](const std::vector<std::size_t>& members) {
    double mass = 0.0;
    for (const std::size_t i : members) {
      for (std::size_t j = 0; j < n; ++j) {
        const double d = std::abs(values[i] - values[j]);
        if (d <= lambda) mass += 1.0 - d;
      }
    }
    return mass;
  };
  const double nd = static_cast<double>(n);
  return class_mass(context.negatives) / (static_cast<double>(context.negatives.size()) * nd) -
         class_mass(context.positives) / (static_cast<double>(context.positives.size()) * nd);
}

FuzzyRadius optimize_fuzzy_radius(const Column& column, const DecisionContext& context,
                                  std::size_t attribute_index) {
  if (context.negatives.empty() || context.positives.empty()) {
    fail(ErrorKind::EmptyContext, "radius optimization needs labeled positives and candidates");
  }
  const auto& values = normalized_values(column);
  const std::size_t n = values.size();

  // Distances from every context row to every object, one sorted array per
  // class. The objective is piecewise constant with jumps exactly at these
  // distances, so evaluating at every breakpoint finds the true maximum; a
  // single ascending sweep with two cursors keeps the whole search at
  // O(|context| * n log(|context| * n)).
  auto class_distances = [&](const std::vector<std::size_t>& members) {
    std::vector<double> distances;
    distances.reserve(members.size() * n);
    for (const std::size_t i : members) {
      for (std::size_t j = 0; j < n; ++j) distances.push_back(std::abs(values[i] - values[j]));
    }
    std::sort(distances.begin(), distances.end());
    return distances;
  };
  const std::vector<double> negative_d = class_distances(context.negatives);
  const std::vector<double> positive_d = class_distances(context.positives);

  std::vector<double> candidates{0.0, 1.0};
  candidates.insert(candidates.end(), negative_d.begin(), negative_d.end());
  candidates.insert(candidates.end(), positive_d.begin(), positive_d.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const double neg_scale =
      static_cast<double>(context.negatives.size()) * static_cast<double>(n);
  const double pos_scale =
      static_cast<double>(context.positives.size()) * static_cast<double>(n);

  // Exact objective ties across breakpoints are structural (for instance a
  // positive-negative pair distance adds equal and opposite jumps), so the
  // argmax comparison needs a tolerance: otherwise rounding noise would pick
  // an arbitrary member of the tie instead of the smallest radius.
  constexpr double kTie = 1e-12;
  double negative_mass = 0.0;
  double positive_mass = 0.0;
  std::size_t next_negative = 0;
  std::size_t next_positive = 0;
  double best_lambda = 0.0;
  double best_objective = -std::numeric_limits<double>::infinity();
  for (const double lambda : candidates) {
    while (next_negative < negative_d.size() && negative_d[next_negative] <= lambda) {
      negative_mass += 1.0 - negative_d[next_negative++];
    }
    while (next_positive < positive_d.size() && positive_d[next_positive] <= lambda) {
      positive_mass += 1.0 - positive_d[next_positive++];
    }
    const double objective = negative_mass / neg_scale - positive_mass / pos_scale;
    if (objective > best_objective + kTie) {  // smallest radius wins ties
      best_objective = objective;
      best_lambda = lambda;
    }
  }
  return {best_lambda, attribute_index, best_objective};
}

}  // namespace cod
