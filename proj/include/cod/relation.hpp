#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/fuzzy.hpp"

namespace cod {

/// Radius cutoff for a numeric attribute's similarity relation, together
/// with the objective value its optimization achieved.
struct FuzzyRadius {
  double value = 0.0;
  std::size_t attribute = 0;
  double objective = 0.0;
};

/// Labeled positives plus pseudo-labeled candidate inliers.
struct DecisionContext {
  std::vector<std::size_t> positives;  // U+
  std::vector<std::size_t> negatives;  // U-, |U-| = min(requested, n - |U+|)
  std::size_t requested_negatives = 0;
};

/// Picks the requested number of unlabeled objects with the smallest global
/// average distance (mean over attributes of per-attribute mean distance to
/// the whole universe) as candidate inliers. Ties break by row order.
DecisionContext select_candidate_negatives(const Dataset& dataset, std::size_t n_negatives,
                                           const std::vector<std::size_t>& positives);

/// Per-attribute similarity relation. Nominal: exact-match indicator.
/// Numeric (normalized): 1 - |f_i - f_j| when the distance is within lambda,
/// else 0. A radius must be supplied iff the column is numeric.
FuzzyRelationMatrix attribute_relation(const Column& column, std::optional<double> lambda);

/// Same relation restricted to the given rows (in the given order).
FuzzyRelationMatrix attribute_relation_restricted(const Column& column,
                                                  std::optional<double> lambda,
                                                  const std::vector<std::size_t>& rows);

/// Row sums of attribute_relation without materializing the matrix.
std::vector<double> attribute_relation_row_sums(const Column& column,
                                                std::optional<double> lambda);

/// The label-informed objective: mean similarity-class cardinality of the
/// candidate inliers minus that of the labeled outliers, both over the full
/// universe and normalized by n.
double radius_objective(const Column& column, const DecisionContext& context, double lambda);

/// Maximizes radius_objective over the exact breakpoint set {0} + {distances
/// between a context row and any object} + {1}; returns the smallest radius
/// achieving the maximum, with objective ties resolved within 1e-12.
FuzzyRadius optimize_fuzzy_radius(const Column& column, const DecisionContext& context,
                                  std::size_t attribute_index = 0);

}  // namespace cod
