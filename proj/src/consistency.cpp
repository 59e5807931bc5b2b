#include "cod/consistency.hpp"

#include <algorithm>

#include "cod/error.hpp"

namespace cod {

namespace {

FuzzyRelationMatrix subset_relation(const DecisionSystem& system,
                                    const std::vector<std::size_t>& attributes) {
  if (attributes.empty()) fail(ErrorKind::EmptyList, "empty attribute subset");
  std::vector<const FuzzyRelationMatrix*> selected;
  selected.reserve(attributes.size());
  for (const std::size_t k : attributes) {
    if (k >= system.relations.size()) {
      fail(ErrorKind::IndexOutOfRange, "attribute index " + std::to_string(k));
    }
    selected.push_back(&system.relations[k]);
  }
  return conjunction(std::span<const FuzzyRelationMatrix* const>(selected));
}

}  // namespace

DecisionSystem build_decision_system(const Dataset& dataset, const DecisionContext& context,
                                     const std::vector<std::optional<double>>& radii) {
  if (context.positives.empty()) fail(ErrorKind::EmptyClass, "no labeled outliers");
  if (context.negatives.empty()) fail(ErrorKind::EmptyClass, "no candidate inliers");
  if (radii.size() != dataset.columns.size()) {
    fail(ErrorKind::LengthMismatch, "one radius slot per attribute expected");
  }

  DecisionSystem system;
  system.universe = context.positives;
  system.universe.insert(system.universe.end(), context.negatives.begin(),
                         context.negatives.end());
  std::sort(system.universe.begin(), system.universe.end());

  std::vector<char> is_positive(dataset.n, 0);
  for (const std::size_t p : context.positives) is_positive[p] = 1;
  for (std::size_t pos = 0; pos < system.universe.size(); ++pos) {
    if (is_positive[system.universe[pos]]) {
      system.positive_class.push_back(pos);
    } else {
      system.negative_class.push_back(pos);
    }
  }

  system.relations.reserve(dataset.columns.size());
  for (std::size_t k = 0; k < dataset.columns.size(); ++k) {
    system.relations.push_back(
        attribute_relation_restricted(dataset.columns[k], radii[k], system.universe));
  }
  return system;
}

double fuzzy_dependency(const DecisionSystem& system, const std::vector<std::size_t>& attributes) {
  const FuzzyRelationMatrix relation = subset_relation(system, attributes);
  const FuzzySet lower_negative = lower_approximation_crisp(relation, system.negative_class);
  const FuzzySet lower_positive = lower_approximation_crisp(relation, system.positive_class);
  double mass = 0.0;
  for (std::size_t i = 0; i < lower_negative.size(); ++i) {
    mass += std::max(lower_negative[i], lower_positive[i]);
  }
  return mass / static_cast<double>(system.universe.size());
}

double classification_consistency(const DecisionSystem& system,
                                  const std::vector<std::size_t>& attributes) {
  if (system.positive_class.empty() || system.negative_class.empty()) {
    fail(ErrorKind::EmptyClass, "both decision classes must be nonempty");
  }
  const FuzzyRelationMatrix relation = subset_relation(system, attributes);
  const FuzzySet lower_negative = lower_approximation_crisp(relation, system.negative_class);
  const FuzzySet lower_positive = lower_approximation_crisp(relation, system.positive_class);
  return cardinality(lower_negative) / static_cast<double>(system.negative_class.size()) +
         cardinality(lower_positive) / static_cast<double>(system.positive_class.size());
}

}  // namespace cod
