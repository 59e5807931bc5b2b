#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/fuzzy.hpp"
#include "cod/relation.hpp"

namespace cod {

/// The restricted fuzzy decision system over U' = U+ union U-. Class index
/// sets are positions within `universe`, not original row ids.
struct DecisionSystem {
  std::vector<std::size_t> universe;            // original row ids, ascending
  std::vector<FuzzyRelationMatrix> relations;   // one per dataset attribute
  std::vector<std::size_t> positive_class;      // positions in universe
  std::vector<std::size_t> negative_class;      // positions in universe
};

/// radii[k] must hold a value for every numeric attribute k and be empty for
/// nominal attributes. Both classes must be nonempty.
DecisionSystem build_decision_system(const Dataset& dataset, const DecisionContext& context,
                                     const std::vector<std::optional<double>>& radii);

/// gamma_B(d): cardinality of the union (pointwise max) of the two crisp
/// lower approximations under the conjunction of B, over |U'|. In [0,1].
double fuzzy_dependency(const DecisionSystem& system, const std::vector<std::size_t>& attributes);

/// xi_B(d): class-size-balanced sum of the two lower-approximation masses,
/// |lower[x-]|/|U-| + |lower[x+]|/|U+|. In [0,2].
double classification_consistency(const DecisionSystem& system,
                                  const std::vector<std::size_t>& attributes);

}  // namespace cod
