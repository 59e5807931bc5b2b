#pragma once

// Independent, literal transcriptions of the detector's defining equations,
// kept deliberately naive (triple loops, no shared code with the library's
// computation paths) so they can serve as oracles.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cod/dataset.hpp"
#include "cod/fuzzy.hpp"
#include "cod/relation.hpp"
#include "cod/rng.hpp"

namespace cod::testing {

// Dataset construction without CSV plumbing.
Column numeric_column(std::string name, std::vector<double> raw);
Column nominal_column(std::string name, std::vector<int> codes);
Dataset make_dataset(std::vector<Column> columns, std::vector<std::size_t> positives = {});

// The 3x3 relation pair of the small worked example.
FuzzyRelationMatrix example1_a1();
FuzzyRelationMatrix example1_a2();

// The 4-row patient table (gender, age, weight) with x3 labeled.
Dataset patients_dataset();

FuzzyRelationMatrix naive_attribute_relation(const Column& column, std::optional<double> lambda);

double naive_radius_objective(const Column& column, const std::vector<std::size_t>& negatives,
                              const std::vector<std::size_t>& positives, double lambda);

// All change points of the radius objective: {0, 1} plus every distance
// between a context row and any object.
std::vector<double> radius_breakpoints(const Column& column,
                                       const std::vector<std::size_t>& negatives,
                                       const std::vector<std::size_t>& positives);

// Smallest breakpoint maximizing the naive objective.
double naive_optimal_radius(const Column& column, const std::vector<std::size_t>& negatives,
                            const std::vector<std::size_t>& positives);

// Grid search over [0,1] with the given step; returns the best objective.
double grid_max_radius_objective(const Column& column, const std::vector<std::size_t>& negatives,
                                 const std::vector<std::size_t>& positives, double step);

std::vector<std::size_t> naive_select_negatives(const Dataset& dataset, std::size_t n_negatives,
                                                const std::vector<std::size_t>& positives);

struct NaiveDetectResult {
  std::vector<double> scores;
  std::vector<double> lambdas;  // per attribute; untouched entries stay 0 for nominal
  std::vector<double> xis;
  double threshold = 0.0;
};

// End-to-end literal pipeline; fixed_radii overrides by attribute name.
NaiveDetectResult naive_detect(const Dataset& dataset, std::size_t n_negatives,
                               const std::map<std::string, double>& fixed_radii = {});

// Random generators for property tests.
FuzzyRelationMatrix random_similarity_relation(SplitMix64& rng, std::size_t n);
Dataset random_dataset(SplitMix64& rng, std::size_t n, std::size_t m, std::size_t n_positives);

// n objects, 2 numeric + 2 nominal attributes, planted outlier fraction.
Dataset planted_outlier_dataset(std::uint64_t seed, std::size_t n, double contamination);

}  // namespace cod::testing
