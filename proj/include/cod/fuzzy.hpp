#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace cod {

/// Length-n membership vector with entries in [0,1].
using FuzzySet = std::vector<double>;

/// Dense symmetric reflexive n-by-n membership matrix in [0,1].
class FuzzyRelationMatrix {
 public:
  FuzzyRelationMatrix() = default;
  explicit FuzzyRelationMatrix(std::size_t n, double fill = 0.0)
      : n_(n), entries_(n * n, fill) {
    for (std::size_t i = 0; i < n_; ++i) entries_[i * n_ + i] = 1.0;
  }

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }

  double row_sum(std::size_t i) const;

  bool is_valid(double tol = 1e-9) const;  // reflexive, symmetric, entries in [0,1]

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// result(x_i) = inf_j max{1 - R(x_i,x_j), X(x_j)}.
FuzzySet lower_approximation(const FuzzyRelationMatrix& relation, const FuzzySet& target);

/// Crisp target: result(x_i) = inf_{j not in X} (1 - R(x_i,x_j)).
/// The complement of X must be nonempty.
FuzzySet lower_approximation_crisp(const FuzzyRelationMatrix& relation,
                                   const std::vector<std::size_t>& target);

/// Row i of the relation, i.e. the fuzzy similarity class of x_i.
FuzzySet similarity_class(const FuzzyRelationMatrix& relation, std::size_t i);

/// Sum of memberships.
double cardinality(const FuzzySet& set);

/// Entrywise minimum over a nonempty list of same-size relations.
FuzzyRelationMatrix conjunction(std::span<const FuzzyRelationMatrix> relations);
FuzzyRelationMatrix conjunction(std::span<const FuzzyRelationMatrix* const> relations);

/// Row-major debug dump, 6 decimal places; used for test fixtures.
void dump_csv(const FuzzyRelationMatrix& relation, std::ostream& out);

}  // namespace cod
