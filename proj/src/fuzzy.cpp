#include "cod/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "cod/error.hpp"

namespace cod {

double FuzzyRelationMatrix::row_sum(std::size_t i) const {
  const auto r = row(i);
  return std::accumulate(r.begin(), r.end(), 0.0);
}

bool FuzzyRelationMatrix::is_valid(double tol) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (std::abs((*this)(i, i) - 1.0) > tol) return false;
    for (std::size_t j = 0; j < n_; ++j) {
      const double r = (*this)(i, j);
      if (!(r >= -tol && r <= 1.0 + tol)) return false;
      if (std::abs(r - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

FuzzySet lower_approximation(const FuzzyRelationMatrix& relation, const FuzzySet& target) {
  const std::size_t n = relation.size();
  if (target.size() != n) {
    fail(ErrorKind::DimensionMismatch, "relation is " + std::to_string(n) + "x" +
                                           std::to_string(n) + ", fuzzy set has length " +
                                           std::to_string(target.size()));
  }
  FuzzySet result(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = relation.row(i);
    double inf = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      inf = std::min(inf, std::max(1.0 - row[j], target[j]));
    }
    result[i] = inf;
  }
  return result;
}

FuzzySet lower_approximation_crisp(const FuzzyRelationMatrix& relation,
                                   const std::vector<std::size_t>& target) {
  const std::size_t n = relation.size();
  std::vector<char> member(n, 0);
  for (const std::size_t j : target) {
    if (j >= n) fail(ErrorKind::DimensionMismatch, "target index " + std::to_string(j) +
                                                       " out of range for n=" + std::to_string(n));
    member[j] = 1;
  }
  if (target.size() >= n &&
      std::all_of(member.begin(), member.end(), [](char m) { return m != 0; })) {
    fail(ErrorKind::EmptyComplement, "crisp target covers the whole universe");
  }
  FuzzySet result(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = relation.row(i);
    double inf = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!member[j]) inf = std::min(inf, 1.0 - row[j]);
    }
    result[i] = inf;
  }
  return result;
}

FuzzySet similarity_class(const FuzzyRelationMatrix& relation, std::size_t i) {
  if (i >= relation.size()) {
    fail(ErrorKind::IndexOutOfRange,
         "index " + std::to_string(i) + " for n=" + std::to_string(relation.size()));
  }
  const auto row = relation.row(i);
  return FuzzySet(row.begin(), row.end());
}

double cardinality(const FuzzySet& set) {
  return std::accumulate(set.begin(), set.end(), 0.0);
}

FuzzyRelationMatrix conjunction(std::span<const FuzzyRelationMatrix* const> relations) {
  if (relations.empty()) fail(ErrorKind::EmptyList, "conjunction of zero relations");
  const std::size_t n = relations.front()->size();
  FuzzyRelationMatrix result(n, 1.0);
  for (const FuzzyRelationMatrix* relation : relations) {
    if (relation->size() != n) {
      fail(ErrorKind::DimensionMismatch, "conjunction of relations with different sizes");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        result(i, j) = std::min(result(i, j), (*relation)(i, j));
      }
    }
  }
  return result;
}

FuzzyRelationMatrix conjunction(std::span<const FuzzyRelationMatrix> relations) {
  std::vector<const FuzzyRelationMatrix*> pointers;
  pointers.reserve(relations.size());
  for (const auto& relation : relations) pointers.push_back(&relation);
  return conjunction(std::span<const FuzzyRelationMatrix* const>(pointers));
}

void dump_csv(const FuzzyRelationMatrix& relation, std::ostream& out) {
  char buffer[32];
  for (std::size_t i = 0; i < relation.size(); ++i) {
    const auto row = relation.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ',';
      std::snprintf(buffer, sizeof(buffer), "%.6f", row[j]);
      out << buffer;
    }
    out << '\n';
  }
}

}  // namespace cod
