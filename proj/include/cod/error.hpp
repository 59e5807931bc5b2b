#pragma once

#include <stdexcept>
#include <string>

namespace cod {

enum class ErrorKind {
  // dataset
  MissingColumn,
  TypeMismatch,
  MissingValue,
  EmptyDataset,
  // fuzzy core
  DimensionMismatch,
  EmptyComplement,
  IndexOutOfRange,
  EmptyList,
  // relation builder
  NoUnlabeledObjects,
  MissingRadius,
  UnexpectedRadius,
  EmptyContext,
  // consistency
  EmptyClass,
  // detector
  LengthMismatch,
  NoLabeledOutliers,
  ConfigInvalid,
  // metrics
  DegenerateTruth,
  InsufficientOutliers,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace cod
