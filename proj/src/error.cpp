#include "cod/error.hpp"

namespace cod {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::MissingValue: return "MissingValue";
    case ErrorKind::EmptyDataset: return "EmptyDataset";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyComplement: return "EmptyComplement";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::NoUnlabeledObjects: return "NoUnlabeledObjects";
    case ErrorKind::MissingRadius: return "MissingRadius";
    case ErrorKind::UnexpectedRadius: return "UnexpectedRadius";
    case ErrorKind::EmptyContext: return "EmptyContext";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NoLabeledOutliers: return "NoLabeledOutliers";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::DegenerateTruth: return "DegenerateTruth";
    case ErrorKind::InsufficientOutliers: return "InsufficientOutliers";
  }
  return "UnknownError";
}

}  // namespace cod
