#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cod {

enum class AttributeKind { Nominal, Numeric, Ignore };

struct SchemaColumn {
  std::string name;
  AttributeKind kind = AttributeKind::Numeric;
};

/// Declares column names/kinds of an input CSV. Schema is mandatory: no
/// automatic type inference is attempted.
struct DatasetSchema {
  std::vector<SchemaColumn> columns;
  std::optional<std::string> label_column;

  static DatasetSchema from_json_file(const std::string& path);
  static DatasetSchema from_json_text(const std::string& text);
};

enum class Label : std::uint8_t { Unlabeled = 0, PositiveOutlier = 1 };

enum class MissingPolicy { Reject, Impute };

struct Column {
  std::string name;
  AttributeKind kind = AttributeKind::Numeric;

  // Numeric: raw holds parsed values, values holds the min-max normalized
  // copy once normalize() has run (empty before that).
  std::vector<double> raw;
  std::vector<double> values;

  // Nominal: dense codes 0..#categories-1 plus the code -> string map.
  std::vector<int> codes;
  std::vector<std::string> categories;

  std::size_t size() const {
    return kind == AttributeKind::Nominal ? codes.size() : raw.size();
  }
};

/// Immutable after load + normalize; safe to share read-only across workers.
struct Dataset {
  std::size_t n = 0;
  std::vector<Column> columns;  // attributes only; Ignore columns are dropped
  std::vector<Label> labels;    // length n; all Unlabeled when no label column

  std::vector<std::size_t> positives() const;
};

/// Parses a UTF-8, RFC-4180 CSV with a header row matching the schema.
/// Label cells must be "1" (labeled outlier), "0" or empty.
Dataset load_csv(const std::string& path, const DatasetSchema& schema,
                 MissingPolicy missing = MissingPolicy::Reject);

/// Min-max normalization to [0,1]; a constant column maps to all zeros so
/// identical raw values keep similarity 1.
std::vector<double> normalize_minmax(const std::vector<double>& raw);

/// Normalizes every numeric column in place (over the whole universe).
void normalize(Dataset& dataset);

/// Re-serializes raw values (nominal as category strings, numeric to 12
/// significant digits); used by the round-trip tests.
void write_csv(const Dataset& dataset, std::ostream& out);

}  // namespace cod
