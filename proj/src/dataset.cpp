#include "cod/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "cod/error.hpp"

#include "json.hpp"

namespace cod {

namespace {

AttributeKind kind_from_string(const std::string& text) {
  if (text == "nominal") return AttributeKind::Nominal;
  if (text == "numeric") return AttributeKind::Numeric;
  if (text == "ignore") return AttributeKind::Ignore;
  fail(ErrorKind::ConfigInvalid, "unknown attribute kind '" + text + "'");
}

const char* kind_to_string(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::Nominal: return "nominal";
    case AttributeKind::Numeric: return "numeric";
    case AttributeKind::Ignore: return "ignore";
  }
  return "?";
}

// RFC-4180 record reader: quoted fields, escaped quotes, embedded newlines.
// Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string field;
  bool quoted = false;
  while (true) {
    if (quoted) {
      if (c == EOF) fail(ErrorKind::TypeMismatch, "unterminated quoted field");
      if (c == '"') {
        const int next = in.get();
        if (next == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = next;
          continue;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else {
      if (c == EOF || c == '\n') {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        fields.push_back(std::move(field));
        return true;
      }
      if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    c = in.get();
  }
}

double parse_numeric(const std::string& token, std::size_t row, const std::string& column) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  // allow trailing spaces only
  while (consumed < token.size() && token[consumed] == ' ') ++consumed;
  if (consumed != token.size() || token.empty()) {
    fail(ErrorKind::TypeMismatch, "non-numeric value '" + token + "' at row " +
                                      std::to_string(row) + ", column '" + column + "'");
  }
  return value;
}

}  // namespace

DatasetSchema DatasetSchema::from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ConfigInvalid, std::string("schema JSON: ") + e.what());
  }
  DatasetSchema schema;
  for (const auto& item : doc.at("columns")) {
    schema.columns.push_back(
        {item.at("name").get<std::string>(), kind_from_string(item.at("kind").get<std::string>())});
  }
  if (doc.contains("label_column") && !doc["label_column"].is_null()) {
    schema.label_column = doc["label_column"].get<std::string>();
  }
  std::vector<std::string> names;
  for (const auto& column : schema.columns) names.push_back(column.name);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    fail(ErrorKind::ConfigInvalid, "duplicate column name in schema");
  }
  if (schema.label_column &&
      !std::binary_search(names.begin(), names.end(), *schema.label_column)) {
    fail(ErrorKind::MissingColumn, "label column '" + *schema.label_column + "' not in schema");
  }
  return schema;
}

DatasetSchema DatasetSchema::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigInvalid, "cannot open schema file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

std::vector<std::size_t> Dataset::positives() const {
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::PositiveOutlier) result.push_back(i);
  }
  return result;
}

Dataset load_csv(const std::string& path, const DatasetSchema& schema, MissingPolicy missing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::MissingColumn, "cannot open data file '" + path + "'");

  std::vector<std::string> header;
  if (!read_record(in, header)) fail(ErrorKind::EmptyDataset, "no header row in '" + path + "'");
  if (header.size() != schema.columns.size()) {
    fail(ErrorKind::MissingColumn,
         "header has " + std::to_string(header.size()) + " columns, schema declares " +
             std::to_string(schema.columns.size()));
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != schema.columns[c].name) {
      fail(ErrorKind::MissingColumn, "header column '" + header[c] + "' does not match schema '" +
                                         schema.columns[c].name + "'");
    }
  }

  const std::size_t width = schema.columns.size();
  std::vector<std::vector<std::string>> cells(width);
  std::vector<std::string> record;
  std::size_t n = 0;
  while (read_record(in, record)) {
    if (record.size() == 1 && record[0].empty()) continue;  // trailing blank line
    if (record.size() != width) {
      fail(ErrorKind::TypeMismatch, "row " + std::to_string(n + 1) + " has " +
                                        std::to_string(record.size()) + " fields, expected " +
                                        std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) cells[c].push_back(std::move(record[c]));
    ++n;
  }
  if (n == 0) fail(ErrorKind::EmptyDataset, "'" + path + "' contains no data rows");

  Dataset dataset;
  dataset.n = n;
  dataset.labels.assign(n, Label::Unlabeled);

  for (std::size_t c = 0; c < width; ++c) {
    const auto& decl = schema.columns[c];
    const bool is_label = schema.label_column && decl.name == *schema.label_column;
    if (is_label) {
      for (std::size_t r = 0; r < n; ++r) {
        const std::string& token = cells[c][r];
        if (token == "1") {
          dataset.labels[r] = Label::PositiveOutlier;
        } else if (!token.empty() && token != "0") {
          fail(ErrorKind::TypeMismatch, "label value '" + token + "' at row " +
                                            std::to_string(r + 1) + " (expected 1, 0 or empty)");
        }
      }
      continue;
    }
    if (decl.kind == AttributeKind::Ignore) continue;

    Column column;
    column.name = decl.name;
    column.kind = decl.kind;
    if (decl.kind == AttributeKind::Numeric) {
      column.raw.reserve(n);
      std::vector<std::size_t> holes;
      double sum = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const std::string& token = cells[c][r];
        if (token.empty()) {
          if (missing == MissingPolicy::Reject) {
            fail(ErrorKind::MissingValue,
                 "empty cell at row " + std::to_string(r + 1) + ", column '" + decl.name + "'");
          }
          holes.push_back(r);
          column.raw.push_back(0.0);
          continue;
        }
        const double value = parse_numeric(token, r + 1, decl.name);
        column.raw.push_back(value);
        sum += value;
      }
      if (!holes.empty()) {
        const std::size_t present = n - holes.size();
        const double mean = present == 0 ? 0.0 : sum / static_cast<double>(present);
        for (const std::size_t r : holes) column.raw[r] = mean;
      }
    } else {
      column.codes.reserve(n);
      std::map<std::string, int> code_of;
      for (std::size_t r = 0; r < n; ++r) {
        std::string token = cells[c][r];
        if (token.empty()) {
          if (missing == MissingPolicy::Reject) {
            fail(ErrorKind::MissingValue,
                 "empty cell at row " + std::to_string(r + 1) + ", column '" + decl.name + "'");
          }
          token = "<missing>";  // dedicated extra category
        }
        auto [it, inserted] = code_of.try_emplace(token, static_cast<int>(column.categories.size()));
        if (inserted) column.categories.push_back(token);
        column.codes.push_back(it->second);
      }
    }
    dataset.columns.push_back(std::move(column));
  }
  return dataset;
}

std::vector<double> normalize_minmax(const std::vector<double>& raw) {
  const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(raw.size(), 0.0);
  if (hi > lo) {
    const double span = hi - lo;
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - lo) / span;
  }
  return out;
}

void normalize(Dataset& dataset) {
  for (auto& column : dataset.columns) {
    if (column.kind == AttributeKind::Numeric) column.values = normalize_minmax(column.raw);
  }
}

void write_csv(const Dataset& dataset, std::ostream& out) {
  for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << dataset.columns[c].name;
  }
  out << '\n';
  char buffer[64];
  for (std::size_t r = 0; r < dataset.n; ++r) {
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
      if (c > 0) out << ',';
      const Column& column = dataset.columns[c];
      if (column.kind == AttributeKind::Numeric) {
        std::snprintf(buffer, sizeof(buffer), "%.12g", column.raw[r]);
        out << buffer;
      } else {
        out << column.categories[static_cast<std::size_t>(column.codes[r])];
      }
    }
    out << '\n';
  }
}

}  // namespace cod
