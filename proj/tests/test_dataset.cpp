#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cod/dataset.hpp"
#include "cod/error.hpp"
#include "cod/rng.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace cod;
using namespace cod::testing;

namespace {

const std::string kFixtures = COD_FIXTURE_DIR;

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = temp_file(name);
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

DatasetSchema patients_schema() {
  return DatasetSchema::from_json_file(kFixtures + "/patients.schema.json");
}

}  // namespace

TEST_CASE("loading the patient table") {
  Dataset dataset = load_csv(kFixtures + "/patients.csv", patients_schema());
  CHECK(dataset.n == 4);
  CHECK(dataset.columns.size() == 3);
  CHECK(dataset.positives() == std::vector<std::size_t>{2});
  CHECK(dataset.columns[0].kind == AttributeKind::Nominal);
  CHECK(dataset.columns[0].codes == std::vector<int>{0, 0, 1, 1});
  CHECK(dataset.columns[1].raw == std::vector<double>{38, 47, 51, 44});

  normalize(dataset);
  CHECK(dataset.columns[1].values[0] == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(dataset.columns[1].values[1] == doctest::Approx(0.692).epsilon(1e-3));
  CHECK(dataset.columns[1].values[2] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(dataset.columns[1].values[3] == doctest::Approx(0.462).epsilon(1e-3));
  CHECK(dataset.columns[2].values[0] == doctest::Approx(0.503).epsilon(1e-3));
  CHECK(dataset.columns[2].values[1] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(dataset.columns[2].values[2] == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(dataset.columns[2].values[3] == doctest::Approx(0.660).epsilon(1e-3));
}

TEST_CASE("CSV with zero data rows is rejected") {
  const auto path = write_temp("cod_empty.csv", "gender,age,weight,diagnosis\n");
  CHECK_THROWS_WITH_AS(load_csv(path.string(), patients_schema()),
                       doctest::Contains("EmptyDataset"), Error);
}

TEST_CASE("non-numeric token names the offending row and column") {
  const auto path = write_temp("cod_bad.csv",
                               "gender,age,weight,diagnosis\nmale,abc,62.5,0\n");
  try {
    load_csv(path.string(), patients_schema());
    FAIL("expected TypeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TypeMismatch);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
    CHECK(std::string(e.what()).find("age") != std::string::npos);
  }
}

TEST_CASE("header mismatches are reported") {
  const auto path = write_temp("cod_header.csv", "sex,age,weight,diagnosis\nmale,38,62.5,0\n");
  CHECK_THROWS_WITH_AS(load_csv(path.string(), patients_schema()),
                       doctest::Contains("MissingColumn"), Error);
}

TEST_CASE("missing values are rejected by default and imputed on request") {
  const auto path = write_temp("cod_missing.csv",
                               "gender,age,weight,diagnosis\n"
                               "male,38,62.5,0\n"
                               ",47,,0\n"
                               "female,51,52.6,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path.string(), patients_schema()),
                       doctest::Contains("MissingValue"), Error);

  const Dataset dataset = load_csv(path.string(), patients_schema(), MissingPolicy::Impute);
  // numeric hole takes the column mean of the present values
  CHECK(dataset.columns[2].raw[1] == doctest::Approx((62.5 + 52.6) / 2).epsilon(1e-12));
  // nominal hole becomes its own category
  CHECK(dataset.columns[0].categories.size() == 3);
  CHECK(dataset.columns[0].codes[1] != dataset.columns[0].codes[0]);
  CHECK(dataset.columns[0].codes[1] != dataset.columns[0].codes[2]);
}

TEST_CASE("RFC-4180 quoting: embedded commas, quotes and newlines") {
  const auto schema = DatasetSchema::from_json_text(
      R"({"columns":[{"name":"note","kind":"nominal"},{"name":"v","kind":"numeric"}],"label_column":null})");
  const auto path = write_temp("cod_quoted.csv",
                               "note,v\n\"a,b\",1\n\"say \"\"hi\"\"\",2\n\"two\nlines\",3\n");
  const Dataset dataset = load_csv(path.string(), schema);
  REQUIRE(dataset.n == 3);
  CHECK(dataset.columns[0].categories[0] == "a,b");
  CHECK(dataset.columns[0].categories[1] == "say \"hi\"");
  CHECK(dataset.columns[0].categories[2] == "two\nlines");
}

TEST_CASE("schema validation") {
  CHECK_THROWS_WITH_AS(DatasetSchema::from_json_text(
                           R"({"columns":[{"name":"a","kind":"numeric"}],"label_column":"d"})"),
                       doctest::Contains("MissingColumn"), Error);
  CHECK_THROWS_WITH_AS(
      DatasetSchema::from_json_text(
          R"({"columns":[{"name":"a","kind":"numeric"},{"name":"a","kind":"nominal"}]})"),
      doctest::Contains("duplicate"), Error);
  CHECK_THROWS_WITH_AS(DatasetSchema::from_json_text("not json"), doctest::Contains("JSON"),
                       Error);
}

TEST_CASE("min-max normalization golden values") {
  const auto ages = normalize_minmax({38, 47, 51, 44});
  CHECK(ages[0] == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(ages[1] == doctest::Approx(0.692).epsilon(1e-3));
  CHECK(ages[2] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(ages[3] == doctest::Approx(0.462).epsilon(1e-3));

  const auto weights = normalize_minmax({62.5, 72.3, 52.6, 65.6});
  CHECK(weights[0] == doctest::Approx(0.503).epsilon(1e-3));
  CHECK(weights[1] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(weights[2] == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(weights[3] == doctest::Approx(0.660).epsilon(1e-3));

  CHECK(normalize_minmax({7, 7, 7}) == std::vector<double>{0, 0, 0});
}

TEST_CASE("normalization is idempotent and order preserving") {
  SplitMix64 rng(11, 0);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + rng.next_below(20);
    std::vector<double> raw(n);
    for (double& v : raw) v = 20.0 * rng.next_double() - 10.0;

    const auto once = normalize_minmax(raw);
    const auto twice = normalize_minmax(once);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(once[i] - twice[i]) <= 1e-12);

    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    if (*hi > *lo) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          REQUIRE((raw[i] < raw[j]) == (once[i] < once[j]));
        }
      }
    }
  }
}

TEST_CASE("write/parse round trip preserves raw values") {
  SplitMix64 rng(12, 0);
  for (int iter = 0; iter < 20; ++iter) {
    const Dataset original = random_dataset(rng, 3 + rng.next_below(10), 1 + rng.next_below(4), 0);

    std::ostringstream csv;
    write_csv(original, csv);

    std::ostringstream schema_json;
    schema_json << R"({"columns":[)";
    for (std::size_t c = 0; c < original.columns.size(); ++c) {
      if (c > 0) schema_json << ',';
      schema_json << R"({"name":")" << original.columns[c].name << R"(","kind":")"
                  << (original.columns[c].kind == AttributeKind::Nominal ? "nominal" : "numeric")
                  << R"("})";
    }
    schema_json << R"(],"label_column":null})";

    const auto path = write_temp("cod_roundtrip.csv", csv.str());
    const Dataset reparsed =
        load_csv(path.string(), DatasetSchema::from_json_text(schema_json.str()));
    REQUIRE(reparsed.n == original.n);
    for (std::size_t c = 0; c < original.columns.size(); ++c) {
      if (original.columns[c].kind == AttributeKind::Nominal) {
        for (std::size_t r = 0; r < original.n; ++r) {
          REQUIRE(original.columns[c].categories[original.columns[c].codes[r]] ==
                  reparsed.columns[c].categories[reparsed.columns[c].codes[r]]);
        }
      } else {
        for (std::size_t r = 0; r < original.n; ++r) {
          const double a = original.columns[c].raw[r];
          const double b = reparsed.columns[c].raw[r];
          REQUIRE(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        }
      }
    }
  }
}
