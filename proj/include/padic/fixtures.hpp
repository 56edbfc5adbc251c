#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "padic/curve.hpp"

namespace padic {

/// One expected value of a golden record. `value` is the rendered output
/// of the stage; with `prefix` set only its leading terms are compared.
struct GoldenExpectation {
  std::string stage;  ///< e2, frobenius, sigma, height, multiple, count
  Integer p;
  int prec = 0;
  std::string value;
  bool prefix = false;
  Integer modulus;      ///< multiple: R
  std::uint64_t m = 0;  ///< multiple: the multiplier
};

struct CurveFixture {
  std::string label;
  CurveQ E;
  std::optional<RationalPoint> generator;
  Integer n2 = 1;
  std::vector<GoldenExpectation> expected;
};

/// Parses one JSON record; throws InvalidArgument on malformed input.
CurveFixture parse_fixture(const std::string& json_line);

/// Renders the output of one stage for comparison with an expectation.
std::string render_stage(const CurveFixture& fx, const GoldenExpectation& ex);

struct GoldenFailure {
  std::string label;
  std::string stage;
  int index = -1;  ///< first mismatching term, -1 when the stage threw
  std::string expected;
  std::string actual;
};

struct GoldenReport {
  int records = 0;
  int checks = 0;
  std::vector<GoldenFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Runs every record of a JSON-lines stream. Blank lines are skipped.
GoldenReport run_golden_stream(std::istream& in);
GoldenReport run_golden_suite(const std::string& path);

/// Splits a rendered value into its " + "-separated terms.
std::vector<std::string> split_terms(const std::string& s);

}  // namespace padic
