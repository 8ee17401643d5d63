#pragma once

// Seeded property suites behind `pdcone verify`. Each suite runs `trials`
// seeded cases over dimensions 1..dim (2..dim where a suite needs n >= 2)
// and reports one line. Expected-negative checks (cases that must fail,
// e.g. a non-log-affine spec that must not be 0-homogeneous) are counted as
// extra trials.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pdcone {

struct VerifyOptions {
  std::size_t dim = 4;
  int trials = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol;  // suite default when absent
};

struct SuiteReport {
  std::string name;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  double worst = 0.0;  // largest deviation seen, in the suite's own measure
  double tol = 0.0;
  std::optional<std::string> counterexample;  // key=value tokens

  bool pass() const { return failures == 0; }
  // "PASS|FAIL <suite> trials=<n> worst=<dev>"
  std::string line() const;
  // One line of key=value tokens, plus a counterexample line when present.
  std::string dump() const;
};

const std::vector<std::string>& suite_names();
double default_tolerance(std::string_view suite);

// Throws ParseError for an unknown suite and PreconditionError for
// dim < 1 or trials < 1.
SuiteReport run_suite(std::string_view suite, const VerifyOptions& opts);

// The divergence specs exercised by the catalog-wide suites.
const std::vector<std::string>& catalog_specs();

}  // namespace pdcone
