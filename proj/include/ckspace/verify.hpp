#pragma once

// Property and oracle suites shared by the CLI `verify` command and the
// acceptance runner. Each suite reduces its samples to per-signature maxima
// and compares them with fixed tolerances.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ckspace/ck_scalar.hpp"

namespace ckspace {

enum class Suite {
  Brackets,
  Casimir,
  Conservation,
  Oracle,
  Split,
  Superintegrable,
  Geometry,
  Continuity,
};

const std::array<Suite, 8>& all_suites();
std::string_view to_string(Suite s);
/// Throws std::invalid_argument on unknown names ("all" is handled by callers).
Suite parse_suite(std::string_view s);

struct Check {
  std::string name;
  std::string space;    ///< space name, or empty when the check spans spaces
  std::string context;  ///< family / variant / coordinates, free text
  double value = 0.0;
  /// Absent for reported-only diagnostics.
  std::optional<double> tolerance;

  /// value < tolerance, or value == 0 for a zero tolerance. NaN fails.
  bool pass() const;
};

struct SuiteReport {
  Suite suite = Suite::Brackets;
  std::size_t samples = 0;
  std::vector<Check> checks;
  std::vector<Check> diagnostics;
  std::vector<std::string> notes;

  bool pass() const;
  /// Largest value among checks named `name` (all checks when empty).
  double worst(std::string_view name = {}) const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Samples per signature (or per case); 0 selects the suite default.
  std::size_t samples = 0;
};

std::size_t default_samples(Suite s);

SuiteReport run_suite(Suite s, const VerifyOptions& opt);

}  // namespace ckspace
