#pragma once

// Run configuration shared by the CLI commands: a JSON config file and
// command-line flags, merged with flags taking precedence, then resolved to a
// Hamiltonian spec and an initial state.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckspace/dynamics.hpp"
#include "ckspace/hamiltonians.hpp"

namespace ckspace::cli {

/// Bad flags, config keys or values. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<std::string> space;
  std::optional<int> kappa1, kappa2;
  std::optional<std::string> coords, family, variant;
  std::optional<double> z, b1, b2, beta0, k, gamma;
  std::optional<int> sign;
  std::optional<std::vector<double>> q, p;
  std::optional<double> r, theta, pr, ptheta;
  std::optional<double> dt;
  std::optional<std::int64_t> steps, stride;
  std::optional<std::string> integrator;
  std::optional<std::uint64_t> seed, samples;
  std::optional<std::string> suite;
  std::optional<std::string> out, format;
  std::optional<double> r_min, r_max;
  std::optional<std::int64_t> points;

  /// Fields set in `over` replace those set here.
  void merge(const RunConfig& over);
};

/// Reads a config object whose keys are the flag names (with '_' for '-').
/// Unknown keys and mistyped values throw UsageError.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

/// Signature from --space and/or --kappa1/--kappa2. A sweep over all spaces
/// is handled by the caller.
CKSignature resolve_signature(const RunConfig& c);

HamiltonianSpec resolve_spec(const RunConfig& c, CKSignature sig);

/// Initial state in the coordinates of `spec`. A state given in the other
/// chart is transported; defaults are q = (0.5, 1), p = 0 and r = theta =
/// 0.5, p = 0.
Phase<double> resolve_state(const RunConfig& c, const HamiltonianSpec& spec);

FlowOptions resolve_flow(const RunConfig& c);

std::string resolve_format(const RunConfig& c, const std::string& fallback = "csv");

}  // namespace ckspace::cli
