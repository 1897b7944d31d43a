#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fifonet/junction_models.hpp"
#include "fifonet/structure.hpp"

namespace fifonet {

/// Run settings a scenario may carry; command-line flags override them.
struct ScenarioDefaults {
  double dt = 1e-2;
  double t_final = 200.0;
  double residual_tol = 1e-8;
  double gap_tol = 1e-6;
  double fd_tolerance = 1e-6;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

struct Scenario {
  std::string name;
  TrafficNetwork system;
  ScenarioDefaults defaults;
  /// Non-fatal findings of validate_structure.
  std::vector<Violation> warnings;
};

/// Malformed scenario text: unknown key, wrong type, missing field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, std::string field, const std::string& message);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Well-formed scenario describing an invalid network or model.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Reads a scenario file (YAML; its JSON rendering is accepted too).
/// Throws ParseError, ValidationError, or std::runtime_error when the file
/// cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

Scenario parse_scenario(std::string_view text, const std::string& source = "<string>");

/// JSON rendering of the scenario, loadable by parse_scenario.
std::string scenario_to_json(const Scenario& scenario);

}  // namespace fifonet
