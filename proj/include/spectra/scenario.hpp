#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "spectra/function_spec.hpp"

namespace spectra {

enum class Family { C, Lip, W };
enum class SobolevMode { lemma_l9, t4_1_transform };
/// How the space multiplier at a fixed point reads the map: n-th power of
/// phi' (default) or the literal n-th derivative (comparison only).
enum class MultiplierReading { power, derivative };

/// Explicit invariant class for the Lipschitz engine: asymptotic forward
/// slopes of the class near 0 and near 1.
struct InvariantClassSpec {
  std::string label;
  double slope0 = 1.0;
  double slope1 = 1.0;
};

struct SpaceSpec {
  Family family = Family::C;
  int n = 1;
  double p = std::numeric_limits<double>::infinity();  ///< W only
};

struct ScenarioOptions {
  double tol = 1e-11;
  int grid = 10000;
  int segment_samples = 512;
  int validation_grid = 2001;
  double stabilization_spread = 1e-3;
  SobolevMode sobolev_mode = SobolevMode::lemma_l9;
  MultiplierReading multiplier_reading = MultiplierReading::power;
  std::optional<std::vector<InvariantClassSpec>> lip_invariant_sets;
};

struct Scenario {
  std::string name;
  std::string description;
  SpaceSpec space;
  FunctionSpec phi;
  FunctionSpec w;
  ScenarioOptions options;
};

std::string to_string(Family f);
std::string to_string(SobolevMode m);

/// Validates and converts; SchemaError carries a JSON pointer.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Scenario& s);

Scenario load_scenario(const std::string& path);

}  // namespace spectra
