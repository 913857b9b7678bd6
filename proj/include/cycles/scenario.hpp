#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cycles::scenario {

using json = nlohmann::json;

enum class ParamType { Real, Int, Str, Path, RealOrInfinity };

struct ParamSpec {
  std::string key;
  ParamType type = ParamType::Real;
  std::string unit;
  std::string description;
  std::optional<json> default_value;  // absent means required

  bool required() const { return !default_value.has_value(); }
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
};

/// All runnable scenarios, sorted by name.
const std::vector<ScenarioInfo>& catalog();

/// Stable human-readable catalog, one block per scenario.
std::string catalog_text();

struct ScenarioConfig {
  std::string name;
  json parameters = json::object();
  std::filesystem::path output_dir = "out";
  std::uint64_t seed = 0;
};

/// Reads and validates the top-level structure of a config file.
ScenarioConfig load_config(const std::filesystem::path& path);
ScenarioConfig parse_config(const json& doc);

struct Verdict {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
};

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  json parameters;              // parameters after defaulting
  json summary = json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> outputs;  // files written, relative to output dir
  double duration_ms = 0.0;

  bool pass() const;
  std::string text() const;
  json to_json() const;
};

/// Validates the config against the catalog, runs the scenario, writes its
/// CSV outputs plus report.txt / report.json into the output directory.
RunReport run_scenario(const ScenarioConfig& config);

}  // namespace cycles::scenario
