#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>

#include "weakconv/mappings.hpp"

namespace weakconv {

struct Scene {
    PNormSpace space;
    OraclePtr set;                     // present when the scene declares "set"
    std::optional<SetValuedMap> map;   // present when the scene declares "map"
};

Scene parse_scene(const nlohmann::json& j);
Scene load_scene_file(const std::string& path);

// A single oracle parsed from a set object (used for auxiliary parameters).
OraclePtr parse_set(const PNormSpace& space, const nlohmann::json& j);

// Command-line overrides; config values override operation defaults, and
// these override the config.
struct ExperimentOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> density;
    std::string output;  // empty: keep the config's output path
};

// Runs a configured operation and returns its report.  Throws SceneError for
// parse problems and unknown operations.
Report run_experiment_file(const std::string& config_path,
                           const ExperimentOverrides& overrides = {});

std::vector<std::string> experiment_operation_names();

}  // namespace weakconv
