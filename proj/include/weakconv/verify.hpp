#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weakconv/report.hpp"

namespace weakconv {

struct CheckResult {
    std::string suite;
    bool pass = false;
    double worst_margin = 0.0;
    std::string summary;
    std::vector<std::pair<std::string, Report>> artifacts;  // (name, csv report)
    double seconds = 0.0;
};

// Suite names in execution order.
std::vector<std::string> verification_suite_names();

CheckResult run_verification_suite(const std::string& name, std::uint64_t seed);

// Runs every suite; when out_dir is nonempty each artifact is written there
// as <suite>__<artifact>.csv.
std::vector<CheckResult> run_all_verifications(std::uint64_t seed,
                                               const std::string& out_dir = "");

// Concatenated CSV bytes of all artifacts, used for byte-identity checks.
std::string artifact_digest(const std::vector<CheckResult>& results);

}  // namespace weakconv
