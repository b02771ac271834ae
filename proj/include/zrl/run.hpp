// run.hpp
// Batch driver: strict JSON run configuration, command dispatch and the
// on-disk artifacts (report JSON plus one CSV per series).

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zrl/report.hpp"

namespace zrl {

// sieve, verify-lemmas, resonance-1line, gcd-construct, gcd-bruteforce,
// strip-search, constants.
const std::vector<std::string>& run_commands();

struct RunConfig {
    std::string command;
    json parameters = json::object();
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;
};

// Top-level keys: command, parameters, seed, output_dir. Unknown keys,
// unknown parameters and wrongly typed values throw ConfigError.
RunConfig parse_run_config(const json& j);
RunConfig load_run_config(const std::filesystem::path& path);
json to_json(const RunConfig& c);

struct RunEnvironment {
    std::optional<std::filesystem::path> prime_cache;
    std::optional<std::size_t> max_enumerate;
};

RunReport run(const RunConfig& config, const RunEnvironment& env = {});

// Writes report.json and <series>.csv into dir; returns the paths written.
std::vector<std::filesystem::path> write_artifacts(const RunReport& report, const std::filesystem::path& dir);

// 0 when every non-informational check passes, 1 otherwise.
int exit_code(const RunReport& report);

}  // namespace zrl
