// zrl command-line driver.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "zrl/errors.hpp"
#include "zrl/run.hpp"

namespace {

const char* label(const zrl::CheckRecord& c) {
    if (c.relation == zrl::Relation::Informational) return "INFO";
    return c.pass ? "PASS" : "FAIL";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large values of zeta: resonance runs, GCD-sum constructions and checks"};
    app.set_version_flag("--version", zrl::version_string());
    std::string command;
    std::string config_path;
    std::string out_dir;
    std::string prime_cache;
    std::size_t max_enumerate = 0;
    app.add_option("command", command, "One of: sieve, verify-lemmas, resonance-1line, gcd-construct, "
                                        "gcd-bruteforce, strip-search, constants")
        ->required();
    app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");
    app.add_option("--prime-cache", prime_cache, "Prime cache file, reused or written");
    app.add_option("--max-enumerate", max_enumerate, "Element budget for explicit constructions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    zrl::RunConfig config;
    zrl::RunEnvironment env;
    try {
        config = zrl::load_run_config(config_path);
        if (config.command != command)
            throw zrl::ConfigError("command '" + command + "' does not match config command '" + config.command + "'");
        if (!prime_cache.empty()) env.prime_cache = prime_cache;
        if (max_enumerate > 0) env.max_enumerate = max_enumerate;
    } catch (const zrl::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    zrl::RunReport report;
    try {
        report = zrl::run(config, env);
    } catch (const zrl::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const zrl::DomainError& e) {
        std::cerr << "usage error: " << command << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << command << ": " << e.what() << "\n";
        return 1;
    }

    for (const auto& c : report.checks) std::printf("%-4s %s\n", label(c), c.name.c_str());
    const std::filesystem::path dir = !out_dir.empty()             ? std::filesystem::path(out_dir)
                                      : !config.output_dir.empty() ? config.output_dir
                                                                   : std::filesystem::path("zrl_out");
    try {
        for (const auto& p : zrl::write_artifacts(report, dir)) std::printf("wrote %s\n", p.string().c_str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::printf("determinism %s\n", zrl::hash_hex(zrl::determinism_hash(report)).c_str());
    std::printf("elapsed %.3f s\n", report.elapsed_seconds);
    return zrl::exit_code(report);
}
