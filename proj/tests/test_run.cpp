#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "zrl/errors.hpp"
#include "zrl/run.hpp"

using namespace zrl;

TEST_CASE("config schema") {
    const auto c = parse_run_config(json::parse(R"({"command":"constants","seed":4})"));
    CHECK(c.command == "constants");
    CHECK(c.seed == 4);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"command":"nope"})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"command":"constants","extra":1})")), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"command":"strip-search","parameters":{"Tt":5}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"command":"strip-search","parameters":{"T":"big"}})")),
                    ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::parse(R"({"command":"sieve","seed":-1})")), ConfigError);
    CHECK(parse_run_config(json{{"command", "constants"}, {"seed", 7}}).seed == 7);
    CHECK_THROWS_AS(parse_run_config(json{{"command", "constants"}, {"seed", -7}}), ConfigError);
    CHECK(to_json(c).at("seed") == 4);
}

TEST_CASE("constants command") {
    const auto rep = run(parse_run_config(json::parse(R"({"command":"constants"})")));
    CHECK(rep.all_pass());
    CHECK(rep.values.at("C0") == -0.3953997);
    CHECK(exit_code(rep) == 0);
}

TEST_CASE("missing or invalid parameters") {
    CHECK_THROWS_AS(run(parse_run_config(json::parse(R"({"command":"strip-search","parameters":{"sigma":0.6}})"))),
                    ConfigError);
    CHECK_THROWS_AS(
        run(parse_run_config(json::parse(R"({"command":"gcd-bruteforce","parameters":{"primes":[2,4],"N":2,"sigma":1}})"))),
        ConfigError);
}

TEST_CASE("brute force command writes artifacts deterministically") {
    const auto cfg = parse_run_config(
        json::parse(R"({"command":"gcd-bruteforce","parameters":{"primes":[2,3,5],"N":4,"sigma":0.6},"seed":1})"));
    const auto a = run(cfg);
    const auto b = run(cfg);
    CHECK(a.all_pass());
    CHECK(determinism_hash(a) == determinism_hash(b));
    const auto dir = std::filesystem::temp_directory_path() / "zrl_test_run";
    const auto files = write_artifacts(a, dir);
    REQUIRE(files.size() == 1);
    std::ifstream in(files[0]);
    const auto back = report_from_json(json::parse(in));
    CHECK(determinism_hash(back) == determinism_hash(a));
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify-lemmas command on a reduced grid") {
    const auto rep = run(parse_run_config(json::parse(
        R"({"command":"verify-lemmas","parameters":{"mertens_points":20,"x_max":1e5,"gcd_tuples":2000},"seed":9})")));
    CHECK(rep.all_pass());
    CHECK(rep.find_series("mertens")->rows.size() == 20);
}
