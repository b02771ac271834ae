#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "zrl/errors.hpp"
#include "zrl/quadrature.hpp"
#include "zrl/report.hpp"
#include "zrl/search.hpp"

using namespace zrl;

namespace {
RunReport sample_report() {
    RunReport r;
    r.command = "resonance-1line";
    r.config = {{"command", "resonance-1line"}, {"seed", 3}};
    r.add(make_check("a", 1.0, 0.5, Relation::GreaterEqual));
    r.add(make_check("b", std::complex<double>(0.1, -0.3), 1.0, Relation::LessEqual, 1e-9));
    r.add(make_check("c", std::numeric_limits<double>::quiet_NaN(), 0.0, Relation::Informational));
    r.values["x"] = 0.1 + 0.2;
    r.series.push_back({"resonance", {"t", "abs_R", "abs_zeta"}, {{1.0, 2.0 / 3.0, 1e-300}, {2.5, 1e10, -0.0}}});
    r.elapsed_seconds = 1.25;
    r.version = "test";
    return r;
}
}  // namespace

TEST_CASE("check relations") {
    CHECK(make_check("ge", 1.0, 1.0 + 1e-12, Relation::GreaterEqual, 1e-11).pass);
    CHECK_FALSE(make_check("ge", 1.0, 1.1, Relation::GreaterEqual).pass);
    CHECK(make_check("le", 1.0, 1.1, Relation::LessEqual).pass);
    CHECK(make_check("approx", 1.0, 1.0 + 1e-7, Relation::Approx, 1e-6).pass);
    CHECK_FALSE(make_check("nan", std::nan(""), 0.0, Relation::LessEqual, 1.0).pass);
    CHECK(make_check("cplx", std::complex<double>(3, 4), 5.0, Relation::Approx, 1e-15).pass);
    CHECK(relation_from_string(to_string(Relation::LessEqual)) == Relation::LessEqual);
}

TEST_CASE("report round trip and hash") {
    const auto r = sample_report();
    const auto j = to_json(r);
    const auto back = report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(determinism_hash(back) == determinism_hash(r));
    auto later = r;
    later.elapsed_seconds = 99.0;
    CHECK(determinism_hash(later) == determinism_hash(r));
    later.values["x"] = 0.3;
    CHECK(determinism_hash(later) != determinism_hash(r));
    CHECK_FALSE(r.all_pass() == false);
    CHECK(std::isnan(decode_double(encode_double(std::nan("")))));
    CHECK(decode_double(encode_double(-INFINITY)) == -INFINITY);
}

TEST_CASE("CSV emission") {
    const auto r = sample_report();
    const auto text = emit_plot_data(r, "resonance");
    CHECK(text.rfind("t,abs_R,abs_zeta\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    const auto s = parse_csv(text, "resonance");
    REQUIRE(s.rows.size() == 2);
    const auto& orig = r.series[0].rows;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t c = 0; c < 3; ++c) CHECK(std::memcmp(&s.rows[i][c], &orig[i][c], sizeof(double)) == 0);
    CHECK_THROWS_AS(emit_plot_data(r, "strip"), Error);
    auto empty = r;
    empty.series[0].rows.clear();
    CHECK_THROWS_AS(emit_plot_data(empty, "resonance"), Error);
}

TEST_CASE("adaptive quadrature") {
    QuadratureConfig q{1e-13, 1e-12, 10000, 0.0};
    const auto r = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, q);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    const auto c = integrate([](double x) { return std::polar(1.0, 3.0 * x); }, 0.0, 2.0, q);
    CHECK(std::abs(c.value - (std::polar(1.0, 6.0) - 1.0) / std::complex<double>(0, 3)) < 1e-12);
    QuadratureConfig tight{0.0, 1e-15, 2, 0.0};
    CHECK_FALSE(integrate([](double x) { return std::sin(200 * x); }, 0.0, 10.0, tight).converged);
}

TEST_CASE("peak search and golden section") {
    CHECK(golden_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-10) ==
          doctest::Approx(0.3).epsilon(1e-8));
    auto weight = [](double t) { return std::exp(-(t - 42.0) * (t - 42.0)); };
    auto target = [](double t) { return 5.0 - (t - 42.2) * (t - 42.2); };
    PeakSearchConfig cfg;
    cfg.peaks = 3;
    const auto r = resonance_search(weight, target, 10.0, 100.0, cfg);
    CHECK(r.argmax == doctest::Approx(42.2).epsilon(1e-6));
    CHECK(r.max_value == doctest::Approx(5.0));
    CHECK(r.seeds.front() == doctest::Approx(42.0).epsilon(1e-3));
    PeakSearchConfig bad;
    bad.peaks = 0;
    CHECK_THROWS_AS(validate(bad), ConfigError);
}
