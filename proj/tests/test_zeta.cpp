#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "zrl/errors.hpp"
#include "zrl/zeta.hpp"

using namespace zrl;
using cd = std::complex<double>;

namespace {
double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("zeta classical values") {
    CHECK(rel(zeta({2.0, 0.0}), cd(std::numbers::pi * std::numbers::pi / 6.0, 0.0)) < 1e-12);
    CHECK(rel(zeta({3.0, 0.0}), cd(1.2020569031595942854, 0.0)) < 1e-13);
    CHECK_THROWS_AS(zeta({1.0, 0.0}), PoleError);
}

TEST_CASE("zeta against high-precision references") {
    struct Ref {
        double s, t, re, im;
    };
    const Ref refs[] = {{1, 100, 1.6328335066867119, -0.068131203841812496},
                        {1, 2000, 0.54529660048321238, 0.11203129712814459},
                        {1, 10000, 0.49732792297163086, -0.58782382431940094},
                        {0.4, 250, 0.33327298451597548, 1.0946389142693191},
                        {0.6, 1000, 0.62886128115380813, 0.59846078652818735},
                        {0.75, -16.3, 1.2224042557606833, -0.98286614245087633},
                        {0.75, 18.3, 1.9756751910963850484, -0.42971229380102296762},
                        {0.6, 5, 0.71427042312197790691, 0.21991082596389313943},
                        {0.9, 40, 0.84211154930813325369, -0.5669068221945212184}};
    for (const auto& r : refs) {
        CAPTURE(r.s);
        CAPTURE(r.t);
        CHECK(rel(zeta({r.s, r.t}), cd(r.re, r.im)) < 1e-12);
    }
}

TEST_CASE("zeta conjugate symmetry") {
    for (double t : {3.7, 41.0, 733.3}) {
        const cd a = zeta({0.7, t});
        const cd b = zeta({0.7, -t});
        CHECK(std::abs(a - std::conj(b)) <= 1e-13 * std::abs(a));
    }
}

TEST_CASE("zeta error estimate and config validation") {
    const auto d = zeta_detailed({1.0, 500.0});
    CHECK(d.error_estimate <= 1e-13 * std::abs(d.value));
    CHECK(d.terms >= 650);
    EvalConfig bad;
    bad.bernoulli_order = 3;
    CHECK_THROWS_AS(zeta({2.0, 0.0}, bad), ConfigError);
}

TEST_CASE("truncated Euler product") {
    const auto table = sieve_primes(1000000);
    CHECK(rel(zeta_truncated({2.0, 0.0}, 2.0, table), cd(4.0 / 3.0, 0.0)) < 1e-15);
    CHECK(rel(zeta_truncated({3.0, 0.0}, 1e6, table), zeta({3.0, 0.0})) < 1e-12);
    CHECK_THROWS_AS(zeta_truncated({1.0, 5.0}, 1.5, table), DomainError);
}

TEST_CASE("truncation gap") {
    const auto table = sieve_primes(5000000);
    const auto r = truncation_gap(50.0, 0.5, {8.0, 20.0, 37.5, 50.0}, table);
    CHECK(r.y == doctest::Approx(std::exp(std::pow(std::log(50.0), 2.0))));
    for (const auto& s : r.samples) CHECK(s.gap <= 100.0 * std::pow(std::log(50.0), -2.0));
    CHECK_THROWS_AS(truncation_gap(50.0, 0.5, {3.0}, table), DomainError);
    CHECK_THROWS_AS(truncation_gap(1e3, 0.9, {1e3}, sieve_primes(1000)), TableTooSmall);
}

TEST_CASE("log I0") {
    CHECK(log_bessel_i0(0.0) == 0.0);
    CHECK(log_bessel_i0(1.0) == doctest::Approx(std::log(1.2660658777520083)).epsilon(1e-14));
    CHECK(log_bessel_i0(800.0) == doctest::Approx(800.0 - 0.5 * std::log(2 * std::numbers::pi * 800.0) +
                                                  std::log1p(1.0 / 6400.0 + 9.0 / (2.0 * 6400.0 * 6400.0)))
                                      .epsilon(1e-12));
}

TEST_CASE("normalized constant against quadrature references") {
    CHECK(distribution_constant(0.75).value == doctest::Approx(5.3817457256625097).epsilon(1e-6));
    CHECK(distribution_constant(0.6).value == doctest::Approx(4.1971256798067013).epsilon(1e-6));
    CHECK(distribution_constant(0.55).value == doctest::Approx(5.5130532225699325).epsilon(1e-6));
    const auto near_one = distribution_constant(0.99);
    CHECK(near_one.value > 0.0);
    CHECK(near_one.value == doctest::Approx(104.60842233801512).epsilon(1e-6));
    CHECK_THROWS_AS(distribution_constant(0.5), DomainError);
}

TEST_CASE("admissible constants") {
    CHECK(std::abs(admissible_c(0.5) + 2.0197814) < 1e-6);
    CHECK(std::abs(admissible_c(0.0) + 1.32663426) < 1e-6);
    double prev = admissible_c(0.0);
    for (double b = 0.1; b < 0.99; b += 0.1) {
        const double c = admissible_c(b);
        CHECK(c < prev);
        prev = c;
    }
    CHECK_THROWS_AS(admissible_c(1.0), DomainError);
    const auto rc = reference_constants();
    CHECK(rc.c0 == -0.3953997);
    CHECK(std::abs(rc.c0 + 1.0 - std::numbers::ln2 - rc.c0_plus_1_minus_log2) < 1e-7);
    CHECK(rc.exp_gamma == doctest::Approx(std::exp(0.57721566490153286061)).epsilon(1e-15));
}

TEST_CASE("large-value exponent shapes") {
    CHECK(nu_floor(0.75) == doctest::Approx(2.0));
    CHECK(nu_near_one_shape(0.75) == doctest::Approx(4.0));
    CHECK(nu_near_half_shape(0.75) == doctest::Approx(std::sqrt(std::log(2.0) / 2.0)));
    CHECK_THROWS_AS(nu_floor(1.0), DomainError);
}
