#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zrl/errors.hpp"
#include "zrl/gal_sums.hpp"

using namespace zrl;

namespace {
std::vector<SetElement> from_ints(const std::vector<std::uint64_t>& v) {
    std::vector<SetElement> out;
    for (auto n : v) out.push_back(SetElement::from_integer(n));
    return out;
}
}  // namespace

TEST_CASE("set elements") {
    const auto e = SetElement::from_integer(360);
    CHECK(e.to_string() == "2^3*3^2*5");
    CHECK(e.to_big() == 360);
    CHECK(e.exponent_of(3) == 2);
    CHECK(e.exponent_of(7) == 0);
    CHECK((SetElement::from_integer(6) * SetElement::from_integer(10)).to_big() == 60);
    CHECK(SetElement::from_integer(1).is_one());
    CHECK_THROWS_AS(SetElement({{3, 1}, {2, 1}}), DomainError);
    CHECK_THROWS_AS(SetElement({{2, 0}}), DomainError);
    CHECK(static_cast<double>(log_lcm_over_gcd(SetElement::from_integer(12), SetElement::from_integer(18))) ==
          doctest::Approx(std::log(6.0)));
}

TEST_CASE("rational gcd/lcm") {
    const auto r = gcd_lcm_rational(1, 1, 1, 1, 6);
    CHECK(r.gcd == 6);
    CHECK(r.lcm == 6);
    const auto s = gcd_lcm_rational(2, 3, 4, 1, 6);
    CHECK(s.gcd == 4);
    CHECK(s.lcm == 24);
    CHECK_THROWS_AS(gcd_lcm_rational(2, 4, 1, 1, 8), DomainError);
    CHECK_THROWS_AS(gcd_lcm_rational(1, 5, 1, 1, 6), DomainError);
}

TEST_CASE("gal sum oracles") {
    const auto M = from_ints({1, 2});
    CHECK(gal_sum(M, 1.0) == doctest::Approx(3.0).epsilon(1e-16));
    CHECK(gal_sum(M, 0.5) == doctest::Approx(2.0 + std::numbers::sqrt2).epsilon(1e-16));
    CHECK(gal_sum(from_ints({97}), 0.7) == 1.0);
    CHECK_THROWS_AS(gal_sum(from_ints({2, 2}), 0.5), DomainError);
    CHECK_THROWS_AS(gal_sum(M, 1.5), DomainError);
}

TEST_CASE("gal sum against integer oracle") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<std::uint64_t> v;
        while (v.size() < 40) {
            const std::uint64_t n = rng() % 5000 + 1;
            if (std::find(v.begin(), v.end(), n) == v.end()) v.push_back(n);
        }
        for (double s : {0.5, 0.6, 1.0}) {
            const double ref = static_cast<double>(oracle::gcd_sum(v, s));
            CHECK(gal_sum(from_ints(v), s) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
}

TEST_CASE("block products") {
    const auto a = from_ints({1, 2});
    const auto b = from_ints({1, 3});
    CHECK(gal_sum_blocks({a, b}, 1.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(gal_sum(expand_product({a, b}), 1.0) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(gal_sum_blocks({from_ints({1}), from_ints({1})}, 0.6) == 1.0);
    CHECK_THROWS_AS(gal_sum_blocks({a, {}}, 1.0), DomainError);
    CHECK_THROWS_AS(gal_sum_blocks({a, from_ints({1, 6})}, 1.0), DomainError);
}

TEST_CASE("spectral norm") {
    CHECK(spectral_norm(from_ints({1, 2}), 1.0).value == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(spectral_norm(from_ints({5}), 0.5).value == doctest::Approx(1.0));
    for (std::uint64_t top : {30ULL, 210ULL}) {
        std::vector<std::uint64_t> v;
        for (std::uint64_t d = 1; d <= top; ++d)
            if (top % d == 0) v.push_back(d);
        const auto M = from_ints(v);
        const auto r = spectral_norm(M, 0.6);
        CHECK(r.value >= r.uniform_rayleigh * (1 - 1e-12));
        CHECK(r.uniform_rayleigh == doctest::Approx(gal_sum(M, 0.6) / static_cast<double>(M.size())));
    }
}

TEST_CASE("Jordan totient") {
    CHECK(jordan_totient(SetElement::from_integer(1), 1.2) == 1.0);
    CHECK(jordan_totient(SetElement::from_integer(6), 2.0) == doctest::Approx(24.0).epsilon(1e-14));
    double s = 0.0;
    for (std::uint64_t d : {1, 2, 3, 5, 6, 10, 15, 30}) s += jordan_totient(SetElement::from_integer(d), 1.2);
    CHECK(s == doctest::Approx(std::pow(30.0, 1.2)).epsilon(1e-10));
    for (std::uint64_t d = 1; d <= 210; ++d) {
        if (oracle::mobius(d) == 0) continue;
        CAPTURE(d);
        CHECK(jordan_totient(SetElement::from_integer(d), 1.2) ==
              doctest::Approx(static_cast<double>(oracle::jordan(d, 1.2L))).epsilon(1e-12));
    }
}

TEST_CASE("block cardinality") {
    const auto r = block_cardinality(5, 1);
    CHECK(r.exact == 31);
    REQUIRE(r.bound);
    CHECK(*r.bound == 80);
    CHECK(r.within_bound);
    CHECK(block_cardinality(3, 0).exact == 1);
    CHECK(*block_cardinality(3, 0).bound == 4);
    for (int P = 0; P <= 10; ++P)
        for (int v = 0; v <= 3; ++v) {
            CAPTURE(P);
            CAPTURE(v);
            CHECK(block_cardinality(P, v).exact == oracle::disjoint_pairs(P, v));
        }
    CHECK(block_cardinality(10, 2).exact == enumerate_block({2, 3, 5, 7, 11, 13, 17, 19, 23, 29}, 2).size());
    // The stated bound does not hold for small P.
    CHECK_FALSE(block_cardinality(4, 2).within_bound);
    CHECK(binomial(10, 3) == 120);
}

TEST_CASE("sift chain") {
    const auto r = sift_chain_check({2, 3, 5, 7, 11}, 1, 1, 0.6);
    CHECK(r.identity_ok);
    CHECK(r.totient_identity_ok);
    CHECK(r.totient_bound_ok);
    CHECK(r.restricted_ok);
    CHECK(r.factorial_ok);
    CHECK(r.factorial_min_ratio == doctest::Approx(1.535).epsilon(1e-3));
    CHECK(sift_chain_check({2, 3, 5, 7}, 2, 2, 0.75).all_ok());
    CHECK_THROWS_AS(sift_chain_check({2, 3, 5}, 2, 1, 0.6), ConfigError);
}

TEST_CASE("H functional and optimizer") {
    ConstructionParams p{0.999 / (2 * std::log(1.01)), std::numbers::sqrt2 / 2, 1.01, 0.999, 0.0, 0.51};
    const auto h = h_functional(p, 0.51);
    CHECK(std::abs(h.value / (2 * std::numbers::sqrt2) - 1.0) < 0.05);
    CHECK(h.slack >= 0.0);
    ConstructionParams bad{1.1, 0.5, 2.7, 0.9, 0.0, 0.6};
    CHECK(h_functional(bad, 0.6).slack < 0.0);
    const auto opt = optimize_h(0.51);
    CHECK(opt.H >= 2.5);
    CHECK(opt.H <= 2 * std::numbers::sqrt2 + 0.01);
    CHECK(opt.slack >= 0.0);
    CHECK(opt.params.f > 1.0);
    CHECK(opt.params.lambda > 0.0);
    CHECK(opt.params.lambda < 1.0);
}

TEST_CASE("construction") {
    const auto table = sieve_primes(100000);
    ConstructionParams p{0.0, 0.0, 1.2, 0.9, 1e30, 0.55};
    p.alpha = 0.999 / (2 * std::log(p.f));
    p.eta = 0.5;
    const auto cs = build_construction(p, table);
    CHECK(cs.J == 14);
    for (std::size_t i = 1; i < cs.blocks.size(); ++i) CHECK(cs.blocks[i].u <= cs.blocks[i - 1].u);
    BigInt prod = 1;
    for (const auto& b : cs.blocks) prod *= b.cardinality;
    CHECK(prod == cs.cardinality);
    ConstructionParams bad = p;
    bad.alpha = 1.0 / std::log(p.f);
    CHECK_THROWS_AS(build_construction(bad, table), ConfigError);
}

TEST_CASE("Gamma references") {
    CHECK(gamma_lower_bound(1e10, 0.6, 0.0) == 1.0);
    CHECK(gamma_lower_bound(std::exp(std::numbers::e), 0.75, 2 * std::numbers::sqrt2) ==
          doctest::Approx(std::exp(4.276)).epsilon(1e-3));
    double prev = 0.0;
    for (double s : {0.7, 0.6, 0.55, 0.51, 0.501}) {
        const double g = gamma_lower_bound(1e20, s, 2.0);
        CHECK(g > prev);
        prev = g;
    }
    CHECK(gamma_half_reference(std::exp(std::numbers::e)) == doctest::Approx(1.0));
    const double big = gamma_half_reference(1e100);
    CHECK(std::isfinite(big));
    CHECK(big > 1.0);
    double last = 1.0;
    for (double lg = 2; lg <= 200; lg += 10) {
        const double v = gamma_half_reference(std::pow(10.0, lg));
        CHECK(v >= last);
        last = v;
    }
}

TEST_CASE("brute force maximization") {
    const auto d6 = divisors_of_squarefree({2, 3});
    CHECK(brute_force_gamma(d6, 4, 1.0).value == doctest::Approx(2.0));
    CHECK(brute_force_gamma(divisors_of_squarefree({2, 3, 5}), 1, 0.5).value == 1.0);
    const auto r = brute_force_gamma(divisors_of_squarefree({2, 3, 5, 7}), 5, 0.6);
    CHECK(r.value == doctest::Approx(2.5981716074420267).epsilon(1e-14));
    CHECK(r.subsets == 4368);
    CHECK(r.value <= spectral_norm(divisors_of_squarefree({2, 3, 5, 7}), 0.6).value);
}
