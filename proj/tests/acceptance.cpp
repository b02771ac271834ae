// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "zrl/errors.hpp"
#include "zrl/gal_sums.hpp"
#include "zrl/primes.hpp"
#include "zrl/run.hpp"
#include "zrl/strip.hpp"
#include "zrl/zeta.hpp"

using namespace zrl;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double budget_seconds, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail << " [exception: " << e.what() << "]";
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        out.pass = false;
        out.detail << " [over budget " << budget_seconds << " s]";
    }
    if (!out.pass) ++failures;
    std::printf("%s %2d %s (%.2f s)%s\n", out.pass ? "PASS" : "FAIL", id, name, elapsed, out.detail.str().c_str());
    std::fflush(stdout);
}

const CheckRecord* find_check(const RunReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<std::uint32_t> first_primes(int n) {
    static const auto all = oracle::trial_division_primes(200);
    return {all.begin(), all.begin() + n};
}

}  // namespace

int main() {
    criterion(1, "admissible constants", 1.0, [](Outcome& o) {
        const double half = admissible_c(0.5), zero = admissible_c(0.0);
        o.detail << " c(1/2)=" << half << " c(0)=" << zero;
        o.require(std::abs(half + 2.0197814) <= 1e-6, "c(1/2)");
        o.require(std::abs(zero + 1.32663426) <= 1e-6, "c(0)");
    });

    criterion(2, "Mertens bracket on 200 log-spaced points", 10.0, [](Outcome& o) {
        const auto table = sieve_primes(1000000);
        int inside = 0;
        for (int i = 1; i <= 200; ++i) {
            const double x = std::min(1e6, std::exp(std::log(1000.0) + std::log(1000.0) * i / 200.0));
            if (mertens_product(table, x).inside) ++inside;
        }
        o.detail << " inside=" << inside << "/200";
        o.require(inside == 200, "strictly inside");
    });

    criterion(3, "rational gcd/lcm closed forms on 1e5 tuples", 5.0, [](Outcome& o) {
        std::mt19937_64 rng(20240601);
        int mismatches = 0;
        for (int i = 0; i < 100000; ++i) {
            const BigInt b = rng() % (1ULL << 20) + 1;
            const BigInt b2 = rng() % (1ULL << 20) + 1;
            const BigInt N = boost::multiprecision::lcm(b, b2) * BigInt(rng() % (1ULL << 20) + 1);
            auto coprime = [&rng](const BigInt& d) {
                BigInt a = BigInt(rng()) + 1;
                for (BigInt g = boost::multiprecision::gcd(a, d); g != 1; g = boost::multiprecision::gcd(a, d)) a /= g;
                return a;
            };
            const BigInt a = coprime(b), a2 = coprime(b2);
            try {
                const auto r = gcd_lcm_rational(a, b, a2, b2, N);
                const BigInt m1 = N / b * a, m2 = N / b2 * a2;
                if (r.gcd != boost::multiprecision::gcd(m1, m2) || r.lcm != boost::multiprecision::lcm(m1, m2))
                    ++mismatches;
            } catch (const Error&) {
                ++mismatches;
            }
        }
        o.detail << " mismatches=" << mismatches;
        o.require(mismatches == 0, "exact equality");
    });

    criterion(4, "kernel transform at 50 points and unit mass", 30.0, [](Outcome& o) {
        const auto k = make_kernel(0.1, 1e3);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double xi = 1.25 * k.width * i / 49.0;
            worst = std::max(worst, std::abs(kernel_transform_quadrature(xi, k).value - kernel_K_hat(xi, k)));
        }
        const double mass = kernel_transform_quadrature(0.0, k).value;
        o.detail << " max|diff|=" << worst << " |mass-1|=" << std::abs(mass - 1.0);
        o.require(worst <= 1e-5, "transform");
        o.require(std::abs(mass - 1.0) <= 1e-6, "mass");
    });

    criterion(5, "convolution identity on the 9-point matrix", 300.0, [](Outcome& o) {
        const auto k = make_kernel(0.1, 1e3);
        double worst = 0.0;
        for (double s : {0.6, 0.75, 0.9})
            for (double t : {5.0, 17.3, 40.0}) worst = std::max(worst, convolution_identity_check(s, t, k).rel_diff);
        o.detail << " max rel diff=" << worst;
        o.require(worst <= 1e-3, "relative agreement");
    });

    criterion(6, "GCD-sum oracles", 60.0, [](Outcome& o) {
        const std::vector<SetElement> M = {SetElement::from_integer(1), SetElement::from_integer(2)};
        const double s1 = gal_sum(M, 1.0), sh = gal_sum(M, 0.5);
        o.require(std::abs(s1 - 3.0) <= 4.5e-16, "S_1({1,2}) = 3");
        o.require(std::abs(sh - (2.0 + std::numbers::sqrt2)) <= 4.5e-16, "S_1/2({1,2}) = 2 + sqrt 2");

        std::mt19937_64 rng(77);
        const auto primes = first_primes(12);
        double worst = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<std::uint32_t> shuffled = primes;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const std::size_t cut = 1 + rng() % 5;
            auto block = [&rng](std::vector<std::uint32_t> ps) {
                std::sort(ps.begin(), ps.end());
                auto all = divisors_of_squarefree(ps);
                std::shuffle(all.begin(), all.end(), rng);
                all.resize(1 + rng() % all.size());
                return all;
            };
            const auto A = block({shuffled.begin(), shuffled.begin() + cut});
            const auto B = block({shuffled.begin() + cut, shuffled.begin() + cut + 1 + rng() % 5});
            const double sigma = 0.5 + 0.5 * static_cast<double>(rng() % 1000) / 1000.0;
            const double direct = gal_sum(expand_product({A, B}), sigma);
            worst = std::max(worst, std::abs(gal_sum_blocks({A, B}, sigma) - direct) / direct);
        }
        o.require(worst <= 1e-12, "blocks vs expanded");

        const double q = spectral_norm(M, 1.0).value;
        o.require(std::abs(q - 1.5) <= 1e-9, "spectral norm");

        double jordan_worst = 0.0;
        for (std::uint64_t d = 1; d <= 210; ++d) {
            if (oracle::mobius(d) == 0) continue;
            for (double k : {1.2, 2.0}) {
                double s = 0.0;
                for (std::uint64_t e = 1; e <= d; ++e)
                    if (d % e == 0) s += jordan_totient(SetElement::from_integer(e), k);
                const double want = std::pow(static_cast<double>(d), k);
                jordan_worst = std::max(jordan_worst, std::abs(s - want) / want);
            }
        }
        o.require(jordan_worst <= 1e-12, "Jordan divisor sums");
        o.detail << " blocks rel=" << worst << " jordan rel=" << jordan_worst;
    });

    criterion(7, "block cardinalities and sift chain", 120.0, [](Outcome& o) {
        int enum_mismatch = 0, bound_violations = 0;
        std::ostringstream violated;
        for (int P = 0; P <= 12; ++P)
            for (int v = 0; v <= 3; ++v) {
                const auto r = block_cardinality(P, v);
                const auto listed = enumerate_block(first_primes(P), v).size();
                if (r.exact != listed || r.exact != oracle::disjoint_pairs(P, v)) ++enum_mismatch;
                if (r.bound && !r.within_bound) {
                    ++bound_violations;
                    violated << " (" << P << "," << v << ")";
                }
            }
        int sift_cases = 0, sift_fail = 0;
        for (double sigma : {0.55, 0.6, 0.75})
            for (int P = 1; P <= 10; ++P)
                for (int v = 0; v <= 2; ++v)
                    for (int u = 0; u <= v; ++u) {
                        ++sift_cases;
                        if (!sift_chain_check(first_primes(P), u, v, sigma).all_ok()) ++sift_fail;
                    }
        o.detail << " enumeration mismatches=" << enum_mismatch << " bound violations=" << bound_violations
                 << violated.str() << " sift failures=" << sift_fail << "/" << sift_cases;
        o.require(enum_mismatch == 0, "exact vs enumeration");
        o.require(bound_violations == 0, "4 C(P,v) C(P-v,v) bound");
        o.require(sift_fail == 0, "sift chain");
    });

    criterion(8, "H functional", 60.0, [](Outcome& o) {
        const auto opt = optimize_h(0.51);
        o.detail << " H(0.51)=" << opt.H << " slack=" << opt.slack;
        o.require(opt.H >= 2.5, "H >= 2.5");
        o.require(opt.slack >= 0.0, "slack >= 0");
        double envelope = -INFINITY;
        for (double sigma = 0.505; sigma <= 0.6 + 1e-12; sigma += 0.005) {
            envelope = std::max(envelope, optimize_h(sigma).H);
            for (double f : {1.001, 1.01, 1.1, 1.5, 2.0, 2.7})
                for (double lambda : {0.5, 0.9, 0.99, 0.999})
                    for (double eta : {0.1, 0.3, 0.5, std::numbers::sqrt2 / 2, 1.0, 2.0})
                        for (double frac : {0.5, 0.9, 1.0 - 1e-12}) {
                            ConstructionParams p{frac / (2 * std::log(f)), eta, f, lambda, 0.0, sigma};
                            envelope = std::max(envelope, h_functional(p, sigma).value);
                        }
        }
        o.detail << " envelope=" << envelope;
        o.require(envelope <= 2 * std::numbers::sqrt2 + 0.01, "envelope");
    });

    criterion(9, "one-line pipeline at T = 2000 and 1e4", 600.0, [](Outcome& o) {
        for (double T : {2000.0, 1e4}) {
            json cfg = {{"command", "resonance-1line"}, {"parameters", {{"T", T}, {"beta", 0.5}, {"c", -2.6}}}};
            const auto rep = run(parse_run_config(cfg));
            const auto* ineq = find_check(rep, "max|zeta(1+it)| >= |M2|/M1 - eps_q");
            const auto* sanity = find_check(rep, "max|zeta(1+it)| >= sanity_factor * e^gamma log2 T");
            o.require(ineq && sanity, "checks present");
            if (!ineq || !sanity) return;
            o.detail << " T=" << T << ": max=" << std::get<double>(ineq->measured) << " ratio=" << ineq->reference
                     << " eps_q=" << rep.values.at("eps_q").get<double>();
            o.require(ineq->pass, "max >= |M2|/M1 - eps_q");
            o.require(sanity->pass, "max >= 0.8 e^gamma log2 T");
        }
    });

    criterion(10, "strip pipeline at T = 2000 on divisors of 210", 900.0, [](Outcome& o) {
        json cfg = {{"command", "strip-search"},
                    {"parameters", {{"T", 2000.0}, {"beta", 0.5}, {"sigma", 0.6}, {"primes", {2, 3, 5, 7}}}}};
        const auto rep = run(parse_run_config(cfg));
        const auto* ineq = find_check(rep, "max|zeta(sigma+it)|^2 >= |M2|/M1 - eps_q");
        o.require(ineq != nullptr, "check present");
        if (!ineq) return;
        o.detail << " max^2=" << std::get<double>(ineq->measured) << " ratio=" << ineq->reference;
        o.require(ineq->pass, "max^2 >= |M2|/M1 - eps_q");

        const auto ints = oracle::squarefree_divisors({2, 3, 5, 7});
        std::vector<SetElement> M;
        for (auto n : ints) M.push_back(SetElement::from_integer(n));
        const auto i21 = i21_lower_bound(M, 0.6, 2000.0, 0.1);
        const auto ref = oracle::rankin_split(ints, 0.6L, 0.1L * std::log(2000.0L));
        const auto& v = rep.values.at("I21_bound");
        o.require(v.at("excluded_pairs").get<std::size_t>() == ref.excluded_pairs, "excluded pair count");
        o.require(std::abs(v.at("excluded").get<double>() - static_cast<double>(ref.excluded)) <=
                      1e-13 * static_cast<double>(ref.excluded),
                  "excluded sum");
        o.require(static_cast<long double>(i21.excluded) <= static_cast<long double>(i21.rankin_bound), "Rankin tail");
        o.require(ref.excluded <= std::exp(-(0.6L - 0.5L) * 0.1L * std::log(2000.0L)) * ref.half, "oracle tail");
        o.detail << " excluded=" << ref.excluded_pairs << " pairs, tail " << i21.excluded << " <= " << i21.rankin_bound;
    });

    criterion(11, "determinism of repeated runs", 300.0, [](Outcome& o) {
        const json cfgs[] = {
            {{"command", "constants"}},
            {{"command", "verify-lemmas"}, {"parameters", {{"gcd_tuples", 20000}}}, {"seed", 5}},
            {{"command", "gcd-bruteforce"}, {"parameters", {{"primes", {2, 3, 5, 7}}, {"N", 5}, {"sigma", 0.6}}}},
            {{"command", "strip-search"}, {"parameters", {{"T", 400.0}, {"sigma", 0.7}, {"primes", {2, 3, 5}}}}},
        };
        for (const auto& j : cfgs) {
            const auto c = parse_run_config(j);
            const auto a = determinism_hash(run(c));
            const auto b = determinism_hash(run(c));
            o.detail << " " << c.command << "=" << hash_hex(a);
            o.require(a == b, c.command);
        }
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
