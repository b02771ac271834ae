// Independent brute-force reference implementations used only by tests.
// Nothing here shares code with the library beyond the public types.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<std::uint32_t> trial_division_primes(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t n = 2; n <= limit; ++n) {
        bool prime = true;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) out.push_back(n);
    }
    return out;
}

// sum_{m,n} (gcd/lcm)^sigma by integer arithmetic.
inline long double gcd_sum(const std::vector<std::uint64_t>& M, long double sigma) {
    long double s = 0.0L;
    for (auto m : M)
        for (auto n : M) {
            const long double g = static_cast<long double>(std::gcd(m, n));
            const long double l = static_cast<long double>(m) / g * static_cast<long double>(n);
            s += std::pow(g / l, sigma);
        }
    return s;
}

inline int mobius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

// sum_{e | d} mu(d/e) e^k.
inline long double jordan(std::uint64_t d, long double k) {
    long double s = 0.0L;
    for (std::uint64_t e = 1; e <= d; ++e)
        if (d % e == 0) s += mobius(d / e) * std::pow(static_cast<long double>(e), k);
    return s;
}

// Pairs (a, b) of disjoint subsets of P primes with |a|, |b| <= v.
inline std::uint64_t disjoint_pairs(int P, int v) {
    std::uint64_t c = 0;
    for (std::uint32_t a = 0; a < (1u << P); ++a) {
        if (std::popcount(a) > v) continue;
        for (std::uint32_t b = 0; b < (1u << P); ++b)
            if ((a & b) == 0 && std::popcount(b) <= v) ++c;
    }
    return c;
}

// sum over n with prime factors in `primes`, n <= bound, of prod a_p^{e_p} n^{it}.
inline std::complex<long double> friable_series(const std::vector<std::uint32_t>& primes,
                                                const std::vector<long double>& a, long double t,
                                                long double bound) {
    std::complex<long double> s = 0.0L;
    auto rec = [&](auto&& self, std::size_t i, long double n, long double coef) -> void {
        if (i == primes.size()) {
            const long double ph = t * std::log(n);
            s += coef * std::complex<long double>(std::cos(ph), std::sin(ph));
            return;
        }
        for (long double m = n, c = coef; m <= bound; m *= primes[i], c *= a[i]) self(self, i + 1, m, c);
    };
    rec(rec, 0, 1.0L, 1.0L);
    return s;
}

// int_{T^beta <= |t| <= T} exp(-(t L / T)^2) dt for a single unit-weight bin.
inline double gaussian_annulus(double T, double beta) {
    const double L = std::log(T);
    const double k = T / L;
    return 2.0 * k * (std::sqrt(M_PI) / 2.0) * (std::erf(L) - std::erf(L * std::pow(T, beta - 1.0)));
}

// Excluded pairs of the Rankin split, by integer gcd/lcm.
struct RankinSplit {
    long double restricted = 0.0L;
    long double excluded = 0.0L;
    long double half = 0.0L;
    std::uint64_t excluded_pairs = 0;
};

inline RankinSplit rankin_split(const std::vector<std::uint64_t>& M, long double sigma, long double log_threshold) {
    RankinSplit r;
    for (auto m : M)
        for (auto n : M) {
            const long double g = static_cast<long double>(std::gcd(m, n));
            const long double l = static_cast<long double>(m) / g * static_cast<long double>(n);
            const long double ratio = l / g;
            r.half += std::pow(ratio, -0.5L);
            if (std::log(ratio) <= log_threshold + 1e-12L) {
                r.restricted += std::pow(ratio, -sigma);
            } else {
                r.excluded += std::pow(ratio, -sigma);
                ++r.excluded_pairs;
            }
        }
    return r;
}

inline std::vector<std::uint64_t> squarefree_divisors(const std::vector<std::uint64_t>& primes) {
    std::vector<std::uint64_t> out{1};
    for (auto p : primes) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
