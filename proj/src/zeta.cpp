// zeta.cpp

#include "zrl/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "zrl/errors.hpp"

namespace zrl {

namespace {

using cld = std::complex<long double>;

// B_{2k} for k = 1..16.
constexpr std::array<long double, 16> kBernoulli = {
    1.0L / 6.0L,
    -1.0L / 30.0L,
    1.0L / 42.0L,
    -1.0L / 30.0L,
    5.0L / 66.0L,
    -691.0L / 2730.0L,
    7.0L / 6.0L,
    -3617.0L / 510.0L,
    43867.0L / 798.0L,
    -174611.0L / 330.0L,
    854513.0L / 138.0L,
    -236364091.0L / 2730.0L,
    8553103.0L / 6.0L,
    -23749461029.0L / 870.0L,
    8615841276005.0L / 14322.0L,
    -7709321041217.0L / 510.0L,
};

// Smallest-prime-factor table, grown on demand and private to each thread.
const std::vector<std::uint32_t>& spf_table(std::size_t n) {
    thread_local std::vector<std::uint32_t> spf;
    if (spf.size() > n) return spf;
    std::size_t size = std::max<std::size_t>(n + 1, 2 * spf.size());
    spf.assign(size, 0);
    std::vector<std::uint32_t> primes;
    for (std::size_t i = 2; i < size; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (const std::uint32_t p : primes) {
            const std::size_t m = i * p;
            if (p > spf[i] || m >= size) break;
            spf[m] = p;
        }
    }
    return spf;
}

// cos and sin of x after Cody-Waite reduction by pi/2 (three-part
// constant, exact products for |x| < 2^33), so libm only sees |r| <= pi/4.
void cos_sin(long double x, long double& c, long double& s) {
    static const long double c1 = 3373259426.0L / 2147483648.0L;
    static const long double c2 = std::ldexp(9629550130899814958.0L, -97);
    static const long double c3 = 3.39137106414755985758e-31L / 4.0L;
    if (std::abs(x) > 8.0e9L) {
        c = std::cos(x);
        s = std::sin(x);
        return;
    }
    const long double k = std::nearbyint(x / (c1 + c2));
    const long double r = ((x - k * c1) - k * c2) - k * c3;
    const long double cr = std::cos(r), sr = std::sin(r);
    switch (static_cast<long long>(k) & 3) {
        case 0: c = cr; s = sr; break;
        case 1: c = -sr; s = cr; break;
        case 2: c = -cr; s = -sr; break;
        default: c = sr; s = -cr; break;
    }
}

cld power_minus_s(long double n, long double sigma, long double t) {
    const long double ln = std::log(n);
    const long double mag = std::exp(-sigma * ln);
    long double c, s;
    cos_sin(t * ln, c, s);
    return {mag * c, -mag * s};
}

struct Attempt {
    cld value;
    long double error;
};

// Euler-Maclaurin with main-sum cutoff m and `kterms` Bernoulli corrections.
// Requires t >= 0.
Attempt euler_maclaurin(long double sigma, long double t, long m, int kterms) {
    const cld s(sigma, t);
    const auto& spf = spf_table(static_cast<std::size_t>(m));

    // n^{-s} for n < m. Only primes need a transcendental evaluation; the
    // rest follow from complete multiplicativity.
    thread_local std::vector<long double> re, im;
    if (re.size() < static_cast<std::size_t>(std::max(m, 2L))) {
        re.resize(static_cast<std::size_t>(std::max(m, 2L)));
        im.resize(re.size());
    }
    long double sum_re = 0.0L, sum_im = 0.0L;
    if (m > 1) {
        re[1] = 1.0L;
        sum_re = 1.0L;
    }
    for (long n = 2; n < m; ++n) {
        const std::uint32_t p = spf[static_cast<std::size_t>(n)];
        if (p == static_cast<std::uint32_t>(n)) {
            const cld z = power_minus_s(static_cast<long double>(n), sigma, t);
            re[n] = z.real();
            im[n] = z.imag();
        } else {
            const long q = n / p;
            re[n] = re[p] * re[q] - im[p] * im[q];
            im[n] = re[p] * im[q] + im[p] * re[q];
        }
        sum_re += re[n];
        sum_im += im[n];
    }
    // sum_{n<m} n^{-sigma}, bounded by the integral comparison.
    const long double abs_sum =
        sigma == 1.0L ? 1.0L + std::log(static_cast<long double>(m))
                      : 1.0L + (std::pow(static_cast<long double>(m), 1.0L - sigma) - 1.0L) / (1.0L - sigma);

    const long double ml = static_cast<long double>(m);
    const cld ms = power_minus_s(ml, sigma, t);
    cld total = cld(sum_re, sum_im) + ml * ms / (s - 1.0L) + 0.5L * ms;

    // v_k = s (s+1) ... (s+2k-2) M^{-s-2k+1}; the k-th correction is
    // B_{2k}/(2k)! v_k.
    cld v = s * ms / ml;
    long double fact = 2.0L;
    for (int k = 1; k <= kterms; ++k) {
        total += kBernoulli[k - 1] / fact * v;
        v *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k)) / (ml * ml);
        fact *= static_cast<long double>((2 * k + 1) * (2 * k + 2));
    }
    const long double next = std::abs(kBernoulli[kterms] / fact * v);
    const long double widen = std::abs(s + static_cast<long double>(2 * kterms + 1)) /
                              (sigma + static_cast<long double>(2 * kterms + 1));
    const long double roundoff = abs_sum * 8.0L * std::sqrt(static_cast<long double>(m)) * std::numeric_limits<long double>::epsilon();
    return {total, next * widen + roundoff};
}

}  // namespace

void validate(const EvalConfig& cfg) {
    if (!(cfg.target_rel_error >= 1e-14 && cfg.target_rel_error <= 1e-6))
        throw ConfigError("zeta: target_rel_error must lie in [1e-14, 1e-6]");
    if (cfg.bernoulli_order < 2 || cfg.bernoulli_order > 30 || cfg.bernoulli_order % 2 != 0)
        throw ConfigError("zeta: bernoulli_order must be even and in [2, 30]");
    if (cfg.max_terms < 16) throw ConfigError("zeta: max_terms must be at least 16");
}

ZetaValue zeta_detailed(ComplexPoint s, const EvalConfig& cfg) {
    validate(cfg);
    if (!std::isfinite(s.sigma) || !std::isfinite(s.t) || s.sigma < 0.4 || s.sigma > 3.0 ||
        std::abs(s.t) > 1e8) {
        std::ostringstream msg;
        msg << "zeta: s = " << s.sigma << " + " << s.t << "i outside 0.4 <= sigma <= 3, |t| <= 1e8";
        throw DomainError(msg.str());
    }
    if (std::hypot(s.sigma - 1.0, s.t) < 1e-8) throw PoleError("zeta: s is within 1e-8 of the pole at 1");

    const bool lower = s.t < 0.0;
    const long double t = std::abs(static_cast<long double>(s.t));
    const int kterms = cfg.bernoulli_order / 2;

    long m = static_cast<long>(std::ceil(1.3 * std::max(10.0L, t)));
    Attempt a{};
    for (;;) {
        const long used = std::min(m, cfg.max_terms);
        a = euler_maclaurin(s.sigma, t, used, kterms);
        const long double target = cfg.target_rel_error * std::abs(a.value);
        if (a.error <= target) {
            m = used;
            break;
        }
        if (used >= cfg.max_terms) {
            std::ostringstream msg;
            msg << "zeta: relative error " << static_cast<double>(a.error / std::abs(a.value))
                << " above target with max_terms = " << cfg.max_terms;
            throw PrecisionError(msg.str(), static_cast<double>(a.error), static_cast<double>(std::abs(a.value)));
        }
        m *= 2;
    }
    std::complex<double> z(static_cast<double>(a.value.real()), static_cast<double>(a.value.imag()));
    if (lower) z = std::conj(z);
    return {z, static_cast<double>(a.error), m};
}

std::complex<double> zeta(ComplexPoint s, const EvalConfig& cfg) { return zeta_detailed(s, cfg).value; }

std::complex<double> zeta_truncated(ComplexPoint s, double y, const PrimeTable& table) {
    if (!(y >= 2.0)) throw DomainError("zeta_truncated: requires y >= 2");
    if (!(s.sigma > 0.0)) throw DomainError("zeta_truncated: requires sigma > 0");
    table.require(y, "zeta_truncated");
    const auto primes = table.primes();
    const std::size_t k = table.upper_index(y);
    cld den = 1.0L;
    for (std::size_t i = 0; i < k; ++i)
        den *= 1.0L - power_minus_s(static_cast<long double>(primes[i]), s.sigma, s.t);
    const cld z = 1.0L / den;
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

TruncationGapReport truncation_gap(double T, double beta, const std::vector<double>& t_samples,
                                   const PrimeTable& table, const EvalConfig& cfg, double y_scale) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("truncation_gap: requires 0 < beta < 1");
    if (!(T >= 3.0)) throw DomainError("truncation_gap: requires T >= 3");
    if (!(y_scale >= 1.0)) throw DomainError("truncation_gap: y_scale must be >= 1");
    const double lo = std::pow(T, beta);
    for (const double t : t_samples)
        if (!(std::abs(t) >= lo && std::abs(t) <= T)) {
            std::ostringstream msg;
            msg << "truncation_gap: |t| = " << std::abs(t) << " outside [" << lo << ", " << T << "]";
            throw DomainError(msg.str());
        }

    TruncationGapReport r{};
    r.T = T;
    r.beta = beta;
    const double log_t = std::log(T);
    r.y = y_scale * std::exp(std::pow(log_t, 1.0 / beta));
    if (r.y > static_cast<double>(table.limit())) {
        std::ostringstream msg;
        msg << "truncation_gap: Euler product length " << r.y << " exceeds the prime table ("
            << table.limit() << "); reduce T or beta";
        throw TableTooSmall(msg.str(), r.y, static_cast<double>(table.limit()));
    }
    const double comparator = std::pow(log_t, -1.0 / beta);
    std::vector<double> gaps;
    for (const double t : t_samples) {
        const auto full = zeta({1.0, t}, cfg);
        const auto part = zeta_truncated({1.0, t}, r.y, table);
        TruncationSample smp{t, std::abs(full / part - 1.0), comparator, false};
        smp.flagged = smp.gap > 100.0 * comparator;
        if (smp.flagged) ++r.flagged;
        gaps.push_back(smp.gap);
        r.samples.push_back(smp);
    }
    if (!gaps.empty()) {
        std::sort(gaps.begin(), gaps.end());
        const std::size_t n = gaps.size();
        r.median_gap = n % 2 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
    }
    return r;
}

namespace {

// log of the asymptotic series sum_k ((2k-1)!!)^2 / (k! (8x)^k), x > 20,
// i.e. log I_0(x) - x + log(2 pi x) / 2.
long double i0_asymptotic_correction(long double x) {
    long double term = 1.0L, corr = 0.0L;
    for (int k = 1; k < 200; ++k) {
        const long double next = term * (2.0L * k - 1.0L) * (2.0L * k - 1.0L) / (8.0L * k * x);
        if (next >= term) break;
        term = next;
        corr += term;
        if (term < 1e-21L * corr) break;
    }
    return std::log1p(corr);
}

}  // namespace

double log_bessel_i0(double t) {
    const long double x = std::abs(static_cast<long double>(t));
    if (x <= 20.0L) {
        const long double q = x * x / 4.0L;
        long double term = 1.0L, sum = 1.0L;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<long double>(k) * k);
            sum += term;
            if (term < 1e-21L * sum) break;
        }
        return static_cast<double>(std::log(sum));
    }
    return static_cast<double>(x - 0.5L * std::log(kTwoPiL * x) + i0_asymptotic_correction(x));
}

DistributionConstant distribution_constant(double sigma) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("distribution_constant: requires 1/2 < sigma < 1");
    const double a = 1.0 / sigma;

    // (0, 1]: log I_0(t) = sum_k g_k (t^2/4)^k integrated termwise.
    constexpr int kTerms = 60;
    std::array<long double, kTerms + 1> coef{}, g{};
    coef[0] = 1.0L;
    for (int k = 1; k <= kTerms; ++k) coef[k] = coef[k - 1] / (static_cast<long double>(k) * k);
    CompensatedSum<long double> head;
    long double quarter = 1.0L;
    for (int k = 1; k <= kTerms; ++k) {
        long double conv = 0.0L;
        for (int j = 1; j < k; ++j) conv += j * g[j] * coef[k - j];
        g[k] = coef[k] - conv / k;
        quarter /= 4.0L;
        head.add(g[k] * quarter / (2.0L * k - a));
    }

    QuadratureConfig qc;
    qc.abs_tol = 1e-13;
    qc.rel_tol = 1e-13;
    const auto middle =
        integrate([a](double t) { return log_bessel_i0(t) * std::pow(t, -a - 1.0); }, 1.0, 20.0, qc);

    // (20, inf): the two leading asymptotic terms in closed form, the
    // remainder after t = 20 / v.
    const double t0 = 20.0;
    const double leading = std::pow(t0, 1.0 - a) / (a - 1.0) -
                           0.5 * std::pow(t0, -a) / a * (std::log(2.0 * std::numbers::pi * t0) + 1.0 / a);
    const auto rest = integrate(
        [a, t0](double v) { return static_cast<double>(i0_asymptotic_correction(t0 / v)) * std::pow(v, a - 1.0); }, 0.0, 1.0, qc);
    const double tail = leading + std::pow(t0, -a) * rest.value;

    DistributionConstant out{};
    out.integral = static_cast<double>(head.value()) + middle.value + tail;
    const double pref = std::pow(sigma, -2.0 * sigma) * std::pow(1.0 - sigma, sigma - 1.0);
    out.value = pref * out.integral;
    out.error = pref * (middle.error + std::pow(t0, -a) * rest.error + 1e-15 * std::abs(out.integral));
    return out;
}

double admissible_c(double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) throw DomainError("admissible_c: requires 0 <= beta < 1");
    return std::log1p(-beta) - std::log(std::log(4.0)) - 1.0;
}

ReferenceConstants reference_constants() {
    ReferenceConstants c;
    c.exp_gamma = exp_euler_gamma();
    return c;
}

namespace {
void require_strip(double sigma, const char* what) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError(std::string(what) + ": requires 1/2 < sigma < 1");
}
}  // namespace

double nu_near_half_shape(double sigma) {
    require_strip(sigma, "nu_near_half_shape");
    return std::sqrt(std::abs(std::log(2.0 * sigma - 1.0)) / 2.0);
}

double nu_near_one_shape(double sigma) {
    require_strip(sigma, "nu_near_one_shape");
    return 1.0 / (1.0 - sigma);
}

double nu_floor(double sigma) {
    require_strip(sigma, "nu_floor");
    return 1.0 / (2.0 - 2.0 * sigma);
}

}  // namespace zrl
