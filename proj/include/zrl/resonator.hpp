// resonator.hpp
// The friable resonator R(t) = prod_{p <= X} (1 - a_p p^{it})^{-1} with
// a_p = 1 - p/X, its Gaussian-weighted moments and the 1-line pipeline.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "zrl/primes.hpp"
#include "zrl/quadrature.hpp"
#include "zrl/report.hpp"
#include "zrl/search.hpp"
#include "zrl/zeta.hpp"

namespace zrl {

struct FriableResonator {
    double T = 0.0;
    double beta = 0.0;
    double c = 0.0;
    double B = 0.0;
    double B_lower = 0.0;  // e^{c+1}
    double B_upper = 0.0;  // (1 - beta) / log 4
    double X = 0.0;        // B log T log log T
    std::vector<std::uint32_t> primes;
    std::vector<double> ap;
    std::vector<long double> log_p;
};

// Requires T >= 100, 0 < beta < 1, a nonempty B-window and X <= table
// limit. B defaults to the window midpoint.
FriableResonator build_resonator(double T, double beta, double c, const PrimeTable& table,
                                 std::optional<double> B = std::nullopt);

// Resonator over an explicit cutoff X (no T/beta/c bookkeeping); used by
// tests and by callers exploring X directly.
FriableResonator resonator_for_cutoff(double X, const PrimeTable& table);

std::complex<double> resonator_eval(const FriableResonator& R, double t);
double resonator_abs2(const FriableResonator& R, double t);

struct LogSupReport {
    double value;       // pi(X) log X - theta(X)
    double log_r0;      // sum_p log(X/p) = log R(0)
    double comparator;  // B log T
};

LogSupReport resonator_log_sup(const FriableResonator& R);

struct SumASquaredReport {
    double direct;      // sum_p -log(1 - a_p^2)
    double expansion;   // 2 pi(X) log X - theta(X) - sum_p log(2X - p)
    double comparator;  // (2 - 2 log 2) X / log X
    double ratio;       // direct / comparator
};

SumASquaredReport sum_a_squared(const FriableResonator& R);

struct GammaRatioReport {
    double value;              // prod_p (1 - a_p/p)^{-1}
    double mertens_factor;     // prod_p (1 - 1/p)^{-1}
    double correction_factor;  // prod_p (p - 1)/(p - a_p)
    double reference;          // e^gamma (log X - 1)
};

// Requires X > e.
GammaRatioReport gamma_ratio_bound(const FriableResonator& R);

enum class Moment { M1, M2, I1, I2 };

std::string to_string(Moment m);

struct MomentOptions {
    QuadratureConfig quad;
    EvalConfig zeta;
    // Integrate t > 0 only and reconstruct the t < 0 half by conjugate
    // symmetry. Off integrates both halves independently.
    bool fold_symmetric = true;
};

struct MomentResult {
    std::complex<double> value;
    double error = 0.0;       // quadrature estimate, including the truncation tail
    double tail_bound = 0.0;  // Gaussian tail beyond the cutoff (I1/I2 only)
    double cutoff = 0.0;      // |t| upper limit actually integrated
    std::size_t evaluations = 0;
};

// M1, M2 over T^beta <= |t| <= T (M2 against zeta(1+it)); I1, I2 over the
// real line (I2 against zeta(1+it; Y), Y = exp((log T)^{1/beta})). Throws
// PrecisionError carrying the partial value when quadrature does not
// converge, TableTooSmall when Y exceeds the table for I2.
MomentResult weighted_moment(const FriableResonator& R, Moment which, const MomentOptions& opts,
                             const PrimeTable& table);

struct OneLineConfig {
    MomentOptions moments;
    PeakSearchConfig search;
    std::optional<double> B;
    double sanity_factor = 0.8;
};

RunReport one_line_pipeline(double T, double beta, double c, const PrimeTable& table,
                            const OneLineConfig& cfg = {});

}  // namespace zrl
