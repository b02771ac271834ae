// zeta.hpp
// zeta(s) by Euler-Maclaurin summation, the truncated Euler product, the
// truncation-gap survey and a few reference constants for report overlays.

#pragma once

#include <complex>
#include <vector>

#include "zrl/primes.hpp"
#include "zrl/quadrature.hpp"

namespace zrl {

struct ComplexPoint {
    double sigma = 0.0;
    double t = 0.0;
};

struct EvalConfig {
    double target_rel_error = 1e-13;
    long max_terms = 20'000'000;
    // Highest Bernoulli index B_{2K} used in the tail, i.e. 2K.
    int bernoulli_order = 20;
};

void validate(const EvalConfig& cfg);

struct ZetaValue {
    std::complex<double> value;
    double error_estimate;  // absolute
    long terms;             // main-sum cutoff M
};

ZetaValue zeta_detailed(ComplexPoint s, const EvalConfig& cfg = {});
std::complex<double> zeta(ComplexPoint s, const EvalConfig& cfg = {});

// prod_{p <= y} (1 - p^{-s})^{-1}, ascending primes, extended precision.
std::complex<double> zeta_truncated(ComplexPoint s, double y, const PrimeTable& table);

struct TruncationSample {
    double t;
    double gap;         // |zeta(1+it) / zeta(1+it; y) - 1|
    double comparator;  // (log T)^{-1/beta}
    bool flagged;       // gap > 100 * comparator
};

struct TruncationGapReport {
    double T;
    double beta;
    double y;
    std::vector<TruncationSample> samples;
    double median_gap;
    std::size_t flagged;
};

// y = y_scale * exp((log T)^{1/beta}); y_scale > 1 probes the effect of a
// longer product.
TruncationGapReport truncation_gap(double T, double beta, const std::vector<double>& t_samples,
                                   const PrimeTable& table, const EvalConfig& cfg = {},
                                   double y_scale = 1.0);

// log I_0(t) for t >= 0.
double log_bessel_i0(double t);

struct DistributionConstant {
    double value;     // normalized constant
    double integral;  // int_0^inf log I_0(t) t^{-1/sigma-1} dt
    double error;     // absolute error estimate of `value`
};

// 1/2 < sigma < 1.
DistributionConstant distribution_constant(double sigma);

// log(1 - beta) - log log 4 - 1, for 0 <= beta < 1.
double admissible_c(double beta);

struct ReferenceConstants {
    double c0 = -0.3953997;
    double c0_plus_1_minus_log2 = -0.0885469;
    double exp_gamma = 1.7810724179901979;
};

ReferenceConstants reference_constants();

// Shapes of the known large-value exponent nu(sigma) in the strip, for
// overlays: its behaviour near 1/2 and near 1, and its lower bound.
// Defined for 1/2 < sigma < 1.
double nu_near_half_shape(double sigma);  // sqrt(|log(2 sigma - 1)| / 2)
double nu_near_one_shape(double sigma);   // 1 / (1 - sigma)
double nu_floor(double sigma);            // 1 / (2 - 2 sigma)

}  // namespace zrl
