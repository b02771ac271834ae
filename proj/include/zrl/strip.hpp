// strip.hpp
// Convolution method inside the critical strip: the binned resonator, the
// Fejer-type kernel K(u) = sin^2(eps u log T) / (pi u^2 eps log T) and its
// triangular transform, the kernel convolution identity for zeta, the
// moments M1/M2/I1/I2 and the end-to-end strip pipeline.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "zrl/gal_sums.hpp"
#include "zrl/quadrature.hpp"
#include "zrl/report.hpp"
#include "zrl/search.hpp"
#include "zrl/zeta.hpp"

namespace zrl {

struct Bin {
    std::int64_t j;
    long double log_rep;  // log of the smallest element in the bin
    std::uint64_t count;
    double weight;  // sqrt(count)
};

struct BinnedResonator {
    double T = 0.0;
    double kappa = 0.0;  // log |M| / log T
    std::uint64_t total = 0;
    std::vector<Bin> bins;  // ascending j
};

// Bin j holds log m in [j s, (j+1) s), s = log(1 + log T / T); values within
// 1e-12 (in units of s) of a boundary go to the lower bin. Requires T >= 100
// and every log-value >= 0.
BinnedResonator bin_set(const std::vector<long double>& log_values, double T);
BinnedResonator bin_set(const std::vector<SetElement>& M, double T);

std::complex<double> binned_eval(const BinnedResonator& R, double t);
double binned_abs2(const BinnedResonator& R, double t);

struct FejerKernel {
    double epsilon = 0.1;
    double T = 0.0;
    double width = 0.0;  // 2 eps log T, support radius of the transform
    double scale() const { return 0.5 * width; }
};

FejerKernel make_kernel(double epsilon, double T);

double kernel_K(double u, const FejerKernel& k);
std::complex<double> kernel_K(std::complex<double> z, const FejerKernel& k);
double kernel_K_hat(double xi, const FejerKernel& k);

struct TransformResult {
    double value;
    double error;  // quadrature estimate plus the tail bound
    double tail;   // estimated contribution beyond the cutoff, already included
};

// int_R K(u) e^{-i xi u} du, integrated in w = eps log T u up to w = W.
TransformResult kernel_transform_quadrature(double xi, const FejerKernel& k, double W = 2e5,
                                            const QuadratureConfig& quad = {});

// zeta(sigma + i(t + u)) zeta(sigma - i(t - u)) K(u).
std::complex<double> frak_Z(double sigma, double t, double u, const FejerKernel& k, const EvalConfig& cfg = {});

struct IdentityConfig {
    QuadratureConfig quad{1e-9, 1e-9, 400000, 1.0};
    EvalConfig zeta;
    // LHS truncated at |u| = cutoff_w / (eps log T).
    double cutoff_w = 1000.0;
    std::size_t max_pairs = 10000000;
};

struct IdentityReport {
    double sigma = 0.0;
    double t = 0.0;
    double lhs = 0.0;
    double lhs_error = 0.0;
    double tail_estimate = 0.0;
    double cutoff = 0.0;
    std::complex<double> dirichlet;
    std::complex<double> correction_minus;  // 2 pi zeta(1 - 2it) K(-t + i(sigma - 1))
    std::complex<double> correction_plus;   // 2 pi zeta(1 + 2it) K(t + i(sigma - 1))
    std::complex<double> rhs;
    std::size_t pairs = 0;
    double abs_diff = 0.0;
    double rel_diff = 0.0;  // abs_diff / max(1, |rhs|)
};

// Requires t != 0, 0.4 <= sigma < 1.
IdentityReport convolution_identity_check(double sigma, double t, const FejerKernel& k,
                                          const IdentityConfig& cfg = {});

struct StripMomentConfig {
    QuadratureConfig quad;
    EvalConfig zeta;
    double grid_step = 0.05;  // target spacing of the zeta table for M2
};

struct StripMoments {
    double M1 = 0.0;
    double M1_error = 0.0;
    std::complex<double> M2;
    double M2_error = 0.0;  // |M2(h) - M2(2h)|
    double h = 0.0;
    std::size_t zeta_evaluations = 0;
    // Outer grid: t, |R(t)|^2, inner u-integral (real part).
    std::vector<std::array<double, 3>> profile;
};

// M1 over T^beta <= |t| <= T; M2 over 2 T^beta <= |t| <= T/2 with the
// inner integral over |u| <= |t|/2, on a grid-aligned Gregory rule.
StripMoments moment_M1_M2(const BinnedResonator& R, double sigma, double beta, const FejerKernel& k,
                          const StripMomentConfig& cfg = {});

// int_R |R(t)|^2 exp(-(t log T / T)^2) dt in closed form.
double binned_I1(const BinnedResonator& R);

struct I2Result {
    double value = 0.0;
    double dirichlet_part = 0.0;   // I_{2,1}, closed form
    double correction_part = 0.0;  // I_{2,2} + I_{2,3}, quadrature
    double error = 0.0;
};

// Full-line second moment through the convolution identity.
I2Result binned_I2(const BinnedResonator& R, double sigma, const FejerKernel& k, const StripMomentConfig& cfg = {});

struct I21Report {
    double restricted = 0.0;  // sum over lcm/gcd <= T^eps of (gcd/lcm)^sigma
    double excluded = 0.0;    // the complementary pairs, enumerated
    double S_sigma = 0.0;
    double S_half = 0.0;
    double rankin_bound = 0.0;  // T^{-(sigma-1/2) eps} S_{1/2}
    double proxy = 0.0;         // (T / log T) (S_sigma - rankin_bound)
    bool tail_ok = false;       // excluded <= rankin_bound
    std::size_t excluded_pairs = 0;
};

I21Report i21_lower_bound(const std::vector<SetElement>& M, double sigma, double T, double epsilon);

struct StripConfig {
    double kernel_epsilon = 0.1;
    std::optional<double> rankin_epsilon;  // defaults to kernel_epsilon
    StripMomentConfig moments;
    PeakSearchConfig search;
    bool compute_I2 = true;
    // Reject sigma < 1/2 + 1/log log T instead of flagging it.
    bool enforce_asymptotic_range = false;
};

RunReport strip_pipeline(double T, double beta, double sigma, const std::vector<SetElement>& M,
                         const StripConfig& cfg = {});

}  // namespace zrl
