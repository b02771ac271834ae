// strip.cpp

#include "zrl/strip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "zrl/errors.hpp"
#include "zrl/numeric.hpp"
#include "zrl/parallel.hpp"

namespace zrl {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

double phase_mod(long double x) {
    return static_cast<double>(std::remainder(x, kTwoPiL));
}

double max_log_spread(const BinnedResonator& R) {
    if (R.bins.size() < 2) return 0.0;
    return static_cast<double>(R.bins.back().log_rep - R.bins.front().log_rep);
}

QuadratureConfig oscillatory_config(QuadratureConfig q, double span, double frequency) {
    const double w = kPi / std::max(1.0, frequency);
    if (q.initial_width <= 0.0 || q.initial_width > w) q.initial_width = w;
    const double n0 = std::ceil(span / q.initial_width);
    q.max_panels = std::max<std::size_t>(q.max_panels, static_cast<std::size_t>(4.0 * n0) + 1000);
    return q;
}

// Gregory end corrections on n >= 6 intervals.
double gregory_weight(std::size_t i, std::size_t n) {
    const std::size_t e = std::min(i, n - i);
    switch (e) {
        case 0: return 3.0 / 8.0;
        case 1: return 7.0 / 6.0;
        case 2: return 23.0 / 24.0;
        default: return 1.0;
    }
}

// int_0^d of the quadratic through (-2, f0), (-1, f1), (0, f2), unit spacing.
template <class V>
V quadratic_extension(const V& f0, const V& f1, const V& f2, double d) {
    return d * f2 + 0.5 * d * d * (f2 - f1) + (d * d * d / 6.0 + d * d / 4.0) * (f2 - 2.0 * f1 + f0);
}

void validate_kernel(const FejerKernel& k) {
    if (!(k.width > 0.0) || !std::isfinite(k.width)) throw DomainError("kernel: width must be positive and finite");
}

struct KernelPair {
    double log_k;
    double log_l;
    double coefficient;  // K_hat(log kl) (kl)^{-sigma}
};

std::vector<KernelPair> kernel_pairs(double sigma, const FejerKernel& k, std::size_t max_pairs) {
    const double limit = std::exp(k.width);
    std::vector<KernelPair> out;
    for (std::uint64_t a = 1; static_cast<double>(a) <= limit; ++a) {
        for (std::uint64_t b = 1; static_cast<double>(a) * static_cast<double>(b) <= limit; ++b) {
            const double la = std::log(static_cast<double>(a));
            const double lb = std::log(static_cast<double>(b));
            const double c = kernel_K_hat(la + lb, k) * std::exp(-sigma * (la + lb));
            if (c > 0.0) out.push_back({la, lb, c});
            if (out.size() > max_pairs) throw BudgetError("kernel pair enumeration exceeds max_pairs");
        }
    }
    return out;
}

}  // namespace

BinnedResonator bin_set(const std::vector<long double>& log_values, double T) {
    if (!(T >= 100.0) || !std::isfinite(T)) throw DomainError("bin_set: requires finite T >= 100");
    if (log_values.empty()) throw DomainError("bin_set: empty set");
    const long double step = std::log1p(static_cast<long double>(std::log(T)) / T);
    std::vector<std::pair<std::int64_t, long double>> keyed;
    keyed.reserve(log_values.size());
    for (long double lv : log_values) {
        if (!(lv >= 0.0L) || !std::isfinite(static_cast<double>(lv))) throw DomainError("bin_set: log-values must be >= 0");
        const long double q = lv / step;
        const auto j = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(q - 1e-12L)) - 1);
        keyed.emplace_back(j, lv);
    }
    std::sort(keyed.begin(), keyed.end());
    BinnedResonator R;
    R.T = T;
    R.total = log_values.size();
    R.kappa = std::log(static_cast<double>(R.total)) / std::log(T);
    for (const auto& [j, lv] : keyed) {
        if (R.bins.empty() || R.bins.back().j != j) {
            R.bins.push_back({j, lv, 1, 0.0});
        } else {
            ++R.bins.back().count;
        }
    }
    for (auto& b : R.bins) b.weight = std::sqrt(static_cast<double>(b.count));
    return R;
}

BinnedResonator bin_set(const std::vector<SetElement>& M, double T) {
    std::vector<long double> logs;
    logs.reserve(M.size());
    for (const auto& m : M) logs.push_back(m.log_value());
    return bin_set(logs, T);
}

std::complex<double> binned_eval(const BinnedResonator& R, double t) {
    CompensatedComplexSum<double> s;
    for (const auto& b : R.bins) s += std::polar(b.weight, phase_mod(b.log_rep * t));
    return s.value();
}

double binned_abs2(const BinnedResonator& R, double t) { return std::norm(binned_eval(R, t)); }

FejerKernel make_kernel(double epsilon, double T) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("kernel: requires 0 < epsilon < 1");
    if (!(T > 1.0) || !std::isfinite(T)) throw DomainError("kernel: requires finite T > 1");
    return {epsilon, T, 2.0 * epsilon * std::log(T)};
}

double kernel_K(double u, const FejerKernel& k) {
    return kernel_K(std::complex<double>(u, 0.0), k).real();
}

std::complex<double> kernel_K(std::complex<double> z, const FejerKernel& k) {
    validate_kernel(k);
    const double a = k.scale();
    const std::complex<double> w = a * z;
    if (std::abs(w) < 1e-3) {
        const std::complex<double> w2 = w * w;
        return (a / kPi) * (1.0 - w2 / 3.0 + 2.0 * w2 * w2 / 45.0 - w2 * w2 * w2 / 315.0);
    }
    const std::complex<double> s = std::sin(w);
    return s * s / (kPi * a * z * z);
}

double kernel_K_hat(double xi, const FejerKernel& k) {
    validate_kernel(k);
    return std::max(1.0 - std::abs(xi) / k.width, 0.0);
}

TransformResult kernel_transform_quadrature(double xi, const FejerKernel& k, double W, const QuadratureConfig& quad) {
    validate_kernel(k);
    if (!(W > 10.0) || !std::isfinite(W)) throw DomainError("kernel transform: requires finite W > 10");
    const double nu = xi / k.scale();
    auto f = [nu](double w) {
        if (std::abs(w) < 1e-4) return (1.0 - w * w / 3.0) * std::cos(nu * w);
        const double s = std::sin(w) / w;
        return s * s * std::cos(nu * w);
    };
    QuadratureConfig q = quad;
    q.initial_width = kPi;
    q.max_panels = std::max<std::size_t>(q.max_panels, static_cast<std::size_t>(4.0 * (W / kPi)) + 1000);
    const auto r = integrate(f, 0.0, W, q);
    if (!r.converged) throw PrecisionError("kernel transform: quadrature did not converge", r.error, r.value);

    auto tail_cos = [W](double lambda) {
        if (std::abs(lambda) * W < 1e-9) return 1.0 / W;
        return -std::sin(lambda * W) / (lambda * W * W);
    };
    const double tail = (2.0 / kPi) * (0.5 * tail_cos(nu) - 0.25 * tail_cos(nu - 2.0) - 0.25 * tail_cos(nu + 2.0));
    return {(2.0 / kPi) * r.value + tail, (2.0 / kPi) * (r.error + 1.0 / W), tail};
}

std::complex<double> frak_Z(double sigma, double t, double u, const FejerKernel& k, const EvalConfig& cfg) {
    return zeta({sigma, t + u}, cfg) * zeta({sigma, u - t}, cfg) * kernel_K(u, k);
}

IdentityReport convolution_identity_check(double sigma, double t, const FejerKernel& k, const IdentityConfig& cfg) {
    if (t == 0.0 || !std::isfinite(t)) throw DomainError("identity: requires finite t != 0");
    if (!(sigma >= 0.4 && sigma < 1.0)) throw DomainError("identity: requires 0.4 <= sigma < 1");
    if (!(cfg.cutoff_w > 10.0)) throw ConfigError("identity: cutoff_w must exceed 10");
    validate_kernel(k);

    IdentityReport rep;
    rep.sigma = sigma;
    rep.t = t;
    const double a = k.scale();
    const double U = cfg.cutoff_w / a;
    rep.cutoff = U;

    QuadratureConfig q = cfg.quad;
    q.max_panels = std::max<std::size_t>(q.max_panels, static_cast<std::size_t>(4.0 * U / std::max(q.initial_width, 1e-3)) + 1000);
    auto f = [&](double u) { return frak_Z(sigma, t, u, k, cfg.zeta).real(); };
    const auto r = integrate(f, 0.0, U, q);
    if (!r.converged) throw PrecisionError("identity: LHS quadrature did not converge", r.error, r.value);
    rep.tail_estimate = 1.0 / (kPi * a * U);
    rep.lhs = 2.0 * r.value + rep.tail_estimate;
    rep.lhs_error = 2.0 * r.error;

    const auto pairs = kernel_pairs(sigma, k, cfg.max_pairs);
    rep.pairs = pairs.size();
    CompensatedComplexSum<double> d;
    for (const auto& p : pairs) d += std::polar(p.coefficient, t * (p.log_l - p.log_k));
    rep.dirichlet = d.value();

    rep.correction_minus = 2.0 * kPi * zeta({1.0, -2.0 * t}, cfg.zeta) * kernel_K(std::complex<double>(-t, sigma - 1.0), k);
    rep.correction_plus = 2.0 * kPi * zeta({1.0, 2.0 * t}, cfg.zeta) * kernel_K(std::complex<double>(t, sigma - 1.0), k);
    rep.rhs = rep.dirichlet - rep.correction_minus - rep.correction_plus;
    rep.abs_diff = std::abs(std::complex<double>(rep.lhs, 0.0) - rep.rhs);
    rep.rel_diff = rep.abs_diff / std::max(1.0, std::abs(rep.rhs));
    return rep;
}

StripMoments moment_M1_M2(const BinnedResonator& R, double sigma, double beta, const FejerKernel& k,
                          const StripMomentConfig& cfg) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("moments: requires 1/2 < sigma < 1");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("moments: requires 0 < beta < 1");
    if (R.bins.empty()) throw DomainError("moments: empty resonator");
    if (!(cfg.grid_step > 0.0)) throw ConfigError("moments: grid_step must be positive");
    validate_kernel(k);
    const double T = R.T;
    const double L = std::log(T);
    const double Tb = std::pow(T, beta);
    auto phi = [&](double t) {
        const double x = t * L / T;
        return std::exp(-x * x);
    };

    StripMoments out;
    {
        const auto q = oscillatory_config(cfg.quad, T - Tb, max_log_spread(R));
        auto f = [&](double t) { return binned_abs2(R, t) * phi(t); };
        const auto r = integrate(f, Tb, T, q);
        if (!r.converged) throw PrecisionError("moments: M1 quadrature did not converge", r.error, r.value);
        out.M1 = 2.0 * r.value;
        out.M1_error = 2.0 * r.error;
    }

    const double A = 2.0 * Tb;
    const double B = 0.5 * T;
    if (!(B > A)) throw DomainError("moments: M2 range 2T^beta < T/2 is empty");
    auto m = static_cast<std::size_t>(std::ceil(A / (2.0 * cfg.grid_step)));
    m = std::max<std::size_t>(m, 8);
    if (m % 2) ++m;
    const double h = A / (2.0 * static_cast<double>(m));
    out.h = h;
    const auto Kt = static_cast<std::size_t>(std::floor((B - A) / (2.0 * h) + 1e-9));
    if (Kt < 12) throw DomainError("moments: M2 range too short for the grid");

    const std::size_t n_max = 3 * (m + Kt) + 2;
    std::vector<std::complex<double>> Z(n_max + 1);
    parallel_for(Z.size(), [&](std::size_t n) { Z[n] = zeta({sigma, static_cast<double>(n) * h}, cfg.zeta); });
    out.zeta_evaluations = Z.size();
    auto z_at = [&](std::ptrdiff_t n) { return n >= 0 ? Z[static_cast<std::size_t>(n)] : std::conj(Z[static_cast<std::size_t>(-n)]); };

    std::vector<double> Kv(m + Kt + 1);
    for (std::size_t j = 0; j < Kv.size(); ++j) Kv[j] = kernel_K(static_cast<double>(j) * h, k);

    std::vector<std::complex<double>> fine(Kt + 1), coarse(Kt + 1);
    std::vector<double> r2(Kt + 1);
    parallel_for(Kt + 1, [&](std::size_t kk) {
        const std::size_t c = m + kk;
        const std::size_t n = 2 * c;
        CompensatedComplexSum<double> sf, sc;
        for (std::size_t i = 0; i <= n; ++i) {
            const std::size_t kidx = i > c ? i - c : c - i;
            const std::complex<double> v =
                Z[c + i] * z_at(static_cast<std::ptrdiff_t>(i) - 3 * static_cast<std::ptrdiff_t>(c)) * Kv[kidx];
            sf += gregory_weight(i, n) * v;
            if (kk % 2 == 0 && i % 2 == 0) sc += gregory_weight(i / 2, c) * v;
        }
        fine[kk] = sf.value() * h;
        coarse[kk] = sc.value() * (2.0 * h);
        const double t = A + 2.0 * static_cast<double>(kk) * h;
        r2[kk] = binned_abs2(R, t) * phi(t);
    });

    auto outer = [&](const std::vector<std::complex<double>>& inner, std::size_t stride) {
        const std::size_t n = Kt / stride;
        const double s = 2.0 * h * static_cast<double>(stride);
        CompensatedComplexSum<double> acc;
        std::vector<std::complex<double>> g(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            g[i] = r2[i * stride] * inner[i * stride];
            acc += gregory_weight(i, n) * g[i];
        }
        const double d = (B - (A + s * static_cast<double>(n))) / s;
        const auto tail = quadratic_extension(g[n - 2], g[n - 1], g[n], d);
        return 2.0 * s * (acc.value() + tail);
    };
    out.M2 = outer(fine, 1);
    out.M2_error = std::abs(out.M2 - outer(coarse, 2));

    out.profile.reserve(Kt + 1);
    for (std::size_t kk = 0; kk <= Kt; ++kk) {
        const double t = A + 2.0 * static_cast<double>(kk) * h;
        out.profile.push_back({t, r2[kk] / phi(t), fine[kk].real()});
    }
    return out;
}

double binned_I1(const BinnedResonator& R) {
    const double TL = R.T / std::log(R.T);
    CompensatedSum<double> s;
    for (const auto& a : R.bins)
        for (const auto& b : R.bins) {
            const double x = TL * static_cast<double>(a.log_rep - b.log_rep);
            s += a.weight * b.weight * std::exp(-0.25 * x * x);
        }
    return TL * kSqrtPi * s.value();
}

I2Result binned_I2(const BinnedResonator& R, double sigma, const FejerKernel& k, const StripMomentConfig& cfg) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("I2: requires 1/2 < sigma < 1");
    validate_kernel(k);
    const double T = R.T;
    const double L = std::log(T);
    const double TL = T / L;
    const auto pairs = kernel_pairs(sigma, k, 10000000);
    const double work = static_cast<double>(R.bins.size()) * static_cast<double>(R.bins.size()) *
                        static_cast<double>(pairs.size());
    if (work > 1e10) throw BudgetError("I2: bins^2 * kernel pairs exceeds 1e10");

    I2Result out;
    std::vector<double> rows(R.bins.size());
    parallel_for(R.bins.size(), [&](std::size_t i) {
        CompensatedSum<double> s;
        for (const auto& b : R.bins) {
            const double base = static_cast<double>(R.bins[i].log_rep - b.log_rep);
            for (const auto& p : pairs) {
                const double x = TL * (base + p.log_l - p.log_k);
                s += b.weight * p.coefficient * std::exp(-0.25 * x * x);
            }
        }
        rows[i] = R.bins[i].weight * s.value();
    });
    CompensatedSum<double> d;
    for (double r : rows) d += r;
    out.dirichlet_part = TL * kSqrtPi * d.value();

    const double cutoff = 6.5 * TL;
    auto g = [&](double t) {
        const std::complex<double> c = zeta({1.0, -2.0 * t}, cfg.zeta) * kernel_K(std::complex<double>(-t, sigma - 1.0), k);
        const double x = t / TL;
        return c.real() * binned_abs2(R, t) * std::exp(-x * x);
    };
    const auto q = oscillatory_config(cfg.quad, cutoff, std::max(1.0, max_log_spread(R)));
    const auto r = integrate(g, 0.0, cutoff, q);
    if (!r.converged) throw PrecisionError("I2: correction quadrature did not converge", r.error, r.value);
    out.correction_part = 8.0 * kPi * r.value;
    out.error = 8.0 * kPi * r.error;
    out.value = out.dirichlet_part - out.correction_part;
    return out;
}

I21Report i21_lower_bound(const std::vector<SetElement>& M, double sigma, double T, double epsilon) {
    if (!(sigma >= 0.5 && sigma <= 1.0)) throw DomainError("i21_lower_bound: requires 1/2 <= sigma <= 1");
    if (!(epsilon > 0.0)) throw DomainError("i21_lower_bound: requires epsilon > 0");
    if (!(T > 1.0)) throw DomainError("i21_lower_bound: requires T > 1");
    if (M.empty()) throw DomainError("i21_lower_bound: empty set");
    if (M.size() > kMaxGalSumSize) throw BudgetError("i21_lower_bound: |M| exceeds 1e5");
    {
        auto sorted = M;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DomainError("i21_lower_bound: elements must be distinct");
    }
    const long double threshold = static_cast<long double>(epsilon) * std::log(static_cast<long double>(T));
    struct Row {
        double restricted = 0.0, excluded = 0.0, half = 0.0;
        std::size_t excluded_pairs = 0;
    };
    std::vector<Row> rows(M.size());
    parallel_for(M.size(), [&](std::size_t i) {
        CompensatedSum<double> r, e, hsum;
        Row row;
        for (std::size_t j = 0; j < M.size(); ++j) {
            const long double dl = log_lcm_over_gcd(M[i], M[j]);
            const double d = static_cast<double>(dl);
            hsum += std::exp(-0.5 * d);
            if (dl <= threshold + 1e-12L) {
                r += std::exp(-sigma * d);
            } else {
                e += std::exp(-sigma * d);
                ++row.excluded_pairs;
            }
        }
        row.restricted = r.value();
        row.excluded = e.value();
        row.half = hsum.value();
        rows[i] = row;
    });
    I21Report out;
    CompensatedSum<double> r, e, hsum;
    for (const auto& row : rows) {
        r += row.restricted;
        e += row.excluded;
        hsum += row.half;
        out.excluded_pairs += row.excluded_pairs;
    }
    out.restricted = r.value();
    out.excluded = e.value();
    out.S_sigma = out.restricted + out.excluded;
    out.S_half = hsum.value();
    out.rankin_bound = std::exp(-(sigma - 0.5) * static_cast<double>(threshold)) * out.S_half;
    out.tail_ok = out.excluded <= out.rankin_bound * (1.0 + 1e-12);
    out.proxy = (T / std::log(T)) * (out.S_sigma - out.rankin_bound);
    return out;
}

RunReport strip_pipeline(double T, double beta, double sigma, const std::vector<SetElement>& M, const StripConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (!(T >= 100.0) || !std::isfinite(T)) throw DomainError("strip: requires finite T >= 100");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("strip: requires 0 < beta < 1");
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("strip: requires 1/2 < sigma < 1");
    if (M.empty()) throw DomainError("strip: empty set");
    const double L = std::log(T);
    const double asymptotic_floor = 0.5 + 1.0 / std::log(L);
    if (cfg.enforce_asymptotic_range && sigma < asymptotic_floor)
        throw DomainError("strip: sigma below 1/2 + 1/log log T");

    const FejerKernel kernel = make_kernel(cfg.kernel_epsilon, T);
    const BinnedResonator R = bin_set(M, T);
    const double size = static_cast<double>(R.total);

    RunReport rep;
    rep.command = "strip-search";
    rep.version = version_string();
    auto& v = rep.values;
    v["T"] = T;
    v["beta"] = beta;
    v["sigma"] = sigma;
    v["M_size"] = R.total;
    v["bins"] = R.bins.size();
    v["kappa"] = R.kappa;
    v["kernel_epsilon"] = kernel.epsilon;

    const auto mom = moment_M1_M2(R, sigma, beta, kernel, cfg.moments);
    const double I1 = binned_I1(R);
    const double ratio = std::abs(mom.M2) / mom.M1;
    const double eps_q = mom.M2_error / mom.M1 + std::abs(mom.M2) * mom.M1_error / (mom.M1 * mom.M1);
    v["M1"] = {{"value", mom.M1}, {"error", mom.M1_error}};
    v["M2"] = {{"re", mom.M2.real()}, {"im", mom.M2.imag()}, {"error", mom.M2_error}, {"h", mom.h},
               {"zeta_evaluations", mom.zeta_evaluations}};
    v["I1"] = I1;
    v["eps_q"] = eps_q;

    auto target = [&](double t) { return std::abs(zeta({sigma, t}, cfg.moments.zeta)); };
    auto weight = [&](double t) { return std::sqrt(binned_abs2(R, t)); };
    const auto found = resonance_search(weight, target, std::pow(T, beta), T, cfg.search);
    v["search"] = {{"argmax", found.argmax},
                   {"max_abs_zeta", found.max_value},
                   {"seeds", found.seeds},
                   {"target_evaluations", found.target_evaluations}};

    const double max2 = found.max_value * found.max_value;
    rep.add(make_check("max|zeta(sigma+it)|^2 >= |M2|/M1 - eps_q", max2, ratio, Relation::GreaterEqual,
                       eps_q + 1e-12 * max2));
    rep.add(make_check("M1 <= I1", mom.M1, I1, Relation::LessEqual, mom.M1_error + 1e-12 * I1));
    rep.add(make_check("M2 imaginary part", std::abs(mom.M2.imag()), 0.0, Relation::LessEqual,
                       1e-8 * std::abs(mom.M2) + mom.M2_error));

    const double rankin_eps = cfg.rankin_epsilon.value_or(cfg.kernel_epsilon);
    const auto i21 = i21_lower_bound(M, sigma, T, rankin_eps);
    v["I21_bound"] = {{"restricted", i21.restricted}, {"excluded", i21.excluded},
                      {"S_sigma", i21.S_sigma},       {"S_half", i21.S_half},
                      {"rankin_bound", i21.rankin_bound}, {"proxy", i21.proxy},
                      {"excluded_pairs", i21.excluded_pairs}, {"epsilon", rankin_eps}};
    rep.add(make_check("excluded pairs <= T^{-(sigma-1/2) eps} S_1/2", i21.excluded, i21.rankin_bound,
                       Relation::LessEqual, 1e-12 * i21.rankin_bound));

    double r0 = 0.0;
    for (const auto& b : R.bins) r0 += b.weight;
    const double cs = std::sqrt(static_cast<double>(R.bins.size())) * std::sqrt(size);
    rep.add(make_check("R(0) <= |J|^1/2 |M|^1/2", r0, cs, Relation::LessEqual, 1e-12 * cs));
    rep.add(make_check("|J|^1/2 |M|^1/2 <= |M|", cs, size, Relation::LessEqual, 1e-12 * size));
    std::uint64_t counted = 0;
    for (const auto& b : R.bins) counted += b.count;
    rep.add(make_check("sum r^2 = |M|", static_cast<double>(counted), size, Relation::Approx, 0.0));

    rep.add(make_check("I1 log T / (T |M|)", I1 * L / (T * size), kSqrtPi, Relation::Informational));
    const double error_shape = std::pow(T, beta + R.kappa - 1.0) * L * L;
    rep.add(make_check("T^{beta+kappa-1} (log T)^2", error_shape, ratio, Relation::Informational));
    rep.add(make_check("S_sigma / |M|", i21.S_sigma / size, 1.0, Relation::Informational));
    rep.add(make_check("sigma >= 1/2 + 1/log log T", sigma, asymptotic_floor, Relation::Informational));
    v["asymptotic_range_ok"] = sigma >= asymptotic_floor;

    if (cfg.compute_I2) {
        try {
            const auto i2 = binned_I2(R, sigma, kernel, cfg.moments);
            v["I2"] = {{"value", i2.value}, {"dirichlet_part", i2.dirichlet_part},
                       {"correction_part", i2.correction_part}, {"error", i2.error}};
            const double shape = std::abs(i2.value - mom.M2.real()) / (size * std::pow(T, beta + R.kappa) * L);
            rep.add(make_check("|I2 - M2| / (|M| T^{beta+kappa} log T)", shape, 0.0, Relation::Informational));
        } catch (const BudgetError& e) {
            v["I2"] = std::string("unavailable: ") + e.what();
        }
    }

    Series s{"strip", {"t", "abs_R_squared", "inner_integral"}, {}};
    s.rows.reserve(mom.profile.size());
    for (const auto& p : mom.profile) s.rows.push_back({p[0], p[1], p[2]});
    rep.series.push_back(std::move(s));
    Series ss{"search", {"t", "abs_R", "abs_zeta"}, {}};
    for (const auto& smp : found.samples) ss.rows.push_back({smp.t, smp.weight, smp.target});
    rep.series.push_back(std::move(ss));
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace zrl
