// resonator.cpp

#include "zrl/resonator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zrl/errors.hpp"

namespace zrl {

namespace {

void fill_primes(FriableResonator& R, const PrimeTable& table) {
    R.primes.clear();
    R.ap.clear();
    R.log_p.clear();
    if (R.X < 2.0) return;
    table.require(R.X, "resonator");
    const auto ps = table.primes();
    for (std::size_t i = 0; i < table.upper_index(R.X); ++i) {
        const double p = ps[i];
        R.primes.push_back(ps[i]);
        R.ap.push_back(1.0 - p / R.X);
        R.log_p.push_back(std::log(static_cast<long double>(ps[i])));
    }
}

}  // namespace

FriableResonator build_resonator(double T, double beta, double c, const PrimeTable& table,
                                 std::optional<double> B) {
    if (!(T >= 100.0)) throw DomainError("build_resonator: requires T >= 100");
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("build_resonator: requires 0 < beta < 1");
    if (!std::isfinite(c)) throw ConfigError("build_resonator: c must be finite");

    FriableResonator R;
    R.T = T;
    R.beta = beta;
    R.c = c;
    R.B_lower = std::exp(c + 1.0);
    R.B_upper = (1.0 - beta) / std::log(4.0);
    if (!(R.B_lower < R.B_upper) || !(c < admissible_c(beta))) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "build_resonator: empty B-window, e^{c+1} = " << R.B_lower << " is not below (1-beta)/log 4 = "
            << R.B_upper << " (need c < " << admissible_c(beta) << ")";
        throw ConfigError(msg.str());
    }
    if (B) {
        if (!(*B > R.B_lower && *B < R.B_upper)) {
            std::ostringstream msg;
            msg << "build_resonator: B = " << *B << " outside (" << R.B_lower << ", " << R.B_upper << ")";
            throw ConfigError(msg.str());
        }
        R.B = *B;
    } else {
        R.B = 0.5 * (R.B_lower + R.B_upper);
    }
    const double lt = std::log(T);
    R.X = R.B * lt * std::log(lt);
    fill_primes(R, table);
    return R;
}

FriableResonator resonator_for_cutoff(double X, const PrimeTable& table) {
    if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("resonator_for_cutoff: requires X > 0");
    FriableResonator R;
    R.X = X;
    fill_primes(R, table);
    return R;
}

std::complex<double> resonator_eval(const FriableResonator& R, double t) {
    std::complex<long double> den = 1.0L;
    for (std::size_t i = 0; i < R.primes.size(); ++i) {
        const long double ph = static_cast<long double>(t) * R.log_p[i];
        const std::complex<long double> f(1.0L - R.ap[i] * std::cos(ph), -R.ap[i] * std::sin(ph));
        den *= f;
    }
    const std::complex<long double> r = 1.0L / den;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

double resonator_abs2(const FriableResonator& R, double t) {
    long double den = 1.0L;
    for (std::size_t i = 0; i < R.primes.size(); ++i) {
        const long double a = R.ap[i];
        const long double ph = static_cast<long double>(t) * R.log_p[i];
        den *= 1.0L - 2.0L * a * std::cos(ph) + a * a;
    }
    return static_cast<double>(1.0L / den);
}

LogSupReport resonator_log_sup(const FriableResonator& R) {
    CompensatedSum<long double> theta, r0;
    const long double lx = std::log(static_cast<long double>(R.X));
    for (std::size_t i = 0; i < R.primes.size(); ++i) {
        theta.add(R.log_p[i]);
        r0.add(lx - R.log_p[i]);
    }
    LogSupReport out{};
    out.value = static_cast<double>(static_cast<long double>(R.primes.size()) * lx - theta.value());
    out.log_r0 = static_cast<double>(r0.value());
    out.comparator = R.T > 0.0 ? R.B * std::log(R.T) : std::nan("");
    return out;
}

SumASquaredReport sum_a_squared(const FriableResonator& R) {
    CompensatedSum<long double> direct, theta, shifted;
    const long double x = R.X;
    for (std::size_t i = 0; i < R.primes.size(); ++i) {
        const long double a = R.ap[i];
        direct.add(-std::log1p(-a * a));
        theta.add(R.log_p[i]);
        shifted.add(std::log(2.0L * x - static_cast<long double>(R.primes[i])));
    }
    SumASquaredReport out{};
    out.direct = static_cast<double>(direct.value());
    out.expansion = static_cast<double>(2.0L * static_cast<long double>(R.primes.size()) * std::log(x) -
                                        theta.value() - shifted.value());
    out.comparator = (2.0 - 2.0 * std::numbers::ln2) * R.X / std::log(R.X);
    out.ratio = out.direct / out.comparator;
    return out;
}

GammaRatioReport gamma_ratio_bound(const FriableResonator& R) {
    if (!(R.X > std::numbers::e)) throw DomainError("gamma_ratio_bound: requires X > e");
    CompensatedSum<long double> value, mertens, corr;
    for (std::size_t i = 0; i < R.primes.size(); ++i) {
        const long double p = R.primes[i];
        const long double a = R.ap[i];
        value.add(-std::log1p(-a / p));
        mertens.add(-std::log1p(-1.0L / p));
        corr.add(std::log((p - 1.0L) / (p - a)));
    }
    GammaRatioReport out{};
    out.value = static_cast<double>(std::exp(value.value()));
    out.mertens_factor = static_cast<double>(std::exp(mertens.value()));
    out.correction_factor = static_cast<double>(std::exp(corr.value()));
    out.reference = exp_euler_gamma() * (std::log(R.X) - 1.0);
    return out;
}

std::string to_string(Moment m) {
    switch (m) {
        case Moment::M1: return "M1";
        case Moment::M2: return "M2";
        case Moment::I1: return "I1";
        case Moment::I2: return "I2";
    }
    return "?";
}

namespace {

// Bound on |d/dt arg| of the integrand, used to size the initial panels.
double oscillation_scale(const FriableResonator& R, bool with_zeta, double t_max) {
    double s = 0.0;
    for (std::size_t i = 0; i < R.primes.size(); ++i)
        s += 2.0 * R.ap[i] * static_cast<double>(R.log_p[i]) / (1.0 - R.ap[i]);
    if (with_zeta) s += std::log(std::max(10.0, 1.3 * t_max));
    return std::max(s, 1.0);
}

template <class V>
void require_converged(const QuadResult<V>& q, Moment which, double lo, double hi) {
    if (q.converged) return;
    std::ostringstream msg;
    msg << "weighted_moment(" << to_string(which) << "): quadrature on [" << lo << ", " << hi
        << "] stopped at error " << q.error << " after " << q.panels << " panels";
    throw PrecisionError(msg.str(), q.error, std::abs(std::complex<double>(q.value)));
}

}  // namespace

MomentResult weighted_moment(const FriableResonator& R, Moment which, const MomentOptions& opts,
                             const PrimeTable& table) {
    if (!(R.T >= 100.0) || !(R.beta > 0.0 && R.beta < 1.0))
        throw DomainError("weighted_moment: resonator lacks T/beta (use build_resonator)");
    const double T = R.T;
    const double L = std::log(T);
    const double lo = std::pow(T, R.beta);
    auto weight = [&](double t) {
        const double u = t * L / T;
        return resonator_abs2(R, t) * std::exp(-u * u);
    };

    MomentResult out;
    QuadratureConfig qc = opts.quad;

    const bool is_m = which == Moment::M1 || which == Moment::M2;
    double y = 0.0;
    double zeta_bound = 1.0;
    if (which == Moment::I2) {
        y = std::exp(std::pow(L, 1.0 / R.beta));
        if (y > static_cast<double>(table.limit())) {
            std::ostringstream msg;
            msg << "weighted_moment(I2): Euler product length Y = " << y << " exceeds the prime table ("
                << table.limit() << ")";
            throw TableTooSmall(msg.str(), y, static_cast<double>(table.limit()));
        }
        zeta_bound = std::abs(zeta_truncated({1.0, 0.0}, y, table));
    }

    if (is_m) {
        out.cutoff = T;
    } else {
        const auto sa = sum_a_squared(R);
        const double r0sq = std::exp(2.0 * resonator_log_sup(R).log_r0);
        const double scale = std::sqrt(std::numbers::pi) * (T / L) * std::exp(sa.direct);
        const double q = std::log(std::max(1.0, r0sq * zeta_bound / (1e-12 * scale)));
        const double a = std::max(1.0, std::sqrt(q));
        out.cutoff = (T / L) * a;
        out.tail_bound = 2.0 * zeta_bound * r0sq * (T / L) * 0.5 * std::sqrt(std::numbers::pi) * std::erfc(a);
    }
    const double a0 = is_m ? lo : 0.0;
    const double b0 = out.cutoff;
    const bool with_zeta = which == Moment::M2 || which == Moment::I2;
    qc.initial_width = qc.initial_width > 0.0
                           ? qc.initial_width
                           : std::clamp(std::numbers::pi / oscillation_scale(R, with_zeta, b0), 0.02, 2.0);

    auto integrand = [&](double t) -> std::complex<double> {
        const double w = weight(t);
        if (which == Moment::M2) return zeta({1.0, t}, opts.zeta) * w;
        return zeta_truncated({1.0, t}, y, table) * w;
    };

    if (!with_zeta) {
        if (opts.fold_symmetric) {
            const auto q = integrate(weight, a0, b0, qc);
            require_converged(q, which, a0, b0);
            out.value = 2.0 * q.value;
            out.error = 2.0 * q.error;
            out.evaluations = q.evaluations;
        } else if (is_m) {
            const auto qn = integrate(weight, -b0, -a0, qc);
            require_converged(qn, which, -b0, -a0);
            const auto qp = integrate(weight, a0, b0, qc);
            require_converged(qp, which, a0, b0);
            out.value = qn.value + qp.value;
            out.error = qn.error + qp.error;
            out.evaluations = qn.evaluations + qp.evaluations;
        } else {
            const auto q = integrate(weight, -b0, b0, qc);
            require_converged(q, which, -b0, b0);
            out.value = q.value;
            out.error = q.error;
            out.evaluations = q.evaluations;
        }
    } else {
        if (opts.fold_symmetric) {
            const auto q = integrate(integrand, a0, b0, qc);
            require_converged(q, which, a0, b0);
            out.value = q.value + std::conj(q.value);
            out.error = 2.0 * q.error;
            out.evaluations = q.evaluations;
        } else {
            const auto qn = integrate(integrand, -b0, -a0, qc);
            require_converged(qn, which, -b0, -a0);
            const auto qp = integrate(integrand, a0, b0, qc);
            require_converged(qp, which, a0, b0);
            out.value = qn.value + qp.value;
            out.error = qn.error + qp.error;
            out.evaluations = qn.evaluations + qp.evaluations;
        }
    }
    out.error += out.tail_bound;
    return out;
}

RunReport one_line_pipeline(double T, double beta, double c, const PrimeTable& table, const OneLineConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("one_line_pipeline: requires 0 < beta < 1");
    const FriableResonator R = build_resonator(T, beta, c, table, cfg.B);

    RunReport rep;
    rep.command = "resonance-1line";
    rep.version = version_string();
    auto& v = rep.values;
    v["T"] = T;
    v["beta"] = beta;
    v["c"] = c;
    v["B"] = R.B;
    v["B_window"] = {R.B_lower, R.B_upper};
    v["X"] = R.X;
    v["primes"] = R.primes;

    const auto m1 = weighted_moment(R, Moment::M1, cfg.moments, table);
    const auto m2 = weighted_moment(R, Moment::M2, cfg.moments, table);
    const auto i1 = weighted_moment(R, Moment::I1, cfg.moments, table);
    const double M1 = m1.value.real();
    const double ratio = std::abs(m2.value) / M1;
    const double eps_q = m2.error / M1 + std::abs(m2.value) * m1.error / (M1 * M1);
    v["M1"] = {{"value", M1}, {"error", m1.error}, {"evaluations", m1.evaluations}};
    v["M2"] = {{"re", m2.value.real()}, {"im", m2.value.imag()}, {"error", m2.error}, {"evaluations", m2.evaluations}};
    v["I1"] = {{"value", i1.value.real()}, {"error", i1.error}, {"cutoff", i1.cutoff}, {"tail_bound", i1.tail_bound}};
    v["eps_q"] = eps_q;

    const double lt = std::log(T);
    const double bound = exp_euler_gamma() * (std::log(lt) + std::log(std::log(lt)) + c);
    v["theorem_bound"] = bound;

    auto target = [&](double t) { return std::abs(zeta({1.0, t}, cfg.moments.zeta)); };
    auto weight = [&](double t) { return std::sqrt(resonator_abs2(R, t)); };
    const auto found = resonance_search(weight, target, std::pow(T, beta), T, cfg.search);
    const double zeta_slack = 1e-12 * found.max_value;
    v["search"] = {{"argmax", found.argmax},
                   {"max_abs_zeta", found.max_value},
                   {"seeds", found.seeds},
                   {"target_evaluations", found.target_evaluations}};

    rep.add(make_check("|M2|/M1 vs e^gamma(log2 T + log3 T + c)", ratio, bound, Relation::Informational));
    rep.add(make_check("max|zeta(1+it)| >= |M2|/M1 - eps_q", found.max_value, ratio, Relation::GreaterEqual,
                       eps_q + zeta_slack));
    rep.add(make_check("max|zeta(1+it)| >= sanity_factor * e^gamma log2 T", found.max_value,
                       cfg.sanity_factor * exp_euler_gamma() * std::log(lt), Relation::GreaterEqual));
    rep.add(make_check("M1 <= I1", M1, i1.value.real(), Relation::LessEqual, m1.error + i1.error));
    rep.add(make_check("M2 imaginary part", std::abs(m2.value.imag()), 0.0, Relation::LessEqual,
                       1e-8 * std::abs(m2.value) + m2.error));

    const auto sa = sum_a_squared(R);
    const double i1_floor = std::sqrt(std::numbers::pi) * (T / lt) * std::exp(sa.direct);
    rep.add(make_check("I1 vs sqrt(pi) (T/log T) sum a_n^2", i1.value.real(), i1_floor, Relation::Informational));
    v["sum_a_squared"] = {{"direct", sa.direct}, {"expansion", sa.expansion}, {"comparator", sa.comparator}};

    const auto ls = resonator_log_sup(R);
    rep.add(make_check("log R(0) = pi(X) log X - theta(X)", ls.log_r0, ls.value, Relation::Approx,
                       1e-12 * std::max(1.0, std::abs(ls.value))));
    const double exponent = R.B * std::log(4.0) - (1.0 - beta);
    rep.add(make_check("error exponent B log 4 - (1 - beta) < 0", exponent, 0.0, Relation::Informational));

    if (R.X > std::numbers::e) {
        const auto g = gamma_ratio_bound(R);
        v["gamma_ratio"] = {{"value", g.value}, {"reference", g.reference}};
        const double y = std::exp(std::pow(lt, 1.0 / beta));
        if (y <= static_cast<double>(table.limit())) {
            const auto i2 = weighted_moment(R, Moment::I2, cfg.moments, table);
            v["I2"] = {{"re", i2.value.real()}, {"im", i2.value.imag()}, {"error", i2.error}};
            rep.add(make_check("I2/I1 >= prod (1 - a_p/p)^{-1}", i2.value.real() / i1.value.real(), g.value,
                               Relation::GreaterEqual,
                               (i2.error + g.value * i1.error) / i1.value.real()));
        } else {
            v["I2"] = "unavailable: Y exceeds prime table";
        }
    }

    Series s{"resonance", {"t", "abs_R", "abs_zeta"}, {}};
    for (const auto& smp : found.samples) s.rows.push_back({smp.t, smp.weight, smp.target});
    rep.series.push_back(std::move(s));
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace zrl
