// run.cpp

#include "zrl/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "zrl/errors.hpp"
#include "zrl/gal_sums.hpp"
#include "zrl/primes.hpp"
#include "zrl/resonator.hpp"
#include "zrl/strip.hpp"
#include "zrl/zeta.hpp"

namespace zrl {

namespace {

enum class Kind { Number, Integer, Boolean, IntegerList, NumberList };

using Schema = std::map<std::string, Kind>;

const Schema kSearchKeys = {{"grid_step", Kind::Number},
                            {"peaks", Kind::Integer},
                            {"window", Kind::Number},
                            {"sample_step", Kind::Number},
                            {"refine_tol", Kind::Number}};

Schema with_search(Schema s) {
    for (const auto& [k, v] : kSearchKeys) s.emplace("search_" + k, v);
    return s;
}

const std::map<std::string, Schema>& schemas() {
    static const std::map<std::string, Schema> s = {
        {"sieve", {{"limit", Kind::Integer}, {"samples", Kind::Integer}}},
        {"verify-lemmas",
         {{"mertens_points", Kind::Integer},
          {"x_min", Kind::Number},
          {"x_max", Kind::Number},
          {"gcd_tuples", Kind::Integer}}},
        {"resonance-1line",
         with_search({{"T", Kind::Number},
                      {"beta", Kind::Number},
                      {"c", Kind::Number},
                      {"B", Kind::Number},
                      {"sanity_factor", Kind::Number},
                      {"prime_limit", Kind::Integer},
                      {"quad_rel_tol", Kind::Number},
                      {"quad_abs_tol", Kind::Number}})},
        {"gcd-construct",
         {{"sigma", Kind::Number},
          {"N", Kind::Number},
          {"alpha", Kind::Number},
          {"eta", Kind::Number},
          {"f", Kind::Number},
          {"lambda", Kind::Number},
          {"prime_limit", Kind::Integer},
          {"sift_max_primes", Kind::Integer},
          {"sift_max_v", Kind::Integer}}},
        {"gcd-bruteforce",
         {{"primes", Kind::IntegerList}, {"universe", Kind::IntegerList}, {"N", Kind::Integer}, {"sigma", Kind::Number}}},
        {"strip-search",
         with_search({{"T", Kind::Number},
                      {"beta", Kind::Number},
                      {"sigma", Kind::Number},
                      {"primes", Kind::IntegerList},
                      {"elements", Kind::IntegerList},
                      {"kernel_epsilon", Kind::Number},
                      {"rankin_epsilon", Kind::Number},
                      {"grid_step", Kind::Number},
                      {"compute_I2", Kind::Boolean},
                      {"enforce_asymptotic_range", Kind::Boolean}})},
        {"constants", {{"distribution_sigmas", Kind::NumberList}}},
    };
    return s;
}

bool matches(const json& v, Kind k) {
    switch (k) {
        case Kind::Number: return v.is_number();
        case Kind::Integer: return v.is_number_integer() || (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
        case Kind::Boolean: return v.is_boolean();
        case Kind::IntegerList:
            return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number_integer(); });
        case Kind::NumberList:
            return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); });
    }
    return false;
}

class Params {
public:
    explicit Params(const json& j) : j_(j) {}
    bool has(const std::string& k) const { return j_.contains(k); }
    double number(const std::string& k, std::optional<double> fallback = std::nullopt) const {
        if (j_.contains(k)) return j_.at(k).get<double>();
        if (!fallback) throw ConfigError("missing required parameter '" + k + "'");
        return *fallback;
    }
    std::int64_t integer(const std::string& k, std::optional<std::int64_t> fallback = std::nullopt) const {
        if (j_.contains(k)) return static_cast<std::int64_t>(j_.at(k).get<double>());
        if (!fallback) throw ConfigError("missing required parameter '" + k + "'");
        return *fallback;
    }
    bool boolean(const std::string& k, bool fallback) const { return j_.contains(k) ? j_.at(k).get<bool>() : fallback; }
    std::vector<std::int64_t> integers(const std::string& k) const {
        return j_.contains(k) ? j_.at(k).get<std::vector<std::int64_t>>() : std::vector<std::int64_t>{};
    }
    std::vector<double> numbers(const std::string& k) const {
        return j_.contains(k) ? j_.at(k).get<std::vector<double>>() : std::vector<double>{};
    }

private:
    const json& j_;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

PeakSearchConfig search_config(const Params& p) {
    PeakSearchConfig s;
    s.grid_step = p.number("search_grid_step", s.grid_step);
    s.peaks = static_cast<int>(p.integer("search_peaks", s.peaks));
    s.window = p.number("search_window", s.window);
    s.sample_step = p.number("search_sample_step", s.sample_step);
    s.refine_tol = p.number("search_refine_tol", s.refine_tol);
    validate(s);
    return s;
}

PrimeTable prime_table(std::uint64_t limit, const RunEnvironment& env) {
    require(limit >= 2 && limit <= kMaxSieveLimit, "prime_limit must lie in [2, 1e9]");
    return load_or_sieve(limit, env.prime_cache);
}

std::vector<SetElement> elements_from(const std::vector<std::int64_t>& values, const std::string& key) {
    std::vector<SetElement> out;
    out.reserve(values.size());
    for (auto v : values) {
        require(v >= 1, "'" + key + "' entries must be positive integers");
        out.push_back(SetElement::from_integer(static_cast<std::uint64_t>(v)));
    }
    return out;
}

std::vector<std::uint32_t> prime_list(const std::vector<std::int64_t>& values) {
    std::vector<std::uint32_t> out;
    for (auto v : values) {
        require(v >= 2 && v <= 0xffffffffLL, "'primes' entries must be primes below 2^32");
        const auto u = static_cast<std::uint32_t>(v);
        for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= u; ++d)
            require(u % d != 0, "'primes' entry " + std::to_string(u) + " is not prime");
        out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    require(std::adjacent_find(out.begin(), out.end()) == out.end(), "'primes' entries must be distinct");
    return out;
}

json integers_json(const std::vector<SetElement>& M) {
    json a = json::array();
    for (const auto& m : M) a.push_back(m.to_big().str());
    return a;
}

// --- commands -----------------------------------------------------------

RunReport cmd_constants(const Params& p) {
    RunReport rep;
    const auto rc = reference_constants();
    auto& v = rep.values;
    v["C0"] = rc.c0;
    v["C0_plus_1_minus_log2"] = rc.c0_plus_1_minus_log2;
    v["exp_gamma"] = rc.exp_gamma;
    const double c_half = admissible_c(0.5);
    const double c_zero = admissible_c(0.0);
    v["admissible_c"] = {{"beta_0", c_zero}, {"beta_half", c_half}};
    rep.add(make_check("admissible_c(1/2)", c_half, -2.0197814, Relation::Approx, 1e-6));
    rep.add(make_check("admissible_c(0)", c_zero, -1.32663426, Relation::Approx, 1e-6));
    rep.add(make_check("C0 + 1 - log 2", rc.c0 + 1.0 - std::numbers::ln2, rc.c0_plus_1_minus_log2, Relation::Approx,
                       1e-7));
    json lam = json::array();
    for (double s : p.numbers("distribution_sigmas")) {
        require(s > 0.5 && s < 1.0, "distribution_sigmas entries must lie in (1/2, 1)");
        const auto l = distribution_constant(s);
        lam.push_back({{"sigma", s}, {"value", l.value}, {"integral", l.integral}, {"error", l.error}});
    }
    v["distribution_constant"] = lam;
    return rep;
}

RunReport cmd_sieve(const Params& p, const RunEnvironment& env) {
    const auto limit = p.integer("limit", 1000000);
    const auto samples = p.integer("samples", 64);
    require(samples >= 2, "samples must be at least 2");
    const PrimeTable table = prime_table(static_cast<std::uint64_t>(limit), env);
    RunReport rep;
    auto& v = rep.values;
    const double x = static_cast<double>(limit);
    v["limit"] = limit;
    v["count"] = table.size();
    v["theta"] = static_cast<double>(table.theta(x));
    if (limit >= 1000000)
        rep.add(make_check("pi(10^6)", static_cast<double>(table.pi(1e6)), 78498.0, Relation::Approx, 0.0));
    if (limit > 1000) {
        const auto m = mertens_product(table, x);
        v["mertens"] = {{"value", static_cast<double>(m.value)}, {"lower", m.lower}, {"upper", m.upper}};
        rep.add(make_check("Mertens bracket at limit", m.inside ? 1.0 : 0.0, 1.0, Relation::Approx, 0.0));
    }
    const auto gap = chebyshev_gap(table, x);
    rep.add(make_check("(pi(x) log x - theta(x)) / (x / log x)", gap.ratio, 1.0, Relation::Informational));

    Series s{"pi", {"x", "pi", "theta"}, {}};
    const double lo = std::log(2.0), hi = std::log(x);
    for (std::int64_t i = 0; i < samples; ++i) {
        const double xi = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1));
        s.rows.push_back({xi, static_cast<double>(table.pi(xi)), static_cast<double>(table.theta(xi))});
    }
    rep.series.push_back(std::move(s));
    return rep;
}

RunReport cmd_verify_lemmas(const Params& p, std::uint64_t seed, const RunEnvironment& env) {
    const auto points = p.integer("mertens_points", 200);
    const double x_min = p.number("x_min", 1000.0);
    const double x_max = p.number("x_max", 1e6);
    const auto tuples = p.integer("gcd_tuples", 100000);
    require(points >= 1, "mertens_points must be positive");
    require(x_min >= 1000.0 && x_max > x_min, "requires 1000 <= x_min < x_max");
    require(tuples >= 0, "gcd_tuples must be nonnegative");
    const PrimeTable table = prime_table(static_cast<std::uint64_t>(std::ceil(x_max)), env);

    RunReport rep;
    Series s{"mertens", {"x", "product", "lower", "upper"}, {}};
    std::size_t inside = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    const double lo = std::log(x_min), hi = std::log(x_max);
    for (std::int64_t i = 1; i <= points; ++i) {
        const double x = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points));
        const auto m = mertens_product(table, std::min(x, x_max));
        if (m.inside) ++inside;
        const double val = static_cast<double>(m.value);
        min_margin = std::min(min_margin, std::min(val - m.lower, m.upper - val) / val);
        s.rows.push_back({x, val, m.lower, m.upper});
    }
    rep.values["mertens"] = {{"points", points}, {"inside", inside}, {"min_relative_margin", min_margin}};
    rep.add(make_check("Mertens product strictly inside bracket (count)", static_cast<double>(inside),
                       static_cast<double>(points), Relation::Approx, 0.0));
    rep.series.push_back(std::move(s));

    const auto ex = gcd_lcm_rational(2, 3, 4, 1, 6);
    rep.add(make_check("gcd/lcm example (2,3,4,1,6) gcd", static_cast<double>(ex.gcd), 4.0, Relation::Approx, 0.0));
    rep.add(make_check("gcd/lcm example (2,3,4,1,6) lcm", static_cast<double>(ex.lcm), 24.0, Relation::Approx, 0.0));

    std::mt19937_64 rng(seed);
    std::uint64_t failures = 0;
    for (std::int64_t i = 0; i < tuples; ++i) {
        const BigInt b = rng() % (1ULL << 20) + 1;
        const BigInt b2 = rng() % (1ULL << 20) + 1;
        const BigInt N = boost::multiprecision::lcm(b, b2) * BigInt(rng() % (1ULL << 20) + 1);
        auto coprime_to = [&rng](const BigInt& d) {
            BigInt a = BigInt(rng()) + 1;
            for (BigInt g = boost::multiprecision::gcd(a, d); g != 1; g = boost::multiprecision::gcd(a, d)) a /= g;
            return a;
        };
        const BigInt a = coprime_to(b);
        const BigInt a2 = coprime_to(b2);
        try {
            gcd_lcm_rational(a, b, a2, b2, N);
        } catch (const DomainError&) {
            throw;
        } catch (const Error&) {
            ++failures;
        }
    }
    rep.values["gcd_lcm"] = {{"tuples", tuples}, {"failures", failures}};
    rep.add(make_check("rational gcd/lcm closed forms on random tuples (failures)", static_cast<double>(failures), 0.0,
                       Relation::Approx, 0.0));
    return rep;
}

RunReport cmd_resonance(const Params& p, const RunEnvironment& env) {
    const double T = p.number("T");
    const double beta = p.number("beta", 0.5);
    const double c = p.number("c", -2.6);
    require(T >= 100.0 && std::isfinite(T), "T must be finite and >= 100");
    require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    OneLineConfig cfg;
    if (p.has("B")) cfg.B = p.number("B");
    cfg.sanity_factor = p.number("sanity_factor", cfg.sanity_factor);
    cfg.moments.quad.rel_tol = p.number("quad_rel_tol", cfg.moments.quad.rel_tol);
    cfg.moments.quad.abs_tol = p.number("quad_abs_tol", cfg.moments.quad.abs_tol);
    require(cfg.moments.quad.rel_tol > 0.0 && cfg.moments.quad.abs_tol >= 0.0, "quadrature tolerances must be positive");
    cfg.search = search_config(p);
    const PrimeTable table = prime_table(static_cast<std::uint64_t>(p.integer("prime_limit", 1000000)), env);
    return one_line_pipeline(T, beta, c, table, cfg);
}

json construction_json(const ConstructedSet& cs) {
    json blocks = json::array();
    for (const auto& b : cs.blocks) {
        json jb = {{"j", b.j},
                   {"lo", b.lo},
                   {"hi", b.hi},
                   {"primes", b.primes},
                   {"u_j", b.u},
                   {"v_j", b.v},
                   {"cardinality", b.cardinality.str()}};
        if (b.elements) jb["elements"] = integers_json(*b.elements);
        blocks.push_back(std::move(jb));
    }
    return {{"J", cs.J},
            {"cardinality", cs.cardinality.str()},
            {"explicit_elements", cs.explicit_elements},
            {"blocks", std::move(blocks)}};
}

RunReport cmd_construct(const Params& p, const RunEnvironment& env) {
    const double sigma = p.number("sigma");
    const double N = p.number("N");
    require(sigma > 0.5 && sigma < 1.0, "sigma must lie in (1/2, 1)");
    require(N > std::numbers::e && std::isfinite(N), "N must be finite and > e");
    ConstructionParams params;
    std::size_t evaluations = 0;
    const bool explicit_params = p.has("alpha") || p.has("eta") || p.has("f") || p.has("lambda");
    if (explicit_params) {
        params.alpha = p.number("alpha");
        params.eta = p.number("eta");
        params.f = p.number("f");
        params.lambda = p.number("lambda");
    } else {
        require(sigma <= 0.75, "optimized parameters need sigma <= 0.75; give alpha, eta, f, lambda explicitly");
        const auto opt = optimize_h(sigma);
        params = opt.params;
        evaluations = opt.evaluations;
    }
    params.N = N;
    params.sigma = sigma;
    const auto sift_p = p.integer("sift_max_primes", 10);
    const auto sift_v = p.integer("sift_max_v", 2);
    require(sift_p >= 0 && sift_p <= 14 && sift_v >= 0 && sift_v <= 3, "sift limits: primes <= 14, v <= 3");

    const PrimeTable table = prime_table(static_cast<std::uint64_t>(p.integer("prime_limit", 1000000)), env);
    const auto cs = build_construction(params, table, env.max_enumerate.value_or(100000));
    const auto h = h_functional(params, sigma);

    RunReport rep;
    auto& v = rep.values;
    v["params"] = {{"alpha", params.alpha}, {"eta", params.eta}, {"f", params.f},
                   {"lambda", params.lambda}, {"N", N}, {"sigma", sigma}};
    v["optimized"] = !explicit_params;
    v["optimizer_evaluations"] = evaluations;
    v["H"] = {{"value", h.value}, {"slack", h.slack}};
    v["gamma_lower_bound"] = gamma_lower_bound(N, sigma, h.value);
    v["construction"] = construction_json(cs);
    rep.add(make_check("constraint slack 1 - 2 alpha log f", h.slack, 0.0, Relation::GreaterEqual));

    json sift = json::array();
    for (const auto& b : cs.blocks) {
        const auto P = static_cast<long long>(b.primes.size());
        const auto card = block_cardinality(P, b.v);
        if (card.bound) {
            rep.add(make_check("block " + std::to_string(b.j) + " cardinality <= 4 C(P,v) C(P-v,v)",
                               static_cast<double>(card.exact), static_cast<double>(*card.bound),
                               Relation::LessEqual));
        }
        if (P <= sift_p && b.v <= sift_v && b.u <= b.v) {
            const auto sr = sift_chain_check(b.primes, b.u, b.v, sigma);
            sift.push_back({{"j", b.j},
                            {"direct", sr.direct},
                            {"factored", sr.factored},
                            {"totient_form", sr.totient_form},
                            {"totient_min_margin", sr.totient_min_margin},
                            {"restricted_weighted", sr.restricted_weighted},
                            {"restricted_unweighted", sr.restricted_unweighted},
                            {"block_constant", sr.block_constant},
                            {"factorial_cases", sr.factorial_cases},
                            {"factorial_min_ratio", sr.factorial_min_ratio}});
            rep.add(make_check("block " + std::to_string(b.j) + " sift chain", sr.all_ok() ? 1.0 : 0.0, 1.0,
                               Relation::Approx, 0.0));
        }
    }
    v["sift"] = sift;

    if (cs.explicit_elements) {
        const auto M = expand_product([&] {
            std::vector<std::vector<SetElement>> blocks;
            for (const auto& b : cs.blocks) blocks.push_back(*b.elements);
            return blocks;
        }());
        if (M.size() <= kMaxGalSumSize) {
            const double S = gal_sum(M, sigma);
            v["normalized_gal_sum"] = S / static_cast<double>(M.size());
            rep.add(make_check("S_sigma(M)/|M| vs gamma lower bound", S / static_cast<double>(M.size()),
                               gamma_lower_bound(N, sigma, h.value), Relation::Informational));
        }
    }
    return rep;
}

RunReport cmd_bruteforce(const Params& p) {
    const double sigma = p.number("sigma");
    const auto N = p.integer("N");
    require(sigma > 0.0 && sigma <= 1.0, "sigma must lie in (0, 1]");
    require(p.has("primes") != p.has("universe"), "give exactly one of 'primes' or 'universe'");
    std::vector<SetElement> U;
    if (p.has("primes")) {
        const auto primes = prime_list(p.integers("primes"));
        require(primes.size() <= 20, "'primes' may hold at most 20 primes");
        U = divisors_of_squarefree(primes);
    } else {
        U = elements_from(p.integers("universe"), "universe");
        auto sorted = U;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "'universe' entries must be distinct");
    }
    require(N >= 1 && static_cast<std::size_t>(N) <= U.size(), "N must lie in [1, |universe|]");

    const auto bf = brute_force_gamma(U, static_cast<int>(N), sigma);
    RunReport rep;
    auto& v = rep.values;
    v["universe_size"] = U.size();
    v["N"] = N;
    v["sigma"] = sigma;
    v["best"] = integers_json(bf.best);
    v["value"] = bf.value;
    v["subsets"] = bf.subsets;
    rep.add(make_check("S_sigma(best)/N >= 1", bf.value, 1.0, Relation::GreaterEqual, 1e-12));
    if (U.size() <= kMaxSpectralSize) {
        const auto sn = spectral_norm(U, sigma);
        v["spectral_norm"] = sn.value;
        rep.add(make_check("S_sigma(best)/N <= spectral norm of universe", bf.value, sn.value, Relation::LessEqual,
                           1e-9 * sn.value));
    }
    if (sigma == 0.5 && static_cast<double>(N) >= std::exp(std::numbers::e)) {
        const double ref = gamma_half_reference(static_cast<double>(N));
        v["gamma_half_reference"] = ref;
        rep.add(make_check("value vs exp(2 sqrt 2 sqrt(log N log3 N / log2 N))", bf.value, ref, Relation::Informational));
    }
    return rep;
}

RunReport cmd_strip(const Params& p) {
    const double T = p.number("T");
    const double beta = p.number("beta", 0.5);
    const double sigma = p.number("sigma");
    require(T >= 100.0 && std::isfinite(T), "T must be finite and >= 100");
    require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
    require(sigma > 0.5 && sigma < 1.0, "sigma must lie in (1/2, 1)");
    require(p.has("primes") != p.has("elements"), "give exactly one of 'primes' or 'elements'");
    std::vector<SetElement> M;
    if (p.has("primes")) {
        const auto primes = prime_list(p.integers("primes"));
        require(primes.size() <= 16, "'primes' may hold at most 16 primes");
        M = divisors_of_squarefree(primes);
    } else {
        M = elements_from(p.integers("elements"), "elements");
        auto sorted = M;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "'elements' entries must be distinct");
    }
    StripConfig cfg;
    cfg.kernel_epsilon = p.number("kernel_epsilon", cfg.kernel_epsilon);
    require(cfg.kernel_epsilon > 0.0 && cfg.kernel_epsilon < 1.0, "kernel_epsilon must lie in (0, 1)");
    if (p.has("rankin_epsilon")) {
        cfg.rankin_epsilon = p.number("rankin_epsilon");
        require(*cfg.rankin_epsilon > 0.0, "rankin_epsilon must be positive");
    }
    cfg.moments.grid_step = p.number("grid_step", cfg.moments.grid_step);
    require(cfg.moments.grid_step > 0.0, "grid_step must be positive");
    cfg.compute_I2 = p.boolean("compute_I2", cfg.compute_I2);
    cfg.enforce_asymptotic_range = p.boolean("enforce_asymptotic_range", cfg.enforce_asymptotic_range);
    cfg.search = search_config(p);
    auto rep = strip_pipeline(T, beta, sigma, M, cfg);
    rep.values["elements"] = integers_json(M);
    return rep;
}

}  // namespace

const std::vector<std::string>& run_commands() {
    static const std::vector<std::string> c = {"sieve",          "verify-lemmas", "resonance-1line", "gcd-construct",
                                               "gcd-bruteforce", "strip-search",  "constants"};
    return c;
}

RunConfig parse_run_config(const json& j) {
    require(j.is_object(), "config must be a JSON object");
    for (const auto& [k, _] : j.items())
        require(k == "command" || k == "parameters" || k == "seed" || k == "output_dir", "unknown config key '" + k + "'");
    RunConfig c;
    require(j.contains("command") && j.at("command").is_string(), "config requires a string 'command'");
    c.command = j.at("command").get<std::string>();
    const auto& sch = schemas();
    const auto it = sch.find(c.command);
    require(it != sch.end(), "unknown command '" + c.command + "'");
    if (j.contains("parameters")) {
        require(j.at("parameters").is_object(), "'parameters' must be an object");
        for (const auto& [k, v] : j.at("parameters").items()) {
            const auto kt = it->second.find(k);
            require(kt != it->second.end(), "unknown parameter '" + k + "' for command " + c.command);
            require(matches(v, kt->second), "parameter '" + k + "' has the wrong type");
        }
        c.parameters = j.at("parameters");
    }
    if (j.contains("seed")) {
        const auto& seed = j.at("seed");
        require(seed.is_number_unsigned() || (seed.is_number_integer() && seed.get<std::int64_t>() >= 0),
                "'seed' must be a nonnegative integer");
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output_dir")) {
        require(j.at("output_dir").is_string(), "'output_dir' must be a string");
        c.output_dir = j.at("output_dir").get<std::string>();
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_run_config(j);
}

json to_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"parameters", c.parameters}, {"seed", c.seed}};
    if (!c.output_dir.empty()) j["output_dir"] = c.output_dir.string();
    return j;
}

RunReport run(const RunConfig& config, const RunEnvironment& env) {
    const auto start = std::chrono::steady_clock::now();
    const Params p(config.parameters);
    RunReport rep;
    if (config.command == "constants") {
        rep = cmd_constants(p);
    } else if (config.command == "sieve") {
        rep = cmd_sieve(p, env);
    } else if (config.command == "verify-lemmas") {
        rep = cmd_verify_lemmas(p, config.seed, env);
    } else if (config.command == "resonance-1line") {
        rep = cmd_resonance(p, env);
    } else if (config.command == "gcd-construct") {
        rep = cmd_construct(p, env);
    } else if (config.command == "gcd-bruteforce") {
        rep = cmd_bruteforce(p);
    } else if (config.command == "strip-search") {
        rep = cmd_strip(p);
    } else {
        throw ConfigError("unknown command '" + config.command + "'");
    }
    rep.command = config.command;
    rep.config = to_json(config);
    rep.version = version_string();
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<std::filesystem::path> write_artifacts(const RunReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> out;
    auto write = [&](const std::filesystem::path& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw Error("cannot write " + path.string());
        f << text;
        out.push_back(path);
    };
    write(dir / "report.json", to_json(report).dump(2) + "\n");
    for (const auto& s : report.series) {
        if (s.rows.empty()) continue;
        write(dir / (s.name + ".csv"), emit_plot_data(report, s.name));
    }
    return out;
}

int exit_code(const RunReport& report) { return report.all_pass() ? 0 : 1; }

}  // namespace zrl
