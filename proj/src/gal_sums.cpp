// gal_sums.cpp

#include "zrl/gal_sums.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "zrl/errors.hpp"
#include "zrl/numeric.hpp"
#include "zrl/parallel.hpp"

namespace zrl {

SetElement::SetElement(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].prime < 2) throw DomainError("SetElement: prime below 2");
        if (factors_[i].exponent == 0) throw DomainError("SetElement: zero exponent stored");
        if (i && factors_[i - 1].prime >= factors_[i].prime)
            throw DomainError("SetElement: primes must be strictly ascending");
    }
}

SetElement SetElement::from_integer(std::uint64_t n) {
    if (n == 0) throw DomainError("SetElement: zero has no factorization");
    std::vector<PrimePower> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({static_cast<std::uint32_t>(p), e});
    }
    if (n > 1) {
        if (n > 0xffffffffULL) throw DomainError("SetElement: prime factor exceeds 32 bits");
        f.push_back({static_cast<std::uint32_t>(n), 1});
    }
    return SetElement(std::move(f));
}

long double SetElement::log_value() const {
    long double s = 0.0L;
    for (const auto& pp : factors_) s += pp.exponent * std::log(static_cast<long double>(pp.prime));
    return s;
}

BigInt SetElement::to_big() const {
    BigInt v = 1;
    for (const auto& pp : factors_)
        for (std::uint32_t e = 0; e < pp.exponent; ++e) v *= pp.prime;
    return v;
}

std::uint32_t SetElement::exponent_of(std::uint32_t p) const {
    const auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                                     [](const PrimePower& a, std::uint32_t q) { return a.prime < q; });
    return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
}

std::string SetElement::to_string() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) os << '*';
        os << factors_[i].prime;
        if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
    }
    return os.str();
}

SetElement operator*(const SetElement& a, const SetElement& b) {
    const auto& x = a.factors();
    const auto& y = b.factors();
    std::vector<PrimePower> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].prime < y[j].prime)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].prime < x[i].prime) {
            out.push_back(y[j++]);
        } else {
            out.push_back({x[i].prime, x[i].exponent + y[j].exponent});
            ++i;
            ++j;
        }
    }
    return SetElement(std::move(out));
}

long double log_lcm_over_gcd(const SetElement& a, const SetElement& b) {
    const auto& x = a.factors();
    const auto& y = b.factors();
    long double s = 0.0L;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].prime < y[j].prime)) {
            s += x[i].exponent * std::log(static_cast<long double>(x[i].prime));
            ++i;
        } else if (i == x.size() || y[j].prime < x[i].prime) {
            s += y[j].exponent * std::log(static_cast<long double>(y[j].prime));
            ++j;
        } else {
            const std::uint32_t d = x[i].exponent > y[j].exponent ? x[i].exponent - y[j].exponent
                                                                   : y[j].exponent - x[i].exponent;
            if (d) s += d * std::log(static_cast<long double>(x[i].prime));
            ++i;
            ++j;
        }
    }
    return s;
}

GcdLcmPair gcd_lcm_rational(const BigInt& a, const BigInt& b, const BigInt& a2, const BigInt& b2,
                            const BigInt& N) {
    if (a <= 0 || b <= 0 || a2 <= 0 || b2 <= 0 || N <= 0)
        throw DomainError("gcd_lcm_rational: arguments must be positive integers");
    if (boost::multiprecision::gcd(a, b) != 1) throw DomainError("gcd_lcm_rational: gcd(a, b) != 1");
    if (boost::multiprecision::gcd(a2, b2) != 1) throw DomainError("gcd_lcm_rational: gcd(a2, b2) != 1");
    if (N % b != 0) throw DomainError("gcd_lcm_rational: b does not divide N");
    if (N % b2 != 0) throw DomainError("gcd_lcm_rational: b2 does not divide N");

    const BigInt m1 = N / b * a;
    const BigInt m2 = N / b2 * a2;
    GcdLcmPair direct{boost::multiprecision::gcd(m1, m2), boost::multiprecision::lcm(m1, m2)};

    const BigInt lb = boost::multiprecision::lcm(b, b2);
    const BigInt gb = boost::multiprecision::gcd(b, b2);
    const BigInt g = N / lb * boost::multiprecision::gcd(a, a2);
    const BigInt la = boost::multiprecision::lcm(a, a2);
    if ((N * la) % gb != 0) throw Error("gcd_lcm_rational: closed-form lcm is not integral");
    const BigInt l = N * la / gb;
    if (g != direct.gcd || l != direct.lcm) throw Error("gcd_lcm_rational: closed forms disagree with direct values");
    return direct;
}

namespace {

struct Term {
    std::uint32_t prime;
    std::uint32_t exponent;
    double log_p;
};

std::vector<std::vector<Term>> prepare(const std::vector<SetElement>& M) {
    std::vector<std::vector<Term>> out(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (const auto& pp : M[i].factors())
            out[i].push_back({pp.prime, pp.exponent, std::log(static_cast<double>(pp.prime))});
    return out;
}

double distance(const std::vector<Term>& x, const std::vector<Term>& y) {
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].prime < y[j].prime)) {
            s += x[i].exponent * x[i].log_p;
            ++i;
        } else if (i == x.size() || y[j].prime < x[i].prime) {
            s += y[j].exponent * y[j].log_p;
            ++j;
        } else {
            const double d = static_cast<double>(x[i].exponent) - static_cast<double>(y[j].exponent);
            s += std::abs(d) * x[i].log_p;
            ++i;
            ++j;
        }
    }
    return s;
}

void require_distinct(const std::vector<SetElement>& M, const char* what) {
    std::vector<const SetElement*> sorted;
    sorted.reserve(M.size());
    for (const auto& m : M) sorted.push_back(&m);
    std::sort(sorted.begin(), sorted.end(), [](const auto* x, const auto* y) { return *x < *y; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (*sorted[i - 1] == *sorted[i])
            throw DomainError(std::string(what) + ": duplicate element " + sorted[i]->to_string());
}

void require_sigma(double sigma, const char* what) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError(std::string(what) + ": sigma must lie in (0, 1]");
}

}  // namespace

double gal_sum(const std::vector<SetElement>& M, double sigma) {
    require_sigma(sigma, "gal_sum");
    if (M.size() > kMaxGalSumSize) throw BudgetError("gal_sum: more than 1e5 elements");
    require_distinct(M, "gal_sum");
    const auto P = prepare(M);
    const std::size_t n = M.size();
    std::vector<double> rows(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        CompensatedSum<double> s;
        for (std::size_t j = i + 1; j < n; ++j) s.add(std::exp(-sigma * distance(P[i], P[j])));
        rows[i] = s.value();
    });
    CompensatedSum<double> total;
    for (const double r : rows) total.add(r);
    return static_cast<double>(n) + 2.0 * total.value();
}

namespace {

void require_disjoint_blocks(const std::vector<std::vector<SetElement>>& blocks) {
    std::vector<std::pair<std::uint32_t, std::size_t>> seen;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].empty()) throw DomainError("gal_sum_blocks: block " + std::to_string(j) + " is empty");
        std::vector<std::uint32_t> support;
        for (const auto& m : blocks[j])
            for (const auto& pp : m.factors()) support.push_back(pp.prime);
        std::sort(support.begin(), support.end());
        support.erase(std::unique(support.begin(), support.end()), support.end());
        for (const auto p : support) seen.emplace_back(p, j);
    }
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
        if (seen[i - 1].first == seen[i].first)
            throw DomainError("gal_sum_blocks: blocks " + std::to_string(seen[i - 1].second) + " and " +
                              std::to_string(seen[i].second) + " share the prime " +
                              std::to_string(seen[i].first));
}

}  // namespace

double gal_sum_blocks(const std::vector<std::vector<SetElement>>& blocks, double sigma) {
    require_sigma(sigma, "gal_sum_blocks");
    require_disjoint_blocks(blocks);
    double prod = 1.0;
    for (const auto& b : blocks) prod *= gal_sum(b, sigma);
    return prod;
}

std::vector<SetElement> expand_product(const std::vector<std::vector<SetElement>>& blocks) {
    require_disjoint_blocks(blocks);
    std::size_t total = 1;
    for (const auto& b : blocks) {
        if (total > kMaxGalSumSize / b.size()) throw BudgetError("expand_product: more than 1e5 elements");
        total *= b.size();
    }
    std::vector<SetElement> out{SetElement()};
    for (const auto& b : blocks) {
        std::vector<SetElement> next;
        next.reserve(out.size() * b.size());
        for (const auto& x : out)
            for (const auto& y : b) next.push_back(x * y);
        out = std::move(next);
    }
    return out;
}

SpectralResult spectral_norm(const std::vector<SetElement>& M, double sigma, double tol) {
    require_sigma(sigma, "spectral_norm");
    if (M.empty()) throw DomainError("spectral_norm: empty set");
    if (M.size() > kMaxSpectralSize) throw BudgetError("spectral_norm: more than 4096 elements");
    if (!(tol > 0.0)) throw ConfigError("spectral_norm: tol must be positive");
    require_distinct(M, "spectral_norm");
    const std::size_t n = M.size();
    const auto P = prepare(M);
    std::vector<double> K(n * n, 1.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) K[i * n + j] = std::exp(-sigma * distance(P[i], P[j]));
    });

    CompensatedSum<double> all;
    for (const double k : K) all.add(k);
    const double uniform = all.value() / static_cast<double>(n);

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
    double lambda = 0.0;
    constexpr std::size_t kMaxIterations = 100000;
    for (std::size_t it = 1; it <= kMaxIterations; ++it) {
        parallel_for(n, [&](std::size_t i) {
            double s = 0.0;
            const double* row = &K[i * n];
            for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
            y[i] = s;
        });
        double rq = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rq += x[i] * y[i];
            norm2 += y[i] * y[i];
        }
        const double norm = std::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        const bool done = it > 1 && std::abs(rq - lambda) <= tol * rq;
        lambda = rq;
        if (done || n == 1) return {lambda, it, uniform};
    }
    throw PrecisionError("spectral_norm: power iteration did not converge", 0.0, lambda);
}

double jordan_totient(const SetElement& d, double two_sigma) {
    double log_d = 0.0, prod = 1.0;
    for (const auto& pp : d.factors()) {
        const double lp = std::log(static_cast<double>(pp.prime));
        log_d += pp.exponent * lp;
        prod *= -std::expm1(-two_sigma * lp);
    }
    return std::exp(two_sigma * log_d) * prod;
}

BigInt binomial(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

CardinalityReport block_cardinality(long long P, long long v) {
    if (P < 0 || v < 0) throw DomainError("block_cardinality: P and v must be nonnegative");
    CardinalityReport r;
    r.exact = 0;
    const long long vmax = std::min(v, P);
    BigInt ck = 1;  // C(P, k)
    for (long long k = 0; k <= vmax; ++k) {
        const long long m = P - k;
        BigInt inner = 0, cl = 1;  // C(m, l)
        for (long long l = 0; l <= std::min(v, m); ++l) {
            inner += cl;
            cl = cl * (m - l) / (l + 1);
        }
        r.exact += ck * inner;
        ck = ck * (P - k) / (k + 1);
    }
    if (P >= 2 * v) {
        r.bound = 4 * binomial(P, v) * binomial(P - v, v);
        r.within_bound = r.exact <= *r.bound;
    }
    return r;
}

namespace {

void require_ascending_primes(const std::vector<std::uint32_t>& primes, const char* what) {
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] < 2) throw DomainError(std::string(what) + ": prime below 2");
        if (i && primes[i - 1] >= primes[i]) throw DomainError(std::string(what) + ": primes must be strictly ascending");
    }
}

}  // namespace

std::vector<SetElement> enumerate_block(const std::vector<std::uint32_t>& primes, long long v) {
    require_ascending_primes(primes, "enumerate_block");
    if (v < 0) throw DomainError("enumerate_block: v must be nonnegative");
    const auto card = block_cardinality(static_cast<long long>(primes.size()), v).exact;
    if (card > kMaxGalSumSize) throw BudgetError("enumerate_block: block exceeds 1e5 elements");
    std::vector<SetElement> out;
    out.reserve(static_cast<std::size_t>(card));
    std::vector<PrimePower> cur;
    std::function<void(std::size_t, long long, long long)> rec = [&](std::size_t i, long long na, long long nb) {
        if (i == primes.size()) {
            out.emplace_back(cur);
            return;
        }
        if (nb < v) rec(i + 1, na, nb + 1);  // p | b
        cur.push_back({primes[i], 1});
        rec(i + 1, na, nb);
        cur.back().exponent = 2;
        if (na < v) rec(i + 1, na + 1, nb);  // p | a
        cur.pop_back();
    };
    rec(0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

ConstructedSet build_construction(const ConstructionParams& p, const PrimeTable& table, std::size_t max_enumerate) {
    if (!(p.sigma > 0.5 && p.sigma < 1.0)) throw ConfigError("construction: sigma must lie in (1/2, 1)");
    if (!(p.alpha > 1.0)) throw ConfigError("construction: alpha must exceed 1");
    if (!(p.eta > 0.0)) throw ConfigError("construction: eta must be positive");
    if (!(p.f > 1.0 && p.f <= std::exp(1.0))) throw ConfigError("construction: f must lie in (1, e]");
    if (!(p.lambda > 0.0 && p.lambda < 1.0)) throw ConfigError("construction: lambda must lie in (0, 1)");
    if (!(p.N > std::exp(1.0))) throw ConfigError("construction: N must exceed e");
    if (2.0 * p.alpha * std::log(p.f) > 1.0) throw ConfigError("construction: 2 alpha log f must be <= 1");

    const double J_real = std::pow(p.sigma - 0.5, -p.lambda);
    const int J = static_cast<int>(std::floor(J_real));
    if (J < 2)
        throw DomainError("construction: J = floor((sigma - 1/2)^(-lambda)) = " + std::to_string(J) +
                          " makes log J vanish; choose sigma closer to 1/2 or lambda larger so that J >= 2");
    const double L = std::log(p.N);
    const double L2 = std::log(L);
    const double logJ = std::log(static_cast<double>(J));

    ConstructedSet out;
    out.params = p;
    out.J = J;
    out.cardinality = 1;
    BigInt total_elements = 0;
    for (int j = 1; j <= J; ++j) {
        ConstructedBlock b;
        b.j = j;
        b.lo = std::pow(p.f, j) * L * L2;
        b.hi = std::pow(p.f, j + 1) * L * L2;
        table.require(b.hi, "construction interval");
        const auto all = table.primes();
        for (std::size_t i = table.upper_index(b.lo); i < table.upper_index(b.hi); ++i) b.primes.push_back(all[i]);
        if (b.primes.empty())
            throw ConfigError("construction: prime interval for j = " + std::to_string(j) + " is empty");
        b.u = static_cast<long long>(std::floor(p.eta * std::pow(L, 1.0 - p.sigma) /
                                                (j * std::pow(p.f, j * (p.sigma - 0.5)) * std::sqrt(logJ) *
                                                 std::pow(L2, p.sigma))));
        b.v = static_cast<long long>(std::floor(p.alpha * L / (static_cast<double>(j) * j * logJ)));
        b.cardinality = block_cardinality(static_cast<long long>(b.primes.size()), b.v).exact;
        out.cardinality *= b.cardinality;
        total_elements += b.cardinality;
        out.blocks.push_back(std::move(b));
    }
    out.explicit_elements = total_elements <= max_enumerate;
    if (out.explicit_elements)
        for (auto& b : out.blocks) b.elements = enumerate_block(b.primes, b.v);
    return out;
}

namespace {

constexpr std::size_t kSiftMaxElements = 20000;

struct MaskTables {
    std::vector<double> w;    // prod p^{-sigma}
    std::vector<double> phi;  // prod (1 - p^{-2 sigma})
    // G[mask][k] = sum over B in the complement of mask, |B| <= k, of w(B).
    std::vector<std::array<double, 4>> G;
};

MaskTables mask_tables(const std::vector<std::uint32_t>& primes, double sigma) {
    const std::size_t P = primes.size();
    const std::size_t full = std::size_t{1} << P;
    MaskTables t;
    t.w.assign(full, 1.0);
    t.phi.assign(full, 1.0);
    t.G.assign(full, {});
    std::vector<double> x(P);
    for (std::size_t i = 0; i < P; ++i) x[i] = std::pow(static_cast<double>(primes[i]), -sigma);
    for (std::size_t m = 1; m < full; ++m) {
        const int i = std::countr_zero(m);
        const std::size_t rest = m & (m - 1);
        t.w[m] = t.w[rest] * x[i];
        t.phi[m] = t.phi[rest] * (1.0 - x[i] * x[i]);
    }
    for (std::size_t m = 0; m < full; ++m) {
        std::array<double, 4> e{1.0, 0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < P; ++i) {
            if (m >> i & 1) continue;
            for (int k = 3; k >= 1; --k) e[k] += e[k - 1] * x[i];
        }
        std::array<double, 4> cum{};
        double s = 0.0;
        for (int k = 0; k < 4; ++k) cum[k] = (s += e[k]);
        t.G[m] = cum;
    }
    return t;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

SiftReport sift_chain_check(const std::vector<std::uint32_t>& primes, long long u, long long v, double sigma) {
    require_ascending_primes(primes, "sift_chain_check");
    require_sigma(sigma, "sift_chain_check");
    if (u < 0 || v < 0) throw ConfigError("sift_chain_check: u and v must be nonnegative");
    if (u > v) throw ConfigError("sift_chain_check: u must not exceed v");
    const long long P = static_cast<long long>(primes.size());
    if (P > 14 || v > 3) throw BudgetError("sift_chain_check: block too large (needs P <= 14, v <= 3)");
    const auto card = block_cardinality(P, v).exact;
    if (card > kSiftMaxElements) throw BudgetError("sift_chain_check: block has more than 20000 elements");

    const auto t = mask_tables(primes, sigma);
    const std::size_t full = std::size_t{1} << P;
    std::vector<std::uint32_t> L;
    for (std::uint32_t m = 0; m < full; ++m)
        if (std::popcount(m) <= v) L.push_back(m);
    auto pc = [](std::uint32_t m) { return static_cast<long long>(std::popcount(m)); };

    SiftReport r;
    r.direct = gal_sum(enumerate_block(primes, v), sigma);

    {
        CompensatedSum<double> outer;
        for (const auto a : L) {
            for (const auto a2 : L) {
                CompensatedSum<double> inner;
                for (const auto b : L) {
                    if (b & a) continue;
                    for (const auto b2 : L)
                        if (!(b2 & a2)) inner.add(t.w[b ^ b2]);
                }
                outer.add(t.w[a ^ a2] * inner.value());
            }
        }
        r.factored = outer.value();
    }
    r.identity_ok = close_rel(r.factored, r.direct, 1e-10);

    {
        CompensatedSum<double> s;
        for (const auto c : L) {
            const long long rc = v - pc(c);
            for (const auto A : L) {
                if ((A & c) || pc(A) > rc) continue;
                for (const auto A2 : L) {
                    if ((A2 & c) || pc(A2) > rc) continue;
                    const std::uint32_t used = c | A | A2;
                    double acc = 0.0;
                    for (const auto d : L) {
                        if (d & used) continue;
                        const long long rd = v - pc(d);
                        acc += t.phi[d] * t.G[A | c | d][rd] * t.G[A2 | c | d][rd];
                    }
                    s.add(t.phi[c] * t.w[A] * t.w[A2] * acc);
                }
            }
        }
        r.totient_form = s.value();
    }
    r.totient_identity_ok = close_rel(r.totient_form, r.direct, 1e-10);

    r.block_constant = t.phi[full - 1];
    r.totient_min_margin = HUGE_VAL;
    for (std::size_t d = 0; d < full; ++d) r.totient_min_margin = std::min(r.totient_min_margin, t.phi[d] - r.block_constant);
    r.totient_bound_ok = r.totient_min_margin >= -1e-15;

    const long long rr = v - u;
    {
        CompensatedSum<double> weighted, unweighted;
        for (const auto c : L) {
            if (pc(c) != rr) continue;
            for (const auto A : L) {
                if ((A & c) || pc(A) != u) continue;
                for (const auto A2 : L) {
                    if ((A2 & c) || pc(A2) != u) continue;
                    const std::uint32_t used = c | A | A2;
                    for (const auto d : L) {
                        if ((d & used) || pc(d) != rr) continue;
                        const double core = t.w[A] * t.w[A2] * t.G[A | c | d][u] * t.G[A2 | c | d][u];
                        weighted.add(t.phi[c] * t.phi[d] * core);
                        unweighted.add(core);
                    }
                }
            }
        }
        r.restricted_weighted = weighted.value();
        r.restricted_unweighted = unweighted.value();
    }
    r.restricted_ok = r.restricted_weighted <= r.direct * (1.0 + 1e-12) &&
                      r.block_constant * r.block_constant * r.restricted_unweighted <=
                          r.restricted_weighted * (1.0 + 1e-12);

    double u_factorial = 1.0;
    for (long long k = 2; k <= u; ++k) u_factorial *= static_cast<double>(k);
    r.factorial_min_ratio = HUGE_VAL;
    for (const auto c : L) {
        if (pc(c) != rr) continue;
        for (const auto A2 : L) {
            if ((A2 & c) || pc(A2) != u) continue;
            for (const auto d : L) {
                if ((d & (c | A2)) || pc(d) != rr) continue;
                const std::uint32_t used = A2 | c | d;
                const double p1 = t.G[used][1] - 1.0;
                const double bound = std::pow(p1, static_cast<double>(u)) / u_factorial;
                const double inner = t.G[used][u];
                ++r.factorial_cases;
                if (bound > 0.0) r.factorial_min_ratio = std::min(r.factorial_min_ratio, inner / bound);
                if (inner < bound * (1.0 - 1e-12)) ++r.factorial_violations;
            }
        }
    }
    r.factorial_ok = r.factorial_violations == 0;
    return r;
}

HReport h_functional(const ConstructionParams& p, double sigma) {
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("h_functional: sigma must lie in (1/2, 1)");
    if (!(p.f > 1.0)) throw DomainError("h_functional: f must exceed 1");
    if (!(p.eta > 0.0) || !(p.alpha > 0.0)) throw DomainError("h_functional: alpha and eta must be positive");
    if (!(p.lambda > 0.0 && p.lambda <= 1.0)) throw DomainError("h_functional: lambda must lie in (0, 1]");
    const double fm1 = p.f - 1.0;
    const double log_f = std::log1p(fm1);
    const double num = std::exp(1.0) * std::sqrt(p.alpha) * std::expm1((1.0 - sigma) * log_f);
    const double arg = num / (p.eta * (1.0 - sigma) * std::sqrt(fm1));
    if (!(arg > 0.0) || !std::isfinite(arg)) throw DomainError("h_functional: logarithm argument is not positive");
    const double damp = std::exp(-log_f * std::pow(sigma - 0.5, 1.0 - p.lambda));
    return {4.0 * p.eta * std::sqrt(p.lambda) * damp * std::log(arg), 1.0 - 2.0 * p.alpha * log_f};
}

namespace {

struct HPoint {
    ConstructionParams params;
    double H;
    double slack;
};

// alpha on the budget boundary and the eta maximizing eta log(K / eta).
HPoint h_at(double sigma, double log_fm1, double log_1m_lambda) {
    ConstructionParams p;
    p.sigma = sigma;
    const double fm1 = std::exp(log_fm1);
    p.f = 1.0 + fm1;
    const double log_f = std::log1p(p.f - 1.0);
    p.alpha = (1.0 - 1e-12) / (2.0 * log_f);
    p.lambda = -std::expm1(log_1m_lambda);
    p.eta = std::sqrt(p.alpha) * std::expm1((1.0 - sigma) * log_f) / ((1.0 - sigma) * std::sqrt(p.f - 1.0));
    const auto h = h_functional(p, sigma);
    return {p, h.value, h.slack};
}

template <class F>
double golden_argmax(F&& f, double lo, double hi, int iters, std::size_t& evals) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = f(x1), f2 = f(x2);
    evals += 2;
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
        ++evals;
    }
    const double fa = f(lo), fb = f(hi);
    evals += 2;
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    ++evals;
    if (fa >= fm && fa >= fb) return lo;
    if (fb >= fm) return hi;
    return mid;
}

}  // namespace

OptimizeResult optimize_h(double sigma, int budget) {
    if (!(sigma > 0.5 && sigma <= 0.75)) throw ConfigError("optimize_h: sigma must lie in (1/2, 0.75]");
    if (budget <= 0) throw ConfigError("optimize_h: budget must be positive");
    // alpha > 1 together with 2 alpha log f <= 1 needs log f < 1/2.
    const double s_lo = std::log(1e-12), s_hi = std::log(std::expm1(0.5)) - 1e-6;
    const double r_lo = std::log(1e-12), r_hi = std::log1p(-1e-6);
    double s = std::log(1e-3), r = std::log(1e-3);
    std::size_t evals = 0;
    double best = h_at(sigma, s, r).H;
    ++evals;
    for (int sweep = 0; sweep < budget; ++sweep) {
        s = golden_argmax([&](double x) { return h_at(sigma, x, r).H; }, s_lo, s_hi, 80, evals);
        r = golden_argmax([&](double x) { return h_at(sigma, s, x).H; }, r_lo, r_hi, 80, evals);
        const double now = h_at(sigma, s, r).H;
        ++evals;
        const bool stalled = now - best <= 1e-15 * std::abs(now);
        best = std::max(best, now);
        if (stalled) break;
    }
    const auto pt = h_at(sigma, s, r);
    return {pt.params, pt.H, pt.slack, evals};
}

double gamma_lower_bound(double N, double sigma, double H) {
    if (!(N > std::exp(1.0))) throw DomainError("gamma_lower_bound: N must exceed e");
    if (!(sigma > 0.5 && sigma < 1.0)) throw DomainError("gamma_lower_bound: sigma must lie in (1/2, 1)");
    const double L = std::log(N);
    const double L2 = std::log(L);
    return std::exp(H * std::sqrt(std::abs(std::log(sigma - 0.5))) * std::pow(L, 1.0 - sigma) / std::pow(L2, sigma));
}

BruteForceResult brute_force_gamma(const std::vector<SetElement>& universe, int N, double sigma) {
    require_sigma(sigma, "brute_force_gamma");
    const std::size_t n = universe.size();
    if (N < 1 || static_cast<std::size_t>(N) > n) throw DomainError("brute_force_gamma: need 1 <= N <= |universe|");
    require_distinct(universe, "brute_force_gamma");
    if (binomial(static_cast<long long>(n), N) > 10000000)
        throw BudgetError("brute_force_gamma: more than 1e7 subsets");

    std::vector<SetElement> U = universe;
    std::sort(U.begin(), U.end());
    const auto P = prepare(U);
    std::vector<double> K(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) K[i * n + j] = K[j * n + i] = std::exp(-sigma * distance(P[i], P[j]));

    BruteForceResult res{{}, -HUGE_VAL, 0};
    std::vector<std::size_t> pick, best;
    std::function<void(std::size_t, double)> rec = [&](std::size_t start, double S) {
        if (pick.size() == static_cast<std::size_t>(N)) {
            ++res.subsets;
            if (S > res.value) {
                res.value = S;
                best = pick;
            }
            return;
        }
        const std::size_t need = N - pick.size();
        for (std::size_t i = start; i + need <= n; ++i) {
            double add = 1.0;
            for (const auto k : pick) add += 2.0 * K[i * n + k];
            pick.push_back(i);
            rec(i + 1, S + add);
            pick.pop_back();
        }
    };
    rec(0, 0.0);
    for (const auto i : best) res.best.push_back(U[i]);
    res.value /= N;
    return res;
}

double gamma_half_reference(double N) {
    if (!(N > 0.0)) throw DomainError("gamma_half_reference: N must be positive");
    const double L = std::log(N);
    const double L2 = L > 0.0 ? std::log(L) : -HUGE_VAL;
    if (!(L2 >= 1.0 - 1e-12)) throw DomainError("gamma_half_reference: requires N >= e^e");
    const double L3 = std::max(0.0, std::log(L2));
    return std::exp(2.0 * std::sqrt(2.0) * std::sqrt(L * L3 / L2));
}

std::vector<SetElement> divisors_of_squarefree(const std::vector<std::uint32_t>& primes) {
    require_ascending_primes(primes, "divisors_of_squarefree");
    if (primes.size() > 20) throw BudgetError("divisors_of_squarefree: more than 20 primes");
    std::vector<SetElement> out;
    for (std::size_t m = 0; m < (std::size_t{1} << primes.size()); ++m) {
        std::vector<PrimePower> f;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (m >> i & 1) f.push_back({primes[i], 1});
        out.emplace_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace zrl
