// gal_sums.hpp
// GCD sums S_sigma(M) = sum_{m,n} (gcd(m,n)/lcm(m,n))^sigma over sets held
// as prime-exponent vectors, the GCD-matrix spectral norm, the blockwise
// multiplicative set construction and its cardinality/sifting checks, the
// H functional and exhaustive small-universe maximization.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zrl/primes.hpp"

namespace zrl {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
    std::uint32_t prime;
    std::uint32_t exponent;
    auto operator<=>(const PrimePower&) const = default;
};

// A positive integer as its factorization, primes ascending, exponents >= 1.
class SetElement {
public:
    SetElement() = default;
    // Validates ordering and exponents; throws DomainError.
    explicit SetElement(std::vector<PrimePower> factors);
    static SetElement from_integer(std::uint64_t n);

    const std::vector<PrimePower>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    long double log_value() const;
    BigInt to_big() const;
    std::uint32_t exponent_of(std::uint32_t p) const;
    std::size_t omega() const { return factors_.size(); }
    std::string to_string() const;

    // Lexicographic on the (prime, exponent) encoding.
    auto operator<=>(const SetElement&) const = default;

private:
    std::vector<PrimePower> factors_;
};

SetElement operator*(const SetElement& a, const SetElement& b);

// log(lcm(a,b) / gcd(a,b)) = sum_p |e_a(p) - e_b(p)| log p.
long double log_lcm_over_gcd(const SetElement& a, const SetElement& b);

struct GcdLcmPair {
    BigInt gcd;
    BigInt lcm;
};

// gcd and lcm of N a/b and N a2/b2. Computed directly and through the
// closed forms N gcd(a,a2)/lcm(b,b2), N lcm(a,a2)/gcd(b,b2); throws Error
// if they disagree, DomainError on a violated hypothesis.
GcdLcmPair gcd_lcm_rational(const BigInt& a, const BigInt& b, const BigInt& a2, const BigInt& b2,
                            const BigInt& N);

inline constexpr std::size_t kMaxGalSumSize = 100000;
inline constexpr std::size_t kMaxSpectralSize = 4096;

// Requires distinct elements, 0 < sigma <= 1, |M| <= 1e5.
double gal_sum(const std::vector<SetElement>& M, double sigma);

// prod_j S_sigma(M_j); blocks must be nonempty with pairwise disjoint
// prime supports.
double gal_sum_blocks(const std::vector<std::vector<SetElement>>& blocks, double sigma);
std::vector<SetElement> expand_product(const std::vector<std::vector<SetElement>>& blocks);

struct SpectralResult {
    double value;
    std::size_t iterations;
    double uniform_rayleigh;  // S_sigma(M) / |M|
};

SpectralResult spectral_norm(const std::vector<SetElement>& M, double sigma, double tol = 1e-12);

// d^{k} prod_{p | d} (1 - p^{-k}) with k = two_sigma.
double jordan_totient(const SetElement& d, double two_sigma);

struct ConstructionParams {
    double alpha = 0.0;
    double eta = 0.0;
    double f = 0.0;
    double lambda = 0.0;
    double N = 0.0;
    double sigma = 0.0;
};

struct ConstructedBlock {
    int j = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::uint32_t> primes;  // I_j
    long long u = 0;
    long long v = 0;
    BigInt cardinality;
    // Present when the whole construction fits the enumeration budget.
    std::optional<std::vector<SetElement>> elements;
};

struct ConstructedSet {
    ConstructionParams params;
    int J = 0;
    std::vector<ConstructedBlock> blocks;
    BigInt cardinality;  // product of block cardinalities
    bool explicit_elements = false;
};

ConstructedSet build_construction(const ConstructionParams& params, const PrimeTable& table,
                                  std::size_t max_enumerate = 100000);

// Elements N_j a / b of a block with omega(a), omega(b) <= v.
std::vector<SetElement> enumerate_block(const std::vector<std::uint32_t>& primes, long long v);

struct CardinalityReport {
    BigInt exact;
    std::optional<BigInt> bound;  // 4 C(P,v) C(P-v,v), only when P >= 2v
    bool within_bound = true;
};

CardinalityReport block_cardinality(long long P, long long v);
BigInt binomial(long long n, long long k);

struct SiftReport {
    double direct = 0.0;      // S_sigma(M_j) from exponent vectors
    double factored = 0.0;    // outer (a,a') / inner (b,b') decomposition
    bool identity_ok = false;
    double totient_form = 0.0;  // same sum rebuilt through the Jordan totient
    bool totient_identity_ok = false;
    double totient_min_margin = 0.0;  // min_d phi(d)/d^{2s} - prod_{p|N_j}(1 - p^{-2s})
    bool totient_bound_ok = false;
    double restricted_weighted = 0.0;    // restricted subfamily with totient weights
    double restricted_unweighted = 0.0;  // same family without them
    double block_constant = 0.0;         // prod_{p|N_j} (1 - p^{-2 sigma})
    bool restricted_ok = false;
    std::size_t factorial_cases = 0;
    std::size_t factorial_violations = 0;
    double factorial_min_ratio = 0.0;  // min inner / bound
    bool factorial_ok = false;
    bool all_ok() const { return identity_ok && totient_identity_ok && totient_bound_ok && restricted_ok && factorial_ok; }
};

// Exhaustive verification for one block. Requires P <= 14, v <= 3,
// u <= v; throws BudgetError when the enumeration would be too large.
SiftReport sift_chain_check(const std::vector<std::uint32_t>& primes, long long u, long long v, double sigma);

struct HReport {
    double value;
    double slack;  // 1 - 2 alpha log f
};

HReport h_functional(const ConstructionParams& params, double sigma);

struct OptimizeResult {
    ConstructionParams params;
    double H;
    double slack;
    std::size_t evaluations;
};

// Requires 1/2 < sigma <= 0.75. `budget` bounds coordinate-descent sweeps.
OptimizeResult optimize_h(double sigma, int budget = 60);

// exp(H sqrt|log(sigma - 1/2)| (log N)^{1-sigma} / (log log N)^sigma).
double gamma_lower_bound(double N, double sigma, double H);

struct BruteForceResult {
    std::vector<SetElement> best;
    double value;  // S_sigma(best) / N
    std::uint64_t subsets;
};

BruteForceResult brute_force_gamma(const std::vector<SetElement>& universe, int N, double sigma);

// exp(2 sqrt 2 sqrt(log N log_3 N / log_2 N)); requires N >= e^e.
double gamma_half_reference(double N);

// Divisors of a squarefree product of the given primes, as elements.
std::vector<SetElement> divisors_of_squarefree(const std::vector<std::uint32_t>& primes);

}  // namespace zrl
