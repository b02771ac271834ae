// primes.hpp
// Sieved prime table with pi(x) / theta(x) queries, the explicit Mertens
// product bracket, prime power sums over intervals and the on-disk cache.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "zrl/numeric.hpp"

namespace zrl {

inline constexpr std::uint64_t kMaxSieveLimit = 1'000'000'000ULL;

// Immutable after construction; safe to share between threads.
class PrimeTable {
public:
    // Build from an ascending list of all primes <= limit. Not validated
    // beyond ordering; use sieve_primes() or read_prime_cache().
    PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes);

    std::uint64_t limit() const { return limit_; }
    std::span<const std::uint32_t> primes() const { return primes_; }
    std::size_t size() const { return primes_.size(); }

    // Number of primes <= x (x clipped to the table).
    std::uint64_t pi(double x) const;
    // theta(x) = sum_{p <= x} log p, accumulated in ascending order.
    long double theta(double x) const;
    // Index one past the last prime <= x.
    std::size_t upper_index(double x) const;

    // Throws TableTooSmall when x exceeds the sieved range.
    void require(double x, const char* what) const;

private:
    static constexpr std::size_t kCheckpointStride = 64;

    std::uint64_t limit_;
    std::vector<std::uint32_t> primes_;
    // Compensated-sum state of theta after every kCheckpointStride primes.
    std::vector<CompensatedSum<long double>> theta_checkpoints_;
};

// Segmented sieve of Eratosthenes. 2 <= limit <= 1e9.
PrimeTable sieve_primes(std::uint64_t limit);

struct MertensReport {
    long double value;  // prod_{p<=x} (1 - 1/p)
    double lower;       // (e^gamma log x)^{-1} (1 - 1/(2 log^2 x))
    double upper;       // (e^gamma log x)^{-1} (1 + 1/(2 log^2 x))
    bool inside;        // strict: lower < value < upper
};

// Requires 1000 < x <= table.limit().
MertensReport mertens_product(const PrimeTable& table, double x);

struct ChebyshevGapReport {
    double gap;         // pi(x) log x - theta(x)
    double comparator;  // x / log x
    double ratio;
};

ChebyshevGapReport chebyshev_gap(const PrimeTable& table, double x);

struct PrimePowerSumReport {
    double value;  // sum_{lo < p <= hi} p^{-sigma}
    // x^{1-sigma} / ((1-sigma) log x) at each endpoint; empty when sigma == 1
    // or the endpoint is <= 1.
    std::optional<double> comparator_lo;
    std::optional<double> comparator_hi;
};

PrimePowerSumReport prime_power_sum(const PrimeTable& table, double lo, double hi, double sigma);

struct IntervalCountReport {
    double lo;
    double hi;
    std::uint64_t count;  // primes in (lo, hi]
    double comparator;    // (f - 1) f^j log N
};

// Primes in I_j = (f^j logN loglogN, f^{j+1} logN loglogN]. Requires f > 1.
IntervalCountReport interval_prime_count(const PrimeTable& table, int j, double f, double log_n,
                                         double loglog_n);

// Primes in (lo, hi].
std::uint64_t count_primes_in(const PrimeTable& table, double lo, double hi);

// Cache file: "ZRLPRIME", u32 version, u64 limit (little endian), then the
// prime gaps (first gap measured from 0) as unsigned LEB128 varints.
void write_prime_cache(const PrimeTable& table, const std::filesystem::path& path);
PrimeTable read_prime_cache(const std::filesystem::path& path);

// Reuse the cache when it covers `limit`, otherwise sieve (and write the
// cache when a path is given).
PrimeTable load_or_sieve(std::uint64_t limit, const std::optional<std::filesystem::path>& cache);

}  // namespace zrl
