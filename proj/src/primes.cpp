// primes.cpp

#include "zrl/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "zrl/errors.hpp"

namespace zrl {

namespace {

constexpr std::array<char, 8> kCacheMagic = {'Z', 'R', 'L', 'P', 'R', 'I', 'M', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Largest integer <= x that the table can hold, clamped at 0.
std::uint64_t floor_to_u64(double x) {
    if (!(x >= 0.0)) return 0;
    if (x >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(std::floor(x));
}

template <class T>
void put_le(std::ostream& os, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        os.put(static_cast<char>(v & 0xFF));
        v = static_cast<T>(v >> 8);
    }
}

template <class T>
T get_le(std::istream& is) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        const int c = is.get();
        if (c == EOF) throw Error("prime cache: truncated header");
        v |= static_cast<T>(static_cast<T>(static_cast<unsigned char>(c)) << (8 * i));
    }
    return v;
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
    : limit_(limit), primes_(std::move(primes)) {
    theta_checkpoints_.reserve(primes_.size() / kCheckpointStride + 1);
    CompensatedSum<long double> acc;
    theta_checkpoints_.push_back(acc);
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        acc.add(std::log(static_cast<long double>(primes_[i])));
        if ((i + 1) % kCheckpointStride == 0) theta_checkpoints_.push_back(acc);
    }
}

std::size_t PrimeTable::upper_index(double x) const {
    const std::uint64_t n = floor_to_u64(x);
    if (n > std::numeric_limits<std::uint32_t>::max()) return primes_.size();
    return static_cast<std::size_t>(
        std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n)) -
        primes_.begin());
}

std::uint64_t PrimeTable::pi(double x) const { return upper_index(x); }

long double PrimeTable::theta(double x) const {
    const std::size_t k = upper_index(x);
    const std::size_t c = k / kCheckpointStride;
    CompensatedSum<long double> acc = theta_checkpoints_[c];
    for (std::size_t i = c * kCheckpointStride; i < k; ++i)
        acc.add(std::log(static_cast<long double>(primes_[i])));
    return acc.value();
}

void PrimeTable::require(double x, const char* what) const {
    if (x > static_cast<double>(limit_)) {
        std::ostringstream msg;
        msg << what << ": needs primes up to " << x << " but the table stops at " << limit_;
        throw TableTooSmall(msg.str(), x, static_cast<double>(limit_));
    }
}

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2 || limit > kMaxSieveLimit) {
        std::ostringstream msg;
        msg << "sieve limit " << limit << " outside [2, " << kMaxSieveLimit << "]";
        throw ConfigError(msg.str());
    }

    const std::uint64_t root = isqrt(limit);
    std::vector<char> small(root + 1, 1);
    small[0] = 0;
    if (root >= 1) small[1] = 0;
    for (std::uint64_t i = 2; i * i <= root; ++i)
        if (small[i])
            for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;

    std::vector<std::uint32_t> base;
    for (std::uint64_t i = 3; i <= root; i += 2)
        if (small[i]) base.push_back(static_cast<std::uint32_t>(i));

    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(1.26 * limit / std::log(static_cast<double>(limit) + 1.0)) + 16);
    primes.push_back(2);

    // Odd-only segments: byte i of a segment starting at odd `low` is low + 2i.
    constexpr std::uint64_t kSegmentOdds = 1u << 18;
    std::vector<char> seg(kSegmentOdds);
    for (std::uint64_t low = 3; low <= limit; low += 2 * kSegmentOdds) {
        const std::uint64_t high = std::min(limit, low + 2 * kSegmentOdds - 1);
        const std::uint64_t count = (high - low) / 2 + 1;
        std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(count), 1);
        for (const std::uint32_t p : base) {
            const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp > high) break;
            std::uint64_t start = std::max(pp, (low + p - 1) / p * p);
            if (start % 2 == 0) start += p;
            for (std::uint64_t m = start; m <= high; m += 2 * p) seg[(m - low) / 2] = 0;
        }
        for (std::uint64_t i = 0; i < count; ++i)
            if (seg[i]) primes.push_back(static_cast<std::uint32_t>(low + 2 * i));
    }
    return PrimeTable(limit, std::move(primes));
}

MertensReport mertens_product(const PrimeTable& table, double x) {
    if (!(x > 1000.0)) throw DomainError("mertens_product: requires x > 1000");
    table.require(x, "mertens_product");

    CompensatedSum<long double> acc;
    const auto primes = table.primes();
    const std::size_t k = table.upper_index(x);
    for (std::size_t i = 0; i < k; ++i)
        acc.add(std::log1p(-1.0L / static_cast<long double>(primes[i])));

    MertensReport r{};
    r.value = std::exp(acc.value());
    const double lx = std::log(x);
    const double base = 1.0 / (exp_euler_gamma() * lx);
    const double rel = 1.0 / (2.0 * lx * lx);
    r.lower = base * (1.0 - rel);
    r.upper = base * (1.0 + rel);
    r.inside = r.value > static_cast<long double>(r.lower) && r.value < static_cast<long double>(r.upper);
    return r;
}

ChebyshevGapReport chebyshev_gap(const PrimeTable& table, double x) {
    if (!(x >= 2.0)) throw DomainError("chebyshev_gap: requires x >= 2");
    table.require(x, "chebyshev_gap");
    const long double lx = std::log(static_cast<long double>(x));
    const long double gap = static_cast<long double>(table.pi(x)) * lx - table.theta(x);
    ChebyshevGapReport r{};
    r.gap = static_cast<double>(gap);
    r.comparator = x / std::log(x);
    r.ratio = r.gap / r.comparator;
    return r;
}

PrimePowerSumReport prime_power_sum(const PrimeTable& table, double lo, double hi, double sigma) {
    if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("prime_power_sum: requires 0 <= lo <= hi");
    if (!(sigma > 0.0) || sigma > 1.0) throw DomainError("prime_power_sum: requires 0 < sigma <= 1");
    table.require(hi, "prime_power_sum");

    const auto primes = table.primes();
    CompensatedSum<long double> acc;
    const long double s = sigma;
    for (std::size_t i = table.upper_index(lo); i < table.upper_index(hi); ++i)
        acc.add(std::exp(-s * std::log(static_cast<long double>(primes[i]))));

    PrimePowerSumReport r{};
    r.value = static_cast<double>(acc.value());
    auto comparator = [sigma](double x) -> std::optional<double> {
        if (sigma >= 1.0 || x <= 1.0) return std::nullopt;
        return std::pow(x, 1.0 - sigma) / ((1.0 - sigma) * std::log(x));
    };
    r.comparator_lo = comparator(lo);
    r.comparator_hi = comparator(hi);
    return r;
}

std::uint64_t count_primes_in(const PrimeTable& table, double lo, double hi) {
    if (hi <= lo) return 0;
    table.require(hi, "count_primes_in");
    return table.pi(hi) - table.pi(lo);
}

IntervalCountReport interval_prime_count(const PrimeTable& table, int j, double f, double log_n,
                                         double loglog_n) {
    if (!(f > 1.0)) throw DomainError("interval_prime_count: requires f > 1");
    if (!(log_n > 0.0) || !(loglog_n > 0.0))
        throw DomainError("interval_prime_count: requires log N > 0 and log log N > 0");
    const double scale = log_n * loglog_n;
    IntervalCountReport r{};
    r.lo = std::pow(f, j) * scale;
    r.hi = std::pow(f, j + 1) * scale;
    table.require(r.hi, "interval_prime_count");
    r.count = count_primes_in(table, r.lo, r.hi);
    r.comparator = (f - 1.0) * std::pow(f, j) * log_n;
    return r;
}

void write_prime_cache(const PrimeTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("prime cache: cannot open " + path.string() + " for writing");
    os.write(kCacheMagic.data(), kCacheMagic.size());
    put_le<std::uint32_t>(os, kCacheVersion);
    put_le<std::uint64_t>(os, table.limit());
    std::uint32_t prev = 0;
    for (const std::uint32_t p : table.primes()) {
        std::uint32_t gap = p - prev;
        prev = p;
        do {
            std::uint8_t byte = gap & 0x7F;
            gap >>= 7;
            if (gap) byte |= 0x80;
            os.put(static_cast<char>(byte));
        } while (gap);
    }
    if (!os) throw Error("prime cache: write failed for " + path.string());
}

PrimeTable read_prime_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("prime cache: cannot open " + path.string());
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kCacheMagic) throw Error("prime cache: bad magic in " + path.string());
    const auto version = get_le<std::uint32_t>(is);
    if (version != kCacheVersion) throw Error("prime cache: unsupported version " + std::to_string(version));
    const auto limit = get_le<std::uint64_t>(is);
    if (limit < 2 || limit > kMaxSieveLimit) throw Error("prime cache: limit out of range");

    std::vector<std::uint32_t> primes;
    std::uint64_t value = 0;
    std::uint32_t gap = 0;
    int shift = 0;
    for (int c = is.get(); c != EOF; c = is.get()) {
        const auto byte = static_cast<std::uint8_t>(c);
        if (shift > 28) throw Error("prime cache: malformed varint");
        gap |= static_cast<std::uint32_t>(byte & 0x7F) << shift;
        if (byte & 0x80) {
            shift += 7;
            continue;
        }
        value += gap;
        if (gap == 0 || value > limit) throw Error("prime cache: corrupt gap sequence");
        primes.push_back(static_cast<std::uint32_t>(value));
        gap = 0;
        shift = 0;
    }
    if (shift != 0) throw Error("prime cache: truncated varint");
    return PrimeTable(limit, std::move(primes));
}

PrimeTable load_or_sieve(std::uint64_t limit, const std::optional<std::filesystem::path>& cache) {
    if (cache && std::filesystem::exists(*cache)) {
        PrimeTable cached = read_prime_cache(*cache);
        if (cached.limit() == limit) return cached;
        if (cached.limit() > limit) {
            const auto ps = cached.primes();
            std::vector<std::uint32_t> head(ps.begin(), ps.begin() + static_cast<std::ptrdiff_t>(
                                                                      cached.upper_index(static_cast<double>(limit))));
            return PrimeTable(limit, std::move(head));
        }
    }
    PrimeTable table = sieve_primes(limit);
    if (cache) write_prime_cache(table, *cache);
    return table;
}

}  // namespace zrl
