#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace landau {

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

// Maximal prime gaps: each record is (p_j, p_j - p_{j-1}) where the gap
// is strictly larger than every earlier one.
class GapTable {
public:
    struct Record {
        std::uint64_t prime;
        std::uint64_t gap;
    };

    GapTable() = default;
    explicit GapTable(std::vector<Record> records) : records_(std::move(records)) {}

    // Delta(x) = max over p_j <= x of p_j - p_{j-1}.
    std::uint64_t max_gap_upto(std::uint64_t x) const;
    std::span<const Record> records() const { return records_; }

private:
    std::vector<Record> records_;
};

struct SieveOptions {
    // Primes are stored as 32-bit words, so the limit is bounded by 2^32.
    std::uint64_t max_limit = 4'000'000'000ULL;
    std::size_t memory_budget_bytes = std::size_t{3} << 30;
    std::size_t segment_size = std::size_t{1} << 20;
};

// Every prime up to `limit` with cumulative sums and the gap records.
// Immutable once built; safe to share between threads.
class PrimeTable {
public:
    // Throws CapacityError when the table would exceed opts' budget.
    static PrimeTable build(std::uint64_t limit, const SieveOptions& opts = {});

    // Loads a cached table when `cache` holds one covering `limit`,
    // otherwise sieves and writes the cache.
    static PrimeTable build_cached(std::uint64_t limit, const std::filesystem::path& cache,
                                   const SieveOptions& opts = {});

    // 2.7 sqrt(n log n) + 10^6.
    static std::uint64_t auto_limit(std::uint64_t n);

    std::uint64_t limit() const { return limit_; }
    std::size_t size() const { return primes_.size(); }

    // 1-based: prime(1) == 2.
    std::uint64_t prime(std::size_t i) const;
    std::span<const std::uint32_t> primes() const { return primes_; }

    // p_1 + ... + p_i; cumulative_sum(0) == 0.
    std::uint64_t cumulative_sum(std::size_t i) const;
    // p_a + ... + p_b, 1 <= a <= b <= size().
    std::uint64_t sum_prime_range(std::size_t a, std::size_t b) const;

    // Number of primes <= x (x may exceed the limit only if it is below it).
    std::size_t pi(std::uint64_t x) const;
    // Index i with prime(i) == p; throws if p is not a tabulated prime.
    std::size_t index_of(std::uint64_t p) const;
    bool is_prime(std::uint64_t x) const;

    std::uint64_t next_prime(std::uint64_t x) const;
    std::uint64_t prev_prime(std::uint64_t x) const;

    std::uint64_t max_gap_upto(std::uint64_t x) const;
    const GapTable& gaps() const { return gaps_; }

    void save(const std::filesystem::path& path) const;
    // nullopt when the file is missing, stale or does not cover `limit`.
    static std::optional<PrimeTable> load(const std::filesystem::path& path, std::uint64_t limit);

private:
    PrimeTable() = default;
    void finish();

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint64_t> cumsum_;  // cumsum_[i] = p_1 + ... + p_i
    GapTable gaps_;
};

}  // namespace landau
