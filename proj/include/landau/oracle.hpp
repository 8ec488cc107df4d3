#pragma once

#include "landau/arith.hpp"
#include "landau/real.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace landau {

// Append-only store of shared factor chains. A chain is a linked list of
// prime powers ending at the root (the value 1); many values share tails,
// which keeps the oracles' memory proportional to the number of updates.
class ChainArena {
public:
    static constexpr std::uint32_t kRoot = 0;

    ChainArena();

    // Value parent * prime^exponent; `prime` must not divide the parent.
    // `power_log` is exponent * log(prime).
    std::uint32_t extend(std::uint32_t parent, std::uint32_t prime, std::uint32_t exponent,
                         const Real& power_log);

    const Real& log(std::uint32_t id) const { return nodes_[id].log; }
    std::int64_t ell(std::uint32_t id) const { return nodes_[id].ell; }
    PrimeFraction value(std::uint32_t id) const;
    std::size_t size() const { return nodes_.size(); }

    // Compares two chains by logarithm with exact fallback.
    std::strong_ordering compare(std::uint32_t a, std::uint32_t b) const;
    // Compares chain a times prime^exponent with chain b.
    std::strong_ordering compare_scaled(std::uint32_t a, std::uint32_t prime, std::uint32_t exponent,
                                        const Real& power_log, std::uint32_t b) const;

private:
    struct Node {
        Real log;
        std::int64_t ell;
        std::uint32_t parent;
        std::uint32_t prime;
        std::uint32_t exponent;
    };
    std::vector<Node> nodes_;
};

// g(n) for every 0 <= n <= limit.
class GTable {
public:
    std::uint64_t limit() const { return ids_.size() - 1; }
    PrimeFraction value(std::uint64_t n) const;
    const Real& log(std::uint64_t n) const;
    std::int64_t ell(std::uint64_t n) const;

private:
    friend GTable g_table_dp(std::uint64_t);
    ChainArena arena_;
    std::vector<std::uint32_t> ids_;
};

// The pruned list [(M_1, l_1), (M_2, l_2), ...] with M and l strictly
// increasing; g(n) = M_i for l_i <= n < l_{i+1}.
class ChampionList {
public:
    struct Entry {
        std::uint32_t id;
        std::int64_t ell;
    };

    std::uint64_t limit() const { return limit_; }
    std::size_t size() const { return entries_.size(); }
    const Entry& entry(std::size_t i) const { return entries_[i]; }
    PrimeFraction value(std::size_t i) const { return arena_.value(entries_[i].id); }
    const Real& log(std::size_t i) const { return arena_.log(entries_[i].id); }

    // Index of the entry answering g(n), n <= limit().
    std::size_t index_for(std::uint64_t n) const;
    PrimeFraction query(std::uint64_t n) const { return value(index_for(n)); }

private:
    friend ChampionList g_list_merge_prune(std::uint64_t);
    std::uint64_t limit_ = 0;
    ChainArena arena_;
    std::vector<Entry> entries_;
};

// Largest prime that can divide g(n) for some n <= N:
// max(1.328 sqrt(N log N), min(N, 5)).
std::uint64_t oracle_prime_bound(std::uint64_t N);

// Limits refused with CapacityError.
inline constexpr std::uint64_t kDpMaxN = 2'000'000;
inline constexpr std::uint64_t kListMaxN = 20'000'000;
inline constexpr std::uint64_t kBruteForceMaxN = 64;

// Knapsack-style induction over the primes, one table slot per n.
GTable g_table_dp(std::uint64_t N);

// Merge the shifted copies of the list for each new prime, then drop every
// entry dominated by a larger value of no greater cost.
ChampionList g_list_merge_prune(std::uint64_t N);

// Exhaustive search over sets of prime powers; exact 128-bit products.
PrimeFraction g_bruteforce(std::uint64_t n);

}  // namespace landau
