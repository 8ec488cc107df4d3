#include "landau/oracle.hpp"

#include "landau/errors.hpp"
#include "landau/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace landau {

ChainArena::ChainArena() { nodes_.push_back({Real(0), 0, kRoot, 1, 0}); }

std::uint32_t ChainArena::extend(std::uint32_t parent, std::uint32_t prime, std::uint32_t exponent,
                                 const Real& power_log) {
    if (nodes_.size() >= std::numeric_limits<std::uint32_t>::max())
        throw CapacityError("factor chain arena full");
    const Node& p = nodes_[parent];
    Node n{p.log + power_log,
           p.ell + ell_prime_power(prime, static_cast<std::int32_t>(exponent)), parent, prime, exponent};
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

PrimeFraction ChainArena::value(std::uint32_t id) const {
    std::vector<PrimeFraction::Factor> fs;
    for (; id != kRoot; id = nodes_[id].parent)
        fs.push_back({nodes_[id].prime, static_cast<std::int32_t>(nodes_[id].exponent)});
    return PrimeFraction::from_factors(std::move(fs));
}

std::strong_ordering ChainArena::compare(std::uint32_t a, std::uint32_t b) const {
    if (a == b) return std::strong_ordering::equal;
    if (!within_guard(log(a), log(b)))
        return log(a) < log(b) ? std::strong_ordering::less : std::strong_ordering::greater;
    return cmp(value(a), value(b));
}

std::strong_ordering ChainArena::compare_scaled(std::uint32_t a, std::uint32_t prime,
                                                std::uint32_t exponent, const Real& power_log,
                                                std::uint32_t b) const {
    Real la = log(a) + power_log;
    if (!within_guard(la, log(b)))
        return la < log(b) ? std::strong_ordering::less : std::strong_ordering::greater;
    return cmp(value(a) * PrimeFraction::prime_power(prime, static_cast<std::int32_t>(exponent)),
               value(b));
}

PrimeFraction GTable::value(std::uint64_t n) const {
    if (n > limit()) throw std::out_of_range("g table covers n <= " + std::to_string(limit()));
    return arena_.value(ids_[n]);
}

const Real& GTable::log(std::uint64_t n) const {
    if (n > limit()) throw std::out_of_range("g table covers n <= " + std::to_string(limit()));
    return arena_.log(ids_[n]);
}

std::int64_t GTable::ell(std::uint64_t n) const {
    if (n > limit()) throw std::out_of_range("g table covers n <= " + std::to_string(limit()));
    return arena_.ell(ids_[n]);
}

std::size_t ChampionList::index_for(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("champion list covers n <= " + std::to_string(limit_));
    auto it = std::upper_bound(entries_.begin(), entries_.end(), static_cast<std::int64_t>(n),
                               [](std::int64_t v, const Entry& e) { return v < e.ell; });
    return static_cast<std::size_t>(it - entries_.begin()) - 1;
}

std::uint64_t oracle_prime_bound(std::uint64_t N) {
    double x = static_cast<double>(N);
    double bound = N >= 2 ? 1.328 * std::sqrt(x * std::log(x)) : 0.0;
    return std::max(static_cast<std::uint64_t>(bound), std::min<std::uint64_t>(N, 5));
}

namespace {

std::vector<std::uint32_t> primes_upto(std::uint64_t bound) {
    auto table = PrimeTable::build(std::max<std::uint64_t>(bound, 3));
    std::vector<std::uint32_t> out;
    for (auto p : table.primes())
        if (p <= bound) out.push_back(p);
    return out;
}

}  // namespace

GTable g_table_dp(std::uint64_t N) {
    if (N > kDpMaxN)
        throw CapacityError("dynamic programming oracle is limited to N <= " + std::to_string(kDpMaxN));
    GTable t;
    t.ids_.assign(N + 1, ChainArena::kRoot);
    for (std::uint32_t p : primes_upto(oracle_prime_bound(N))) {
        std::vector<Real> power_log{Real(0)};
        for (std::uint64_t q = p; q <= N; q *= p) power_log.push_back(power_log.back() + log_u64(p));
        for (std::uint64_t n = N; n >= p; --n) {
            std::uint64_t q = p;
            for (std::uint32_t k = 1; q <= n; ++k, q *= p) {
                std::uint32_t base = t.ids_[n - q];
                if (t.arena_.compare_scaled(base, p, k, power_log[k], t.ids_[n]) > 0)
                    t.ids_[n] = t.arena_.extend(base, p, k, power_log[k]);
            }
        }
    }
    return t;
}

ChampionList g_list_merge_prune(std::uint64_t N) {
    if (N > kListMaxN)
        throw CapacityError("list oracle is limited to N <= " + std::to_string(kListMaxN));
    ChampionList list;
    list.limit_ = N;
    list.entries_.push_back({ChainArena::kRoot, 0});
    auto& arena = list.arena_;

    struct Pick {
        std::uint32_t exponent;
        std::uint32_t index;
    };
    std::vector<Pick> merged;
    for (std::uint32_t p : primes_upto(oracle_prime_bound(N))) {
        const auto& cur = list.entries_;
        // Shifted copies: exponent a multiplies every value by p^a and adds p^a to its cost.
        std::vector<std::uint64_t> shift{0};
        std::vector<Real> shift_log{Real(0)};
        for (std::uint64_t q = p; q <= N; q *= p) {
            shift.push_back(q);
            shift_log.push_back(shift_log.back() + log_u64(p));
        }
        auto key = [&](const Pick& x) { return arena.log(cur[x.index].id) + shift_log[x.exponent]; };
        auto later = [&](const Pick& a, const Pick& b) {
            Real la = key(a), lb = key(b);
            if (!within_guard(la, lb)) return la > lb;
            auto va = arena.value(cur[a.index].id) *
                      PrimeFraction::prime_power(p, static_cast<std::int32_t>(a.exponent));
            auto vb = arena.value(cur[b.index].id) *
                      PrimeFraction::prime_power(p, static_cast<std::int32_t>(b.exponent));
            return cmp(va, vb) > 0;
        };
        std::priority_queue<Pick, std::vector<Pick>, decltype(later)> heap(later);
        for (std::uint32_t a = 0; a < shift.size(); ++a) heap.push({a, 0});
        merged.clear();
        while (!heap.empty()) {
            Pick x = heap.top();
            heap.pop();
            if (cur[x.index].ell + static_cast<std::int64_t>(shift[x.exponent]) <= static_cast<std::int64_t>(N))
                merged.push_back(x);
            if (x.index + 1 < cur.size()) heap.push({x.exponent, x.index + 1});
        }
        // Prune: walking down from the largest value, keep strictly cheaper entries only.
        std::vector<bool> keep(merged.size(), false);
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t i = merged.size(); i-- > 0;) {
            std::int64_t l = cur[merged[i].index].ell + static_cast<std::int64_t>(shift[merged[i].exponent]);
            if (l < best) {
                keep[i] = true;
                best = l;
            }
        }
        std::vector<ChampionList::Entry> next;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            if (!keep[i]) continue;
            const auto& e = cur[merged[i].index];
            std::uint32_t id = merged[i].exponent == 0
                                  ? e.id
                                  : arena.extend(e.id, p, merged[i].exponent, shift_log[merged[i].exponent]);
            next.push_back({id, e.ell + static_cast<std::int64_t>(shift[merged[i].exponent])});
        }
        list.entries_ = std::move(next);
    }
    return list;
}

namespace {

struct BruteSearch {
    std::vector<std::uint32_t> primes;
    unsigned __int128 best = 1;
    std::vector<std::uint32_t> best_exponents, exponents;

    void run(std::size_t i, std::uint64_t budget, unsigned __int128 value) {
        if (value > best) {
            best = value;
            best_exponents = exponents;
        }
        if (i == primes.size()) return;
        std::uint64_t p = primes[i];
        run(i + 1, budget, value);
        std::uint64_t q = p;
        for (std::uint32_t e = 1; q <= budget; ++e, q *= p) {
            exponents[i] = e;
            run(i + 1, budget - q, value * q);
        }
        exponents[i] = 0;
    }
};

}  // namespace

PrimeFraction g_bruteforce(std::uint64_t n) {
    if (n > kBruteForceMaxN)
        throw CapacityError("exhaustive search is limited to n <= " + std::to_string(kBruteForceMaxN));
    BruteSearch s;
    for (std::uint32_t p = 2; p <= n; ++p)
        if (is_prime_u64(p)) s.primes.push_back(p);
    s.exponents.assign(s.primes.size(), 0);
    s.best_exponents = s.exponents;
    s.run(0, n, 1);
    std::vector<PrimeFraction::Factor> fs;
    for (std::size_t i = 0; i < s.primes.size(); ++i)
        if (s.best_exponents[i]) fs.push_back({s.primes[i], static_cast<std::int32_t>(s.best_exponents[i])});
    return PrimeFraction::from_factors(std::move(fs));
}

}  // namespace landau
