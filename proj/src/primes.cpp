#include "landau/primes.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

namespace landau {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

constexpr char kMagic[8] = {'L', 'N', 'D', 'S', 'I', 'E', 'V', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 GapTable::max_gap_upto(u64 x) const {
    auto it = std::upper_bound(records_.begin(), records_.end(), x,
                               [](u64 v, const Record& r) { return v < r.prime; });
    if (it == records_.begin()) return 0;
    return std::prev(it)->gap;
}

u64 PrimeTable::auto_limit(u64 n) {
    double x = static_cast<double>(std::max<u64>(n, 3));
    return static_cast<u64>(2.7 * std::sqrt(x * std::log(x))) + 1'000'000;
}

PrimeTable PrimeTable::build(u64 limit, const SieveOptions& opts) {
    if (limit < 3) throw std::invalid_argument("sieve limit must be at least 3");
    if (limit > opts.max_limit)
        throw CapacityError("sieve limit " + std::to_string(limit) + " exceeds maximum " +
                            std::to_string(opts.max_limit));
    double estimate = 1.15 * static_cast<double>(limit) / std::log(static_cast<double>(limit)) + 16;
    if (estimate * 12 > static_cast<double>(opts.memory_budget_bytes))
        throw CapacityError("prime table up to " + std::to_string(limit) +
                            " exceeds the memory budget");

    PrimeTable t;
    t.limit_ = limit;
    t.primes_.reserve(static_cast<std::size_t>(estimate));
    t.primes_.push_back(2);

    // Base primes up to sqrt(limit), odd only.
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(limit)));
    while (root * root > limit) --root;
    while ((root + 1) * (root + 1) <= limit) ++root;
    std::vector<std::uint32_t> base;
    {
        std::vector<char> small(root + 1, 1);
        for (u64 i = 3; i * i <= root; i += 2)
            if (small[i])
                for (u64 j = i * i; j <= root; j += 2 * i) small[j] = 0;
        for (u64 i = 3; i <= root; i += 2)
            if (small[i]) base.push_back(static_cast<std::uint32_t>(i));
    }

    // Segment over odd numbers; byte k of a segment stands for lo + 2k.
    const std::size_t seg = opts.segment_size;
    std::vector<char> mark(seg);
    std::vector<u64> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) next[i] = u64{base[i]} * base[i];
    for (u64 lo = 3; lo <= limit; lo += 2 * seg) {
        u64 hi = std::min<u64>(limit, lo + 2 * seg - 1);  // inclusive
        std::size_t count = static_cast<std::size_t>((hi - lo) / 2 + 1);
        std::fill(mark.begin(), mark.begin() + count, 1);
        for (std::size_t i = 0; i < base.size(); ++i) {
            u64 p = base[i];
            u64 j = next[i];
            if (j > hi) continue;
            for (; j <= hi; j += 2 * p) mark[(j - lo) / 2] = 0;
            next[i] = j;
        }
        for (std::size_t k = 0; k < count; ++k)
            if (mark[k]) t.primes_.push_back(static_cast<std::uint32_t>(lo + 2 * k));
    }
    t.finish();
    return t;
}

void PrimeTable::finish() {
    cumsum_.assign(primes_.size() + 1, 0);
    std::vector<GapTable::Record> records;
    u64 best = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        u64 p = primes_[i];
        if (cumsum_[i] > std::numeric_limits<u64>::max() / 2 - p)
            throw CapacityError("cumulative prime sum overflow");
        cumsum_[i + 1] = cumsum_[i] + p;
        if (i > 0) {
            u64 gap = p - primes_[i - 1];
            if (gap > best) {
                best = gap;
                records.push_back({p, gap});
            }
        }
    }
    gaps_ = GapTable(std::move(records));
}

u64 PrimeTable::prime(std::size_t i) const {
    if (i == 0 || i > primes_.size())
        throw std::out_of_range("prime index " + std::to_string(i) + " outside table");
    return primes_[i - 1];
}

u64 PrimeTable::cumulative_sum(std::size_t i) const {
    if (i > primes_.size()) throw std::out_of_range("cumulative sum index outside table");
    return cumsum_[i];
}

u64 PrimeTable::sum_prime_range(std::size_t a, std::size_t b) const {
    if (a < 1 || a > b || b > primes_.size()) throw std::out_of_range("prime range outside table");
    return cumsum_[b] - cumsum_[a - 1];
}

std::size_t PrimeTable::pi(u64 x) const {
    if (x > limit_) throw std::out_of_range("pi(x) beyond sieve limit " + std::to_string(limit_));
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                    primes_.begin());
}

std::size_t PrimeTable::index_of(u64 p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p)
        throw std::out_of_range(std::to_string(p) + " is not a tabulated prime");
    return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

bool PrimeTable::is_prime(u64 x) const {
    if (x > limit_) throw std::out_of_range("primality query beyond sieve limit");
    return std::binary_search(primes_.begin(), primes_.end(), x);
}

u64 PrimeTable::next_prime(u64 x) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
    if (it == primes_.end())
        throw std::out_of_range("no tabulated prime above " + std::to_string(x));
    return *it;
}

u64 PrimeTable::prev_prime(u64 x) const {
    if (x < 3) throw std::out_of_range("no prime below " + std::to_string(x));
    if (x > limit_ + 1) throw std::out_of_range("prev_prime beyond sieve limit");
    auto it = std::lower_bound(primes_.begin(), primes_.end(), x);
    return *std::prev(it);
}

u64 PrimeTable::max_gap_upto(u64 x) const {
    if (x < 3 || x > limit_) throw std::out_of_range("max_gap_upto outside sieve range");
    return gaps_.max_gap_upto(x);
}

void PrimeTable::save(const std::filesystem::path& path) const {
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write sieve cache " + tmp.string());
        u64 count = primes_.size();
        out.write(kMagic, sizeof kMagic);
        out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof kCacheVersion);
        out.write(reinterpret_cast<const char*>(&limit_), sizeof limit_);
        out.write(reinterpret_cast<const char*>(&count), sizeof count);
        out.write(reinterpret_cast<const char*>(primes_.data()),
                  static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
    }
    std::filesystem::rename(tmp, path);
}

std::optional<PrimeTable> PrimeTable::load(const std::filesystem::path& path, u64 limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[8];
    std::uint32_t version = 0;
    u64 cached_limit = 0, count = 0;
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&cached_limit), sizeof cached_limit);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0 || version != kCacheVersion ||
        cached_limit < limit)
        return std::nullopt;
    PrimeTable t;
    t.limit_ = cached_limit;
    t.primes_.resize(count);
    in.read(reinterpret_cast<char*>(t.primes_.data()),
            static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
    if (!in || t.primes_.empty() || t.primes_.front() != 2) return std::nullopt;
    t.finish();
    return t;
}

PrimeTable PrimeTable::build_cached(u64 limit, const std::filesystem::path& cache,
                                    const SieveOptions& opts) {
    if (auto t = load(cache, limit)) return std::move(*t);
    PrimeTable t = build(limit, opts);
    try {
        t.save(cache);
    } catch (const std::exception&) {
        // cache write failures are ignored
    }
    return t;
}

}  // namespace landau
