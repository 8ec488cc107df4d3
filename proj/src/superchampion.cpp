#include "landau/superchampion.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace landau {

namespace {

constexpr const char* kE2Header = "landau-e2";
constexpr int kE2Version = 1;

using u128 = unsigned __int128;

u128 ipow(std::uint64_t q, std::uint32_t j) {
    u128 v = 1;
    for (std::uint32_t i = 0; i < j; ++i) v *= q;
    return v;
}

Real to_real(u128 v) {
    auto hi = static_cast<std::uint64_t>(v >> 64), lo = static_cast<std::uint64_t>(v);
    return Real(hi) * Real(18446744073709551616.0) + Real(lo);
}

// Increase of ell when the exponent of q goes from j-1 to j.
std::int64_t step_cost(std::uint64_t q, std::uint32_t j) {
    return j == 1 ? static_cast<std::int64_t>(q) : ell_prime_power(q, j) - ell_prime_power(q, j - 1);
}

// Largest table index i with prime(i) >= 3 and prime(i) / log prime(i) < r.
std::size_t largest_prime_below_slope(const Real& r, const PrimeTable& primes) {
    double rd = static_cast<double>(r);
    double x = std::max(3.0, rd * std::log(rd));
    for (int it = 0; it < 100; ++it) {
        double nx = x - (x - rd * std::log(x)) / (1 - rd / x);
        if (std::abs(nx - x) < 1e-9 * x) break;
        x = std::max(nx, 2.8);
    }
    if (x + 1000 > static_cast<double>(primes.limit()))
        throw CapacityError("prime table up to " + std::to_string(primes.limit()) +
                            " is too short for slope " + to_string(r, 20));
    std::size_t i = std::max<std::size_t>(2, primes.pi(static_cast<std::uint64_t>(x)));
    while (i + 1 <= primes.size() && slope(primes.prime(i + 1), 1) < r) ++i;
    while (i > 2 && !(slope(primes.prime(i), 1) < r)) --i;
    return i;
}

// Root x > 1 (x >= e for j = 1) of slope(x, j) = rho.
Real solve_threshold(std::uint32_t j, const Real& rho) {
    auto h = [j](double x, double lr) {
        double v = j == 1 ? std::log(x) : std::log(x - 1) + (j - 1) * std::log(x);
        return v - std::log(std::log(x)) - lr;
    };
    double lr = std::log(static_cast<double>(rho));
    double lo = j == 1 ? std::exp(1.0) : 1 + 1e-12;
    double hi = j == 1 ? std::max(16.0, 2 * static_cast<double>(rho) * lr + 16) : static_cast<double>(rho) + 2;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        double mid = (lo + hi) / 2;
        (h(mid, lr) < 0 ? lo : hi) = mid;
    }
    Real x = (lo + hi) / 2;
    Real lrho = log(rho);
    for (int it = 0; it < 8; ++it) {
        Real lx = log(x);
        Real v = (j == 1 ? lx : log(x - 1) + Real(j - 1) * lx) - log(lx) - lrho;
        Real d = (j == 1 ? 1 / x : Real(j - 1) / x + 1 / (x - 1)) - 1 / (x * lx);
        Real step = v / d;
        x -= step;
        if (abs(step) <= Real(1e-33) * x) break;
    }
    return x;
}

}  // namespace

Real slope(std::uint64_t q, std::uint32_t j) {
    if (j == 0) throw std::invalid_argument("slope exponent must be positive");
    Real num = j == 1 ? Real(q) : to_real(ipow(q, j) - ipow(q, j - 1));
    return num / log_u64(q);
}

bool Rho::above(std::uint64_t p, std::uint32_t e) const {
    if (p == q && e == j) return false;
    return slope(p, e) < value;
}

std::vector<E2Entry> build_e2_table(std::int64_t ell_limit, const PrimeTable& primes) {
    if (ell_limit < 7) throw std::invalid_argument("ell limit must be at least 7");
    struct Item {
        Real r;
        std::uint64_t q;
        std::uint32_t j;
    };
    auto later = [](const Item& a, const Item& b) { return a.r > b.r; };
    std::vector<Item> heap{{slope(2, 2), 2, 2}};
    std::vector<E2Entry> table;
    // ell(N_r^+) = S(p) + sum of q^alpha - q over raised primes, which
    // telescopes to the sum of q^j - q^(j-1) over the popped elements
    std::int64_t extras = 0;
    for (;;) {
        std::pop_heap(heap.begin(), heap.end(), later);
        Item it = heap.back();
        heap.pop_back();
        heap.push_back({slope(it.q, it.j + 1), it.q, it.j + 1});
        std::push_heap(heap.begin(), heap.end(), later);
        if (it.j == 2) {
            std::uint64_t nq = primes.next_prime(it.q);
            heap.push_back({slope(nq, 2), nq, 2});
            std::push_heap(heap.begin(), heap.end(), later);
        }
        extras += step_cost(it.q, it.j);
        std::size_t idx = largest_prime_below_slope(it.r, primes);
        std::int64_t l = static_cast<std::int64_t>(primes.cumulative_sum(idx)) + extras;
        table.push_back({it.q, it.j, primes.prime(idx), l, it.r});
        if (l > ell_limit) break;
    }
    return table;
}

void save_e2_table(const std::vector<E2Entry>& table, std::int64_t ell_limit,
                   const std::filesystem::path& path) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << kE2Header << ' ' << kE2Version << ' ' << ell_limit << '\n';
        for (const auto& e : table) out << e.q << ' ' << e.j << ' ' << e.p << ' ' << e.l << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::vector<E2Entry> load_or_build_e2_table(std::int64_t ell_limit, const PrimeTable& primes,
                                            const std::filesystem::path& cache) {
    if (!cache.empty()) {
        std::ifstream in(cache);
        std::string header;
        int version = 0;
        std::int64_t cached_limit = 0;
        if (in >> header >> version >> cached_limit && header == kE2Header &&
            version == kE2Version && cached_limit >= ell_limit) {
            std::vector<E2Entry> table;
            E2Entry e{};
            while (in >> e.q >> e.j >> e.p >> e.l) {
                e.r = slope(e.q, e.j);
                table.push_back(e);
                if (e.l > ell_limit) break;
            }
            if (!table.empty() && table.back().l > ell_limit) return table;
        }
    }
    auto table = build_e2_table(ell_limit, primes);
    if (!cache.empty()) {
        try {
            save_e2_table(table, ell_limit, cache);
        } catch (const std::exception&) {
            // cache write failures are ignored
        }
    }
    return table;
}

std::vector<Real> xj_thresholds(const Real& rho) {
    if (rho < slope(5, 1)) throw std::invalid_argument("rho must be at least 5 / log 5");
    std::vector<Real> xs;
    for (std::uint32_t j = 1;; ++j) {
        Real x = solve_threshold(j, rho);
        if (x < 2) break;
        xs.push_back(x);
    }
    return xs;
}

PrimeFraction champion_factorization(std::span<const Real> xs, const PrimeTable& primes) {
    std::vector<PrimeFraction::Factor> fs;
    if (xs.empty()) return PrimeFraction();
    for (auto p : primes.primes()) {
        if (!(Real(p) < xs[0])) break;
        std::int32_t e = 0;
        while (static_cast<std::size_t>(e) < xs.size() && Real(p) < xs[e]) ++e;
        fs.push_back({p, e});
    }
    return PrimeFraction::from_factors(std::move(fs));
}

Real b1(const Real& x1, const Real& x2) { return std::min(x2 * x2 - 2 * x2, x1 / 2 - sqrt(x1)); }

std::uint32_t SuperchampionContext::alpha(std::uint64_t p) const {
    auto it = std::lower_bound(high_powers.begin(), high_powers.end(), p,
                               [](const PrimeFraction::Factor& f, std::uint64_t v) { return f.prime < v; });
    if (it != high_powers.end() && it->prime == p) return static_cast<std::uint32_t>(it->exponent);
    return p <= p_k ? 1 : 0;
}

PrimeFraction SuperchampionContext::N() const {
    std::vector<PrimeFraction::Factor> fs(high_powers.begin(), high_powers.end());
    for (std::size_t i = high_powers.size() + 1; i <= k; ++i) fs.push_back({primes->prime(i), 1});
    return PrimeFraction::from_factors(std::move(fs));
}

std::vector<PrimeRun> SuperchampionContext::N_runs() const {
    std::vector<PrimeRun> runs;
    for (const auto& f : high_powers) {
        auto e = static_cast<std::uint32_t>(f.exponent);
        if (!runs.empty() && runs.back().exponent == e)
            runs.back().last = f.prime;
        else
            runs.push_back({f.prime, f.prime, e});
    }
    if (high_powers.size() < k) runs.push_back({primes->prime(high_powers.size() + 1), p_k, 1});
    return runs;
}

std::string SuperchampionContext::N_brackets() const {
    auto runs = N_runs();
    return render_runs(runs);
}

Real SuperchampionContext::log_N() const {
    Real total = 0;
    for (const auto& f : high_powers) total += Real(f.exponent) * log_u64(f.prime);
    // Multiply primes in groups whose product stays exact in the 113-bit mantissa.
    const u128 cap = u128{1} << 112;
    u128 group = 1;
    for (std::size_t i = high_powers.size() + 1; i <= k; ++i) {
        std::uint64_t p = primes->prime(i);
        if (group > cap / p) {
            total += log(to_real(group));
            group = 1;
        }
        group *= p;
    }
    if (group > 1) total += log(to_real(group));
    return total;
}

SuperchampionContext find_context(std::uint64_t n, std::span<const E2Entry> table,
                                  const PrimeTable& primes) {
    if (n < 7) throw std::invalid_argument("superchampion context needs n >= 7");
    auto upper = std::upper_bound(table.begin(), table.end(), static_cast<std::int64_t>(n),
                                  [](std::int64_t v, const E2Entry& e) { return v < e.l; });
    if (upper == table.end() || upper == table.begin())
        throw CapacityError("superchampion table does not reach n = " + std::to_string(n));
    const E2Entry& base = *std::prev(upper);
    const E2Entry& next = *upper;

    SuperchampionContext ctx;
    ctx.n = n;
    ctx.primes = &primes;
    std::int64_t t = next.l - step_cost(next.q, next.j);
    if (t <= static_cast<std::int64_t>(n)) {
        ctx.rho = {next.r, next.q, next.j};
        ctx.k = primes.index_of(next.p);
        ctx.ellN = t;
        ctx.N_plus_ell = next.l;
    } else {
        // Inside the gap the superchampions gain one prime at a time.
        std::size_t i0 = primes.index_of(base.p);
        std::size_t lo = i0, hi = primes.index_of(next.p);
        auto cost = [&](std::size_t i) {
            return base.l + static_cast<std::int64_t>(primes.cumulative_sum(i) - primes.cumulative_sum(i0));
        };
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (cost(mid) <= static_cast<std::int64_t>(n))
                lo = mid;
            else
                hi = mid - 1;
        }
        ctx.k = lo;
        ctx.ellN = cost(lo);
        std::uint64_t p = primes.prime(lo + 1);
        ctx.N_plus_ell = ctx.ellN + static_cast<std::int64_t>(p);
        ctx.rho = {slope(p, 1), p, 1};
    }
    ctx.p_k = primes.prime(ctx.k);
    ctx.p_k1 = primes.prime(ctx.k + 1);

    std::int64_t check = static_cast<std::int64_t>(primes.cumulative_sum(ctx.k));
    for (std::size_t i = 1; i <= ctx.k; ++i) {
        std::uint64_t q = primes.prime(i);
        if (!ctx.rho.above(q, 2)) break;
        std::uint32_t e = 2;
        while (ctx.rho.above(q, e + 1)) ++e;
        ctx.high_powers.push_back({q, static_cast<std::int32_t>(e)});
        check += ell_prime_power(q, static_cast<std::int32_t>(e)) - static_cast<std::int64_t>(q);
    }
    if (check != ctx.ellN || ctx.ellN > static_cast<std::int64_t>(n) ||
        ctx.N_plus_ell <= static_cast<std::int64_t>(n))
        throw InvariantViolation("superchampion for n = " + std::to_string(n) +
                                 " is inconsistent: ell(N) = " + std::to_string(ctx.ellN) +
                                 " but the exponents give " + std::to_string(check));

    ctx.xs = xj_thresholds(ctx.rho.value);
    // the threshold defining rho is known exactly
    if (ctx.rho.j <= ctx.xs.size()) ctx.xs[ctx.rho.j - 1] = Real(ctx.rho.q);
    ctx.x1 = ctx.xs.at(0);
    ctx.x2 = ctx.xs.at(1);
    ctx.B1 = b1(ctx.x1, ctx.x2);
    return ctx;
}

ChampionWalk::ChampionWalk(const PrimeTable& primes) : primes_(primes) {
    heap_.push_back({slope(2, 1), 2, 1});
    heap_.push_back({slope(3, 1), 3, 1});
    auto later = [](const Item& a, const Item& b) { return a.r > b.r || (a.r == b.r && a.j > b.j); };
    std::make_heap(heap_.begin(), heap_.end(), later);
}

ChampionWalk::Step ChampionWalk::next() {
    auto later = [](const Item& a, const Item& b) { return a.r > b.r || (a.r == b.r && a.j > b.j); };
    std::pop_heap(heap_.begin(), heap_.end(), later);
    Item it = heap_.back();
    heap_.pop_back();
    heap_.push_back({slope(it.q, it.j + 1), it.q, it.j + 1});
    std::push_heap(heap_.begin(), heap_.end(), later);
    if (it.j == 1 && it.q >= 3) {
        std::uint64_t nq = primes_.next_prime(it.q);
        heap_.push_back({slope(nq, 1), nq, 1});
        std::push_heap(heap_.begin(), heap_.end(), later);
    }
    ell_ += step_cost(it.q, it.j);
    return {it.q, it.j, ell_};
}

}  // namespace landau
