#include "landau/assemble.hpp"

#include "landau/errors.hpp"
#include "landau/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace landau {

namespace {

bool below_sqrt_x1(const Real& v, const SuperchampionContext& ctx) { return v * v < ctx.x1; }

std::strong_ordering compare_fractions(const PrimeFraction& a, const PrimeFraction& b) { return cmp(a, b); }

}  // namespace

std::vector<NormalizedCandidate> normalized_candidates(const SuperchampionContext& ctx, const BoundResult& bound,
                                                       std::span<const PrefixCandidate> D) {
    if (!(bound.B < ctx.B1))
        throw BoundFailure("B = " + to_string(bound.B, 12) + " is not below B1 = " + to_string(ctx.B1, 12) +
                           " for n = " + std::to_string(ctx.n));
    const PrimeTable& primes = *ctx.primes;
    const std::size_t k = ctx.k;
    const auto n = static_cast<std::int64_t>(ctx.n);
    const Real scale = 1 - ctx.rho.value / bound.t1;
    const Real width = bound.B / scale;

    // S_w for w > 0 and w < 0.
    auto S = [&](std::int64_t w) -> std::int64_t {
        if (w >= 0) {
            if (k + static_cast<std::size_t>(w) > primes.size())
                throw CapacityError("prime table too short for normalized prefixes");
            return static_cast<std::int64_t>(primes.cumulative_sum(k + w) - primes.cumulative_sum(k));
        }
        return -static_cast<std::int64_t>(primes.cumulative_sum(k) - primes.cumulative_sum(k + w));
    };
    auto prime_at = [&](std::int64_t w) { return primes.prime(static_cast<std::size_t>(static_cast<std::int64_t>(k) + w)); };

    std::vector<NormalizedCandidate> out;
    for (const auto& d : D) {
        const std::int64_t room = n - ctx.ellN - d.dell;
        // Largest w with S_w <= room.
        std::int64_t w = 0;
        if (room >= 0) {
            std::int64_t hi = 1;
            while (S(hi) <= room) hi *= 2;
            std::int64_t lo = 0;
            while (hi - lo > 1) {
                std::int64_t mid = (lo + hi) / 2;
                (S(mid) <= room ? lo : hi) = mid;
            }
            w = lo;
        } else {
            w = -1;
            while (S(w) > room) {
                if (static_cast<std::int64_t>(k) + w <= 1) break;
                --w;
            }
            if (S(w) > room) continue;
        }
        // Walk down while S_w stays in the window and p_{k+w+1} >= t1.
        for (;; --w) {
            if (static_cast<std::int64_t>(k) + w < 1) break;
            const std::int64_t Sw = S(w);
            if (Real(Sw) < Real(room) - width) break;
            const std::uint64_t next = prime_at(w + 1);
            if (Real(next) < bound.t1) break;
            Real ben_Pi = d.ben;
            std::vector<PrimeFraction::Factor> fs(d.delta.factors().begin(), d.delta.factors().end());
            if (w > 0)
                for (std::int64_t i = 1; i <= w; ++i) {
                    ben_Pi += ben_prime(ctx, prime_at(i), 1);
                    fs.push_back({prime_at(i), 1});
                }
            else
                for (std::int64_t i = 0; i < -w; ++i) {
                    ben_Pi += ben_prime(ctx, prime_at(-i), -1);
                    fs.push_back({prime_at(-i), -1});
                }
            if (Real(Sw) < Real(room) - (bound.B - ben_Pi) / scale) continue;

            NormalizedCandidate c;
            c.plain = d;
            c.omega = static_cast<std::int32_t>(w);
            c.Pi = PrimeFraction::from_factors(std::move(fs));
            c.ben_Pi = ben_Pi;
            c.ell_NPi = ctx.ellN + d.dell + Sw;
            c.m_suffix = room - Sw;
            c.base_prime = prime_at(w);
            c.next_prime = next;
            if (below_sqrt_x1(Real(static_cast<std::int64_t>(next) - c.m_suffix), ctx) ||
                static_cast<std::int64_t>(next) <= c.m_suffix)
                throw PkOmegaViolation("n = " + std::to_string(ctx.n) + ", prefix " + render(c.Pi) + ": p_{k+w+1} - m = " +
                                       std::to_string(static_cast<std::int64_t>(next) - c.m_suffix) +
                                       " is below sqrt(x1) = " + to_string(sqrt(ctx.x1), 10));
            out.push_back(std::move(c));
        }
    }
    if (out.empty()) throw InvariantViolation("no possible normalized prefix for n = " + std::to_string(ctx.n));
    return out;
}

CandidateBounds candidate_bounds(const NormalizedCandidate& c, const PrimeTable& primes) {
    const std::uint64_t P = c.next_prime;
    const auto m = static_cast<std::uint64_t>(c.m_suffix);
    const PrimeFraction Pf = PrimeFraction::prime_power(P);
    const std::uint64_t q = primes.next_prime(P - m - 1);
    return {c.Pi * Pf / PrimeFraction::prime_power(q), c.Pi * Pf / PrimeFraction::from_integer(P - m)};
}

std::vector<NormalizedCandidate> fight(std::vector<NormalizedCandidate> cands, const PrimeTable& primes) {
    if (cands.size() <= 1) return cands;
    std::vector<CandidateBounds> b;
    for (const auto& c : cands) b.push_back(candidate_bounds(c, primes));
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (compare_fractions(b[i].lower, b[best].lower) > 0) best = i;
    std::vector<NormalizedCandidate> out;
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (!(compare_fractions(b[i].upper, b[best].lower) < 0)) out.push_back(std::move(cands[i]));
    return out;
}

Real LandauResult::log10_g() const { return log_g / log(Real(10)); }

PrimeFraction LandauResult::value() const { return context ? context->N() * correction : correction; }

namespace {

std::uint64_t largest_prime_factor(const LandauResult& r) {
    std::uint64_t best = 0;
    for (const auto& f : r.correction.factors())
        if (f.exponent > 0) best = std::max(best, f.prime);
    if (!r.context) return best;
    const auto& ctx = *r.context;
    for (std::size_t i = ctx.k; i >= 1; --i) {
        std::uint64_t p = ctx.primes->prime(i);
        if (p <= best) break;
        if (static_cast<std::int64_t>(ctx.alpha(p)) + r.correction.exponent(p) > 0) return p;
    }
    return best;
}

}  // namespace

void check_landau_bounds(const LandauResult& r) {
    auto fail = [&](const std::string& what) {
        throw InvariantViolation("g(" + std::to_string(r.n) + "): " + what);
    };
    if (r.ell_g > static_cast<std::int64_t>(r.n)) fail("ell(g) exceeds n");
    if (r.n < 4) return;
    const Real x = Real(r.n);
    const Real lx = log(x);
    const Real root = sqrt(x * lx);
    const Real slack = Real(1e-20) * root;
    if (r.n >= 906 && r.log_g < root - slack) fail("log g is below sqrt(n log n)");
    if (r.log_g > root * (1 + (log(lx) - Real(0.975)) / (2 * lx)) + slack) fail("log g is above the upper bound");
    if (r.n >= 5 && Real(largest_prime_factor(r)) > Real(1.328) * root) fail("largest prime factor above 1.328 sqrt(n log n)");
}

LandauResult compute_g(std::uint64_t n, const PrimeTable& primes, std::span<const E2Entry> e2, Delta1Table& delta1) {
    LandauResult res;
    res.n = n;
    SuperchampionContext ctx = find_context(n, e2, primes);
    auto loop = bound_loop(ctx);
    res.B = loop.bound.B;
    res.t1 = loop.bound.t1;
    res.prefixes = loop.prefixes.size();
    auto cands = normalized_candidates(ctx, loop.bound, loop.prefixes);
    res.candidates = cands.size();
    cands = fight(std::move(cands), primes);
    res.survivors = cands.size();

    // Evaluate from the greatest lower bound down, skipping hopeless candidates.
    std::vector<CandidateBounds> bounds;
    for (const auto& c : cands) bounds.push_back(candidate_bounds(c, primes));
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return compare_fractions(bounds[a].lower, bounds[b].lower) > 0;
    });

    std::optional<PrimeFraction> best;
    std::size_t best_index = 0;
    std::int64_t best_ell = 0;
    for (std::size_t i : order) {
        const auto& c = cands[i];
        if (best && compare_fractions(bounds[i].upper, *best) < 0) continue;
        GResult G = g_function(primes, delta1, c.base_prime, static_cast<std::uint64_t>(c.m_suffix));
        ++res.evaluated;
        res.algorithms.push_back(G.algorithm);
        PrimeFraction value = c.Pi * G.fraction.value();
        std::int64_t ell_value = c.ell_NPi + G.fraction.cost;
        if (ell_value > static_cast<std::int64_t>(n))
            throw InvariantViolation("candidate " + render(c.Pi) + " gives ell above n for n = " + std::to_string(n));
        if (best) {
            auto order_cmp = compare_fractions(value, *best);
            if (order_cmp == 0) throw InvariantViolation("two candidates give the same value for n = " + std::to_string(n));
            if (order_cmp < 0) continue;
        }
        best = value;
        best_index = i;
        best_ell = ell_value;
    }

    const auto& win = cands[best_index];
    if (win.ben_Pi > loop.bound.B + Real(1e-20) * std::max(Real(1), loop.bound.B))
        throw InvariantViolation("winning prefix has benefit above B for n = " + std::to_string(n));
    res.correction = *best;
    // Independent recomputation of ell(g) from the exponents.
    std::int64_t ell_check = ctx.ellN;
    for (const auto& f : res.correction.factors()) ell_check += dell_prime(ctx, f.prime, f.exponent);
    if (ell_check != best_ell)
        throw InvariantViolation("ell(g) mismatch for n = " + std::to_string(n) + ": " + std::to_string(ell_check) +
                                 " vs " + std::to_string(best_ell));
    res.ell_g = best_ell;
    res.log_g = ctx.log_N() + res.correction.log();
    res.context = std::move(ctx);
    check_landau_bounds(res);
    return res;
}

Engine::Engine(Config config) : config_(std::move(config)) { set_precision_digits(config_.precision_digits); }

Engine::~Engine() {
    if (delta1_) {
        try {
            delta1_->save();
        } catch (const std::exception&) {
            // cache write failures are ignored
        }
    }
}

void Engine::prepare(std::uint64_t n) {
    std::uint64_t want = config_.sieve_limit_override ? *config_.sieve_limit_override : PrimeTable::auto_limit(n);
    if (!primes_ || primes_->limit() < want) {
        if (delta1_) delta1_->save();
        delta1_.reset();
        e2_.clear();
        e2_limit_ = 0;
        primes_ = std::make_unique<PrimeTable>(
            config_.cache_dir.empty() ? PrimeTable::build(want)
                                      : PrimeTable::build_cached(want, config_.cache_dir / "primes.bin"));
        delta1_ = std::make_unique<Delta1Table>(
            *primes_, config_.cache_dir.empty() ? std::filesystem::path{} : config_.cache_dir / "delta1.txt");
    }
    if (e2_limit_ < static_cast<std::int64_t>(n)) {
        std::int64_t limit = std::max<std::int64_t>(static_cast<std::int64_t>(n), 1000);
        e2_ = config_.cache_dir.empty() ? build_e2_table(limit, *primes_)
                                        : load_or_build_e2_table(limit, *primes_, config_.cache_dir / "e2.txt");
        e2_limit_ = limit;
    }
}

SuperchampionContext Engine::context(std::uint64_t n) {
    prepare(n);
    return find_context(n, e2_, *primes_);
}

LandauResult Engine::compute_g(std::uint64_t n) {
    if (n < 7) {
        LandauResult r;
        r.n = n;
        r.correction = g_bruteforce(n);
        r.ell_g = r.correction.ell();
        r.log_g = r.correction.log();
        check_landau_bounds(r);
        return r;
    }
    prepare(n);
    return landau::compute_g(n, *primes_, e2_, *delta1_);
}

}  // namespace landau
