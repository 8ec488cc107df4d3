#include "landau/benefit.hpp"

#include "landau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace landau {

namespace {

std::int64_t ell_pp(std::uint64_t p, std::int32_t e) { return e == 0 ? 0 : ell_prime_power(p, e); }

// ell(p^e) - ell(p^(e-1)) - rho log p, which vanishes for the element defining rho.
Real raise_term(const SuperchampionContext& ctx, std::uint64_t p, std::int32_t e, const Real& logp) {
    if (p == ctx.rho.q && static_cast<std::uint32_t>(e) == ctx.rho.j) return Real(0);
    return Real(ell_pp(p, e) - ell_pp(p, e - 1)) - ctx.rho.value * logp;
}

bool below_sqrt_x1(std::uint64_t p, const SuperchampionContext& ctx) {
    return Real(p) * Real(p) < ctx.x1;
}

Real budget_slack(const Real& b) { return b + Real(1e-24) * std::max(Real(1), abs(b)); }

}  // namespace

Real ben_prime(const SuperchampionContext& ctx, std::uint64_t p, std::int32_t gamma) {
    auto alpha = static_cast<std::int32_t>(ctx.alpha(p));
    if (gamma < -alpha)
        throw std::invalid_argument("exponent of " + std::to_string(p) + " below -v_p(N)");
    Real logp = log_u64(p);
    Real total = 0;
    if (gamma > 0)
        for (std::int32_t e = alpha + 1; e <= alpha + gamma; ++e) total += raise_term(ctx, p, e, logp);
    else
        for (std::int32_t e = alpha + gamma + 1; e <= alpha; ++e) total -= raise_term(ctx, p, e, logp);
    return total;
}

std::int64_t dell_prime(const SuperchampionContext& ctx, std::uint64_t p, std::int32_t gamma) {
    auto alpha = static_cast<std::int32_t>(ctx.alpha(p));
    if (gamma < -alpha)
        throw std::invalid_argument("exponent of " + std::to_string(p) + " below -v_p(N)");
    return ell_pp(p, alpha + gamma) - ell_pp(p, alpha);
}

Real ben(const PrimeFraction& delta, const SuperchampionContext& ctx) {
    Real total = 0;
    for (const auto& f : delta.factors()) total += ben_prime(ctx, f.prime, f.exponent);
    return total;
}

PrimeFraction plain_prefix(const PrimeFraction& delta, const SuperchampionContext& ctx) {
    std::vector<PrimeFraction::Factor> fs;
    for (const auto& f : delta.factors())
        if (below_sqrt_x1(f.prime, ctx)) fs.push_back(f);
    return PrimeFraction::from_factors(std::move(fs));
}

namespace {

// Prefixes share their lower primes, so they are kept as chains until the end.
struct PrefixArena {
    struct Node {
        std::uint32_t parent;
        std::uint32_t prime;
        std::int32_t exponent;
    };
    std::vector<Node> nodes{{0, 1, 0}};

    std::uint32_t extend(std::uint32_t parent, std::uint64_t p, std::int32_t e) {
        nodes.push_back({parent, static_cast<std::uint32_t>(p), e});
        return static_cast<std::uint32_t>(nodes.size() - 1);
    }
    PrimeFraction value(std::uint32_t id) const {
        std::vector<PrimeFraction::Factor> fs;
        for (; id != 0; id = nodes[id].parent) fs.push_back({nodes[id].prime, nodes[id].exponent});
        return PrimeFraction::from_factors(std::move(fs));
    }
};

struct Item {
    std::uint32_t id;
    Real log;
    Real ben;
    std::int64_t dell;
};

struct Shift {
    std::int32_t gamma;
    Real ben;
    std::int64_t dell;
    Real log;
};

}  // namespace

std::vector<PrefixCandidate> build_prefix_sets(const SuperchampionContext& ctx, const Real& B_prime) {
    if (B_prime < 0) throw std::invalid_argument("benefit budget must be non-negative");
    if (!(B_prime < ctx.B1))
        throw BoundFailure("benefit budget " + to_string(B_prime, 12) + " is not below B1 = " +
                           to_string(ctx.B1, 12));
    const Real limit = budget_slack(B_prime);
    const PrimeTable& primes = *ctx.primes;

    PrefixArena arena;
    std::vector<Item> D{{0, Real(0), Real(0), 0}};
    std::vector<Item> U;
    std::vector<Shift> shifts;

    for (std::size_t i = 1; i <= primes.size(); ++i) {
        std::uint64_t p = primes.prime(i);
        if (!below_sqrt_x1(p, ctx)) break;
        auto alpha = static_cast<std::int32_t>(ctx.alpha(p));
        Real logp = log_u64(p);

        // The admissible exponents form an interval around 0.
        shifts.clear();
        for (std::int32_t g = -1; g >= -alpha; --g) {
            Real b = ben_prime(ctx, p, g);
            if (b > limit) break;
            shifts.push_back({g, b, dell_prime(ctx, p, g), Real(g) * logp});
        }
        std::reverse(shifts.begin(), shifts.end());
        shifts.push_back({0, Real(0), 0, Real(0)});
        for (std::int32_t g = 1;; ++g) {
            Real b = ben_prime(ctx, p, g);
            if (b > limit) break;
            shifts.push_back({g, b, dell_prime(ctx, p, g), Real(g) * logp});
        }
        if (shifts.size() == 1) continue;

        // Each shift keeps D's order, so U is a k-way merge of shifted copies.
        struct Cursor {
            std::size_t shift;
            std::size_t index;
        };
        auto key = [&](const Cursor& c) { return D[c.index].log + shifts[c.shift].log; };
        auto admissible = [&](std::size_t s, std::size_t idx) {
            return D[idx].ben + shifts[s].ben <= limit;
        };
        auto advance = [&](Cursor c) {
            while (c.index < D.size() && !admissible(c.shift, c.index)) ++c.index;
            return c;
        };
        auto later = [&](const Cursor& a, const Cursor& b) {
            Real la = key(a), lb = key(b);
            if (!within_guard(la, lb)) return la > lb;
            auto va = arena.value(D[a.index].id) * PrimeFraction::prime_power(p, shifts[a.shift].gamma);
            auto vb = arena.value(D[b.index].id) * PrimeFraction::prime_power(p, shifts[b.shift].gamma);
            return cmp(va, vb) > 0;
        };
        std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
        for (std::size_t s = 0; s < shifts.size(); ++s) {
            Cursor c = advance({s, 0});
            if (c.index < D.size()) heap.push(c);
        }
        U.clear();
        while (!heap.empty()) {
            Cursor c = heap.top();
            heap.pop();
            const Item& d = D[c.index];
            const Shift& s = shifts[c.shift];
            U.push_back({s.gamma == 0 ? d.id : 0, d.log + s.log, d.ben + s.ben, d.dell + s.dell});
            if (s.gamma != 0) U.back().id = arena.extend(d.id, p, s.gamma);
            Cursor nc = advance({c.shift, c.index + 1});
            if (nc.index < D.size()) heap.push(nc);
        }

        // Drop every prefix beaten by a larger one of no greater cost.
        std::vector<Item> kept;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::size_t j = U.size(); j-- > 0;) {
            if (U[j].dell < best) {
                best = U[j].dell;
                kept.push_back(U[j]);
            }
        }
        std::reverse(kept.begin(), kept.end());
        D = std::move(kept);
    }

    std::vector<PrefixCandidate> out;
    out.reserve(D.size());
    for (const auto& d : D) out.push_back({arena.value(d.id), d.ben, d.dell});
    return out;
}

Real solve_t1(const SuperchampionContext& ctx, const Real& B) {
    if (B < 0 || !(B < ctx.B1))
        throw BoundFailure("t1 needs 0 <= B < B1; B = " + to_string(B, 12) + ", B1 = " + to_string(ctx.B1, 12));
    // f(x1) = 0 since rho = x1 / log x1
    if (B == 0) return ctx.x1;
    const Real& rho = ctx.rho.value;
    auto f = [&](const Real& t) { return rho * log(t) - t - B; };
    Real lo = rho, hi = ctx.x1;
    for (int i = 0; i < 60; ++i) {
        Real mid = (lo + hi) / 2;
        if (f(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    Real t = (lo + hi) / 2;
    for (int i = 0; i < 4; ++i) {
        Real step = f(t) / (rho / t - 1);
        t -= step;
    }
    return std::clamp(t, rho, ctx.x1);
}

BoundResult estimate_B(const SuperchampionContext& ctx, std::span<const PrefixCandidate> D) {
    if (D.empty()) throw std::invalid_argument("empty prefix set");
    const PrimeTable& primes = *ctx.primes;
    const auto n = static_cast<std::int64_t>(ctx.n);
    const std::size_t k = ctx.k;
    auto top_sum = [&](std::size_t w) {  // p_{k+1} + ... + p_{k+w}
        if (k + w > primes.size()) throw CapacityError("prime table too short for the bound on B");
        return static_cast<std::int64_t>(primes.cumulative_sum(k + w) - primes.cumulative_sum(k));
    };
    auto low_sum = [&](std::size_t c) {  // p_k + ... + p_{k-c+1}
        return static_cast<std::int64_t>(primes.cumulative_sum(k) - primes.cumulative_sum(k - c));
    };

    bool found = false;
    Real best;
    std::size_t best_index = 0;
    std::int32_t best_omega = 0;
    for (std::size_t i = 0; i < D.size(); ++i) {
        std::int64_t room = n - ctx.ellN - D[i].dell;
        std::int32_t omega;
        std::int64_t S;
        if (room >= 0) {
            std::size_t hi = 1;
            while (top_sum(hi) <= room) hi *= 2;
            std::size_t lo = 0;  // top_sum(lo) <= room < top_sum(hi)
            while (hi - lo > 1) {
                std::size_t mid = (lo + hi) / 2;
                (top_sum(mid) <= room ? lo : hi) = mid;
            }
            omega = static_cast<std::int32_t>(lo);
            S = top_sum(lo);
        } else {
            std::size_t c = 1;
            while (c < k && low_sum(c) < -room) ++c;
            // dividing is allowed only while the removed primes stay >= sqrt(x1)
            if (low_sum(c) < -room || below_sqrt_x1(primes.prime(k - c + 1), ctx)) continue;
            omega = -static_cast<std::int32_t>(c);
            S = -low_sum(c);
        }
        Real b = D[i].ben;
        if (omega > 0)
            for (std::int32_t w = 1; w <= omega; ++w) b += ben_prime(ctx, primes.prime(k + w), 1);
        else
            for (std::int32_t w = 0; w < -omega; ++w) b += ben_prime(ctx, primes.prime(k - w), -1);
        b += Real(n - ctx.ellN - D[i].dell - S);
        if (!found || b < best) {
            found = true;
            best = b;
            best_index = i;
            best_omega = omega;
        }
    }
    if (!found) throw BoundFailure("no prefix admits a shift for n = " + std::to_string(ctx.n));

    BoundResult res;
    res.B = best;
    res.omega = best_omega;
    std::vector<PrimeFraction::Factor> fs(D[best_index].delta.factors().begin(),
                                          D[best_index].delta.factors().end());
    if (best_omega > 0)
        for (std::int32_t w = 1; w <= best_omega; ++w) fs.push_back({primes.prime(k + w), 1});
    else
        for (std::int32_t w = 0; w < -best_omega; ++w) fs.push_back({primes.prime(k - w), -1});
    res.witness = PrimeFraction::from_factors(std::move(fs));
    if (res.B < ctx.B1) res.t1 = solve_t1(ctx, res.B);
    return res;
}

Real initial_budget(const SuperchampionContext& ctx) {
    Real b;
    if (ctx.n < 2485)
        b = ctx.B1 * (1 - Real(1e-6));
    else if (ctx.n <= 10'000'000'000ULL)
        b = ctx.rho.value;
    else
        b = ctx.rho.value / 2;
    return std::min(b, ctx.B1 * (1 - Real(1e-6)));
}

BoundLoopResult bound_loop(const SuperchampionContext& ctx) { return bound_loop(ctx, initial_budget(ctx)); }

BoundLoopResult bound_loop(const SuperchampionContext& ctx, const Real& first_budget) {
    BoundLoopResult out;
    Real budget = first_budget;
    for (int round = 0;; ++round) {
        if (round == 16) throw InvariantViolation("benefit bound did not settle for n = " + std::to_string(ctx.n));
        out.budgets.push_back(budget);
        auto D = build_prefix_sets(ctx, budget);
        out.bound = estimate_B(ctx, D);
        if (out.bound.B <= budget) {
            Real limit = budget_slack(out.bound.B);
            for (auto& d : D)
                if (d.ben <= limit) out.prefixes.push_back(std::move(d));
            return out;
        }
        budget = out.bound.B;
    }
}

}  // namespace landau
