#include "landau/gfunction.hpp"

#include "landau/errors.hpp"
#include "landau/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace landau {

PrimeFraction GFraction::value() const {
    std::vector<PrimeFraction::Factor> fs;
    for (auto Q : Qs) fs.push_back({Q, 1});
    for (auto q : qs) fs.push_back({q, -1});
    return PrimeFraction::from_factors(std::move(fs));
}

GFraction GFraction::from_fraction(const PrimeFraction& f, std::uint64_t p_k) {
    GFraction g;
    for (const auto& x : f.factors()) {
        bool ok = x.exponent == 1 ? x.prime > p_k : x.exponent == -1 && x.prime <= p_k && x.prime >= 3;
        if (!ok) throw InvariantViolation(render(f) + " is not a balanced fraction around " + std::to_string(p_k));
        if (x.exponent == 1) {
            g.Qs.push_back(x.prime);
            g.cost += static_cast<std::int64_t>(x.prime);
        } else {
            g.qs.push_back(x.prime);
            g.cost -= static_cast<std::int64_t>(x.prime);
        }
    }
    if (g.Qs.size() != g.qs.size())
        throw InvariantViolation(render(f) + " has unequal numbers of factors");
    std::reverse(g.qs.begin(), g.qs.end());
    return g;
}

namespace {

void check_domain(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m) {
    if (p_k < 3 || !primes.is_prime(p_k))
        throw std::invalid_argument("G(p, m) needs an odd prime p, got " + std::to_string(p_k));
    std::uint64_t p1 = primes.next_prime(p_k);
    if (m + 3 > p1)
        throw std::out_of_range("G(" + std::to_string(p_k) + ", m) needs m <= " + std::to_string(p1 - 3));
}

// A non-increasing step function of m: value ids[i] on [m_i, m_{i+1}), +infinity before m_0.
struct Step {
    std::int64_t m;
    std::uint32_t id;
};
using StepFn = std::vector<Step>;

// min(f1(m), P * f2(m - c)) over 0 <= m <= M.
StepFn merge_min(ChainArena& arena, const StepFn& f1, const StepFn& f2, std::int64_t c, std::uint32_t P,
                 const Real& logP, std::int64_t M) {
    StepFn out;
    std::size_t i1 = 0, i2 = 0;
    std::ptrdiff_t cur1 = -1, cur2 = -1;
    std::ptrdiff_t made_for = -1;
    std::uint32_t made_id = 0;
    for (;;) {
        std::int64_t e1 = i1 < f1.size() ? f1[i1].m : M + 1;
        std::int64_t e2 = i2 < f2.size() ? f2[i2].m + c : M + 1;
        std::int64_t m = std::min(e1, e2);
        if (m > M) break;
        if (e1 == m) cur1 = static_cast<std::ptrdiff_t>(i1++);
        if (e2 == m) cur2 = static_cast<std::ptrdiff_t>(i2++);
        bool take2;
        if (cur2 < 0)
            take2 = false;
        else if (cur1 < 0)
            take2 = true;
        else
            take2 = arena.compare_scaled(f2[cur2].id, P, 1, logP, f1[cur1].id) < 0;
        std::uint32_t id;
        if (take2) {
            if (made_for != cur2) {
                made_id = arena.extend(f2[cur2].id, P, 1, logP);
                made_for = cur2;
            }
            id = made_id;
        } else {
            id = f1[cur1].id;
        }
        if (out.empty() || out.back().id != id) out.push_back({m, id});
    }
    return out;
}

std::size_t window_extra_for(const PrimeTable& primes, std::size_t kk, double bound) {
    // smallest R with P_R > bound
    auto x = static_cast<std::uint64_t>(std::floor(bound));
    if (x >= primes.limit()) throw CapacityError("prime table too short for the G window up to " + std::to_string(x));
    return primes.pi(x) + 1 - kk;
}

std::vector<GFraction> g_confirmed(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M,
                                   std::uint64_t m_from, std::size_t extra) {
    std::size_t kk = primes.index_of(p_k);
    extra = std::max<std::size_t>(extra, 1);
    for (;;) {
        auto res = g_window(primes, p_k, M, extra);
        std::uint64_t PR = primes.prime(kk + extra);
        double need = 0;
        for (std::uint64_t m = m_from; m <= M; ++m) need = std::max(need, numerator_prime_bound(res[m], p_k, m));
        need *= 1 + 1e-12;
        if (static_cast<double>(PR) > need) return res;
        extra = std::max(extra + 1, window_extra_for(primes, kk, need));
    }
}

}  // namespace

std::vector<GFraction> g_window(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M, std::size_t extra) {
    check_domain(primes, p_k, M);
    if (extra < 1) throw std::invalid_argument("G window needs at least one prime above p_k");
    const std::size_t kk = primes.index_of(p_k);
    if (kk + extra > primes.size()) throw CapacityError("prime table too short for the G window");
    const std::uint64_t top1 = primes.prime(kk + 1);
    const std::uint64_t low = top1 > M + 3 ? top1 - M : 3;
    if (low > p_k) return std::vector<GFraction>(M + 1);

    // P_i = prime(base + i), i = 1..R; P_1 is the smallest prime >= low.
    const std::size_t base = primes.pi(low - 1);
    const std::size_t K = kk - base;
    const std::size_t J = extra;
    const std::size_t R = K + J;
    auto P = [&](std::size_t i) { return primes.prime(base + i); };

    ChainArena arena;
    std::vector<StepFn> prev(J + 1), cur(J + 1);
    prev[0] = {{0, ChainArena::kRoot}};
    const auto Mi = static_cast<std::int64_t>(M);
    for (std::size_t r = 1; r <= R; ++r) {
        const std::size_t jlo = r > K ? r - K : 0;
        const std::size_t jhi = std::min(r, J);
        const auto Pr = static_cast<std::uint32_t>(P(r));
        const Real logPr = log_u64(Pr);
        for (std::size_t j = 0; j <= J; ++j) {
            if (j < jlo || j > jhi) {
                cur[j].clear();
                continue;
            }
            if (j == 0) {
                cur[0] = {{0, ChainArena::kRoot}};
                continue;
            }
            auto c = static_cast<std::int64_t>(P(K + j)) - static_cast<std::int64_t>(Pr);
            cur[j] = merge_min(arena, prev[j], prev[j - 1], c, Pr, logPr, Mi);
        }
        std::swap(prev, cur);
    }

    const StepFn& H = prev[J];
    if (H.empty() || H.front().m != 0) throw InvariantViolation("H(R-K, P_R; 0) is not finite");
    std::vector<PrimeFraction::Factor> top;
    for (std::size_t i = K + 1; i <= R; ++i) top.push_back({P(i), 1});
    const PrimeFraction T = PrimeFraction::from_factors(top);

    std::vector<GFraction> out(M + 1);
    for (std::size_t s = 0; s < H.size(); ++s) {
        GFraction g = GFraction::from_fraction(T / arena.value(H[s].id), p_k);
        std::int64_t end = s + 1 < H.size() ? H[s + 1].m : Mi + 1;
        for (std::int64_t m = H[s].m; m < end; ++m) out[m] = g;
    }
    return out;
}

std::vector<GFraction> g_small_full(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M) {
    check_domain(primes, p_k, M);
    std::size_t kk = primes.index_of(p_k);
    std::size_t extra = std::max<std::size_t>(1, primes.pi(p_k + M) - kk);
    return g_window(primes, p_k, M, extra);
}

double numerator_prime_bound(const GFraction& F, std::uint64_t p_k, std::uint64_t m) {
    double a = static_cast<double>(p_k + m);
    if (F.Qs.empty()) return a;
    double L = static_cast<double>(F.value().log());
    return std::min(a, static_cast<double>(m) * std::exp(L) / std::expm1(L));
}

std::vector<GFraction> g_small(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M,
                               std::size_t trial_extra) {
    return g_confirmed(primes, p_k, M, 0, trial_extra);
}

GFraction widen_and_confirm(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m, std::size_t trial_extra) {
    return g_confirmed(primes, p_k, m, m, trial_extra).back();
}

std::uint64_t compute_delta1(const PrimeTable& primes, std::uint64_t p_k) {
    if (p_k < 5 || !primes.is_prime(p_k)) throw std::invalid_argument("delta1 needs a prime p >= 5");
    const std::size_t kk = primes.index_of(p_k);
    if (kk + 2 > primes.size()) throw CapacityError("prime table too short for delta1");
    const std::uint64_t P1 = primes.prime(kk + 1);
    const std::uint64_t P2 = primes.prime(kk + 2);
    const std::uint64_t gap = primes.max_gap_upto(P1);
    const std::uint64_t limit = std::min(Delta1Table::ceiling(p_k), P2 - 3);
    const PrimeFraction P1f = PrimeFraction::prime_power(P1);

    std::uint64_t D = std::min(limit, std::max<std::uint64_t>(2 * gap + 64, 128));
    for (;;) {
        auto table = g_small(primes, P1, D);
        std::uint64_t run = 0;  // consecutive even d meeting the bound, ending here
        for (std::uint64_t d = 2; d <= D; d += 2) {
            bool ok = cmp(table[d].value() * P1f, PrimeFraction::from_integer(P1 + d)) >= 0;
            run = ok ? run + 1 : 0;
            if (d >= gap && 2 * run >= gap) return d;
        }
        if (D == limit)
            throw Delta1CeilingError("delta1(" + std::to_string(p_k) + ") exceeds " + std::to_string(limit));
        D = std::min(limit, 2 * D);
    }
}

Delta1Table::Delta1Table(const PrimeTable& primes, std::filesystem::path cache)
    : primes_(primes), cache_(std::move(cache)) {
    if (cache_.empty()) return;
    std::ifstream in(cache_);
    std::string header;
    if (!in || !std::getline(in, header) || header != "landau-delta1 1") return;
    std::uint64_t p, d;
    while (in >> p >> d) values_[p] = d;
}

std::uint64_t Delta1Table::ceiling(std::uint64_t p_k) {
    double l = std::log(static_cast<double>(p_k));
    return static_cast<std::uint64_t>(4 * 2.55 * l * l);
}

std::uint64_t Delta1Table::get(std::uint64_t p_k) {
    auto it = values_.find(p_k);
    if (it != values_.end()) return it->second;
    std::uint64_t d = compute_delta1(primes_, p_k);
    values_[p_k] = d;
    dirty_ = true;
    return d;
}

void Delta1Table::save() const {
    if (cache_.empty() || !dirty_) return;
    std::filesystem::create_directories(cache_.parent_path());
    std::ofstream out(cache_);
    out << "landau-delta1 1\n";
    for (const auto& [p, d] : values_) out << p << ' ' << d << '\n';
}

GFraction g_large(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m, std::uint64_t delta1) {
    check_domain(primes, p_k, m);
    if (m % 2 != 0) throw std::invalid_argument("g_large needs an even m");
    if (2 * m < 9 * delta1) throw std::invalid_argument("g_large needs m >= 9 delta1 / 2");
    const std::size_t kk = primes.index_of(p_k);
    const std::uint64_t P1 = primes.prime(kk + 1);
    const std::uint64_t P2 = primes.prime(kk + 2);
    if (m + p_k < P1) throw std::invalid_argument("g_large needs m >= p_{k+1} - p_k");

    const auto inner_d = g_small(primes, P1, std::min(delta1, P2 - 3));
    const PrimeFraction P1f = PrimeFraction::prime_power(P1);
    std::int64_t delta = -1;
    for (auto d = static_cast<std::int64_t>(delta1); d >= 0; d -= 2) {
        auto du = static_cast<std::uint64_t>(d);
        if (!primes.is_prime(P1 + du - m) || 9 * du >= 2 * m) continue;
        if (du > 0 && cmp(inner_d[du].value() * P1f, PrimeFraction::from_integer(P1 + du)) < 0) continue;
        delta = d;
        break;
    }
    if (delta < 0)
        throw InvariantViolation("no admissible delta for G(" + std::to_string(p_k) + ", " + std::to_string(m) + ")");
    const std::uint64_t q0 = P1 - m;
    if (delta == 0) return GFraction{{P1}, {q0}, static_cast<std::int64_t>(m)};

    Real d = delta;
    Real qhat = Real(P1) * Real(P2) * (Real(q0) + d) / ((Real(P1) + d) * (Real(P1) - 3 * d / 2));
    auto qmax = static_cast<std::uint64_t>(floor(qhat));
    if (qmax < q0) throw InvariantViolation("empty q range for G(" + std::to_string(p_k) + ", " + std::to_string(m) + ")");
    auto inner = g_small(primes, P1, std::min(qmax - q0, P2 - 3));

    PrimeFraction best;
    bool found = false;
    for (std::uint64_t q = primes.next_prime(q0 - 1); q <= qmax; q = primes.next_prime(q)) {
        std::uint64_t mp = m - P1 + q;
        if (mp >= inner.size()) break;
        PrimeFraction cand = P1f / PrimeFraction::prime_power(q) * inner[mp].value();
        if (!found || cmp(cand, best) > 0) {
            best = cand;
            found = true;
        }
    }
    if (!found) throw InvariantViolation("no prime q for G(" + std::to_string(p_k) + ", " + std::to_string(m) + ")");
    return GFraction::from_fraction(best, p_k);
}

void check_g_bounds(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m, const GFraction& F) {
    const std::uint64_t P1 = primes.next_prime(p_k);
    const PrimeFraction v = F.value();
    auto fail = [&](const std::string& what) {
        throw InvariantViolation("G(" + std::to_string(p_k) + ", " + std::to_string(m) + ") = " + render(v) + " " + what);
    };
    std::int64_t cost = 0;
    for (auto Q : F.Qs) cost += static_cast<std::int64_t>(Q);
    for (auto q : F.qs) cost -= static_cast<std::int64_t>(q);
    if (cost != F.cost || v.ell() != F.cost) fail("has an inconsistent cost");
    if (F.cost < 0 || static_cast<std::uint64_t>(F.cost) > m) fail("costs more than m");
    const PrimeFraction P1f = PrimeFraction::prime_power(P1);
    std::uint64_t q = primes.next_prime(P1 - m - 1);
    if (cmp(v * PrimeFraction::prime_power(q), P1f) < 0) fail("is below p_{k+1}/q");
    if (cmp(v * PrimeFraction::from_integer(P1 - m), P1f) > 0) fail("is above p_{k+1}/(p_{k+1}-m)");
    if (cmp(v * PrimeFraction::prime_power(p_k), PrimeFraction::from_integer(p_k + F.cost)) < 0)
        fail("is below 1 + ell(F)/p_k");
    if (!F.Qs.empty()) {
        std::uint64_t Qs = F.Qs.back();
        if (cmp(v * PrimeFraction::from_integer(Qs - F.cost), PrimeFraction::prime_power(Qs)) > 0)
            fail("is above Q_s/(Q_s - ell(F))");
    }
}

GResult g_function(const PrimeTable& primes, Delta1Table& delta1, std::uint64_t p_k, std::uint64_t m) {
    // no denominator prime q with 3 <= q <= 2
    if (p_k == 2) return {GFraction{}, "trivial"};
    check_domain(primes, p_k, m);
    const std::uint64_t me = m & ~std::uint64_t{1};
    const std::uint64_t P1 = primes.next_prime(p_k);
    GResult r;
    if (me + p_k < P1) {
        r.algorithm = "trivial";
    } else if (me < kSmallGLimit) {
        r.fraction = widen_and_confirm(primes, p_k, me);
        r.algorithm = "small";
    } else if (2 * me >= 9 * delta1.get(p_k)) {
        r.fraction = g_large(primes, p_k, me, delta1.get(p_k));
        r.algorithm = "large";
    } else {
        r.fraction = widen_and_confirm(primes, p_k, me);
        r.algorithm = "small";
    }
    check_g_bounds(primes, p_k, m, r.fraction);
    return r;
}

}  // namespace landau
