#include "doctest.h"

#include "landau/errors.hpp"
#include "landau/gfunction.hpp"

#include <gmpxx.h>

using namespace landau;

namespace {

const PrimeTable& primes() {
    static const PrimeTable t = PrimeTable::build(2'000'000);
    return t;
}

mpq_class as_rational(const PrimeFraction& f) {
    mpq_class q(f.numerator_value(), f.denominator_value());
    q.canonicalize();
    return q;
}

// best[s][c]: extreme product of s primes from `items` whose offsets sum to c.
std::vector<std::vector<mpz_class>> knapsack(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& items,
                                             std::size_t S, std::uint64_t C, bool maximize) {
    std::vector<std::vector<mpz_class>> best(S + 1, std::vector<mpz_class>(C + 1, 0));
    best[0][0] = 1;
    for (auto [prime, offset] : items) {
        for (std::size_t s = S; s >= 1; --s) {
            for (std::uint64_t c = C; c + 1 > offset; --c) {
                const mpz_class& prev = best[s - 1][c - offset];
                if (prev == 0) continue;
                mpz_class v = prev * prime;
                mpz_class& cur = best[s][c];
                if (cur == 0 || (maximize ? v > cur : v < cur)) cur = v;
            }
        }
    }
    return best;
}

// G(p_k, m) for m = 0..M straight from its definition.
std::vector<mpq_class> g_oracle(std::uint64_t p_k, std::uint64_t M) {
    auto& P = primes();
    std::vector<std::pair<std::uint64_t, std::uint64_t>> up, down;
    for (std::uint64_t Q = P.next_prime(p_k); Q <= p_k + M; Q = P.next_prime(Q)) up.push_back({Q, Q - p_k});
    for (std::uint64_t q = p_k; q >= 3 && q + M >= P.next_prime(p_k); q = P.prev_prime(q)) {
        down.push_back({q, p_k - q});
        if (q == 3) break;
    }
    std::size_t S = std::min(up.size(), down.size());
    auto num = knapsack(up, S, M, true);
    auto den = knapsack(down, S, M, false);
    std::vector<mpq_class> out(M + 1, 1);
    for (std::uint64_t m = 0; m <= M; ++m) {
        for (std::size_t s = 1; s <= S; ++s) {
            for (std::uint64_t a = 0; a <= m; ++a) {
                if (num[s][a] == 0) continue;
                for (std::uint64_t b = 0; a + b <= m; ++b) {
                    if (den[s][b] == 0) continue;
                    mpq_class v(num[s][a], den[s][b]);
                    v.canonicalize();
                    if (v > out[m]) out[m] = v;
                }
            }
        }
    }
    return out;
}

GFraction fraction(std::vector<std::uint64_t> Qs, std::vector<std::uint64_t> qs) {
    GFraction f;
    f.Qs = std::move(Qs);
    f.qs = std::move(qs);
    for (auto Q : f.Qs) f.cost += static_cast<std::int64_t>(Q);
    for (auto q : f.qs) f.cost -= static_cast<std::int64_t>(q);
    return f;
}

}  // namespace

TEST_CASE("G against the knapsack oracle") {
    for (std::uint64_t p : {13ULL, 31ULL, 103ULL}) {
        std::uint64_t M = std::min<std::uint64_t>(60, primes().next_prime(p) - 3);
        auto want = g_oracle(p, M);
        auto got = g_small(primes(), p, M);
        auto full = g_small_full(primes(), p, M);
        REQUIRE(got.size() == M + 1);
        for (std::uint64_t m = 0; m <= M; ++m) {
            CAPTURE(p);
            CAPTURE(m);
            CHECK(as_rational(got[m].value()) == want[m]);
            CHECK(got[m] == full[m]);
            CHECK(got[m].cost <= static_cast<std::int64_t>(m));
            check_g_bounds(primes(), p, m, got[m]);
        }
    }
}

TEST_CASE("G values") {
    auto g = g_small(primes(), 103, 22);
    CHECK(g[22] == fraction({107, 113}, {101, 97}));
    CHECK(g_small(primes(), 107, 12)[12] == fraction({109}, {97}));
    Delta1Table d1(primes());
    auto r = g_function(primes(), d1, 7, 3);
    CHECK(r.fraction.value().is_one());
    CHECK(r.algorithm == "trivial");
    CHECK(g_function(primes(), d1, 2, 0).algorithm == "trivial");
    CHECK(g_function(primes(), d1, 103, 22).algorithm == "small");
    CHECK_THROWS(g_function(primes(), d1, 103, 105));
}

TEST_CASE("widening matches the full window") {
    for (std::uint64_t p = 3; p < 1000; p = primes().next_prime(p)) {
        std::uint64_t M = std::min<std::uint64_t>(200, primes().next_prime(p) - 3);
        auto a = g_small(primes(), p, M, 2);
        auto b = g_small_full(primes(), p, M);
        for (std::uint64_t m = 0; m <= M; ++m) {
            CAPTURE(p);
            CAPTURE(m);
            CHECK(a[m] == b[m]);
        }
        CHECK(widen_and_confirm(primes(), p, M, 1) == b[M]);
    }
}

TEST_CASE("delta1 definition") {
    auto& P = primes();
    for (std::uint64_t p_k : {101ULL, 997ULL, 9973ULL}) {
        std::uint64_t d = compute_delta1(P, p_k);
        std::uint64_t p1 = P.next_prime(p_k);
        std::uint64_t gap = P.max_gap_upto(p1);
        CAPTURE(p_k);
        CHECK(d % 2 == 0);
        CHECK(d >= gap);
        auto g = g_small_full(P, p1, std::min<std::uint64_t>(d, P.next_prime(p1) - 3));
        auto good = [&](std::uint64_t e) {
            // G(p1, e) >= 1 + e / p1
            mpq_class lhs = as_rational(g[e].value());
            return lhs * p1 >= p1 + e;
        };
        for (std::uint64_t e = d - gap + 2; e <= d; e += 2) CHECK(good(e));
        if (d - 2 >= gap) CHECK_FALSE(good(d - gap));
    }
    CHECK(compute_delta1(P, 9973) == 118);
}

TEST_CASE("small and large recursions agree") {
    auto& P = primes();
    Delta1Table table(P);
    std::uint64_t p = 9973;
    std::uint64_t d1 = table.get(p);
    auto g = g_small(P, p, 3000);
    std::uint64_t m0 = (9 * d1 + 1) / 2;
    if (m0 % 2) ++m0;
    int compared = 0;
    for (std::uint64_t m = m0; m <= 3000; m += 2) {
        CAPTURE(m);
        auto large = g_large(P, p, m, d1);
        CHECK(large == g[m]);
        check_g_bounds(P, p, m, large);
        ++compared;
    }
    CHECK(compared > 1000);
}

TEST_CASE("bounds reject bad fractions") {
    auto& P = primes();
    CHECK_THROWS_AS(check_g_bounds(P, 103, 10, fraction({107, 113}, {101, 97})), InvariantViolation);
    CHECK_THROWS_AS(GFraction::from_fraction(PrimeFraction::prime_power(101), 103), InvariantViolation);
    auto f = GFraction::from_fraction(PrimeFraction::prime_power(107) * PrimeFraction::prime_power(97, -1), 103);
    CHECK(f == fraction({107}, {97}));
}
