#include "doctest.h"

#include "landau/assemble.hpp"
#include "landau/oracle.hpp"
#include "landau/superchampion.hpp"

using namespace landau;

namespace {

const PrimeTable& small_primes() {
    static const PrimeTable t = PrimeTable::build(200000);
    return t;
}

Real slope_at(const Real& x, std::size_t j) {
    if (j == 1) return x / log(x);
    return (pow(x, j) - pow(x, j - 1)) / log(x);
}

}  // namespace

TEST_CASE("first superchampions") {
    ChampionWalk walk(small_primes());
    const std::uint64_t want_n[] = {3, 6, 12, 60, 420, 4620, 60060};
    const std::int64_t want_l[] = {3, 5, 7, 12, 19, 30, 43};
    mpz_class N = 1;
    for (std::size_t i = 0; i < 7; ++i) {
        auto s = walk.next();
        N *= s.q;
        CHECK(N == want_n[i]);
        CHECK(s.ell == want_l[i]);
    }
}

TEST_CASE("superchampions are values of g") {
    ChampionWalk walk(small_primes());
    auto table = g_table_dp(3000);
    PrimeFraction N;
    for (;;) {
        auto s = walk.next();
        if (s.ell > 3000) break;
        N = N * PrimeFraction::prime_power(s.q);
        CHECK(N.ell() == s.ell);
        CHECK(table.value(static_cast<std::uint64_t>(s.ell)) == N);
    }
}

TEST_CASE("E2 table head") {
    auto t = build_e2_table(10000, small_primes());
    REQUIRE(t.size() >= 11);
    struct Row {
        std::uint64_t q;
        std::uint32_t j;
        std::uint64_t p;
        std::int64_t l;
    };
    const Row want[] = {{2, 2, 3, 7},      {3, 2, 13, 49},    {2, 3, 13, 53},    {2, 4, 43, 301},
                        {5, 2, 47, 368},   {3, 3, 67, 626},   {7, 2, 97, 1160},  {2, 5, 107, 1487},
                        {11, 2, 251, 6307}, {2, 6, 251, 6339}, {3, 4, 271, 7453}};
    for (std::size_t i = 0; i < 11; ++i) {
        CAPTURE(i + 1);
        CHECK(t[i].q == want[i].q);
        CHECK(t[i].j == want[i].j);
        CHECK(t[i].p == want[i].p);
        CHECK(t[i].l == want[i].l);
    }
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i - 1].r < t[i].r);
    CHECK(t.back().l > 10000);
    CHECK(t[t.size() - 2].l <= 10000);
}

TEST_CASE("context agrees with the champion walk") {
    auto& primes = small_primes();
    auto e2 = build_e2_table(20000, primes);
    ChampionWalk walk(primes);
    auto prev = walk.next();
    auto cur = walk.next();
    for (std::uint64_t n = 7; n <= 20000; ++n) {
        while (cur.ell <= static_cast<std::int64_t>(n)) {
            prev = cur;
            cur = walk.next();
        }
        auto ctx = find_context(n, e2, primes);
        CAPTURE(n);
        REQUIRE(ctx.ellN == prev.ell);
        CHECK(ctx.N_plus_ell == cur.ell);
        CHECK(ctx.N().ell() == ctx.ellN);
        CHECK(ctx.rho.q == cur.q);
        CHECK(ctx.rho.j == cur.j);
        CHECK(ctx.p_k1 == primes.next_prime(ctx.p_k));
    }
}

TEST_CASE("thresholds") {
    auto& primes = small_primes();
    auto e2 = build_e2_table(2000000, primes);
    auto ctx = find_context(1000000, e2, primes);
    CHECK(ctx.ellN == 998093);
    CHECK(ctx.N_brackets() == "2^9 * 3^6 * 5^4 * 7^3 * [11-41]^2 * [43-3923]");
    CHECK(ctx.p_k == 3923);
    CHECK(ctx.p_k1 == 3929);
    CHECK(ctx.x1 > Real(ctx.p_k));
    CHECK(ctx.x1 <= Real(ctx.p_k1));
    CHECK(ctx.B1 == b1(ctx.x1, ctx.x2));
    for (std::size_t j = 0; j < ctx.xs.size(); ++j) {
        CHECK(within_guard(slope_at(ctx.xs[j], j + 1), ctx.rho.value));
    }
    for (std::size_t i = 1; i < ctx.xs.size(); ++i) CHECK(ctx.xs[i] < ctx.xs[i - 1]);
    for (const auto& f : ctx.high_powers) CHECK(ctx.alpha(f.prime) == static_cast<std::uint32_t>(f.exponent));
    CHECK(ctx.alpha(3923) == 1);
    CHECK(ctx.alpha(3929) == 0);
}
