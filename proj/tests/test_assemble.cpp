#include "doctest.h"

#include "landau/assemble.hpp"
#include "landau/errors.hpp"
#include "landau/oracle.hpp"

#include <random>

using namespace landau;

namespace {

Engine& engine() {
    static Engine e;
    return e;
}

PrimeFraction pf(std::uint64_t p, std::int32_t e = 1) { return PrimeFraction::prime_power(p, e); }

}  // namespace

TEST_CASE("published values of g") {
    auto r = engine().compute_g(1000000);
    CHECK(r.context->ellN == 998093);
    CHECK(r.correction == pf(43) * pf(3947) * pf(3847, -1));
    CHECK(engine().compute_g(999999).correction == r.correction);
    CHECK(r.ell_g <= 1000000);
    CHECK(r.context->N_brackets() == "2^9 * 3^6 * 5^4 * 7^3 * [11-41]^2 * [43-3923]");

    auto s = engine().compute_g(1000000000);
    CHECK(s.context->ellN == 999969437);
    CHECK(s.correction == pf(37) * pf(150991) * pf(2, -1) * pf(3, -1) * pf(148399, -1));
    CHECK(engine().compute_g(999999999).correction == s.correction);
    check_landau_bounds(s);
    CHECK(s.log10_g() > 0);
}

TEST_CASE("small n go through exhaustive search") {
    const std::uint64_t want[] = {1, 1, 2, 3, 4, 6, 6};
    for (std::uint64_t n = 0; n < 7; ++n) {
        auto r = engine().compute_g(n);
        CHECK(!r.context);
        CHECK(r.value() == PrimeFraction::from_integer(want[n]));
    }
    CHECK(engine().compute_g(19).value() == PrimeFraction::from_integer(420));
    CHECK_THROWS_AS(engine().compute_g(8), BoundFailure);
}

TEST_CASE("candidates at n = 998555") {
    auto ctx = engine().context(998555);
    auto loop = bound_loop(ctx);
    auto cands = normalized_candidates(ctx, loop.bound, loop.prefixes);
    std::vector<PrimeFraction> got;
    for (const auto& c : cands) {
        got.push_back(c.Pi);
        CHECK(c.m_suffix >= 0);
        CHECK(c.m_suffix == static_cast<std::int64_t>(ctx.n) - c.ell_NPi);
        CHECK(Real(c.next_prime) >= loop.bound.t1);
        CHECK(c.ben_Pi <= loop.bound.B);
        CHECK(within_guard(c.ben_Pi, ben(c.Pi, ctx)));
        CHECK(c.ell_NPi == (ctx.N() * c.Pi).ell());
    }
    std::sort(got.begin(), got.end(), [](const auto& a, const auto& b) { return cmp(a, b) < 0; });
    REQUIRE(got.size() == 3);
    CHECK(got[0].is_one());
    CHECK(got[1] == pf(43) * pf(41, -1));
    CHECK(got[2] == pf(11) * pf(2, -1) * pf(5, -1));

    auto survivors = fight(cands, engine().primes());
    CHECK(!survivors.empty());
    CHECK(survivors.size() <= 3);
    auto one = fight({cands[0]}, engine().primes());
    CHECK(one.size() == 1);
}

TEST_CASE("agrees with the list oracle") {
    const std::uint64_t limit = 5000;
    auto list = g_list_merge_prune(limit);
    for (std::uint64_t n = 166; n <= limit; ++n) {
        CAPTURE(n);
        auto r = engine().compute_g(n);
        CHECK(r.value() == list.query(n));
        CHECK(r.ell_g <= static_cast<std::int64_t>(n));
        CHECK(r.ell_g == r.value().ell());
    }
}

TEST_CASE("superchampions are fixed points") {
    static const PrimeTable table = PrimeTable::build(6'000'000);
    ChampionWalk walk(table);
    std::int64_t next_sample = 200;
    int checked = 0;
    for (;;) {
        auto s = walk.next();
        if (s.ell > 1'000'000'000'000) break;
        if (s.ell < next_sample) continue;
        next_sample = s.ell * 4;
        auto r = engine().compute_g(static_cast<std::uint64_t>(s.ell));
        CAPTURE(s.ell);
        CHECK(r.correction.is_one());
        CHECK(r.context->ellN == s.ell);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("g is nondecreasing near 10^9") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 1'000'000'000 + rng() % 10'000'000;
        CAPTURE(n);
        auto a = engine().compute_g(n);
        auto b = engine().compute_g(n + 1);
        CHECK(cmp(a.value(), b.value()) <= 0);
    }
}

TEST_CASE("Landau bounds") {
    for (std::uint64_t n : {1000ULL, 12345ULL, 999983ULL}) {
        auto r = engine().compute_g(n);
        CHECK_NOTHROW(check_landau_bounds(r));
        Real x = Real(n);
        Real s = sqrt(x * log(x));
        CHECK(r.log_g >= s);
        CHECK(r.log_g <= s * (1 + (log(log(x)) - Real(0.975)) / (2 * log(x))));
        CHECK(Real(r.value().largest_prime()) <= Real(1.328) * s);
    }
}
