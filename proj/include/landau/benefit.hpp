#pragma once

#include "landau/arith.hpp"
#include "landau/real.hpp"
#include "landau/superchampion.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace landau {

// ell(p^(alpha+gamma)) - ell(p^alpha) - rho * gamma * log p, the share of p
// in ben(N p^gamma). gamma >= -alpha.
Real ben_prime(const SuperchampionContext& ctx, std::uint64_t p, std::int32_t gamma);

// ell(N p^gamma) - ell(N).
std::int64_t dell_prime(const SuperchampionContext& ctx, std::uint64_t p, std::int32_t gamma);

// ben(N delta) = ell(N delta) - ell(N) - rho log delta, summed prime by prime.
// Throws invalid_argument when an exponent of delta is below -v_p(N).
Real ben(const PrimeFraction& delta, const SuperchampionContext& ctx);

// A possible plain prefix delta, supported on the primes below sqrt(x1).
struct PrefixCandidate {
    PrimeFraction delta;
    Real ben;
    std::int64_t dell = 0;  // ell(N delta) - ell(N)
};

// The set D(B') of plain prefixes, sorted by increasing value. Requires
// 0 <= B' < B1; throws BoundFailure otherwise.
std::vector<PrefixCandidate> build_prefix_sets(const SuperchampionContext& ctx, const Real& B_prime);

struct BoundResult {
    Real B;   // upper bound for ben g(n) + n - ell(g(n))
    Real t1;  // root of rho log t - t = B in (rho, x1); 0 when B >= B1
    PrimeFraction witness;  // M / N for the M giving B
    std::int32_t omega = 0;
};

// Root of rho log t - t = B on (rho, x1); requires 0 <= B < B1.
Real solve_t1(const SuperchampionContext& ctx, const Real& B);

// B = min over delta in D of ben(N delta_w) + n - ell(N delta_w), where w is
// the largest shift with ell(N delta_w) <= n. Throws BoundFailure when no
// delta admits a shift.
BoundResult estimate_B(const SuperchampionContext& ctx, std::span<const PrefixCandidate> D);

// Initial B' for n: B1 (1 - 1e-6) below 2485, rho up to 10^10, rho / 2 above.
Real initial_budget(const SuperchampionContext& ctx);

struct BoundLoopResult {
    BoundResult bound;
    std::vector<PrefixCandidate> prefixes;  // D(B)
    std::vector<Real> budgets;              // every B' tried
};

// Steps 2 to 4: grow B' until the bound B it yields is at most B', then
// keep the prefixes with benefit at most B.
BoundLoopResult bound_loop(const SuperchampionContext& ctx);
BoundLoopResult bound_loop(const SuperchampionContext& ctx, const Real& first_budget);

// Plain prefix of M = N * delta: the part of delta on primes below sqrt(x1).
PrimeFraction plain_prefix(const PrimeFraction& delta, const SuperchampionContext& ctx);

}  // namespace landau
