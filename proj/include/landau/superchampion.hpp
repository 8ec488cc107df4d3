#pragma once

#include "landau/arith.hpp"
#include "landau/primes.hpp"
#include "landau/real.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace landau {

// Slope at which the exponent of q in a superchampion rises from j-1 to j:
// q / log q for j = 1 and (q^j - q^(j-1)) / log q for j >= 2.
Real slope(std::uint64_t q, std::uint32_t j);

// One element r = slope(q, j), j >= 2, of the critical set for prime powers.
// p is the largest prime with p / log p < r and l = ell(N_r^+), the cost of
// the larger superchampion attached to r.
struct E2Entry {
    std::uint64_t q;
    std::uint32_t j;
    std::uint64_t p;
    std::int64_t l;
    Real r;
};

// All entries in increasing order of r, up to and including the first one
// whose l exceeds ell_limit. Throws CapacityError if `primes` is too short.
std::vector<E2Entry> build_e2_table(std::int64_t ell_limit, const PrimeTable& primes);

// As above, reusing a cache file when it covers ell_limit.
std::vector<E2Entry> load_or_build_e2_table(std::int64_t ell_limit, const PrimeTable& primes,
                                            const std::filesystem::path& cache);
void save_e2_table(const std::vector<E2Entry>& table, std::int64_t ell_limit,
                   const std::filesystem::path& path);

// A critical slope together with the prime power that defines it, so that a
// threshold equal to rho can be recognised without rounding.
struct Rho {
    Real value;
    std::uint64_t q = 0;
    std::uint32_t j = 0;  // 1 for q / log q

    // slope(p, e) < rho, with the defining element itself excluded.
    bool above(std::uint64_t p, std::uint32_t e) const;
};

// Roots x_1 > x_2 > ... of slope(x, j) = rho, stopping before the first
// root below 2. Requires rho >= 5 / log 5.
std::vector<Real> xj_thresholds(const Real& rho);

// prod_j prod_{x_{j+1} <= p < x_j} p^j over the tabulated primes.
PrimeFraction champion_factorization(std::span<const Real> xs, const PrimeTable& primes);

// min(x2^2 - 2 x2, x1/2 - sqrt(x1)).
Real b1(const Real& x1, const Real& x2);

// Everything the later steps need about the superchampion N = N_rho with
// ell(N) <= n < ell(N_rho^+).
struct SuperchampionContext {
    std::uint64_t n = 0;
    Rho rho;
    // (p, alpha_p) for the leading primes whose exponent is at least 2; every
    // other prime up to p_k has exponent 1.
    std::vector<PrimeFraction::Factor> high_powers;
    std::size_t k = 0;  // p_k is the k-th prime
    std::uint64_t p_k = 0;
    std::uint64_t p_k1 = 0;  // p_{k+1}
    std::int64_t ellN = 0;
    std::int64_t N_plus_ell = 0;
    std::vector<Real> xs;  // x_1, x_2, ...
    Real x1, x2;
    Real B1;

    std::uint32_t alpha(std::uint64_t p) const;
    PrimeFraction N() const;  // all k prime factors; large for big n
    std::vector<PrimeRun> N_runs() const;
    std::string N_brackets() const;
    Real log_N() const;

    // Needed by N(), N_runs(), log_N().
    const PrimeTable* primes = nullptr;
};

SuperchampionContext find_context(std::uint64_t n, std::span<const E2Entry> table,
                                  const PrimeTable& primes);

// Enumerates every superchampion in increasing order: each step multiplies
// the current one by a prime q, raising its exponent to j.
class ChampionWalk {
public:
    struct Step {
        std::uint64_t q;
        std::uint32_t j;
        std::int64_t ell;  // ell of the new superchampion
    };
    explicit ChampionWalk(const PrimeTable& primes);
    Step next();

private:
    struct Item {
        Real r;
        std::uint64_t q;
        std::uint32_t j;
    };
    const PrimeTable& primes_;
    std::vector<Item> heap_;
    std::int64_t ell_ = 0;
};

}  // namespace landau
