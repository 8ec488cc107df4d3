#pragma once

#include "landau/arith.hpp"
#include "landau/benefit.hpp"
#include "landau/gfunction.hpp"
#include "landau/primes.hpp"
#include "landau/real.hpp"
#include "landau/superchampion.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace landau {

// A possible normalized prefix: the plain prefix times p_{k+1} ... p_{k+w}
// (w > 0) or divided by p_k ... p_{k+w+1} (w < 0).
struct NormalizedCandidate {
    PrefixCandidate plain;
    std::int32_t omega = 0;
    PrimeFraction Pi;
    Real ben_Pi;
    std::int64_t ell_NPi = 0;    // ell(N Pi)
    std::int64_t m_suffix = 0;   // n - ell(N Pi)
    std::uint64_t base_prime = 0;  // p_{k+w}
    std::uint64_t next_prime = 0;  // p_{k+w+1}
};

// Every (delta, w) with p_{k+w+1} >= t1 and
// n - ell(N delta) - (B - ben(N Pi)) / (1 - rho/t1) <= S_w <= n - ell(N delta).
// Throws PkOmegaViolation when a candidate has p_{k+w+1} - m_suffix < sqrt(x1)
// and BoundFailure when B >= B1.
std::vector<NormalizedCandidate> normalized_candidates(const SuperchampionContext& ctx, const BoundResult& bound,
                                                       std::span<const PrefixCandidate> D);

// Lower and upper bounds for g(Pi, n) / N from p_{k+w+1}/q <= G <= p_{k+w+1}/(p_{k+w+1} - m).
struct CandidateBounds {
    PrimeFraction lower;
    PrimeFraction upper;
};
CandidateBounds candidate_bounds(const NormalizedCandidate& c, const PrimeTable& primes);

// Drops every candidate whose upper bound is below another one's lower bound.
std::vector<NormalizedCandidate> fight(std::vector<NormalizedCandidate> cands, const PrimeTable& primes);

struct LandauResult {
    std::uint64_t n = 0;
    std::optional<SuperchampionContext> context;  // empty for n < 7
    PrimeFraction correction;  // g(n) / N, or g(n) itself without a context
    std::int64_t ell_g = 0;
    Real log_g;

    // Diagnostics of the run.
    Real B;
    Real t1;
    std::size_t prefixes = 0;    // |D(B)|
    std::size_t candidates = 0;  // possible normalized prefixes
    std::size_t survivors = 0;   // after the fight
    std::size_t evaluated = 0;   // G evaluations actually run
    std::vector<std::string> algorithms;

    Real log10_g() const;
    PrimeFraction value() const;  // N * correction; huge for large n
};

struct Config {
    std::optional<std::uint64_t> sieve_limit_override;
    int precision_digits = 30;
    std::filesystem::path cache_dir;  // empty: no disk caches
    std::size_t digit_budget = 10'000'000;
};

// Owns the prime table, the superchampion table and the delta1 cache, and
// grows them on demand.
class Engine {
public:
    explicit Engine(Config config = {});
    ~Engine();

    // g(n); n < 7 is answered by exhaustive search.
    LandauResult compute_g(std::uint64_t n);

    // Makes the tables cover n.
    void prepare(std::uint64_t n);
    SuperchampionContext context(std::uint64_t n);

    const PrimeTable& primes() const { return *primes_; }
    std::span<const E2Entry> e2() const { return e2_; }
    Delta1Table& delta1() { return *delta1_; }
    const Config& config() const { return config_; }

private:
    Config config_;
    std::unique_ptr<PrimeTable> primes_;
    std::vector<E2Entry> e2_;
    std::int64_t e2_limit_ = 0;
    std::unique_ptr<Delta1Table> delta1_;
};

// Steps 1 to 6 for n >= 7 with prepared tables.
LandauResult compute_g(std::uint64_t n, const PrimeTable& primes, std::span<const E2Entry> e2, Delta1Table& delta1);

// Throws InvariantViolation unless ell(g) <= n and, where they apply,
// log g >= sqrt(n log n) (n >= 906),
// log g <= sqrt(n log n) (1 + (log log n - 0.975) / (2 log n)) (n >= 4) and
// P+(g) <= 1.328 sqrt(n log n) (n >= 5).
void check_landau_bounds(const LandauResult& r);

}  // namespace landau
