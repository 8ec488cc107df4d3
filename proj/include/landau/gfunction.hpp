#pragma once

#include "landau/arith.hpp"
#include "landau/primes.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace landau {

// Q_1 ... Q_s / (q_1 ... q_s) with 3 <= q_s < ... < q_1 <= p_k < p_{k+1} <= Q_1 < ... < Q_s.
struct GFraction {
    std::vector<std::uint64_t> Qs;  // ascending
    std::vector<std::uint64_t> qs;  // descending
    std::int64_t cost = 0;           // sum of Q_i - q_i

    PrimeFraction value() const;
    // Splits a squarefree fraction at p_k; throws InvariantViolation when
    // the shape above does not hold.
    static GFraction from_fraction(const PrimeFraction& f, std::uint64_t p_k);
    friend bool operator==(const GFraction&, const GFraction&) = default;
};

// G(p_k, m) for every 0 <= m <= M through the H recursion on the window of
// primes P_1 .. P_R with P_K = p_k and R = K + extra. Values are exact
// only when the window is wide enough; widen_and_confirm checks that.
std::vector<GFraction> g_window(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M,
                                std::size_t extra);

// Window wide enough by construction: P_{R+1} - p_k > M.
std::vector<GFraction> g_small_full(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M);

// Starts with `trial_extra` primes above p_k and widens until the largest
// numerator prime allowed by F is inside the window for every m <= M.
std::vector<GFraction> g_small(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t M,
                               std::size_t trial_extra = 10);
GFraction widen_and_confirm(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m,
                            std::size_t trial_extra = 10);

// Largest allowed numerator prime for G(p_k, m) >= F: min(p_k + m, m F / (F - 1)),
// or p_k + m when F = 1.
double numerator_prime_bound(const GFraction& F, std::uint64_t p_k, std::uint64_t m);

// delta_1(p_k): smallest even d >= Delta(p_{k+1}) with
// G(p_{k+1}, e) >= 1 + e / p_{k+1} for e = d - Delta + 2, ..., d.
// Cached in memory and optionally on disk as lines "p delta1".
class Delta1Table {
public:
    explicit Delta1Table(const PrimeTable& primes, std::filesystem::path cache = {});

    std::uint64_t get(std::uint64_t p_k);
    // 4 * 2.55 (log p)^2.
    static std::uint64_t ceiling(std::uint64_t p_k);
    void save() const;

private:
    const PrimeTable& primes_;
    std::filesystem::path cache_;
    std::map<std::uint64_t, std::uint64_t> values_;
    bool dirty_ = false;
};

std::uint64_t compute_delta1(const PrimeTable& primes, std::uint64_t p_k);

// G(p_k, m) by the recursion over q in [p_{k+1} - m, q_hat]; needs m even,
// 9 delta1 / 2 <= m <= p_{k+1} - 3.
GFraction g_large(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m, std::uint64_t delta1);

// Threshold below which the H recursion is always used.
inline constexpr std::uint64_t kSmallGLimit = 3000;

struct GResult {
    GFraction fraction;
    std::string algorithm;  // "trivial", "small" or "large"
};

// Dispatch: g_large when m >= max(9 delta1 / 2, 3000), else g_small. Every
// value is checked against p_{k+1}/q <= G <= p_{k+1}/(p_{k+1} - m).
GResult g_function(const PrimeTable& primes, Delta1Table& delta1, std::uint64_t p_k, std::uint64_t m);

// Throws InvariantViolation when F breaks the bounds above, ell(F) > m or
// F < 1 + ell(F) / p_k.
void check_g_bounds(const PrimeTable& primes, std::uint64_t p_k, std::uint64_t m, const GFraction& F);

}  // namespace landau
