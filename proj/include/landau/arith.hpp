#pragma once

#include "landau/real.hpp"

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace landau {

// A positive rational U/V stored as its prime factorization with signed
// exponents. Keeps the additive cost ell and log of the value alongside.
//
// ell extends the additive function ell(p^a) = p^a to fractions by
// ell(U/V) = ell(U) - ell(V) for coprime U, V.
class PrimeFraction {
public:
    struct Factor {
        std::uint64_t prime;
        std::int32_t exponent;
        friend bool operator==(const Factor&, const Factor&) = default;
    };

    PrimeFraction() = default;  // the value 1

    // Sorts, merges repeated primes and drops zero exponents.
    static PrimeFraction from_factors(std::vector<Factor> factors);
    static PrimeFraction prime_power(std::uint64_t p, std::int32_t exponent = 1);
    // Trial division; intended for small literals in tests and parsing.
    static PrimeFraction from_integer(std::uint64_t value);

    std::span<const Factor> factors() const { return factors_; }
    std::int32_t exponent(std::uint64_t p) const;
    std::int64_t ell() const { return ell_; }
    const Real& log() const { return log_; }

    bool is_one() const { return factors_.empty(); }
    bool is_integer() const;
    std::uint64_t largest_prime() const;

    PrimeFraction numerator() const;
    PrimeFraction denominator() const;  // as a positive-exponent integer
    PrimeFraction inverse() const;

    // Exact numerator / denominator values.
    mpz_class numerator_value() const;
    mpz_class denominator_value() const;

    // Cache consistency: recompute ell and log from the factors.
    std::int64_t recompute_ell() const;
    Real recompute_log() const;

    friend PrimeFraction operator*(const PrimeFraction& a, const PrimeFraction& b);
    friend PrimeFraction operator/(const PrimeFraction& a, const PrimeFraction& b) {
        return a * b.inverse();
    }
    friend bool operator==(const PrimeFraction& a, const PrimeFraction& b) {
        return a.factors_ == b.factors_;
    }

private:
    std::vector<Factor> factors_;
    std::int64_t ell_ = 0;
    Real log_ = 0;
};

// ell(p^e) for e > 0, with overflow detection.
std::int64_t ell_prime_power(std::uint64_t p, std::int32_t e);

std::int64_t ell(const PrimeFraction& f);
PrimeFraction mul(const PrimeFraction& a, const PrimeFraction& b);

// Orders by logarithm; logs closer than the guard band are resolved by
// exact cross-multiplication.
std::strong_ordering cmp(const PrimeFraction& a, const PrimeFraction& b);

// Compares x with the exact rational num/den, same policy as cmp.
std::strong_ordering cmp_log_exact(const Real& log_a, const mpz_class& num_a,
                                   const mpz_class& den_a, const Real& log_b,
                                   const mpz_class& num_b, const mpz_class& den_b);

// Product of p^e over a list, by binary splitting.
mpz_class product_value(std::span<const std::pair<std::uint64_t, std::uint32_t>> powers);

// Full decimal digits of an integer fraction. Throws std::invalid_argument
// for non-integers and CapacityError past `digit_budget` digits.
std::string to_decimal(const PrimeFraction& f, std::size_t digit_budget = 10'000'000);

// Maximal run of consecutive primes sharing one exponent.
struct PrimeRun {
    std::uint64_t first;
    std::uint64_t last;
    std::uint32_t exponent;
};

// `2^9 * 3^6 * [11-41]^2 * [43-3923]`: runs of three or more consecutive
// primes become a bracket range; shorter runs are listed prime by prime.
std::string render_runs(std::span<const PrimeRun> runs);
std::vector<PrimeRun> runs_of(std::span<const std::pair<std::uint64_t, std::uint32_t>> powers);

// Canonical rendering `num / den`; a bare `num` for integers, `1` for one.
std::string render(const PrimeFraction& f);
// Accepts the grammar produced by render (and bracket ranges of any length).
PrimeFraction parse_fraction(std::string_view text);

}  // namespace landau
