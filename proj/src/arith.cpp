#include "landau/arith.hpp"

#include "landau/errors.hpp"
#include "landau/primes.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace landau {

namespace {

std::int64_t signed_ell(const PrimeFraction::Factor& f) {
    return f.exponent > 0 ? ell_prime_power(f.prime, f.exponent)
                          : -ell_prime_power(f.prime, -f.exponent);
}

mpz_class product_range(std::span<const std::pair<std::uint64_t, std::uint32_t>> powers) {
    if (powers.empty()) return 1;
    if (powers.size() <= 8) {
        mpz_class acc = 1, t;
        for (auto [p, e] : powers) {
            mpz_ui_pow_ui(t.get_mpz_t(), p, e);
            acc *= t;
        }
        return acc;
    }
    auto mid = powers.size() / 2;
    return product_range(powers.first(mid)) * product_range(powers.subspan(mid));
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> side(std::span<const PrimeFraction::Factor> fs,
                                                          bool positive) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
    for (const auto& f : fs) {
        if (positive && f.exponent > 0) out.emplace_back(f.prime, static_cast<std::uint32_t>(f.exponent));
        if (!positive && f.exponent < 0)
            out.emplace_back(f.prime, static_cast<std::uint32_t>(-f.exponent));
    }
    return out;
}

}  // namespace

std::int64_t ell_prime_power(std::uint64_t p, std::int32_t e) {
    if (e <= 0) return 0;
    std::int64_t v = 1;
    for (std::int32_t i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(v, static_cast<std::int64_t>(p), &v))
            throw CapacityError("ell(" + std::to_string(p) + "^" + std::to_string(e) +
                                ") overflows 64 bits");
    }
    return v;
}

PrimeFraction PrimeFraction::from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.prime < b.prime; });
    PrimeFraction f;
    for (const auto& x : factors) {
        if (x.prime < 2) throw std::invalid_argument("factor base must be a prime");
        if (!f.factors_.empty() && f.factors_.back().prime == x.prime)
            f.factors_.back().exponent += x.exponent;
        else
            f.factors_.push_back(x);
    }
    std::erase_if(f.factors_, [](const Factor& x) { return x.exponent == 0; });
    for (const auto& x : f.factors_) {
        f.ell_ += signed_ell(x);
        f.log_ += Real(x.exponent) * log_u64(x.prime);
    }
    return f;
}

PrimeFraction PrimeFraction::prime_power(std::uint64_t p, std::int32_t exponent) {
    return from_factors({{p, exponent}});
}

PrimeFraction PrimeFraction::from_integer(std::uint64_t value) {
    if (value == 0) throw std::invalid_argument("zero has no factorization");
    std::vector<Factor> fs;
    for (std::uint64_t p = 2; p * p <= value; ++p) {
        std::int32_t e = 0;
        while (value % p == 0) {
            value /= p;
            ++e;
        }
        if (e) fs.push_back({p, e});
    }
    if (value > 1) fs.push_back({value, 1});
    return from_factors(std::move(fs));
}

std::int32_t PrimeFraction::exponent(std::uint64_t p) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                               [](const Factor& f, std::uint64_t v) { return f.prime < v; });
    return it != factors_.end() && it->prime == p ? it->exponent : 0;
}

bool PrimeFraction::is_integer() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.exponent > 0; });
}

std::uint64_t PrimeFraction::largest_prime() const { return factors_.empty() ? 1 : factors_.back().prime; }

PrimeFraction PrimeFraction::numerator() const {
    std::vector<Factor> fs;
    for (const auto& f : factors_)
        if (f.exponent > 0) fs.push_back(f);
    return from_factors(std::move(fs));
}

PrimeFraction PrimeFraction::denominator() const {
    std::vector<Factor> fs;
    for (const auto& f : factors_)
        if (f.exponent < 0) fs.push_back({f.prime, -f.exponent});
    return from_factors(std::move(fs));
}

PrimeFraction PrimeFraction::inverse() const {
    PrimeFraction r = *this;
    for (auto& f : r.factors_) f.exponent = -f.exponent;
    r.ell_ = -ell_;
    r.log_ = -log_;
    return r;
}

mpz_class PrimeFraction::numerator_value() const { return product_range(side(factors_, true)); }
mpz_class PrimeFraction::denominator_value() const { return product_range(side(factors_, false)); }

std::int64_t PrimeFraction::recompute_ell() const {
    std::int64_t s = 0;
    for (const auto& f : factors_) s += signed_ell(f);
    return s;
}

Real PrimeFraction::recompute_log() const {
    Real s = 0;
    for (const auto& f : factors_) s += Real(f.exponent) * log_u64(f.prime);
    return s;
}

PrimeFraction operator*(const PrimeFraction& a, const PrimeFraction& b) {
    using Factor = PrimeFraction::Factor;
    PrimeFraction r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    r.ell_ = a.ell_ + b.ell_;
    r.log_ = a.log_ + b.log_;
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->prime < j->prime)) {
            r.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->prime < i->prime) {
            r.factors_.push_back(*j++);
        } else {
            // shared prime: ell is not additive here, patch the cached value
            Factor merged{i->prime, i->exponent + j->exponent};
            r.ell_ -= signed_ell(*i) + signed_ell(*j);
            if (merged.exponent != 0) {
                r.ell_ += signed_ell(merged);
                r.factors_.push_back(merged);
            }
            ++i;
            ++j;
        }
    }
    if (r.factors_.empty()) r.log_ = 0;
    return r;
}

std::int64_t ell(const PrimeFraction& f) { return f.ell(); }
PrimeFraction mul(const PrimeFraction& a, const PrimeFraction& b) { return a * b; }

std::strong_ordering cmp(const PrimeFraction& a, const PrimeFraction& b) {
    if (!within_guard(a.log(), b.log())) return a.log() < b.log() ? std::strong_ordering::less
                                                                  : std::strong_ordering::greater;
    PrimeFraction q = a / b;
    if (q.is_one()) return std::strong_ordering::equal;
    int c = ::cmp(q.numerator_value(), q.denominator_value());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering cmp_log_exact(const Real& log_a, const mpz_class& num_a, const mpz_class& den_a,
                                   const Real& log_b, const mpz_class& num_b, const mpz_class& den_b) {
    if (!within_guard(log_a, log_b))
        return log_a < log_b ? std::strong_ordering::less : std::strong_ordering::greater;
    mpz_class lhs = num_a * den_b, rhs = num_b * den_a;
    int c = ::cmp(lhs, rhs);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

mpz_class product_value(std::span<const std::pair<std::uint64_t, std::uint32_t>> powers) {
    return product_range(powers);
}

std::string to_decimal(const PrimeFraction& f, std::size_t digit_budget) {
    if (!f.is_integer()) throw std::invalid_argument("to_decimal needs an integer, got " + render(f));
    double digits = static_cast<double>(f.log() / log(Real(10)));
    if (digits > static_cast<double>(digit_budget))
        throw CapacityError("decimal expansion needs about " + std::to_string(std::llround(digits)) +
                            " digits, budget is " + std::to_string(digit_budget));
    return f.numerator_value().get_str();
}

std::vector<PrimeRun> runs_of(std::span<const std::pair<std::uint64_t, std::uint32_t>> powers) {
    std::vector<PrimeRun> runs;
    for (auto [p, e] : powers) {
        if (!runs.empty() && runs.back().exponent == e) {
            std::uint64_t q = runs.back().last + 1;
            while (q < p && !is_prime_u64(q)) ++q;
            if (q == p) {
                runs.back().last = p;
                continue;
            }
        }
        runs.push_back({p, p, e});
    }
    return runs;
}

std::string render_runs(std::span<const PrimeRun> runs) {
    std::string out;
    auto put = [&out](std::string term, std::uint32_t e) {
        if (!out.empty()) out += " * ";
        out += term;
        if (e != 1) out += "^" + std::to_string(e);
    };
    for (const auto& r : runs) {
        if (r.first == r.last) {
            put(std::to_string(r.first), r.exponent);
            continue;
        }
        std::uint64_t second = r.first + 1;
        while (!is_prime_u64(second)) ++second;
        if (second == r.last) {
            put(std::to_string(r.first), r.exponent);
            put(std::to_string(r.last), r.exponent);
        } else {
            put("[" + std::to_string(r.first) + "-" + std::to_string(r.last) + "]", r.exponent);
        }
    }
    return out.empty() ? "1" : out;
}

std::string render(const PrimeFraction& f) {
    auto num = side(f.factors(), true);
    auto den = side(f.factors(), false);
    std::string out = render_runs(runs_of(num));
    if (!den.empty()) out += " / " + render_runs(runs_of(den));
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    PrimeFraction fraction() {
        std::vector<PrimeFraction::Factor> fs;
        product(fs, 1);
        skip();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            skip();
            bool paren = eat('(');
            product(fs, -1);
            if (paren && !eat(')')) fail("expected ')'");
        }
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return PrimeFraction::from_factors(std::move(fs));
    }

private:
    void product(std::vector<PrimeFraction::Factor>& fs, int sign) {
        factor(fs, sign);
        for (;;) {
            skip();
            if (!eat('*')) return;
            factor(fs, sign);
        }
    }

    void factor(std::vector<PrimeFraction::Factor>& fs, int sign) {
        skip();
        std::uint64_t lo, hi;
        bool range = eat('[');
        lo = number();
        if (range) {
            skip();
            if (!eat('-')) fail("expected '-' in range");
            hi = number();
            skip();
            if (!eat(']')) fail("expected ']'");
            if (hi < lo) fail("empty prime range");
        } else {
            hi = lo;
        }
        std::int64_t e = 1;
        skip();
        if (eat('^')) e = static_cast<std::int64_t>(number());
        if (e <= 0 || e > (1 << 30)) fail("bad exponent");
        if (!range) {
            if (lo == 1 && e == 1) return;
            if (!is_prime_u64(lo)) {
                // plain integers are accepted and factored
                auto parts = PrimeFraction::from_integer(lo);
                for (const auto& f : parts.factors())
                    fs.push_back({f.prime, static_cast<std::int32_t>(sign * f.exponent * e)});
                return;
            }
            fs.push_back({lo, static_cast<std::int32_t>(sign * e)});
            return;
        }
        if (!is_prime_u64(lo) || !is_prime_u64(hi)) fail("range bounds must be primes");
        for (std::uint64_t p = lo; p <= hi; ++p)
            if (is_prime_u64(p)) fs.push_back({p, static_cast<std::int32_t>(sign * e)});
    }

    std::uint64_t number() {
        skip();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc()) fail("expected a number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        return v;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("cannot parse '" + std::string(s_) + "' at offset " +
                                    std::to_string(pos_) + ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

PrimeFraction parse_fraction(std::string_view text) { return Parser(text).fraction(); }

}  // namespace landau
