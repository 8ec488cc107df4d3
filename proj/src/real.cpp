#include "landau/real.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <sstream>
#include <stdexcept>

namespace landau {

namespace {

std::atomic<int> g_digits{30};

// 10 * 10^-d for every admissible d
const std::array<Real, 15>& guard_units() {
    static const std::array<Real, 15> units = [] {
        std::array<Real, 15> u;
        for (int d = 20; d <= 34; ++d) u[d - 20] = Real(10) * pow(Real(10), -d);
        return u;
    }();
    return units;
}

}  // namespace

void set_precision_digits(int digits) {
    if (digits < 20 || digits > 34)
        throw std::invalid_argument("precision must be between 20 and 34 digits");
    g_digits.store(digits);
}

int precision_digits() noexcept { return g_digits.load(); }

Real guard_band(const Real& a, const Real& b) {
    Real scale = std::max({Real(1), abs(a), abs(b)});
    return guard_units()[precision_digits() - 20] * scale;
}

bool within_guard(const Real& a, const Real& b) { return abs(a - b) <= guard_band(a, b); }

Real log_u64(std::uint64_t x) { return log(Real(x)); }

std::string to_string(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

}  // namespace landau
