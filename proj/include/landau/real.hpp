#pragma once

#include <boost/multiprecision/float128.hpp>

#include <cstdint>
#include <string>

namespace landau {

// Quad precision (113-bit mantissa, ~34 significant digits). Every
// logarithm in the library is carried in this type.
using Real = boost::multiprecision::float128;

// Working precision in decimal digits used to size the comparison guard
// band. Must lie in [20, 34]; set once at start-up before any computation.
void set_precision_digits(int digits);
int precision_digits() noexcept;

// Absolute guard band for comparing two logarithms: ten units in the last
// place of the working precision, scaled by the larger magnitude.
Real guard_band(const Real& a, const Real& b);

// true when a and b are too close to be ordered by their logarithms alone.
bool within_guard(const Real& a, const Real& b);

Real log_u64(std::uint64_t x);

std::string to_string(const Real& x, int digits = 30);

}  // namespace landau
