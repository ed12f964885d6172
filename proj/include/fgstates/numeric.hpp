#pragma once

#include <cassert>
#include <complex>
#include <cstdint>

namespace fgstates {

using Complex = std::complex<double>;

/// base^e for a non-negative integer exponent, with the convention 0^0 = 1.
/// Binary powering; at e = 1 the result is bitwise equal to base.
inline double ipow(double base, std::int64_t e) {
  assert(e >= 0);
  double r = 1.0;
  double b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

/// z^j for unimodular z and any integer j.  Negative powers use the
/// conjugate so the modulus never drifts: z^-1 = conj(z) when |z| = 1.
inline Complex unit_power(Complex z, std::int64_t j) {
  const bool neg = j < 0;
  std::uint64_t e = neg ? static_cast<std::uint64_t>(-(j + 1)) + 1 : static_cast<std::uint64_t>(j);
  Complex r{1.0, 0.0};
  Complex b = z;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return neg ? std::conj(r) : r;
}

}  // namespace fgstates
