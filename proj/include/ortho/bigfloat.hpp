#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace ortho {

namespace mp = boost::multiprecision;

/// Arbitrary-precision binary float (MPFR-backed, runtime mantissa width).
using BigFloat = mp::number<mp::mpfr_float_backend<0, mp::allocate_dynamic>, mp::et_off>;
/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using BigRational = mp::mpq_rational;
using BigInt = mp::mpz_int;

inline constexpr unsigned kDefaultMantissaBits = 128;
inline constexpr unsigned kMinMantissaBits = 53;

/// Decimal digit count whose MPFR translation carries at least `bits` mantissa bits.
inline unsigned digits_for_bits(unsigned bits) {
    // boost mpfr backend allocates digits10 * 1000/301 + {1,2} bits
    return static_cast<unsigned>((static_cast<unsigned long>(bits) * 301u + 999u) / 1000u);
}

/// Sets the process-wide default precision for newly constructed BigFloats.
/// The default is global in this boost version: call from single-threaded code
/// only; values already constructed keep their own precision and propagate it
/// through arithmetic.
inline void set_working_bits(unsigned bits) {
    BigFloat::default_precision(digits_for_bits(bits));
}

/// Zero-valued BigFloat carrying an explicit precision (safe to create inside
/// parallel regions regardless of the ambient default).
inline BigFloat make_zero(unsigned bits) {
    return BigFloat(0, digits_for_bits(bits));
}

/// Rational-to-float conversion at an explicit precision (independent of the
/// ambient default).
inline BigFloat to_bigfloat(const BigRational& q, unsigned bits) {
    const unsigned d = digits_for_bits(bits);
    BigFloat num(numerator(q), d);
    BigFloat den(denominator(q), d);
    return num / den;
}

}  // namespace ortho
