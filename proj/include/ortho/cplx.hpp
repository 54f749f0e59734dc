#pragma once

#include <cmath>

#include "ortho/bigfloat.hpp"

namespace ortho {

/// Minimal complex number over `double` or `BigFloat`.
///
/// std::complex is only specified for the builtin floating types, so the
/// high-precision instantiation needs its own type; the double instantiation
/// uses the same code path to keep the two evaluators byte-for-byte identical
/// in structure.
template <class Real>
struct Cplx {
    Real re{};
    Real im{};

    Cplx() = default;
    Cplx(Real r) : re(std::move(r)) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Real& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        // Smith's algorithm: avoids overflow for the double instantiation.
        using std::abs;
        if (abs(b.re) >= abs(b.im)) {
            Real t = b.im / b.re;
            Real d = b.re + b.im * t;
            return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
        }
        Real t = b.re / b.im;
        Real d = b.re * t + b.im;
        return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
    }
    Cplx& operator+=(const Cplx& b) { re += b.re; im += b.im; return *this; }
    Cplx& operator-=(const Cplx& b) { re -= b.re; im -= b.im; return *this; }
    Cplx& operator*=(const Cplx& b) { *this = *this * b; return *this; }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
};

template <class Real>
Cplx<Real> conj(const Cplx<Real>& z) { return {z.re, -z.im}; }

template <class Real>
Real norm_sq(const Cplx<Real>& z) { return z.re * z.re + z.im * z.im; }

template <class Real>
Real abs_val(const Cplx<Real>& z) {
    using std::hypot;
    return hypot(z.re, z.im);
}

template <class Real>
Real arg_val(const Cplx<Real>& z) {
    using std::atan2;
    return atan2(z.im, z.re);
}

/// Reciprocal via Smith division of 1.
template <class Real>
Cplx<Real> inverse(const Cplx<Real>& z) { return Cplx<Real>(Real(1)) / z; }

/// Principal branch logarithm.
template <class Real>
Cplx<Real> log_c(const Cplx<Real>& z) {
    using std::atan2;
    using std::log;
    return {log(abs_val(z)), atan2(z.im, z.re)};
}

template <class Real>
Cplx<Real> exp_c(const Cplx<Real>& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

template <class Real>
bool is_finite(const Cplx<Real>& z) {
    using std::isfinite;
    return isfinite(z.re) && isfinite(z.im);
}

using CplxD = Cplx<double>;
using CplxBig = Cplx<BigFloat>;

inline CplxD to_double(const CplxBig& z) {
    return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline CplxBig to_big(const CplxD& z, unsigned bits) {
    const unsigned d = digits_for_bits(bits);
    return {BigFloat(z.re, d), BigFloat(z.im, d)};
}

}  // namespace ortho
