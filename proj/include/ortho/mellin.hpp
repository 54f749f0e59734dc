#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ortho/bigfloat.hpp"
#include "ortho/cplx.hpp"
#include "ortho/errors.hpp"

namespace ortho {

/// Absolute-error target and term budget for the series evaluators.
struct EvaluationTolerance {
    double abs_tol = 1e-12;
    int max_terms = 2'000'000;
};

/// Shared knobs for the complex evaluators.
struct EvaluatorOptions {
    /// No series evaluation closer than this to a nonnegative-integer pole.
    double pole_exclusion = 1e-3;
    /// Hard guard for the digamma-backed evaluators (true pole proximity).
    double pole_guard = 1e-9;
};

/// Exact Bernoulli number B_{2j} (B_2 = 1/6, B_4 = -1/30, ...), j >= 1.
/// Generated once by the Akiyama-Tanigawa recurrence; exact, so safe to
/// convert at any working precision.
const BigRational& bernoulli_2j(std::size_t j);

/// Digamma evaluation parameters: arguments are shifted upward by the
/// recurrence psi(w) = psi(w+1) - 1/w until Re(w) >= shift_threshold, then the
/// asymptotic series log w - 1/(2w) - sum B_{2j}/(2j w^{2j}) is truncated
/// after `terms` terms.
struct DigammaParams {
    double shift_threshold = 10.0;
    int terms = 7;  // through 1/w^14

    static DigammaParams for_bits(unsigned bits) {
        if (bits <= 64) return {10.0, 7};
        DigammaParams p;
        p.shift_threshold = std::max(10.0, 0.32 * static_cast<double>(bits));
        p.terms = std::min(64, static_cast<int>(bits / 8) + 4);
        return p;
    }
};

namespace detail {

template <class Real>
Real real_of(const Cplx<Real>& z) { return z.re; }

/// Distance from z to the nearest integer m with m >= 0 (poles of the
/// alternating partial-fraction series); also reports that integer.
template <class Real>
double nonneg_integer_distance(const Cplx<Real>& z, long* nearest = nullptr) {
    double x = static_cast<double>(z.re);
    double y = static_cast<double>(z.im);
    long m = std::lround(std::max(0.0, x));
    if (m < 0) m = 0;
    if (nearest) *nearest = m;
    return std::hypot(x - static_cast<double>(m), y);
}

}  // namespace detail

/// psi(w) for complex w off the nonpositive integers.
template <class Real>
Cplx<Real> digamma(Cplx<Real> w, const DigammaParams& params = {},
                   const EvaluatorOptions& opts = {}) {
    {
        double x = static_cast<double>(w.re);
        double y = static_cast<double>(w.im);
        if (x < 0.5) {
            double m = std::round(x);
            if (m <= 0.0 && std::hypot(x - m, y) < opts.pole_guard) {
                throw PoleError("digamma pole at nonpositive integer");
            }
        }
    }
    Cplx<Real> shift_sum{w.re - w.re, w.re - w.re};  // zero at w's precision
    while (w.re < params.shift_threshold) {
        shift_sum += inverse(w);
        w.re += 1;
    }
    // asymptotic series at the shifted argument
    Cplx<Real> inv = inverse(w);
    Cplx<Real> inv2 = inv * inv;
    Cplx<Real> result = log_c(w) - Real(0.5) * inv;
    Cplx<Real> p = inv2;
    for (int j = 1; j <= params.terms; ++j) {
        const BigRational coeff = bernoulli_2j(static_cast<std::size_t>(j)) /
                                  BigRational(2 * j);
        Real c;
        if constexpr (std::is_same_v<Real, double>) {
            c = static_cast<double>(coeff);
        } else {
            c = to_bigfloat(coeff, static_cast<unsigned>(w.re.precision() * 10) / 3 + 8);
        }
        result -= c * p;
        p *= inv2;
    }
    return result - shift_sum;
}

/// Modified Mellin transform of 2/(1+t): g*(z) = z (psi(-z/2) - psi((1-z)/2)),
/// with the removable singularity g*(0) = 2 taken exactly.
template <class Real>
Cplx<Real> g_star(const Cplx<Real>& z, const DigammaParams& params = {},
                  const EvaluatorOptions& opts = {}) {
    if (z.re == 0 && z.im == 0) return Cplx<Real>(Real(2));
    {
        double x = static_cast<double>(z.re);
        double y = static_cast<double>(z.im);
        double m = std::round(x);
        if (m >= 1.0 && std::hypot(x - m, y) < opts.pole_guard) {
            throw PoleError("g* pole at positive integer");
        }
    }
    Cplx<Real> half(Real(0.5));
    Cplx<Real> w1 = -half * z;
    Cplx<Real> w2 = half * (Cplx<Real>(Real(1)) - z);
    return z * (digamma(w1, params, opts) - digamma(w2, params, opts));
}

/// Alternating partial-fraction series sum (-1)^j / (z - j) evaluated through
/// the digamma representation; the primary evaluator for zero location.
template <class Real>
Cplx<Real> d_infty(const Cplx<Real>& z, const DigammaParams& params = {},
                   const EvaluatorOptions& opts = {}) {
    long nearest = 0;
    if (detail::nonneg_integer_distance(z, &nearest) < opts.pole_guard) {
        throw PoleError("D series pole at nonnegative integer");
    }
    Cplx<Real> half(Real(0.5));
    Cplx<Real> w1 = -half * z;
    Cplx<Real> w2 = half * (Cplx<Real>(Real(1)) - z);
    return half * (digamma(w1, params, opts) - digamma(w2, params, opts));
}

namespace detail {

/// Euler-Maclaurin tail of the paired series starting at pair index K:
///   sum_{k>=K} [1/(z-2k) - 1/(z-2k-1)]
/// together with a crude magnitude estimate of the first omitted correction.
template <class Real>
Cplx<Real> paired_tail(const Cplx<Real>& z, long K, int orders, unsigned bits,
                       double* err_estimate) {
    const Cplx<Real> a = z - Cplx<Real>(Real(2 * K));      // z - 2K
    const Cplx<Real> b = z - Cplx<Real>(Real(2 * K + 1));  // z - 2K - 1
    const Cplx<Real> ia = inverse(a);
    const Cplx<Real> ib = inverse(b);
    // integral term (1/2) log((z-2K)/(z-2K-1)); ratio near 1, principal branch
    Cplx<Real> tail = Real(0.5) * log_c(a / b);
    // half of the first pair
    tail += Real(0.5) * (ia - ib);
    // correction terms -B_{2j} 2^{2j-1}/(2j) [ (z-2K)^{-2j} - (z-2K-1)^{-2j} ]
    Cplx<Real> pa = ia * ia;
    Cplx<Real> pb = ib * ib;
    double last_mag = 0;
    for (int j = 1; j <= orders; ++j) {
        const BigRational coeff = bernoulli_2j(static_cast<std::size_t>(j)) *
                                  BigRational(BigInt(1) << (2 * j - 1), 2 * j);
        Real c;
        if constexpr (std::is_same_v<Real, double>) {
            c = static_cast<double>(coeff);
        } else {
            c = to_bigfloat(coeff, bits);
        }
        Cplx<Real> term = c * (pa - pb);
        tail -= term;
        last_mag = static_cast<double>(abs_val(term));
        pa *= ia * ia;
        pb *= ib * ib;
    }
    if (err_estimate) *err_estimate = last_mag * 8.0;
    return tail;
}

/// Same for the termwise derivative: sum_{k>=K} -[(z-2k)^{-2} - (z-2k-1)^{-2}].
template <class Real>
Cplx<Real> paired_tail_prime(const Cplx<Real>& z, long K, int orders, unsigned bits,
                             double* err_estimate) {
    const Cplx<Real> a = z - Cplx<Real>(Real(2 * K));
    const Cplx<Real> b = z - Cplx<Real>(Real(2 * K + 1));
    const Cplx<Real> ia = inverse(a);
    const Cplx<Real> ib = inverse(b);
    // integral term (1/2)[(z-2K)^{-1} - (z-2K-1)^{-1}]
    Cplx<Real> tail = Real(0.5) * (ia - ib);
    // half of the first term: -(1/2)[(z-2K)^{-2} - (z-2K-1)^{-2}]
    Cplx<Real> pa = ia * ia;
    Cplx<Real> pb = ib * ib;
    tail -= Real(0.5) * (pa - pb);
    // corrections +B_{2j} 2^{2j-1} [ (z-2K)^{-(2j+1)} - (z-2K-1)^{-(2j+1)} ]
    Cplx<Real> qa = pa * ia;
    Cplx<Real> qb = pb * ib;
    double last_mag = 0;
    for (int j = 1; j <= orders; ++j) {
        const BigRational coeff = bernoulli_2j(static_cast<std::size_t>(j)) *
                                  BigRational(BigInt(1) << (2 * j - 1));
        Real c;
        if constexpr (std::is_same_v<Real, double>) {
            c = static_cast<double>(coeff);
        } else {
            c = to_bigfloat(coeff, bits);
        }
        Cplx<Real> term = c * (qa - qb);
        tail += term;
        last_mag = static_cast<double>(abs_val(term));
        qa *= ia * ia;
        qb *= ib * ib;
    }
    if (err_estimate) *err_estimate = last_mag * 8.0;
    return tail;
}

/// Chebyshev-style acceleration of an alternating series sum (-1)^k a(k)
/// (Cohen-Rodriguez Villegas-Zagier weights); geometric error decay in n.
/// `one` fixes the working precision of the weight recurrences.
template <class Real, class TermFn>
Cplx<Real> alternating_acceleration(int n, const Real& one, TermFn&& a) {
    using std::sqrt;
    const Real d = Real(3) * one + Real(2) * sqrt(Real(2) * one);
    Real dn = one;
    for (int i = 0; i < n; ++i) dn *= d;
    dn = (dn + one / dn) / Real(2);
    Real b = -one;
    Real c = -dn;
    Cplx<Real> s{};
    for (int k = 0; k < n; ++k) {
        c = b - c;
        s += c * a(k);
        b = b * Real(k + n) * Real(k - n) / (Real(k) + Real(0.5)) / Real(k + 1);
    }
    return s / dn;
}

}  // namespace detail

/// D(z) = sum (-1)^j / (z - j) by direct series machinery: leading terms
/// explicitly, then Chebyshev acceleration of the alternating tail, falling
/// back to the paired form with Euler-Maclaurin tail corrections when the
/// acceleration cannot certify the tolerance. Independent of the digamma
/// route.
template <class Real>
Cplx<Real> d_infty_series(const Cplx<Real>& z, const EvaluationTolerance& tol = {},
                          const EvaluatorOptions& opts = {}) {
    if (detail::nonneg_integer_distance(z) < opts.pole_exclusion) {
        throw PoleError("D series pole within exclusion radius");
    }
    const double x = static_cast<double>(z.re);
    const double y = std::abs(static_cast<double>(z.im));
    const double digits = -std::log10(std::max(tol.abs_tol, 1e-300));

    // Accelerated route: viable when the alternating weights stay temperate.
    if (y <= 12.0 && std::abs(x) <= 32.0 && digits <= 20.0) {
        const long j0 = std::max(0L, static_cast<long>(std::floor(x)) + 2);
        Cplx<Real> lead{};
        for (long j = 0; j < j0; ++j) {
            Cplx<Real> t = inverse(z - Cplx<Real>(Real(j)));
            lead += (j % 2 == 0) ? t : -t;
        }
        auto a = [&](int m) { return inverse(Cplx<Real>(Real(j0 + m)) - z); };
        int n = static_cast<int>((digits * 2.302585 + 1.2 * y + 2.0 * std::log1p(x * x + y * y) + 6.0) / 1.7627) + 4;
        n = std::min(n, 220);
        Real one = z.re - z.re + Real(1);  // unit at z's precision
        Cplx<Real> t1 = detail::alternating_acceleration(n, one, a);
        Cplx<Real> t2 = detail::alternating_acceleration(n + 10, one, a);
        double disagree = static_cast<double>(abs_val(t1 - t2));
        if (disagree <= tol.abs_tol * 0.5) {
            Cplx<Real> tail = (j0 % 2 == 0) ? -t2 : t2;
            // wrapper: sum_{j>=j0} (-1)^j/(z-j) = (-1)^{j0+1} sum_m (-1)^m a(m)
            return lead + tail;
        }
    }

    // Paired series with Euler-Maclaurin tail corrections.
    unsigned bits = kDefaultMantissaBits;
    if constexpr (!std::is_same_v<Real, double>) {
        bits = static_cast<unsigned>(z.re.precision()) * 10 / 3 + 8;
    }
    long K = std::max<long>(24, static_cast<long>(std::ceil((std::max(0.0, x) + y / 4.0) / 2.0)) + 12);
    const int orders = 8;
    while (true) {
        if (2 * K > tol.max_terms) {
            throw NonConvergenceError("paired series exhausted its term budget");
        }
        Cplx<Real> partial{};
        for (long k = 0; k < K; ++k) {
            Cplx<Real> a = z - Cplx<Real>(Real(2 * k));
            Cplx<Real> b = z - Cplx<Real>(Real(2 * k + 1));
            partial += inverse(a) - inverse(b);
        }
        double em_err = 0;
        Cplx<Real> tail = detail::paired_tail(z, K, orders, bits, &em_err);
        if (em_err <= tol.abs_tol * 0.5) return partial + tail;
        K *= 2;
    }
}

/// Termwise derivative -sum (-1)^j / (z - j)^2, same two-route scheme.
template <class Real>
Cplx<Real> d_infty_prime(const Cplx<Real>& z, const EvaluationTolerance& tol = {},
                         const EvaluatorOptions& opts = {}) {
    if (detail::nonneg_integer_distance(z) < opts.pole_exclusion) {
        throw PoleError("D series pole within exclusion radius");
    }
    const double x = static_cast<double>(z.re);
    const double y = std::abs(static_cast<double>(z.im));
    const double digits = -std::log10(std::max(tol.abs_tol, 1e-300));

    if (y <= 12.0 && std::abs(x) <= 32.0 && digits <= 20.0) {
        const long j0 = std::max(0L, static_cast<long>(std::floor(x)) + 2);
        Cplx<Real> lead{};
        for (long j = 0; j < j0; ++j) {
            Cplx<Real> t = inverse(z - Cplx<Real>(Real(j)));
            t = t * t;
            lead -= (j % 2 == 0) ? t : -t;
        }
        auto a = [&](int m) {
            Cplx<Real> t = inverse(Cplx<Real>(Real(j0 + m)) - z);
            return t * t;
        };
        int n = static_cast<int>((digits * 2.302585 + 1.2 * y + 2.0 * std::log1p(x * x + y * y) + 6.0) / 1.7627) + 4;
        n = std::min(n, 220);
        Real one = z.re - z.re + Real(1);
        Cplx<Real> t1 = detail::alternating_acceleration(n, one, a);
        Cplx<Real> t2 = detail::alternating_acceleration(n + 10, one, a);
        if (static_cast<double>(abs_val(t1 - t2)) <= tol.abs_tol * 0.5) {
            // -sum_{j>=j0} (-1)^j/(z-j)^2 = -(-1)^{j0} sum_m (-1)^m a(m)
            Cplx<Real> tail = (j0 % 2 == 0) ? -t2 : t2;
            return lead + tail;
        }
    }

    unsigned bits = kDefaultMantissaBits;
    if constexpr (!std::is_same_v<Real, double>) {
        bits = static_cast<unsigned>(z.re.precision()) * 10 / 3 + 8;
    }
    long K = std::max<long>(24, static_cast<long>(std::ceil((std::max(0.0, x) + y / 4.0) / 2.0)) + 12);
    const int orders = 8;
    while (true) {
        if (2 * K > tol.max_terms) {
            throw NonConvergenceError("paired derivative series exhausted its term budget");
        }
        Cplx<Real> partial{};
        for (long k = 0; k < K; ++k) {
            Cplx<Real> ia = inverse(z - Cplx<Real>(Real(2 * k)));
            Cplx<Real> ib = inverse(z - Cplx<Real>(Real(2 * k + 1)));
            partial -= ia * ia - ib * ib;
        }
        double em_err = 0;
        Cplx<Real> tail = detail::paired_tail_prime(z, K, orders, bits, &em_err);
        if (em_err <= tol.abs_tol * 0.5) return partial + tail;
        K *= 2;
    }
}

/// Real and imaginary parts of D(x + iy) through the separated real series
///   Re = sum (-1)^j (x-j)/((x-j)^2+y^2),  Im = -y sum (-1)^j/((x-j)^2+y^2),
/// leading terms summed explicitly, ragged tail via the paired corrections.
struct WallValues {
    double re = 0;
    double im = 0;
};

WallValues wall_values(double x, double y, const EvaluationTolerance& tol = {},
                       const EvaluatorOptions& opts = {});

/// |s|^2 |g*(-s) - 1 - 1/(2s)|: bounded along vertical lines.
double asymptotic_deviation(const CplxD& s, const DigammaParams& params = {},
                            const EvaluatorOptions& opts = {});

}  // namespace ortho
