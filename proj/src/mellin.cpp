#include "ortho/mellin.hpp"

#include <vector>

namespace ortho {

namespace {

// Akiyama-Tanigawa: exact Bernoulli numbers, even indices only.
std::vector<BigRational> generate_bernoulli_even(std::size_t count) {
    const std::size_t n_max = 2 * count;
    std::vector<BigRational> a(n_max + 1);
    std::vector<BigRational> even;
    even.reserve(count);
    for (std::size_t m = 0; m <= n_max; ++m) {
        a[m] = BigRational(1, static_cast<long>(m + 1));
        for (std::size_t j = m; j >= 1; --j) {
            a[j - 1] = BigRational(static_cast<long>(j)) * (a[j - 1] - a[j]);
        }
        if (m >= 2 && m % 2 == 0) even.push_back(a[0]);
    }
    return even;  // even[j-1] = B_{2j}
}

}  // namespace

const BigRational& bernoulli_2j(std::size_t j) {
    constexpr std::size_t kCount = 72;
    static const std::vector<BigRational> table = generate_bernoulli_even(kCount);
    if (j == 0 || j > table.size()) {
        throw std::out_of_range("bernoulli_2j index out of cached range");
    }
    return table[j - 1];
}

WallValues wall_values(double x, double y, const EvaluationTolerance& tol,
                       const EvaluatorOptions& opts) {
    const CplxD z{x, y};
    if (detail::nonneg_integer_distance(z) < opts.pole_exclusion) {
        throw PoleError("wall evaluation inside the pole-exclusion radius");
    }
    // leading terms of the separated series, explicit; tail shared with the
    // paired complex form starting at an even index
    long lead = std::max(8L, static_cast<long>(std::ceil(std::max(0.0, x))) + 4);
    if (lead % 2 != 0) ++lead;
    long K = std::max<long>(lead / 2,
                            24 + static_cast<long>(std::ceil(std::abs(y) / 8.0)));
    const long J = 2 * K;
    WallValues wv;
    for (long j = 0; j < J; ++j) {
        const double dx = x - static_cast<double>(j);
        const double den = dx * dx + y * y;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        wv.re += sign * dx / den;
        wv.im -= sign * y / den;
    }
    double em_err = 0;
    CplxD tail = detail::paired_tail(z, K, 8, kDefaultMantissaBits, &em_err);
    if (em_err > tol.abs_tol) {
        // one refinement: push the explicit part further out
        const long K2 = 4 * K;
        for (long j = J; j < 2 * K2; ++j) {
            const double dx = x - static_cast<double>(j);
            const double den = dx * dx + y * y;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            wv.re += sign * dx / den;
            wv.im -= sign * y / den;
        }
        tail = detail::paired_tail(z, K2, 8, kDefaultMantissaBits, &em_err);
        if (em_err > tol.abs_tol) {
            throw NonConvergenceError("wall series tail not resolved to tolerance");
        }
    }
    wv.re += tail.re;
    wv.im += tail.im;
    return wv;
}

double asymptotic_deviation(const CplxD& s, const DigammaParams& params,
                            const EvaluatorOptions& opts) {
    const CplxD minus_s = -s;
    CplxD g = g_star(minus_s, params, opts);
    CplxD expected = CplxD{1.0, 0.0} + inverse(CplxD{2.0, 0.0} * s);
    return norm_sq(s) * abs_val(g - expected);
}

}  // namespace ortho
