#include "ortho/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ortho/errors.hpp"

namespace ortho {

ShiftedSequence::ShiftedSequence(const ExactCoefficientTable* exact,
                                 const FloatCoefficientTable* flt)
    : exact_(exact), flt_(flt) {
    if (!exact_ && !flt_) throw std::invalid_argument("sequence needs a backing table");
    std::size_t coeffs = flt_ ? flt_->size() : exact_->size();
    if (exact_ && flt_) coeffs = std::min(exact_->size(), flt_->size());
    max_index_ = coeffs;  // a_n = c_{n-1}: n runs 1..coeffs
    a_double_.assign(coeffs + 1, 0.0);
    for (std::size_t n = 1; n <= coeffs; ++n) {
        a_double_[n] = flt_ ? static_cast<double>((*flt_)[n - 1])
                            : static_cast<double>((*exact_)[n - 1]);
    }
}

const BigRational& ShiftedSequence::a_exact(std::size_t n) const {
    if (!exact_) throw std::logic_error("no exact backing table");
    if (n < 1 || n - 1 > exact_->max_index()) throw CoverageError("a_n outside exact table");
    return (*exact_)[n - 1];
}

namespace {

std::size_t floor_index(const BigRational& x) {
    BigInt q = numerator(x) / denominator(x);  // truncation; x >= 0 in our uses
    return static_cast<std::size_t>(q.convert_to<unsigned long>());
}

void check_exact_coverage(const ShiftedSequence& seq, std::size_t n, const char* what) {
    if (!seq.has_exact()) throw std::logic_error(std::string(what) + " needs exact mode");
    if (n > seq.max_index()) {
        throw CoverageError(std::string(what) + " needs table coverage through a_" +
                            std::to_string(n));
    }
}

}  // namespace

BigRational eval_A_exact(const BigRational& x, const ShiftedSequence& seq) {
    if (x < 0) throw std::domain_error("A defined for x >= 0");
    if (x < 1) return BigRational(0);
    const std::size_t m = floor_index(x);
    check_exact_coverage(seq, m, "A evaluation");
    BigRational s = 0;
    for (std::size_t n = 1; n <= m; ++n) s += seq.a_exact(n);
    return s;
}

double eval_A(double x, const ShiftedSequence& seq) {
    if (x < 0) throw std::domain_error("A defined for x >= 0");
    if (x < 1) return 0.0;
    const auto m = static_cast<std::size_t>(std::floor(x));
    if (m > seq.max_index()) throw CoverageError("A evaluation beyond table");
    double s = 0;
    for (std::size_t n = 1; n <= m; ++n) s += seq.a(n);
    return s;
}

BigRational eval_Ag_exact(const BigRational& x, const ShiftedSequence& seq) {
    if (x < 1) throw std::domain_error("A_g defined for x >= 1");
    const std::size_t m = floor_index(x);
    check_exact_coverage(seq, m, "A_g evaluation");
    BigRational s = 0;
    for (std::size_t n = 1; n <= m; ++n) {
        s += seq.a_exact(n) * BigRational(2) * x / (x + BigRational(static_cast<long>(n)));
    }
    return s;
}

double eval_Ag(double x, const ShiftedSequence& seq) {
    if (x < 1) throw std::domain_error("A_g defined for x >= 1");
    const auto m = static_cast<std::size_t>(std::floor(x));
    if (m > seq.max_index()) throw CoverageError("A_g evaluation beyond table");
    double s = 0;
    for (std::size_t n = 1; n <= m; ++n) {
        s += seq.a(n) * 2.0 * x / (x + static_cast<double>(n));
    }
    return s;
}

BigRational discrete_volterra_defect(std::size_t x, const ShiftedSequence& seq) {
    if (x < 1) throw std::domain_error("identity stated for x >= 1");
    check_exact_coverage(seq, x, "Volterra identity");
    const BigRational xr(static_cast<long>(x));
    // closed form of the step-function integral: per-n antiderivative of
    // 1/(x+t)^2 over [n, x] gives 1/(x+n) - 1/(2x)
    BigRational integral = 0;
    for (std::size_t n = 1; n <= x; ++n) {
        integral += seq.a_exact(n) *
                    (BigRational(1) / (xr + BigRational(static_cast<long>(n))) -
                     BigRational(1, 2) / xr);
    }
    return eval_Ag_exact(xr, seq) - eval_A_exact(xr, seq) - BigRational(2) * xr * integral;
}

BigRational ag_identity_defect(std::size_t n, const ShiftedSequence& seq) {
    if (n < 2) throw std::domain_error("identity stated for N >= 2");
    check_exact_coverage(seq, n + 1, "A_g(N) identity");
    const BigRational nr(static_cast<long>(n));
    const BigRational rhs = BigRational(-2) * nr / (BigRational(2) * nr + 1) *
                            seq.a_exact(n + 1);
    return eval_Ag_exact(nr, seq) - rhs;
}

BootstrapReport bootstrap_check(std::size_t n, const ShiftedSequence& seq) {
    if (n < 2) throw std::domain_error("identity stated for N >= 2");
    check_exact_coverage(seq, n, "bootstrap identity");
    const long N = static_cast<long>(n);
    auto f = [&](long k) {
        return BigRational(N - k) / (BigRational(N + k - 1) * BigRational(N + k));
    };
    BootstrapReport rep{BigRational(0), BigRational(0)};
    // sum_{k=1}^{N-1} A(k) (f(k+1) - f(k)), with running exact A(k)
    BigRational a_running = 0;
    BigRational rhs = 0;
    const BigRational n2(N * N);
    for (long k = 1; k <= N - 1; ++k) {
        a_running += seq.a_exact(static_cast<std::size_t>(k));
        const BigRational delta = f(k + 1) - f(k);
        rhs += a_running * delta;
        const BigRational scaled = n2 * abs(delta);
        if (scaled > rep.max_scaled_delta) rep.max_scaled_delta = scaled;
    }
    rep.defect = eval_Ag_exact(BigRational(N), seq) - rhs;
    return rep;
}

namespace {

BigFloat ag_float(std::size_t x, const FloatCoefficientTable& table) {
    if (x > table.size()) throw CoverageError("A_g evaluation beyond float table");
    const unsigned bits = table.config().mantissa_bits;
    const BigFloat xf(static_cast<long>(x), digits_for_bits(bits));
    BigFloat s = make_zero(bits);
    for (std::size_t n = 1; n <= x; ++n) {
        s += table[n - 1] * 2 * xf / (xf + static_cast<long>(n));
    }
    return s;
}

}  // namespace

BigFloat discrete_volterra_defect_float(std::size_t x, const FloatCoefficientTable& table) {
    if (x < 1) throw std::domain_error("identity stated for x >= 1");
    const unsigned bits = table.config().mantissa_bits;
    const BigFloat xf(static_cast<long>(x), digits_for_bits(bits));
    BigFloat integral = make_zero(bits);
    for (std::size_t n = 1; n <= x; ++n) {
        integral += table[n - 1] * (1 / (xf + static_cast<long>(n)) - 1 / (2 * xf));
    }
    // A(x) = C_{x-1}
    const BigFloat a_val = table.partial_sum(x - 1);
    return ag_float(x, table) - a_val - 2 * xf * integral;
}

BigFloat ag_identity_defect_float(std::size_t n, const FloatCoefficientTable& table) {
    if (n < 2) throw std::domain_error("identity stated for N >= 2");
    if (n >= table.size()) throw CoverageError("identity needs c_N in the table");
    const unsigned bits = table.config().mantissa_bits;
    const BigFloat nf(static_cast<long>(n), digits_for_bits(bits));
    const BigFloat rhs = -2 * nf / (2 * nf + 1) * table[n];  // a_{N+1} = c_N
    return ag_float(n, table) - rhs;
}

std::vector<double> apply_transfer(const ShiftedSequence& seq, const ResolventGrid& rg,
                                   std::span<const double> xs) {
    std::vector<double> out;
    out.reserve(xs.size());
    const double h = rg.grid.step;
    for (double x : xs) {
        if (x < 1.0) throw std::domain_error("transfer needs x >= 1");
        if (static_cast<std::size_t>(std::floor(x)) > seq.max_index()) {
            throw CoverageError("transfer evaluation beyond table");
        }
        const double big_l = std::log(x);
        if (big_l > rg.grid.u_max + 1e-12) {
            throw CoverageError("transfer evaluation beyond the resolvent grid");
        }
        if (x < 1.0 + 1e-14) {
            out.push_back(eval_Ag(x, seq));
            continue;
        }
        // A_g(x e^{-u}) jumps where x e^{-u} crosses an integer; integrate
        // each smooth segment with the trapezoid rule at roughly the grid step
        const auto m_max = static_cast<std::size_t>(std::floor(x));
        std::vector<double> cuts;
        cuts.push_back(0.0);
        for (std::size_t m = 2; m <= m_max; ++m) {
            const double u = std::log(x / static_cast<double>(m));
            if (u > 1e-14 && u < big_l - 1e-14) cuts.push_back(u);
        }
        cuts.push_back(big_l);
        std::sort(cuts.begin(), cuts.end());

        double integral = 0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const double a = cuts[c], b = cuts[c + 1];
            if (b - a < 1e-15) continue;
            const auto steps = std::max<std::size_t>(
                2, static_cast<std::size_t>(std::ceil((b - a) / h)));
            const double dl = (b - a) / static_cast<double>(steps);
            double acc = 0;
            for (std::size_t i = 0; i <= steps; ++i) {
                const double u = (i == steps) ? b : a + dl * static_cast<double>(i);
                // evaluate just inside the segment at the jump endpoints
                const double u_eval = (i == 0) ? u + 1e-12 : (i == steps ? u - 1e-12 : u);
                const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
                acc += w * eval_Ag(x * std::exp(-u_eval), seq) * rg.r_at(std::min(u, rg.grid.u_max));
            }
            integral += acc * dl;
        }
        out.push_back(eval_Ag(x, seq) - integral);
    }
    return out;
}

double transfer_mode_check(double beta, const ResolventGrid& rg, double x_eval) {
    if (!(beta > 0.0) || !(beta < 1.0)) {
        throw std::domain_error("mode check defined for beta in (0,1)");
    }
    if (!(x_eval > 1.0)) throw std::domain_error("x_eval must exceed 1");
    // x^beta (F + F*k)(x) = 1 + int_0^{log x} e^{beta u} kappa(u) du; the
    // kernel is known in closed form, so the quadrature may extend past the
    // solved grid
    const double big_l = std::log(x_eval);
    const double h = rg.grid.step;
    const auto steps = static_cast<std::size_t>(std::ceil(big_l / h));
    const double dl = big_l / static_cast<double>(steps);
    double acc = 0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double u = dl * static_cast<double>(i);
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        acc += w * std::exp(beta * u) * kernel_kappa(u);
    }
    return 1.0 + acc * dl;
}

}  // namespace ortho
