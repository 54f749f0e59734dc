#include "ortho/coefficients.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ortho/errors.hpp"

namespace ortho {

void PrecisionConfig::validate() const {
    if (mantissa_bits < kMinMantissaBits) {
        throw std::invalid_argument("mantissa_bits must be at least " +
                                    std::to_string(kMinMantissaBits));
    }
}

BigRational ExactCoefficientTable::partial_sum(std::size_t n) const {
    if (n >= values_.size()) throw CoverageError("partial_sum index beyond table");
    BigRational s = 0;
    for (std::size_t k = 0; k <= n; ++k) s += values_[k];
    return s;
}

ExactCoefficientTable compute_exact(std::size_t n_max, const ExactLimits& limits,
                                    const ExecPolicy& exec) {
    if (n_max > limits.max_index) {
        throw ResourceLimitError("exact mode capped at n_max = " +
                                 std::to_string(limits.max_index) +
                                 "; use the floating engine for longer tables");
    }
    std::vector<BigRational> c;
    c.reserve(n_max + 1);
    c.emplace_back(1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        // c_n = -(2n+1) * sum_{k<n} c_k/(n+k+1)
        BigRational inner = blocked_sum(n, exec, BigRational(0), [&](std::size_t k) {
            return c[k] / BigRational(static_cast<long>(n + k + 1));
        });
        BigRational cn = BigRational(-static_cast<long>(2 * n + 1)) * inner;
        const std::size_t den_digits =
            mpz_sizeinbase(mpq_denref(cn.backend().data()), 10);
        if (den_digits > limits.max_denominator_digits) {
            throw ResourceLimitError(
                "denominator of c_" + std::to_string(n) + " exceeds the digit budget (" +
                std::to_string(den_digits) + " > " +
                std::to_string(limits.max_denominator_digits) + ")");
        }
        c.push_back(std::move(cn));
    }
    return ExactCoefficientTable(std::move(c));
}

BigRational recurrence_residual(const ExactCoefficientTable& table, std::size_t n) {
    if (n > table.max_index()) throw CoverageError("residual index beyond table");
    BigRational s = 0;
    for (std::size_t k = 0; k <= n; ++k) s += table[k] / BigRational(static_cast<long>(n + k + 1));
    return s;
}

FloatCoefficientTable compute_float(std::size_t n_max, const PrecisionConfig& config,
                                    const ExecPolicy& exec) {
    config.validate();
    const unsigned bits = config.mantissa_bits;
    set_working_bits(bits);
    const BigFloat zero = make_zero(bits);

    std::vector<BigFloat> c;
    std::vector<BigFloat> sums;
    c.reserve(n_max + 1);
    sums.reserve(n_max + 1);
    c.push_back(zero + 1);
    sums.push_back(c[0]);

    // Running compensation for the partial sums when in compensated mode.
    BigFloat sum_acc = c[0];
    BigFloat sum_comp = zero;

    for (std::size_t n = 1; n <= n_max; ++n) {
        auto term = [&](std::size_t k) {
            return c[k] / static_cast<unsigned long>(n + k + 1);
        };
        BigFloat inner = config.summation == PrecisionConfig::Summation::compensated
                             ? blocked_sum_compensated(n, exec, zero, term)
                             : blocked_sum(n, exec, zero, term);
        BigFloat cn = inner * static_cast<long>(2 * n + 1);
        cn = -cn;
        if (config.summation == PrecisionConfig::Summation::compensated) {
            using std::abs;
            BigFloat t = sum_acc + cn;
            if (abs(sum_acc) >= abs(cn)) {
                sum_comp += (sum_acc - t) + cn;
            } else {
                sum_comp += (cn - t) + sum_acc;
            }
            sum_acc = t;
            sums.push_back(sum_acc + sum_comp);
        } else {
            sum_acc += cn;
            sums.push_back(sum_acc);
        }
        c.push_back(std::move(cn));
    }
    return FloatCoefficientTable(std::move(c), std::move(sums), config);
}

std::vector<double> FloatCoefficientTable::values_as_double() const {
    std::vector<double> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = static_cast<double>(values_[i]);
    return out;
}

std::vector<double> FloatCoefficientTable::partial_sums_as_double() const {
    std::vector<double> out(partial_sums_.size());
    for (std::size_t i = 0; i < partial_sums_.size(); ++i) {
        out[i] = static_cast<double>(partial_sums_[i]);
    }
    return out;
}

BigFloat cross_validate(const ExactCoefficientTable& exact, const FloatCoefficientTable& flt,
                        std::size_t prefix) {
    if (prefix > exact.max_index() || prefix > flt.max_index()) {
        throw CoverageError("cross_validate prefix exceeds a table length");
    }
    const unsigned guard_bits = flt.config().mantissa_bits + 64;
    BigFloat worst = make_zero(guard_bits);
    for (std::size_t n = 0; n <= prefix; ++n) {
        if (exact[n] == 0) {
            throw std::domain_error("cross_validate: exact coefficient c_" + std::to_string(n) +
                                    " is zero; relative error undefined");
        }
        BigFloat e = to_bigfloat(exact[n], guard_bits);
        BigFloat f(0, digits_for_bits(guard_bits));
        f = flt[n];
        BigFloat rel = abs((f - e) / e);
        if (rel > worst) worst = rel;
    }
    return worst;
}

DyadicProbe dyadic_bound_probe(const FloatCoefficientTable& table, std::size_t lo,
                               std::size_t hi) {
    if (hi > table.max_index()) throw CoverageError("dyadic probe beyond table");
    if (lo == 0 || lo >= hi) throw std::invalid_argument("dyadic probe needs 0 < lo < hi");
    DyadicProbe probe;
    std::size_t start = lo;
    while (start < hi) {
        std::size_t stop = std::min(hi, start * 2);
        double m = 0;
        for (std::size_t n = start; n <= stop; ++n) {
            double v = static_cast<double>(n) * static_cast<double>(n) *
                       std::abs(static_cast<double>(table[n]));
            m = std::max(m, v);
        }
        probe.block_max.push_back(m);
        start = stop + 1;
    }
    for (double m : probe.block_max) probe.overall_max = std::max(probe.overall_max, m);
    probe.last_block_max = probe.block_max.back();
    return probe;
}

}  // namespace ortho
