#pragma once

#include <cstddef>
#include <vector>

#include "ortho/bigfloat.hpp"
#include "ortho/exec.hpp"

namespace ortho {

/// Precision and summation settings for the floating-point engine.
struct PrecisionConfig {
    unsigned mantissa_bits = kDefaultMantissaBits;
    enum class Summation { plain, compensated };
    Summation summation = Summation::compensated;

    void validate() const;
};

/// Resource caps for the exact engine; denominators grow roughly
/// exponentially with the index, so both a length cap and a digit budget
/// apply.
struct ExactLimits {
    std::size_t max_index = 2000;
    std::size_t max_denominator_digits = 200000;
};

/// Exact rational coefficients c_0..c_n_max of the orthorecursive expansion
/// of unity against {x, x^2, ...}: c_0 = 1 and, for N >= 1,
/// sum_{k=0..N} c_k/(N+k+1) = 0.
class ExactCoefficientTable {
  public:
    explicit ExactCoefficientTable(std::vector<BigRational> values)
        : values_(std::move(values)) {}

    std::size_t max_index() const { return values_.size() - 1; }
    std::size_t size() const { return values_.size(); }
    const BigRational& operator[](std::size_t n) const { return values_[n]; }
    const std::vector<BigRational>& values() const { return values_; }

    /// Exact partial sum C_N = c_0 + ... + c_N.
    BigRational partial_sum(std::size_t n) const;

  private:
    std::vector<BigRational> values_;
};

/// Floating coefficients and partial sums C_N at a configured mantissa width.
class FloatCoefficientTable {
  public:
    FloatCoefficientTable(std::vector<BigFloat> values, std::vector<BigFloat> partial_sums,
                          PrecisionConfig config)
        : values_(std::move(values)), partial_sums_(std::move(partial_sums)), config_(config) {}

    std::size_t max_index() const { return values_.size() - 1; }
    std::size_t size() const { return values_.size(); }
    const BigFloat& operator[](std::size_t n) const { return values_[n]; }
    const BigFloat& partial_sum(std::size_t n) const { return partial_sums_[n]; }
    const std::vector<BigFloat>& values() const { return values_; }
    const std::vector<BigFloat>& partial_sums() const { return partial_sums_; }
    const PrecisionConfig& config() const { return config_; }

    /// Coefficients converted once to double (for fitting / probes).
    std::vector<double> values_as_double() const;
    std::vector<double> partial_sums_as_double() const;

  private:
    std::vector<BigFloat> values_;
    std::vector<BigFloat> partial_sums_;
    PrecisionConfig config_;
};

/// Computes c_0..c_n_max exactly. O(n_max^2) rational operations; throws
/// ResourceLimitError when a cap in `limits` is exceeded.
ExactCoefficientTable compute_exact(std::size_t n_max, const ExactLimits& limits = {},
                                    const ExecPolicy& exec = {});

/// Exact defining-equation residual sum_{k=0..N} c_k/(N+k+1); zero for every
/// valid table and 1 <= N <= max_index.
BigRational recurrence_residual(const ExactCoefficientTable& table, std::size_t n);

/// Floating realization of the same recurrence, plus running partial sums.
FloatCoefficientTable compute_float(std::size_t n_max, const PrecisionConfig& config = {},
                                    const ExecPolicy& exec = {});

/// Max over n <= prefix of |float[n] - exact[n]| / |exact[n]|, differences
/// taken at 64 guard bits above the float table's working precision.
BigFloat cross_validate(const ExactCoefficientTable& exact, const FloatCoefficientTable& flt,
                        std::size_t prefix);

/// Per-dyadic-block maxima of N^2 |c_N| over [lo, hi]; used to probe the
/// quadratic pointwise bound (bounded, no growth trend across blocks).
struct DyadicProbe {
    std::vector<double> block_max;
    double overall_max = 0;
    double last_block_max = 0;

    /// last-block max must not exceed `slack` times the overall max.
    bool bounded(double slack = 1.1) const { return last_block_max <= overall_max * slack; }
};

DyadicProbe dyadic_bound_probe(const FloatCoefficientTable& table, std::size_t lo, std::size_t hi);

}  // namespace ortho
