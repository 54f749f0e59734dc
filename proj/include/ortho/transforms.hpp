#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ortho/bigfloat.hpp"
#include "ortho/coefficients.hpp"
#include "ortho/resolvent.hpp"

namespace ortho {

/// Shifted view a_n = c_{n-1} (n >= 1) over a coefficient table, so that the
/// step function A(x) = sum_{n<=x} a_n satisfies A(N) = C_{N-1}.
class ShiftedSequence {
  public:
    explicit ShiftedSequence(const ExactCoefficientTable* exact,
                             const FloatCoefficientTable* flt = nullptr);

    /// Largest n with a_n available.
    std::size_t max_index() const { return max_index_; }
    bool has_exact() const { return exact_ != nullptr; }
    bool has_float() const { return flt_ != nullptr; }

    const BigRational& a_exact(std::size_t n) const;
    double a(std::size_t n) const { return a_double_[n]; }
    std::span<const double> a_values() const { return a_double_; }

  private:
    const ExactCoefficientTable* exact_;
    const FloatCoefficientTable* flt_;
    std::vector<double> a_double_;  // a_double_[n] = a_n, index 0 unused
    std::size_t max_index_;
};

/// Partial sum A(x) = sum_{n <= x} a_n; zero for x < 1.
BigRational eval_A_exact(const BigRational& x, const ShiftedSequence& seq);
double eval_A(double x, const ShiftedSequence& seq);

/// Weighted transform A_g(x) = sum_{n <= x} a_n 2x/(x+n), x >= 1.
BigRational eval_Ag_exact(const BigRational& x, const ShiftedSequence& seq);
double eval_Ag(double x, const ShiftedSequence& seq);

/// Exact defect of A_g(x) = A(x) + 2x * int_1^x A(t)/(x+t)^2 dt at integer x,
/// with the step-function integral in closed form; identically zero.
BigRational discrete_volterra_defect(std::size_t x, const ShiftedSequence& seq);

/// Exact defect of A_g(N) = -(2N/(2N+1)) a_{N+1}; zero for the orthorecursive
/// sequence (N >= 2, table must cover N+1).
BigRational ag_identity_defect(std::size_t n, const ShiftedSequence& seq);

/// Summation-by-parts identity A_g(N) = sum_{k<N} A(k) (f_N(k+1) - f_N(k))
/// with f_N(k) = (N-k)/((N+k-1)(N+k)), plus the scaled difference bound
/// max_k N^2 |f_N(k+1) - f_N(k)| (at most 3).
struct BootstrapReport {
    BigRational defect;
    BigRational max_scaled_delta;
};

BootstrapReport bootstrap_check(std::size_t n, const ShiftedSequence& seq);

/// Floating counterparts of the identity defects, evaluated at the float
/// table's working precision (for roundoff-growth checks).
BigFloat discrete_volterra_defect_float(std::size_t x, const FloatCoefficientTable& table);
BigFloat ag_identity_defect_float(std::size_t n, const FloatCoefficientTable& table);

/// Inverts the weighted transform numerically: recovers A(x) as
/// A_g(x) - int_1^x A_g(x/y) R(y) dy/y against the sampled resolvent.
std::vector<double> apply_transfer(const ShiftedSequence& seq, const ResolventGrid& rg,
                                   std::span<const double> xs);

/// Synthetic pure-power probe of the forward transform: returns
/// x_eval^beta * (F + F*k)(x_eval) for F(x) = x^{-beta}, which approaches
/// g*(beta) for 0 < beta < 1.
double transfer_mode_check(double beta, const ResolventGrid& rg, double x_eval);

}  // namespace ortho
