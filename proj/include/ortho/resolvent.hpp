#pragma once

#include <cstddef>
#include <vector>

#include "ortho/cplx.hpp"
#include "ortho/exec.hpp"
#include "ortho/fitting.hpp"

namespace ortho {

/// Uniform grid in the additive variable u = log y covering [0, u_max].
struct LogGrid {
    double u_max = 8.0;
    double step = 1.0 / 1024.0;

    LogGrid() = default;
    LogGrid(double u_max_, double step_);

    std::size_t n_steps() const { return n_steps_; }
    std::size_t n_nodes() const { return n_steps_ + 1; }
    double node(std::size_t j) const { return static_cast<double>(j) * step; }

  private:
    std::size_t n_steps_ = 8192;
};

/// Multiplicative Volterra kernel k(y) = 2y/(1+y)^2 for y >= 1.
double kernel_k(double y);

/// k in the additive variable: kappa(u) = k(e^u).
double kernel_kappa(double u);

/// Solved resolvent samples r(u_j) = R(e^{u_j}) with the defining-equation
/// defect measured on the same grid.
struct ResolventGrid {
    LogGrid grid;
    std::vector<double> kappa;  // kappa(u_j)
    std::vector<double> r;      // r(u_j)
    double residual_sup = 0;
    double tol = 0;

    /// Piecewise-linear interpolation of r at u in [0, u_max].
    double r_at(double u) const;
};

/// n-fold additive self-convolution of kappa on the grid (trapezoidal
/// product quadrature); n >= 1.
std::vector<double> neumann_partial(const LogGrid& grid, int n, const ExecPolicy& exec = {});

/// Alternating partial sum of the iterated-kernel series, sum_{j<=terms}
/// (-1)^{j+1} kappa^{*j}; converges to the discrete resolvent.
std::vector<double> neumann_alternating_sum(const LogGrid& grid, int terms,
                                            const ExecPolicy& exec = {});

/// Solves r + r*kappa = kappa by trapezoidal marching; throws ToleranceError
/// if the measured defect exceeds tol.
ResolventGrid solve_resolvent(const LogGrid& grid, double tol = 1e-10,
                              const ExecPolicy& exec = {});

/// Mellin quadrature of the sampled resolvent at s (Re s > 1), with the
/// digamma-route reference value 1 - 1/g*(-s), a step-halving quadrature
/// error estimate, and a fitted-power-law bound on the truncated tail.
struct MellinQuadrature {
    CplxD value;
    CplxD reference;
    double quad_error = 0;
    double tail_error = 0;
};

MellinQuadrature resolvent_mellin(const CplxD& s, const ResolventGrid& rg);

/// Envelope decay fit of |R(y)| over y in [y_lo, y_hi] (block maxima of
/// width 0.5 in u, least squares in (u, log |r|)).
FitReport resolvent_decay_fit(const ResolventGrid& rg, double y_lo, double y_hi);

}  // namespace ortho
