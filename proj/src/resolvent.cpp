#include "ortho/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ortho/errors.hpp"
#include "ortho/mellin.hpp"

namespace ortho {

LogGrid::LogGrid(double u_max_, double step_) : u_max(u_max_), step(step_) {
    if (!(u_max > 0) || !(step > 0)) throw std::invalid_argument("grid extents must be positive");
    const double ratio = u_max / step;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * ratio) {
        throw std::invalid_argument("u_max must be an integer multiple of step");
    }
    n_steps_ = static_cast<std::size_t>(rounded);
}

double kernel_k(double y) {
    if (y < 1.0) throw std::domain_error("kernel defined for y >= 1");
    const double d = 1.0 + y;
    return 2.0 * y / (d * d);
}

double kernel_kappa(double u) { return kernel_k(std::exp(u)); }

double ResolventGrid::r_at(double u) const {
    if (u < 0 || u > grid.u_max + 1e-12) throw CoverageError("resolvent sample outside grid");
    const double pos = u / grid.step;
    const std::size_t j = std::min(static_cast<std::size_t>(pos), grid.n_steps() - 1);
    const double t = pos - static_cast<double>(j);
    return r[j] + t * (r[j + 1] - r[j]);
}

namespace {

std::vector<double> sample_kappa(const LogGrid& grid) {
    std::vector<double> k(grid.n_nodes());
    for (std::size_t j = 0; j < k.size(); ++j) k[j] = kernel_kappa(grid.node(j));
    return k;
}

/// Trapezoidal additive convolution (f*g)(u_m) on the grid.
std::vector<double> convolve(const LogGrid& grid, const std::vector<double>& f,
                             const std::vector<double>& g, const ExecPolicy& exec) {
    const double h = grid.step;
    std::vector<double> out(grid.n_nodes(), 0.0);
    parallel_for(grid.n_nodes(), exec, [&](std::size_t m) {
        if (m == 0) return;  // empty range
        double s = 0.5 * (f[0] * g[m] + f[m] * g[0]);
        for (std::size_t i = 1; i < m; ++i) s += f[i] * g[m - i];
        out[m] = h * s;
    });
    return out;
}

}  // namespace

std::vector<double> neumann_partial(const LogGrid& grid, int n, const ExecPolicy& exec) {
    if (n < 1) throw std::invalid_argument("iterated kernel order must be >= 1");
    std::vector<double> cur = sample_kappa(grid);
    const std::vector<double> kappa = cur;
    for (int j = 2; j <= n; ++j) cur = convolve(grid, cur, kappa, exec);
    return cur;
}

std::vector<double> neumann_alternating_sum(const LogGrid& grid, int terms,
                                            const ExecPolicy& exec) {
    if (terms < 1) throw std::invalid_argument("need at least one term");
    const std::vector<double> kappa = sample_kappa(grid);
    std::vector<double> cur = kappa;
    std::vector<double> acc = kappa;
    for (int j = 2; j <= terms; ++j) {
        cur = convolve(grid, cur, kappa, exec);
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;
        for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += sign * cur[m];
    }
    return acc;
}

ResolventGrid solve_resolvent(const LogGrid& grid, double tol, const ExecPolicy& exec) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    ResolventGrid rg;
    rg.grid = grid;
    rg.tol = tol;
    rg.kappa = sample_kappa(grid);
    const double h = grid.step;
    const std::size_t n = grid.n_nodes();
    rg.r.assign(n, 0.0);
    rg.r[0] = rg.kappa[0];  // r(0) = kappa(0) = 1/2

    const double diag = 1.0 + 0.5 * h * rg.kappa[0];
    for (std::size_t m = 1; m < n; ++m) {
        // trapezoidal convolution with the r[m] term moved to the left side
        double conv = blocked_sum(m - 1, exec, 0.0, [&](std::size_t idx) {
            const std::size_t i = idx + 1;  // i = 1..m-1
            return rg.r[i] * rg.kappa[m - i];
        });
        conv += 0.5 * rg.r[0] * rg.kappa[m];
        rg.r[m] = (rg.kappa[m] - h * conv) / diag;
    }

    // defect of the discrete equation, measured with the same quadrature
    std::vector<double> defect(n, 0.0);
    parallel_for(n, exec, [&](std::size_t m) {
        if (m == 0) {
            defect[0] = rg.r[0] - rg.kappa[0];
            return;
        }
        double s = 0.5 * (rg.r[0] * rg.kappa[m] + rg.r[m] * rg.kappa[0]);
        for (std::size_t i = 1; i < m; ++i) s += rg.r[i] * rg.kappa[m - i];
        defect[m] = rg.r[m] + h * s - rg.kappa[m];
    });
    double sup = 0;
    for (double d : defect) sup = std::max(sup, std::abs(d));
    rg.residual_sup = sup;
    if (sup > tol) {
        throw ToleranceError("resolvent defect " + std::to_string(sup) +
                             " exceeds tolerance; refine the grid step");
    }
    return rg;
}

namespace {

CplxD mellin_trapezoid(const ResolventGrid& rg, const CplxD& s, std::size_t stride) {
    const double h = rg.grid.step * static_cast<double>(stride);
    CplxD sum{};
    const std::size_t last = rg.grid.n_steps();
    for (std::size_t j = 0; j <= last; j += stride) {
        const double u = rg.grid.node(j);
        const CplxD w = exp_c(CplxD{-s.re * u, -s.im * u});
        const double weight = (j == 0 || j == last) ? 0.5 : 1.0;
        sum += (weight * rg.r[j]) * w;
    }
    return {sum.re * h, sum.im * h};
}

}  // namespace

MellinQuadrature resolvent_mellin(const CplxD& s, const ResolventGrid& rg) {
    if (!(s.re > 1.0)) {
        throw std::domain_error("direct Mellin quadrature needs Re(s) > 1");
    }
    MellinQuadrature out;
    out.value = mellin_trapezoid(rg, s, 1);
    const CplxD coarse = mellin_trapezoid(rg, s, 2);
    out.quad_error = abs_val(out.value - coarse) / 3.0;

    // truncated tail bounded by the fitted envelope power law
    FitReport fit = resolvent_decay_fit(rg, std::exp(rg.grid.u_max) / 20.0,
                                        std::exp(rg.grid.u_max));
    const double alpha = fit.exponent;  // negative
    const double amp = std::exp(fit.log_amplitude);
    const double decay = s.re - alpha;  // Re(s) - alpha > 0
    out.tail_error = amp * std::exp((alpha - s.re) * rg.grid.u_max) / decay;

    out.reference = CplxD{1.0, 0.0} - inverse(g_star(-s));
    return out;
}

FitReport resolvent_decay_fit(const ResolventGrid& rg, double y_lo, double y_hi) {
    if (!(y_lo > 1.0) || !(y_hi > y_lo)) throw std::invalid_argument("bad fit window");
    const double u_lo = std::log(y_lo);
    const double u_hi = std::log(y_hi);
    if (u_hi > rg.grid.u_max + 1e-12) throw CoverageError("fit window beyond the grid");
    std::vector<double> us(rg.grid.n_nodes());
    for (std::size_t j = 0; j < us.size(); ++j) us[j] = rg.grid.node(j);
    return envelope_fit_logx(us, rg.r, u_lo, u_hi, 0.5);
}

}  // namespace ortho
