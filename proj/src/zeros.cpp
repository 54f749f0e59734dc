#include "ortho/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "ortho/errors.hpp"

namespace ortho {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_rectangle(const Rectangle& r, double pole_exclusion) {
    if (!(r.sigma_min < r.sigma_max) || !(r.tau_min < r.tau_max)) {
        throw std::invalid_argument("degenerate rectangle");
    }
    // Poles sit at the nonnegative integers on the real axis. The boundary
    // (and interior) must stay clear of them.
    const long m_lo = std::max(0L, static_cast<long>(std::floor(r.sigma_min - 1)));
    const long m_hi = static_cast<long>(std::ceil(r.sigma_max + 1));
    for (long m = m_lo; m <= m_hi; ++m) {
        const double px = static_cast<double>(m);
        const bool inside_x = px >= r.sigma_min && px <= r.sigma_max;
        const bool inside_y = 0.0 >= r.tau_min && 0.0 <= r.tau_max;
        if (inside_x && inside_y) {
            throw PoleError("rectangle contains the pole z = " + std::to_string(m));
        }
        const double dx = inside_x ? 0.0 : std::min(std::abs(px - r.sigma_min),
                                                    std::abs(px - r.sigma_max));
        const double dy = inside_y ? 0.0 : std::min(std::abs(r.tau_min), std::abs(r.tau_max));
        if (std::hypot(dx, dy) < pole_exclusion) {
            throw PoleError("rectangle boundary within pole-exclusion radius of z = " +
                            std::to_string(m));
        }
    }
}

struct BoundaryWalker {
    const EvaluationTolerance& tol;
    const WindingOptions& opts;
    double min_modulus = std::numeric_limits<double>::infinity();
    long evals = 0;

    CplxD eval(const CplxD& z) {
        ++evals;
        CplxD v = d_infty(z, DigammaParams{}, EvaluatorOptions{.pole_exclusion = opts.pole_exclusion,
                                                               .pole_guard = 1e-12});
        double m = abs_val(v);
        if (!std::isfinite(m)) throw BoundaryZeroError("non-finite value on boundary");
        if (m < opts.modulus_floor) {
            throw BoundaryZeroError("boundary modulus " + std::to_string(m) +
                                    " below floor; a zero sits on or near the contour");
        }
        min_modulus = std::min(min_modulus, m);
        return v;
    }

    /// Signed argument variation along the segment z1 -> z2, refining until
    /// each step is below max_arg_step.
    double arg_variation(const CplxD& z1, const CplxD& v1, const CplxD& z2, const CplxD& v2,
                         int depth) {
        const double d = arg_val(v2 / v1);
        if (std::abs(d) <= opts.max_arg_step) return d;
        if (depth >= opts.max_depth) {
            throw NonConvergenceError(
                "argument step not resolved by bisection (possible boundary zero)");
        }
        const CplxD zm{0.5 * (z1.re + z2.re), 0.5 * (z1.im + z2.im)};
        const CplxD vm = eval(zm);
        return arg_variation(z1, v1, zm, vm, depth + 1) +
               arg_variation(zm, vm, z2, v2, depth + 1);
    }
};

}  // namespace

WindingCertificate winding_number(const Rectangle& rect, const EvaluationTolerance& tol,
                                  const WindingOptions& opts) {
    validate_rectangle(rect, opts.pole_exclusion);

    // corner loop, counterclockwise
    const CplxD c0{rect.sigma_min, rect.tau_min};
    const CplxD c1{rect.sigma_max, rect.tau_min};
    const CplxD c2{rect.sigma_max, rect.tau_max};
    const CplxD c3{rect.sigma_min, rect.tau_max};
    const CplxD corners[5] = {c0, c1, c2, c3, c0};

    // initial sample points along the full perimeter
    std::vector<CplxD> pts;
    for (int side = 0; side < 4; ++side) {
        const CplxD a = corners[side];
        const CplxD b = corners[side + 1];
        const double len = std::hypot(b.re - a.re, b.im - a.im);
        const int n = std::max(opts.min_samples_per_side,
                               static_cast<int>(std::ceil(len * opts.samples_per_unit)));
        for (int i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / n;
            pts.push_back({a.re + t * (b.re - a.re), a.im + t * (b.im - a.im)});
        }
    }
    pts.push_back(c0);

    // bulk evaluation is data-parallel; the adaptive pass below reuses it
    std::vector<CplxD> vals(pts.size());
    {
        EvaluatorOptions eopts{.pole_exclusion = opts.pole_exclusion, .pole_guard = 1e-12};
        parallel_for(pts.size(), opts.exec,
                     [&](std::size_t i) { vals[i] = d_infty(pts[i], DigammaParams{}, eopts); });
    }

    BoundaryWalker walker{tol, opts};
    walker.evals = static_cast<long>(pts.size());
    for (const CplxD& v : vals) {
        const double m = abs_val(v);
        if (!std::isfinite(m)) throw BoundaryZeroError("non-finite value on boundary");
        if (m < opts.modulus_floor) {
            throw BoundaryZeroError("boundary modulus below floor; zero on or near contour");
        }
        walker.min_modulus = std::min(walker.min_modulus, m);
    }

    double total = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += walker.arg_variation(pts[i], vals[i], pts[i + 1], vals[i + 1], 0);
    }

    WindingCertificate cert;
    cert.rect = rect;
    const double raw = total / kTwoPi;
    cert.winding = static_cast<int>(std::lround(raw));
    cert.raw_residue = std::abs(raw - cert.winding);
    cert.min_boundary_modulus = walker.min_modulus;
    cert.samples_used = walker.evals;
    if (cert.raw_residue > 0.01) {
        throw NonConvergenceError("winding sum is not integer-consistent (residue " +
                                  std::to_string(cert.raw_residue) + ")");
    }
    return cert;
}

namespace {

/// Double-precision Newton phase; returns last iterate and whether the step
/// and residual tolerances were met.
struct DoubleNewtonResult {
    CplxD z;
    bool settled = false;
    int iterations = 0;
};

DoubleNewtonResult newton_double(const CplxD& z0, double tol, const NewtonOptions& opts) {
    DoubleNewtonResult res{z0, false, 0};
    const EvaluationTolerance eval_tol{1e-14, 4'000'000};
    EvaluatorOptions eopts = opts.eval;
    eopts.pole_guard = 1e-12;
    for (int it = 0; it < opts.max_iterations; ++it) {
        res.iterations = it + 1;
        CplxD f, fp;
        try {
            f = d_infty(res.z, DigammaParams{}, eopts);
            fp = d_infty_prime(res.z, eval_tol, eopts);
        } catch (const PoleError&) {
            return res;  // wandered onto a pole: not converged
        }
        const double fpm = abs_val(fp);
        if (fpm < opts.derivative_floor) {
            throw NonConvergenceError("derivative underflow in Newton iteration");
        }
        const CplxD step = f / fp;
        res.z -= step;
        if (!is_finite(res.z) || std::abs(res.z.re) > 1e6 || std::abs(res.z.im) > 1e6) {
            return res;  // escaped
        }
        if (abs_val(step) <= std::max(tol, 1e-13) && abs_val(f) <= std::max(tol, 1e-12)) {
            res.settled = true;
            return res;
        }
    }
    return res;
}

}  // namespace

ZeroEstimate newton_refine(const CplxD& z0, const EvaluationTolerance& tol,
                           const NewtonOptions& opts) {
    ZeroEstimate est;
    DoubleNewtonResult dn = newton_double(z0, tol.abs_tol, opts);
    est.iterations = dn.iterations;
    if (!dn.settled) {
        est.location = to_big(dn.z, opts.polish_bits);
        est.residual_modulus = std::numeric_limits<double>::infinity();
        est.converged = false;
        return est;
    }

    // extended-precision polish
    const unsigned bits = opts.polish_bits;
    set_working_bits(bits);
    const DigammaParams big_params = DigammaParams::for_bits(bits);
    EvaluatorOptions eopts = opts.eval;
    eopts.pole_guard = 1e-12;
    CplxBig z = to_big(dn.z, bits);
    const EvaluationTolerance prime_tol{std::pow(2.0, -static_cast<double>(bits) + 8), 4'000'000};
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 6; ++it) {
        ++est.iterations;
        CplxBig f = d_infty(z, big_params, eopts);
        CplxBig fp = d_infty_prime(z, prime_tol, eopts);
        if (static_cast<double>(abs_val(fp)) < opts.derivative_floor) {
            throw NonConvergenceError("derivative underflow in Newton polish");
        }
        CplxBig step = f / fp;
        z -= step;
        residual = static_cast<double>(abs_val(d_infty(z, big_params, eopts)));
        if (static_cast<double>(abs_val(step)) <= tol.abs_tol && residual <= tol.abs_tol) break;
    }
    est.location = z;
    est.residual_modulus = residual;
    est.converged = residual <= tol.abs_tol;
    return est;
}

namespace {

/// Shrinks a winding-1 rectangle around its zero by repeated bisection.
Rectangle bisect_to_cell(Rectangle rect, const EvaluationTolerance& tol,
                         const WindingOptions& opts, double cell_size) {
    while (rect.width() > cell_size || rect.height() > cell_size) {
        const bool split_tau = rect.height() >= rect.width();
        bool placed = false;
        double frac = 0.5;
        for (int attempt = 0; attempt < 4 && !placed; ++attempt) {
            Rectangle lo = rect, hi = rect;
            if (split_tau) {
                const double mid = rect.tau_min + frac * rect.height();
                lo.tau_max = mid;
                hi.tau_min = mid;
            } else {
                const double mid = rect.sigma_min + frac * rect.width();
                lo.sigma_max = mid;
                hi.sigma_min = mid;
            }
            try {
                WindingCertificate cl = winding_number(lo, tol, opts);
                if (cl.winding == 1) {
                    rect = lo;
                } else {
                    WindingCertificate ch = winding_number(hi, tol, opts);
                    if (ch.winding != 1) {
                        throw NonConvergenceError("zero lost during rectangle bisection");
                    }
                    rect = hi;
                }
                placed = true;
            } catch (const BoundaryZeroError&) {
                frac = 0.5 + 0.137 * (attempt + 1);  // jitter off the zero
            }
        }
        if (!placed) throw NonConvergenceError("bisection could not avoid the zero");
    }
    return rect;
}

}  // namespace

ZeroEstimate locate_rho1(const EvaluationTolerance& tol, const WindingOptions& wopts,
                         const NewtonOptions& nopts) {
    const Rectangle strip{1.01, 1.49, 0.01, 100.0};
    WindingCertificate cert = winding_number(strip, tol, wopts);
    if (cert.winding != 1) {
        throw NonConvergenceError("expected a single zero in the principal strip, winding = " +
                                  std::to_string(cert.winding));
    }
    Rectangle cell = bisect_to_cell(strip, tol, wopts, 0.05);
    const CplxD center{0.5 * (cell.sigma_min + cell.sigma_max),
                       0.5 * (cell.tau_min + cell.tau_max)};
    ZeroEstimate est = newton_refine(center, tol, nopts);
    if (!est.converged) throw NonConvergenceError("Newton refinement failed from cell center");
    const double zx = static_cast<double>(est.location.re);
    const double zy = static_cast<double>(est.location.im);
    if (zx < strip.sigma_min || zx > strip.sigma_max || zy < strip.tau_min ||
        zy > strip.tau_max) {
        throw NonConvergenceError("refined zero escaped the principal strip");
    }
    return est;
}

namespace {

/// Counts the winding over `rect`, growing tau_max slightly when the boundary
/// happens to graze a zero.
WindingCertificate winding_with_jitter(Rectangle& rect, double tau_cap,
                                       const EvaluationTolerance& tol,
                                       const WindingOptions& wopts) {
    double grow = 0.0;
    for (int attempt = 0; attempt < 5; ++attempt) {
        try {
            Rectangle jittered = rect;
            jittered.tau_max = std::min(tau_cap, rect.tau_max + grow);
            WindingCertificate cert = winding_number(jittered, tol, wopts);
            rect = jittered;
            return cert;
        } catch (const BoundaryZeroError&) {
            grow += 0.0137 * (attempt + 1);
        }
    }
    throw NonConvergenceError("tile boundary kept hitting a zero");
}

void collect_zeros(Rectangle rect, const EvaluationTolerance& tol, const WindingOptions& wopts,
                   const NewtonOptions& nopts, std::vector<ZeroEstimate>& out, int depth) {
    if (depth > 40) throw NonConvergenceError("zero separation recursion too deep");
    WindingCertificate cert = winding_number(rect, tol, wopts);
    if (cert.winding == 0) return;
    if (cert.winding == 1) {
        Rectangle cell = bisect_to_cell(rect, tol, wopts, 0.05);
        const CplxD center{0.5 * (cell.sigma_min + cell.sigma_max),
                           0.5 * (cell.tau_min + cell.tau_max)};
        ZeroEstimate est = newton_refine(center, tol, nopts);
        if (!est.converged) {
            throw NonConvergenceError("Newton refinement failed inside a winding-1 cell");
        }
        out.push_back(std::move(est));
        return;
    }
    // several zeros: split along the longer side, jittering off any zero
    const bool split_tau = rect.height() >= rect.width();
    double frac = 0.5;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rectangle lo = rect, hi = rect;
        if (split_tau) {
            const double mid = rect.tau_min + frac * rect.height();
            lo.tau_max = mid;
            hi.tau_min = mid;
        } else {
            const double mid = rect.sigma_min + frac * rect.width();
            lo.sigma_max = mid;
            hi.sigma_min = mid;
        }
        try {
            collect_zeros(lo, tol, wopts, nopts, out, depth + 1);
            collect_zeros(hi, tol, wopts, nopts, out, depth + 1);
            return;
        } catch (const BoundaryZeroError&) {
            frac = 0.5 + 0.137 * (attempt + 1);
        }
    }
    throw NonConvergenceError("could not split a multi-zero tile");
}

}  // namespace

std::vector<ZeroEstimate> scan_strip(double sigma_min, double sigma_max, double tau_max,
                                     const EvaluationTolerance& tol,
                                     const WindingOptions& wopts, const NewtonOptions& nopts) {
    if (!(tau_max > 0)) throw std::invalid_argument("tau_max must be positive");
    if (!(sigma_min < sigma_max)) throw std::invalid_argument("empty strip");

    const double tau_min = 0.01;
    const double col_width = 0.5;
    const double row_height = 2.0;

    std::vector<ZeroEstimate> zeros;
    double s = sigma_min;
    while (s < sigma_max - 1e-12) {
        const double s2 = std::min(sigma_max, s + col_width);
        double t = tau_min;
        while (t < tau_max - 1e-12) {
            Rectangle tile{s, s2, t, std::min(tau_max, t + row_height)};
            WindingCertificate cert = winding_with_jitter(tile, tau_max, tol, wopts);
            if (cert.winding > 0) {
                collect_zeros(tile, tol, wopts, nopts, zeros, 0);
            }
            t = tile.tau_max;
        }
        s = s2;
    }

    // dedupe (tile jitter can double-report a zero close to a shared edge)
    std::vector<ZeroEstimate> unique;
    for (auto& z : zeros) {
        bool seen = false;
        for (const auto& u : unique) {
            const double dx = static_cast<double>(z.location.re - u.location.re);
            const double dy = static_cast<double>(z.location.im - u.location.im);
            if (std::hypot(dx, dy) < 1e-6) {
                seen = true;
                break;
            }
        }
        if (!seen) unique.push_back(std::move(z));
    }
    return unique;
}

WallReport wall_inequality_check(const std::string& wall, std::span<const double> y_grid,
                                 const EvaluationTolerance& tol) {
    double x = 0;
    enum class Kind { im_negative, right_wall } kind = Kind::im_negative;
    if (wall == "Re(z)=0") {
        x = 0.0;
        kind = Kind::im_negative;
    } else if (wall == "Re(z)=1") {
        x = 1.0;
        kind = Kind::right_wall;
    } else if (wall == "Re(z)=3/2") {
        x = 1.5;
        kind = Kind::im_negative;
    } else {
        throw std::invalid_argument("unknown wall identifier: " + wall);
    }

    WallReport report;
    report.wall = wall;
    for (double y : y_grid) {
        if (!(y > 0) || !std::isfinite(y)) {
            throw std::invalid_argument("wall grid values must be positive and finite");
        }
        WallValues wv = wall_values(x, y, tol);
        bool ok = true;
        if (kind == Kind::im_negative) {
            ok = wv.im < 0;
        } else {
            // the delicate wall: real part positive up to y = 2, imaginary
            // part negative from y = 2 on
            if (y <= 2.0) ok = wv.re > 0;
            if (y >= 2.0) ok = ok && wv.im < 0;
        }
        if (!ok) ++report.violations;
        report.points.push_back({y, wv.re, wv.im, ok});
    }
    return report;
}

}  // namespace ortho
