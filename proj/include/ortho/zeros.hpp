#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ortho/cplx.hpp"
#include "ortho/exec.hpp"
#include "ortho/mellin.hpp"

namespace ortho {

/// Axis-aligned rectangle in the z-plane (sigma = Re, tau = Im).
struct Rectangle {
    double sigma_min = 0, sigma_max = 0;
    double tau_min = 0, tau_max = 0;

    double width() const { return sigma_max - sigma_min; }
    double height() const { return tau_max - tau_min; }
};

/// Integer winding of D around a rectangle plus the sampling evidence.
struct WindingCertificate {
    Rectangle rect;
    int winding = 0;
    double min_boundary_modulus = 0;
    long samples_used = 0;
    double raw_residue = 0;  // |arg-sum/2pi - winding|, sanity margin
};

/// A located zero with its convergence evidence. The location is kept at
/// extended precision; residual_modulus is |D| there.
struct ZeroEstimate {
    CplxBig location;
    double residual_modulus = 0;
    int iterations = 0;
    bool converged = false;
};

struct WindingOptions {
    double pole_exclusion = 1e-3;
    double modulus_floor = 1e-8;
    double max_arg_step = 1.5;  // < pi/2
    double samples_per_unit = 8.0;
    int min_samples_per_side = 16;
    int max_depth = 48;
    ExecPolicy exec{};
};

struct NewtonOptions {
    int max_iterations = 100;
    double derivative_floor = 1e-14;
    unsigned polish_bits = kDefaultMantissaBits;
    EvaluatorOptions eval{};
};

/// Winding number of D over the rectangle boundary by adaptive argument
/// tracking (per-step increment kept below max_arg_step).
WindingCertificate winding_number(const Rectangle& rect, const EvaluationTolerance& tol = {},
                                  const WindingOptions& opts = {});

/// Newton iteration z <- z - D(z)/D'(z) from a double-precision seed,
/// polished at extended precision once the double phase settles.
ZeroEstimate newton_refine(const CplxD& z0, const EvaluationTolerance& tol = {},
                           const NewtonOptions& opts = {});

/// Locates the principal zero: winding over [1.01,1.49]x[0.01,100], bisection
/// to a small cell, then Newton refinement from the cell center.
ZeroEstimate locate_rho1(const EvaluationTolerance& tol = {}, const WindingOptions& wopts = {},
                         const NewtonOptions& nopts = {});

/// Tiles the upper-half strip (sigma_min, sigma_max) x (0, tau_max] into
/// pole-avoiding rectangles, counts windings, and refines every zero found.
std::vector<ZeroEstimate> scan_strip(double sigma_min, double sigma_max, double tau_max,
                                     const EvaluationTolerance& tol = {},
                                     const WindingOptions& wopts = {},
                                     const NewtonOptions& nopts = {});

/// Sign checks of Re/Im D along the vertical walls used by the zero-free
/// region analysis. Wall names: "Re(z)=0", "Re(z)=1", "Re(z)=3/2".
struct WallCheckPoint {
    double y;
    double re;
    double im;
    bool ok;
};

struct WallReport {
    std::string wall;
    std::vector<WallCheckPoint> points;
    std::size_t violations = 0;
};

WallReport wall_inequality_check(const std::string& wall, std::span<const double> y_grid,
                                 const EvaluationTolerance& tol = {});

}  // namespace ortho
