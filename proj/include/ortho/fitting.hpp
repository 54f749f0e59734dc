#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ortho {

/// A fitted decay exponent with its uncertainty and fit diagnostics.
struct FitReport {
    double exponent = 0;
    double standard_error = 0;
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
    int n_points = 0;
    double residual_rms = 0;
    double log_amplitude = 0;  // intercept of the log-log fit
};

/// Oscillatory model parameters for seq[n] ~ A n^{-delta} sin(P log n + phi),
/// plus the raw sign-change evidence.
struct OscillationReport {
    double amplitude = 0;
    double exponent = 0;   // delta
    double frequency = 0;  // P
    double phase = 0;      // phi
    std::vector<std::size_t> sign_change_positions;
    double mean_log_spacing = 0;
    bool converged = false;
    int iterations = 0;
    double residual_rms = 0;
};

/// Least-squares slope of log|block maxima| against log n over index window
/// [lo, hi]; blocks have multiplicative width `mult_width`.
FitReport envelope_exponent(std::span<const double> seq, std::size_t lo, std::size_t hi,
                            double mult_width = 1.3);

/// Envelope fit over arbitrary abscissas: block maxima of |values| over
/// consecutive windows of width `window_width` in x, least squares of
/// log|max| against x. Used with x = u = log y for kernel decay rates.
FitReport envelope_fit_logx(std::span<const double> xs, std::span<const double> values,
                            double x_lo, double x_hi, double window_width);

/// Sign-change positions of seq over [lo, hi] and the mean logarithmic
/// spacing; frequency is prefilled with pi / mean_log_spacing.
OscillationReport sign_changes(std::span<const double> seq, std::size_t lo, std::size_t hi);

/// Starting point for the oscillatory fit assembled from sign_changes and
/// envelope_exponent.
OscillationReport initial_oscillation_guess(std::span<const double> seq, std::size_t lo,
                                            std::size_t hi);

/// Damped Gauss-Newton fit of (A, delta, P, phi) minimizing
/// sum (seq[n] - A n^{-delta} sin(P log n + phi))^2 over the window.
OscillationReport oscillatory_fit(std::span<const double> seq, std::size_t lo, std::size_t hi,
                                  const OscillationReport& init, int max_iterations = 100);

}  // namespace ortho
