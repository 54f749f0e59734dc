#include "ortho/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ortho/errors.hpp"

namespace ortho {

namespace {

struct LinePoints {
    std::vector<double> x;
    std::vector<double> y;
};

/// Plain least-squares line y = a + b x; returns (a, b, se_b, rms).
struct LineFit {
    double intercept = 0;
    double slope = 0;
    double slope_se = 0;
    double rms = 0;
};

LineFit fit_line(const LinePoints& p) {
    const std::size_t n = p.x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += p.x[i];
        my += p.y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (p.x[i] - mx) * (p.x[i] - mx);
        sxy += (p.x[i] - mx) * (p.y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = p.y[i] - (f.intercept + f.slope * p.x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / static_cast<double>(n));
    if (n > 2) f.slope_se = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
    return f;
}

/// Block maxima of |values| over consecutive windows of width `width` in x;
/// x must be increasing. Returns the (x, log|value|) envelope points.
LinePoints block_maxima(std::span<const double> xs, std::span<const double> values,
                        double x_lo, double x_hi, double width) {
    LinePoints pts;
    double start = x_lo;
    std::size_t i = 0;
    while (i < xs.size() && xs[i] < x_lo) ++i;
    while (start < x_hi - 1e-12 && i < xs.size()) {
        const double stop = std::min(x_hi, start + width);
        double best = 0;
        double best_x = 0;
        bool any = false;
        while (i < xs.size() && xs[i] <= stop) {
            const double v = std::abs(values[i]);
            if (!any || v > best) {
                best = v;
                best_x = xs[i];
                any = true;
            }
            ++i;
        }
        if (any && best > 0) {
            pts.x.push_back(best_x);
            pts.y.push_back(std::log(best));
        }
        start = stop;
    }
    return pts;
}

}  // namespace

FitReport envelope_fit_logx(std::span<const double> xs, std::span<const double> values,
                            double x_lo, double x_hi, double window_width) {
    LinePoints pts = block_maxima(xs, values, x_lo, x_hi, window_width);
    if (pts.x.size() < 4) {
        throw InsufficientDataError("envelope fit needs at least 4 block maxima, got " +
                                    std::to_string(pts.x.size()));
    }
    LineFit lf = fit_line(pts);
    FitReport rep;
    rep.exponent = lf.slope;
    rep.standard_error = lf.slope_se;
    rep.n_points = static_cast<int>(pts.x.size());
    rep.residual_rms = lf.rms;
    rep.log_amplitude = lf.intercept;
    return rep;
}

FitReport envelope_exponent(std::span<const double> seq, std::size_t lo, std::size_t hi,
                            double mult_width) {
    if (hi >= seq.size()) throw CoverageError("envelope window beyond sequence");
    if (lo < 1 || lo >= hi) throw std::invalid_argument("need 1 <= lo < hi");
    if (hi - lo + 1 < 50) throw std::invalid_argument("envelope window shorter than 50");
    if (!(mult_width > 1.0)) throw std::invalid_argument("multiplicative width must exceed 1");
    std::vector<double> xs(hi - lo + 1);
    std::vector<double> vals(hi - lo + 1);
    for (std::size_t n = lo; n <= hi; ++n) {
        xs[n - lo] = std::log(static_cast<double>(n));
        vals[n - lo] = seq[n];
    }
    FitReport rep = envelope_fit_logx(xs, vals, std::log(static_cast<double>(lo)),
                                      std::log(static_cast<double>(hi)), std::log(mult_width));
    rep.window_lo = lo;
    rep.window_hi = hi;
    return rep;
}

OscillationReport sign_changes(std::span<const double> seq, std::size_t lo, std::size_t hi) {
    if (hi >= seq.size()) throw CoverageError("sign-change window beyond sequence");
    if (lo >= hi) throw std::invalid_argument("empty window");
    OscillationReport rep;
    double prev = 0;
    bool have_prev = false;
    for (std::size_t n = lo; n <= hi; ++n) {
        const double v = seq[n];
        if (v == 0) continue;
        if (have_prev && ((prev < 0) != (v < 0))) {
            rep.sign_change_positions.push_back(n);
        }
        prev = v;
        have_prev = true;
    }
    if (rep.sign_change_positions.size() < 3) {
        throw InsufficientDataError("need at least 3 sign changes, found " +
                                    std::to_string(rep.sign_change_positions.size()));
    }
    double acc = 0;
    for (std::size_t j = 0; j + 1 < rep.sign_change_positions.size(); ++j) {
        acc += std::log(static_cast<double>(rep.sign_change_positions[j + 1]) /
                        static_cast<double>(rep.sign_change_positions[j]));
    }
    rep.mean_log_spacing = acc / static_cast<double>(rep.sign_change_positions.size() - 1);
    rep.frequency = std::numbers::pi / rep.mean_log_spacing;
    return rep;
}

OscillationReport initial_oscillation_guess(std::span<const double> seq, std::size_t lo,
                                            std::size_t hi) {
    OscillationReport init = sign_changes(seq, lo, hi);
    FitReport env = envelope_exponent(seq, lo, hi);
    init.exponent = -env.exponent;  // model uses n^{-delta}
    init.amplitude = std::exp(env.log_amplitude);
    // phase so that the model crosses zero at the first recorded change
    const std::size_t n1 = init.sign_change_positions.front();
    const double base = (seq[n1] >= 0 ? 0.0 : std::numbers::pi);
    double phi = base - init.frequency * std::log(static_cast<double>(n1));
    phi = std::remainder(phi, 2.0 * std::numbers::pi);
    init.phase = phi;
    return init;
}

OscillationReport oscillatory_fit(std::span<const double> seq, std::size_t lo, std::size_t hi,
                                  const OscillationReport& init, int max_iterations) {
    if (hi >= seq.size()) throw CoverageError("fit window beyond sequence");
    if (!(init.frequency > 0)) throw std::invalid_argument("initialization needs frequency > 0");
    const std::size_t m = hi - lo + 1;
    if (m < 8) throw std::invalid_argument("fit window too short");

    // internal scaling keeps the normal equations conditioned and makes the
    // fitted exponent/frequency exactly scale-invariant
    double scale = 0;
    for (std::size_t n = lo; n <= hi; ++n) scale = std::max(scale, std::abs(seq[n]));
    if (scale == 0) throw std::invalid_argument("fit window is identically zero");

    std::array<double, 4> th{init.amplitude / scale, init.exponent, init.frequency, init.phase};

    auto chi2 = [&](const std::array<double, 4>& t) {
        double acc = 0;
        for (std::size_t n = lo; n <= hi; ++n) {
            const double ln = std::log(static_cast<double>(n));
            const double mval = t[0] * std::exp(-t[1] * ln) * std::sin(t[2] * ln + t[3]);
            const double r = seq[n] / scale - mval;
            acc += r * r;
        }
        return acc;
    };

    double lambda = 1e-3;
    double best = chi2(th);
    bool converged = false;
    int it = 0;
    for (; it < max_iterations && !converged; ++it) {
        // assemble J^T J and J^T r
        std::array<std::array<double, 4>, 4> ata{};
        std::array<double, 4> atr{};
        for (std::size_t n = lo; n <= hi; ++n) {
            const double ln = std::log(static_cast<double>(n));
            const double decay = std::exp(-th[1] * ln);
            const double arg = th[2] * ln + th[3];
            const double s = std::sin(arg), c = std::cos(arg);
            const std::array<double, 4> J{
                decay * s,                   // d/dA
                -th[0] * ln * decay * s,     // d/d delta
                th[0] * decay * c * ln,      // d/dP
                th[0] * decay * c            // d/d phi
            };
            const double r = seq[n] / scale - th[0] * decay * s;
            for (int a = 0; a < 4; ++a) {
                atr[a] += J[a] * r;
                for (int b = 0; b < 4; ++b) ata[a][b] += J[a] * J[b];
            }
        }

        bool accepted = false;
        for (int inner = 0; inner < 24 && !accepted; ++inner) {
            std::array<std::array<double, 5>, 4> aug{};
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) aug[a][b] = ata[a][b];
                aug[a][a] += lambda * std::max(ata[a][a], 1e-30);
                aug[a][4] = atr[a];
            }
            // Gaussian elimination with partial pivoting
            bool singular = false;
            for (int col = 0; col < 4 && !singular; ++col) {
                int piv = col;
                for (int rr = col + 1; rr < 4; ++rr) {
                    if (std::abs(aug[rr][col]) > std::abs(aug[piv][col])) piv = rr;
                }
                if (std::abs(aug[piv][col]) < 1e-300) {
                    singular = true;
                    break;
                }
                std::swap(aug[piv], aug[col]);
                for (int rr = col + 1; rr < 4; ++rr) {
                    const double f = aug[rr][col] / aug[col][col];
                    for (int cc = col; cc < 5; ++cc) aug[rr][cc] -= f * aug[col][cc];
                }
            }
            if (singular) {
                lambda *= 10;
                continue;
            }
            std::array<double, 4> delta{};
            for (int rr = 3; rr >= 0; --rr) {
                double v = aug[rr][4];
                for (int cc = rr + 1; cc < 4; ++cc) v -= aug[rr][cc] * delta[cc];
                delta[rr] = v / aug[rr][rr];
            }
            std::array<double, 4> cand{th[0] + delta[0], th[1] + delta[1], th[2] + delta[2],
                                       th[3] + delta[3]};
            const double c2 = chi2(cand);
            if (c2 <= best) {
                double rel = 0;
                for (int a = 0; a < 4; ++a) {
                    rel = std::max(rel, std::abs(delta[a]) /
                                            std::max(1e-12, std::abs(cand[a]) + 1e-12));
                }
                th = cand;
                best = c2;
                lambda = std::max(lambda / 3.0, 1e-14);
                accepted = true;
                if (rel < 1e-11) converged = true;
            } else {
                lambda *= 7;
                if (lambda > 1e12) break;
            }
        }
        if (!accepted) {
            // no descent direction even under heavy damping: stationary point
            converged = true;
        }
    }
    if (!converged) {
        throw NonConvergenceError("oscillatory fit did not converge in " +
                                  std::to_string(max_iterations) + " iterations");
    }

    OscillationReport out = init;
    out.amplitude = th[0] * scale;
    out.exponent = th[1];
    out.frequency = th[2];
    out.phase = std::remainder(th[3], 2.0 * std::numbers::pi);
    if (out.amplitude < 0) {  // canonical form: positive amplitude
        out.amplitude = -out.amplitude;
        out.phase = std::remainder(out.phase + std::numbers::pi, 2.0 * std::numbers::pi);
    }
    out.converged = true;
    out.iterations = it;
    out.residual_rms = std::sqrt(best / static_cast<double>(m)) * scale;
    return out;
}

}  // namespace ortho
