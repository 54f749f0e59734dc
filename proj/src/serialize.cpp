#include "ortho/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ortho {

namespace {

BigRational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return BigRational(BigInt(text));
    BigRational r(BigInt(text.substr(0, slash)));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::runtime_error("zero denominator in: " + text);
    r /= BigRational(den);  // division keeps the stored form canonical
    return r;
}

}  // namespace

std::string render_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string render_bigfloat(const BigFloat& v, unsigned digits) {
    return v.str(digits, std::ios_base::scientific);
}

std::string render_rational(const BigRational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string exact_table_csv(const ExactCoefficientTable& table) {
    std::ostringstream os;
    os << "n,c_n,C_n\n";
    BigRational run = 0;
    for (std::size_t n = 0; n < table.size(); ++n) {
        run += table[n];
        os << n << ',' << render_rational(table[n]) << ',' << render_rational(run) << '\n';
    }
    return os.str();
}

std::string float_table_csv(const FloatCoefficientTable& table) {
    const unsigned digits = digits_for_bits(table.config().mantissa_bits) + 2;
    std::ostringstream os;
    os << "n,c_n,C_n\n";
    for (std::size_t n = 0; n < table.size(); ++n) {
        os << n << ',' << render_bigfloat(table[n], digits) << ','
           << render_bigfloat(table.partial_sum(n), digits) << '\n';
    }
    return os.str();
}

ExactCoefficientTable parse_exact_table_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty CSV");
    std::vector<BigRational> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("malformed CSV row: " + line);
        }
        values.push_back(parse_rational(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    if (values.empty()) throw std::runtime_error("CSV carries no coefficients");
    return ExactCoefficientTable(std::move(values));
}

std::string resolvent_csv(const ResolventGrid& rg) {
    std::ostringstream os;
    os << "u,y,kappa,r\n";
    for (std::size_t j = 0; j < rg.grid.n_nodes(); ++j) {
        const double u = rg.grid.node(j);
        os << render_double(u) << ',' << render_double(std::exp(u)) << ','
           << render_double(rg.kappa[j]) << ',' << render_double(rg.r[j]) << '\n';
    }
    return os.str();
}

Json resolvent_header_json(const ResolventGrid& rg) {
    Json j;
    j["step"] = render_double(rg.grid.step);
    j["u_max"] = render_double(rg.grid.u_max);
    j["residual_sup"] = render_double(rg.residual_sup);
    j["tol"] = render_double(rg.tol);
    return j;
}

Json winding_json(const WindingCertificate& cert) {
    Json j;
    j["rectangle"] = {{"sigma_min", render_double(cert.rect.sigma_min)},
                      {"sigma_max", render_double(cert.rect.sigma_max)},
                      {"tau_min", render_double(cert.rect.tau_min)},
                      {"tau_max", render_double(cert.rect.tau_max)}};
    j["winding"] = cert.winding;
    j["min_boundary_modulus"] = render_double(cert.min_boundary_modulus);
    j["samples_used"] = cert.samples_used;
    return j;
}

Json zero_json(const ZeroEstimate& z) {
    Json j;
    j["re"] = render_bigfloat(z.location.re);
    j["im"] = render_bigfloat(z.location.im);
    j["residual_modulus"] = render_double(z.residual_modulus);
    j["iterations"] = z.iterations;
    j["converged"] = z.converged;
    return j;
}

Json fit_json(const FitReport& fit) {
    Json j;
    j["exponent"] = render_double(fit.exponent);
    j["standard_error"] = render_double(fit.standard_error);
    j["window"] = {fit.window_lo, fit.window_hi};
    j["n_points"] = fit.n_points;
    j["residual_rms"] = render_double(fit.residual_rms);
    return j;
}

Json oscillation_json(const OscillationReport& osc) {
    Json j;
    j["amplitude"] = render_double(osc.amplitude);
    j["exponent"] = render_double(osc.exponent);
    j["frequency"] = render_double(osc.frequency);
    j["phase"] = render_double(osc.phase);
    j["sign_change_positions"] = osc.sign_change_positions;
    j["mean_log_spacing"] = render_double(osc.mean_log_spacing);
    j["converged"] = osc.converged;
    j["residual_rms"] = render_double(osc.residual_rms);
    return j;
}

Json wall_report_json(const WallReport& rep) {
    Json j;
    j["wall"] = rep.wall;
    j["violations"] = rep.violations;
    Json pts = Json::array();
    for (const auto& p : rep.points) {
        pts.push_back({{"y", render_double(p.y)},
                       {"re", render_double(p.re)},
                       {"im", render_double(p.im)},
                       {"ok", p.ok}});
    }
    j["points"] = pts;
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace ortho
