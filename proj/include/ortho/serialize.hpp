#pragma once

#include <string>

#include <json.hpp>

#include "ortho/coefficients.hpp"
#include "ortho/fitting.hpp"
#include "ortho/resolvent.hpp"
#include "ortho/zeros.hpp"

namespace ortho {

using Json = nlohmann::ordered_json;

/// Fixed-format rendering so identical runs emit identical bytes.
std::string render_double(double v);
std::string render_bigfloat(const BigFloat& v, unsigned digits = 40);
std::string render_rational(const BigRational& q);

/// CSV with columns n, c_n (exact p/q), C_n (exact p/q).
std::string exact_table_csv(const ExactCoefficientTable& table);
/// CSV with columns n, c_n, C_n rendered at the table's precision.
std::string float_table_csv(const FloatCoefficientTable& table);
/// Parses the exact CSV back (used by the load-and-verify path).
ExactCoefficientTable parse_exact_table_csv(const std::string& text);

/// CSV with columns u, y, kappa, r.
std::string resolvent_csv(const ResolventGrid& rg);
Json resolvent_header_json(const ResolventGrid& rg);

Json winding_json(const WindingCertificate& cert);
Json zero_json(const ZeroEstimate& z);
Json fit_json(const FitReport& fit);
Json oscillation_json(const OscillationReport& osc);
Json wall_report_json(const WallReport& rep);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ortho
