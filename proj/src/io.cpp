#include "dampwave/io.hpp"
#include "dampwave/errors.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace dampwave::io {

using nlohmann::json;

nlohmann::json report_to_json(const EnergyReport& r) {
    json j;
    j["v"] = kSchemaVersion;
    j["t"] = r.t;
    j["e_lambda"] = r.e_lambda;
    j["e_tilde"] = r.e_tilde;
    j["m_lambda"] = r.m_lambda;
    j["y_lambda"] = r.y_lambda;
    j["z_lambda"] = r.z_lambda;
    j["f_term"] = r.f_term;
    j["uf_term"] = r.uf_term;
    j["f_abs"] = r.f_abs;
    j["uf_abs"] = r.uf_abs;
    j["l2"] = r.l2;
    j["h1"] = r.h1;
    j["energy"] = r.energy;
    j["grad_psi"] = r.grad_psi;
    j["ut_psi"] = r.ut_psi;
    j["fg_hist"] = r.fg_hist;
    j["sup_u"] = r.sup_u;
    j["theorem_weights"] = {
        {"energy", r.theorem_weights.energy()},
        {"grad", r.theorem_weights.grad},
        {"dt", r.theorem_weights.dt},
        {"mass", r.theorem_weights.mass},
        {"grad_hist", r.theorem_weights.grad_hist},
        {"dt_hist", r.theorem_weights.dt_hist},
    };
    return j;
}

void write_ndjson(std::ostream& os, const std::vector<EnergyReport>& series) {
    for (const auto& r : series)
        os << report_to_json(r).dump() << "\n";
}

std::pair<std::vector<double>, std::vector<double>>
read_ndjson_field(std::istream& is, const std::string& quantity) {
    std::vector<double> ts, vs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        json j = json::parse(line);
        double v;
        if (j.contains(quantity)) {
            v = j[quantity].get<double>();
        } else if (quantity.rfind("tw_", 0) == 0 && j.contains("theorem_weights")) {
            v = j["theorem_weights"].at(quantity.substr(3)).get<double>();
        } else {
            throw InvalidParameter("ndjson line lacks field '" + quantity + "'");
        }
        ts.push_back(j.at("t").get<double>());
        vs.push_back(v);
    }
    return {ts, vs};
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json manifest_json(const RunManifest& m) {
    return json{{"command", m.command},
                {"config_hash", m.config_hash},
                {"seed", m.seed},
                {"tool_version", kToolVersion},
                {"outputs", m.outputs}};
}

void write_csv_lifespan(std::ostream& os, const std::vector<LifespanRecord>& records) {
    os << "epsilon,t_blowup,h,tau,refined_agreement\n";
    for (const auto& r : records) {
        os << r.epsilon << ",";
        if (r.survived())
            os << "inf";
        else
            os << r.t_blowup;
        os << "," << r.h << "," << r.tau << ",";
        if (std::isfinite(r.refined_agreement))
            os << r.refined_agreement;
        os << "\n";
    }
}

void write_csv_dichotomy(std::ostream& os, const experiments::DichotomyScan& scan) {
    os << "p,p_c,epsilon,verdict\n";
    for (std::size_t i = 0; i < scan.p_values.size(); ++i)
        os << scan.p_values[i] << "," << scan.p_c << "," << scan.epsilon << ","
           << (scan.blew_up[i] ? "blew_up" : "survived") << "\n";
}

void write_svg_loglog(std::ostream& os, const std::vector<double>& xs,
                      const std::vector<double>& ys, double slope, double intercept,
                      const std::string& x_label, const std::string& y_label) {
    const int W = 480, H = 360, M = 50;
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        lx[i] = std::log10(xs[i]);
        ly[i] = std::log10(ys[i]);
        lx0 = std::min(lx0, lx[i]);
        lx1 = std::max(lx1, lx[i]);
        ly0 = std::min(ly0, ly[i]);
        ly1 = std::max(ly1, ly[i]);
    }
    if (lx1 - lx0 < 1e-12) lx1 = lx0 + 1.0;
    if (ly1 - ly0 < 1e-12) ly1 = ly0 + 1.0;
    auto X = [&](double v) { return M + (v - lx0) / (lx1 - lx0) * (W - 2 * M); };
    auto Y = [&](double v) { return H - M - (v - ly0) / (ly1 - ly0) * (H - 2 * M); };

    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    os << "<line x1='" << M << "' y1='" << H - M << "' x2='" << W - M << "' y2='" << H - M
       << "' stroke='black'/>\n";
    os << "<line x1='" << M << "' y1='" << M << "' x2='" << M << "' y2='" << H - M
       << "' stroke='black'/>\n";
    for (std::size_t i = 0; i < lx.size(); ++i)
        os << "<circle cx='" << X(lx[i]) << "' cy='" << Y(ly[i]) << "' r='3' fill='steelblue'/>\n";
    // fitted line in natural logs: y = slope * ln(x) + intercept
    const double ln10 = std::log(10.0);
    auto fit_ly = [&](double lgx) { return (slope * lgx * ln10 + intercept) / ln10; };
    os << "<line x1='" << X(lx0) << "' y1='" << Y(fit_ly(lx0)) << "' x2='" << X(lx1)
       << "' y2='" << Y(fit_ly(lx1)) << "' stroke='crimson'/>\n";
    os << "<text x='" << W / 2 << "' y='" << H - 12 << "' font-size='12' text-anchor='middle'>"
       << x_label << "</text>\n";
    os << "<text x='14' y='" << H / 2 << "' font-size='12' text-anchor='middle' transform='rotate(-90 14 "
       << H / 2 << ")'>" << y_label << "</text>\n";
    os << "<text x='" << W - M << "' y='" << M << "' font-size='12' text-anchor='end'>slope "
       << slope << "</text>\n</svg>\n";
}

} // namespace dampwave::io
