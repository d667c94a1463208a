#ifndef DAMPWAVE_IO_HPP
#define DAMPWAVE_IO_HPP

#include "dampwave/experiments.hpp"
#include "dampwave/functionals.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace dampwave::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "dampwave 0.1.0";

nlohmann::json report_to_json(const EnergyReport& r);
void write_ndjson(std::ostream& os, const std::vector<EnergyReport>& series);

// (t, value) pairs of one field from an NDJSON stream; tolerant of extra
// fields so synthetic inputs work too.
std::pair<std::vector<double>, std::vector<double>>
read_ndjson_field(std::istream& is, const std::string& quantity);

std::string fnv1a_hex(std::string_view data);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
};

nlohmann::json manifest_json(const RunManifest& m);

void write_csv_lifespan(std::ostream& os, const std::vector<LifespanRecord>& records);
void write_csv_dichotomy(std::ostream& os, const experiments::DichotomyScan& scan);

// Minimal static log-log scatter with the fitted line.
void write_svg_loglog(std::ostream& os, const std::vector<double>& xs,
                      const std::vector<double>& ys, double slope, double intercept,
                      const std::string& x_label, const std::string& y_label);

} // namespace dampwave::io

#endif
