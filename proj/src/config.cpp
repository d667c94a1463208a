#include "dampwave/config.hpp"
#include "dampwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dampwave::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

const std::vector<std::string> kKnownKeys = {
    "dim",      "geometry",   "r_in",    "r_outer",        "h",
    "tau",      "t_max",      "lambda",  "t0",             "nonlinearity",
    "p",        "c_f",        "profile", "epsilon",        "mu",
    "r_cut",    "u1_scale",   "blowup_threshold",          "output_stride",
    "damping",  "tilde_weight",          "seed"};

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigInvalid("key '" + key + "': not a number: '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ConfigInvalid("key '" + key + "': not an integer: '" + v + "'");
    }
}

} // namespace

std::string ParsedConfig::canonical_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : resolved)
        os << k << "=" << v << "\n";
    return os.str();
}

ParsedConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigInvalid("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (val.empty())
            throw ConfigInvalid("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        kv[key] = val;
    }

    auto get = [&](const std::string& k, const std::string& dflt) {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    };

    ParsedConfig pc;
    SimConfig& c = pc.sim;

    const int dim = int(to_long("dim", get("dim", "1")));
    if (dim < 1 || dim > 9)
        throw ConfigInvalid("dim must lie in [1, 9]");
    c.domain.dim = dim;
    const std::string geom = get("geometry", dim == 1 ? "full_line" : "radial_exterior");
    if (geom == "full_line")
        c.domain.geometry = Geometry::FullLine;
    else if (geom == "radial_exterior")
        c.domain.geometry = Geometry::RadialExterior;
    else
        throw ConfigInvalid("geometry must be full_line or radial_exterior");

    c.domain.r_in = to_double("r_in", get("r_in", "1"));
    c.domain.h = to_double("h", get("h", "0.05"));
    c.tau = to_double("tau", get("tau", "0.025"));
    c.t_max = to_double("t_max", get("t_max", "100"));

    const double lambda = to_double("lambda", get("lambda", "0"));
    const double t0 = to_double("t0", get("t0", "1"));
    try {
        c.weight = weights::WeightParams::make(dim, lambda, t0);
    } catch (const InvalidParameter& e) {
        throw ConfigInvalid(e.what());
    }

    const std::string nl = get("nonlinearity", kv.count("p") ? "odd_power" : "zero");
    const double p = to_double("p", get("p", "2"));
    try {
        if (nl == "zero")
            c.nonlin = NonlinearitySpec{NonlinKind::Zero, p, p};
        else if (nl == "odd_power")
            c.nonlin = NonlinearitySpec::make(NonlinKind::OddPower, p);
        else if (nl == "absolute_power")
            c.nonlin = NonlinearitySpec::make(NonlinKind::AbsolutePower, p);
        else
            throw ConfigInvalid("nonlinearity must be odd_power, absolute_power or zero");
    } catch (const InvalidParameter& e) {
        throw ConfigInvalid(e.what());
    }
    if (kv.count("c_f"))
        c.nonlin.c_f = to_double("c_f", kv["c_f"]);

    const std::string prof = get("profile", "bump");
    if (prof == "bump")
        c.data.profile = InitialData::Profile::Bump;
    else if (prof == "powertail")
        c.data.profile = InitialData::Profile::PowerTail;
    else if (prof == "zero")
        c.data.profile = InitialData::Profile::Zero;
    else
        throw ConfigInvalid("profile must be bump, powertail or zero");

    c.data.epsilon = to_double("epsilon", get("epsilon", "1"));
    c.data.mu = to_double("mu", get("mu", std::to_string(lambda + 0.5 * dim)));
    c.data.r_cut = to_double("r_cut", get("r_cut", "5"));
    c.data.u1_scale = to_double("u1_scale", get("u1_scale", "0"));
    c.blowup_threshold = to_double("blowup_threshold", get("blowup_threshold", "1e6"));
    c.output_stride = int(to_long("output_stride", get("output_stride", "20")));

    const std::string damp = get("damping", "centered");
    if (damp == "centered")
        c.damping = SimConfig::Damping::Centered;
    else if (damp == "backward")
        c.damping = SimConfig::Damping::Backward;
    else
        throw ConfigInvalid("damping must be centered or backward");

    const std::string tw = get("tilde_weight", dim == 1 ? "1" : "0");
    c.tilde_weight = tw == "1" || tw == "true";

    // truncation radius defaults to the propagation-cone rule
    const std::string ro = get("r_outer", "");
    if (ro.empty())
        c.domain.r_outer = c.data.r_cut + c.t_max + 6.0 * c.domain.h;
    else
        c.domain.r_outer = to_double("r_outer", ro);

    pc.seed = std::uint64_t(to_long("seed", get("seed", "0")));

    c.validate();

    auto put = [&](const std::string& k, auto v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        pc.resolved[k] = os.str();
    };
    put("dim", dim);
    pc.resolved["geometry"] = geom;
    put("r_in", c.domain.r_in);
    put("r_outer", c.domain.r_outer);
    put("h", c.domain.h);
    put("tau", c.tau);
    put("t_max", c.t_max);
    put("lambda", lambda);
    put("t0", t0);
    pc.resolved["nonlinearity"] = nl;
    put("p", p);
    put("c_f", c.nonlin.c_f);
    pc.resolved["profile"] = prof;
    put("epsilon", c.data.epsilon);
    put("mu", c.data.mu);
    put("r_cut", c.data.r_cut);
    put("u1_scale", c.data.u1_scale);
    put("blowup_threshold", c.blowup_threshold);
    put("output_stride", c.output_stride);
    pc.resolved["damping"] = damp;
    put("tilde_weight", c.tilde_weight ? 1 : 0);
    put("seed", pc.seed);
    return pc;
}

ParsedConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw ConfigInvalid("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace dampwave::config
