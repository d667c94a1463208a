#ifndef DAMPWAVE_CONFIG_HPP
#define DAMPWAVE_CONFIG_HPP

// Flat key=value run configuration ('#' comments, one key per line).

#include "dampwave/solver.hpp"

#include <map>
#include <string>

namespace dampwave::config {

struct ParsedConfig {
    SimConfig sim;
    std::map<std::string, std::string> resolved; // every key after defaults
    std::uint64_t seed = 0;

    std::string canonical_text() const; // sorted key=value block, for hashing
};

ParsedConfig parse_config(const std::string& path);
ParsedConfig parse_config_text(const std::string& text);

} // namespace dampwave::config

#endif
