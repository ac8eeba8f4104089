#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "homog/experiments.hpp"

namespace homog {

/// Flat `key = value` file. Blank lines and text after '#' are ignored; keys
/// may appear once. Errors are ConfigError with a "source:line: " prefix.
SweepConfig parse_sweep_config(std::istream& in, const std::string& source);

/// Reads the file; a missing or unreadable file is a ConfigError naming the path.
SweepConfig load_sweep_config(const std::string& path);

/// Comma-separated list of numbers, e.g. "0.4, 0.2, 0.1".
std::vector<double> parse_number_list(const std::string& text);

/// Strict locale-independent number parsing (the whole string must be consumed).
double parse_number(const std::string& text);

/// The config as ordered key -> value strings (round-trips through parse_sweep_config).
std::map<std::string, std::string> config_entries(const SweepConfig& config);

}  // namespace homog
