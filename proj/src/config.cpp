#include "homog/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "homog/error.hpp"

namespace homog {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_unsigned(const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (text.empty() || res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("expected a nonnegative integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("expected true or false, got '" + text + "'");
}

using Setter = std::function<void(SweepConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"name", [](SweepConfig& c, const std::string& v) { c.name = v; }},
      {"alpha", [](SweepConfig& c, const std::string& v) { c.alpha = parse_number(v); }},
      {"beta", [](SweepConfig& c, const std::string& v) { c.beta = parse_number(v); }},
      {"eps", [](SweepConfig& c, const std::string& v) { c.eps_list = parse_number_list(v); }},
      {"t", [](SweepConfig& c, const std::string& v) { c.t = parse_number(v); }},
      {"x", [](SweepConfig& c, const std::string& v) { c.x = parse_number(v); }},
      {"g", [](SweepConfig& c, const std::string& v) { c.g = v; }},
      {"n_paths", [](SweepConfig& c, const std::string& v) { c.n_paths = parse_unsigned(v); }},
      {"n_fields", [](SweepConfig& c, const std::string& v) { c.n_fields = parse_unsigned(v); }},
      {"seed", [](SweepConfig& c, const std::string& v) { c.seed = parse_unsigned(v); }},
      {"dt", [](SweepConfig& c, const std::string& v) { c.dt = parse_number(v); }},
      {"points", [](SweepConfig& c, const std::string& v) { c.points = parse_number(v); }},
      {"log_cap", [](SweepConfig& c, const std::string& v) { c.log_cap = parse_number(v); }},
      {"antithetic", [](SweepConfig& c, const std::string& v) { c.antithetic = parse_bool(v); }},
      {"timing", [](SweepConfig& c, const std::string& v) { c.timing = parse_bool(v); }},
      {"kernel_t", [](SweepConfig& c, const std::string& v) { c.field.kernel_t = v; }},
      {"width_t", [](SweepConfig& c, const std::string& v) { c.field.width_t = parse_number(v); }},
      {"kernel_x", [](SweepConfig& c, const std::string& v) { c.field.kernel_x = v; }},
      {"width_x", [](SweepConfig& c, const std::string& v) { c.field.width_x = parse_number(v); }},
      {"theta", [](SweepConfig& c, const std::string& v) { c.field.theta = parse_number(v); }},
      {"marks", [](SweepConfig& c, const std::string& v) { c.field.marks = v; }},
      {"amplitude", [](SweepConfig& c, const std::string& v) { c.field.amplitude = parse_number(v); }},
      {"n_limit", [](SweepConfig& c, const std::string& v) { c.n_limit = parse_unsigned(v); }},
      {"limit_paths", [](SweepConfig& c, const std::string& v) { c.limit_paths = parse_unsigned(v); }},
      {"limit_two_sided", [](SweepConfig& c, const std::string& v) { c.limit.two_sided = parse_bool(v); }},
      {"dyadic_level", [](SweepConfig& c, const std::string& v) {
         c.limit.dyadic_level = static_cast<int>(parse_unsigned(v));
       }},
      {"temporal_dx", [](SweepConfig& c, const std::string& v) { c.limit.temporal_dx = parse_number(v); }},
      {"x_halfwidth", [](SweepConfig& c, const std::string& v) { c.limit.x_halfwidth = parse_number(v); }},
      {"spatial_dt", [](SweepConfig& c, const std::string& v) { c.limit.spatial.dt = parse_number(v); }},
      {"spatial_dy", [](SweepConfig& c, const std::string& v) { c.limit.spatial.dy = parse_number(v); }},
  };
  return table;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

}  // namespace

double parse_number(const std::string& text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != end) {
    throw std::invalid_argument("expected a number, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item));
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

SweepConfig parse_sweep_config(std::istream& in, const std::string& source) {
  SweepConfig config;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("missing key");
    const auto it = setters().find(key);
    if (it == setters().end()) fail("unknown key '" + key + "'");
    if (!seen.insert(key).second) fail("duplicate key '" + key + "'");
    if (value.empty()) fail("missing value for '" + key + "'");
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      fail(key + ": " + e.what());
    }
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_sweep_config(in, path);
}

std::map<std::string, std::string> config_entries(const SweepConfig& c) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  auto n = [](double v) { return format_number(v); };
  auto u = [](std::uint64_t v) { return std::to_string(v); };
  return {
      {"name", c.name},
      {"alpha", n(c.alpha)},
      {"beta", n(c.beta)},
      {"eps", join(c.eps_list)},
      {"t", n(c.t)},
      {"x", n(c.x)},
      {"g", c.g},
      {"n_paths", u(c.n_paths)},
      {"n_fields", u(c.n_fields)},
      {"seed", u(c.seed)},
      {"dt", n(c.dt)},
      {"points", n(c.points)},
      {"log_cap", n(c.log_cap)},
      {"antithetic", b(c.antithetic)},
      {"timing", b(c.timing)},
      {"kernel_t", c.field.kernel_t},
      {"width_t", n(c.field.width_t)},
      {"kernel_x", c.field.kernel_x},
      {"width_x", n(c.field.width_x)},
      {"theta", n(c.field.theta)},
      {"marks", c.field.marks},
      {"amplitude", n(c.field.amplitude)},
      {"n_limit", u(c.n_limit)},
      {"limit_paths", u(c.limit_paths)},
      {"limit_two_sided", b(c.limit.two_sided)},
      {"dyadic_level", u(static_cast<std::uint64_t>(c.limit.dyadic_level))},
      {"temporal_dx", n(c.limit.temporal_dx)},
      {"x_halfwidth", n(c.limit.x_halfwidth)},
      {"spatial_dt", n(c.limit.spatial.dt)},
      {"spatial_dy", n(c.limit.spatial.dy)},
  };
}

}  // namespace homog
