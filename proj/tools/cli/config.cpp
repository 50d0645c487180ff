#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hmf/rational.hpp"

namespace hmf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::int64_t parse_int(const std::string& value, const std::string& where) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw PreconditionError(where + ": expected an integer, got '" + value + "'");
  return out;
}

double parse_real(const std::string& value, const std::string& where) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw PreconditionError(where + ": expected a number, got '" + value + "'");
  }
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "text") return OutputFormat::text;
  throw PreconditionError("unknown output format '" + name + "'");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::text: return "text";
  }
  return "text";
}

void apply_config_text(RunConfig& config, const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = origin + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw PreconditionError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "d") config.d = parse_int(value, where);
    else if (key == "trace_bound") config.trace_bound = parse_int(value, where);
    else if (key == "norm_bound") config.norm_bound = parse_int(value, where);
    else if (key == "lseries_bound") config.lseries_bound = parse_int(value, where);
    else if (key == "tolerance") config.tolerance = parse_real(value, where);
    else if (key == "cache_dir") config.cache_dir = value;
    else if (key == "format") config.format = parse_format(value);
    else throw PreconditionError(where + ": unknown key '" + key + "'");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(config, buf.str(), path.string());
}

void validate(const RunConfig& config) {
  if (config.d < 1) throw PreconditionError("d must be positive");
  if (config.trace_bound < 1 || config.norm_bound < 1 || config.lseries_bound < 1)
    throw PreconditionError("bounds must be positive");
  if (!(config.tolerance > 0 && config.tolerance < 1)) throw PreconditionError("tolerance must lie in (0, 1)");
}

}  // namespace hmf::cli
