#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace hmf::cli {

enum class OutputFormat { json, csv, text };

struct RunConfig {
  std::int64_t d = 5;
  std::int64_t trace_bound = 40;
  std::int64_t norm_bound = 200;
  std::int64_t lseries_bound = 10000;
  double tolerance = 1e-3;
  std::filesystem::path cache_dir;  // empty disables caching
  OutputFormat format = OutputFormat::text;
};

inline constexpr const char* kCacheDirEnv = "HMF_CACHE_DIR";

/// Parses "key = value" lines; '#' starts a comment. Unknown keys are errors.
void apply_config_text(RunConfig& config, const std::string& text, const std::string& origin);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat format);

/// Throws PreconditionError unless bounds are positive and 0 < tolerance < 1.
void validate(const RunConfig& config);

}  // namespace hmf::cli
