#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "hmf/fourier.hpp"

namespace hmf::cli {

class CacheCorruption : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expansion cache keyed by (d, recipe, trace bound). Each file stores the
/// expansion JSON together with its CRC-32.
class ExpansionCache {
 public:
  explicit ExpansionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }
  std::filesystem::path path_for(std::int64_t d, const std::string& recipe, std::int64_t trace_bound) const;

  /// nullopt on a miss; CacheCorruption when the checksum or the document is bad.
  std::optional<FourierExpansion> load(std::int64_t d, const std::string& recipe, std::int64_t trace_bound) const;
  /// Writes to a temporary file in the same directory, then renames.
  void store(std::int64_t d, const std::string& recipe, std::int64_t trace_bound, const FourierExpansion& f) const;

  FourierExpansion get_or_build(std::int64_t d, const std::string& recipe, std::int64_t trace_bound,
                                const std::function<FourierExpansion()>& build) const;

 private:
  std::filesystem::path dir_;
};

std::uint32_t checksum(const std::string& payload);

/// Reads an expansion file written by the cache or by `eis`/`bracket`.
FourierExpansion read_expansion_file(const std::filesystem::path& path);
/// Serialized file body: {"checksum": ..., "expansion": ...}.
std::string expansion_file_text(const FourierExpansion& f);

}  // namespace hmf::cli
