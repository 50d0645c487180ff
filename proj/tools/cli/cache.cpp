#include "cache.hpp"

#include <zlib.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

namespace hmf::cli {

namespace fs = std::filesystem;

std::uint32_t checksum(const std::string& payload) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string expansion_file_text(const FourierExpansion& f) {
  const nlohmann::json body = to_json(f);
  const std::string payload = body.dump();
  nlohmann::json doc{{"checksum", checksum(payload)}, {"expansion", body}};
  return doc.dump() + "\n";
}

namespace {

FourierExpansion parse_expansion_text(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw CacheCorruption(origin + ": not valid JSON");
  }
  if (!doc.is_object()) throw CacheCorruption(origin + ": not an expansion document");
  if (!doc.contains("checksum")) {
    // bare expansion JSON
    try {
      return expansion_from_json(doc);
    } catch (const nlohmann::json::exception& e) {
      throw CacheCorruption(origin + ": malformed expansion (" + e.what() + ")");
    }
  }
  if (!doc.contains("expansion") || !doc["checksum"].is_number_unsigned())
    throw CacheCorruption(origin + ": malformed envelope");
  const std::string payload = doc["expansion"].dump();
  if (checksum(payload) != doc["checksum"].get<std::uint32_t>())
    throw CacheCorruption(origin + ": checksum mismatch");
  try {
    return expansion_from_json(doc["expansion"]);
  } catch (const nlohmann::json::exception& e) {
    throw CacheCorruption(origin + ": malformed expansion (" + e.what() + ")");
  }
}

}  // namespace

FourierExpansion read_expansion_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_expansion_text(buf.str(), path.string());
}

fs::path ExpansionCache::path_for(std::int64_t d, const std::string& recipe, std::int64_t trace_bound) const {
  std::string name = "d" + std::to_string(d) + "_";
  for (char c : recipe) name += std::isalnum(static_cast<unsigned char>(c)) ? c : '-';
  name += "_T" + std::to_string(trace_bound) + ".json";
  return dir_ / name;
}

std::optional<FourierExpansion> ExpansionCache::load(std::int64_t d, const std::string& recipe,
                                                     std::int64_t trace_bound) const {
  if (!enabled()) return std::nullopt;
  const fs::path p = path_for(d, recipe, trace_bound);
  if (!fs::exists(p)) return std::nullopt;
  return read_expansion_file(p);
}

void ExpansionCache::store(std::int64_t d, const std::string& recipe, std::int64_t trace_bound,
                           const FourierExpansion& f) const {
  if (!enabled()) return;
  fs::create_directories(dir_);
  const fs::path target = path_for(d, recipe, trace_bound);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << expansion_file_text(f);
    if (!out.flush()) throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, target);
}

FourierExpansion ExpansionCache::get_or_build(std::int64_t d, const std::string& recipe, std::int64_t trace_bound,
                                              const std::function<FourierExpansion()>& build) const {
  if (auto hit = load(d, recipe, trace_bound)) return std::move(*hit);
  FourierExpansion f = build();
  store(d, recipe, trace_bound, f);
  return f;
}

}  // namespace hmf::cli
