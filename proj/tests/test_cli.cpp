#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cache.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "hmf/forms.hpp"

namespace fs = std::filesystem;
using namespace hmf;
using namespace hmf::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hmf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("hmf_cli_test_" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) {
    if (value) ::setenv(kCacheDirEnv, value, 1);
    else ::unsetenv(kCacheDirEnv);
  }
  ~EnvGuard() { ::unsetenv(kCacheDirEnv); }
};

}  // namespace

TEST(Config, DefaultsAndText) {
  RunConfig c;
  EXPECT_EQ(c.d, 5);
  EXPECT_EQ(c.format, OutputFormat::text);
  apply_config_text(c, "# comment\nd = 13\ntrace_bound=25\n\ntolerance = 0.01  # trailing\nformat = json\n", "test");
  EXPECT_EQ(c.d, 13);
  EXPECT_EQ(c.trace_bound, 25);
  EXPECT_DOUBLE_EQ(c.tolerance, 0.01);
  EXPECT_EQ(c.format, OutputFormat::json);
  EXPECT_THROW(apply_config_text(c, "bogus = 1\n", "test"), PreconditionError);
  EXPECT_THROW(apply_config_text(c, "d 5\n", "test"), PreconditionError);
  EXPECT_THROW(apply_config_text(c, "d = five\n", "test"), PreconditionError);
  EXPECT_THROW(parse_format("yaml"), PreconditionError);
  RunConfig bad;
  bad.tolerance = 2;
  EXPECT_THROW(validate(bad), PreconditionError);
  bad = RunConfig{};
  bad.norm_bound = 0;
  EXPECT_THROW(validate(bad), PreconditionError);
}

TEST(Cli, ExitCodes) {
  EnvGuard env(nullptr);
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kSuccess);
  EXPECT_EQ(invoke({"--d", "4", "field"}).code, kUsage);
  EXPECT_EQ(invoke({"--d", "5", "bogus"}).code, kUsage);
  EXPECT_EQ(invoke({"--format", "yaml", "field"}).code, kUsage);
  EXPECT_EQ(invoke({"--d", "1", "eis", "--k", "2"}).code, kUsage);
  Result ok = invoke({"--d", "5", "field"});
  EXPECT_EQ(ok.code, kSuccess);
  EXPECT_NE(ok.out.find("discriminant: 5"), std::string::npos);
  Result missing = invoke({"eigencheck", "--in", "/nonexistent/file.json"});
  EXPECT_NE(missing.code, kSuccess);
  EXPECT_EQ(missing.err.rfind("error: ", 0), 0u);
}

TEST(Cli, ConfigFileAndFlagOverride) {
  EnvGuard env(nullptr);
  TempDir tmp;
  const fs::path cfg = tmp.path() / "run.cfg";
  write_file(cfg, "d = 1\ntrace_bound = 7\nformat = json\n");
  Result r = invoke({"--config", cfg.string(), "eis", "--k", "4"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  nlohmann::json doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["expansion"]["trace_bound"], 7);
  EXPECT_EQ(doc["expansion"]["field"]["d"], 1);
  Result over = invoke({"--config", cfg.string(), "--trace-bound", "4", "eis", "--k", "4"});
  ASSERT_EQ(over.code, kSuccess);
  EXPECT_EQ(nlohmann::json::parse(over.out)["expansion"]["trace_bound"], 4);
  write_file(cfg, "unknown_key = 3\n");
  EXPECT_EQ(invoke({"--config", cfg.string(), "field"}).code, kUsage);
  EXPECT_EQ(invoke({"--config", (tmp.path() / "missing.cfg").string(), "field"}).code, kUsage);
}

TEST(Cli, EnvironmentCacheDirectory) {
  TempDir tmp;
  EnvGuard env(tmp.path().c_str());
  Result r = invoke({"--d", "1", "--trace-bound", "20", "--norm-bound", "20", "duke-ghate"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_FALSE(fs::is_empty(tmp.path()));
  TempDir other;
  Result flag = invoke({"--cache-dir", other.path().string(), "--d", "1", "--trace-bound", "20", "duke-ghate"});
  ASSERT_EQ(flag.code, kSuccess);
  EXPECT_FALSE(fs::is_empty(other.path()));
}

TEST(Cli, WarmCacheIsByteIdentical) {
  EnvGuard env(nullptr);
  TempDir tmp;
  const std::vector<std::string> args = {"--cache-dir", tmp.path().string(), "--d", "5", "--norm-bound", "60",
                                         "main-theorem", "--case", "1"};
  Result cold = invoke(args);
  ASSERT_NE(cold.code, kUsage) << cold.err;
  ASSERT_NE(cold.code, kInternal) << cold.err;
  Result warm = invoke(args);
  EXPECT_EQ(warm.code, cold.code);
  EXPECT_EQ(warm.out, cold.out);
  Result uncached = invoke({"--d", "5", "--norm-bound", "60", "main-theorem", "--case", "1"});
  EXPECT_EQ(uncached.out, cold.out);
}

TEST(Cli, CorruptedCacheIsDetected) {
  EnvGuard env(nullptr);
  TempDir tmp;
  const std::vector<std::string> args = {"--cache-dir", tmp.path().string(), "--d", "1", "--trace-bound", "30",
                                         "duke-ghate"};
  ASSERT_EQ(invoke(args).code, kSuccess);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(tmp.path())) files.push_back(entry.path());
  ASSERT_FALSE(files.empty());
  std::string text = slurp(files.front());
  const auto pos = text.find("\"coeff_a\":\"");
  ASSERT_NE(pos, std::string::npos);
  const std::size_t digit = pos + 11;
  text[digit] = text[digit] == '7' ? '8' : '7';
  write_file(files.front(), text);
  Result r = invoke(args);
  EXPECT_EQ(r.code, kInternal);
  EXPECT_NE(r.err.find("cache corruption"), std::string::npos);
  write_file(files.front(), "{not json");
  EXPECT_EQ(invoke(args).code, kInternal);
}

TEST(Cache, StoreLoadRoundTrip) {
  TempDir tmp;
  ExpansionCache cache(tmp.path());
  EXPECT_TRUE(cache.enabled());
  EXPECT_FALSE(ExpansionCache(fs::path()).enabled());
  FieldDesc F = make_field(5);
  FourierExpansion e = eisenstein(F, 2, 12);
  EXPECT_FALSE(cache.load(5, "E2", 12).has_value());
  cache.store(5, "E2", 12, e);
  EXPECT_EQ(cache.path_for(5, "E2", 12).filename().string(), "d5_E2_T12.json");
  ASSERT_TRUE(cache.load(5, "E2", 12).has_value());
  EXPECT_EQ(*cache.load(5, "E2", 12), e);
  int builds = 0;
  auto build = [&] {
    ++builds;
    return eisenstein(F, 4, 12);
  };
  cache.get_or_build(5, "E4", 12, build);
  cache.get_or_build(5, "E4", 12, build);
  EXPECT_EQ(builds, 1);
  for (const auto& entry : fs::directory_iterator(tmp.path()))
    EXPECT_EQ(entry.path().extension(), ".json") << entry.path();
  nlohmann::json doc = nlohmann::json::parse(expansion_file_text(e));
  EXPECT_EQ(doc["checksum"].get<std::uint32_t>(), checksum(doc["expansion"].dump()));
  EXPECT_EQ(checksum("123456789"), 0xCBF43926u);
}

TEST(Cli, EisensteinEigencheckRoundTrip) {
  EnvGuard env(nullptr);
  TempDir tmp;
  const fs::path file = tmp.path() / "e6.json";
  ASSERT_EQ(invoke({"--d", "1", "--trace-bound", "40", "eis", "--k", "6", "--out", file.string()}).code, kSuccess);
  EXPECT_EQ(read_expansion_file(file), eisenstein(make_field(1), 6, 40));
  Result r = invoke({"--d", "1", "--norm-bound", "40", "--format", "json", "eigencheck", "--in", file.string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["status"], "consistent");
  const fs::path prod = tmp.path() / "b.json";
  ASSERT_EQ(invoke({"--d", "1", "--trace-bound", "30", "bracket", "--k", "6", "--l", "6", "--m", "0", "--out",
                    prod.string()})
                .code,
            kSuccess);
  Result bad = invoke({"--d", "1", "--norm-bound", "30", "eigencheck", "--in", prod.string()});
  EXPECT_EQ(bad.code, kCheckFailed);
  EXPECT_NE(bad.out.find("status: violated"), std::string::npos);
}

TEST(Cli, DukeGhateReport) {
  EnvGuard env(nullptr);
  Result r = invoke({"--d", "1", "duke-ghate"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("E4*E6 == E10: PASS"), std::string::npos);
  EXPECT_NE(r.out.find("E4*Delta == Delta16: PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VolumeAndSurvey) {
  EnvGuard env(nullptr);
  Result r = invoke({"--d", "5", "volume"});
  EXPECT_EQ(r.code, kSuccess);
  EXPECT_NE(r.out.find("0.0166667"), std::string::npos);
  Result csv = invoke({"--format", "csv", "survey", "--d-max", "30", "--terms", "1000"});
  EXPECT_EQ(csv.code, kSuccess);
  EXPECT_EQ(csv.out.rfind("d,D,unit_index,zeta2,zeta2_err,norm_volume,lower_bound,stark_ok\n", 0), 0u);
  Result json = invoke({"--format", "json", "--d", "2", "volume", "--terms", "5000"});
  ASSERT_EQ(json.code, kSuccess);
  EXPECT_NO_THROW(static_cast<void>(nlohmann::json::parse(json.out)));
}

TEST(Cli, MainTheoremAndScan) {
  EnvGuard env(nullptr);
  Result c2 = invoke({"--d", "5", "--norm-bound", "60", "main-theorem", "--case", "2"});
  EXPECT_NE(c2.code, kUsage) << c2.err;
  EXPECT_NE(c2.out.find("branch"), std::string::npos);
  Result scan = invoke({"--d", "1", "--norm-bound", "40", "scan-k0", "--m", "2", "--k-max", "8"});
  EXPECT_EQ(scan.code, kSuccess) << scan.err;
  Result lc = invoke({"--d", "1", "--lseries-bound", "2000", "lcheck", "--k", "6", "--l", "4", "--m", "1"});
  EXPECT_EQ(lc.code, kSuccess) << lc.err;
  EXPECT_EQ(invoke({"--d", "1", "lcheck", "--k", "6", "--l", "4", "--m", "2"}).code, kUsage);
}
