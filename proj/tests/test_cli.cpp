#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "derq/catalog.hpp"
#include "derq/pc_group.hpp"
#include "derq/perm_group.hpp"
#include "derq/series.hpp"
#include "oracles.hpp"

using namespace derq;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run derq_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" DERQ_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& stem) { return "'" + (oracle::data_dir() / (stem + ".pc")).string() + "'"; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "derq_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(derq_cli("").exit_code, 2);
  EXPECT_EQ(derq_cli("frobnicate").exit_code, 2);
  EXPECT_EQ(derq_cli("count").exit_code, 2);
  EXPECT_EQ(derq_cli("scan").exit_code, 2);
  EXPECT_EQ(derq_cli("scan " + data("heis5") + " --sylow2 4").exit_code, 2);
  EXPECT_EQ(derq_cli("scan " + data("heis5") + " --format yaml").exit_code, 2);
  EXPECT_EQ(derq_cli("verify --p 5 --jobs 0").exit_code, 2);
}

TEST(Cli, CheckExitCodes) {
  const auto ok = derq_cli("check " + data("heis5"));
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_NE(ok.out.find("consistent"), std::string::npos);
  EXPECT_EQ(derq_cli("check " + data("inconsistent")).exit_code, 1);
  EXPECT_EQ(derq_cli("check " + data("unparseable")).exit_code, 3);
  EXPECT_EQ(derq_cli("check /nonexistent/file.pc").exit_code, 3);
}

TEST(Cli, DomainErrorsExitThree) {
  EXPECT_EQ(derq_cli("count --p 4").exit_code, 3);
  EXPECT_EQ(derq_cli("count --p 3").exit_code, 3);
  EXPECT_EQ(derq_cli("bounds --d 0").exit_code, 3);
  EXPECT_EQ(derq_cli("sylow2 6").exit_code, 3);
  EXPECT_EQ(derq_cli("verify --p 2").exit_code, 3);
  EXPECT_EQ(derq_cli("verify --p 11").exit_code, 3);
  EXPECT_EQ(derq_cli("scan --perm '(1,2,3);(1,2)'").exit_code, 3);
  EXPECT_EQ(derq_cli("scan " + data("inconsistent")).exit_code, 3);
}

TEST(Cli, CountAndBounds) {
  for (const auto& [p, n] : std::vector<std::pair<int, int>>{{5, 16}, {7, 20}, {11, 24}, {13, 28}}) {
    const auto r = derq_cli("count --p " + std::to_string(p));
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, std::to_string(n) + "\n");
  }
  EXPECT_EQ(derq_cli("bounds --d 5 --variant metabelian").out, "41\n");
  EXPECT_EQ(derq_cli("bounds --d 2").out, "6\n");
}

TEST(Cli, ScanJsonRoundTrip) {
  const auto r = derq_cli("scan " + data("jordan625"));
  ASSERT_EQ(r.exit_code, 0);
  const auto parsed = series_report_from_json(nlohmann::json::parse(r.out));
  EXPECT_EQ(parsed, small_quotient_scan(PcGroup(read_presentation_file((oracle::data_dir() / "jordan625.pc").string()))));

  const auto out = scratch("scan.json");
  ASSERT_EQ(derq_cli("scan --sylow2 8 --out '" + out.string() + "'").exit_code, 0);
  EXPECT_EQ(series_report_from_json(nlohmann::json::parse(slurp(out))), small_quotient_scan(PermGroup(sylow2_sym(8))));
}

TEST(Cli, ScanPermutationGenerators) {
  const auto r = derq_cli("scan --perm '(1,2,3,4);(1,3)' --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("order_exp").get<int>(), 3);
  EXPECT_EQ(j.at("small_ds"), nlohmann::json::array({0}));
  EXPECT_EQ(derq_cli("scan --sylow2 4 --format text").exit_code, 0);
}

TEST(Cli, Sylow2Output) {
  const auto r = derq_cli("sylow2 16 --format json");
  ASSERT_EQ(r.exit_code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("degree").get<int>(), 16);
  EXPECT_EQ(j.at("order_exp").get<int>(), 15);
}

TEST(Cli, IsoExitCodes) {
  const auto yes = derq_cli("iso " + data("heis5") + " " + data("heis5"));
  EXPECT_EQ(yes.exit_code, 0);
  EXPECT_EQ(yes.out.rfind("true", 0), 0u);
  const auto no = derq_cli("iso " + data("d8") + " " + data("q8"));
  EXPECT_EQ(no.exit_code, 1);
  EXPECT_EQ(no.out.rfind("false", 0), 0u);
  EXPECT_EQ(derq_cli("iso " + data("heis5")).exit_code, 2);
}

TEST(Cli, VerifyThree) {
  const auto text = derq_cli("verify --p 3");
  EXPECT_EQ(text.exit_code, 0);
  EXPECT_NE(text.out.find("PASS"), std::string::npos);
  const auto json = derq_cli("verify --p 3 --format json");
  ASSERT_EQ(json.exit_code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j.at("two_small").get<int>(), 0);
  EXPECT_EQ(j.at("classes").get<int>(), 7);
  EXPECT_TRUE(j.at("pass").get<bool>());
}

TEST(Cli, EnumerateIsDeterministic) {
  const auto a = scratch("cat3_a.json"), b = scratch("cat3_b.json");
  const auto ra = derq_cli("enumerate --p 3 --jobs 1 --out '" + a.string() + "'");
  const auto rb = derq_cli("enumerate --p 3 --jobs 3 --out '" + b.string() + "'");
  ASSERT_EQ(ra.exit_code, 0);
  ASSERT_EQ(rb.exit_code, 0);
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a.string() + ".digest.json"), slurp(b.string() + ".digest.json"));
  const auto catalog = catalog_from_json(nlohmann::json::parse(slurp(a)));
  EXPECT_EQ(catalog.size(), 7u);
  EXPECT_EQ(derq_cli("scan --sylow2 16").out, derq_cli("scan --sylow2 16").out);
}

TEST(Cli, BudgetPrecedence) {
  EXPECT_EQ(derq_cli("verify --p 5", "DERQ_BUDGET_SECONDS=0.000001").exit_code, 1);
  EXPECT_EQ(derq_cli("verify --p 5 --budget-seconds 0.000001").exit_code, 1);
  EXPECT_EQ(derq_cli("verify --p 3 --budget-seconds 600", "DERQ_BUDGET_SECONDS=0.000001").exit_code, 0);
  EXPECT_EQ(derq_cli("verify --p 3", "DERQ_BUDGET_SECONDS=bogus").exit_code, 2);
}
