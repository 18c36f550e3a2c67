#include "qlattice/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qlattice;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qlattice_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ConstructWritesSixteenVectors) {
  const Result r = call({"construct", "--q", "2", "--n", "3", "--verify", "full"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  std::size_t vectors = 0;
  for (const auto& c : j.at("chains")) vectors += c.at("vectors").size();
  EXPECT_EQ(vectors, 16U);
  EXPECT_NE(r.err.find("passed"), std::string::npos);
}

TEST_F(CliTest, ConstructIsDeterministic) {
  const auto a = dir_ / "a.json";
  const auto b = dir_ / "b.json";
  ASSERT_EQ(call({"construct", "--q", "3", "--n", "3", "--out", a.string()}).code, 0);
  ASSERT_EQ(call({"construct", "--q", "3", "--n", "3", "--out", b.string()}).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  ASSERT_EQ(call({"--threads", "1", "construct", "--q", "3", "--n", "3", "--out", b.string()}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, VerifyAcceptsUntamperedAndRejectsTampered) {
  for (auto [q, n] : std::vector<std::pair<const char*, const char*>>{{"2", "4"}, {"3", "3"}, {"5", "2"}}) {
    const auto file = dir_ / "basis.json";
    ASSERT_EQ(call({"construct", "--q", q, "--n", n, "--out", file.string()}).code, 0);
    EXPECT_EQ(call({"verify", file.string()}).code, 0);

    Json j = Json::parse(slurp(file));
    auto& coeff = j["chains"][0]["vectors"][1]["terms"][0]["coeff"];
    coeff["m"] = coeff["m"].get<long long>() + 1;
    std::ofstream(file) << j.dump();
    const Result r = call({"verify", file.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("FAILED"), std::string::npos);
    const Json report = Json::parse(r.out);
    EXPECT_FALSE(report.at("passed").get<bool>());
    bool named = false;
    for (const auto& c : report.at("checks")) named = named || (!c.at("passed").get<bool>() && c.contains("counterexample"));
    EXPECT_TRUE(named);
  }
}

TEST_F(CliTest, UsageErrors) {
  Result r = call({"construct", "--q", "4", "--n", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("q must be prime"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(call({"scheme", "--q", "2", "--n", "4", "--m", "3"}).code, 2);
  EXPECT_EQ(call({"trees", "--q", "2", "--n", "3", "--m", "2"}).code, 2);
  EXPECT_EQ(call({"construct", "--q", "2", "--n", "3", "--bogus"}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"construct", "--q", "2"}).code, 2);
  EXPECT_EQ(call({"construct", "--q", "2", "--n", "3", "--verify", "sometimes"}).code, 2);
  EXPECT_EQ(call({"verify", (dir_ / "missing.json").string()}).code, 2);
  const auto junk = dir_ / "junk.json";
  std::ofstream(junk) << "{ not json";
  EXPECT_EQ(call({"verify", junk.string()}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST_F(CliTest, TreesWithOracle) {
  Result r = call({"trees", "--q", "2", "--n", "3", "--m", "1", "--oracle"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("formula"), "117649");
  EXPECT_EQ(j.at("oracle"), "117649");
  EXPECT_TRUE(j.at("match").get<bool>());
  EXPECT_NE(r.err.find("117649 = 117649"), std::string::npos);

  r = call({"trees", "--q", "2", "--n", "4", "--m", "2"});
  EXPECT_EQ(r.code, 0);
  j = Json::parse(r.out);
  EXPECT_EQ(j.at("formula"), (ipow(BigInt(15), 14) * ipow(BigInt(21), 20)).str());
  EXPECT_TRUE(j.at("oracle").is_null());
}

TEST_F(CliTest, SchemeEmitsEigentableAndSpectrum) {
  const Result r = call({"scheme", "--q", "2", "--n", "4", "--m", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.at("eigentable").size(), 3U);
  EXPECT_EQ(j.at("eigentable")[0].at("eigenvalues"), Json::parse("[1, 18, 16]"));
  const auto& spectrum = j.at("laplacian_spectrum");
  ASSERT_EQ(spectrum.size(), 3U);
  EXPECT_EQ(spectrum[1].at("eigenvalue"), 15);
  EXPECT_EQ(spectrum[1].at("multiplicity"), 14);
  EXPECT_EQ(spectrum[2].at("eigenvalue"), 21);
  EXPECT_EQ(spectrum[2].at("multiplicity"), 20);
}

TEST_F(CliTest, OtherCommands) {
  Result r = call({"johnson", "--n", "5", "--m", "2"});
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_TRUE(j.at("match").get<bool>());
  EXPECT_TRUE(j.at("cardinality_identity").at("holds").get<bool>());

  r = call({"identities", "--q", "3", "--n", "4"});
  EXPECT_EQ(r.code, 0);
  j = Json::parse(r.out);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("galois_numbers")[2], 6);

  r = call({"decompose", "--q", "3", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  j = Json::parse(r.out);
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_GT(j.at("checks").size(), 5U);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string exe = QLATTICE_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const auto file = dir_ / "b.json";
  EXPECT_EQ(status("construct --q 2 --n 3 --out " + file.string()), 0);
  EXPECT_EQ(status("verify " + file.string()), 0);
  EXPECT_EQ(status("construct --q 4 --n 2"), 2);
}
