#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(SYMQVA_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json coeffs(const nlohmann::json& sym) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& t : sym.at("terms")) out[t.at("partition").dump()] = t.at("coeff");
  return out;
}

}  // namespace

TEST(Cli, PolyHallLittlewoodMonomialBasis) {
  const Result r = run("poly --preset hl --partition 2 --basis m");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("family"), "hall_littlewood");
  EXPECT_EQ(coeffs(j.at("P")), (nlohmann::json{{"[2]", "1"}, {"[1,1]", "1 - t"}}));
  // Q_(2) = (1 - t) P_(2) since <P_(2), P_(2)> = 1 / (1 - t)
  EXPECT_EQ(coeffs(j.at("Q")), (nlohmann::json{{"[2]", "1 - t"}, {"[1,1]", "1 - 2*t + t^2"}}));
}

TEST(Cli, PolySchurPowerSumBasis) {
  const Result r = run("poly --preset schur --partition 2,1 --basis p");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(coeffs(j.at("P")), (nlohmann::json{{"[3]", "-1/3"}, {"[1,1,1]", "1/3"}}));
  EXPECT_EQ(j.at("P"), j.at("Q"));
}

TEST(Cli, PolyMacdonaldWeightOne) {
  const Result r = run("poly --preset mac --partition 1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(coeffs(j.at("P")), (nlohmann::json{{"[1]", "1"}}));
  EXPECT_EQ(coeffs(j.at("Q")), (nlohmann::json{{"[1]", "(-1 + t)/(-1 + q)"}}));
}

TEST(Cli, ByteIdenticalOutput) {
  for (const char* args : {"verify heisenberg --preset hl --weight-cap 4", "braiding --preset mac --pair h,e --order 3",
                           "vertex --preset hl --partition 3,1", "sigma --preset mac --order 4"}) {
    const Result a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, VerifyExitCodes) {
  const Result ok = run("verify heisenberg --preset schur");
  EXPECT_EQ(ok.code, 0);
  const auto line = nlohmann::json::parse(ok.out);
  EXPECT_EQ(line.at("status"), "pass");

  EXPECT_EQ(run("verify no_such_suite").code, 2);
  EXPECT_EQ(run("verify heisenberg --weight-cap 11").code, 2);
  EXPECT_EQ(run("verify heisenberg --order 13").code, 2);
  EXPECT_EQ(run("verify heisenberg --zmin 3 --zmax 1").code, 2);
  EXPECT_EQ(run("poly --preset nope --partition 1").code, 2);
  EXPECT_EQ(run("poly --partition 1").code, 2);
  EXPECT_EQ(run("braiding --preset hl --pair h").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, VerifyControlsOneLinePerCheck) {
  const Result r = run("verify controls --preset hl");
  ASSERT_EQ(r.code, 0);
  int lines = 0;
  for (std::size_t pos = 0; (pos = r.out.find('\n', pos)) != std::string::npos; ++pos) ++lines;
  EXPECT_EQ(lines, 2);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const std::string path = testing::TempDir() + "symqva_cli_test.toml";
  std::ofstream(path) << "preset = hl\norder = 2\noutput = json\n";
  const auto from_file = nlohmann::json::parse(run("sigma --config " + path).out);
  EXPECT_EQ(from_file.at("family"), "hall_littlewood");
  EXPECT_EQ(from_file.at("order"), 2);
  const auto overridden = nlohmann::json::parse(run("sigma --config " + path + " --order 1 --preset schur").out);
  EXPECT_EQ(overridden.at("family"), "schur");
  EXPECT_EQ(overridden.at("order"), 1);
  EXPECT_EQ(run("sigma --config " + path + ".missing").code, 2);
}

TEST(Cli, BraidingHallLittlewoodHh) {
  const Result r = run("braiding --preset hl --pair h,h --order 2");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.at("R").at("terms").size(), 2u);
  const auto& rest = j.at("R").at("terms").at(0);
  EXPECT_EQ(rest.at("left").at("h"), nlohmann::json::array());
  EXPECT_TRUE(rest.at("k").at("poles").empty());
}
