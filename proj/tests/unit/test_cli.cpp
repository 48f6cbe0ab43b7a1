#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "padictree/io.hpp"

using namespace padictree;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ptree-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

const std::string kData = PADICTREE_DATA_DIR;

}  // namespace

TEST_F(Cli, EnumParabola) {
  const CliResult r = run({"enum", kData + "/parabola.json", "--depth", "3", "--out", path("t.json")});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const TruncTree t = tree_from_json(read_text_file(path("t.json")));
  EXPECT_EQ(poincare_coeffs(t), (std::vector<Int>{Int(1), Int(3), Int(9), Int(27)}));
  EXPECT_TRUE(fs::exists(path("t.json.status.json")));
}

TEST_F(Cli, EnumFullPlane) {
  const CliResult r = run({"enum", kData + "/plane.json", "--depth", "4", "--format", "text"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("1 9 81 729 6561"), std::string::npos) << r.out;
}

TEST_F(Cli, EnumUnknownExitCode) {
  write_text_file(path("s.json"), R"({"format": 1, "p": 3, "n": 1, "polys": [[{"c": 1, "e": [2]}, {"c": "-10460353203", "e": [0]}]]})");
  const CliResult r = run({"enum", path("s.json"), "--depth", "3", "--cert-budget", "1", "--out", path("t.json")});
  EXPECT_EQ(r.code, cli::kUnknown) << r.err;
}

TEST_F(Cli, NaiveMatchesEnumOnSmoothCurve) {
  ASSERT_EQ(run({"naive", kData + "/parabola.json", "--depth", "3", "--out", path("a.json")}).code, cli::kOk);
  ASSERT_EQ(run({"enum", kData + "/parabola.json", "--depth", "3", "--out", path("b.json")}).code, cli::kOk);
  EXPECT_EQ(run({"iso", path("a.json"), path("b.json")}).code, cli::kOk);
}

TEST_F(Cli, ShuffleIsIsomorphicAndDeterministic) {
  ASSERT_EQ(run({"expand", "builtin:cusp", "--p", "3", "--depth", "4", "--out", path("t.json")}).code, cli::kOk);
  ASSERT_EQ(run({"shuffle", path("t.json"), "--seed", "5", "--out", path("s.json")}).code, cli::kOk);
  ASSERT_EQ(run({"shuffle", path("t.json"), "--seed", "5", "--out", path("s2.json")}).code, cli::kOk);
  EXPECT_EQ(read_text_file(path("s.json")), read_text_file(path("s2.json")));
  EXPECT_EQ(run({"iso", path("t.json"), path("s.json")}).code, cli::kOk);
}

TEST_F(Cli, IsoReportsDifference) {
  ASSERT_EQ(run({"expand", "builtin:y(2)", "--p", "3", "--depth", "4", "--out", path("a.json")}).code, cli::kOk);
  ASSERT_EQ(run({"expand", "builtin:y(3)", "--p", "3", "--depth", "4", "--out", path("b.json")}).code, cli::kOk);
  const CliResult r = run({"iso", path("a.json"), path("b.json")});
  EXPECT_EQ(r.code, cli::kFalse);
  EXPECT_FALSE(r.out.empty() && r.err.empty());
}

TEST_F(Cli, PoincareOfPoint) {
  const CliResult r = run({"poincare", "--datum", "builtin:point", "--p", "3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("1 / (1 \u2212 Z)"), std::string::npos) << r.out;
}

TEST_F(Cli, PoincareComparesWithTree) {
  ASSERT_EQ(run({"expand", "builtin:cusp", "--p", "5", "--depth", "4", "--out", path("t.json")}).code, cli::kOk);
  EXPECT_EQ(run({"poincare", "--datum", "builtin:cusp", "--p", "5", "--tree", path("t.json")}).code, cli::kOk);
  EXPECT_EQ(run({"poincare", "--datum", "builtin:zp", "--p", "5", "--tree", path("t.json")}).code, cli::kFalse);
  const CliResult c = run({"poincare", "--tree", path("t.json"), "--coeffs", "5"});
  EXPECT_EQ(c.code, cli::kOk);
  EXPECT_NE(c.out.find("1 5 21 103 521"), std::string::npos) << c.out;
}

TEST_F(Cli, ExpandWithParameterAndDatumFile) {
  write_text_file(path("y.json"), datum_to_json(builtin("y", Int(3))));
  const CliResult r = run({"expand", path("y.json"), "--param", "2", "--p", "3", "--depth", "4", "--format", "text"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("1 1 1 2 2"), std::string::npos) << r.out;
  EXPECT_EQ(run({"expand", path("y.json"), "--param", "0", "--p", "3", "--depth", "4"}).code, cli::kUsage);
}

TEST_F(Cli, RealizeCheck) {
  const CliResult r = run({"realize", "builtin:cusp", "--p", "3", "--depth", "5", "--check", "--out", path("c.json")});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(cloud_from_json(read_text_file(path("c.json"))).p, 3);
  EXPECT_EQ(run({"realize", "builtin:y", "--p", "3", "--depth", "3"}).code, cli::kUsage);
}

TEST_F(Cli, DotThickEdges) {
  ASSERT_EQ(run({"expand", "builtin:zp", "--p", "3", "--depth", "2", "--labels", "--out", path("t.json")}).code, cli::kOk);
  const CliResult r = run({"dot", path("t.json"), "--thick", "P"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("penwidth=3"), std::string::npos);
}

TEST_F(Cli, Validate) {
  EXPECT_EQ(run({"validate", "builtin:cusp", "--p", "5"}).code, cli::kOk);
  TreeDatum bad = builtin("cusp", Int(5));
  bad.bone_branches.pop_back();
  write_text_file(path("bad.json"), datum_to_json(bad));
  EXPECT_EQ(run({"validate", path("bad.json"), "--p", "5"}).code, cli::kFalse);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"enum", "/nonexistent.json"}).code, cli::kUsage);
  EXPECT_EQ(run({"enum", kData + "/cusp.json", "--format", "yaml"}).code, cli::kUsage);
  EXPECT_EQ(run({"expand", "builtin:point", "--p", "4"}).code, cli::kUsage);
}

TEST_F(Cli, DeterministicOutput) {
  const CliResult a = run({"enum", kData + "/cusp.json", "--depth", "3"});
  const CliResult b = run({"enum", kData + "/cusp.json", "--depth", "3"});
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, b.out);
}
