#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/io.hpp"
#include "moment_atlas_tools/cli.hpp"

namespace ma = moment_atlas;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ma::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("moment_atlas_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto file = dir_ / name;
    std::ofstream(file) << text;
    return file.string();
  }
  std::string write(const std::string& name, const ma::Json& doc) { return write(name, doc.dump()); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, FixtureBundleFeedsAnalyze) {
  const auto bundle = dir_ / "grid.json";
  auto r = run({"fixtures", "grid", "--k", "2", "--out", bundle.string()});
  ASSERT_EQ(r.code, ma::cli::kExitOk) << r.err;
  r = run({"analyze", bundle.string()});
  ASSERT_EQ(r.code, ma::cli::kExitOk) << r.err;
  const auto doc = ma::Json::parse(r.out);
  EXPECT_EQ(doc.at("complex").at("V"), 9);
  EXPECT_EQ(doc.at("complex").at("E"), 12);
  EXPECT_EQ(doc.at("complex").at("m"), 4);
  EXPECT_EQ(doc.at("N_gamma"), 43);
}

TEST_F(Cli, TreeHasZeroBound) {
  const auto file = write("tree.json", ma::fixture_to_json(ma::tree()));
  const auto r = run({"analyze", file});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ma::Json::parse(r.out).at("N_gamma"), 0);
}

TEST_F(Cli, SeparateComplexAndPathFiles) {
  const auto fx = ma::ccw_unit_square();
  const auto complex = write("c.json", ma::complex_to_json(fx.complex));
  const auto path = write("p.json", ma::path_to_json(fx.paths.front()));
  auto r = run({"moments", complex, path, "--max-degree", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"center", complex, path, "--no-residuals"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto verdict = ma::Json::parse(r.out);
  EXPECT_EQ(verdict.at("decision"), "not_center");
}

TEST_F(Cli, OtherSubcommands) {
  const auto bundle = write("fig.json", ma::fixture_to_json(ma::figure_eight()));
  for (std::vector<std::string> args : {std::vector<std::string>{"homology", bundle}, {"euler", bundle},
                                        {"nbound", bundle}, {"scan", bundle, "--bound", "3"},
                                        {"approx", "--dim", "1", "--degree", "4", "--fn", "abs"},
                                        {"fixtures", "list"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args.front() << ": " << r.err;
    EXPECT_FALSE(r.out.empty());
  }
  const auto p3 = write("p3.json", ma::path_to_json(ma::random_closed_path(1, 3, 6)));
  EXPECT_EQ(run({"project", p3, "--seed", "2", "--degree", "3"}).code, 0);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"analyze", "--frobnicate"}).code, ma::cli::kExitUsage);
  EXPECT_EQ(run({}).code, ma::cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, ma::cli::kExitOk);

  const auto broken = write("broken.json", std::string("{\"dim\": 2, \"vertices\": ["));
  EXPECT_EQ(run({"analyze", broken}).code, ma::cli::kExitValidation);

  const auto fx = ma::ccw_unit_square();
  const auto complex = write("c.json", ma::complex_to_json(fx.complex));
  const auto off = write("off.json", ma::path_to_json(ma::SampledPath::from_points({{0, 0}, {0.5, 0.5}, {0, 0}}, true)));
  const auto r = run({"homology", complex, off});
  EXPECT_EQ(r.code, ma::cli::kExitPrecondition);
  EXPECT_NE(r.err.find("PathOffCurve"), std::string::npos) << r.err;
}
