#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "numphase/io.hpp"
#include "numphase/states.hpp"

namespace numphase::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "numphase");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

// Rows of an NPW CSV as (phi, n, value).
struct Row {
  double phi;
  int n;
  double v;
};

std::vector<Row> parse_rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    Row r{};
    char c1, c2;
    std::istringstream ls(line);
    ls >> r.phi >> c1 >> r.n >> c2 >> r.v;
    rows.push_back(r);
  }
  return rows;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("numphase_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST(Descriptor, Grammar) {
  const Truncation t(8);
  EXPECT_EQ(parse_state_descriptor("number:3", t)(3, 3), cplx(1.0));
  EXPECT_NEAR(parse_state_descriptor("thermal:0.1", Truncation(12))(0, 0).real(), 1.0 / 1.1, 1e-9);
  EXPECT_THROW(parse_state_descriptor("thermal:0.1", t), DomainError);
  EXPECT_NO_THROW(parse_state_descriptor("thermal:0.1", t, TailPolicy{1e-10, true}));
  EXPECT_NEAR(std::abs(parse_state_descriptor("coherent:0.3,-0.2", t)(0, 1)), std::sqrt(0.13) * std::exp(-0.13), 1e-12);
  EXPECT_THROW(parse_state_descriptor("number", t), ParseError);
  EXPECT_THROW(parse_state_descriptor("number:1.5", t), ParseError);
  EXPECT_THROW(parse_state_descriptor("coherent:1", t), ParseError);
  EXPECT_THROW(parse_state_descriptor("squeezed:1", t), ParseError);
  EXPECT_THROW(parse_state_descriptor("cps:0.5,abc", t), ParseError);
  EXPECT_THROW(parse_state_descriptor("cps:1.2,0.0", t), DomainError);
}

TEST(CmdState, VacuumAndCps) {
  const Result vac = invoke({"state", "--dim", "4", "--state", "number:0"});
  ASSERT_EQ(vac.code, kSuccess) << vac.err;
  const CMatrix m = io::matrix_from_json(vac.out);
  EXPECT_EQ(m(0, 0), cplx(1.0));
  EXPECT_EQ(m.cwiseAbs().sum(), 1.0);

  const Result cps = invoke({"state", "--dim", "64", "--state", "cps:0.5,0.0"});
  ASSERT_EQ(cps.code, kSuccess) << cps.err;
  EXPECT_NEAR(io::matrix_from_json(cps.out)(0, 0).real(), 0.75, 1e-15);
}

TEST(CmdState, Errors) {
  EXPECT_EQ(invoke({"state", "--dim", "64", "--state", "cps:1.2,0.0"}).code, kNumericError);
  EXPECT_EQ(invoke({"state", "--dim", "64", "--state", "bogus"}).code, kUsageError);
  EXPECT_EQ(invoke({"state", "--dim", "1", "--state", "number:0"}).code, kUsageError);
  EXPECT_EQ(invoke({"state", "--dim", "8", "--state", "cps:0.5,0"}).code, kNumericError);
  EXPECT_EQ(invoke({"state", "--dim", "8", "--state", "cps:0.5,0", "--allow-tail"}).code, kSuccess);
  EXPECT_EQ(invoke({"state", "--dim", "x"}).code, kUsageError);
  EXPECT_EQ(invoke({}).code, kUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kUsageError);
}

TEST(CmdNpw, VacuumRows) {
  const Result r = invoke({"npw", "--dim", "4", "--state", "number:0"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const std::vector<Row> rows = parse_rows(r.out);
  EXPECT_EQ(rows.size(), 16u * 4u);
  for (const Row& row : rows) EXPECT_NEAR(row.v, row.n == 0 ? 1.0 / (2.0 * std::numbers::pi) : 0.0, 1e-16);
}

TEST(CmdNpw, CoherentPhaseRowSigns) {
  const Result r = invoke({"npw", "--dim", "64", "--state", "cps:0.5,0", "--rows", "0,3"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  double min0 = 1.0, min3 = 1.0;
  for (const Row& row : parse_rows(r.out)) {
    ASSERT_TRUE(row.n == 0 || row.n == 3);
    (row.n == 0 ? min0 : min3) = std::min(row.n == 0 ? min0 : min3, row.v);
  }
  EXPECT_GT(min0, 0.0);
  EXPECT_LT(min3, 0.0);
}

TEST(CmdNpw, GridChecks) {
  EXPECT_EQ(invoke({"npw", "--dim", "8", "--grid", "14", "--state", "number:0"}).code, kUsageError);
  EXPECT_EQ(invoke({"npw", "--dim", "8", "--grid", "15", "--state", "number:0"}).code, kSuccess);
}

TEST(CmdNpw, DeterministicOutput) {
  const Result a = invoke({"npw", "--dim", "12", "--state", "coherent:0.4,0.9"});
  const Result b = invoke({"npw", "--dim", "12", "--state", "coherent:0.4,0.9"});
  EXPECT_EQ(a.out, b.out);
}

TEST_F(TempDir, ReconstructRandomDensity) {
  const DensityMatrix rho = random_density(Truncation(32), 77);
  {
    std::ofstream(path("rho.json")) << io::density_to_json(rho);
  }
  const Result npw = invoke({"npw", "--in", path("rho.json"), "--out", path("table.csv")});
  ASSERT_EQ(npw.code, kSuccess) << npw.err;
  const Result rec = invoke({"reconstruct", "--in", path("table.csv"), "--ref", path("rho.json"), "--report",
                             path("report.txt"), "--ladder", path("ladder.json")});
  ASSERT_EQ(rec.code, kSuccess) << rec.err;
  EXPECT_LE(frobenius_distance(io::matrix_from_json(rec.out), rho.matrix()), 1e-10);

  std::ifstream report(path("report.txt"));
  std::string line;
  double distance = -1.0;
  while (std::getline(report, line)) {
    if (line.rfind("distance_to_reference ", 0) == 0) distance = std::stod(line.substr(22));
  }
  EXPECT_GE(distance, 0.0);
  EXPECT_LE(distance, 1e-10);
  std::ifstream ladder(path("ladder.json"));
  const auto j = nlohmann::json::parse(ladder);
  EXPECT_EQ(j.at("dim").get<int>(), 32);
}

TEST(CmdReconstruct, VacuumViaStdin) {
  const Result npw = invoke({"npw", "--dim", "5", "--state", "number:0"});
  const Result rec = invoke({"reconstruct", "--in", "-"}, npw.out);
  ASSERT_EQ(rec.code, kSuccess) << rec.err;
  const CMatrix m = io::matrix_from_json(rec.out);
  EXPECT_NEAR(std::abs(m(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NE(rec.err.find("trace_error"), std::string::npos);
}

TEST(CmdReconstruct, BadInput) {
  const Result npw = invoke({"npw", "--dim", "5", "--state", "number:0"});
  EXPECT_EQ(invoke({"reconstruct", "--in", "-"}, npw.out.substr(0, npw.out.size() / 2)).code, kUsageError);
  EXPECT_EQ(invoke({"reconstruct", "--in", "-"}, "phi,n,rho_w\n-3.14,0,abc\n").code, kUsageError);
  EXPECT_EQ(invoke({"reconstruct", "--in", "/nonexistent/file.csv"}).code, kUsageError);

  // Consistent shape but a negative population: fails assembly invariants.
  std::string text = npw.out;
  std::istringstream in(text);
  NPWignerTable t = io::read_npw_csv(in);
  RMatrix v = t.values();
  v.col(1).array() -= 0.05;
  std::ostringstream bad;
  io::write_npw_csv(bad, NPWignerTable(t.grid(), t.truncation(), v));
  const Result rec = invoke({"reconstruct", "--in", "-"}, bad.str());
  EXPECT_EQ(rec.code, kNumericError);
  EXPECT_NE(rec.err.find("inconsistent"), std::string::npos);
}

TEST(CmdCg, VacuumPeaks) {
  const double pi = std::numbers::pi;
  for (auto [s, peak] : {std::pair{"0", 2.0 / pi}, std::pair{"-1", 1.0 / pi}}) {
    const Result r = invoke({"cg", "--dim", "8", "--state", "number:0", "--s", s});
    ASSERT_EQ(r.code, kSuccess) << r.err;
    std::istringstream in(r.out);
    const CGTable table = io::read_cg_csv(in);
    const double r0 = table.grid().radius(0);
    const double expected = std::string(s) == "0" ? peak * std::exp(-2 * r0 * r0) : peak * std::exp(-r0 * r0);
    EXPECT_NEAR(table(0, 0).real(), expected, 1e-15);
    EXPECT_NEAR(table(0, 0).real(), peak, 1e-3);
    EXPECT_NEAR(table.values().real().maxCoeff(), table(0, 0).real(), 1e-15);
  }
}

TEST(CmdCg, SOneRejected) {
  const Result r = invoke({"cg", "--dim", "8", "--state", "number:0", "--s", "1"});
  EXPECT_EQ(r.code, kNumericError);
  EXPECT_NE(r.err.find("pbridge"), std::string::npos);
}

TEST(CmdCg, GridFlags) {
  const Result r = invoke({"cg", "--dim", "4", "--state", "number:1", "--rmax", "7", "--nr", "50", "--mgamma", "8"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  std::istringstream in(r.out);
  const CGTable table = io::read_cg_csv(in);
  EXPECT_EQ(table.grid().radial_size(), 50);
  EXPECT_EQ(table.grid().angular_size(), 8);
  EXPECT_NEAR(table.grid().r_max(), 7.0, 1e-13);
}

TEST(CmdBridge, CoherentPathsAgree) {
  const Result d = invoke({"bridge", "--dim", "12", "--state", "coherent:0.6,0.3", "--s", "0.25"});
  const Result c = invoke({"bridge", "--dim", "12", "--state", "coherent:0.6,0.3", "--s", "0.25", "--path", "composed"});
  const Result ref = invoke({"npw", "--dim", "12", "--state", "coherent:0.6,0.3"});
  ASSERT_EQ(d.code, kSuccess) << d.err;
  ASSERT_EQ(c.code, kSuccess) << c.err;
  const std::vector<Row> a = parse_rows(d.out), b = parse_rows(c.out), r = parse_rows(ref.out);
  ASSERT_EQ(a.size(), r.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].v, r[i].v, 1e-6);
    EXPECT_NEAR(b[i].v, r[i].v, 1e-6);
  }
  EXPECT_EQ(invoke({"bridge", "--dim", "12", "--state", "number:0", "--path", "sideways"}).code, kUsageError);
}

TEST(CmdBridge, FromCgTableOnStdin) {
  const Result cg = invoke({"cg", "--dim", "16", "--state", "thermal:0.2", "--s", "-0.3"});
  ASSERT_EQ(cg.code, kSuccess) << cg.err;
  const Result r = invoke({"bridge", "--dim", "16", "--in", "-", "--rows", "0"}, cg.out);
  ASSERT_EQ(r.code, kSuccess) << r.err;
  for (const Row& row : parse_rows(r.out)) EXPECT_NEAR(row.v, (1.0 / 1.2) / (2.0 * std::numbers::pi), 1e-6);
}

TEST(CmdPbridge, Thermal) {
  const Result r = invoke({"pbridge", "--dim", "16", "--state", "thermal:0.5", "--rows", "0"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  for (const Row& row : parse_rows(r.out)) EXPECT_NEAR(row.v, 0.1061033, 1e-5);
  EXPECT_EQ(invoke({"pbridge", "--dim", "16", "--state", "number:1"}).code, kUsageError);
}

TEST(CmdVerify, PassesAndReports) {
  const Result r = invoke({"verify", "--dim", "16"});
  EXPECT_EQ(r.code, kSuccess) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j.size(), 6u);
  for (const auto& [name, check] : j.items()) EXPECT_TRUE(check.at("pass").get<bool>()) << name;
}

TEST(CmdVerify, InjectedCorruptionFails) {
  const Result r = invoke({"verify", "--dim", "16", "--inject-corruption"});
  EXPECT_EQ(r.code, kVerificationFailed);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("uniqueness_round_trip").at("pass").get<bool>());
}

TEST_F(TempDir, VerifyWithExtraState) {
  {
    std::ofstream(path("rho.json")) << io::density_to_json(random_density(Truncation(9), 3));
  }
  const Result r = invoke({"verify", "--in", path("rho.json"), "--out", path("report.json")});
  EXPECT_EQ(r.code, kSuccess) << r.err;
  std::ifstream report(path("report.json"));
  EXPECT_TRUE(nlohmann::json::parse(report).at("marginals").at("pass").get<bool>());
}

}  // namespace
}  // namespace numphase::cli
