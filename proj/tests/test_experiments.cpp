#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "gnplate/csv.hpp"
#include "gnplate/experiments.hpp"

namespace gnplate {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Config base(ExperimentKind kind) {
  Config c;
  c.material = testing::mat_a();
  c.grid = {1.0, 1.0, 10, 10};
  c.time.dt = 0.01;
  c.time.t_end = 0.1;
  c.experiment.kind = kind;
  c.ic.preset = IcPreset::gaussian_bump;
  c.ic.width = 0.1;
  return c;
}

class ExperimentsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gnplate_exp_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(ExperimentsTest, ResolventWritesSummary) {
  const ExperimentResult r = run_experiment(base(ExperimentKind::resolvent_check), dir_.string());
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.rows.size(), 2u);
  const std::string text = slurp(dir_ / "summary.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "criterion,value,threshold,pass");
  EXPECT_NE(text.find("resolvent_roundtrip,"), std::string::npos);
  EXPECT_NE(text.find(",pass"), std::string::npos);
}

TEST_F(ExperimentsTest, DecayRunIsDeterministic) {
  Config c = base(ExperimentKind::type3_decay);
  const ExperimentResult a = run_experiment(c, (dir_ / "a").string());
  const ExperimentResult b = run_experiment(c, (dir_ / "b").string());
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(slurp(dir_ / "a" / "energy.csv"), slurp(dir_ / "b" / "energy.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "summary.csv"), slurp(dir_ / "b" / "summary.csv"));
}

TEST_F(ExperimentsTest, ConservationNeedsTypeII) {
  const ExperimentResult r = run_experiment(base(ExperimentKind::type2_conservation), dir_.string());
  EXPECT_FALSE(r.passed());
  ASSERT_FALSE(r.rows.empty());
  EXPECT_EQ(r.rows.back().criterion, "error");
  EXPECT_EQ(r.rows.back().threshold, "TypeMismatch");
  EXPECT_TRUE(fs::exists(dir_ / "summary.csv"));
}

TEST_F(ExperimentsTest, ConservationTypeII) {
  Config c = base(ExperimentKind::type2_conservation);
  c.material = testing::mat_a_type2();
  const ExperimentResult r = run_experiment(c, dir_.string());
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(fs::exists(dir_ / "energy.csv"));
}

TEST_F(ExperimentsTest, SnapshotsWritten) {
  Config c = base(ExperimentKind::type3_decay);
  c.time.snapshot_every = 5;
  c.output.write_snapshots = true;
  (void)run_experiment(c, dir_.string());
  EXPECT_TRUE(fs::exists(dir_ / "w_0.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "w_10.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "w_3.csv"));
}

TEST_F(ExperimentsTest, ConservationSummaryRow) {
  Config c = base(ExperimentKind::type2_conservation);
  c.material = testing::mat_a_type2();
  (void)run_experiment(c, dir_.string());
  const std::string text = slurp(dir_ / "summary.csv");
  const auto start = text.find("energy_drift,");
  ASSERT_NE(start, std::string::npos);
  const std::string row = text.substr(start, text.find('\n', start) - start);
  EXPECT_EQ(row.substr(row.size() - 10), ",1e-9,pass");
}

TEST(FormatDouble, ShortestForms) {
  EXPECT_EQ(format_double(1e-9), "1e-9");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-1.5e300), "-1.5e+300");
  EXPECT_EQ(format_double(1e100), "1e+100");
  EXPECT_EQ(format_double(0.0), "0");
}

TEST(FormatDouble, RoundTrips) {
  testing::Gen gen(41);
  for (int k = 0; k < 2000; ++k) {
    const double v = gen.normal() * std::pow(10.0, gen.integer(-300, 300));
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(SummaryCsv, Format) {
  const fs::path p = fs::temp_directory_path() / "gnplate_summary_test.csv";
  write_summary_csv(p.string(), {{"a", 0.5, "<= 1", true}, {"b", 2.0, ">= 3", false}});
  EXPECT_EQ(slurp(p), "criterion,value,threshold,pass\na,0.5,<= 1,pass\nb,2,>= 3,fail\n");
  fs::remove(p);
}

}  // namespace
}  // namespace gnplate
