#include "diamond/sweep.hpp"
#include "diamond/threshold.hpp"
#include "diamond/validation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string run(const diamond::SweepSpec& spec, diamond::OutputFormat format, unsigned workers) {
  std::ostringstream out;
  diamond::run_sweep(spec, out, format, workers);
  return out.str();
}

}  // namespace

TEST(Range, Parsing) {
  const auto r = diamond::parse_range("-2:2:5");
  EXPECT_EQ(r.start, -2.0);
  EXPECT_EQ(r.stop, 2.0);
  EXPECT_EQ(r.steps, 5u);
  EXPECT_EQ(r.at(1), -1.0);
  EXPECT_EQ(r.at(4), 2.0);
  EXPECT_TRUE(diamond::parse_range("0.25").is_fixed());
  EXPECT_EQ(diamond::parse_range("1e-3").start, 1e-3);
  for (const char* bad : {"", "abc", "1:2", "1:2:0", "1:2:1.5", "1:2:3:4", "1x"})
    EXPECT_THROW(diamond::parse_range(bad), diamond::Error) << bad;
  EXPECT_THROW(diamond::parse_range("3:1:4").validate("T"), diamond::Error);
}

TEST(Measures, Parsing) {
  const auto m = diamond::parse_measures("concurrence,gqd1");
  EXPECT_TRUE(m.concurrence);
  EXPECT_FALSE(m.discord);
  EXPECT_FALSE(m.gmqd);
  EXPECT_TRUE(m.gqd1);
  EXPECT_TRUE(diamond::parse_measures("all").gmqd);
  EXPECT_THROW(diamond::parse_measures("entropy"), diamond::Error);
}

TEST(SweepSpec, GridOrderAndCap) {
  diamond::SweepSpec spec;
  spec.temperature = diamond::parse_range("1:2:2");
  spec.jm = diamond::parse_range("0:1:3");
  EXPECT_EQ(spec.size(), 6u);
  EXPECT_EQ(spec.requested(0).temperature, 1.0);
  EXPECT_EQ(spec.requested(1).jm, 0.5);
  EXPECT_EQ(spec.requested(3).temperature, 2.0);
  EXPECT_EQ(spec.requested(3).jm, 0.0);
  spec.grid_cap = 5;
  try {
    spec.validate();
    FAIL() << "expected GridTooLarge";
  } catch (const diamond::Error& e) {
    EXPECT_EQ(e.kind(), diamond::ErrorKind::GridTooLarge);
  }
}

TEST(Format, RealsAndHeader) {
  EXPECT_EQ(diamond::format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(diamond::format_real(-0.0), "0");
  EXPECT_EQ(diamond::csv_header(), "T,H,J,J2,Jm,concurrence,qd,classical_corr,mutual_info,gmqd,gqd1,theta,flags\n");
}

TEST(Sweep, CsvRowsAndNaMarker) {
  diamond::SweepSpec spec;
  spec.field = diamond::parse_range("0:1:3");
  const auto out = lines(run(spec, diamond::OutputFormat::Csv, 1));
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0] + '\n', diamond::csv_header());
  EXPECT_EQ(out[1].find("NA"), std::string::npos);
  EXPECT_NE(out[2].find(",NA,"), std::string::npos);
  EXPECT_NE(out[2].find("not_bell_diagonal"), std::string::npos);
  for (const auto& line : out) EXPECT_EQ(line.find("nan"), std::string::npos);
}

TEST(Sweep, OutputIndependentOfWorkers) {
  diamond::SweepSpec spec;
  spec.temperature = diamond::parse_range("0.1:2:7");
  spec.j = diamond::parse_range("-2:2:11");
  spec.field = diamond::parse_range("0:0.5:2");
  const std::string one = run(spec, diamond::OutputFormat::Csv, 1);
  EXPECT_EQ(one, run(spec, diamond::OutputFormat::Csv, 3));
  EXPECT_EQ(one, run(spec, diamond::OutputFormat::Csv, 8));
  EXPECT_EQ(lines(one).size(), 1u + 7 * 11 * 2);
}

TEST(Sweep, SinglePointEqualsPoint) {
  diamond::SweepSpec spec;
  spec.j = diamond::Range::fixed(1.0);
  spec.temperature = diamond::Range::fixed(0.5);
  const auto out = lines(run(spec, diamond::OutputFormat::Csv, 2));
  ASSERT_EQ(out.size(), 2u);
  const auto row = diamond::evaluate_point({1, 1, 0, 0, 0.5}, {}, std::nullopt);
  EXPECT_EQ(out[1] + '\n', diamond::format_csv_row(row));
}

TEST(Sweep, ZeroTemperatureFloor) {
  const auto row = diamond::evaluate_point({0.5, 1, 0, 0, 0.0}, {}, 1e-3);
  EXPECT_EQ(row.requested.temperature, 0.0);
  EXPECT_EQ(row.report.params.temperature, 1e-3);
  EXPECT_TRUE(row.report.has_flag(diamond::flag::kTemperatureFloor));
  EXPECT_NEAR(*row.report.concurrence, 1.0, 1e-3);
  try {
    diamond::evaluate_point({0.5, 1, 0, 0, 0.0}, {}, std::nullopt);
    FAIL() << "expected TemperatureTooLow";
  } catch (const diamond::Error& e) {
    EXPECT_EQ(e.kind(), diamond::ErrorKind::TemperatureTooLow);
  }
}

TEST(Sweep, JsonLines) {
  diamond::SweepSpec spec;
  spec.field = diamond::Range::fixed(0.5);
  const auto out = lines(run(spec, diamond::OutputFormat::JsonLines, 1));
  ASSERT_EQ(out.size(), 1u);
  const auto j = nlohmann::json::parse(out[0]);
  EXPECT_TRUE(j["gqd1"].is_null());
  EXPECT_TRUE(j["concurrence"].is_number());
  const auto flags = j["flags"].get<std::vector<std::string>>();
  EXPECT_NE(std::find(flags.begin(), flags.end(), "not_bell_diagonal"), flags.end());
}

TEST(Sweep, Cancellation) {
  diamond::SweepSpec spec;
  spec.j = diamond::parse_range("0:1:200");
  std::atomic<bool> cancel{true};
  std::ostringstream out;
  const auto outcome = diamond::run_sweep(spec, out, diamond::OutputFormat::Csv, 2, &cancel);
  EXPECT_TRUE(outcome.cancelled);
  EXPECT_EQ(lines(out.str()).size(), 1u + outcome.rows_written);
}

TEST(Threshold, SaturationFieldExamples) {
  diamond::ThresholdQuery q;
  q.lo = 0.5;
  q.hi = 3.0;
  const auto r = diamond::find_threshold(q, {1, 1, 0, 0, 0.01});
  ASSERT_TRUE(r.found);
  EXPECT_GT(r.location, q.lo);
  EXPECT_LT(r.location, q.hi);
  EXPECT_LE(std::abs(r.alive_side - r.dead_side), q.tolerance);
  q.tolerance /= 2;
  EXPECT_NEAR(diamond::find_threshold(q, {1, 1, 0, 0, 0.01}).location, r.location, 1e-4);
}

TEST(Threshold, HalfPlateauCrossingSitsAtSaturationField) {
  diamond::ThresholdQuery q;
  q.lo = 0.5;
  q.hi = 3.0;
  q.dead_threshold = 0.5 * diamond::evaluate_measure(diamond::Measure::Concurrence, {1, 1, 0, 1, 0.01});
  EXPECT_NEAR(diamond::find_threshold(q, {1, 1, 0, 0, 0.01}).location, 2.0, 0.02);
}

TEST(Threshold, DiscordNeverDies) {
  diamond::ThresholdQuery q;
  q.scan = diamond::ScanParameter::Temperature;
  q.measure = diamond::Measure::QuantumDiscord;
  q.lo = 0.1;
  q.hi = 10.0;
  q.scan_points = 16;
  EXPECT_FALSE(diamond::find_threshold(q, {1, 1, 0, 0, 1}).found);
}

TEST(Threshold, NoBracket) {
  diamond::ThresholdQuery q;
  q.lo = 0.0;
  q.hi = 1.0;
  try {
    diamond::find_threshold(q, {1, 0, 0, 0, 1});
    FAIL() << "expected NoBracket";
  } catch (const diamond::Error& e) {
    EXPECT_EQ(e.kind(), diamond::ErrorKind::NoBracket);
  }
  q.lo = 2.0;
  EXPECT_THROW(diamond::find_threshold(q, {1, 1, 0, 0, 1}), diamond::Error);
}

TEST(Validate, SinglePointPasses) {
  diamond::ValidationOptions opt;
  opt.grid_cap = 1;
  const auto s = diamond::run_validation(opt);
  EXPECT_EQ(s.points, 1u);
  EXPECT_TRUE(s.passed());
  EXPECT_TRUE(s.deviations.empty() || s.deviations.front().check.find("theta") != std::string::npos);
}

TEST(Validate, SmallGridReportsDeviations) {
  diamond::ValidationOptions opt;
  opt.grid_cap = 12;
  const auto s = diamond::run_validation(opt);
  EXPECT_TRUE(s.passed());
  EXPECT_FALSE(s.deviations.empty());
  std::ostringstream out;
  diamond::print_summary(out, s);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
}

TEST(Validate, VerbatimModeDowngradesToWarnings) {
  diamond::ValidationOptions opt;
  opt.grid_cap = 12;
  opt.v_variant = diamond::VElement::Verbatim;
  const auto s = diamond::run_validation(opt);
  EXPECT_TRUE(s.passed());
  EXPECT_FALSE(s.warnings.empty());
}
