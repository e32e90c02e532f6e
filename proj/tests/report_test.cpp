#include "riskwarn/errors.hpp"
#include "riskwarn/report.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

namespace riskwarn {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string c; std::getline(in, c, ',');) out.push_back(c);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST(FormatCell, Rounding) {
  EXPECT_EQ(format_cell(1.23456), "1.235");
  EXPECT_EQ(format_cell(-0.0001), "0.000");
  EXPECT_EQ(format_cell(-2.5), "-2.500");
  EXPECT_EQ(format_cell(std::nullopt), "");
  EXPECT_EQ(format_cell(std::numeric_limits<double>::infinity()), "");
}

// Random results on the full grid, values on the 0.001 output grid.
std::vector<EpisodeResult> random_results(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> ms(0, 12000);
  std::vector<EpisodeResult> out;
  std::vector<bool> critical;
  for (const auto& c : variation_grid()) {
    EpisodeResult r;
    r.scenario = c.scenario->name;
    r.variation = c.scenario->variation;
    r.error = c.error;
    r.driver = c.driver;
    r.model = c.model;
    if (c.model == ModelKind::kBaseline) critical.push_back(coin(rng) == 1);
    r.critical = critical.back();
    if (coin(rng)) r.warning_time = ms(rng) / 1000.0;
    if (coin(rng)) {
      r.min_timegap = ms(rng) / 1000.0;
      r.min_timegap_time = ms(rng) / 1000.0;
    } else {
      r.min_timegap = std::numeric_limits<double>::infinity();
    }
    out.push_back(r);
  }
  return out;
}

TEST(EpisodesCsv, RoundTrip) {
  const auto results = random_results(11);
  const std::string text = episodes_csv(results);
  const auto back = parse_episodes_csv(text);
  ASSERT_EQ(back.size(), results.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_TRUE(back[i].same_config(results[i]));
    EXPECT_EQ(back[i].model, results[i].model);
    EXPECT_EQ(back[i].critical, results[i].critical);
    EXPECT_EQ(format_cell(back[i].warning_time), format_cell(results[i].warning_time));
    EXPECT_EQ(format_cell(back[i].min_timegap), format_cell(results[i].min_timegap));
  }
  EXPECT_EQ(episodes_csv(back), text);
}

TEST(EpisodesCsv, OrderIndependent) {
  auto results = random_results(5);
  const std::string text = episodes_csv(results);
  std::shuffle(results.begin(), results.end(), std::mt19937(1));
  EXPECT_EQ(episodes_csv(results), text);
}

TEST(EpisodesCsv, RejectsMalformed) {
  const std::string header = lines(episodes_csv({})).front();
  EXPECT_THROW(parse_episodes_csv("a,b\n"), InvalidInput);
  EXPECT_THROW(parse_episodes_csv(header + "\nbicycle_cutin,1,normal,none\n"), InvalidInput);
  EXPECT_THROW(parse_episodes_csv(header + "\nbicycle_cutin,1,normal,none,baseline,x,0,1,1\n"),
               InvalidInput);
  EXPECT_THROW(parse_episodes_csv(header + "\nbicycle_cutin,1,normal,none,baseline,,2,1,1\n"),
               InvalidInput);
  EXPECT_THROW(parse_episodes_csv(header + "\nzeppelin,1,normal,none,baseline,,0,1,1\n"),
               InvalidInput);
}

TEST(Heatmaps, ShapeAndCodes) {
  const auto results = random_results(7);
  const auto records = compare_all(results, ModelParameters{});
  for (DriverType d : kAllDriverTypes) {
    const auto time = lines(time_heatmap_csv(records, d));
    const auto err = lines(error_heatmap_csv(records, d));
    ASSERT_EQ(time.size(), 5u);
    ASSERT_EQ(err.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(cells(time[i]).size(), 19u);
      EXPECT_EQ(cells(err[i]).size(), 19u);
    }
    EXPECT_EQ(cells(time[0])[1], "motorcycle_lane_change_1");
    EXPECT_EQ(cells(time[4])[0], "ie");
    for (std::size_t i = 1; i < 5; ++i) {
      const auto row = cells(err[i]);
      for (std::size_t j = 1; j < row.size(); ++j) {
        EXPECT_TRUE(row[j] == "0" || row[j] == "1" || row[j] == "2") << row[j];
      }
    }
  }
}

TEST(SummaryCsv, EmptyStatsForUntimedType) {
  SummaryStatistics s;
  s.driver = DriverType::kConfident;
  s.episodes = 4;
  s.fp_reduction = 25.0;
  const auto l = lines(summary_csv(std::vector<SummaryStatistics>{s}));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[1], "confident,,,,,,25.000,0.000,0,4");
}

TEST(EmitReports, WritesAllFilesAndReadsBack) {
  const auto dir = std::filesystem::temp_directory_path() / "riskwarn_report_test";
  std::filesystem::remove_all(dir);
  const auto results = random_results(3);
  const auto written = emit_reports(results, ModelParameters{}, dir);
  EXPECT_EQ(written.size(), 8u);
  for (const char* name : {"episodes.csv", "summary.csv", "heatmap_time_defensive.csv",
                           "heatmap_error_confident.csv", "heatmap_time_normal.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  EXPECT_EQ(read_episodes(dir).size(), results.size());
  std::filesystem::remove_all(dir);
}

TEST(ReadEpisodes, MissingOrEmptyThrows) {
  const auto dir = std::filesystem::temp_directory_path() / "riskwarn_report_empty";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  EXPECT_THROW(read_episodes(dir), InvalidInput);
  std::ofstream(dir / "episodes.csv") << episodes_csv({});
  EXPECT_THROW(read_episodes(dir), InvalidInput);
  std::filesystem::remove_all(dir);
}

TEST(Describe, MentionsConfig) {
  EpisodeResult r;
  r.scenario = ScenarioName::kBicycleCutin;
  r.min_timegap = std::numeric_limits<double>::infinity();
  const std::string s = describe(r);
  EXPECT_NE(s.find("bicycle_cutin"), std::string::npos);
  EXPECT_NE(s.find("warning_time=none"), std::string::npos);
  EXPECT_NE(s.find("min_timegap=inf"), std::string::npos);
}

}  // namespace
}  // namespace riskwarn
