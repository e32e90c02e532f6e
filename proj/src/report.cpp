#include "riskwarn/report.hpp"

#include "riskwarn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace riskwarn {

namespace {

constexpr const char* kEpisodesHeader =
    "scenario,variation,driver_type,error_variant,model,warning_time,critical,min_timegap,"
    "min_timegap_time";

std::string column_label(ScenarioName name, int variation) {
  return std::string(to_string(name)) + "_" + std::to_string(variation);
}

auto sort_key(const EpisodeResult& r) {
  return std::make_tuple(r.scenario, r.variation, r.error, r.driver, r.model);
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_optional(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw InvalidInput("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + cell + "'");
  }
}

template <typename CellFn>
std::string heatmap_csv(std::span<const ComparisonRecord> records, DriverType driver, CellFn cell) {
  std::map<std::tuple<ErrorVariant, ScenarioName, int>, const ComparisonRecord*> index;
  for (const auto& r : records) {
    if (r.driver == driver) index[{r.error, r.scenario, r.variation}] = &r;
  }
  std::ostringstream out;
  out << "error_variant";
  for (ScenarioName name : kAllScenarios) {
    for (int v = 1; v <= 3; ++v) out << ',' << column_label(name, v);
  }
  out << '\n';
  for (ErrorVariant error : kAllErrorVariants) {
    out << to_string(error);
    for (ScenarioName name : kAllScenarios) {
      for (int v = 1; v <= 3; ++v) {
        out << ',';
        const auto it = index.find({error, name, v});
        if (it != index.end()) out << cell(*it->second);
      }
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + file.string());
}

}  // namespace

std::string format_cell(std::optional<double> value) {
  if (!value || !std::isfinite(*value)) return {};
  char buf[64];
  // Avoid "-0.000".
  const double v = std::abs(*value) < 0.0005 ? 0.0 : *value;
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string episodes_csv(std::span<const EpisodeResult> results) {
  std::vector<const EpisodeResult*> sorted;
  for (const auto& r : results) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto* a, const auto* b) { return sort_key(*a) < sort_key(*b); });
  std::ostringstream out;
  out << kEpisodesHeader << '\n';
  for (const auto* r : sorted) {
    out << to_string(r->scenario) << ',' << r->variation << ',' << to_string(r->driver) << ','
        << to_string(r->error) << ',' << to_string(r->model) << ',' << format_cell(r->warning_time)
        << ',' << (r->critical ? 1 : 0) << ',' << format_cell(r->min_timegap) << ','
        << format_cell(r->min_timegap_time) << '\n';
  }
  return out.str();
}

std::string time_heatmap_csv(std::span<const ComparisonRecord> records, DriverType driver) {
  return heatmap_csv(records, driver,
                     [](const ComparisonRecord& r) { return format_cell(r.dt_warn); });
}

std::string error_heatmap_csv(std::span<const ComparisonRecord> records, DriverType driver) {
  return heatmap_csv(records, driver,
                     [](const ComparisonRecord& r) { return std::to_string(r.error_code); });
}

std::string summary_csv(std::span<const SummaryStatistics> stats) {
  std::ostringstream out;
  out << "driver_type,mean,mean_abs,var,min,max,fp,fn,timed_episodes,episodes\n";
  for (const auto& s : stats) {
    const bool timed = s.timed_episodes > 0;
    auto opt = [&](double v) { return timed ? format_cell(v) : std::string{}; };
    out << to_string(s.driver) << ',' << opt(s.mean) << ',' << opt(s.mean_abs) << ','
        << opt(s.variance) << ',' << opt(s.min) << ',' << opt(s.max) << ','
        << format_cell(s.fp_reduction) << ',' << format_cell(s.fn_reduction) << ','
        << s.timed_episodes << ',' << s.episodes << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> emit_reports(std::span<const EpisodeResult> results,
                                                const ModelParameters& params,
                                                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<EpisodeResult> sorted(results.begin(), results.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
  const auto records = compare_all(sorted, params);
  const auto stats = summarize(records);

  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const auto file = dir / name;
    write_file(file, content);
    written.push_back(file);
  };
  emit("episodes.csv", episodes_csv(sorted));
  for (DriverType type : kAllDriverTypes) {
    const std::string t(to_string(type));
    emit("heatmap_time_" + t + ".csv", time_heatmap_csv(records, type));
    emit("heatmap_error_" + t + ".csv", error_heatmap_csv(records, type));
  }
  emit("summary.csv", summary_csv(stats));
  return written;
}

std::vector<EpisodeResult> parse_episodes_csv(std::string_view text) {
  std::vector<EpisodeResult> out;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kEpisodesHeader) {
    throw InvalidInput("episodes.csv has an unexpected header");
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 9) {
      throw InvalidInput("episodes.csv line " + std::to_string(line_no) + ": expected 9 cells");
    }
    try {
      EpisodeResult r;
      r.scenario = parse_scenario_name(cells[0]);
      r.variation = std::stoi(cells[1]);
      r.driver = parse_driver_type(cells[2]);
      r.error = parse_error_variant(cells[3]);
      r.model = parse_model_kind(cells[4]);
      r.warning_time = parse_optional(cells[5]);
      if (cells[6] != "0" && cells[6] != "1") throw InvalidInput("critical must be 0 or 1");
      r.critical = cells[6] == "1";
      r.min_timegap = parse_optional(cells[7]).value_or(std::numeric_limits<double>::infinity());
      r.min_timegap_time = parse_optional(cells[8]);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw InvalidInput("episodes.csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<EpisodeResult> read_episodes(const std::filesystem::path& dir) {
  const auto file = dir / "episodes.csv";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + file.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto results = parse_episodes_csv(buf.str());
  if (results.empty()) throw InvalidInput(file.string() + " holds no episodes");
  return results;
}

void print_summary(std::ostream& out, std::span<const SummaryStatistics> stats) {
  out << std::left << std::setw(11) << "driver" << std::right << std::setw(9) << "mean[s]"
      << std::setw(9) << "|mean|" << std::setw(9) << "var" << std::setw(9) << "min" << std::setw(9)
      << "max" << std::setw(8) << "FP[%]" << std::setw(8) << "FN[%]" << std::setw(8) << "n_t"
      << '\n';
  for (const auto& s : stats) {
    const bool timed = s.timed_episodes > 0;
    auto cell = [&](double v) { return timed ? format_cell(v) : std::string("-"); };
    out << std::left << std::setw(11) << to_string(s.driver) << std::right << std::setw(9)
        << cell(s.mean) << std::setw(9) << cell(s.mean_abs) << std::setw(9) << cell(s.variance)
        << std::setw(9) << cell(s.min) << std::setw(9) << cell(s.max) << std::setw(8)
        << format_cell(s.fp_reduction) << std::setw(8) << format_cell(s.fn_reduction)
        << std::setw(8) << s.timed_episodes << '\n';
  }
}

std::string describe(const EpisodeResult& r) {
  std::ostringstream out;
  out << "scenario=" << to_string(r.scenario) << " variation=" << r.variation
      << " error=" << to_string(r.error) << " driver=" << to_string(r.driver)
      << " model=" << to_string(r.model) << " warning_time="
      << (r.warning_time ? format_cell(r.warning_time) : std::string("none"))
      << " critical=" << (r.critical ? "true" : "false") << " min_timegap="
      << (std::isfinite(r.min_timegap) ? format_cell(r.min_timegap) : std::string("inf"));
  return out.str();
}

}  // namespace riskwarn
