// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbench/report/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qbench/error.hpp"
#include "qbench/log.hpp"

namespace qbench::report {

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::TwoQGates: return "two_q_gates";
    case Metric::TwoQDepth: return "two_q_depth";
    case Metric::WallTime: return "wall_time_s";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (auto m : kMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string metric_title(Metric metric) {
  switch (metric) {
    case Metric::TwoQGates: return "2Q gates";
    case Metric::TwoQDepth: return "2Q depth";
    case Metric::WallTime: return "Runtime";
  }
  return "unknown";
}

std::optional<double> metric_value(const TestRecord& record, Metric metric) {
  if (!record.metrics) return std::nullopt;
  const auto& m = *record.metrics;
  switch (metric) {
    case Metric::TwoQGates: return static_cast<double>(m.two_q_gates);
    case Metric::TwoQDepth: return static_cast<double>(m.two_q_depth);
    case Metric::WallTime: return m.wall_time_s;
  }
  return std::nullopt;
}

RatioSeries normalize(const std::vector<TestRecord>& candidate, const std::vector<TestRecord>& baseline,
                      Metric metric) {
  std::unordered_map<std::string_view, const TestRecord*> by_id;
  for (const auto& r : candidate) by_id.emplace(r.test_id, &r);

  RatioSeries series;
  series.metric = metric;
  std::size_t zero_count = 0;
  for (const auto& base : baseline) {
    const auto it = by_id.find(base.test_id);
    if (it == by_id.end() || base.status != harness::TestStatus::Passed ||
        it->second->status != harness::TestStatus::Passed) {
      ++series.excluded_status;
      continue;
    }
    const auto b = metric_value(base, metric);
    const auto c = metric_value(*it->second, metric);
    if (!b || !c || !(*b > 0.0) || !(*c > 0.0) || !std::isfinite(*b) || !std::isfinite(*c)) {
      ++series.excluded_value;
      ++zero_count;
      continue;
    }
    series.ratios.push_back({base.test_id, *c / *b});
  }
  if (zero_count != 0) {
    log::warn(metric_name(metric) + ": " + std::to_string(zero_count) +
              " tests excluded for a zero or missing value");
  }
  return series;
}

double geometric_mean(std::span<const double> values) {
  if (values.empty()) throw ReportError("geometric mean of an empty set");
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ReportError("geometric mean needs positive finite values");
    const double term = std::log(v);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return std::exp((sum + compensation) / static_cast<double>(values.size()));
}

double median(std::span<const double> values) {
  if (values.empty()) throw ReportError("median of an empty set");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return std::midpoint(lower, upper);
}

std::optional<GroupBy> parse_group_by(std::string_view name) {
  if (name == "topology") return GroupBy::Topology;
  if (name == "suite") return GroupBy::Suite;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "md" || name == "markdown") return Format::Markdown;
  if (name == "csv") return Format::Csv;
  return std::nullopt;
}

namespace {

Cell make_cell(const std::vector<double>& ratios) {
  if (ratios.empty()) return {};
  return {geometric_mean(ratios), median(ratios), ratios.size()};
}

std::string group_of(const std::string& test_id, GroupBy group_by) {
  return group_by == GroupBy::Topology ? harness::topology_group(test_id) : harness::suite_group(test_id);
}

}  // namespace

std::vector<AggregateRow> aggregate_table(const std::vector<RatioSeries>& series, GroupBy group_by) {
  std::map<std::string, std::vector<std::vector<double>>> groups;
  std::vector<std::vector<double>> all(series.size());
  for (std::size_t m = 0; m < series.size(); ++m) {
    for (const auto& r : series[m].ratios) {
      auto& g = groups[group_of(r.test_id, group_by)];
      g.resize(series.size());
      g[m].push_back(r.ratio);
      all[m].push_back(r.ratio);
    }
  }
  std::vector<AggregateRow> rows;
  for (const auto& [label, per_metric] : groups) {
    AggregateRow row{label, {}};
    for (const auto& ratios : per_metric) row.cells.push_back(make_cell(ratios));
    rows.push_back(std::move(row));
  }
  AggregateRow total{"All tests", {}};
  for (const auto& ratios : all) total.cells.push_back(make_cell(ratios));
  rows.push_back(std::move(total));
  return rows;
}

std::string format_sig3(double value) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  if (value == 0.0) return "0.00";
  char buf[64];
  // Round to 3 significant digits first so the exponent reflects rounding.
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 2);
  const std::string sci(buf, end);
  const int exponent = std::stoi(sci.substr(sci.find('e') + 1));
  if (exponent < -3 || exponent >= 4) return sci;
  const int decimals = std::max(0, 2 - exponent);
  const double rounded = std::stod(sci);
  const auto fixed = std::to_chars(buf, buf + sizeof buf, rounded, std::chars_format::fixed, decimals);
  return std::string(buf, fixed.ptr);
}

std::string format_cell(const Cell& cell) {
  if (cell.count == 0) return "-";
  return format_sig3(cell.geomean) + "/" + format_sig3(cell.median) + " (n=" + std::to_string(cell.count) + ")";
}

std::string render(const std::vector<AggregateRow>& rows, Format format) {
  std::ostringstream out;
  const std::size_t metrics = rows.empty() ? 0 : rows.front().cells.size();
  if (format == Format::Markdown) {
    std::vector<std::vector<std::string>> table;
    std::vector<std::string> header{"Group"};
    for (std::size_t m = 0; m < metrics; ++m) header.push_back(metric_title(kMetrics[m]));
    table.push_back(header);
    for (const auto& row : rows) {
      std::vector<std::string> line{row.label};
      for (const auto& c : row.cells) line.push_back(format_cell(c));
      table.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size(), 3);
    for (const auto& line : table) {
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    auto emit = [&](const std::vector<std::string>& line) {
      out << '|';
      for (std::size_t i = 0; i < line.size(); ++i) out << ' ' << line[i] << std::string(width[i] - line[i].size(), ' ') << " |";
      out << '\n';
    };
    emit(table.front());
    out << '|';
    for (auto w : width) out << ' ' << std::string(w, '-') << " |";
    out << '\n';
    for (std::size_t i = 1; i < table.size(); ++i) emit(table[i]);
  } else {
    out << "group";
    for (std::size_t m = 0; m < metrics; ++m) {
      const auto name = metric_name(kMetrics[m]);
      out << ',' << name << "_geomean," << name << "_median," << name << "_n";
    }
    out << '\n';
    for (const auto& row : rows) {
      out << '"' << row.label << '"';
      for (const auto& c : row.cells) {
        if (c.count == 0) {
          out << ",-,-,0";
        } else {
          out << ',' << format_sig3(c.geomean) << ',' << format_sig3(c.median) << ',' << c.count;
        }
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string render_status_summary(const harness::StatusCounts& counts) {
  std::ostringstream out;
  out << "PASSED  " << counts.passed << '\n'
      << "SKIPPED " << counts.skipped << '\n'
      << "FAILED  " << counts.failed << '\n'
      << "XFAIL   " << counts.xfail << '\n'
      << "total   " << counts.total() << '\n';
  return out.str();
}

std::string comparison_report(const harness::RunResult& candidate, const harness::RunResult& baseline,
                              GroupBy group_by, Format format) {
  std::vector<RatioSeries> series;
  for (auto m : kMetrics) series.push_back(normalize(candidate.records, baseline.records, m));
  const auto rows = aggregate_table(series, group_by);
  if (format == Format::Csv) return render(rows, format);

  std::ostringstream out;
  out << "Candidate " << candidate.run_id << " normalized to baseline " << baseline.run_id << ".\n"
      << "Cells are geometric mean/median of candidate/baseline over tests PASSED in both runs. "
      << "Runtime uses worker-reported wall time only.\n";
  for (const auto& s : series) {
    out << metric_title(s.metric) << ": " << s.ratios.size() << " compared, " << s.excluded_status
        << " not passed in both, " << s.excluded_value << " with zero or missing values.\n";
  }
  out << '\n' << render(rows, format);
  return out.str();
}

}  // namespace qbench::report
