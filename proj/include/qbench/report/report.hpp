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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qbench/harness/harness.hpp"

namespace qbench::report {

using harness::TestRecord;

enum class Metric { TwoQGates, TwoQDepth, WallTime };

inline constexpr Metric kMetrics[] = {Metric::TwoQGates, Metric::TwoQDepth, Metric::WallTime};

/// Result-file field names: two_q_gates, two_q_depth, wall_time_s.
std::string metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);
/// Column heading: "2Q gates", "2Q depth", "Runtime".
std::string metric_title(Metric metric);

std::optional<double> metric_value(const TestRecord& record, Metric metric);

struct Ratio {
  std::string test_id;
  double ratio = 1.0;
};

struct RatioSeries {
  Metric metric = Metric::TwoQGates;
  std::vector<Ratio> ratios;
  /// Tests absent or not PASSED on either side.
  std::size_t excluded_status = 0;
  /// Tests passed on both sides but with a zero or missing value.
  std::size_t excluded_value = 0;
};

/// candidate / baseline per test PASSED in both runs, in baseline order.
/// Zero or missing values exclude the test with a warning.
RatioSeries normalize(const std::vector<TestRecord>& candidate, const std::vector<TestRecord>& baseline,
                      Metric metric);

/// exp of the mean of logs, the log sum accumulated with compensation.
/// Throws ReportError for empty input or a value that is not positive and finite.
double geometric_mean(std::span<const double> values);
/// Average of the two central order statistics for even sizes.
double median(std::span<const double> values);

struct Cell {
  double geomean = 0.0;
  double median = 0.0;
  std::size_t count = 0;
};

struct AggregateRow {
  std::string label;
  /// Indexed like kMetrics. Empty groups have count 0.
  std::vector<Cell> cells;
};

enum class GroupBy { Topology, Suite };
std::optional<GroupBy> parse_group_by(std::string_view name);

/// One row per group in sorted order plus a trailing "All tests" row.
/// `series` is indexed like kMetrics.
std::vector<AggregateRow> aggregate_table(const std::vector<RatioSeries>& series, GroupBy group_by);

/// 3 significant digits with a dot decimal point: 1.00, 12.3, 457, 1.23e+04.
std::string format_sig3(double value);
/// "1.00/1.00 (n=2)", or "-" for an empty cell.
std::string format_cell(const Cell& cell);

enum class Format { Markdown, Csv };
std::optional<Format> parse_format(std::string_view name);

std::string render(const std::vector<AggregateRow>& rows, Format format);

/// Four status counts plus the total, one per line.
std::string render_status_summary(const harness::StatusCounts& counts);

/// Normalizes every metric, aggregates and renders with a short header
/// naming the runs and the exclusion counts.
std::string comparison_report(const harness::RunResult& candidate, const harness::RunResult& baseline,
                              GroupBy group_by, Format format);

}  // namespace qbench::report
