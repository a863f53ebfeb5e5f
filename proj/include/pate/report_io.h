//
// Copyright 2026 The pate-learn Authors
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
//

#ifndef PATE_REPORT_IO_H_
#define PATE_REPORT_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "pate/estimators.h"

namespace pate {

struct TrialRecord {
  std::string dataset;
  std::string method;
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t trial = 0;
  std::uint64_t seed = 0;
  std::int64_t queries = 0;
  std::int64_t bots = 0;
  double eps_ex_post = 0.0;
  double accuracy = 0.0;
  double wall_ms = 0.0;
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct SummaryReport {
  std::string dataset;
  std::string method;
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t trials = 0;
  double mean_accuracy = 0.0;
  // 1.96 sd / sqrt(trials), sd the sample standard deviation.
  double accuracy_half_width = 0.0;
  double mean_queries = 0.0;
  double queries_half_width = 0.0;
  double mean_eps_ex_post = 0.0;
};

enum class ReportFormat { kCsv, kJson };

ReportFormat ParseReportFormat(const std::string& name);

// Shortest text that reads back to the same double; "inf", "-inf", "nan".
std::string FormatDouble(double value);
double ParseDouble(const std::string& text);

// Recomputes the summary from trial rows (which must share one config).
SummaryReport Summarize(std::span<const TrialRecord> records);

void WriteTrialsCsv(std::span<const TrialRecord> records, std::ostream& out);
std::vector<TrialRecord> ReadTrialsCsv(std::istream& in);

// {"summary": {...}, "trials": [{...}, ...]}; infinities are written as null.
void WriteTrialsJson(std::span<const TrialRecord> records, std::ostream& out);
std::vector<TrialRecord> ReadTrialsJson(std::istream& in);

// Writes to `path`, or to stdout when path is empty or "-". Throws IoError.
void EmitReport(std::span<const TrialRecord> records, ReportFormat format,
                const std::string& path);

void WriteSummaryCsv(const SummaryReport& summary, std::ostream& out);

// probe_id,delta_hat,delta_hstar
void WriteMarginsCsv(std::span<const MarginRecord> records, std::ostream& out);
std::vector<MarginRecord> ReadMarginsCsv(std::istream& in);

}  // namespace pate

#endif  // PATE_REPORT_IO_H_
