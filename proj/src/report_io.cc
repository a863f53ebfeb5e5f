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

#include "pate/report_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "pate/errors.h"

namespace pate {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kTrialHeader =
    "dataset,method,epsilon,delta,trial,seed,queries,bots,eps_ex_post,"
    "accuracy,wall_ms";

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsvLine(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quote");
  fields.push_back(std::move(field));
  return fields;
}

template <typename Int>
Int ParseInt(const std::string& text, std::size_t line_no) {
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParseError(line_no, "bad integer '" + text + "'");
  }
  return value;
}

Json NumberOrNull(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

double NumberFromJson(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

Json SummaryJson(const SummaryReport& s) {
  Json j;
  j["dataset"] = s.dataset;
  j["method"] = s.method;
  j["epsilon"] = NumberOrNull(s.epsilon);
  j["delta"] = s.delta;
  j["trials"] = s.trials;
  j["mean_accuracy"] = s.mean_accuracy;
  j["accuracy_half_width"] = s.accuracy_half_width;
  j["mean_queries"] = s.mean_queries;
  j["queries_half_width"] = s.queries_half_width;
  j["mean_eps_ex_post"] = NumberOrNull(s.mean_eps_ex_post);
  return j;
}

void MeanAndHalfWidth(const std::vector<double>& xs, double& mean,
                      double& half_width) {
  const double n = static_cast<double>(xs.size());
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  half_width = 0.0;
  if (xs.size() < 2) return;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  half_width = 1.96 * std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

}  // namespace

ReportFormat ParseReportFormat(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw ConfigError("unknown format '" + name + "' (csv or json)");
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

double ParseDouble(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ParameterError("bad number '" + text + "'");
  }
  return value;
}

SummaryReport Summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw ParameterError("no trial records");
  SummaryReport s;
  s.dataset = records.front().dataset;
  s.method = records.front().method;
  s.epsilon = records.front().epsilon;
  s.delta = records.front().delta;
  s.trials = static_cast<std::int64_t>(records.size());
  std::vector<double> acc, queries;
  double eps = 0.0;
  for (const TrialRecord& r : records) {
    acc.push_back(r.accuracy);
    queries.push_back(static_cast<double>(r.queries));
    eps += r.eps_ex_post;
  }
  MeanAndHalfWidth(acc, s.mean_accuracy, s.accuracy_half_width);
  MeanAndHalfWidth(queries, s.mean_queries, s.queries_half_width);
  s.mean_eps_ex_post = eps / static_cast<double>(records.size());
  return s;
}

void WriteTrialsCsv(std::span<const TrialRecord> records, std::ostream& out) {
  out << kTrialHeader << '\n';
  for (const TrialRecord& r : records) {
    out << CsvField(r.dataset) << ',' << CsvField(r.method) << ','
        << FormatDouble(r.epsilon) << ',' << FormatDouble(r.delta) << ','
        << r.trial << ',' << r.seed << ',' << r.queries << ',' << r.bots << ','
        << FormatDouble(r.eps_ex_post) << ',' << FormatDouble(r.accuracy) << ','
        << FormatDouble(r.wall_ms) << '\n';
  }
}

std::vector<TrialRecord> ReadTrialsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTrialHeader) {
    throw ParseError(1, "unexpected trial CSV header");
  }
  std::vector<TrialRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line, line_no);
    if (f.size() != 11) throw ParseError(line_no, "expected 11 fields");
    try {
      TrialRecord r;
      r.dataset = f[0];
      r.method = f[1];
      r.epsilon = ParseDouble(f[2]);
      r.delta = ParseDouble(f[3]);
      r.trial = ParseInt<std::int64_t>(f[4], line_no);
      r.seed = ParseInt<std::uint64_t>(f[5], line_no);
      r.queries = ParseInt<std::int64_t>(f[6], line_no);
      r.bots = ParseInt<std::int64_t>(f[7], line_no);
      r.eps_ex_post = ParseDouble(f[8]);
      r.accuracy = ParseDouble(f[9]);
      r.wall_ms = ParseDouble(f[10]);
      out.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

void WriteTrialsJson(std::span<const TrialRecord> records, std::ostream& out) {
  Json root;
  root["summary"] = SummaryJson(Summarize(records));
  Json trials = Json::array();
  for (const TrialRecord& r : records) {
    Json j;
    j["dataset"] = r.dataset;
    j["method"] = r.method;
    j["epsilon"] = NumberOrNull(r.epsilon);
    j["delta"] = r.delta;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["queries"] = r.queries;
    j["bots"] = r.bots;
    j["eps_ex_post"] = NumberOrNull(r.eps_ex_post);
    j["accuracy"] = r.accuracy;
    j["wall_ms"] = r.wall_ms;
    trials.push_back(std::move(j));
  }
  root["trials"] = std::move(trials);
  out << root.dump(2) << '\n';
}

std::vector<TrialRecord> ReadTrialsJson(std::istream& in) {
  std::vector<TrialRecord> out;
  try {
    const Json root = Json::parse(in);
    for (const Json& j : root.at("trials")) {
      TrialRecord r;
      r.dataset = j.at("dataset").get<std::string>();
      r.method = j.at("method").get<std::string>();
      r.epsilon = NumberFromJson(j.at("epsilon"));
      r.delta = j.at("delta").get<double>();
      r.trial = j.at("trial").get<std::int64_t>();
      r.seed = j.at("seed").get<std::uint64_t>();
      r.queries = j.at("queries").get<std::int64_t>();
      r.bots = j.at("bots").get<std::int64_t>();
      r.eps_ex_post = NumberFromJson(j.at("eps_ex_post"));
      r.accuracy = j.at("accuracy").get<double>();
      r.wall_ms = j.at("wall_ms").get<double>();
      out.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw ParseError(0, e.what());
  }
  return out;
}

void EmitReport(std::span<const TrialRecord> records, ReportFormat format,
                const std::string& path) {
  if (records.empty()) throw ParameterError("no trial records to emit");
  std::ostringstream text;
  if (format == ReportFormat::kCsv) {
    WriteTrialsCsv(records, text);
  } else {
    WriteTrialsJson(records, text);
  }
  if (path.empty() || path == "-") {
    std::cout << text.str();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text.str();
  if (!out) throw IoError("write failed: " + path);
}

void WriteSummaryCsv(const SummaryReport& s, std::ostream& out) {
  out << "dataset,method,epsilon,delta,trials,mean_accuracy,"
         "accuracy_half_width,mean_queries,queries_half_width,"
         "mean_eps_ex_post\n"
      << CsvField(s.dataset) << ',' << CsvField(s.method) << ','
      << FormatDouble(s.epsilon) << ',' << FormatDouble(s.delta) << ','
      << s.trials << ',' << FormatDouble(s.mean_accuracy) << ','
      << FormatDouble(s.accuracy_half_width) << ','
      << FormatDouble(s.mean_queries) << ','
      << FormatDouble(s.queries_half_width) << ','
      << FormatDouble(s.mean_eps_ex_post) << '\n';
}

void WriteMarginsCsv(std::span<const MarginRecord> records, std::ostream& out) {
  out << "probe_id,delta_hat,delta_hstar\n";
  for (const MarginRecord& r : records) {
    out << r.probe_id << ',' << FormatDouble(r.delta_hat) << ','
        << FormatDouble(r.delta_hstar) << '\n';
  }
}

std::vector<MarginRecord> ReadMarginsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "probe_id,delta_hat,delta_hstar") {
    throw ParseError(1, "unexpected margin CSV header");
  }
  std::vector<MarginRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line, line_no);
    if (f.size() != 3) throw ParseError(line_no, "expected 3 fields");
    try {
      out.push_back({ParseInt<std::size_t>(f[0], line_no), ParseDouble(f[1]),
                     ParseDouble(f[2])});
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

}  // namespace pate
