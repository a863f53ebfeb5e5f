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

#include "pate/libsvm.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "pate/errors.h"
#include "pate/report_io.h"

namespace pate {
namespace {

// Candidate labeling schemes, as bits.
constexpr unsigned kPlusMinus = 1;
constexpr unsigned kZeroOne = 2;
constexpr unsigned kOneTwo = 4;

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !IsSpace(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool ParseNumber(std::string_view text, double& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

bool ParseIndex(std::string_view text, std::uint64_t& value) {
  if (text.empty()) return false;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

unsigned SchemesFor(double label) {
  if (label == 1.0) return kPlusMinus | kZeroOne | kOneTwo;
  if (label == -1.0) return kPlusMinus;
  if (label == 0.0) return kZeroOne;
  if (label == 2.0) return kOneTwo;
  return 0;
}

}  // namespace

Dataset ParseLibsvm(std::istream& in) {
  Dataset data;
  unsigned schemes = kPlusMinus | kZeroOne | kOneTwo;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const std::size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    const std::vector<std::string_view> tokens = Tokens(view);
    if (tokens.empty()) continue;

    double raw = 0.0;
    if (!ParseNumber(tokens[0], raw)) {
      throw ParseError(line_no, "malformed label '" + std::string(tokens[0]) + "'");
    }
    const unsigned allowed = SchemesFor(raw);
    if (allowed == 0) {
      throw ParseError(line_no, "unknown label '" + std::string(tokens[0]) + "'");
    }
    if ((schemes & allowed) == 0) {
      throw ParseError(line_no, "label '" + std::string(tokens[0]) +
                                    "' mixes labeling schemes");
    }
    schemes &= allowed;

    Example x;
    x.label = raw == 1.0 ? 1 : 0;
    std::uint64_t previous = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view token = tokens[t];
      const std::size_t colon = token.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected idx:val, got '" + std::string(token) + "'");
      }
      std::uint64_t index = 0;
      if (!ParseIndex(token.substr(0, colon), index) || index == 0 ||
          index > 0xffffffffULL) {
        throw ParseError(line_no, "bad feature index in '" + std::string(token) + "'");
      }
      if (index <= previous) {
        throw ParseError(line_no, "feature indices must increase");
      }
      double value = 0.0;
      if (!ParseNumber(token.substr(colon + 1), value) || !std::isfinite(value)) {
        throw ParseError(line_no, "non-numeric value in '" + std::string(token) + "'");
      }
      previous = index;
      x.features.push_back({static_cast<std::uint32_t>(index - 1), value});
    }
    data.Add(std::move(x));
  }
  return data;
}

Dataset ParseLibsvmFiles(const std::string& paths) {
  Dataset all;
  std::stringstream list(paths);
  std::string path;
  while (std::getline(list, path, ',')) {
    if (path.empty()) continue;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    Dataset part;
    try {
      part = ParseLibsvm(in);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), path + ": " +
                                     std::string(e.what()).substr(
                                         std::string(e.what()).find(": ") + 2));
    }
    for (const Example& x : part) all.Add(x);
  }
  if (all.empty()) throw IoError("no examples in " + paths);
  return all;
}

void WriteLibsvm(const Dataset& data, std::ostream& out) {
  for (const Example& x : data) {
    out << (x.label.value_or(0) == 1 ? "+1" : "-1");
    for (const Feature& f : x.features) {
      out << ' ' << (f.index + 1) << ':' << FormatDouble(f.value);
    }
    out << '\n';
  }
}

}  // namespace pate
