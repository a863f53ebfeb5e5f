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

#ifndef PATE_LIBSVM_H_
#define PATE_LIBSVM_H_

#include <istream>
#include <ostream>
#include <string>

#include "pate/data.h"

namespace pate {

// Reads `label idx:val idx:val ...` lines. Indices are 1-based in the text
// and strictly increasing; `#` starts a comment. One labeling scheme is
// accepted per input: {+1, -1}, {1, 0} or {1, 2}, with 1 always mapping to
// label 1. Throws ParseError naming the offending line.
Dataset ParseLibsvm(std::istream& in);

// Parses one file, or several joined by commas (e.g. a train/test pair),
// into one dataset. Throws IoError when a file cannot be opened.
Dataset ParseLibsvmFiles(const std::string& paths);

// Canonical text: labels +1 / -1, 1-based indices, shortest round-trip
// values. Unlabeled examples are written with label -1.
void WriteLibsvm(const Dataset& data, std::ostream& out);

}  // namespace pate

#endif  // PATE_LIBSVM_H_
