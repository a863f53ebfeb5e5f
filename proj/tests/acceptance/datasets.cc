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

// LIBSVM benchmark reproduction. Exits 77 (skipped) when the LIBSVM files are absent.

#include <cstdio>

#include "benchmarks.h"

int main() {
  const auto dir = pate::acceptance::FindDataDir();
  if (!dir) {
    std::printf("SKIP 6 LIBSVM benchmark reproduction: set PATE_DATA_DIR to a directory "
                "holding mushrooms, a9a and a9a.t (see README)\n");
    return 77;
  }
  bool ok = true;
  for (const auto& c : pate::acceptance::RunLibsvmBenchmarks(*dir)) {
    std::printf("%s 6 %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    ok = ok && c.pass;
  }
  return ok ? 0 : 1;
}
