// Copyright 2026 The lidarsel Authors
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

// The lidarsel command-line front end.
//
//   lidarsel generate | rank | select | eval | sweep | geometry | replay
//
// Every command that writes a structured output also writes a JSON run
// manifest next to it (manifest.json inside output directories,
// <file>.manifest.json beside single output files). `replay --manifest`
// re-runs the recorded invocation after checking the input digests.
//
// Exit codes:
//   0 success
//   1 input/output failure (missing file, unwritable path, digest mismatch)
//   2 parse error (command line, configuration string, file format)
//   3 validation error (bad parameter or scene specification)
//   4 infeasible selection constraint
//   5 numeric failure (rank deficiency, evaluation failure)

#ifndef LIDARSEL_TOOLS_CLI_H_
#define LIDARSEL_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace lidarsel::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitInfeasible = 4,
  kExitNumeric = 5,
};

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lidarsel::cli

#endif  // LIDARSEL_TOOLS_CLI_H_
