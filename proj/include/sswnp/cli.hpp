// Copyright 2026 The sswnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSWNP__CLI_HPP_
#define SSWNP__CLI_HPP_

#include <iosfwd>

namespace sswnp
{

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDataOrConfig = 2,
  kExitNumerical = 3,
};

/// Runs one subcommand (synth, train, eval, ablate, sweep, report,
/// grad-check). Artifacts and a manifest go to --out; progress to `out`,
/// diagnostics to `err`.
int run_cli(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace sswnp

#endif  // SSWNP__CLI_HPP_
