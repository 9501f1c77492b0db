// Copyright 2026 The fibjones Authors
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

#ifndef FIBJONES_CLI_HPP
#define FIBJONES_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fibjones::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kSizeCap = 2,
  kCheckFailed = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace fibjones::cli

#endif  // FIBJONES_CLI_HPP
