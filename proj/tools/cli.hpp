/* Copyright 2026 The Assure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>

namespace assure::cli {

/// Exit codes shared by every command.
enum ExitStatus : int { kOk = 0, kFindings = 1, kUsage = 2, kIo = 3 };

/// Runs one command line (argv[0] is the program name) and returns its exit
/// status. Everything a command prints goes to `out` or `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace assure::cli
