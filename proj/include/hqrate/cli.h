// Copyright 2026 The hqrate Authors
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

#ifndef HQRATE_CLI_H
#define HQRATE_CLI_H

#include <ostream>

namespace hqrate {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitUnreachable = 3,
    kExitConvergence = 4,
};

/// Entry point of the `hqrate` tool (subcommands rate, sweep, mc). Output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace hqrate

#endif
