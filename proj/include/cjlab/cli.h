// Copyright 2026 The cjlab Authors
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

#ifndef CJLAB_CLI_H
#define CJLAB_CLI_H

#include <ostream>

namespace cjlab {

enum ExitCode {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNonConvergence = 3,
    kExitIo = 4,
};

/// Entry point of the cjlab tool. Subcommands: scan, simulate, fit, wigner,
/// spectral, invert.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace cjlab

#endif
