// Copyright 2026 The qudit-teleport Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtele {

/// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;         // bad flags, malformed or unsupported configuration
inline constexpr int kExitDomain = 2;        // linearly dependent spectrum
inline constexpr int kExitVerification = 3;  // a verified invariant failed

/// Seed used when neither --seed nor QT_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct CliResult {
    int exit_code;
    std::string out;  // report text destined for stdout (empty when --output is used)
    std::string err;  // diagnostics
};

/// Runs the command line `args` (program name excluded). `env_seed` is the
/// value of QT_SEED, if set. Never throws; failures map to exit codes.
CliResult run_cli(const std::vector<std::string> &args, const std::optional<std::string> &env_seed = std::nullopt);

}  // namespace qtele
