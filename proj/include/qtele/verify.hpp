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
#include <string_view>
#include <vector>

namespace qtele {

enum class VerifyDepth {
    Quick,  // reduced sample counts, a few seconds
    Full,   // acceptance-scale sample counts, well under five minutes
};

std::string_view depth_name(VerifyDepth depth);
std::optional<VerifyDepth> parse_depth(std::string_view name);

/// One invariant of the suite. `value` is the worst observed statistic
/// (a deviation, or a z-score for statistical checks) and passes when
/// `value <= tolerance`.
struct CheckResult {
    std::string name;
    bool passed;
    double value;
    double tolerance;
    std::string detail;
};

/// Brute-force oracle against the closed-form optimal failure probability.
struct OracleRow {
    std::vector<double> coeffs;
    double resolution;
    double closed_form;
    double oracle;
    long long evaluations;
};

/// Side-by-side values for the XAndZ strategy. Only
/// f1 ≤ exact ≤ banaszek_corrected is asserted; the rest is reported.
struct AdjudicationRow {
    std::vector<double> coeffs;
    double f1;
    double exact;                      // Haar-exact average fidelity with X then Z correction
    double closed_form;                // f2
    double banaszek_corrected;         // bound on the original coefficients
    double banaszek_as_written;        // same with the opposite sign in front of the sum
    double banaszek_decomposition;     // corrected bound on the 2d split-channel coefficients
    bool bracket_ok;
};

struct VerifyReport {
    VerifyDepth depth;
    std::uint64_t seed;
    std::vector<CheckResult> checks;
    std::vector<OracleRow> oracle;
    std::vector<AdjudicationRow> adjudication;

    bool passed() const;
    std::vector<std::string> failures() const;
};

/// Runs every cross-module invariant. The result depends only on `depth`
/// and `seed`; `threads` only changes wall time.
VerifyReport run_verification(VerifyDepth depth, std::uint64_t seed, int threads = 1);

}  // namespace qtele
