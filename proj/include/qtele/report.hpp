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

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qtele/channel.hpp"
#include "qtele/discrimination.hpp"
#include "qtele/fidelity.hpp"
#include "qtele/teleport.hpp"
#include "qtele/verify.hpp"

namespace qtele {

using Json = nlohmann::ordered_json;

/// First line of every CSV the tool emits; bump on any column change.
inline constexpr std::string_view kCsvVersionLine = "# qudit-teleport v1";

/// Shortest decimal form that parses back to the same double; "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_number(double x);

/// Comma-joined cells plus a trailing newline.
std::string csv_line(const std::vector<std::string> &cells);

/// Spectrum given as a JSON array of nonnegative reals.
SchmidtSpectrum parse_spectrum_json(std::string_view text, bool renormalize = false);

/// Quantities printed for a discrimination plan.
struct PlanSummary {
    double failure;
    double success;
    std::vector<double> phi_norms_squared;
    double unitarity_residual;
    double q_min_eigenvalue;  // Q at the optimal uniform success probability
    double max_cross_talk;    // max |<u_l'|U|nu_l>|^2 over l' != l
};

PlanSummary summarize_plan(const SchmidtSpectrum &s, const DiscriminationPlan &plan);

Json to_json(const ProtocolRun &run);
Json to_json(const FidelityReport &report);
Json to_json(const PlanSummary &summary);
Json to_json(const OracleResult &result);
Json to_json(const CheckResult &check);
Json to_json(const OracleRow &row);
Json to_json(const AdjudicationRow &row);

/// Columns: d, A0..A{d-1}, strategy, analytic, exact, mc_mean, mc_stderr,
/// banaszek_corrected, banaszek_as_written.
std::vector<std::string> fidelity_csv_header(int d);
std::vector<std::string> fidelity_csv_row(const FidelityReport &report);

}  // namespace qtele
