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

#include "qtele/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

#include "qtele/errors.hpp"

namespace qtele {

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw Error(ErrorKind::InternalConsistency, "number formatting failed");
    }
    return std::string(buf, end);
}

std::string csv_line(const std::vector<std::string> &cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += cells[i];
    }
    out += '\n';
    return out;
}

SchmidtSpectrum parse_spectrum_json(std::string_view text, bool renormalize) {
    const Json parsed = Json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_array()) {
        throw Error(ErrorKind::InvalidCoefficients, "spectrum must be a JSON array of numbers");
    }
    std::vector<double> coeffs;
    for (const auto &v : parsed) {
        if (!v.is_number()) {
            throw Error(ErrorKind::InvalidCoefficients, "spectrum must be a JSON array of numbers");
        }
        coeffs.push_back(v.get<double>());
    }
    return SchmidtSpectrum(std::move(coeffs), renormalize);
}

PlanSummary summarize_plan(const SchmidtSpectrum &s, const DiscriminationPlan &plan) {
    const int d = s.d();
    PlanSummary out{plan.failure, plan.success, {}, plan.unitary.unitarity_residual(), 0.0, 0.0};
    for (const auto &phi : plan.phi) {
        out.phi_norms_squared.push_back(phi.squaredNorm());
    }
    // Rounding can push the maximal-channel success a hair above 1.
    const std::vector<double> p(static_cast<std::size_t>(d), std::clamp(plan.success, 0.0, 1.0));
    out.q_min_eigenvalue = q_matrix(s, p).min_eigenvalue();
    const auto family = nu_family(s);
    for (int l = 0; l < d; ++l) {
        const CVector image = plan.unitary.matrix() * plan.embed(family.states[static_cast<std::size_t>(l)].amps());
        for (int lp = 0; lp < d; ++lp) {
            if (lp != l) {
                out.max_cross_talk = std::max(out.max_cross_talk, std::norm(image[lp]));
            }
        }
    }
    return out;
}

Json to_json(const ProtocolRun &run) {
    return Json{
        {"branch_type", run.branch == BranchType::Conclusive ? "conclusive" : "inconclusive"},
        {"l_or_s", run.l_or_s},
        {"k", run.k},
        {"probability", run.probability},
        {"fidelity", run.fidelity},
    };
}

Json to_json(const FidelityReport &report) {
    return Json{
        {"spectrum", report.spectrum.coeffs()},
        {"strategy", strategy_name(report.strategy)},
        {"analytic", report.analytic},
        {"exact", report.exact},
        {"mc_mean", report.mc_mean},
        {"mc_stderr", report.mc_stderr},
        {"trials", report.trials},
        {"banaszek_corrected", report.banaszek_corrected},
        {"banaszek_as_written", report.banaszek_as_written},
    };
}

Json to_json(const PlanSummary &summary) {
    return Json{
        {"failure", summary.failure},
        {"success", summary.success},
        {"phi_norms_squared", summary.phi_norms_squared},
        {"unitarity_residual", summary.unitarity_residual},
        {"q_min_eigenvalue", summary.q_min_eigenvalue},
        {"max_cross_talk", summary.max_cross_talk},
    };
}

Json to_json(const OracleResult &result) {
    return Json{
        {"failure", result.failure},
        {"best_p", result.best_p},
        {"evaluations", result.evaluations},
    };
}

Json to_json(const CheckResult &check) {
    return Json{
        {"name", check.name},
        {"passed", check.passed},
        {"value", check.value},
        {"tolerance", check.tolerance},
        {"detail", check.detail},
    };
}

Json to_json(const OracleRow &row) {
    return Json{
        {"spectrum", row.coeffs},
        {"resolution", row.resolution},
        {"closed_form", row.closed_form},
        {"oracle", row.oracle},
        {"deviation", row.oracle - row.closed_form},
        {"evaluations", row.evaluations},
    };
}

Json to_json(const AdjudicationRow &row) {
    return Json{
        {"d", row.coeffs.size()},
        {"spectrum", row.coeffs},
        {"f1", row.f1},
        {"exact", row.exact},
        {"closed_form", row.closed_form},
        {"closed_form_deviation", row.exact - row.closed_form},
        {"banaszek_corrected", row.banaszek_corrected},
        {"banaszek_as_written", row.banaszek_as_written},
        {"banaszek_decomposition", row.banaszek_decomposition},
        {"decomposition_deviation", row.exact - row.banaszek_decomposition},
        {"bracket_ok", row.bracket_ok},
    };
}

std::vector<std::string> fidelity_csv_header(int d) {
    std::vector<std::string> cells{"d"};
    for (int m = 0; m < d; ++m) {
        cells.push_back("A" + std::to_string(m));
    }
    for (const char *name : {"strategy", "analytic", "exact", "mc_mean", "mc_stderr", "banaszek_corrected",
                             "banaszek_as_written"}) {
        cells.emplace_back(name);
    }
    return cells;
}

std::vector<std::string> fidelity_csv_row(const FidelityReport &report) {
    std::vector<std::string> cells{std::to_string(report.spectrum.d())};
    for (double a : report.spectrum.coeffs()) {
        cells.push_back(format_number(a));
    }
    cells.emplace_back(strategy_name(report.strategy));
    for (double v : {report.analytic, report.exact, report.mc_mean, report.mc_stderr, report.banaszek_corrected,
                     report.banaszek_as_written}) {
        cells.push_back(format_number(v));
    }
    return cells;
}

}  // namespace qtele
