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

#include "qtele/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"

#include "qtele/channel.hpp"
#include "qtele/discrimination.hpp"
#include "qtele/errors.hpp"
#include "qtele/fidelity.hpp"
#include "qtele/report.hpp"
#include "qtele/teleport.hpp"
#include "qtele/verify.hpp"

namespace qtele {

namespace {

struct CommonOptions {
    std::optional<int> d;
    std::optional<std::string> spectrum;
    std::optional<std::string> amp2;
    bool renormalize = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    std::string format = "json";
    int threads = 1;
};

struct SimulateOptions {
    std::string strategy = "xz";
    std::uint64_t trials = 10000;
    int runs = 0;
};

struct DiscriminateOptions {
    bool oracle = false;
    double resolution = 0.005;
};

struct SweepOptions {
    int points = 10;
    std::optional<std::string> grid;
    std::string fill = "uniform";
};

/// Resolved channel plus how it was specified.
struct ResolvedSpectrum {
    SchmidtSpectrum spectrum;
    std::string input;  // "maximal", "amplitudes" or "squares"
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_real(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_list(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        const Json parsed = Json::parse(text, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_array()) {
            throw Error(ErrorKind::InvalidArgument, "malformed JSON list");
        }
        std::vector<double> out;
        for (const auto &v : parsed) {
            if (!v.is_number()) {
                throw Error(ErrorKind::InvalidArgument, "list entries must be numbers");
            }
            out.push_back(v.get<double>());
        }
        return out;
    }
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::uint64_t parse_seed(std::string_view text) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
        throw Error(ErrorKind::InvalidArgument, "QT_SEED must be an unsigned 64-bit integer, got '" +
                                                    std::string(text) + "'");
    }
    return value;
}

std::uint64_t resolve_seed(const CommonOptions &opts, const std::optional<std::string> &env_seed) {
    if (opts.seed) {
        return *opts.seed;
    }
    if (env_seed) {
        return parse_seed(*env_seed);
    }
    return kDefaultSeed;
}

ResolvedSpectrum resolve_spectrum(const CommonOptions &opts, std::ostream &log) {
    if (opts.spectrum.has_value() == opts.amp2.has_value()) {
        throw Error(ErrorKind::InvalidArgument, "give exactly one of --spectrum or --amp2");
    }
    std::optional<ResolvedSpectrum> out;
    if (opts.spectrum && trim(*opts.spectrum) == "maximal") {
        if (!opts.d) {
            throw Error(ErrorKind::InvalidArgument, "--spectrum maximal needs --d");
        }
        out = ResolvedSpectrum{SchmidtSpectrum::maximal(*opts.d), "maximal"};
        log << "expanded preset 'maximal' to [";
        for (int m = 0; m < *opts.d; ++m) {
            log << (m ? "," : "") << format_number(out->spectrum[m]);
        }
        log << "]\n";
    } else if (opts.spectrum) {
        out = ResolvedSpectrum{SchmidtSpectrum(parse_list(*opts.spectrum), opts.renormalize), "amplitudes"};
    } else {
        out = ResolvedSpectrum{SchmidtSpectrum::from_squares(parse_list(*opts.amp2), opts.renormalize), "squares"};
    }
    if (opts.d && *opts.d != out->spectrum.d()) {
        throw Error(ErrorKind::InvalidArgument, "--d " + std::to_string(*opts.d) + " does not match " +
                                                    std::to_string(out->spectrum.d()) + " coefficients");
    }
    return *out;
}

Json base_config(std::string_view command, const ResolvedSpectrum &r, const CommonOptions &opts, std::uint64_t seed) {
    return Json{
        {"command", command},
        {"d", r.spectrum.d()},
        {"spectrum", r.spectrum.coeffs()},
        {"spectrum_input", r.input},
        {"renormalize", opts.renormalize},
        {"seed", seed},
        {"format", opts.format},
    };
}

Json check_json(std::string name, double value, double tolerance, std::string detail) {
    return to_json(CheckResult{std::move(name), std::isfinite(value) && value <= tolerance, value, tolerance,
                               std::move(detail)});
}

std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

std::string spectrum_cells_header(int d) {
    std::string out;
    for (int m = 0; m < d; ++m) {
        out += ",A" + std::to_string(m);
    }
    return out;
}

std::string run_simulate(const CommonOptions &opts, const SimulateOptions &sim,
                         const std::optional<std::string> &env_seed, std::ostream &log) {
    const auto strategy = parse_strategy(sim.strategy);
    if (!strategy) {
        throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + sim.strategy + "' (none, x, xz)");
    }
    if (sim.trials != 0 && sim.trials < 100) {
        throw Error(ErrorKind::InvalidArgument, "--trials must be 0 or at least 100");
    }
    const std::uint64_t seed = resolve_seed(opts, env_seed);
    const ResolvedSpectrum r = resolve_spectrum(opts, log);
    const SchmidtSpectrum &s = r.spectrum;
    const ConclusiveProtocol protocol(s);
    const RngStream rng(seed);
    const FidelityReport report = fidelity_report(s, *strategy, sim.trials, rng, opts.threads);

    if (opts.format == "csv") {
        std::string out = std::string(kCsvVersionLine) + "\n";
        out += csv_line(fidelity_csv_header(s.d()));
        out += csv_line(fidelity_csv_row(report));
        return out;
    }

    Json config = base_config("simulate", r, opts, seed);
    config["strategy"] = strategy_name(*strategy);
    config["trials"] = sim.trials;
    config["runs"] = sim.runs;

    const PlanSummary plan = summarize_plan(s, protocol.plan());
    const auto breakdown = exact_average_breakdown(s, *strategy);
    Json fidelities = to_json(report);
    fidelities["exact_conclusive"] = breakdown.conclusive;
    fidelities["exact_inconclusive"] = breakdown.inconclusive;
    fidelities["closed_forms"] = Json{{"f0", f0(s)}, {"f1", f1(s)}, {"f2", f2(s)}};
    if (sim.runs > 0) {
        // Sampled runs draw from a stream disjoint from the Monte Carlo trials.
        RngStream run_rng = rng.spawn(~std::uint64_t{0});
        Json runs = Json::array();
        for (int i = 0; i < sim.runs; ++i) {
            const StateVector psi = haar_state(s.d(), run_rng);
            runs.push_back(to_json(protocol.run(psi, *strategy, run_rng)));
        }
        fidelities["sampled_runs"] = std::move(runs);
    }

    Json checks = Json::array();
    checks.push_back(check_json("unitarity", plan.unitarity_residual, 1e-10, "max |U^dag U - I|"));
    checks.push_back(check_json("unambiguity", plan.max_cross_talk, 1e-20, "max |<u_l'|U|nu_l>|^2, l' != l"));
    checks.push_back(check_json("exact-vs-closed-form", std::abs(report.exact - report.analytic), 1e-9,
                                "reported, not asserted, for xz with d >= 3"));
    checks.push_back(check_json("banaszek-bound", report.exact - report.banaszek_corrected, 1e-9,
                                "exact <= corrected bound"));
    if (sim.trials > 0) {
        const double z = report.mc_stderr > 0 ? std::abs(report.mc_mean - report.exact) / report.mc_stderr
                                              : std::abs(report.mc_mean - report.exact) / 1e-12;
        checks.push_back(check_json("mc-within-3-sigma", z, 3.0, "z-score of Monte Carlo vs exact"));
    }

    Json doc{{"config", config}, {"discrimination", to_json(plan)}, {"fidelities", fidelities}, {"checks", checks}};
    return dump(doc);
}

std::string run_discriminate(const CommonOptions &opts, const DiscriminateOptions &disc,
                             const std::optional<std::string> &env_seed, std::ostream &log) {
    const std::uint64_t seed = resolve_seed(opts, env_seed);
    const ResolvedSpectrum r = resolve_spectrum(opts, log);
    const SchmidtSpectrum &s = r.spectrum;
    const DiscriminationPlan plan = build_unitary(s);
    const PlanSummary summary = summarize_plan(s, plan);
    std::optional<OracleResult> oracle;
    if (disc.oracle) {
        oracle = feasibility_oracle(s, disc.resolution);
    }
    const double oracle_tolerance = std::max(0.01, 2.0 * disc.resolution);

    if (opts.format == "csv") {
        std::string out = std::string(kCsvVersionLine) + "\n";
        out += "d" + spectrum_cells_header(s.d()) +
               ",failure,success,unitarity_residual,q_min_eigenvalue,max_cross_talk,oracle_failure,oracle_resolution\n";
        std::vector<std::string> cells{std::to_string(s.d())};
        for (double a : s.coeffs()) {
            cells.push_back(format_number(a));
        }
        for (double v : {summary.failure, summary.success, summary.unitarity_residual, summary.q_min_eigenvalue,
                         summary.max_cross_talk}) {
            cells.push_back(format_number(v));
        }
        cells.push_back(oracle ? format_number(oracle->failure) : "nan");
        cells.push_back(oracle ? format_number(disc.resolution) : "nan");
        return out + csv_line(cells);
    }

    Json config = base_config("discriminate", r, opts, seed);
    config["oracle"] = disc.oracle;
    config["resolution"] = disc.resolution;

    Json discrimination = to_json(summary);
    discrimination["oracle"] = oracle ? to_json(*oracle) : Json(nullptr);

    Json checks = Json::array();
    checks.push_back(check_json("unitarity", summary.unitarity_residual, 1e-10, "max |U^dag U - I|"));
    checks.push_back(check_json("unambiguity", summary.max_cross_talk, 1e-20, "max |<u_l'|U|nu_l>|^2, l' != l"));
    checks.push_back(check_json("q-psd-at-optimum", -summary.q_min_eigenvalue, 1e-10, "min eigenvalue of Q >= 0"));
    if (oracle) {
        checks.push_back(check_json("oracle-agreement", std::abs(oracle->failure - summary.failure), oracle_tolerance,
                                    "grid oracle vs closed form"));
    }
    Json fidelities{{"f0", f0(s)}, {"f1", f1(s)}, {"f2", f2(s)}};
    Json doc{{"config", config}, {"discrimination", discrimination}, {"fidelities", fidelities}, {"checks", checks}};
    return dump(doc);
}

std::vector<double> sweep_grid(int d, const SweepOptions &sweep) {
    std::vector<double> grid;
    if (sweep.grid) {
        grid = parse_list(*sweep.grid);
    } else {
        if (sweep.points < 1) {
            throw Error(ErrorKind::InvalidGrid, "--points must be at least 1");
        }
        for (int i = 1; i <= sweep.points; ++i) {
            grid.push_back(static_cast<double>(i) / (static_cast<double>(sweep.points) * d));
        }
    }
    for (double a : grid) {
        if (!(a > 0.0 && a <= 1.0 / d + 1e-15)) {
            throw Error(ErrorKind::InvalidGrid,
                        "grid value " + format_number(a) + " outside (0, 1/" + std::to_string(d) + "]");
        }
    }
    return grid;
}

/// Squared coefficients with A_0² = amin2 and the remainder spread by `fill`.
std::vector<double> fill_squares(int d, double amin2, std::string_view fill) {
    std::vector<double> squares(static_cast<std::size_t>(d), amin2);
    const double rest = std::max(0.0, 1.0 - d * amin2);
    const double ramp_total = d * (d - 1) / 2.0;
    for (int k = 1; k < d; ++k) {
        squares[static_cast<std::size_t>(k)] += fill == "ramp" ? rest * k / ramp_total : rest / (d - 1);
    }
    return squares;
}

std::string run_sweep(const CommonOptions &opts, const SweepOptions &sweep, const std::optional<std::string> &env_seed) {
    if (!opts.d) {
        throw Error(ErrorKind::InvalidArgument, "sweep needs --d");
    }
    const int d = *opts.d;
    if (d < 2) {
        throw Error(ErrorKind::InvalidDimension, "qudit dimension must be at least 2");
    }
    if (sweep.fill != "uniform" && sweep.fill != "ramp") {
        throw Error(ErrorKind::InvalidArgument, "unknown fill rule '" + sweep.fill + "' (uniform, ramp)");
    }
    const std::uint64_t seed = resolve_seed(opts, env_seed);
    const auto grid = sweep_grid(d, sweep);

    std::string csv = std::string(kCsvVersionLine) + "\n";
    csv += "d,amin2" + spectrum_cells_header(d) +
           ",failure,f0,f1,f2,exact_none,exact_x,exact_xz,banaszek_corrected,banaszek_as_written,ordering_ok\n";
    Json rows = Json::array();
    bool all_ordered = true;
    for (double a : grid) {
        const auto s = SchmidtSpectrum::from_squares(fill_squares(d, a, sweep.fill), true);
        const double e0 = exact_average(s, CorrectionStrategy::NoCorrection);
        const double e1 = exact_average(s, CorrectionStrategy::XOnly);
        const double e2 = exact_average(s, CorrectionStrategy::XAndZ);
        const double bc = banaszek_bound(s.coeffs(), BanaszekVariant::Corrected);
        const double bw = banaszek_bound(s.coeffs(), BanaszekVariant::AsWritten);
        const bool ordered = f0(s) <= f1(s) + 1e-12 && f1(s) <= f2(s) + 1e-12 && e2 <= bc + 1e-9;
        all_ordered = all_ordered && ordered;

        std::vector<std::string> cells{std::to_string(d), format_number(a)};
        for (double c : s.coeffs()) {
            cells.push_back(format_number(c));
        }
        for (double v : {optimal_failure(s), f0(s), f1(s), f2(s), e0, e1, e2, bc, bw}) {
            cells.push_back(format_number(v));
        }
        cells.emplace_back(ordered ? "true" : "false");
        csv += csv_line(cells);
        rows.push_back(Json{{"amin2", a},
                            {"spectrum", s.coeffs()},
                            {"failure", optimal_failure(s)},
                            {"f0", f0(s)},
                            {"f1", f1(s)},
                            {"f2", f2(s)},
                            {"exact_none", e0},
                            {"exact_x", e1},
                            {"exact_xz", e2},
                            {"banaszek_corrected", bc},
                            {"banaszek_as_written", bw},
                            {"ordering_ok", ordered}});
    }
    if (opts.format == "csv") {
        return csv;
    }
    Json failures = Json::array();
    for (const auto &row : rows) {
        failures.push_back(Json{{"amin2", row["amin2"]}, {"failure", row["failure"]}});
    }
    Json config{{"command", "sweep"}, {"d", d},          {"fill", sweep.fill},
                {"points", grid.size()}, {"seed", seed}, {"format", opts.format}};
    Json checks = Json::array();
    checks.push_back(to_json(CheckResult{"ordering", all_ordered, all_ordered ? 0.0 : 1.0, 0.0,
                                         "f0 <= f1 <= f2 and exact(xz) <= corrected bound on every row"}));
    Json doc{{"config", config},
             {"discrimination", Json{{"rows", failures}}},
             {"fidelities", Json{{"rows", rows}}},
             {"checks", checks}};
    return dump(doc);
}

std::string run_verify(const CommonOptions &opts, const std::string &depth_text,
                       const std::optional<std::string> &env_seed, std::ostream &log, bool &passed) {
    const auto depth = parse_depth(depth_text);
    if (!depth) {
        throw Error(ErrorKind::InvalidArgument, "verify depth must be quick or full");
    }
    const std::uint64_t seed = resolve_seed(opts, env_seed);
    const VerifyReport report = run_verification(*depth, seed, opts.threads);
    passed = report.passed();
    log << "verify " << depth_name(*depth) << ": "
        << std::count_if(report.checks.begin(), report.checks.end(), [](const CheckResult &c) { return c.passed; })
        << "/" << report.checks.size() << " checks passed\n";
    for (const auto &name : report.failures()) {
        log << "FAILED " << name << "\n";
    }

    if (opts.format == "csv") {
        std::string out = std::string(kCsvVersionLine) + "\nname,passed,value,tolerance\n";
        for (const auto &c : report.checks) {
            out += csv_line({c.name, c.passed ? "true" : "false", format_number(c.value), format_number(c.tolerance)});
        }
        return out;
    }
    Json oracle = Json::array();
    for (const auto &row : report.oracle) {
        oracle.push_back(to_json(row));
    }
    Json adjudication = Json::array();
    for (const auto &row : report.adjudication) {
        adjudication.push_back(to_json(row));
    }
    Json checks = Json::array();
    for (const auto &c : report.checks) {
        checks.push_back(to_json(c));
    }
    Json doc{{"config", Json{{"command", "verify"}, {"depth", depth_name(*depth)}, {"seed", seed}}},
             {"discrimination", Json{{"oracle", oracle}}},
             {"fidelities", Json{{"adjudication", adjudication}}},
             {"checks", checks},
             {"passed", passed},
             {"failures", report.failures()}};
    return dump(doc);
}

void add_common(CLI::App *cmd, CommonOptions &opts, bool with_spectrum) {
    cmd->add_option("--d", opts.d, "Qudit dimension")->check(CLI::Range(2, 64));
    if (with_spectrum) {
        cmd->add_option("--spectrum", opts.spectrum,
                        "Schmidt amplitudes A_m, comma-separated or a JSON array, or 'maximal'");
        cmd->add_option("--amp2", opts.amp2, "Squared Schmidt coefficients A_m^2, comma-separated");
        cmd->add_flag("--renormalize", opts.renormalize, "Rescale an unnormalized spectrum instead of rejecting it");
    }
    cmd->add_option("--seed", opts.seed, "Master seed (default: QT_SEED, then a fixed constant)");
    cmd->add_option("--output", opts.output, "Write the report here instead of stdout");
    cmd->add_option("--format", opts.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--threads", opts.threads, "Worker threads for Monte Carlo")->check(CLI::Range(1, 1024));
}

int exit_code_for(const Error &e) {
    switch (e.kind()) {
        case ErrorKind::LinearlyDependent:
            return kExitDomain;
        case ErrorKind::InternalConsistency:
            return kExitVerification;
        default:
            return kExitUsage;
    }
}

}  // namespace

CliResult run_cli(const std::vector<std::string> &args, const std::optional<std::string> &env_seed) {
    std::ostringstream out;
    std::ostringstream err;

    CLI::App app{"Conclusive teleportation of qudits through non-maximally entangled channels", "qudit-teleport"};
    app.require_subcommand(1);

    CommonOptions opts;
    SimulateOptions sim;
    DiscriminateOptions disc;
    SweepOptions sweep;
    std::string depth = "quick";

    auto *simulate = app.add_subcommand("simulate", "Average fidelity of one channel and correction strategy");
    add_common(simulate, opts, true);
    simulate->add_option("--strategy", sim.strategy, "Inconclusive-branch correction: none, x or xz");
    simulate->add_option("--trials", sim.trials, "Monte Carlo trials (0 skips Monte Carlo)");
    simulate->add_option("--runs", sim.runs, "Also emit this many sampled protocol runs")->check(CLI::NonNegativeNumber);

    auto *discriminate = app.add_subcommand("discriminate", "Optimal discrimination plan for a channel");
    add_common(discriminate, opts, true);
    discriminate->add_flag("--oracle", disc.oracle, "Also run the brute-force feasibility oracle (d <= 4)");
    discriminate->add_option("--resolution", disc.resolution, "Oracle grid resolution");

    auto *sweep_cmd = app.add_subcommand("sweep", "Fidelities over a grid of Amin^2 values in (0, 1/d]");
    add_common(sweep_cmd, opts, false);
    sweep_cmd->add_option("--points", sweep.points, "Evenly spaced grid points i/(points*d)");
    sweep_cmd->add_option("--grid", sweep.grid, "Explicit comma-separated Amin^2 values");
    sweep_cmd->add_option("--fill", sweep.fill, "Remaining coefficients: uniform or ramp");

    auto *verify = app.add_subcommand("verify", "Run the invariant suite");
    add_common(verify, opts, false);
    verify->add_option("depth", depth, "quick or full");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return {code == 0 ? kExitOk : kExitUsage, out.str(), err.str()};
    }
    if (sweep_cmd->parsed() && sweep_cmd->count("--format") == 0) {
        opts.format = "csv";
    }

    int code = kExitOk;
    std::string report;
    try {
        if (simulate->parsed()) {
            report = run_simulate(opts, sim, env_seed, err);
        } else if (discriminate->parsed()) {
            report = run_discriminate(opts, disc, env_seed, err);
        } else if (sweep_cmd->parsed()) {
            report = run_sweep(opts, sweep, env_seed);
        } else {
            bool passed = false;
            report = run_verify(opts, depth, env_seed, err, passed);
            code = passed ? kExitOk : kExitVerification;
        }
    } catch (const LinearlyDependentError &e) {
        err << "error: " << e.what() << "\n";
        return {kExitDomain, "", err.str()};
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return {exit_code_for(e), "", err.str()};
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return {kExitUsage, "", err.str()};
    }

    if (opts.output) {
        std::ofstream file(*opts.output, std::ios::binary);
        file << report;
        if (!file) {
            err << "error: cannot write " << *opts.output << "\n";
            return {kExitUsage, "", err.str()};
        }
        return {code, "", err.str()};
    }
    return {code, report, err.str()};
}

}  // namespace qtele
