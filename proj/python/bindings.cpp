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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "qtele/channel.hpp"
#include "qtele/cli.hpp"
#include "qtele/discrimination.hpp"
#include "qtele/errors.hpp"
#include "qtele/fidelity.hpp"
#include "qtele/qudit.hpp"
#include "qtele/teleport.hpp"

namespace py = pybind11;
using namespace qtele;

namespace {

CorrectionStrategy strategy_from(const std::string &name) {
    const auto s = parse_strategy(name);
    if (!s) {
        throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + name + "' (none, x, xz)");
    }
    return *s;
}

BanaszekVariant variant_from(const std::string &name) {
    if (name == "corrected") {
        return BanaszekVariant::Corrected;
    }
    if (name == "as_written") {
        return BanaszekVariant::AsWritten;
    }
    throw Error(ErrorKind::InvalidArgument, "variant must be 'corrected' or 'as_written'");
}

StateVector input_state(const CVector &psi) {
    return StateVector({static_cast<int>(psi.size())}, psi);
}

py::dict run_record(const ProtocolRun &run) {
    py::dict out;
    out["branch_type"] = run.branch == BranchType::Conclusive ? "conclusive" : "inconclusive";
    out["l_or_s"] = run.l_or_s;
    out["k"] = run.k;
    out["probability"] = run.probability;
    out["fidelity"] = run.fidelity;
    out["output"] = run.output ? py::cast(run.output->amps()) : py::none();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conclusive teleportation of qudits through non-maximally entangled channels";

    static py::exception<Error> base_error(m, "QuditTeleportError", PyExc_ValueError);
    static py::exception<LinearlyDependentError> ld_error(m, "LinearlyDependentError", base_error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const LinearlyDependentError &e) {
            py::set_error(ld_error, e.what());
        } catch (const Error &e) {
            py::set_error(base_error, e.what());
        }
    });

    py::class_<SchmidtSpectrum>(m, "SchmidtSpectrum")
        .def(py::init<std::vector<double>, bool>(), py::arg("coeffs"), py::arg("renormalize") = false)
        .def_static("from_squares",
                    [](const std::vector<double> &squares, bool renormalize) {
                        return SchmidtSpectrum::from_squares(squares, renormalize);
                    },
                    py::arg("squares"), py::arg("renormalize") = false)
        .def_static("maximal", &SchmidtSpectrum::maximal, py::arg("d"))
        .def_static("random",
                    [](int d, std::uint64_t seed, double floor) {
                        RngStream rng(seed);
                        return random_spectrum(d, rng, floor);
                    },
                    py::arg("d"), py::arg("seed"), py::arg("floor") = 0.05)
        .def_property_readonly("d", &SchmidtSpectrum::d)
        .def_property_readonly("coeffs", &SchmidtSpectrum::coeffs)
        .def_property_readonly("min_coeff", &SchmidtSpectrum::min_coeff)
        .def_property_readonly("min_coeff_squared", &SchmidtSpectrum::min_coeff_squared)
        .def("zero_indices", &SchmidtSpectrum::zero_indices)
        .def("__len__", &SchmidtSpectrum::d)
        .def("__repr__", [](const SchmidtSpectrum &s) {
            std::string out = "SchmidtSpectrum([";
            for (int m = 0; m < s.d(); ++m) {
                out += (m ? ", " : "") + std::to_string(s[m]);
            }
            return out + "])";
        });

    m.def("shift_x", [](int d) { return shift_x(d).matrix(); }, py::arg("d"));
    m.def("clock_z", [](int d) { return clock_z(d).matrix(); }, py::arg("d"));
    m.def("fourier", [](int d) { return fourier(d).matrix(); }, py::arg("d"));
    m.def("gxor", [](int d) { return gxor(d).matrix(); }, py::arg("d"));
    m.def("bell_state", [](int n, int k, int d) { return bell_state(n, k, d).amps(); }, py::arg("n"), py::arg("k"),
          py::arg("d"));
    m.def("haar_state",
          [](int d, std::uint64_t seed) {
              RngStream rng(seed);
              return haar_state(d, rng).amps();
          },
          py::arg("d"), py::arg("seed"));

    m.def("gram_matrix", &gram_closed_form, py::arg("spectrum"));
    m.def("optimal_failure", &optimal_failure, py::arg("spectrum"));
    m.def("feasibility_oracle",
          [](const SchmidtSpectrum &s, double resolution) {
              const auto r = feasibility_oracle(s, resolution);
              py::dict out;
              out["failure"] = r.failure;
              out["best_p"] = r.best_p;
              out["evaluations"] = r.evaluations;
              return out;
          },
          py::arg("spectrum"), py::arg("resolution") = 0.005);
    m.def("build_unitary",
          [](const SchmidtSpectrum &s) {
              const auto plan = build_unitary(s);
              py::dict out;
              out["failure"] = plan.failure;
              out["success"] = plan.success;
              out["phi"] = plan.phi;
              out["unitary"] = plan.unitary.matrix();
              return out;
          },
          py::arg("spectrum"));

    m.def("enumerate_runs",
          [](const SchmidtSpectrum &s, const CVector &psi, const std::string &strategy) {
              py::list out;
              for (const auto &run : enumerate_runs(s, input_state(psi), strategy_from(strategy))) {
                  out.append(run_record(run));
              }
              return out;
          },
          py::arg("spectrum"), py::arg("psi"), py::arg("strategy") = "xz");
    m.def("run_conclusive",
          [](const SchmidtSpectrum &s, const CVector &psi, const std::string &strategy, std::uint64_t seed) {
              RngStream rng(seed);
              return run_record(run_conclusive(s, input_state(psi), strategy_from(strategy), rng));
          },
          py::arg("spectrum"), py::arg("psi"), py::arg("strategy"), py::arg("seed"));

    m.def("f0", &f0, py::arg("spectrum"));
    m.def("f1", &f1, py::arg("spectrum"));
    m.def("f2", &f2, py::arg("spectrum"));
    m.def("analytic_fidelity",
          [](const SchmidtSpectrum &s, const std::string &strategy) {
              return analytic_fidelity(s, strategy_from(strategy));
          },
          py::arg("spectrum"), py::arg("strategy"));
    m.def("banaszek_bound",
          [](const std::vector<double> &t, const std::string &variant, int dimension) {
              return banaszek_bound(t, variant_from(variant), dimension);
          },
          py::arg("t"), py::arg("variant") = "corrected", py::arg("dimension") = 0);
    m.def("exact_average",
          [](const SchmidtSpectrum &s, const std::string &strategy) { return exact_average(s, strategy_from(strategy)); },
          py::arg("spectrum"), py::arg("strategy"));
    m.def("mc_average",
          [](const SchmidtSpectrum &s, const std::string &strategy, std::uint64_t trials, std::uint64_t seed,
             int threads) {
              const CorrectionStrategy st = strategy_from(strategy);
              McEstimate mc{};
              {
                  py::gil_scoped_release release;
                  mc = mc_average(s, st, trials, RngStream(seed), threads);
              }
              return py::make_tuple(mc.mean, mc.std_error);
          },
          py::arg("spectrum"), py::arg("strategy"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 1);
    m.def("haar_moment_check",
          [](int d, int a, int b, std::uint64_t trials, std::uint64_t seed) {
              const auto r = haar_moment_check(d, a, b, trials, RngStream(seed));
              return py::make_tuple(r.estimate, r.std_error, r.expected);
          },
          py::arg("d"), py::arg("a"), py::arg("b"), py::arg("trials"), py::arg("seed"));

    m.def("run_cli",
          [](const std::vector<std::string> &args, std::optional<std::string> env_seed) {
              CliResult r{};
              {
                  py::gil_scoped_release release;
                  r = run_cli(args, env_seed);
              }
              return py::make_tuple(r.exit_code, r.out, r.err);
          },
          py::arg("args"), py::arg("env_seed") = py::none());
}
