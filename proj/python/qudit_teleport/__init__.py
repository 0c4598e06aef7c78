# Copyright 2026 The qudit-teleport Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Conclusive teleportation of qudits through non-maximally entangled channels."""

from qudit_teleport._core import (
    LinearlyDependentError,
    QuditTeleportError,
    SchmidtSpectrum,
    analytic_fidelity,
    banaszek_bound,
    bell_state,
    build_unitary,
    clock_z,
    enumerate_runs,
    exact_average,
    f0,
    f1,
    f2,
    feasibility_oracle,
    fourier,
    gram_matrix,
    gxor,
    haar_moment_check,
    haar_state,
    mc_average,
    optimal_failure,
    run_cli,
    run_conclusive,
    shift_x,
)

__all__ = [
    "LinearlyDependentError",
    "QuditTeleportError",
    "SchmidtSpectrum",
    "analytic_fidelity",
    "banaszek_bound",
    "bell_state",
    "build_unitary",
    "clock_z",
    "enumerate_runs",
    "exact_average",
    "f0",
    "f1",
    "f2",
    "feasibility_oracle",
    "fourier",
    "gram_matrix",
    "gxor",
    "haar_moment_check",
    "haar_state",
    "mc_average",
    "optimal_failure",
    "run_cli",
    "run_conclusive",
    "shift_x",
]
