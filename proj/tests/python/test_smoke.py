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
"""Smoke tests for the Python bindings."""

import json
import math

import numpy as np
import pytest

import qudit_teleport as qt


def qubit_example():
    return qt.SchmidtSpectrum([0.6, 0.8])


def qutrit_example():
    return qt.SchmidtSpectrum.from_squares([0.2, 0.3, 0.5])


def test_closed_forms():
    s = qubit_example()
    assert qt.f0(s) == pytest.approx(0.86, abs=1e-12)
    assert qt.f1(s) == pytest.approx(2.72 / 3, abs=1e-12)
    assert qt.f2(qutrit_example()) == pytest.approx(0.886602540378, abs=1e-11)
    assert qt.optimal_failure(s) == pytest.approx(0.28, abs=1e-12)


def test_exact_matches_closed_forms():
    for d in range(2, 6):
        s = qt.SchmidtSpectrum.random(d, seed=d)
        for strategy in ("none", "x", "xz"):
            assert qt.exact_average(s, strategy) == pytest.approx(qt.analytic_fidelity(s, strategy), abs=1e-9)


def test_banaszek_variants():
    t = qt.SchmidtSpectrum.maximal(3).coeffs
    assert qt.banaszek_bound(t) == pytest.approx(1.0, abs=1e-12)
    assert qt.banaszek_bound(t, "as_written") == pytest.approx(-0.5, abs=1e-12)
    with pytest.raises(qt.QuditTeleportError):
        qt.banaszek_bound([0.5, 0.5])


def test_gates_are_numpy_arrays():
    x = qt.shift_x(3)
    z = qt.clock_z(3)
    assert x.shape == (3, 3)
    omega = np.exp(2j * math.pi / 3)
    np.testing.assert_allclose(z @ x, omega * x @ z, atol=1e-12)
    np.testing.assert_allclose(np.linalg.matrix_power(x, 3), np.eye(3), atol=1e-12)
    g = qt.gxor(3)
    np.testing.assert_allclose(g @ g, np.eye(9), atol=1e-12)


def test_unitary_and_runs():
    s = qutrit_example()
    plan = qt.build_unitary(s)
    u = plan["unitary"]
    np.testing.assert_allclose(u.conj().T @ u, np.eye(6), atol=1e-10)
    psi = qt.haar_state(3, seed=1)
    runs = qt.enumerate_runs(s, psi, "xz")
    assert len(runs) == 18
    assert sum(r["probability"] for r in runs) == pytest.approx(1.0, abs=1e-10)
    conclusive = [r for r in runs if r["branch_type"] == "conclusive"]
    assert sum(r["probability"] for r in conclusive) == pytest.approx(0.6, abs=1e-10)
    assert all(r["fidelity"] == pytest.approx(1.0, abs=1e-10) for r in conclusive)


def test_monte_carlo_and_haar_moment():
    mean, err = qt.mc_average(qubit_example(), "none", 2000, seed=3, threads=2)
    assert abs(mean - 0.86) <= 4 * err
    estimate, err, expected = qt.haar_moment_check(2, 0, 1, 20000, seed=4)
    assert expected == pytest.approx(1 / 6)
    assert abs(estimate - expected) <= 4 * err


def test_linearly_dependent_spectrum():
    with pytest.raises(qt.LinearlyDependentError, match="A0"):
        qt.build_unitary(qt.SchmidtSpectrum([0.0, 1.0]))
    assert issubclass(qt.LinearlyDependentError, qt.QuditTeleportError)
    assert issubclass(qt.QuditTeleportError, ValueError)


def test_cli_entry_point():
    code, out, _ = qt.run_cli(["simulate", "--spectrum", "0.6,0.8", "--strategy", "none", "--trials", "0"])
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"config", "discrimination", "fidelities", "checks"}
    assert report["fidelities"]["analytic"] == 0.86
    code, _, err = qt.run_cli(["simulate", "--spectrum", "0,1"])
    assert code == 2
    assert "A0" in err
