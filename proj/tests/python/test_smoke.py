# Copyright 2026 The scissorsim Authors
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

import math

import numpy as np
import pytest

import scissorsim


def test_gain_nominal():
    assert scissorsim.gain_nominal(3.48, 0.041) == pytest.approx(3.48 / (0.959 + 3.48 * 0.041), abs=1e-12)
    assert scissorsim.g2_from_eta(scissorsim.eta_from_g2(2.5)) == pytest.approx(2.5, rel=1e-12)


def test_simulation_matches_analytic():
    cfg = scissorsim.config(g2=3.48, tau=1.0, delta=1.0, V1=1.0, V2=1.0)
    a = scissorsim.analytic(cfg)
    s = scissorsim.simulate(cfg)
    assert s["success_probability"] == pytest.approx(a["success_probability"], abs=1e-12)
    assert s["vacuum_weight"] == pytest.approx(a["vacuum_weight"], abs=1e-12)
    heralded = [p for label, p in s["patterns"].items() if label != "fail"]
    assert len(heralded) == 4
    assert sum(heralded) == pytest.approx(s["success_probability"], abs=1e-12)
    assert np.allclose(s["qubit"], a["qubit"], atol=1e-12)


def test_output_is_density_matrix():
    rho = scissorsim.simulate()["output"]
    assert np.allclose(rho, rho.conj().T, atol=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_hom_visibility():
    for v in (0.0, 0.5, 0.91, 1.0):
        assert scissorsim.hom_visibility(v) == pytest.approx(v, abs=1e-10)


def test_fidelity_and_projection():
    plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    assert scissorsim.state_fidelity(plus, plus) == pytest.approx(1.0, abs=1e-12)
    bad = np.diag([1.2, -0.2]).astype(complex)
    assert np.allclose(scissorsim.project_to_physical(bad), np.diag([1.0, 0.0]), atol=1e-12)


def test_sampled_run_is_reproducible():
    cfg = scissorsim.config(g2=3.48)
    a = scissorsim.run_experiment(cfg, n_pulses=20000, seed=7, mode="sampled", inputs=["R"])
    b = scissorsim.run_experiment(cfg, n_pulses=20000, seed=7, mode="sampled", inputs=["R"])
    assert a["G_m"] == b["G_m"]
    assert 0.0 <= a["inputs"][0]["fidelity_output"] <= 1.0


def test_reproduce_table1():
    report = scissorsim.reproduce("table1")
    assert report["result"] == "PASS"
    assert len(report["table"]) == 3
    with pytest.raises(ValueError):
        scissorsim.reproduce("table9")


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        scissorsim.simulate(scissorsim.config(tau=1.5))
    with pytest.raises(ValueError):
        scissorsim.simulate({"nonsense": 1})
