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

"""Python bindings for the scissorsim amplifier simulator."""

import json

from . import _core
from ._core import (
    eta_from_g2,
    g2_from_eta,
    gain_nominal,
    hom_visibility,
    project_to_physical,
    state_fidelity,
)

__all__ = [
    "analytic",
    "config",
    "eta_from_g2",
    "g2_from_eta",
    "gain_nominal",
    "hom_visibility",
    "project_to_physical",
    "reproduce",
    "run_experiment",
    "simulate",
    "state_fidelity",
]


def _text(cfg):
    if cfg is None:
        return ""
    return cfg if isinstance(cfg, str) else json.dumps(cfg)


def config(g2=None, **overrides):
    """Default profile config as a dict, optionally at gain g2 and with overrides."""
    cfg = json.loads(_core.paper_config())
    if g2 is not None:
        cfg = json.loads(_core.with_g2(json.dumps(cfg), g2))
    cfg.update(overrides)
    return cfg


def analytic(cfg=None):
    return _core.analytic(_text(cfg))


def simulate(cfg=None):
    return _core.simulate(_text(cfg))


def run_experiment(cfg=None, n_pulses=1_000_000, seed=1, mode="exact", inputs=()):
    return json.loads(_core.run_experiment(_text(cfg), n_pulses, seed, mode, list(inputs)))


def reproduce(target):
    return json.loads(_core.reproduce(target))
