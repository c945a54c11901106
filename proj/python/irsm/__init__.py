# Copyright 2026 The IRSM Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python access to the roadside station management simulator."""

from __future__ import annotations

import json
from os import PathLike
from pathlib import Path

from . import _irsm
from ._irsm import IrsmError, bootstrap_yaml, known_metrics, sha256_hex

__all__ = [
    "IrsmError",
    "Simulation",
    "bootstrap_yaml",
    "build_package",
    "compute_actions",
    "known_metrics",
    "read_package",
    "run_scenario",
    "sha256_hex",
]


class Simulation:
    """A scenario on the virtual clock. Times are in seconds."""

    def __init__(self, scenario: str | PathLike[str], seed: int | None = None):
        text = scenario
        if isinstance(scenario, PathLike) or (isinstance(scenario, str) and "\n" not in scenario
                                              and scenario.endswith((".yaml", ".yml"))):
            text = Path(scenario).read_text()
        self._sim = _irsm.Simulation(text, seed)

    def start(self) -> None:
        self._sim.start()

    def advance_to(self, seconds: float) -> None:
        self._sim.advance_to(seconds)

    def run(self) -> dict:
        return json.loads(self._sim.run_json())

    def report(self) -> dict:
        return json.loads(self._sim.report_json())

    def metric(self, name: str) -> float:
        return self._sim.metric(name)

    def trace(self) -> str:
        return self._sim.trace_text()

    @property
    def now(self) -> float:
        return self._sim.now

    @property
    def seed(self) -> int:
        return self._sim.seed


def run_scenario(scenario: str | PathLike[str], seed: int | None = None) -> dict:
    return Simulation(scenario, seed).run()


def compute_actions(desired: dict, reported: dict) -> list[dict]:
    return json.loads(_irsm.compute_actions_json(json.dumps(desired), json.dumps(reported)))


def build_package(manifest: dict, payload: dict[str, bytes | str]) -> bytes:
    files = {k: v.encode() if isinstance(v, str) else v for k, v in payload.items()}
    return _irsm.build_package(json.dumps(manifest), files)


def read_package(archive: bytes) -> tuple[dict, dict[str, bytes]]:
    manifest, payload = _irsm.read_package(archive)
    return json.loads(manifest), dict(payload)
