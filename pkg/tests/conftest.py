# Copyright 2026 The hsdiv Authors
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

import json

import numpy as np
import pytest

from hsdiv.core.conf import reset_settings
from hsdiv.core.schemas.matrix import ChoiSchema, MatrixSchema


@pytest.fixture(scope='function', autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from default settings, whatever the shell exports."""
    monkeypatch.delenv('HSD_TOL', raising=False)
    monkeypatch.delenv('HSD_JOBS', raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def rng():
    return np.random.default_rng(20260918)


@pytest.fixture
def write_json(tmp_path):
    """Writes a pydantic model or plain data to a JSON file under tmp_path."""

    def write(name: str, payload) -> str:
        path = tmp_path / name
        if hasattr(payload, 'model_dump'):
            payload = payload.model_dump(mode='json', by_alias=True, exclude_none=True)
        path.write_text(json.dumps(payload))
        return str(path)

    return write


@pytest.fixture
def state_file(write_json):
    def write(name: str, state) -> str:
        return write_json(name, MatrixSchema.from_operator(state.op))

    return write


@pytest.fixture
def choi_file(write_json):
    def write(name: str, choi) -> str:
        return write_json(name, ChoiSchema.from_choi(choi))

    return write
