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

import csv
import io
import json
import math

import numpy as np
import pytest

from hsdiv.core import divergence, privacy
from hsdiv.core.errors import HsdSolverError
from hsdiv.core.management import main
from hsdiv.core.qobjects import (
    IsotropicParams,
    WernerParams,
    depolarizing_choi,
    identity_channel,
    isotropic_state,
    werner_state,
)
from hsdiv.core.schemas.matrix import (
    ChannelSetSchema,
    ChoiSchema,
    KrausSchema,
    MatrixSchema,
    StateSetSchema,
)
from hsdiv.core.schemas.results import AuditReportSchema, DivergenceResultSchema
from hsdiv.core.sdp import SdpSolution, SdpStatus


class Run:
    def __init__(self, argv):
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        self.code = main(argv, self.stdout, self.stderr)

    def json(self):
        return json.loads(self.stdout.getvalue())

    def errors(self):
        return json.loads(self.stderr.getvalue())['errors']


def werner(p, d):
    return werner_state(WernerParams(p=p, d=d))


@pytest.fixture
def werner_files(state_file):
    return state_file('w1.json', werner(1.0, 3)), state_file('w0.json', werner(0.0, 3))


@pytest.fixture
def depolarizing_files(choi_file):
    return (
        choi_file('a0.json', depolarizing_choi(0.0, 2)),
        choi_file('a1.json', depolarizing_choi(1.0, 2)),
    )


def test_state_div_ppt(werner_files):
    run = Run(['state-div', *werner_files, '--class', 'ppt', '--gamma', '1'])
    assert run.code == 0
    payload = run.json()
    assert payload['value'] == pytest.approx(0.5, abs=1e-6)
    assert payload['class'] == 'ppt'
    assert payload['method'] == 'sdp_primal_dual'
    assert payload['status'] == 'optimal'
    assert payload['gap'] <= 1e-7


def test_state_div_identical_files(werner_files):
    run = Run(['state-div', werner_files[0], werner_files[0]])
    assert run.code == 0
    assert run.json()['value'] == pytest.approx(0.0, abs=1e-12)


def test_state_div_result_round_trips(werner_files, tmp_path):
    out = tmp_path / 'result.json'
    run = Run(['state-div', *werner_files, '--gamma', '0.5', '--witness', '--out', str(out)])
    assert run.code == 0
    assert run.stdout.getvalue() == ''
    schema = DivergenceResultSchema.model_validate_json(out.read_text())
    result = schema.to_result()
    assert result.value == pytest.approx(0.5)
    assert result.witness.dim == 9
    assert result.witness.shape.as_tuple() == (3, 3)
    assert result.notes


def test_state_div_dimension_mismatch(state_file, werner_files):
    other = state_file('w2.json', werner(1.0, 2))
    run = Run(['state-div', werner_files[0], other])
    assert run.code == 1
    assert run.errors()[0]['code'] == 'ERR_DIMENSION'


def test_state_div_names_offending_field(write_json, werner_files):
    bad = write_json('bad.json', {'rows': 2, 'cols': 2, 're': [[1.0, 0.0]]})
    run = Run(['state-div', bad, werner_files[0]])
    assert run.code == 1
    error = run.errors()[0]
    assert error['loc'].startswith(bad)

    not_state = write_json('trace2.json', MatrixSchema.from_array(np.eye(2)))
    run = Run(['state-div', not_state, not_state])
    assert run.code == 1
    assert run.errors()[0]['code'] == 'ERR_STATE'


def test_state_div_solver_failure(monkeypatch, werner_files):
    stalled = SdpSolution(
        status=SdpStatus.numerical_limit,
        primal_value=math.nan,
        dual_value=math.nan,
        gap=math.nan,
        iterations=200,
    )
    monkeypatch.setattr(divergence, 'solve', lambda problem, tol=None: stalled)
    run = Run(['state-div', *werner_files, '--class', 'ppt'])
    assert run.code == 2
    assert run.errors()[0]['code'] == 'ERR_SOLVER'


def test_channel_div(depolarizing_files):
    run = Run(['channel-div', *depolarizing_files, '--class', 'all'])
    assert run.code == 0
    assert run.json()['value'] == pytest.approx(0.75, abs=1e-6)

    run = Run(['channel-div', *depolarizing_files, '--class', 'ppt'])
    assert run.code == 0
    payload = run.json()
    assert payload['value'] == pytest.approx(0.5, abs=1e-6)
    assert payload['dual_value'] == pytest.approx(0.5, abs=1e-6)

    run = Run(['channel-div', depolarizing_files[0], depolarizing_files[0]])
    assert run.json()['value'] == pytest.approx(0.0, abs=1e-6)


def test_channel_div_covariant(depolarizing_files):
    run = Run(['channel-div', *depolarizing_files, '--covariant'])
    assert run.code == 0
    payload = run.json()
    assert payload['method'] == 'covariance_reduction'
    assert payload['value'] == pytest.approx(0.75, abs=1e-10)


def test_channel_div_kraus_input(write_json):
    hadamard = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2)
    kraus = write_json(
        'h.json', KrausSchema(kraus=[MatrixSchema.from_array(hadamard)], dim_in=2, dim_out=2)
    )
    run = Run(['channel-div', kraus, kraus])
    assert run.code == 0
    assert run.json()['value'] == pytest.approx(0.0, abs=1e-6)


def test_channel_div_rejects_non_trace_preserving(write_json, depolarizing_files):
    payload = {'rows': 4, 'cols': 4, 're': (0.6 * np.eye(4)).tolist(), 'dim_in': 2, 'dim_out': 2}
    bad = write_json('bad.json', payload)
    run = Run(['channel-div', bad, depolarizing_files[0]])
    assert run.code == 1
    error = run.errors()[0]
    assert error['code'] == 'ERR_CHOI'
    assert error['meta']['trace_preservation_residual'] == pytest.approx(0.2)


@pytest.fixture
def werner_set(write_json):
    def write(name, grid, d=2):
        states = [MatrixSchema.from_operator(werner(p, d).op) for p in grid]
        return write_json(name, StateSetSchema(label='werner', states=states))

    return write


def test_audit_werner_states(werner_set, choi_file):
    states = werner_set('set.json', [0.0, 0.5, 1.0])
    mechanism = choi_file('id.json', identity_channel(4))
    run = Run(['audit', states, '--mechanism', mechanism, '--class', 'ppt', '--jobs', '1'])
    assert run.code == 0
    report = AuditReportSchema.model_validate(run.json())
    assert report.achieved_delta == pytest.approx(2 / 3, abs=1e-6)
    assert report.complete
    assert report.witness in {(0, 2), (2, 0)}
    assert report.contraction_bound == pytest.approx(2 / 3, abs=1e-6)
    assert report.to_report().pairwise.shape == (3, 3)


def test_audit_singleton(werner_set, choi_file):
    states = werner_set('one.json', [0.4])
    mechanism = choi_file('id.json', identity_channel(4))
    run = Run(['audit', states, '--mechanism', mechanism, '--epsilon', '1'])
    assert run.code == 0
    assert run.json()['achieved_delta'] == 0.0
    assert run.json()['witness'] is None


def test_audit_epsilon_sweep(write_json):
    channels = [ChoiSchema.from_choi(depolarizing_choi(p, 2)) for p in (0.0, 0.5, 1.0)]
    path = write_json('channels.json', ChannelSetSchema(label='depolarizing', channels=channels))
    run = Run(['audit', path, '--epsilons', '0,0.5,1', '--jobs', '2'])
    assert run.code == 0
    payload = run.json()
    assert payload['class'] == 'all'
    deltas = [row['achieved_delta'] for row in payload['rows']]
    assert [row['epsilon'] for row in payload['rows']] == [0.0, 0.5, 1.0]
    assert deltas[0] == pytest.approx(0.75, abs=1e-6)
    assert deltas == sorted(deltas, reverse=True)


def test_audit_empty_set(write_json, choi_file):
    states = write_json('empty.json', {'label': 'none', 'states': []})
    mechanism = choi_file('id.json', identity_channel(2))
    run = Run(['audit', states, '--mechanism', mechanism])
    assert run.code == 1
    assert run.errors()[0]['loc'].startswith(states)


def test_audit_incomplete(monkeypatch, werner_set, choi_file):
    def failing(query, tol=None):
        raise HsdSolverError('stalled', status=SdpStatus.numerical_limit)

    monkeypatch.setattr(privacy, 'hs_measured', failing)
    states = werner_set('set.json', [0.0, 1.0])
    mechanism = choi_file('id.json', identity_channel(4))
    run = Run(['audit', states, '--mechanism', mechanism, '--jobs', '1'])
    assert run.code == 3
    payload = run.json()
    assert payload['complete'] is False
    assert len(payload['failures']) == 2
    assert payload['pairwise'][0][1] is None


def read_table(run):
    rows = list(csv.reader(io.StringIO(run.stdout.getvalue())))
    max_diff = float(run.stderr.getvalue().split('=')[1])
    return rows, max_diff


def test_table_werner():
    argv = ['table', 'werner', '--grid', '0:1:3', '--dims', '2', '--class', 'ppt']
    run = Run([*argv, '--jobs', '2'])
    assert run.code == 0
    rows, max_diff = read_table(run)
    assert rows[0] == ['p', 'q', 'd', 'gamma', 'analytic', 'numeric', 'abs_diff']
    assert len(rows) == 10
    assert max_diff <= 1e-6
    assert all(float(row[6]) <= 1e-6 for row in rows[1:])


def test_table_isotropic_and_depolarizing():
    run = Run(['table', 'isotropic', '--grid', '0:1:2', '--dims', '3', '--class', 'ppt'])
    assert run.code == 0
    assert read_table(run)[1] <= 1e-6

    run = Run(['table', 'depolarizing', '--grid', '0:1:2', '--gammas', '1,2'])
    assert run.code == 0
    rows, max_diff = read_table(run)
    assert len(rows) == 9
    assert max_diff <= 1e-6


def test_table_errors():
    with pytest.raises(SystemExit) as exc:
        Run(['table', 'bell'])
    assert exc.value.code == 1

    run = Run(['table', '--grid', '0:1:2'])
    assert run.code == 1

    run = Run(['table', 'werner', '--gamma', '0.5'])
    assert run.code == 1
    assert run.errors()[0]['loc'] == 'gammas'


def test_validate(state_file, choi_file, write_json):
    iso = state_file('iso.json', isotropic_state(IsotropicParams(p=0.3, d=2)))
    run = Run(['validate', iso])
    assert run.code == 0
    payload = run.json()
    assert payload['kind'] == 'state'
    assert payload['dims'] == [2, 2]
    assert payload['trace'] == pytest.approx(1.0)

    choi = choi_file('choi.json', depolarizing_choi(0.3, 2))
    run = Run(['validate', choi])
    assert run.json()['kind'] == 'choi'
    assert run.json()['trace_preservation_residual'] <= 1e-12

    run = Run(['validate', choi, '--kind', 'state'])
    assert run.code == 1

    not_state = write_json('trace2.json', MatrixSchema.from_array(np.eye(2)))
    run = Run(['validate', not_state])
    assert run.code == 1


def test_config_file_and_flag_override(write_json, werner_files):
    config = write_json(
        'run.json', {'gamma': 2.0, 'class': 'ppt', 'inputs': list(werner_files)}
    )
    run = Run(['state-div', '--config', config])
    assert run.code == 0
    assert run.json()['gamma'] == 2.0
    assert run.json()['class'] == 'ppt'

    run = Run(['state-div', '--config', config, '--gamma', '1', '--class', 'all'])
    assert run.code == 0
    assert run.json()['value'] == pytest.approx(1.0)


def test_config_file_errors(tmp_path, write_json):
    broken = tmp_path / 'broken.json'
    broken.write_text('{"gamma": ')
    assert Run(['state-div', '--config', str(broken)]).code == 1

    unknown = write_json('unknown.json', {'gamma': 1.0, 'colour': 'red'})
    run = Run(['state-div', '--config', unknown])
    assert run.code == 1
    assert 'colour' in run.errors()[0]['loc']

    assert Run(['state-div', '--tol', '0.5']).code == 1
