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

from pydantic import ValidationError

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hsdiv.core.errors import DimensionMismatchError, InvalidChoiError, InvalidStateError
from hsdiv.core.hermlin import (
    HermitianOperator,
    identity,
    max_entangled,
    partial_transpose,
    swap_operator,
    sym_asym_projectors,
    tensor,
)
from hsdiv.core.qobjects import (
    ChoiOperator,
    DensityMatrix,
    IsotropicParams,
    WernerParams,
    apply_channel,
    apply_channel_adjoint,
    apply_channel_to_bipartite,
    choi_state,
    compose_channels,
    depolarizing_choi,
    identity_channel,
    is_measurement,
    is_ppt_measurement,
    isotropic_state,
    kraus_to_choi,
    unitary_channel,
    werner_state,
)

from tests import factories


def test_density_matrix_validation():
    DensityMatrix(np.diag([0.5, 0.5]))
    with pytest.raises(InvalidStateError) as exc:
        DensityMatrix(np.diag([1.5, -0.5]))
    assert exc.value.meta['min_eig'] == pytest.approx(-0.5)
    with pytest.raises(InvalidStateError):
        DensityMatrix(np.diag([1.0, 1.0]))


def test_params_are_validated():
    with pytest.raises(ValidationError):
        WernerParams(p=1.5, d=2)
    with pytest.raises(ValidationError):
        IsotropicParams(p=0.5, d=1)


def test_werner_state():
    d = 2
    _, asym = sym_asym_projectors(d)
    theta = werner_state(WernerParams(p=1.0, d=d))
    expected = (identity(d * d) + swap_operator(d)) / 6
    assert theta.op.allclose(expected)
    assert werner_state(WernerParams(p=0.0, d=d)).op.allclose(asym)
    assert_allclose(asym.eigenvalues(), [1, 0, 0, 0], atol=1e-12)
    assert theta.shape.as_tuple() == (2, 2)


def test_werner_state_twirl_form():
    for params in factories.WernerParamsFactory.build_batch(5, d=3):
        omega = werner_state(params)
        sym, asym = sym_asym_projectors(params.d)
        assert omega.op.trace() == pytest.approx(1.0)
        rebuilt = sym * (omega.op.expectation(sym) / sym.trace()) + asym * (
            omega.op.expectation(asym) / asym.trace()
        )
        assert rebuilt.allclose(omega.op)
        assert omega.op.expectation(sym) == pytest.approx(params.p)


def test_isotropic_state():
    assert isotropic_state(IsotropicParams(p=1.0, d=2)).op.allclose(max_entangled(2))
    zeta_0 = isotropic_state(IsotropicParams(p=0.0, d=2))
    assert zeta_0.op.allclose((identity(4) - max_entangled(2)) / 3)
    mixed = isotropic_state(IsotropicParams(p=1 / 9, d=3))
    assert mixed.op.allclose(identity(9) / 9)


def test_depolarizing_choi():
    assert depolarizing_choi(0.0, 2).op.allclose(max_entangled(2, normalized=False))
    assert depolarizing_choi(1.0, 2).op.allclose(identity(4) / 2)

    p, d = 0.3, 3
    eta = 1 - p + p / d**2
    choi = depolarizing_choi(p, d)
    assert choi_state(choi).op.allclose(isotropic_state(IsotropicParams(p=eta, d=d)).op)
    assert choi.trace_preservation_residual() <= 1e-12

    with pytest.raises(InvalidChoiError):
        depolarizing_choi(1.2, 2)


def test_choi_operator_rejects_non_trace_preserving():
    with pytest.raises(InvalidChoiError) as exc:
        ChoiOperator(identity(4) * 0.7, 2, 2)
    assert exc.value.meta['trace_preservation_residual'] == pytest.approx(0.4)

    with pytest.raises(InvalidChoiError):
        ChoiOperator(HermitianOperator(np.diag([1.5, 0.0, 0.0, -0.5])), 2, 2, validate=True)

    with pytest.raises(DimensionMismatchError):
        ChoiOperator(identity(4), 3, 2)


def test_apply_channel():
    rho = DensityMatrix(np.diag([1.0, 0.0]))
    assert apply_channel(identity_channel(2), rho).op.allclose(rho.op)
    assert apply_channel(depolarizing_choi(1.0, 2), rho).op.allclose(identity(2) / 2)
    half = apply_channel(depolarizing_choi(0.5, 2), rho)
    assert_allclose(half.diagonal(), [0.75, 0.25])

    with pytest.raises(DimensionMismatchError):
        apply_channel(identity_channel(3), rho)


def test_kraus_and_unitary_channels(rng):
    rho = factories.random_state(rng, 3)
    unitary = factories.random_unitary(rng, 3)
    out = apply_channel(unitary_channel(unitary), rho)
    assert_allclose(out.matrix, unitary @ rho.matrix @ unitary.conj().T, atol=1e-12)

    kraus = factories.random_kraus(rng, 3, 2, n_kraus=3)
    choi = kraus_to_choi(kraus, 3, 2)
    expected = sum(k @ rho.matrix @ k.conj().T for k in kraus)
    assert_allclose(apply_channel(choi, rho).matrix, expected, atol=1e-12)
    assert apply_channel(choi, rho).op.trace() == pytest.approx(1.0)

    with pytest.raises(DimensionMismatchError):
        kraus_to_choi([np.eye(3)], 3, 2)


def test_apply_channel_to_bipartite(rng):
    phi = DensityMatrix(max_entangled(2))
    assert apply_channel_to_bipartite(identity_channel(2), phi).op.allclose(phi.op)

    p = 0.4
    out = apply_channel_to_bipartite(depolarizing_choi(p, 2), phi)
    expected = isotropic_state(IsotropicParams(p=1 - p + p / 4, d=2))
    assert out.op.allclose(expected.op)
    assert out.shape.as_tuple() == (2, 2)

    rho_r = factories.random_state(rng, 2)
    sigma_a = factories.random_state(rng, 3)
    channel = factories.random_channel(rng, 3, 2)
    product = DensityMatrix(tensor(rho_r.op, sigma_a.op))
    out = apply_channel_to_bipartite(channel, product)
    assert out.op.allclose(tensor(rho_r.op, apply_channel(channel, sigma_a).op))


def test_channel_adjoint_and_composition(rng):
    first = factories.random_channel(rng, 2, 3)
    second = factories.random_channel(rng, 3, 2)
    rho = factories.random_state(rng, 2)
    effect = factories.random_hermitian(rng, 3)

    lhs = effect.expectation(apply_channel(first, rho).op)
    rhs = apply_channel_adjoint(first, effect).expectation(rho.op)
    assert lhs == pytest.approx(rhs, abs=1e-12)

    composed = compose_channels(first, second)
    assert (composed.input_dim, composed.output_dim) == (2, 2)
    direct = apply_channel(second, apply_channel(first, rho))
    assert apply_channel(composed, rho).op.allclose(direct.op)

    with pytest.raises(DimensionMismatchError):
        compose_channels(first, first)


def test_is_ppt_measurement():
    d = 2
    assert is_ppt_measurement(identity(4, (2, 2)) / 2)
    phi = max_entangled(d)
    assert_allclose(partial_transpose(phi).eigenvalues(), [0.5, 0.5, 0.5, -0.5], atol=1e-12)
    phi_report = is_ppt_measurement(phi)
    assert not phi_report
    assert phi_report.violations == ['min eig(T_B(M)) = -5.000e-01 < 0']
    assert is_measurement(phi)

    _, asym = sym_asym_projectors(d)
    report = is_ppt_measurement(asym)
    assert not report
    assert len(report.violations) == 1
    assert 'T_B(M)' in report.violations[0]
    assert is_measurement(asym)


def test_is_measurement_reports_both_bounds():
    report = is_measurement(HermitianOperator(np.diag([-0.1, 1.2])))
    assert not report.ok
    assert len(report.violations) == 2
