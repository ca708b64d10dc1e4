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

"""
Randomized checks of the structural properties of hockey-stick divergences.
Each property runs on 50 instances at d_A = d_B = 2; the PPT variants solve
several SDPs per instance and are marked slow.
"""

import math

import numpy as np
import pytest

from hsdiv.core.divergence import (
    DivergenceQuery,
    coarse_grained_effect,
    hs_all,
    hs_classical,
    hs_measured,
    hs_povm,
    ppt_primal_problem,
)
from hsdiv.core.hermlin import HermitianOperator, positive_part, tensor
from hsdiv.core.privacy import contraction_bound
from hsdiv.core.qobjects import DensityMatrix, apply_channel
from hsdiv.core.schemas.enums import MeasurementClass
from hsdiv.core.sdp import solve

from tests import factories


N_INSTANCES = 50
SLACK = 1e-6

ALL = MeasurementClass.all
CLASSES = [ALL, pytest.param(MeasurementClass.ppt, marks=pytest.mark.slow)]


def bipartite(rng):
    return factories.random_bipartite_state(rng, 2, 2)


def div(rho, sigma, gamma, measurement_class):
    return hs_measured(DivergenceQuery(rho, sigma, gamma, measurement_class)).value


def conjugate(state: DensityMatrix, unitary: np.ndarray) -> DensityMatrix:
    matrix = unitary @ state.matrix @ unitary.conj().T
    return DensityMatrix(HermitianOperator(matrix, state.shape))


def mix(states, weights) -> DensityMatrix:
    total = states[0].op * weights[0]
    for state, weight in zip(states[1:], weights[1:], strict=True):
        total = total + state.op * weight
    return DensityMatrix(total)


def trace_out_last_qubit(state: DensityMatrix) -> DensityMatrix:
    """Tr_{B2} on a (2, 4) state whose B factor is B1 (x) B2."""
    blocks = state.matrix.reshape(2, 2, 2, 2, 2, 2)
    reduced = np.einsum('abcdec->abde', blocks).reshape(4, 4)
    return DensityMatrix(HermitianOperator(reduced, (2, 2)))


@pytest.mark.parametrize('measurement_class', CLASSES)
def test_triangle_inequality(rng, measurement_class):
    for _ in range(N_INSTANCES):
        rho, sigma, tau = bipartite(rng), bipartite(rng), bipartite(rng)
        g1, g2 = rng.uniform(1.0, 2.0, size=2)
        lhs = div(rho, sigma, g1 * g2, measurement_class)
        rhs = div(rho, tau, g1, measurement_class) + g1 * div(tau, sigma, g2, measurement_class)
        assert lhs <= rhs + SLACK


@pytest.mark.parametrize('measurement_class', CLASSES)
def test_joint_convexity(rng, measurement_class):
    for _ in range(N_INSTANCES):
        weights = rng.dirichlet(np.ones(3))
        rhos = [bipartite(rng) for _ in range(3)]
        sigmas = [bipartite(rng) for _ in range(3)]
        gamma = rng.uniform(1.0, 2.0)
        mixed_rho, mixed_sigma = mix(rhos, weights), mix(sigmas, weights)
        lhs = div(mixed_rho, mixed_sigma, gamma, measurement_class)
        rhs = sum(
            w * div(r, s, gamma, measurement_class)
            for w, r, s in zip(weights, rhos, sigmas, strict=True)
        )
        assert lhs <= rhs + SLACK


def _direct_value(rho, sigma, gamma, measurement_class) -> float:
    """sup Tr[M (rho - gamma sigma)] - (1 - gamma)_+ without any reflection."""
    query = DivergenceQuery(rho, sigma, gamma, measurement_class)
    if measurement_class is ALL:
        value = positive_part(query.difference()).trace()
    else:
        value = solve(ppt_primal_problem(query)).primal_value
    return value - query.offset()


@pytest.mark.parametrize('measurement_class', CLASSES)
def test_gamma_reflection(rng, measurement_class):
    for i in range(N_INSTANCES):
        rho, sigma = bipartite(rng), bipartite(rng)
        gamma = 2.0 if i % 2 else 4.0
        value = div(rho, sigma, gamma, measurement_class)
        reflected = _direct_value(sigma, rho, 1.0 / gamma, measurement_class)
        assert value == pytest.approx(gamma * reflected, abs=SLACK)


@pytest.mark.parametrize('measurement_class', CLASSES)
def test_trace_distance_bridge(rng, measurement_class):
    for _ in range(N_INSTANCES):
        rho, sigma = bipartite(rng), bipartite(rng)
        gamma = rng.uniform(1.0, 3.0)
        lhs = (gamma + 1) * div(rho, sigma, 1.0, measurement_class)
        rhs = (
            div(rho, sigma, gamma, measurement_class)
            + div(sigma, rho, gamma, measurement_class)
            + gamma
            - 1
        )
        assert lhs <= rhs + SLACK


@pytest.mark.parametrize('measurement_class', CLASSES)
def test_local_unitaries_preserve_divergence(rng, measurement_class):
    for _ in range(N_INSTANCES):
        rho, sigma = bipartite(rng), bipartite(rng)
        local = np.kron(factories.random_unitary(rng, 2), factories.random_unitary(rng, 2))
        gamma = rng.uniform(1.0, 2.0)
        before = div(rho, sigma, gamma, measurement_class)
        after = div(conjugate(rho, local), conjugate(sigma, local), gamma, measurement_class)
        assert after == pytest.approx(before, abs=SLACK)


@pytest.mark.slow
def test_ppt_data_processing_under_ancilla_trace(rng):
    for _ in range(N_INSTANCES):
        rho = factories.random_bipartite_state(rng, 2, 4)
        sigma = factories.random_bipartite_state(rng, 2, 4)
        gamma = rng.uniform(1.0, 2.0)
        before = div(rho, sigma, gamma, MeasurementClass.ppt)
        after = div(
            trace_out_last_qubit(rho), trace_out_last_qubit(sigma), gamma, MeasurementClass.ppt
        )
        assert after <= before + SLACK


def test_ppt_ancilla_append_and_trace(rng):
    for _ in range(5):
        rho, sigma = bipartite(rng), bipartite(rng)
        ancilla = factories.random_state(rng, 2)
        gamma = rng.uniform(1.0, 2.0)
        extended = [
            DensityMatrix(tensor(state.op, ancilla.op).with_shape((2, 4))) for state in (rho, sigma)
        ]
        assert trace_out_last_qubit(extended[0]).op.allclose(rho.op, atol=1e-12)
        before = div(rho, sigma, gamma, MeasurementClass.ppt)
        after = div(*extended, gamma, MeasurementClass.ppt)
        assert after == pytest.approx(before, abs=SLACK)


def test_all_class_data_processing(rng):
    for _ in range(N_INSTANCES):
        rho, sigma = factories.random_state(rng, 2), factories.random_state(rng, 2)
        channel = factories.random_channel(rng, 2, 3)
        gamma = rng.uniform(1.0, 2.0)
        before = hs_all(DivergenceQuery(rho, sigma, gamma)).value
        after = hs_all(
            DivergenceQuery(apply_channel(channel, rho), apply_channel(channel, sigma), gamma)
        ).value
        assert after <= before + SLACK


@pytest.mark.parametrize('gamma', [0.5, 1.0, 2.0])
def test_classical_reduction(rng, gamma):
    for _ in range(100):
        p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
        rho, sigma = DensityMatrix(np.diag(p)), DensityMatrix(np.diag(q))
        value = hs_measured(DivergenceQuery(rho, sigma, gamma)).value
        assert value == pytest.approx(hs_classical(p, q, gamma), abs=1e-10)


def test_contraction_of_trace_distance(rng):
    for _ in range(N_INSTANCES):
        rho, sigma = factories.random_state(rng, 2), factories.random_state(rng, 2)
        mechanism = factories.random_channel(rng, 2, 2)
        out_rho, out_sigma = apply_channel(mechanism, rho), apply_channel(mechanism, sigma)
        epsilon = rng.uniform(0.0, 1.5)
        gamma = math.exp(epsilon)
        delta = max(
            hs_all(DivergenceQuery(out_rho, out_sigma, gamma)).value,
            hs_all(DivergenceQuery(out_sigma, out_rho, gamma)).value,
        )
        distance = hs_all(DivergenceQuery(out_rho, out_sigma, 1.0)).value
        assert distance <= contraction_bound(epsilon, min(1.0, delta)) + SLACK


def random_povm(rng, dim, outcomes):
    isometry = np.linalg.qr(
        rng.normal(size=(dim * outcomes, dim)) + 1j * rng.normal(size=(dim * outcomes, dim))
    )[0]
    blocks = [isometry[k * dim : (k + 1) * dim, :] for k in range(outcomes)]
    return [HermitianOperator(b.conj().T @ b) for b in blocks]


def test_binary_coarse_graining_reaches_povm_value(rng):
    for _ in range(N_INSTANCES):
        rho, sigma = factories.random_state(rng, 3), factories.random_state(rng, 3)
        povm = random_povm(rng, 3, 4)
        gamma = rng.uniform(1.0, 2.0)
        query = DivergenceQuery(rho, sigma, gamma)

        value = hs_povm(rho, sigma, povm, gamma)
        effect = coarse_grained_effect(rho, sigma, povm, gamma)
        assert effect.expectation(query.difference()) - query.offset() == pytest.approx(
            value, abs=1e-10
        )
        assert value <= hs_all(query).value + SLACK
