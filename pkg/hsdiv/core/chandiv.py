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
Channel hockey-stick divergences

    E_gamma(P || Q) = sup_{rho_RA} E_gamma(P(rho_RA) || Q(rho_RA)),

with the reference R isomorphic to the input. Both SDPs work on Choi operators;
the supremum over input states is absorbed by the variables (Omega_RB, rho_R).
"""

import logging
from dataclasses import dataclass, replace

from pydantic import BaseModel, ConfigDict, model_validator

from hsdiv.core.divergence import DivergenceQuery, DivergenceResult, hs_measured
from hsdiv.core.errors import CovarianceError, DimensionMismatchError, HsdInputError, HsdSolverError
from hsdiv.core.hermlin import HermitianOperator
from hsdiv.core.qobjects import ChoiOperator, choi_state, compose_channels
from hsdiv.core.schemas.enums import MeasurementClass, Method
from hsdiv.core.sdp import (
    SdpProblem,
    SuperopTerm,
    Variable,
    build,
    conditioning_scale,
    expression,
    solve,
    term,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChannelPair:
    p: ChoiOperator
    q: ChoiOperator
    gamma: float = 1.0

    def __post_init__(self):
        if (self.p.input_dim, self.p.output_dim) != (self.q.input_dim, self.q.output_dim):
            raise DimensionMismatchError(
                f'channels map {self.p.input_dim}->{self.p.output_dim} and '
                f'{self.q.input_dim}->{self.q.output_dim}'
            )
        if not float(self.gamma) >= 1.0:
            raise HsdInputError(
                f'channel divergences need gamma >= 1, got {self.gamma}', loc=('gamma',)
            )
        object.__setattr__(self, 'gamma', float(self.gamma))

    def difference(self) -> HermitianOperator:
        """Gamma^P - gamma Gamma^Q."""
        return self.p.op - self.q.op * self.gamma


class CovarianceDeclaration(BaseModel):
    """
    Caller's assertion that both channels are covariant under one group whose
    representation on the input is irreducible. It is recorded, not verified.
    """

    model_config = ConfigDict(frozen=True)

    covariant: bool = False
    irreducible_input_rep: bool = False

    @model_validator(mode='after')
    def irreducible_implies_covariant(self):
        if self.irreducible_input_rep and not self.covariant:
            raise ValueError('an irreducible input representation requires covariance')
        return self


def _problem_dims(pair: ChannelPair) -> tuple[int, int, int]:
    d_r, d_b = pair.p.input_dim, pair.p.output_dim
    return d_r, d_b, d_r * d_b


def _omega_and_input(pair: ChannelPair) -> list[Variable]:
    d_r, _, side = _problem_dims(pair)
    return [Variable('Omega', side, shape=pair.p.shape), Variable('rho_R', d_r)]


def _scaled_difference(pair: ChannelPair) -> tuple[HermitianOperator, float]:
    difference = pair.difference()
    scale = conditioning_scale(difference)
    return difference / scale, scale


def _unit_trace(d_r: int):
    return (
        'Tr[rho_R]=1',
        expression(term('rho_R', SuperopTerm.trace(d_r)), constant=[[-1.0]]),
        'zero',
    )


def channel_all_problem(pair: ChannelPair) -> SdpProblem:
    """
    sup Tr[Omega (Gamma^P - gamma Gamma^Q)] over Omega >= 0, rho_R >= 0 with
    Tr[rho_R] = 1 and Omega <= rho_R (x) I_B.
    """
    d_r, d_b, _ = _problem_dims(pair)
    difference, scale = _scaled_difference(pair)
    lift = SuperopTerm.tensor_identity_right((d_r, d_b))
    return build(
        name='channel_all_primal',
        variables=_omega_and_input(pair),
        objective=[('Omega', difference)],
        constraints=[
            _unit_trace(d_r),
            (
                'rho_R(x)I-Omega',
                expression(term('rho_R', lift), term('Omega', SuperopTerm.negate())),
                'psd',
            ),
        ],
        objective_scale=scale,
    )


def channel_all_dual_problem(pair: ChannelPair) -> SdpProblem:
    """
    inf mu over mu >= 0, Z >= 0 with Gamma^P - gamma Gamma^Q <= Z and mu I >= Tr_B[Z],
    posed as the maximization of -mu.
    """
    d_r, d_b, side = _problem_dims(pair)
    difference, scale = _scaled_difference(pair)
    return build(
        name='channel_all_dual',
        variables=[Variable('Z', side, shape=pair.p.shape), Variable('mu', 1)],
        objective=[('mu', [[-1.0]])],
        constraints=[
            ('Z-X', expression(term('Z'), constant=-difference), 'psd'),
            (
                'muI-Tr_B[Z]',
                expression(
                    term('mu', SuperopTerm.tensor_identity_right((1, d_r))),
                    term('Z', SuperopTerm.partial_trace_b((d_r, d_b)), SuperopTerm.negate()),
                ),
                'psd',
            ),
        ],
        objective_scale=scale,
    )


def channel_ppt_problem(pair: ChannelPair) -> SdpProblem:
    """
    sup Tr[Omega (Gamma^P - gamma Gamma^Q)] over Omega >= 0, rho_R >= 0 with
    Tr[rho_R] = 1, Omega <= rho_R (x) I_B and 0 <= T_B(Omega) <= rho_R (x) I_B.
    """
    d_r, d_b, _ = _problem_dims(pair)
    lift = SuperopTerm.tensor_identity_right((d_r, d_b))
    pt = SuperopTerm.partial_transpose_b((d_r, d_b))
    neg = SuperopTerm.negate()
    difference, scale = _scaled_difference(pair)
    return build(
        name='channel_ppt_primal',
        variables=_omega_and_input(pair),
        objective=[('Omega', difference)],
        constraints=[
            _unit_trace(d_r),
            ('rho_R(x)I-Omega', expression(term('rho_R', lift), term('Omega', neg)), 'psd'),
            ('T_B(Omega)', expression(term('Omega', pt)), 'psd'),
            (
                'rho_R(x)I-T_B(Omega)',
                expression(term('rho_R', lift), term('Omega', pt, neg)),
                'psd',
            ),
        ],
        objective_scale=scale,
    )


def channel_ppt_dual_problem(pair: ChannelPair) -> SdpProblem:
    """
    inf mu over mu, Z, Y, L >= 0 with Gamma^P - gamma Gamma^Q <= Z + T_B(Y - L) and
    mu I_R >= Tr_B[Z] + Tr_B[Y], posed as the maximization of -mu.
    """
    d_r, d_b, side = _problem_dims(pair)
    pt = SuperopTerm.partial_transpose_b((d_r, d_b))
    trace_b = SuperopTerm.partial_trace_b((d_r, d_b))
    neg = SuperopTerm.negate()
    difference, scale = _scaled_difference(pair)
    return build(
        name='channel_ppt_dual',
        variables=[
            Variable('Z', side, shape=pair.p.shape),
            Variable('Y', side, shape=pair.p.shape),
            Variable('L', side, shape=pair.p.shape),
            Variable('mu', 1),
        ],
        objective=[('mu', [[-1.0]])],
        constraints=[
            (
                'dual_feasibility',
                expression(
                    term('Z'), term('Y', pt), term('L', pt, neg), constant=-difference
                ),
                'psd',
            ),
            (
                'muI-Tr_B[Z+Y]',
                expression(
                    term('mu', SuperopTerm.tensor_identity_right((1, d_r))),
                    term('Z', trace_b, neg),
                    term('Y', trace_b, neg),
                ),
                'psd',
            ),
        ],
        objective_scale=scale,
    )


def _solve_channel(
    problem: SdpProblem, pair: ChannelPair, measurement_class: MeasurementClass, tol
) -> DivergenceResult:
    solution = solve(problem, tol=tol)
    if not solution.optimal:
        raise HsdSolverError(
            f'{problem.name} solve ended with status {solution.status}',
            status=solution.status,
            meta_data={'gap': solution.gap, 'iterations': solution.iterations},
        )
    return DivergenceResult(
        value=max(0.0, solution.primal_value),
        method=Method.sdp_primal_dual,
        measurement_class=measurement_class,
        gamma=pair.gamma,
        dual_value=solution.dual_value,
        gap=solution.gap,
        status=solution.status,
    )


def channel_hs_all(pair: ChannelPair, tol: float | None = None) -> DivergenceResult:
    return _solve_channel(channel_all_problem(pair), pair, MeasurementClass.all, tol)


def channel_hs_ppt(pair: ChannelPair, tol: float | None = None) -> DivergenceResult:
    return _solve_channel(channel_ppt_problem(pair), pair, MeasurementClass.ppt, tol)


def channel_hs(
    pair: ChannelPair,
    measurement_class: MeasurementClass = MeasurementClass.all,
    tol: float | None = None,
) -> DivergenceResult:
    match MeasurementClass(measurement_class):
        case MeasurementClass.all:
            return channel_hs_all(pair, tol)
        case MeasurementClass.ppt:
            return channel_hs_ppt(pair, tol)
    raise HsdInputError(
        f'channel divergences support classes all and ppt, got {measurement_class}',
        loc=('class',),
    )


def _check_depolarizing(q: float, p: float, d: int, gamma: float) -> None:
    for name, value in (('q', q), ('p', p)):
        if not 0.0 <= value <= 1.0:
            raise HsdInputError(f'{name} must lie in [0, 1], got {value}', loc=(name,))
    if d < 2:
        raise HsdInputError(f'dimension must be at least 2, got {d}', loc=('d',))
    if gamma < 1.0:
        raise HsdInputError(f'closed forms need gamma >= 1, got {gamma}', loc=('gamma',))


def depolarizing_channel_all_analytic(q: float, p: float, d: int, gamma: float) -> float:
    """
    E_gamma(A^q || A^p) for depolarizing channels A^x with depolarizing weight x.
    """
    _check_depolarizing(q, p, d, gamma)
    t = q - gamma * p
    return max(0.0, (1 - q) - gamma * (1 - p) + t / d**2, t - t / d**2)


def depolarizing_channel_ppt_analytic(q: float, p: float, d: int, gamma: float) -> float:
    """
    E_gamma^PPT(A^q || A^p) for depolarizing channels A^x with depolarizing weight x.
    """
    _check_depolarizing(q, p, d, gamma)
    t = q - gamma * p
    return max(0.0, 1 - q - gamma * (1 - p) + t / d, (d - 1) / d * t)


def channel_hs_via_covariance(
    pair: ChannelPair,
    decl: CovarianceDeclaration,
    measurement_class: MeasurementClass = MeasurementClass.all,
    tol: float | None = None,
) -> DivergenceResult:
    """
    For jointly covariant channels with an irreducible input representation the
    maximally entangled input is optimal, so the channel divergence is the state
    divergence between the normalized Choi states.
    """
    if not decl.irreducible_input_rep:
        raise CovarianceError(
            'the maximally entangled input is only known to be optimal for an irreducible '
            'input representation',
            loc=('irreducible_input_rep',),
        )
    query = DivergenceQuery(
        choi_state(pair.p), choi_state(pair.q), pair.gamma, MeasurementClass(measurement_class)
    )
    result = hs_measured(query, tol)
    return replace(
        result,
        method=Method.covariance_reduction,
        notes=(*result.notes, 'covariance with an irreducible input representation asserted'),
    )


def quasi_subadditivity_bound(
    p0: ChoiOperator,
    q0: ChoiOperator,
    p1: ChoiOperator,
    q1: ChoiOperator,
    gamma1: float,
    gamma2: float,
    measurement_class: MeasurementClass = MeasurementClass.all,
    tol: float | None = None,
) -> float:
    """
    Upper bound on E_{gamma1 gamma2}(P1 o P0 || Q1 o Q0):

        min{E_g1(P0||Q0) + g1 E_g2(P1||Q1), E_g1(P1||Q1) + g1 E_g2(P0||Q0)}.
    """

    def div(first: ChoiOperator, second: ChoiOperator, gamma: float) -> float:
        return channel_hs(ChannelPair(first, second, gamma), measurement_class, tol).value

    return min(
        div(p0, q0, gamma1) + gamma1 * div(p1, q1, gamma2),
        div(p1, q1, gamma1) + gamma1 * div(p0, q0, gamma2),
    )


def composed_pair(
    p0: ChoiOperator, q0: ChoiOperator, p1: ChoiOperator, q1: ChoiOperator, gamma: float
) -> ChannelPair:
    """(P1 o P0, Q1 o Q0) at ``gamma``."""
    return ChannelPair(compose_channels(p0, p1), compose_channels(q0, q1), gamma)


def depolarizing_choi_state_parameter(p: float, d: int) -> float:
    """
    Isotropic parameter of the normalized Choi state of the depolarizing channel
    with weight p: 1 - p + p/d^2.
    """
    return 1 - p + p / d**2
