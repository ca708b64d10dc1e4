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
State-level hockey-stick divergences

    E_gamma^M(rho || sigma) = sup_{M in class} Tr[M (rho - gamma sigma)] - (1 - gamma)_+

for the measurement classes in MeasurementClass. Values for the ``all`` class
come from an eigensolve, ``ppt`` values from a primal-dual SDP solve, and the
``lo_star_lower`` class only ever yields lower bounds.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace

import numpy as np

from hsdiv.core.conf import get_settings
from hsdiv.core.errors import (
    DimensionMismatchError,
    HsdInputError,
    HsdSolverError,
    MissingShapeError,
)
from hsdiv.core.hermlin import (
    BipartiteShape,
    HermitianOperator,
    identity,
    partial_transpose,
    positive_part,
    positive_projector,
)
from hsdiv.core.qobjects import (
    DensityMatrix,
    is_measurement,
    is_ppt_measurement,
    require_measurement,
)
from hsdiv.core.schemas.enums import MeasurementClass, Method
from hsdiv.core.sdp import (
    SdpProblem,
    SdpStatus,
    SuperopTerm,
    Variable,
    build,
    conditioning_scale,
    expression,
    solve,
    term,
)


logger = logging.getLogger(__name__)

# accepted rounding below zero before a value is clamped
CLAMP_TOL = 1e-8


@dataclass(frozen=True)
class DivergenceQuery:
    rho: DensityMatrix
    sigma: DensityMatrix
    gamma: float = 1.0
    measurement_class: MeasurementClass = MeasurementClass.all

    def __post_init__(self):
        object.__setattr__(self, 'measurement_class', MeasurementClass(self.measurement_class))
        gamma = float(self.gamma)
        if not gamma >= 0.0 or math.isinf(gamma):
            raise HsdInputError(
                f'gamma must be a finite non-negative number, got {self.gamma}', loc=('gamma',)
            )
        object.__setattr__(self, 'gamma', gamma)
        if self.rho.dim != self.sigma.dim:
            raise DimensionMismatchError(
                f'states have different dimensions: {self.rho.dim} and {self.sigma.dim}'
            )
        if self.measurement_class is not MeasurementClass.all:
            if self.rho.shape is None or self.sigma.shape is None:
                raise MissingShapeError(
                    f'class {self.measurement_class} needs a bipartite shape on both states'
                )
            if self.rho.shape != self.sigma.shape:
                raise DimensionMismatchError(
                    f'states have different shapes: {self.rho.shape.as_tuple()} '
                    f'and {self.sigma.shape.as_tuple()}'
                )

    @property
    def shape(self) -> BipartiteShape | None:
        return self.rho.shape

    def difference(self) -> HermitianOperator:
        """rho - gamma sigma."""
        return self.rho.op - self.sigma.op * self.gamma

    def offset(self) -> float:
        return max(0.0, 1.0 - self.gamma)

    def reflected(self) -> 'DivergenceQuery':
        return DivergenceQuery(self.sigma, self.rho, 1.0 / self.gamma, self.measurement_class)


@dataclass(frozen=True)
class DivergenceResult:
    value: float
    method: Method
    measurement_class: MeasurementClass
    gamma: float
    witness: HermitianOperator | None = None
    dual_value: float | None = None
    gap: float | None = None
    status: SdpStatus | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def evaluate_witness(self, query: DivergenceQuery) -> float:
        """Tr[M (rho - gamma sigma)] - (1 - gamma)_+ at the returned witness."""
        if self.witness is None:
            raise HsdInputError('result carries no witness')
        return self.witness.expectation(query.difference()) - query.offset()


def _clamp(value: float) -> float:
    if value < -CLAMP_TOL:
        logger.warning(f'divergence value {value:.3e} is below zero beyond rounding')
    return max(0.0, value)


def hs_classical(p, q, gamma: float) -> float:
    """
    Classical hockey-stick divergence sum_x max{0, P(x) - gamma Q(x)} - (1 - gamma)_+.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.ndim != 1 or p.shape != q.shape:
        raise DimensionMismatchError(
            f'distributions must be vectors of equal length, got {p.shape} and {q.shape}'
        )
    if gamma < 0:
        raise HsdInputError(f'gamma must be non-negative, got {gamma}', loc=('gamma',))
    for name, dist in (('P', p), ('Q', q)):
        if np.any(dist < 0) or abs(dist.sum() - 1.0) > get_settings().TRACE_TOL:
            raise HsdInputError(f'{name} is not a probability vector', loc=(name,))
    return _classical_value(p, q, gamma)


def _classical_value(p: np.ndarray, q: np.ndarray, gamma: float) -> float:
    return float(np.sum(np.maximum(0.0, p - gamma * q)) - max(0.0, 1.0 - gamma))


def hs_all(query: DivergenceQuery) -> DivergenceResult:
    """
    Tr[(rho - gamma sigma)_+] - (1 - gamma)_+, attained by the projector onto the
    positive eigenspace of rho - gamma sigma.
    """
    diff = query.difference()
    value = positive_part(diff).trace() - query.offset()
    return DivergenceResult(
        value=_clamp(value),
        method=Method.closed_form,
        measurement_class=MeasurementClass.all,
        gamma=query.gamma,
        witness=positive_projector(diff),
    )


def ppt_primal_problem(query: DivergenceQuery) -> SdpProblem:
    """
    sup Tr[M (rho - gamma sigma)] over 0 <= M <= I, 0 <= T_B(M) <= I.

    The dual variables of the constraints ``M>=0``, ``T_B(M)``, ``I-M`` and
    ``I-T_B(M)`` are Y1, Y2, Y3 and Y4 of the dual program.
    """
    shape = _require_shape(query)
    dims = shape.as_tuple()
    ident = identity(shape.side, shape)
    pt = SuperopTerm.partial_transpose_b(dims)
    difference = query.difference()
    scale = conditioning_scale(difference)
    return build(
        name='ppt_primal',
        variables=[Variable('M', shape.side, shape=shape)],
        objective=[('M', difference / scale)],
        constraints=[
            ('I-M', expression(term('M', SuperopTerm.negate()), constant=ident), 'psd'),
            ('T_B(M)', expression(term('M', pt)), 'psd'),
            ('I-T_B(M)', expression(term('M', pt, SuperopTerm.negate()), constant=ident), 'psd'),
        ],
        objective_scale=scale,
    )


def ppt_dual_problem(query: DivergenceQuery) -> SdpProblem:
    """
    inf Tr[Y4 + Y3] over Y_i >= 0 with Y3 - Y1 + T_B(Y4 - Y2) >= rho - gamma sigma,
    posed in maximization form: its optimal value is minus the infimum.
    The Y variables come out divided by the problem's objective_scale.
    """
    shape = _require_shape(query)
    dims = shape.as_tuple()
    ident = identity(shape.side, shape)
    pt = SuperopTerm.partial_transpose_b(dims)
    neg = SuperopTerm.negate()
    difference = query.difference()
    scale = conditioning_scale(difference)
    return build(
        name='ppt_dual',
        variables=[Variable(f'Y{i}', shape.side, shape=shape) for i in range(1, 5)],
        objective=[('Y3', -ident), ('Y4', -ident)],
        constraints=[
            (
                'dual_feasibility',
                expression(
                    term('Y3'), term('Y1', neg), term('Y4', pt), term('Y2', pt, neg),
                    constant=-difference / scale,
                ),
                'psd',
            ),
        ],
        objective_scale=scale,
    )


def _require_shape(query: DivergenceQuery) -> BipartiteShape:
    if query.shape is None:
        raise MissingShapeError('PPT divergences need bipartite states')
    return query.shape


def _retract_to_ppt(effect: HermitianOperator) -> HermitianOperator:
    """
    Moves an effect that violates 0 <= M, T_B(M) <= I by rounding toward I/2 until
    all four bounds hold.
    """
    values = np.concatenate([effect.eigenvalues(), partial_transpose(effect).eigenvalues()])
    violation = max(0.0, -values.min(), values.max() - 1.0)
    if violation == 0.0:
        return effect
    t = 2 * violation / (1 + 2 * violation)
    return effect * (1 - t) + identity(effect.dim, effect.shape) * (t / 2)


def hs_ppt(query: DivergenceQuery, tol: float | None = None) -> DivergenceResult:
    """
    Divergence under PPT measurements via the primal-dual SDP solve. The value is the
    primal optimum; the dual optimum and the normalized gap are reported with it.
    Objectives with a large norm are solved rescaled (see ``conditioning_scale``).

    Raises HsdSolverError when the solver does not certify optimality.
    """
    query = _with_class(query, MeasurementClass.ppt)
    if query.gamma < 1.0:
        return _reflect(query, lambda q: hs_ppt(q, tol))

    solution = solve(ppt_primal_problem(query), tol=tol)
    if not solution.optimal:
        raise HsdSolverError(
            f'PPT divergence solve ended with status {solution.status}',
            status=solution.status,
            meta_data={'gap': solution.gap, 'iterations': solution.iterations},
        )
    return DivergenceResult(
        value=_clamp(solution.primal_value),
        method=Method.sdp_primal_dual,
        measurement_class=MeasurementClass.ppt,
        gamma=query.gamma,
        witness=_retract_to_ppt(solution.primal_vars['M']),
        dual_value=solution.dual_value,
        gap=solution.gap,
        status=solution.status,
    )


def lo_star_family(dim_a: int, dim_b: int) -> list[HermitianOperator]:
    """
    {0, D, I - D} with D = sum_i |ii><ii|.
    """
    shape = BipartiteShape(dim_a, dim_b)
    diag = np.zeros(shape.side)
    diag[[i * dim_b + i for i in range(min(dim_a, dim_b))]] = 1.0
    d_op = HermitianOperator(np.diag(diag), shape)
    return [identity(shape.side, shape) * 0.0, d_op, identity(shape.side, shape) - d_op]


def best_product_postprocessing(query: DivergenceQuery) -> HermitianOperator:
    """
    Effect sum_{ij} [<ij|rho - gamma sigma|ij> > 0] |ij><ij|: the best 0/1
    post-processing of the local computational-basis measurements.
    """
    shape = _require_shape(query)
    diag = query.difference().matrix.diagonal().real
    return HermitianOperator(np.diag((diag > 0).astype(float)), shape)


def hs_lower_bound_from_measurements(
    query: DivergenceQuery, measurements: Sequence[HermitianOperator]
) -> DivergenceResult:
    """
    max over M in {0, I} + measurements + their complements of Tr[M (rho - gamma sigma)],
    minus (1 - gamma)_+. Every supplied M must satisfy 0 <= M <= I.
    """
    diff = query.difference()
    ident = identity(diff.dim, query.shape)
    best_value, best_effect = 0.0, ident * 0.0
    candidates = [ident]
    for i, effect in enumerate(measurements):
        if effect.dim != diff.dim:
            raise DimensionMismatchError(
                f'measurement {i} has side {effect.dim}, states have {diff.dim}',
                loc=('measurements', i),
            )
        require_measurement(effect, i)
        candidates += [effect, ident - effect]
    for effect in candidates:
        value = effect.expectation(diff)
        if value > best_value:
            best_value, best_effect = value, effect
    return DivergenceResult(
        value=_clamp(best_value - query.offset()),
        method=Method.lower_bound,
        measurement_class=query.measurement_class,
        gamma=query.gamma,
        witness=best_effect,
    )


def hs_lo_star_lower(query: DivergenceQuery) -> DivergenceResult:
    """
    Lower bound on the divergence under LO-star measurements from the default family
    and the best product-basis post-processing.
    """
    query = _with_class(query, MeasurementClass.lo_star_lower)
    if query.gamma < 1.0:
        return _reflect(query, hs_lo_star_lower)
    shape = _require_shape(query)
    family = lo_star_family(shape.dim_a, shape.dim_b)
    family.append(best_product_postprocessing(query))
    return hs_lower_bound_from_measurements(query, family)


def _with_class(query: DivergenceQuery, measurement_class: MeasurementClass) -> DivergenceQuery:
    if query.measurement_class is measurement_class:
        return query
    return replace(query, measurement_class=measurement_class)


def _reflect(query: DivergenceQuery, compute) -> DivergenceResult:
    """
    E_gamma(rho || sigma) = gamma E_{1/gamma}(sigma || rho) for 0 < gamma < 1. The
    witness of the reflected problem maps to its complement.
    """
    if query.gamma == 0.0:
        return _gamma_zero(query)
    inner = compute(query.reflected())
    gamma = query.gamma
    witness = None
    if inner.witness is not None:
        witness = identity(inner.witness.dim, inner.witness.shape) - inner.witness
    return replace(
        inner,
        value=_clamp(gamma * inner.value),
        gamma=gamma,
        witness=witness,
        dual_value=None if inner.dual_value is None else gamma * inner.dual_value,
        notes=(*inner.notes, f'reflected from gamma={1.0 / gamma:g} with states swapped'),
    )


def _gamma_zero(query: DivergenceQuery) -> DivergenceResult:
    lower = query.measurement_class is MeasurementClass.lo_star_lower
    method = Method.lower_bound if lower else Method.closed_form
    return DivergenceResult(
        value=0.0,
        method=method,
        measurement_class=query.measurement_class,
        gamma=0.0,
        witness=identity(query.rho.dim, query.shape),
        dual_value=0.0 if query.measurement_class is MeasurementClass.ppt else None,
        gap=0.0 if query.measurement_class is MeasurementClass.ppt else None,
        notes=('gamma=0: the identity effect is optimal',),
    )


def hs_measured(query: DivergenceQuery, tol: float | None = None) -> DivergenceResult:
    """
    Dispatches on the query's measurement class. For 0 < gamma < 1 the value is
    gamma * E_{1/gamma}(sigma || rho); for gamma = 0 it is 0 for every class.
    """
    match query.measurement_class:
        case MeasurementClass.all:
            compute = hs_all
        case MeasurementClass.ppt:
            return hs_ppt(query, tol)
        case MeasurementClass.lo_star_lower:
            return hs_lo_star_lower(query)
    if query.gamma < 1.0:
        return _reflect(query, compute)
    return compute(query)


def trace_distance(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    measurement_class: MeasurementClass = MeasurementClass.all,
    tol: float | None = None,
) -> float:
    """E_1 under ``measurement_class``."""
    return hs_measured(DivergenceQuery(rho, sigma, 1.0, measurement_class), tol).value


def _outcome_distributions(rho, sigma, povm) -> tuple[np.ndarray, np.ndarray]:
    if not povm:
        raise HsdInputError('POVM has no effects', loc=('povm',))
    total = np.zeros_like(rho.matrix)
    for i, effect in enumerate(povm):
        if effect.dim != rho.dim:
            raise DimensionMismatchError(
                f'effect {i} has side {effect.dim}, states have {rho.dim}', loc=('povm', i)
            )
        if not effect.is_psd(get_settings().MEASUREMENT_TOL):
            raise HsdInputError(f'effect {i} is not positive semidefinite', loc=('povm', i))
        total = total + effect.matrix
    residual = float(np.max(np.abs(total - np.eye(rho.dim))))
    if residual > get_settings().MEASUREMENT_TOL:
        raise HsdInputError(f'POVM effects sum to I only up to {residual:.3e}', loc=('povm',))
    p = np.array([effect.expectation(rho.op) for effect in povm])
    q = np.array([effect.expectation(sigma.op) for effect in povm])
    return p, q


def hs_povm(
    rho: DensityMatrix, sigma: DensityMatrix, povm: Sequence[HermitianOperator], gamma: float
) -> float:
    """
    Classical divergence between the outcome distributions of one POVM.
    """
    p, q = _outcome_distributions(rho, sigma, povm)
    return _classical_value(p, q, gamma)


def coarse_grained_effect(
    rho: DensityMatrix, sigma: DensityMatrix, povm: Sequence[HermitianOperator], gamma: float
) -> HermitianOperator:
    """
    Sum of the effects M_x with Tr[M_x (rho - gamma sigma)] >= 0. The binary
    measurement {M_+, I - M_+} reaches the POVM's classical divergence.
    """
    p, q = _outcome_distributions(rho, sigma, povm)
    effect = identity(rho.dim, rho.shape) * 0.0
    for m_x, keep in zip(povm, p - gamma * q >= 0, strict=True):
        if keep:
            effect = effect + m_x
    return effect.with_shape(rho.shape)


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise HsdInputError(f'{name} must lie in [0, 1], got {value}', loc=(name,))


def _check_analytic(p: float, q: float, gamma: float, d: int | None = None) -> None:
    _check_unit('p', p)
    _check_unit('q', q)
    if gamma < 1.0:
        raise HsdInputError(
            f'closed forms need gamma >= 1, got {gamma}; use hs_measured for gamma < 1',
            loc=('gamma',),
        )
    if d is not None and d < 2:
        raise HsdInputError(f'dimension must be at least 2, got {d}', loc=('d',))


def werner_hs_analytic(p: float, q: float, gamma: float) -> float:
    """
    E_gamma(omega^q || omega^p) under all measurements.
    """
    _check_analytic(p, q, gamma)
    return max(0.0, q - gamma * p, (1 - q) - gamma * (1 - p))


def werner_measured_analytic(p: float, q: float, d: int, gamma: float) -> float:
    """
    E_gamma(omega^q || omega^p) under PPT measurements (and every class between
    LO-star and PPT).
    """
    _check_analytic(p, q, gamma, d)
    t = 2 * (q - gamma * p) / (d + 1)
    return max(0.0, t, 1 - gamma - t)


def isotropic_hs_analytic(p: float, q: float, gamma: float) -> float:
    _check_analytic(p, q, gamma)
    return max(0.0, q - gamma * p, (1 - q) - gamma * (1 - p))


def isotropic_measured_analytic(p: float, q: float, d: int, gamma: float) -> float:
    """
    E_gamma(zeta^q || zeta^p) under PPT measurements.
    """
    _check_analytic(p, q, gamma, d)
    rest = 1 - q - gamma * (1 - p)
    return max(0.0, q - gamma * p + rest / (d + 1), d / (d + 1) * rest)


def is_class_member(effect: HermitianOperator, measurement_class: MeasurementClass) -> bool:
    """
    Membership test of a witness in ``measurement_class``; lower-bound witnesses are
    checked against the operator interval only.
    """
    if MeasurementClass(measurement_class) is MeasurementClass.ppt:
        return bool(is_ppt_measurement(effect))
    return bool(is_measurement(effect))
