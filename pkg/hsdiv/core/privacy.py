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
Privacy audits under restricted quantum local differential privacy.

A mechanism A is (epsilon, delta)-QLDP under a measurement class on a state set
S iff E_{e^epsilon}^class(A(rho) || A(sigma)) <= delta for all rho, sigma in S;
a superchannel is audited the same way on the set of channels it produces.
Audits cost |S|^2 divergence evaluations, each an SDP for the ppt class, so
they grow exponentially with the number of qubits.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

import numpy as np

from hsdiv.core.chandiv import ChannelPair, channel_hs
from hsdiv.core.divergence import DivergenceQuery, hs_measured
from hsdiv.core.errors import DimensionMismatchError, HsdError, HsdInputError, MissingShapeError
from hsdiv.core.hermlin import BipartiteShape
from hsdiv.core.qobjects import (
    ChoiOperator,
    DensityMatrix,
    WernerParams,
    apply_channel,
    werner_state,
)
from hsdiv.core.schemas.enums import MeasurementClass
from hsdiv.core.utils.pool import run_parallel


logger = logging.getLogger(__name__)


class PrivacyParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(ge=0.0)
    delta: float = Field(ge=0.0, le=1.0)


@dataclass(frozen=True)
class StateSet:
    label: str
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, 'states', tuple(self.states))
        if not self.states:
            raise HsdInputError(f'state set {self.label!r} is empty', loc=('states',))
        first = self.states[0]
        for i, state in enumerate(self.states[1:], start=1):
            if state.dim != first.dim or state.shape != first.shape:
                raise DimensionMismatchError(
                    f'state {i} of set {self.label!r} does not match the dimensions of state 0',
                    loc=('states', i),
                )

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @property
    def shape(self) -> BipartiteShape | None:
        return self.states[0].shape

    def __len__(self):
        return len(self.states)


@dataclass(frozen=True)
class ChannelSet:
    label: str
    channels: tuple[ChoiOperator, ...]

    def __post_init__(self):
        object.__setattr__(self, 'channels', tuple(self.channels))
        if not self.channels:
            raise HsdInputError(f'channel set {self.label!r} is empty', loc=('channels',))
        first = self.channels[0]
        for i, chan in enumerate(self.channels[1:], start=1):
            if (chan.input_dim, chan.output_dim) != (first.input_dim, first.output_dim):
                raise DimensionMismatchError(
                    f'channel {i} of set {self.label!r} does not match the dimensions of channel 0',
                    loc=('channels', i),
                )

    def __len__(self):
        return len(self.channels)


@dataclass(frozen=True)
class PairFailure:
    i: int
    j: int
    code: str
    detail: str


@dataclass(frozen=True)
class AuditReport:
    """
    Pairwise divergences ``pairwise[i, j] = E(A(rho_i) || A(rho_j))`` (NaN where the
    evaluation failed) and their maximum ``achieved_delta``. ``witness_pair`` is the
    lowest-index pair reaching the maximum.
    """

    epsilon: float
    measurement_class: MeasurementClass
    achieved_delta: float
    witness_pair: tuple[int, int] | None
    pairwise: np.ndarray
    per_pair_gaps: np.ndarray
    failures: tuple[PairFailure, ...] = field(default_factory=tuple)

    @property
    def complete(self) -> bool:
        return not self.failures

    @property
    def contraction_bound(self) -> float:
        return contraction_bound(self.epsilon, min(1.0, self.achieved_delta))

    def passes(self, delta: float) -> bool:
        """
        Whether the audited mechanism is (epsilon, delta)-QLDP. Incomplete audits
        never pass.
        """
        return self.complete and self.achieved_delta <= delta


PairResult = tuple[float, float | None]


def _reduce(
    n: int,
    pairs: list[tuple[int, int]],
    outcomes: list[PairResult | PairFailure],
    epsilon: float,
    measurement_class: MeasurementClass,
) -> AuditReport:
    pairwise = np.zeros((n, n))
    gaps = np.full((n, n), np.nan)
    failures = []
    for (i, j), outcome in zip(pairs, outcomes, strict=True):
        if isinstance(outcome, PairFailure):
            pairwise[i, j] = np.nan
            failures.append(outcome)
        else:
            pairwise[i, j] = outcome[0]
            if outcome[1] is not None:
                gaps[i, j] = outcome[1]

    achieved, witness = 0.0, None
    for i, j in pairs:
        value = pairwise[i, j]
        if not math.isnan(value) and (witness is None or value > achieved):
            achieved, witness = float(value), (i, j)
    if failures:
        logger.warning(f'audit incomplete: {len(failures)} of {len(pairs)} pairs failed')
    return AuditReport(
        epsilon=epsilon,
        measurement_class=measurement_class,
        achieved_delta=achieved,
        witness_pair=witness,
        pairwise=pairwise,
        per_pair_gaps=gaps,
        failures=tuple(failures),
    )


def _ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _guarded(evaluate: Callable[[int, int], PairResult]):
    def run(pair: tuple[int, int]) -> PairResult | PairFailure:
        i, j = pair
        try:
            return evaluate(i, j)
        except HsdError as e:
            logger.warning(f'audit pair ({i}, {j}) failed: {e.detail}')
            return PairFailure(i, j, e.code, e.detail)

    return run


def _check_audit_args(epsilon: float, measurement_class) -> MeasurementClass:
    if not epsilon >= 0.0 or math.isinf(epsilon):
        raise HsdInputError(
            f'epsilon must be finite and non-negative, got {epsilon}', loc=('epsilon',)
        )
    measurement_class = MeasurementClass(measurement_class)
    if measurement_class is MeasurementClass.lo_star_lower:
        raise HsdInputError('audits support classes all and ppt', loc=('class',))
    return measurement_class


def audit_states(
    mechanism: ChoiOperator,
    states: StateSet,
    epsilon: float,
    measurement_class: MeasurementClass = MeasurementClass.all,
    *,
    output_shape: BipartiteShape | tuple[int, int] | None = None,
    tol: float | None = None,
    jobs: int | None = None,
) -> AuditReport:
    """
    Audits ``mechanism`` on every ordered pair of ``states`` at gamma = e^epsilon.

    For the ppt class the outputs need a bipartite shape: ``output_shape`` or,
    when the mechanism preserves the dimension, the shape of the input states.
    Failing pairs are recorded and leave the report incomplete.
    """
    measurement_class = _check_audit_args(epsilon, measurement_class)
    if mechanism.input_dim != states.dim:
        raise DimensionMismatchError(
            f'mechanism expects dimension {mechanism.input_dim}, states have {states.dim}'
        )
    if output_shape is None and mechanism.output_dim == states.dim:
        output_shape = states.shape
    if measurement_class is MeasurementClass.ppt and output_shape is None:
        raise MissingShapeError('ppt audits need a bipartite shape on the mechanism outputs')

    outputs = [apply_channel(mechanism, rho) for rho in states.states]
    if output_shape is not None:
        outputs = [out.with_shape(output_shape) for out in outputs]
    gamma = math.exp(epsilon)

    def evaluate(i: int, j: int) -> PairResult:
        result = hs_measured(DivergenceQuery(outputs[i], outputs[j], gamma, measurement_class), tol)
        return result.value, result.gap

    pairs = _ordered_pairs(len(states))
    outcomes = run_parallel(_guarded(evaluate), pairs, jobs)
    return _reduce(len(states), pairs, outcomes, epsilon, measurement_class)


def audit_channels(
    channels: ChannelSet,
    epsilon: float,
    measurement_class: MeasurementClass = MeasurementClass.all,
    *,
    tol: float | None = None,
    jobs: int | None = None,
) -> AuditReport:
    """
    Audits a superchannel through the set of channels it outputs: every ordered
    pair of ``channels`` is compared with the channel divergence at gamma = e^epsilon.
    """
    measurement_class = _check_audit_args(epsilon, measurement_class)
    gamma = math.exp(epsilon)
    chans = channels.channels

    def evaluate(i: int, j: int) -> PairResult:
        result = channel_hs(ChannelPair(chans[i], chans[j], gamma), measurement_class, tol)
        return result.value, result.gap

    pairs = _ordered_pairs(len(channels))
    outcomes = run_parallel(_guarded(evaluate), pairs, jobs)
    return _reduce(len(channels), pairs, outcomes, epsilon, measurement_class)


def audit_sweep(
    epsilons: Sequence[float],
    measurement_class: MeasurementClass = MeasurementClass.all,
    *,
    mechanism: ChoiOperator | None = None,
    states: StateSet | None = None,
    channels: ChannelSet | None = None,
    output_shape: BipartiteShape | tuple[int, int] | None = None,
    tol: float | None = None,
    jobs: int | None = None,
) -> list[AuditReport]:
    """
    One audit per epsilon, either of ``mechanism`` on ``states`` or of ``channels``.
    """
    if (channels is None) == (states is None):
        raise HsdInputError('pass either a state set with a mechanism or a channel set')
    if states is not None and mechanism is None:
        raise HsdInputError('a state-set audit needs a mechanism', loc=('mechanism',))
    reports = []
    for epsilon in epsilons:
        if channels is not None:
            report = audit_channels(channels, epsilon, measurement_class, tol=tol, jobs=jobs)
        else:
            report = audit_states(
                mechanism, states, epsilon, measurement_class,
                output_shape=output_shape, tol=tol, jobs=jobs,
            )
        reports.append(report)
    return reports


def contraction_bound(epsilon: float, delta: float) -> float:
    """
    Trace-distance contraction coefficient (e^eps - 1 + 2 delta)/(e^eps + 1) of an
    (eps, delta)-QLDP mechanism.
    """
    PrivacyParams(epsilon=epsilon, delta=delta)
    return (math.exp(epsilon) - 1 + 2 * delta) / (math.exp(epsilon) + 1)


def verify_contraction(
    report: AuditReport, trace_distances: np.ndarray, slack: float = 1e-6
) -> list[tuple[int, int]]:
    """
    Pairs whose output trace distance exceeds the contraction bound of ``report``.
    """
    bound = report.contraction_bound
    trace_distances = np.asarray(trace_distances, dtype=float)
    return [
        (int(i), int(j))
        for i, j in zip(*np.nonzero(trace_distances > bound + slack), strict=True)
    ]


def werner_qldp_delta(d: int) -> float:
    """
    delta = 2/(d+1) reached by the identity mechanism on Werner states under PPT
    measurements, for every epsilon.
    """
    if d < 2:
        raise HsdInputError(f'dimension must be at least 2, got {d}', loc=('d',))
    return 2.0 / (d + 1)


def werner_state_set(d: int, grid: Sequence[float]) -> StateSet:
    return StateSet(
        label=f'werner(d={d})', states=tuple(werner_state(WernerParams(p=p, d=d)) for p in grid)
    )
