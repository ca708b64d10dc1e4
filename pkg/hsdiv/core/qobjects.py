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
States, channels and measurements built on hermlin.

Channels are carried as Choi operators
``Choi = sum_ij |i><j| (x) N(|i><j|)`` with shape (input_dim, output_dim);
Kraus input is converted once by ``kraus_to_choi``.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from pydantic import BaseModel, ConfigDict, Field

import numpy as np

from hsdiv.core.conf import get_settings
from hsdiv.core.errors import (
    DimensionMismatchError,
    InvalidChoiError,
    InvalidMeasurementError,
    InvalidStateError,
)
from hsdiv.core.hermlin import (
    BipartiteShape,
    HermitianOperator,
    as_complex_matrix,
    identity,
    max_entangled,
    partial_trace,
    partial_transpose,
    sym_asym_projectors,
)


logger = logging.getLogger(__name__)


class DensityMatrix:
    """
    Positive semidefinite unit-trace Hermitian operator.

    Accepts a HermitianOperator or anything ``HermitianOperator`` accepts. The
    minimum eigenvalue must be at least ``-PSD_TOL`` and the trace within
    ``TRACE_TOL`` of one.
    """

    __slots__ = ('op',)

    def __init__(self, op, shape=None, *, validate: bool = True):
        if not isinstance(op, HermitianOperator):
            op = HermitianOperator(op, shape)
        elif shape is not None:
            op = op.with_shape(shape)
        if validate:
            _validate_state(op)
        self.op = op

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def shape(self) -> BipartiteShape | None:
        return self.op.shape

    @property
    def dim(self) -> int:
        return self.op.dim

    def with_shape(self, shape) -> 'DensityMatrix':
        return DensityMatrix(self.op.with_shape(shape), validate=False)

    def diagonal(self) -> np.ndarray:
        return self.op.matrix.diagonal().real.copy()

    def __repr__(self):
        shape = self.shape.as_tuple() if self.shape else None
        return f'DensityMatrix(dim={self.dim}, shape={shape})'


def _validate_state(op: HermitianOperator) -> None:
    settings = get_settings()
    min_eig = op.min_eig()
    if min_eig < -settings.PSD_TOL:
        raise InvalidStateError(
            f'state has negative eigenvalue {min_eig:.3e}', meta_data={'min_eig': min_eig}
        )
    trace = op.trace()
    if abs(trace - 1.0) > settings.TRACE_TOL:
        raise InvalidStateError(
            f'state has trace {trace!r}, expected 1', meta_data={'trace': trace}
        )


class ChoiOperator:
    """
    Choi operator of a channel from a ``input_dim``-dimensional system to an
    ``output_dim``-dimensional one. Complete positivity (PSD within ``PSD_TOL``) and
    trace preservation (``Tr_B[Choi] = I`` within ``TP_TOL`` max-abs) are checked
    on construction.
    """

    __slots__ = ('op', 'input_dim', 'output_dim')

    def __init__(self, op, input_dim: int, output_dim: int, *, validate: bool = True):
        input_dim, output_dim = int(input_dim), int(output_dim)
        shape = BipartiteShape(input_dim, output_dim)
        if not isinstance(op, HermitianOperator):
            op = HermitianOperator(op, shape)
        elif op.dim != shape.side:
            raise DimensionMismatchError(
                f'Choi operator of side {op.dim} cannot map dimension {input_dim} to {output_dim}'
            )
        else:
            op = op.with_shape(shape)
        self.op = op
        self.input_dim = input_dim
        self.output_dim = output_dim
        if validate:
            self._validate()

    def _validate(self) -> None:
        settings = get_settings()
        min_eig = self.op.min_eig()
        if min_eig < -settings.PSD_TOL:
            raise InvalidChoiError(
                f'Choi operator is not positive (min eigenvalue {min_eig:.3e}): '
                f'channel is not completely positive',
                meta_data={'min_eig': min_eig},
            )
        residual = self.trace_preservation_residual()
        if residual > settings.TP_TOL:
            raise InvalidChoiError(
                f'trace-preservation residual max|Tr_B[Choi] - I| = {residual:.3e}',
                meta_data={'trace_preservation_residual': residual},
            )

    def trace_preservation_residual(self) -> float:
        reduced = partial_trace(self.op, 'B').matrix
        return float(np.max(np.abs(reduced - np.eye(self.input_dim))))

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def shape(self) -> BipartiteShape:
        return self.op.shape

    def blocks(self) -> np.ndarray:
        """Choi entries indexed as [i, k, j, l] = <i k| Choi |j l>."""
        d_in, d_out = self.input_dim, self.output_dim
        return self.op.matrix.reshape(d_in, d_out, d_in, d_out)

    def __repr__(self):
        return f'ChoiOperator(input_dim={self.input_dim}, output_dim={self.output_dim})'


class WernerParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: float = Field(ge=0.0, le=1.0, title='Weight of the symmetric part')
    d: int = Field(ge=2, title='Local dimension')


class IsotropicParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: float = Field(ge=0.0, le=1.0, title='Weight of the maximally entangled part')
    d: int = Field(ge=2, title='Local dimension')


def werner_state(params: WernerParams) -> DensityMatrix:
    """
    p * (I + F)/(d(d+1)) + (1 - p) * (I - F)/(d(d-1)).
    """
    d = params.d
    sym, asym = sym_asym_projectors(d)
    theta = sym * (2.0 / (d * (d + 1)))
    theta_perp = asym * (2.0 / (d * (d - 1)))
    return DensityMatrix(theta * params.p + theta_perp * (1.0 - params.p))


def isotropic_state(params: IsotropicParams) -> DensityMatrix:
    """
    p * Phi + (1 - p) * (I - Phi)/(d^2 - 1).
    """
    d = params.d
    phi = max_entangled(d)
    phi_perp = (identity(d * d, phi.shape) - phi) / (d * d - 1)
    return DensityMatrix(phi * params.p + phi_perp * (1.0 - params.p))


def depolarizing_choi(p: float, d: int) -> ChoiOperator:
    """
    Choi operator (1 - p)|Gamma><Gamma| + (p/d) I of the channel that replaces
    its input with I/d with probability p.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidChoiError(f'depolarizing parameter must lie in [0, 1], got {p}', loc=('p',))
    if d < 1:
        raise DimensionMismatchError(f'dimension must be positive, got {d}', loc=('d',))
    gamma = max_entangled(d, normalized=False)
    op = gamma * (1.0 - p) + identity(d * d, gamma.shape) * (p / d)
    return ChoiOperator(op, d, d)


def identity_channel(d: int) -> ChoiOperator:
    return ChoiOperator(max_entangled(d, normalized=False), d, d)


def kraus_to_choi(kraus: Sequence, dim_in: int, dim_out: int) -> ChoiOperator:
    """
    Choi operator sum_k (I (x) K_k)|Gamma><Gamma|(I (x) K_k)^dagger of the channel
    with Kraus operators K_k of shape (dim_out, dim_in).
    """
    if not kraus:
        raise InvalidChoiError('at least one Kraus operator is required', loc=('kraus',))
    choi = np.zeros((dim_in * dim_out, dim_in * dim_out), dtype=np.complex128)
    for i, k_op in enumerate(kraus):
        k_op = as_complex_matrix(k_op)
        if k_op.shape != (dim_out, dim_in):
            raise DimensionMismatchError(
                f'Kraus operator {i} has shape {k_op.shape}, expected ({dim_out}, {dim_in})',
                loc=('kraus', i),
            )
        vec = k_op.T.reshape(-1)
        choi += np.outer(vec, vec.conj())
    return ChoiOperator(choi, dim_in, dim_out)


def unitary_channel(unitary) -> ChoiOperator:
    unitary = as_complex_matrix(unitary)
    d = unitary.shape[0]
    return kraus_to_choi([unitary], unitary.shape[1], d)


def choi_state(choi: ChoiOperator) -> DensityMatrix:
    """
    Normalized Choi state Choi / input_dim = (id (x) N)(Phi), shape (input_dim, output_dim).
    """
    return DensityMatrix(choi.op / choi.input_dim, validate=False)


def apply_channel(choi: ChoiOperator, rho: DensityMatrix) -> DensityMatrix:
    """
    N(rho) = Tr_R[(rho^T (x) I) Choi].
    """
    if rho.dim != choi.input_dim:
        raise DimensionMismatchError(
            f'channel expects input dimension {choi.input_dim}, state has {rho.dim}'
        )
    out = np.einsum('ij,ikjl->kl', rho.matrix, choi.blocks())
    return DensityMatrix(HermitianOperator._wrap(out), validate=False)


def apply_channel_to_bipartite(choi: ChoiOperator, rho_ra: DensityMatrix) -> DensityMatrix:
    """
    (id_R (x) N)(rho_RA): the channel acts on the second factor only.
    """
    shape = rho_ra.op.require_shape()
    if shape.dim_b != choi.input_dim:
        raise DimensionMismatchError(
            f'channel expects input dimension {choi.input_dim}, second factor has {shape.dim_b}'
        )
    out = _apply_on_second_factor(rho_ra.matrix, shape.dim_a, choi)
    out_shape = BipartiteShape(shape.dim_a, choi.output_dim)
    return DensityMatrix(HermitianOperator._wrap(out, out_shape), validate=False)


def _apply_on_second_factor(matrix: np.ndarray, dim_r: int, choi: ChoiOperator) -> np.ndarray:
    d_in, d_out = choi.input_dim, choi.output_dim
    blocks = matrix.reshape(dim_r, d_in, dim_r, d_in)
    out = np.einsum('iajc,akcl->ikjl', blocks, choi.blocks())
    return out.reshape(dim_r * d_out, dim_r * d_out)


def apply_channel_adjoint(choi: ChoiOperator, effect: HermitianOperator) -> HermitianOperator:
    """
    Heisenberg-picture map N^dagger with Tr[M N(rho)] = Tr[N^dagger(M) rho].
    """
    if effect.dim != choi.output_dim:
        raise DimensionMismatchError(
            f'channel output dimension is {choi.output_dim}, operator has {effect.dim}'
        )
    out = np.einsum('lk,ikjl->ji', effect.matrix, choi.blocks())
    return HermitianOperator._wrap(out)


def compose_channels(first: ChoiOperator, second: ChoiOperator) -> ChoiOperator:
    """
    Choi operator of ``second`` applied after ``first``.
    """
    if first.output_dim != second.input_dim:
        raise DimensionMismatchError(
            f'cannot compose: first outputs dimension {first.output_dim}, '
            f'second expects {second.input_dim}'
        )
    out = _apply_on_second_factor(first.matrix, first.input_dim, second)
    return ChoiOperator(HermitianOperator._wrap(out), first.input_dim, second.output_dim)


@dataclass(frozen=True)
class MeasurementReport:
    """
    Result of an operator-interval membership test. Truthy when no bound is violated.
    """

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _interval_violations(op: HermitianOperator, name: str, tol: float) -> list[str]:
    values = op.eigenvalues()
    found = []
    if values[-1] < -tol:
        found.append(f'min eig({name}) = {values[-1]:.3e} < 0')
    if values[0] > 1.0 + tol:
        found.append(f'max eig({name}) = {values[0]:.6g} > 1')
    return found


def is_measurement(effect: HermitianOperator, tol: float | None = None) -> MeasurementReport:
    """
    Checks 0 <= M <= I.
    """
    tol = get_settings().MEASUREMENT_TOL if tol is None else tol
    return MeasurementReport(_interval_violations(effect, 'M', tol))


def is_ppt_measurement(effect: HermitianOperator, tol: float | None = None) -> MeasurementReport:
    """
    Checks 0 <= M <= I and 0 <= T_B(M) <= I. ``effect`` needs a bipartite shape.
    """
    tol = get_settings().MEASUREMENT_TOL if tol is None else tol
    violations = _interval_violations(effect, 'M', tol)
    violations += _interval_violations(partial_transpose(effect, 'B'), 'T_B(M)', tol)
    return MeasurementReport(violations)


def require_measurement(effect: HermitianOperator, index: int | None = None) -> None:
    report = is_measurement(effect)
    if not report:
        raise InvalidMeasurementError(
            '; '.join(report.violations),
            loc=('measurements', index) if index is not None else None,
        )
