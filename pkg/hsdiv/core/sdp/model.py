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
Modelling layer for semidefinite programs over complex Hermitian matrices.

A problem maximizes ``sum_i Tr[C_i X_i] + offset`` over Hermitian variables
``X_i`` subject to affine constraints ``K + sum_t L_t(X_t) >= 0`` or ``= 0``.
Each map ``L_t`` is a chain of SuperopTerm values applied in list order.

A problem built with ``objective_scale`` s stores its objective divided by s;
solvers report values and duals in the original units.
"""

import enum
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from hsdiv.core.errors import HsdInputError, SdpModelError
from hsdiv.core.hermlin import BipartiteShape, HermitianOperator


class SuperopKind(enum.StrEnum):
    identity = 'identity'
    scale = 'scale'
    partial_transpose_b = 'partial_transpose_B'
    partial_trace_b = 'partial_trace_B'
    tensor_identity_right = 'tensor_identity_right'
    negate = 'negate'


_DIMS_REQUIRED = {
    SuperopKind.partial_transpose_b,
    SuperopKind.partial_trace_b,
    SuperopKind.tensor_identity_right,
}


@dataclass(frozen=True, slots=True)
class SuperopTerm:
    """
    One linear Hermiticity-preserving map multiplied by a real coefficient.

    ``dims = (dim_a, dim_b)`` is required by the maps that act on a bipartite
    structure. partial_trace_B sends side ``dim_a * dim_b`` to ``dim_a`` and
    tensor_identity_right sends ``dim_a`` to ``dim_a * dim_b``; a trace is
    partial_trace_B with dims ``(1, n)``.
    """

    kind: SuperopKind
    coefficient: float = 1.0
    dims: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', SuperopKind(self.kind))
        object.__setattr__(self, 'coefficient', float(self.coefficient))
        if self.kind in _DIMS_REQUIRED:
            if self.dims is None:
                raise SdpModelError(f'{self.kind} needs factor dimensions')
            BipartiteShape(*self.dims)
            object.__setattr__(self, 'dims', (int(self.dims[0]), int(self.dims[1])))

    @classmethod
    def identity(cls) -> 'SuperopTerm':
        return cls(SuperopKind.identity)

    @classmethod
    def scale(cls, coefficient: float) -> 'SuperopTerm':
        return cls(SuperopKind.scale, coefficient)

    @classmethod
    def negate(cls) -> 'SuperopTerm':
        return cls(SuperopKind.negate)

    @classmethod
    def partial_transpose_b(cls, dims: tuple[int, int]) -> 'SuperopTerm':
        return cls(SuperopKind.partial_transpose_b, dims=dims)

    @classmethod
    def partial_trace_b(cls, dims: tuple[int, int]) -> 'SuperopTerm':
        return cls(SuperopKind.partial_trace_b, dims=dims)

    @classmethod
    def trace(cls, side: int) -> 'SuperopTerm':
        return cls(SuperopKind.partial_trace_b, dims=(1, side))

    @classmethod
    def tensor_identity_right(cls, dims: tuple[int, int]) -> 'SuperopTerm':
        return cls(SuperopKind.tensor_identity_right, dims=dims)

    def output_side(self, side: int) -> int:
        match self.kind:
            case SuperopKind.partial_transpose_b | SuperopKind.partial_trace_b:
                expected = self.dims[0] * self.dims[1]
            case SuperopKind.tensor_identity_right:
                expected = self.dims[0]
            case _:
                return side
        if side != expected:
            raise SdpModelError(f'{self.kind}{self.dims} cannot act on side {side}')
        match self.kind:
            case SuperopKind.partial_trace_b:
                return self.dims[0]
            case SuperopKind.tensor_identity_right:
                return self.dims[0] * self.dims[1]
        return side

    def apply(self, arr: np.ndarray) -> np.ndarray:
        """
        Applies the map to a stack of matrices with shape (..., n, n).
        """
        lead = arr.shape[:-2]
        match self.kind:
            case SuperopKind.identity | SuperopKind.scale:
                out = arr
            case SuperopKind.negate:
                out = -arr
            case SuperopKind.partial_transpose_b:
                d_a, d_b = self.dims
                out = arr.reshape(*lead, d_a, d_b, d_a, d_b).swapaxes(-3, -1)
                out = out.reshape(*lead, d_a * d_b, d_a * d_b)
            case SuperopKind.partial_trace_b:
                d_a, d_b = self.dims
                out = np.einsum('...ijkj->...ik', arr.reshape(*lead, d_a, d_b, d_a, d_b))
            case SuperopKind.tensor_identity_right:
                d_a, d_b = self.dims
                eye = np.eye(d_b)
                out = arr[..., :, None, :, None] * eye[:, None, :]
                out = out.reshape(*lead, d_a * d_b, d_a * d_b)
        return out * self.coefficient

    def adjoint(self) -> 'SuperopTerm':
        match self.kind:
            case SuperopKind.partial_trace_b:
                return SuperopTerm(SuperopKind.tensor_identity_right, self.coefficient, self.dims)
            case SuperopKind.tensor_identity_right:
                return SuperopTerm(SuperopKind.partial_trace_b, self.coefficient, self.dims)
        return self

    def __str__(self):
        name = str(self.kind)
        if self.dims is not None:
            name += f'{self.dims}'
        if self.coefficient != 1.0:
            name = f'{self.coefficient:g}*{name}'
        return name


Chain = tuple[SuperopTerm, ...]


def adjoint_of(chain: Sequence[SuperopTerm]) -> Chain:
    """
    Hilbert-Schmidt adjoint of a chain: the reversed chain of term adjoints.
    """
    return tuple(term.adjoint() for term in reversed(chain))


def chain_output_side(chain: Sequence[SuperopTerm], side: int) -> int:
    for term in chain:
        side = term.output_side(side)
    return side


def apply_chain(chain: Sequence[SuperopTerm], arr: np.ndarray) -> np.ndarray:
    out = np.asarray(arr, dtype=np.complex128)
    for term in chain:
        out = term.apply(out)
    return out


class Cone(enum.StrEnum):
    psd = 'psd'
    hermitian = 'hermitian'


MAX_OBJECTIVE_NORM = 1e4


class Relation(enum.StrEnum):
    psd = 'psd'
    zero = 'zero'


@dataclass(frozen=True, slots=True)
class Variable:
    id: str
    side: int
    cone: Cone = Cone.psd
    shape: BipartiteShape | None = None


@dataclass(frozen=True, slots=True)
class VariableTerm:
    variable_id: str
    chain: Chain = ()

    def __str__(self):
        if not self.chain:
            return self.variable_id
        return ' . '.join(str(t) for t in reversed(self.chain)) + f'({self.variable_id})'


@dataclass(frozen=True, slots=True)
class AffineExpression:
    terms: tuple[VariableTerm, ...]
    constant: HermitianOperator | None = None


@dataclass(frozen=True, slots=True)
class Constraint:
    name: str
    expression: AffineExpression
    relation: Relation = Relation.psd
    side: int = 0


@dataclass(frozen=True, slots=True)
class ObjectiveTerm:
    variable_id: str
    coefficient: HermitianOperator


@dataclass(frozen=True)
class SdpProblem:
    """
    Validated, immutable SDP in maximization form. Build it with ``build``.
    """

    name: str
    variables: tuple[Variable, ...]
    objective: tuple[ObjectiveTerm, ...]
    constraints: tuple[Constraint, ...]
    objective_offset: float = 0.0
    objective_scale: float = 1.0
    sense: str = 'maximize'
    _index: dict[str, Variable] = field(default_factory=dict, repr=False, compare=False)

    def variable(self, variable_id: str) -> Variable:
        return self._index[variable_id]

    def cone_constraints(self) -> tuple[Constraint, ...]:
        """
        Explicit constraints plus the implicit ``X >= 0`` of every PSD-cone variable.
        """
        implicit = tuple(
            Constraint(
                name=f'{var.id}>=0',
                expression=AffineExpression((VariableTerm(var.id),)),
                relation=Relation.psd,
                side=var.side,
            )
            for var in self.variables
            if var.cone is Cone.psd
        )
        return implicit + self.constraints


def term(variable_id: str, *chain: SuperopTerm) -> VariableTerm:
    return VariableTerm(variable_id, tuple(chain))


def expression(*terms: VariableTerm, constant=None) -> AffineExpression:
    if constant is not None and not isinstance(constant, HermitianOperator):
        constant = _hermitian_constant(constant, 'constraint constant')
    return AffineExpression(tuple(terms), constant)


def conditioning_scale(objective: HermitianOperator) -> float:
    """
    Divisor that brings the spectral norm of ``objective`` down to
    ``MAX_OBJECTIVE_NORM``; 1 when it is already within it.
    """
    norm = float(np.abs(objective.eigenvalues()).max(initial=0.0))
    return max(1.0, norm / MAX_OBJECTIVE_NORM)


def _hermitian_constant(data, what: str) -> HermitianOperator:
    try:
        return HermitianOperator(data)
    except HsdInputError as e:
        raise SdpModelError(f'{what}: {e.detail}') from e


def build(
    *,
    name: str,
    variables: Iterable[Variable],
    objective: Iterable[tuple[str, object]],
    constraints: Iterable[tuple[str, AffineExpression, Relation | str]],
    objective_offset: float = 0.0,
    objective_scale: float = 1.0,
) -> SdpProblem:
    """
    Validates a problem description and freezes it into an SdpProblem.

    Args:
        name: label used in logs and dumps
        variables: declared variables with their sides and cones
        objective: pairs (variable_id, C) contributing Tr[C X]
        constraints: triples (name, expression, relation)
        objective_offset: constant added to the objective
        objective_scale: divisor already applied to the objective blocks and offset

    Raises SdpModelError on undeclared variables, non-Hermitian constants or a
    chain whose dimensions do not line up.
    """
    if not (math.isfinite(objective_scale) and objective_scale > 0):
        raise SdpModelError(f'objective scale must be positive, got {objective_scale!r}')
    variables = tuple(variables)
    index = {}
    for var in variables:
        if var.id in index:
            raise SdpModelError(f'variable {var.id!r} declared twice')
        if var.side < 1:
            raise SdpModelError(f'variable {var.id!r} has non-positive side {var.side}')
        index[var.id] = var

    def lookup(variable_id: str, where: str) -> Variable:
        if variable_id not in index:
            raise SdpModelError(f'{where} references undeclared variable {variable_id!r}')
        return index[variable_id]

    objective_terms = []
    for variable_id, coefficient in objective:
        var = lookup(variable_id, 'objective')
        if not isinstance(coefficient, HermitianOperator):
            coefficient = _hermitian_constant(coefficient, f'objective block of {variable_id!r}')
        if coefficient.dim != var.side:
            raise SdpModelError(
                f'objective block of {variable_id!r} has side {coefficient.dim}, '
                f'variable has side {var.side}'
            )
        objective_terms.append(ObjectiveTerm(variable_id, coefficient))

    checked = []
    names = set()
    for cname, expr, relation in constraints:
        if cname in names:
            raise SdpModelError(f'constraint {cname!r} declared twice')
        names.add(cname)
        if not expr.terms:
            raise SdpModelError(f'constraint {cname!r} has no variable terms')
        sides = set()
        for vt in expr.terms:
            var = lookup(vt.variable_id, f'constraint {cname!r}')
            sides.add(chain_output_side(vt.chain, var.side))
        if expr.constant is not None:
            sides.add(expr.constant.dim)
        if len(sides) != 1:
            raise SdpModelError(f'constraint {cname!r} mixes operator sides {sorted(sides)}')
        checked.append(Constraint(cname, expr, Relation(relation), sides.pop()))

    return SdpProblem(
        name=name,
        variables=variables,
        objective=tuple(objective_terms),
        constraints=tuple(checked),
        objective_offset=float(objective_offset),
        objective_scale=float(objective_scale),
        _index=index,
    )
