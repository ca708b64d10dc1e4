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
Primal-dual interior-point solve of an SdpProblem.

Every Hermitian variable of side n is expanded in the orthonormal basis from
``hermitian_basis(n)`` (n*n real parameters) and every PSD constraint is passed
to ``cvxopt.solvers.sdp`` through the real embedding. cvxopt runs a
Nesterov-Todd scaled path-following method on a self-dual embedding, which
also supplies certificates of infeasibility. Equality constraints are reduced to
full row rank before the call.
"""

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from cvxopt import matrix, solvers
from scipy import linalg

from hsdiv.core.conf import get_settings
from hsdiv.core.errors import HsdInputError, SdpModelError
from hsdiv.core.hermlin import (
    HermitianOperator,
    hermitian_basis,
    real_embedding_adjoint,
    real_embedding_batch,
)
from hsdiv.core.sdp.model import Relation, SdpProblem, apply_chain


logger = logging.getLogger(__name__)

TOL_RANGE = (1e-10, 1e-4)


class SdpStatus(enum.StrEnum):
    optimal = 'optimal'
    infeasible = 'infeasible'
    numerical_limit = 'numerical_limit'


@dataclass(frozen=True)
class SdpSolution:
    """
    Solver output. ``primal_vars`` maps variable ids to the optimal point,
    ``dual_vars`` maps constraint names (implicit ``<id> >= 0`` cones included)
    to the complex dual variable of that constraint.
    """

    status: SdpStatus
    primal_value: float
    dual_value: float
    gap: float
    iterations: int
    primal_vars: dict[str, HermitianOperator] = field(default_factory=dict)
    dual_vars: dict[str, HermitianOperator] = field(default_factory=dict)
    primal_residual: float | None = None
    dual_residual: float | None = None
    solver_status: str = ''

    @property
    def optimal(self) -> bool:
        return self.status is SdpStatus.optimal


def normalized_gap(primal: float, dual: float) -> float:
    return abs(primal - dual) / (1.0 + abs(primal) + abs(dual))


@dataclass
class _Compiled:
    c: np.ndarray
    gs: list[np.ndarray]
    hs: list[np.ndarray]
    a: np.ndarray | None
    b: np.ndarray | None
    # U_r of the rank reduction, used to map equality multipliers back
    a_basis: np.ndarray | None
    offsets: dict[str, int]
    psd_names: list[str]
    eq_rows: list[tuple[str, int, int]]
    inconsistent: bool = False


def _coordinates(basis: np.ndarray, arr: np.ndarray) -> np.ndarray:
    # Re Tr[B_k X] for each basis element and each matrix of a stack
    return np.einsum('kij,...ji->...k', basis, arr).real


def _compile(problem: SdpProblem) -> _Compiled:
    offsets, n_params = {}, 0
    for var in problem.variables:
        offsets[var.id] = n_params
        n_params += var.side * var.side

    c = np.zeros(n_params)
    for obj in problem.objective:
        var = problem.variable(obj.variable_id)
        off = offsets[var.id]
        coords = _coordinates(hermitian_basis(var.side), obj.coefficient.matrix)
        c[off : off + var.side**2] += coords

    gs, hs, psd_names = [], [], []
    eq_blocks, eq_rhs, eq_rows = [], [], []
    for con in problem.cone_constraints():
        m = con.side
        if con.relation is Relation.psd:
            g = np.zeros((4 * m * m, n_params))
        else:
            g = np.zeros((m * m, n_params))
            basis_m = hermitian_basis(m)
        for vt in con.expression.terms:
            var = problem.variable(vt.variable_id)
            off = offsets[var.id]
            images = apply_chain(vt.chain, hermitian_basis(var.side))
            if con.relation is Relation.psd:
                block = real_embedding_batch(images).reshape(var.side**2, -1).T
                g[:, off : off + var.side**2] -= block
            else:
                g[:, off : off + var.side**2] += _coordinates(basis_m, images).T
        constant = con.expression.constant
        if con.relation is Relation.psd:
            h = np.zeros((2 * m, 2 * m))
            if constant is not None:
                h = real_embedding_batch(constant.matrix)
            gs.append(g)
            hs.append(h)
            psd_names.append(con.name)
        else:
            rhs = np.zeros(m * m)
            if constant is not None:
                rhs = -_coordinates(basis_m, constant.matrix)
            start = sum(block.shape[0] for block in eq_blocks)
            eq_rows.append((con.name, start, m))
            eq_blocks.append(g)
            eq_rhs.append(rhs)

    if not gs:
        raise SdpModelError(f'problem {problem.name!r} has no conic constraint')

    compiled = _Compiled(
        c=c, gs=gs, hs=hs, a=None, b=None, a_basis=None,
        offsets=offsets, psd_names=psd_names, eq_rows=eq_rows,
    )
    if eq_blocks:
        a_full = np.vstack(eq_blocks)
        b_full = np.concatenate(eq_rhs)
        u, s, _ = linalg.svd(a_full, full_matrices=False)
        rank = int(np.sum(s > max(a_full.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)))
        u_r = u[:, :rank]
        residual = b_full - u_r @ (u_r.T @ b_full)
        if np.linalg.norm(residual) > 1e-9 * (1.0 + np.linalg.norm(b_full)):
            compiled.inconsistent = True
        if rank:
            compiled.a = u_r.T @ a_full
            compiled.b = u_r.T @ b_full
            compiled.a_basis = u_r
    return compiled


def _check_tol(tol: float) -> float:
    tol = float(tol)
    lo, hi = TOL_RANGE
    if not lo <= tol <= hi:
        raise HsdInputError(f'tolerance {tol:g} outside [{lo:g}, {hi:g}]', loc=('tol',))
    return tol


def _as_float(value) -> float:
    return math.nan if value is None else float(value)


def solve(
    problem: SdpProblem, tol: float | None = None, max_iters: int | None = None
) -> SdpSolution:
    """
    Solves ``problem`` and returns the primal and dual values with their
    normalized gap ``|p - d| / (1 + |p| + |d|)``.

    A solution is reported optimal only when cvxopt reached (or stopped next
    to) an optimal pair with primal residual, dual residual and normalized gap
    all within ``tol``. Infeasibility certificates map to ``infeasible``;
    everything else, including the iteration limit, to ``numerical_limit``.

    For a problem with ``objective_scale`` s the values and duals are multiplied
    back by s and cvxopt's absolute gap tolerance is ``tol / s``, so the gap
    check applies to the unscaled values.
    """
    settings = get_settings()
    tol = _check_tol(settings.TOL if tol is None else tol)
    max_iters = settings.MAX_ITERS if max_iters is None else int(max_iters)

    scale = problem.objective_scale
    compiled = _compile(problem)
    if compiled.inconsistent:
        logger.warning(f'sdp {problem.name}: equality constraints are inconsistent')
        return SdpSolution(
            status=SdpStatus.infeasible, primal_value=math.nan, dual_value=math.nan,
            gap=math.nan, iterations=0, solver_status='inconsistent equalities',
        )

    options = {
        'show_progress': False,
        'abstol': tol / scale,
        'reltol': tol,
        'feastol': tol,
        'maxiters': max_iters,
    }
    kwargs = {
        'Gs': [matrix(np.ascontiguousarray(g)) for g in compiled.gs],
        'hs': [matrix(np.ascontiguousarray(h)) for h in compiled.hs],
    }
    if compiled.a is not None:
        kwargs['A'] = matrix(np.ascontiguousarray(compiled.a))
        kwargs['b'] = matrix(np.ascontiguousarray(compiled.b))

    try:
        sol = solvers.sdp(matrix(-compiled.c), options=options, **kwargs)
    except (ValueError, ArithmeticError) as e:
        logger.warning(f'sdp {problem.name}: solver aborted: {e}')
        return SdpSolution(
            status=SdpStatus.numerical_limit, primal_value=math.nan, dual_value=math.nan,
            gap=math.nan, iterations=0, solver_status=str(e),
        )

    raw_status = sol['status']
    iterations = int(sol.get('iterations') or 0)
    if raw_status in ('primal infeasible', 'dual infeasible'):
        logger.warning(f'sdp {problem.name}: {raw_status} after {iterations} iterations')
        return SdpSolution(
            status=SdpStatus.infeasible, primal_value=math.nan, dual_value=math.nan,
            gap=math.nan, iterations=iterations, solver_status=raw_status,
        )

    offset = problem.objective_offset
    primal_value = scale * (-_as_float(sol['primal objective']) + offset)
    dual_value = scale * (-_as_float(sol['dual objective']) + offset)
    gap = normalized_gap(primal_value, dual_value)
    primal_residual = _as_float(sol.get('primal infeasibility'))
    dual_residual = _as_float(sol.get('dual infeasibility'))

    converged = (
        gap <= tol
        and primal_residual <= tol
        and dual_residual <= tol
    )
    status = SdpStatus.optimal if converged else SdpStatus.numerical_limit
    if status is SdpStatus.optimal and raw_status != 'optimal':
        logger.debug(f'sdp {problem.name}: accepted {raw_status!r} point within tolerance')
    elif status is not SdpStatus.optimal:
        logger.warning(
            f'sdp {problem.name}: {raw_status} after {iterations} iterations, gap={gap:.2e}, '
            f'residuals=({primal_residual:.2e}, {dual_residual:.2e})'
        )

    x = np.array(sol['x']).ravel()
    primal_vars = {}
    for var in problem.variables:
        off = compiled.offsets[var.id]
        coords = x[off : off + var.side**2]
        point = np.einsum('k,kij->ij', coords, hermitian_basis(var.side))
        primal_vars[var.id] = HermitianOperator._wrap(point, var.shape)

    dual_vars = {
        name: real_embedding_adjoint(np.array(z)) * scale
        for name, z in zip(compiled.psd_names, sol['zs'], strict=True)
    }
    if compiled.a_basis is not None:
        multipliers = compiled.a_basis @ np.array(sol['y']).ravel()
        for name, start, m in compiled.eq_rows:
            coords = multipliers[start : start + m * m]
            dual_vars[name] = HermitianOperator._wrap(
                np.einsum('k,kij->ij', coords, hermitian_basis(m))
            ) * scale

    logger.debug(
        f'sdp {problem.name}: {len(compiled.c)} parameters, {iterations} iterations, '
        f'primal={primal_value:.10f}, dual={dual_value:.10f}, gap={gap:.2e}'
    )
    return SdpSolution(
        status=status,
        primal_value=primal_value,
        dual_value=dual_value,
        gap=gap,
        iterations=iterations,
        primal_vars=primal_vars,
        dual_vars=dual_vars,
        primal_residual=primal_residual,
        dual_residual=dual_residual,
        solver_status=raw_status,
    )
