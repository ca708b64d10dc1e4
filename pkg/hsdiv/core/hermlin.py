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
Complex Hermitian linear algebra on (optionally) bipartite spaces.

Basis convention: the product vector |i>|j> of a space with shape (dim_a, dim_b)
has flat index ``i * dim_b + j``. Every operator returned here is an immutable
HermitianOperator.
"""

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import numpy.typing as npt
from scipy import linalg

from hsdiv.core.conf import get_settings
from hsdiv.core.errors import DimensionMismatchError, MissingShapeError, NotHermitianError


logger = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]
RealMatrix = npt.NDArray[np.float64]


class SystemTag(enum.StrEnum):
    A = 'A'
    B = 'B'


@dataclass(frozen=True, slots=True)
class BipartiteShape:
    """
    Factorization dim_a x dim_b of a square operator's side length.
    """

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if int(self.dim_a) < 1 or int(self.dim_b) < 1:
            raise DimensionMismatchError(
                f'factor dimensions must be positive, got ({self.dim_a}, {self.dim_b})'
            )

    @property
    def side(self) -> int:
        return self.dim_a * self.dim_b

    def as_tuple(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b


def as_complex_matrix(data) -> ComplexMatrix:
    """
    Copies ``data`` into a 2-D complex128 array with positive dimensions.
    """
    arr = np.array(data, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatchError(f'expected a non-empty matrix, got array of shape {arr.shape}')
    return arr


def _coerce_shape(shape) -> BipartiteShape | None:
    if shape is None or isinstance(shape, BipartiteShape):
        return shape
    dim_a, dim_b = shape
    return BipartiteShape(int(dim_a), int(dim_b))


class HermitianOperator:
    """
    Dense complex Hermitian matrix with an optional bipartite shape.

    The input is rejected when max|H - H^dagger| exceeds ``HERMITIAN_TOL * (1 + max|H|)``;
    otherwise it is stored symmetrized as (H + H^dagger)/2. Instances are immutable.
    """

    __slots__ = ('_matrix', '_shape')

    def __init__(self, matrix, shape: BipartiteShape | tuple[int, int] | None = None, *, tol=None):
        arr = as_complex_matrix(matrix)
        if arr.shape[0] != arr.shape[1]:
            raise NotHermitianError(f'operator must be square, got {arr.shape[0]}x{arr.shape[1]}')

        tol = get_settings().HERMITIAN_TOL if tol is None else tol
        deviation = float(np.max(np.abs(arr - arr.conj().T)))
        if deviation > tol * (1.0 + float(np.max(np.abs(arr)))):
            raise NotHermitianError(
                f'max |H - H^dagger| = {deviation:.3e} exceeds tolerance',
                meta_data={'deviation': deviation},
            )

        self._matrix = _freeze((arr + arr.conj().T) / 2)
        self._shape = _coerce_shape(shape)
        if self._shape is not None and self._shape.side != arr.shape[0]:
            raise DimensionMismatchError(
                f'shape {self._shape.as_tuple()} does not factor side length {arr.shape[0]}'
            )

    @classmethod
    def _wrap(cls, arr: ComplexMatrix, shape: BipartiteShape | None = None) -> 'HermitianOperator':
        # for results of Hermiticity-preserving maps; skips the rejection test
        obj = object.__new__(cls)
        obj._matrix = _freeze((arr + arr.conj().T) / 2)
        obj._shape = shape
        return obj

    @property
    def matrix(self) -> ComplexMatrix:
        return self._matrix

    @property
    def shape(self) -> BipartiteShape | None:
        return self._shape

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def require_shape(self) -> BipartiteShape:
        if self._shape is None:
            raise MissingShapeError('operation needs a bipartite shape on the operator')
        return self._shape

    def with_shape(self, shape: BipartiteShape | tuple[int, int] | None) -> 'HermitianOperator':
        shape = _coerce_shape(shape)
        if shape is not None and shape.side != self.dim:
            raise DimensionMismatchError(
                f'shape {shape.as_tuple()} does not factor side length {self.dim}'
            )
        return HermitianOperator._wrap(self._matrix, shape)

    def trace(self) -> float:
        return float(np.trace(self._matrix).real)

    def expectation(self, other: 'HermitianOperator') -> float:
        """Re Tr[self other]."""
        _check_same_dim(self, other)
        return float(np.einsum('ij,ji->', self._matrix, other.matrix).real)

    def eigenvalues(self) -> npt.NDArray[np.float64]:
        """Eigenvalues in descending order."""
        return linalg.eigvalsh(self._matrix)[::-1]

    def min_eig(self) -> float:
        return float(linalg.eigvalsh(self._matrix)[0])

    def max_eig(self) -> float:
        return float(linalg.eigvalsh(self._matrix)[-1])

    def is_psd(self, tol: float = 0.0) -> bool:
        return self.min_eig() >= -tol

    def allclose(self, other: 'HermitianOperator', atol: float = 1e-10) -> bool:
        return self.dim == other.dim and np.allclose(self._matrix, other.matrix, rtol=0, atol=atol)

    def _combine(self, other: 'HermitianOperator', sign: float) -> 'HermitianOperator':
        _check_same_dim(self, other)
        shape = self._shape or other.shape
        return HermitianOperator._wrap(self._matrix + sign * other.matrix, shape)

    def __add__(self, other: 'HermitianOperator') -> 'HermitianOperator':
        return self._combine(other, 1.0)

    def __sub__(self, other: 'HermitianOperator') -> 'HermitianOperator':
        return self._combine(other, -1.0)

    def __neg__(self) -> 'HermitianOperator':
        return HermitianOperator._wrap(-self._matrix, self._shape)

    def __mul__(self, scalar: float) -> 'HermitianOperator':
        if isinstance(scalar, complex) or np.iscomplexobj(scalar):
            raise NotHermitianError('Hermitian operators can only be scaled by real numbers')
        return HermitianOperator._wrap(self._matrix * float(scalar), self._shape)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> 'HermitianOperator':
        return self * (1.0 / float(scalar))

    def __repr__(self):
        shape = self._shape.as_tuple() if self._shape else None
        return f'{self.__class__.__name__}(dim={self.dim}, shape={shape})'


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def _check_same_dim(x: HermitianOperator, y: HermitianOperator) -> None:
    if x.dim != y.dim:
        raise DimensionMismatchError(f'operators have different sizes: {x.dim} and {y.dim}')


def identity(d: int, shape: BipartiteShape | tuple[int, int] | None = None) -> HermitianOperator:
    return HermitianOperator._wrap(np.eye(d, dtype=np.complex128), _coerce_shape(shape))


def tensor(x: HermitianOperator, y: HermitianOperator) -> HermitianOperator:
    """
    Kronecker product x (x) y, labelled with shape (dim x, dim y).
    """
    return HermitianOperator._wrap(np.kron(x.matrix, y.matrix), BipartiteShape(x.dim, y.dim))


def partial_trace(x: HermitianOperator, over: SystemTag | str) -> HermitianOperator:
    """
    Traces out factor ``over``; the result acts on the remaining factor and has no shape.
    """
    shape = x.require_shape()
    blocks = x.matrix.reshape(shape.dim_a, shape.dim_b, shape.dim_a, shape.dim_b)
    if SystemTag(over) is SystemTag.B:
        reduced = np.einsum('ijkj->ik', blocks)
    else:
        reduced = np.einsum('ijil->jl', blocks)
    return HermitianOperator._wrap(reduced)


def partial_transpose(x: HermitianOperator, on: SystemTag | str = SystemTag.B) -> HermitianOperator:
    """
    Transposes factor ``on`` blockwise. An involution; the shape is kept.
    """
    shape = x.require_shape()
    blocks = x.matrix.reshape(shape.dim_a, shape.dim_b, shape.dim_a, shape.dim_b)
    if SystemTag(on) is SystemTag.B:
        flipped = blocks.transpose(0, 3, 2, 1)
    else:
        flipped = blocks.transpose(2, 1, 0, 3)
    return HermitianOperator._wrap(flipped.reshape(shape.side, shape.side), shape)


def hermitian_eig(x) -> tuple[npt.NDArray[np.float64], ComplexMatrix]:
    """
    Eigen-decomposition X = V diag(lambda) V^dagger with eigenvalues sorted in
    descending order. Array input is validated as Hermitian first.
    """
    if not isinstance(x, HermitianOperator):
        x = HermitianOperator(x)
    values, vectors = linalg.eigh(x.matrix)
    return values[::-1].copy(), vectors[:, ::-1].copy()


def positive_part(x: HermitianOperator) -> HermitianOperator:
    """
    (X)_+: the spectral restriction of X to its positive eigenvalues.
    Eigenvalues within ZERO_EIG_TOL of zero count as zero.
    """
    values, vectors = hermitian_eig(x)
    kept = np.where(values > get_settings().ZERO_EIG_TOL, values, 0.0)
    return HermitianOperator._wrap((vectors * kept) @ vectors.conj().T, x.shape)


def positive_projector(x: HermitianOperator) -> HermitianOperator:
    """
    Projector onto the span of eigenvectors of X with eigenvalue above ZERO_EIG_TOL.
    """
    values, vectors = hermitian_eig(x)
    cols = vectors[:, values > get_settings().ZERO_EIG_TOL]
    return HermitianOperator._wrap(cols @ cols.conj().T, x.shape)


def trace_norm(x: HermitianOperator) -> float:
    return float(np.sum(np.abs(x.eigenvalues())))


def swap_operator(d: int) -> HermitianOperator:
    """
    F = sum_ij |i><j| (x) |j><i| on C^d (x) C^d.
    """
    _check_dimension(d)
    swap = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    return HermitianOperator._wrap(swap, BipartiteShape(d, d))


def sym_asym_projectors(d: int) -> tuple[HermitianOperator, HermitianOperator]:
    """
    Projectors (I + F)/2 and (I - F)/2 onto the symmetric and antisymmetric subspaces.
    """
    swap = swap_operator(d)
    ident = identity(d * d, swap.shape)
    return (ident + swap) / 2, (ident - swap) / 2


def max_entangled(d: int, normalized: bool = True) -> HermitianOperator:
    """
    |Gamma><Gamma| with |Gamma> = sum_i |i>|i>; divided by d when ``normalized``.
    """
    _check_dimension(d)
    vec = np.zeros(d * d, dtype=np.complex128)
    vec[[i * d + i for i in range(d)]] = 1.0
    proj = np.outer(vec, vec.conj())
    if normalized:
        proj /= d
    return HermitianOperator._wrap(proj, BipartiteShape(d, d))


def real_embedding(x: HermitianOperator) -> RealMatrix:
    """
    [[Re X, -Im X], [Im X, Re X]]. Positive semidefinite exactly when X is, with every
    eigenvalue of X appearing twice.
    """
    return real_embedding_batch(x.matrix)


def real_embedding_batch(arr: np.ndarray) -> RealMatrix:
    """Embedding of a stack of complex matrices with shape (..., n, n)."""
    re, im = arr.real, arr.imag
    top = np.concatenate([re, -im], axis=-1)
    bottom = np.concatenate([im, re], axis=-1)
    return np.ascontiguousarray(np.concatenate([top, bottom], axis=-2))


def real_embedding_adjoint(z: RealMatrix) -> HermitianOperator:
    """
    Hilbert-Schmidt adjoint of the embedding: the Hermitian W with
    Tr[Z real_embedding(H)] = Tr[W H] for every Hermitian H.
    """
    z = np.asarray(z, dtype=np.float64)
    n = z.shape[0] // 2
    if z.shape != (2 * n, 2 * n):
        raise DimensionMismatchError(f'expected an even square matrix, got {z.shape}')
    z = (z + z.T) / 2
    p, q, q2, r = z[:n, :n], z[:n, n:], z[n:, :n], z[n:, n:]
    return HermitianOperator._wrap((p + r) + 1j * (q2 - q))


@lru_cache(maxsize=32)
def hermitian_basis(n: int) -> np.ndarray:
    """
    Orthonormal (Hilbert-Schmidt) basis of the real space of n x n Hermitian
    matrices, returned as a read-only array of shape (n*n, n, n): the diagonal
    units first, then (E_ij + E_ji)/sqrt2 and i(E_ij - E_ji)/sqrt2 for i < j.
    """
    _check_dimension(n)
    basis = np.zeros((n * n, n, n), dtype=np.complex128)
    k = 0
    for i in range(n):
        basis[k, i, i] = 1.0
        k += 1
    s = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            basis[k, i, j] = basis[k, j, i] = s
            basis[k + 1, i, j] = 1j * s
            basis[k + 1, j, i] = -1j * s
            k += 2
    basis.setflags(write=False)
    return basis


def _check_dimension(d: int) -> None:
    if int(d) < 1:
        raise DimensionMismatchError(f'dimension must be positive, got {d}')
