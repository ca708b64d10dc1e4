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

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hsdiv.core.errors import DimensionMismatchError, MissingShapeError, NotHermitianError
from hsdiv.core.hermlin import (
    HermitianOperator,
    hermitian_basis,
    hermitian_eig,
    identity,
    max_entangled,
    partial_trace,
    partial_transpose,
    positive_part,
    real_embedding,
    real_embedding_adjoint,
    swap_operator,
    sym_asym_projectors,
    tensor,
    trace_norm,
)

from tests import factories


PAULI_X = HermitianOperator([[0, 1], [1, 0]])
PAULI_Y = HermitianOperator([[0, -1j], [1j, 0]])
PAULI_Z = HermitianOperator([[1, 0], [0, -1]])


def test_hermitian_operator_symmetrizes_small_deviation():
    op = HermitianOperator([[1.0, 0.5 + 1e-12], [0.5, 2.0]])
    assert_allclose(op.matrix, op.matrix.conj().T, atol=0)
    assert op.matrix[0, 1] == pytest.approx(0.5, abs=1e-11)


def test_hermitian_operator_rejects_non_hermitian():
    with pytest.raises(NotHermitianError) as exc:
        HermitianOperator([[1.0, 1.0], [0.0, 1.0]])
    assert exc.value.meta['deviation'] == pytest.approx(1.0)

    with pytest.raises(NotHermitianError):
        HermitianOperator(np.ones((2, 3)))


def test_hermitian_operator_is_immutable():
    op = identity(2)
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 5.0


def test_hermitian_operator_arithmetic():
    x = HermitianOperator(np.diag([1.0, 2.0]), (1, 2))
    y = identity(2)
    assert (x + y).allclose(HermitianOperator(np.diag([2.0, 3.0])))
    assert (x - y).allclose(HermitianOperator(np.diag([0.0, 1.0])))
    assert (2 * x).allclose(x * 2.0)
    assert (x / 2).trace() == pytest.approx(1.5)
    assert (-x).trace() == pytest.approx(-3.0)
    assert (x + y).shape == x.shape
    with pytest.raises(NotHermitianError):
        x * 1j
    with pytest.raises(DimensionMismatchError):
        x + identity(3)


def test_shape_must_factor_side():
    with pytest.raises(DimensionMismatchError):
        HermitianOperator(np.eye(4), (3, 2))
    with pytest.raises(DimensionMismatchError):
        identity(4).with_shape((2, 3))


def test_tensor():
    assert tensor(identity(2), identity(2)).allclose(identity(4))
    product = tensor(HermitianOperator(np.diag([1.0, 0.0])), HermitianOperator(np.diag([0.0, 1.0])))
    assert product.allclose(HermitianOperator(np.diag([0.0, 1.0, 0.0, 0.0])))
    assert product.shape.as_tuple() == (2, 2)
    assert_allclose(tensor(PAULI_Z, PAULI_Z).eigenvalues(), [1, 1, -1, -1], atol=1e-12)


def test_partial_trace(rng):
    rho = factories.random_state(rng, 2).op
    sigma = factories.random_state(rng, 3).op * 2.0
    assert partial_trace(tensor(rho, sigma), 'B').allclose(rho * 2.0)
    assert partial_trace(tensor(rho, sigma), 'A').allclose(sigma * rho.trace())

    assert partial_trace(max_entangled(2), 'B').allclose(identity(2) / 2)
    assert partial_trace(swap_operator(2), 'A').allclose(identity(2))

    x = factories.random_hermitian(rng, 6, (2, 3))
    assert partial_trace(x, 'B').trace() == pytest.approx(x.trace())
    assert partial_trace(x, 'A').dim == 3

    with pytest.raises(MissingShapeError):
        partial_trace(identity(4), 'B')


def test_partial_transpose(rng):
    x = factories.random_hermitian(rng, 2)
    y = factories.random_hermitian(rng, 3)
    expected = HermitianOperator(np.kron(x.matrix, y.matrix.T))
    assert partial_transpose(tensor(x, y), 'B').allclose(expected)

    expected_a = HermitianOperator(np.kron(x.matrix.T, y.matrix))
    assert partial_transpose(tensor(x, y), 'A').allclose(expected_a)

    for d in (2, 3):
        pt_swap = partial_transpose(swap_operator(d), 'B')
        assert pt_swap.allclose(max_entangled(d, normalized=False))
        assert partial_transpose(max_entangled(d), 'B').allclose(swap_operator(d) / d)

    z = factories.random_hermitian(rng, 9, (3, 3))
    twice = partial_transpose(partial_transpose(z, 'B'), 'B')
    assert np.array_equal(twice.matrix, z.matrix)

    with pytest.raises(MissingShapeError):
        partial_transpose(identity(4))


def test_partial_transpose_preserves_trace_and_hermiticity(rng):
    for dims in ((2, 2), (2, 3), (3, 2)):
        x = factories.random_hermitian(rng, dims[0] * dims[1], dims)
        pt = partial_transpose(x, 'B')
        assert pt.trace() == pytest.approx(x.trace(), abs=1e-12)
        assert np.max(np.abs(pt.matrix - pt.matrix.conj().T)) <= 1e-12


def test_partial_transpose_is_self_adjoint(rng):
    for _ in range(10):
        left = factories.random_hermitian(rng, 6, (2, 3))
        right = factories.random_hermitian(rng, 6, (2, 3))
        lhs = partial_transpose(left).expectation(right)
        rhs = left.expectation(partial_transpose(right))
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_positive_part(rng):
    x = HermitianOperator(np.diag([0.3, -0.3]))
    assert positive_part(x).allclose(HermitianOperator(np.diag([0.3, 0.0])))

    psd = factories.random_state(rng, 4).op
    assert positive_part(psd).allclose(psd, atol=1e-10)

    for _ in range(5):
        h = factories.random_hermitian(rng, 5)
        pos = positive_part(h)
        values = h.eigenvalues()
        assert pos.trace() == pytest.approx(values[values > 0].sum(), abs=1e-10)
        assert pos.min_eig() >= -1e-10
        assert (h - pos).max_eig() <= 1e-10
        both = positive_part(h).trace() + positive_part(-h).trace()
        assert both == pytest.approx(trace_norm(h), abs=1e-10)


def test_hermitian_eig(rng):
    values, _ = hermitian_eig(identity(3))
    assert_allclose(values, [1, 1, 1])

    values, _ = hermitian_eig(PAULI_X)
    assert_allclose(values, [1, -1], atol=1e-12)

    h = factories.random_hermitian(rng, 9)
    values, vectors = hermitian_eig(h)
    assert np.all(np.diff(values) <= 0)
    rebuilt = (vectors * values) @ vectors.conj().T
    assert np.linalg.norm(rebuilt - h.matrix) <= 1e-10 * np.linalg.norm(h.matrix)

    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_swap_operator():
    swap = swap_operator(2)
    ket_01 = np.array([0, 1, 0, 0])
    assert_allclose(swap.matrix @ ket_01, [0, 0, 1, 0])
    for d in (2, 3, 4):
        swap = swap_operator(d)
        assert swap.trace() == pytest.approx(d)
        assert_allclose(swap.matrix @ swap.matrix, np.eye(d * d), atol=1e-12)


@pytest.mark.parametrize('d', [2, 3, 4])
def test_sym_asym_projectors(d):
    sym, asym = sym_asym_projectors(d)
    assert sym.trace() == pytest.approx(d * (d + 1) / 2)
    assert asym.trace() == pytest.approx(d * (d - 1) / 2)
    assert (sym + asym).allclose(identity(d * d))
    assert_allclose(sym.matrix @ asym.matrix, 0, atol=1e-12)
    assert_allclose(sym.matrix @ sym.matrix, sym.matrix, atol=1e-12)
    assert_allclose(asym.matrix @ asym.matrix, asym.matrix, atol=1e-12)


def test_max_entangled():
    phi = max_entangled(2)
    assert phi.trace() == pytest.approx(1.0)
    assert_allclose(phi.eigenvalues(), [1, 0, 0, 0], atol=1e-12)
    assert max_entangled(3, normalized=False).trace() == pytest.approx(3.0)
    for d in (2, 3):
        assert partial_trace(max_entangled(d), 'B').allclose(identity(d) / d)


def test_real_embedding():
    x = HermitianOperator([[1.0, 2.0], [2.0, -1.0]])
    emb = real_embedding(x)
    zero = np.zeros((2, 2))
    assert_allclose(emb, np.block([[x.matrix.real, zero], [zero, x.matrix.real]]))

    assert_allclose(np.linalg.eigvalsh(real_embedding(PAULI_Y)), [-1, -1, 1, 1], atol=1e-12)


def test_real_embedding_spectrum(rng):
    for _ in range(50):
        h = factories.random_hermitian(rng, 4)
        emb_values = np.linalg.eigvalsh(real_embedding(h))
        assert_allclose(emb_values, np.sort(np.repeat(h.eigenvalues(), 2)), atol=1e-10)

        psd = factories.random_state(rng, 4, rank=2).op
        assert np.linalg.eigvalsh(real_embedding(psd)).min() >= -1e-12


def test_real_embedding_adjoint(rng):
    for _ in range(5):
        h = factories.random_hermitian(rng, 3)
        z = rng.normal(size=(6, 6))
        z = z + z.T
        w = real_embedding_adjoint(z)
        assert np.sum(z * real_embedding(h)) == pytest.approx(w.expectation(h), abs=1e-10)


def test_hermitian_basis_is_orthonormal():
    basis = hermitian_basis(3)
    assert basis.shape == (9, 3, 3)
    gram = np.einsum('kij,lji->kl', basis, basis)
    assert_allclose(gram, np.eye(9), atol=1e-12)
    assert_allclose(basis, basis.conj().transpose(0, 2, 1), atol=0)
