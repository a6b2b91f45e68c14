import numpy as np
import pytest

from agpick.errors import DimensionError, HermitianError
from agpick.linalg import (
    assemble_blocks,
    frob,
    hermitian_eig,
    op_norm,
    psd_project,
    split_blocks,
)


def random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def test_eig_diagonal_case():
    dec = hermitian_eig(np.diag([3.0, 1.0]))
    assert np.allclose(dec.eigenvalues, [1.0, 3.0])
    # eigenvectors form a permutation of the identity up to phase
    assert np.allclose(np.abs(dec.eigenvectors), [[0, 1], [1, 0]])


def test_eig_pauli_x():
    dec = hermitian_eig(np.array([[0, 1], [1, 0]], dtype=complex))
    assert np.allclose(dec.eigenvalues, [-1.0, 1.0])


def test_eig_reconstruction_random():
    rng = np.random.default_rng(42)
    for n in range(2, 13):
        a = random_hermitian(rng, n)
        dec = hermitian_eig(a)
        assert frob(dec.reconstruct() - a) < 1e-9 * (1 + frob(a))
        assert frob(dec.eigenvectors.conj().T @ dec.eigenvectors - np.eye(n)) < 1e-10
        assert np.all(np.diff(dec.eigenvalues) >= -1e-14)


def test_eig_rejects_nonsquare_and_nonhermitian():
    with pytest.raises(DimensionError):
        hermitian_eig(np.ones((2, 3)))
    with pytest.raises(HermitianError):
        hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_psd_project_examples():
    a = np.diag([2.0, -1.0]).astype(complex)
    assert np.allclose(psd_project(a), np.diag([2.0, 0.0]))
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(psd_project(x), 0.5 * np.ones((2, 2)))


def test_psd_project_fixed_point_and_idempotent():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = random_hermitian(rng, 5)
        q = a @ a.conj().T  # PSD
        assert frob(psd_project(q) - q) < 1e-10 * (1 + frob(q))
        p1 = psd_project(a)
        assert frob(psd_project(p1) - p1) < 1e-10
        assert np.linalg.eigvalsh(p1).min() >= -1e-12


def test_psd_project_is_nearest():
    rng = np.random.default_rng(11)
    for _ in range(5):
        a = random_hermitian(rng, 4)
        p = psd_project(a)
        da = frob(a - p)
        for _ in range(100):
            b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            q = b @ b.conj().T
            assert da <= frob(a - q) + 1e-9


def test_op_norm_examples():
    assert op_norm(np.eye(5)) == pytest.approx(1.0)
    assert op_norm(np.array([[1, 1], [0, 0]])) == pytest.approx(np.sqrt(2))
    assert op_norm([0.6, 0.8]) == pytest.approx(1.0)


def test_op_norm_kron_multiplicative():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        b = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
        assert op_norm(np.kron(a, b)) == pytest.approx(op_norm(a) * op_norm(b), abs=1e-9)


def test_block_assembly_round_trip():
    rng = np.random.default_rng(5)
    blocks = rng.standard_normal((3, 2, 2, 4)) + 1j * rng.standard_normal((3, 2, 2, 4))
    mat = assemble_blocks(blocks)
    assert mat.shape == (6, 8)
    assert np.array_equal(split_blocks(mat, 2, 4), blocks)
    assert np.allclose(mat[2:4, 4:8], blocks[1, 1])
