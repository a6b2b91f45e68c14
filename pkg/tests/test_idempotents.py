import numpy as np
import pytest

from agpick.errors import DimensionError, ParameterError
from agpick.idempotents import (
    AdmissibleTuple,
    KIdempotentAlgebra,
    RejectedTuple,
    algebra_norm,
    multiplier_norm_via_kernel,
    quotient_rep,
    random_idempotents,
)
from agpick.linalg import frob, op_norm
from agpick.presentation import MultiPoly, eval_on_tuple, preset

DISK = preset("disk")

E1_SHEAR = np.array([[1, 1], [0, 0]], dtype=complex)
E2_SHEAR = np.eye(2) - E1_SHEAR


def orth_algebra(k):
    return KIdempotentAlgebra(
        [np.diag((np.arange(k) == i).astype(complex)) for i in range(k)]
    )


def test_orthogonal_projections_case():
    alg = orth_algebra(2)
    assert alg.relation_residual() < 1e-14
    assert np.allclose(alg.idempotents[0], np.diag([1, 0]))


def test_random_idempotents_invariants():
    for seed in range(8):
        k = 2 + seed % 3
        d = k + seed % 2
        alg = random_idempotents(k, d, seed=seed, cond_cap=20.0)
        assert alg.relation_residual() < 1e-9
        assert alg.meta["cond"] <= 20.0


def test_random_idempotents_high_cond_stress():
    alg = random_idempotents(3, 5, seed=123, cond_cap=20.0)
    # similarity preserves the relations exactly in exact arithmetic; the
    # float residual stays well under the construction tolerance
    assert alg.relation_residual() < 1e-9


def test_random_idempotents_rejects_k_greater_than_d():
    with pytest.raises(ParameterError):
        random_idempotents(4, 3, seed=0)


def test_algebra_norm_orthogonal_is_max_modulus():
    alg = orth_algebra(2)
    a = [np.array([[0.3 + 0.4j]]), np.array([[-0.2]])]
    assert algebra_norm(alg, a) == pytest.approx(0.5)


def test_algebra_norm_shear_example():
    alg = KIdempotentAlgebra([E1_SHEAR, E2_SHEAR])
    val = algebra_norm(alg, [np.array([[1.0]]), np.array([[0.0]])])
    assert val == pytest.approx(np.sqrt(2))


def test_algebra_norm_constant_coefficients():
    alg = random_idempotents(3, 4, seed=5)
    c = 0.8 - 0.1j
    coeffs = [np.array([[c]])] * 3
    assert algebra_norm(alg, coeffs) == pytest.approx(abs(c), abs=1e-10)


def test_algebra_norm_shape_mismatch():
    alg = orth_algebra(2)
    with pytest.raises(DimensionError):
        algebra_norm(alg, [np.eye(2), np.eye(3)])
    with pytest.raises(DimensionError):
        algebra_norm(alg, [np.eye(2)])


def test_multiplier_norm_orthogonal():
    alg = orth_algebra(2)
    coeffs = [np.array([[0.9]]), np.array([[0.4j]])]
    assert multiplier_norm_via_kernel(alg, coeffs) == pytest.approx(0.9, abs=1e-5)


def test_multiplier_norm_shear_matches_svd_oracle():
    alg = KIdempotentAlgebra([E1_SHEAR, E2_SHEAR])
    coeffs = [np.array([[1.0]]), np.array([[0.0]])]
    val = multiplier_norm_via_kernel(alg, coeffs, tol=1e-8)
    assert val == pytest.approx(np.sqrt(2), abs=1e-6)


def test_multiplier_norm_constants_and_zero():
    alg = random_idempotents(2, 3, seed=9)
    assert multiplier_norm_via_kernel(alg, [np.zeros((1, 1))] * 2) == 0.0
    c = 0.35
    val = multiplier_norm_via_kernel(alg, [np.array([[c]])] * 2)
    assert val == pytest.approx(c, abs=1e-5)


def test_proposition_equivalence_scalar_sample():
    rng = np.random.default_rng(21)
    for trial in range(15):
        k = int(rng.integers(1, 5))
        d = int(rng.integers(k, 7))
        alg = random_idempotents(k, d, seed=trial, cond_cap=20.0)
        coeffs = [np.array([[complex(*rng.standard_normal(2))]]) for _ in range(k)]
        an = algebra_norm(alg, coeffs)
        mn = multiplier_norm_via_kernel(alg, coeffs)
        assert abs(an - mn) < 1e-5 * (1 + an)


def test_proposition_equivalence_matrix_coefficients():
    rng = np.random.default_rng(31)
    for trial in range(8):
        k = int(rng.integers(1, 4))
        d = int(rng.integers(k, 6))
        p = int(rng.integers(2, 4))
        alg = random_idempotents(k, d, seed=100 + trial, cond_cap=15.0)
        coeffs = [
            rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p))
            for _ in range(k)
        ]
        an = algebra_norm(alg, coeffs)
        mn = multiplier_norm_via_kernel(alg, coeffs, tol=1e-7)
        assert abs(an - mn) < 1e-5 * (1 + an)


def test_quotient_rep_orthogonal_block_diagonal():
    pts = [[0.2], [-0.5j]]
    rep = quotient_rep(DISK, pts, orth_algebra(2))
    assert isinstance(rep, AdmissibleTuple)
    assert np.allclose(rep.matrices[0], np.diag([0.2, -0.5j]))
    assert rep.margins[0] == pytest.approx(0.5)
    f = MultiPoly(1, {(2,): 1.0})
    val = op_norm(eval_on_tuple(f, rep.matrices))
    assert val == pytest.approx(max(abs(0.2) ** 2, abs(0.5j) ** 2), abs=1e-10)


def test_quotient_rep_functional_calculus_homomorphism():
    rng = np.random.default_rng(17)
    pts = [[0.3, 0.1], [-0.2, 0.4], [0.1j, -0.3j]]
    alg = random_idempotents(3, 4, seed=2, cond_cap=10.0)
    rep = quotient_rep(preset("polydisk", n=2), pts, alg)
    f = MultiPoly(2, {(1, 0): 1.0, (1, 1): -0.5, (0, 0): 0.2})
    lhs = eval_on_tuple(f, rep.matrices)
    rhs = sum(
        f.eval(np.asarray(p, dtype=complex)) * e
        for p, e in zip(pts, alg.idempotents)
    )
    assert frob(lhs - rhs) < 1e-9


def test_quotient_rep_rejection_near_boundary():
    # a skewed similarity at a near-boundary node must violate some margin
    pts = [[0.97], [-0.97]]
    rejected = None
    for seed in range(40):
        alg = random_idempotents(2, 2, seed=seed, cond_cap=10.0)
        if alg.meta["cond"] < 5.0:
            continue
        rep = quotient_rep(DISK, pts, alg)
        if isinstance(rep, RejectedTuple):
            rejected = rep
            break
    assert rejected is not None
    assert min(rejected.margins) < 0
    assert rejected.violated


def test_quotient_rep_size_mismatch():
    with pytest.raises(ParameterError):
        quotient_rep(DISK, [[0.1]], orth_algebra(2))
