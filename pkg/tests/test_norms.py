import numpy as np
import pytest

from agpick.errors import ParameterError
from agpick.norms import (
    quotient_norm,
    sample_interior,
    schur_agler_norm_estimate,
    sup_norm_lower,
)
from agpick.presentation import MultiPoly, preset
from agpick.sdp import InterpolationProblem, classical_pick_test, verify_certificate

DISK = preset("disk")
POLY2 = preset("polydisk", n=2)
TOL = 1e-4


def scalar_targets(ws):
    return [np.array([[w]], dtype=complex) for w in ws]


def test_single_point_norm_is_target_modulus():
    res = quotient_norm(DISK, [[0.3 + 0.2j]], scalar_targets([0.45 - 0.1j]))
    want = abs(0.45 - 0.1j)
    assert res.lower <= want + TOL and res.upper >= want - TOL
    assert res.upper - res.lower <= TOL
    assert res.upper == pytest.approx(want, abs=2 * TOL)


def test_schwarz_pick_two_point_norm_is_one():
    res = quotient_norm(DISK, [[0.0], [0.5]], scalar_targets([0.0, 0.5]))
    assert res.upper == pytest.approx(1.0, abs=1e-3)
    assert res.lower <= res.upper
    assert res.upper - res.lower <= TOL


def test_constant_function_norm():
    c = 0.7 - 0.4j
    res = quotient_norm(POLY2, [[0.1, 0.2], [0.3, -0.2]], scalar_targets([c, c]))
    assert res.upper == pytest.approx(abs(c), abs=2 * TOL)


def test_certificate_at_upper_verifies_at_padded_level():
    res = quotient_norm(DISK, [[0.0], [0.4]], scalar_targets([0.3, 0.6]))
    level = res.upper * (1 + 1e-9)
    prob = InterpolationProblem(
        DISK, [[0.0], [0.4]], scalar_targets([0.3 / level, 0.6 / level])
    )
    rep = verify_certificate(prob, res.certificate_at_upper)
    assert rep["verdict"]


def test_norm_homogeneity():
    pts = [[0.1], [-0.4]]
    ws = [0.2 + 0.1j, 0.5]
    base = quotient_norm(DISK, pts, scalar_targets(ws)).upper
    for c in (0.5, 2.0):
        scaled = quotient_norm(DISK, pts, scalar_targets([c * w for w in ws])).upper
        assert scaled == pytest.approx(c * base, abs=2 * TOL * max(1.0, c))


def test_monotone_under_nesting():
    rng = np.random.default_rng(14)
    pts = [[0.2], [-0.3 + 0.2j], [0.5j]]
    ws = [0.4, -0.2 + 0.3j, 0.1]
    n1 = quotient_norm(DISK, pts[:1], scalar_targets(ws[:1])).upper
    n2 = quotient_norm(DISK, pts[:2], scalar_targets(ws[:2])).upper
    n3 = quotient_norm(DISK, pts, scalar_targets(ws)).upper
    assert n1 <= n2 + 2 * TOL
    assert n2 <= n3 + 2 * TOL


def test_matches_classical_pick_bisection():
    def pick_norm(zs, ws, tol=1e-6):
        lo, hi = max(abs(w) for w in ws), 1.0
        while not classical_pick_test(zs, ws, hi):
            lo = hi
            hi *= 2
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if classical_pick_test(zs, ws, mid):
                hi = mid
            else:
                lo = mid
        return hi

    rng = np.random.default_rng(3)
    for _ in range(4):
        l = int(rng.integers(1, 4))
        zs, ws = [], []
        while len(zs) < l:
            c = complex(*rng.uniform(-0.9, 0.9, 2))
            if abs(c) <= 0.9 and all(abs(c - z) > 0.05 for z in zs):
                zs.append(c)
        ws = [complex(*rng.uniform(-0.9, 0.9, 2)) for _ in range(l)]
        ours = quotient_norm(DISK, [[z] for z in zs], scalar_targets(ws)).upper
        ref = pick_norm(zs, ws)
        assert ours == pytest.approx(ref, abs=2 * TOL)


def test_sup_norm_lower_examples():
    f = MultiPoly(1, {(1,): 1.0})
    assert sup_norm_lower(f, DISK, [[0.1], [0.99]]) >= 0.99
    c = MultiPoly.constant(2, 0.3 + 0.4j)
    assert sup_norm_lower(c, POLY2, [[0.0, 0.0]]) == pytest.approx(0.5)
    g = MultiPoly(2, {(1, 0): 1.0, (0, 1): 1.0})
    assert sup_norm_lower(g, POLY2, [[0.9, 0.9]]) >= 1.8 - 1e-12


def test_sampler_respects_margin_floor():
    pts = sample_interior(POLY2, "random", count=20, seed=5, margin_floor=0.1)
    from agpick.presentation import in_domain

    assert len(pts) == 20
    for z in pts:
        assert in_domain(POLY2, z)[1] >= 0.1


def test_grid_sampler_deterministic():
    a = sample_interior(DISK, "grid", count=10, seed=0)
    b = sample_interior(DISK, "grid", count=10, seed=1)  # grid ignores the seed
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_estimate_coordinate_function_approaches_one():
    f = MultiPoly(1, {(1,): 1.0})
    est = schur_agler_norm_estimate(f, DISK, mode="random", count=12, seed=2,
                                    margin_floor=0.02, threads=1)
    pts = sample_interior(DISK, "random", count=12, seed=2, margin_floor=0.02)
    best = max(abs(z[0]) for z in pts)
    assert est.upper >= best - 1e-6
    assert est.upper <= 1.0 + 1e-3


def test_estimate_constant():
    c = MultiPoly.constant(2, 0.6j)
    est = schur_agler_norm_estimate(c, POLY2, count=6, seed=4, threads=1)
    assert est.upper == pytest.approx(0.6, abs=1e-3)


def test_estimate_product_von_neumann_bound():
    f = MultiPoly(2, {(1, 1): 1.0})
    est = schur_agler_norm_estimate(f, POLY2, count=8, seed=6, lmax=3, threads=1)
    assert est.upper <= 1.0 + TOL
    assert est.metadata["subsets_tried"] >= 8


def test_estimate_rejects_rational_entries():
    ann = preset("annulus", r=0.5)
    bad = ann.functions[1].entries[0][0]  # r/z
    with pytest.raises(ParameterError):
        schur_agler_norm_estimate(bad, ann, count=4, seed=0, threads=1)


def test_pointwise_domination_by_quotient_norm():
    f = MultiPoly(2, {(2, 0): 0.7, (0, 1): 0.4})
    pts = sample_interior(POLY2, "random", count=3, seed=9, margin_floor=0.05)
    ws = [np.array([[f.eval(z)]]) for z in pts]
    res = quotient_norm(POLY2, pts, ws)
    assert sup_norm_lower(f, POLY2, pts) <= res.upper + TOL
