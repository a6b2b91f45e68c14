import numpy as np
import pytest

from agpick.errors import (
    CommutativityError,
    EvaluationError,
    ParameterError,
    SpectrumError,
)
from agpick.linalg import op_norm
from agpick.presentation import (
    FunctionMatrix,
    MultiPoly,
    Presentation,
    RationalFn,
    eval_fn,
    eval_on_tuple,
    in_domain,
    joint_diagonal,
    preset,
)


def test_poly_eval_basics():
    p = MultiPoly(2, {(1, 0): 2.0, (0, 2): 1j, (0, 0): -1.0})
    assert p.eval([0, 0]) == pytest.approx(-1.0)
    assert p.eval([1.5, 2.0]) == pytest.approx(2 * 1.5 + 1j * 4 - 1)


def test_poly_linearity_in_coefficients():
    rng = np.random.default_rng(0)
    for _ in range(20):
        exps = [tuple(rng.integers(0, 4, 2)) for _ in range(4)]
        c1 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        c2 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        p = MultiPoly(2, dict(zip(exps, c1)))
        q = MultiPoly(2, dict(zip(exps, c2)))
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        lhs = (p + q).eval(z)
        rhs = p.eval(z) + q.eval(z)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_poly_drops_zero_coefficients():
    p = MultiPoly(1, {(1,): 1.0, (2,): 0.0})
    assert (2,) not in p.terms
    q = p - MultiPoly(1, {(1,): 1.0})
    assert not q.terms


def test_rational_pole_detection():
    r = RationalFn(MultiPoly.constant(1, 0.5), MultiPoly.coordinate(1, 0))
    assert r.eval([0.7]) == pytest.approx(0.5 / 0.7)
    with pytest.raises(EvaluationError):
        r.eval([0.0])


def test_eval_fn_spec_examples():
    poly = preset("polydisk", n=2)
    v = eval_fn(poly.functions[0], [0.3, 0.9j])
    assert v.shape == (1, 1) and v[0, 0] == pytest.approx(0.3)

    ball = preset("ball_row", n=2)
    v = eval_fn(ball.functions[0], [0.6, 0.8])
    assert op_norm(v) == pytest.approx(1.0)

    ann = preset("annulus", r=0.5)
    v = eval_fn(ann.functions[1], [0.7])
    assert v[0, 0] == pytest.approx(0.5 / 0.7)


def test_in_domain_examples():
    poly = preset("polydisk", n=2)
    inside, margin = in_domain(poly, [0.5, 0.5])
    assert inside and margin == pytest.approx(0.5)

    ball = preset("ball_row", n=2)
    inside, margin = in_domain(ball, [0.6, 0.8])
    assert not inside and margin == pytest.approx(0.0, abs=1e-12)

    lens = preset("lens", a=0.0, b=0.5)
    inside, margin = in_domain(lens, [0.25])
    assert inside and margin == pytest.approx(0.75)

    ann = preset("annulus", r=0.5)
    with pytest.raises(EvaluationError):
        in_domain(ann, [0.0])


def test_preset_shapes():
    p = preset("polydisk", n=3)
    assert p.dim == 3 and p.shapes == [(1, 1)] * 3
    ann = preset("annulus", r=0.5)
    assert [f.is_polynomial() for f in ann.functions] == [True, False]
    mb = preset("matrix_ball", rows=2, cols=3)
    assert mb.dim == 6 and mb.shapes == [(2, 3)]
    dp = preset("disk_pow")
    assert dp.functions[0].entries[0][0].num.terms == {(2,): 1.0}
    assert dp.functions[1].entries[0][0].num.terms == {(3,): 1.0}
    hp = preset("halfplane")
    assert in_domain(hp, [2.0])[0] and not in_domain(hp, [-0.5])[0]
    rc = preset("ball_rowcol", n=2)
    assert rc.shapes == [(1, 2), (2, 1)]


def test_preset_param_validation():
    with pytest.raises(ParameterError):
        preset("lens", a=0.0, b=1.5)
    with pytest.raises(ParameterError):
        preset("annulus", r=1.2)
    with pytest.raises(ParameterError):
        preset("polydisk", n=0)
    with pytest.raises(ParameterError):
        preset("no_such_domain")


@pytest.mark.parametrize("name,kwargs", [
    ("polydisk", {"n": 2}),
    ("ball_row", {"n": 3}),
    ("ball_rowcol", {"n": 2}),
    ("lens", {"a": 0.1j, "b": 0.4}),
    ("annulus", {"r": 0.5}),
    ("matrix_ball", {"rows": 2, "cols": 2}),
    ("disk_pow", {}),
    ("halfplane", {}),
])
def test_interior_points_have_contractive_values(name, kwargs):
    from agpick.norms import sample_interior

    pres = preset(name, **kwargs)
    pts = sample_interior(pres, "random", count=12, seed=9, margin_floor=0.01)
    for z in pts:
        for f in pres.functions:
            assert op_norm(f.eval(z)) < 1.0


def test_eval_on_tuple_diagonal_calculus():
    f = MultiPoly(2, {(1, 1): 1.0})
    t = [np.diag([0.2, 0.5]).astype(complex), np.diag([0.3, -0.4]).astype(complex)]
    out = eval_on_tuple(f, t)
    assert np.allclose(out, np.diag([0.06, -0.2]))


def test_eval_on_tuple_constant_and_nilpotent():
    c = MultiPoly.constant(1, 2.5 + 1j)
    t = [np.array([[0, 1], [0, 0]], dtype=complex)]
    assert np.allclose(eval_on_tuple(c, t), (2.5 + 1j) * np.eye(2))
    sq = MultiPoly(1, {(2,): 1.0})
    assert np.allclose(eval_on_tuple(sq, t), np.zeros((2, 2)))


def test_eval_on_tuple_matches_pointwise_on_scalars():
    rng = np.random.default_rng(1)
    f = MultiPoly(2, {(2, 0): 1.5, (1, 1): -1j, (0, 0): 0.25})
    for _ in range(10):
        z = 0.7 * (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        t = [np.array([[zj]]) for zj in z]
        val = eval_on_tuple(f, t)[0, 0]
        ref = f.eval(z)
        assert abs(val - ref) <= 1e-12 * max(1.0, abs(ref))


def test_eval_on_tuple_homomorphism():
    rng = np.random.default_rng(2)
    for _ in range(10):
        p = MultiPoly(2, {tuple(rng.integers(0, 3, 2)): rng.standard_normal()
                          for _ in range(3)})
        q = MultiPoly(2, {tuple(rng.integers(0, 3, 2)): rng.standard_normal()
                          for _ in range(3)})
        t = [np.diag(rng.standard_normal(3)).astype(complex) for _ in range(2)]
        lhs = eval_on_tuple(p * q, t)
        rhs = eval_on_tuple(p, t) @ eval_on_tuple(q, t)
        assert np.linalg.norm(lhs - rhs) < 1e-10 * (1 + np.linalg.norm(rhs))


def test_eval_on_tuple_rejects_noncommuting():
    f = MultiPoly(2, {(1, 1): 1.0})
    t = [np.array([[0, 1], [0, 0]], dtype=complex),
         np.array([[0, 0], [1, 0]], dtype=complex)]
    with pytest.raises(CommutativityError):
        eval_on_tuple(f, t)


def test_eval_on_tuple_singular_denominator():
    r = RationalFn(MultiPoly.constant(1, 0.5), MultiPoly.coordinate(1, 0))
    t = [np.array([[0.0]], dtype=complex)]
    with pytest.raises(SpectrumError):
        eval_on_tuple(r, t)


def test_rational_on_tuple_matches_scalar():
    hp = preset("halfplane")
    z = 1.3 + 0.2j
    out = eval_on_tuple(hp.functions[0].entries[0][0], [np.array([[z]])])
    assert out[0, 0] == pytest.approx((z - 1) / (z + 1))


def test_block_shape_of_matrix_function_on_tuple():
    mb = preset("ball_rowcol", n=2)
    t = [np.diag([0.1, 0.2]).astype(complex), np.diag([0.3, 0.1]).astype(complex)]
    row = mb.functions[0].eval_tuple(t)
    assert row.shape == (2, 4)
    col = mb.functions[1].eval_tuple(t)
    assert col.shape == (4, 2)


def test_joint_diagonal_recovers_spectrum():
    rng = np.random.default_rng(4)
    evals = [rng.standard_normal(3) + 1j * rng.standard_normal(3) for _ in range(2)]
    s = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    si = np.linalg.inv(s)
    t = [s @ np.diag(e) @ si for e in evals]
    joint = joint_diagonal(t, seed=1)
    # rows are joint eigenvalue pairs, in some common order
    got = sorted(joint[:, 0])
    want = sorted(evals[0])
    assert np.allclose(sorted(np.round(got, 8)), sorted(np.round(want, 8)), atol=1e-7)
