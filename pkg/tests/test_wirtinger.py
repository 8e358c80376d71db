import math
import random

import pytest

from hquat import (
    Add,
    IntPow,
    Mul,
    P,
    QuatConst,
    Quaternion,
    RealConst,
    J,
    ZERO,
    check_holomorphy,
    conjugate_expr,
    evaluate,
    full_derivative,
    kth_derivative,
    parse,
    partials,
)
from hquat.wirtinger import InvalidPointError


def random_quat(rng, span=1.5, y_zero=False):
    return Quaternion(
        rng.uniform(-span, span),
        0.0 if y_zero else rng.uniform(-span, span),
        rng.uniform(-span, span),
        rng.uniform(-span, span),
    )


def random_poly(rng, degree=5):
    tree = RealConst(rng.uniform(-1, 1))
    for l in range(1, degree + 1):
        tree = Add(tree, Mul(RealConst(rng.uniform(-1, 1)), IntPow(P, l)))
    return tree


# ---------------------------------------------------------------------------
# partials
# ---------------------------------------------------------------------------


def test_partials_of_identity():
    rng = random.Random(21)
    for _ in range(20):
        p = random_quat(rng)
        t = partials(P, p)
        assert abs(t.dphi1_da - 1.0) <= 1e-9
        assert abs(t.dphi2_db - 1.0) <= 1e-9
        for other in (t.dphi1_dabar, t.dphi1_db, t.dphi1_dbbar, t.dphi2_da, t.dphi2_dabar, t.dphi2_dbbar):
            assert abs(other) <= 1e-9


def test_partials_of_conjugate():
    rng = random.Random(22)
    tree = conjugate_expr()
    for _ in range(20):
        p = random_quat(rng)
        t = partials(tree, p)
        assert abs(t.dphi1_dabar - 1.0) <= 1e-9
        assert abs(t.dphi1_da) <= 1e-9
        assert abs(t.dphi2_db + 1.0) <= 1e-9  # second component is -b


def test_partials_of_square_against_symbolic_table():
    # p^2 = (a^2 - b conj(b)) + (a + conj(a)) b j
    rng = random.Random(23)
    tree = parse("p^2")
    for _ in range(30):
        p = random_quat(rng)
        a, b = p.to_cd()
        t = partials(tree, p)
        scale = max(1.0, p.norm())
        assert abs(t.dphi1_da - 2 * a) <= 1e-8 * scale
        assert abs(t.dphi1_dabar) <= 1e-8 * scale
        assert abs(t.dphi1_db + b.conjugate()) <= 1e-8 * scale
        assert abs(t.dphi1_dbbar + b) <= 1e-8 * scale
        assert abs(t.dphi2_da - b) <= 1e-8 * scale
        assert abs(t.dphi2_dabar - b) <= 1e-8 * scale
        assert abs(t.dphi2_db - (a + a.conjugate())) <= 1e-8 * scale
        assert abs(t.dphi2_dbbar) <= 1e-8 * scale


def test_partials_of_exp_at_zero():
    t = partials(parse("exp(p)"), ZERO)
    assert abs(t.dphi1_da - 1.0) <= 1e-9
    assert abs(t.dphi1_dabar) <= 1e-9
    assert abs(t.dphi2_da) <= 1e-9


def test_partials_rejects_bad_step():
    with pytest.raises(ValueError):
        partials(P, ZERO, step=0.0)


# ---------------------------------------------------------------------------
# holomorphy check
# ---------------------------------------------------------------------------


def test_check_requires_slice_point():
    with pytest.raises(InvalidPointError):
        check_holomorphy(parse("exp(p)"), Quaternion(0.1, 0.2, 0.3, 0.4))


def test_catalog_functions_pass():
    rng = random.Random(24)
    trees = [parse(t) for t in ("exp(p)", "sin(p)", "cos(p)", "sin(p)*cos(p)", "p^4")]
    trees += [random_poly(rng) for _ in range(2)]
    for tree in trees:
        for _ in range(10):
            p3 = random_quat(rng, span=1.5, y_zero=True)
            aux = random_quat(rng, span=1.5)
            rep = check_holomorphy(tree, p3, tol=1e-6, aux_point=aux)
            assert rep.passed, (tree, p3, rep.main_residuals, rep.aux_residuals)
            assert all(rep.main_verdicts) and all(rep.aux_verdicts)


def test_default_aux_point_replaces_y():
    rep = check_holomorphy(parse("exp(p)"), Quaternion(0.3, 0.0, 0.4, 0.1))
    assert rep.aux_point == Quaternion(0.3, 0.5, 0.4, 0.1)
    assert rep.passed


def test_counterexamples_fail():
    rng = random.Random(25)
    for tree in (conjugate_expr(), parse("j*exp(p)")):
        for _ in range(5):
            p3 = random_quat(rng, span=1.5, y_zero=True)
            rep = check_holomorphy(tree, p3, tol=1e-6)
            assert max(rep.main_residuals) > 1e-2
            assert not rep.passed


def test_left_j_times_p_fails_only_the_auxiliary_system():
    # j*p = -conj(b) + conj(a) j happens to satisfy the main system on the
    # y=0 slice; the auxiliary identities reject it at any point
    rep = check_holomorphy(Mul(QuatConst(J), P), Quaternion(0.5, 0.0, -0.3, 0.8), tol=1e-6)
    assert max(rep.main_residuals) <= 1e-6
    assert max(rep.aux_residuals) > 1e-2
    assert not rep.passed


# ---------------------------------------------------------------------------
# full derivative
# ---------------------------------------------------------------------------


def test_full_derivative_identities():
    rng = random.Random(26)
    exp_t, sin_t, cos_t = parse("exp(p)"), parse("sin(p)"), parse("cos(p)")
    for _ in range(50):
        p = random_quat(rng)
        for tree, want in (
            (exp_t, evaluate(exp_t, p)),
            (sin_t, evaluate(cos_t, p)),
            (cos_t, -evaluate(sin_t, p)),
        ):
            got = full_derivative(tree, p)
            assert (got - want).norm() <= 1e-7 * max(1.0, want.norm())


def test_full_derivative_power_rule():
    rng = random.Random(27)
    tree = parse("p^3")
    for _ in range(20):
        p = random_quat(rng)
        want = evaluate(parse("3*p^2"), p)
        got = full_derivative(tree, p)
        assert (got - want).norm() <= 1e-7 * max(1.0, want.norm())


def test_full_derivative_linearity():
    rng = random.Random(28)
    sin_t, cos_t = parse("sin(p)"), parse("cos(p)")
    combo = parse("2*sin(p) + 3*cos(p)")
    for _ in range(30):
        p = random_quat(rng)
        lhs = full_derivative(combo, p)
        rhs = full_derivative(sin_t, p) * 2.0 + full_derivative(cos_t, p) * 3.0
        assert (lhs - rhs).norm() <= 1e-8 * max(1.0, rhs.norm())


def test_full_derivative_product_rule():
    rng = random.Random(29)
    sin_t, cos_t = parse("sin(p)"), parse("cos(p)")
    prod = Mul(sin_t, cos_t)
    for _ in range(30):
        p = random_quat(rng)
        lhs = full_derivative(prod, p)
        rhs = full_derivative(sin_t, p) * evaluate(cos_t, p) + evaluate(sin_t, p) * full_derivative(cos_t, p)
        assert (lhs - rhs).norm() <= 1e-6 * max(1.0, rhs.norm())


def test_stencil_is_second_order():
    rng = random.Random(30)
    tree = parse("exp(p)")
    ratios = []
    for _ in range(10):
        p = random_quat(rng)
        truth = evaluate(tree, p)
        r1 = (full_derivative(tree, p, step=1e-3) - truth).norm()
        r2 = (full_derivative(tree, p, step=5e-4) - truth).norm()
        ratios.append(r1 / r2)
    med = sorted(ratios)[len(ratios) // 2]
    assert 3.5 <= med <= 4.5


# ---------------------------------------------------------------------------
# k-th derivative
# ---------------------------------------------------------------------------


def test_kth_examples_at_origin():
    r = kth_derivative(parse("exp(p)"), ZERO, 3)
    assert r.method == "series"
    assert abs(r.value.x - 1.0) <= 1e-4

    r = kth_derivative(parse("p^3"), ZERO, 3)
    assert abs(r.value.x - 6.0) <= 1e-4

    r = kth_derivative(parse("sin(p)*cos(p)"), ZERO, 3)
    assert abs(r.value.x + 4.0) <= 1e-3


def test_kth_order_zero_and_one():
    p = Quaternion(0.3, -0.2, 0.5, 0.1)
    r0 = kth_derivative(parse("cos(p)"), p, 0)
    assert r0.method == "exact"
    assert r0.value == evaluate(parse("cos(p)"), p)

    r1 = kth_derivative(parse("cos(p)"), p, 1)
    want = -evaluate(parse("sin(p)"), p)
    assert r1.method == "stencil"
    assert (r1.value - want).norm() <= 1e-7 * max(1.0, want.norm())


def test_kth_paths_agree_where_both_apply():
    tree = parse("exp(p)")
    series = kth_derivative(tree, ZERO, 3, method="series")
    stencil = kth_derivative(tree, ZERO, 3, method="stencil")
    assert (series.value - stencil.value).norm() <= 5e-3
    # nested differencing at order 3 has crossed the accuracy cliff
    assert stencil.accuracy_warning
    assert stencil.truncation_estimate > 1e-4

    stencil2 = kth_derivative(tree, ZERO, 2, method="stencil")
    assert (stencil2.value - Quaternion.from_real(1.0)).norm() <= 1e-4
    assert not stencil2.accuracy_warning


def test_kth_power_rule_away_from_origin():
    rng = random.Random(31)
    for _ in range(10):
        p = random_quat(rng)
        r = kth_derivative(parse("p^2"), p, 2)
        assert r.method == "stencil"
        assert (r.value - Quaternion.from_real(2.0)).norm() <= 1e-8
        assert not r.accuracy_warning


def test_kth_preconditions():
    with pytest.raises(ValueError):
        kth_derivative(parse("exp(p)"), ZERO, -1)
    with pytest.raises(ValueError):
        kth_derivative(parse("exp(p)"), Quaternion.from_real(1.0), 5)  # stencil cliff
    with pytest.raises(ValueError):
        kth_derivative(parse("exp(p)"), Quaternion.from_real(1.0), 2, method="series")
    with pytest.raises(ValueError):
        kth_derivative(parse("exp(p)"), ZERO, 2, method="unknown")
    # any order is fine at the origin through the series route
    r = kth_derivative(parse("exp(p)"), ZERO, 7)
    assert abs(r.value.x - 1.0) <= 1e-6
