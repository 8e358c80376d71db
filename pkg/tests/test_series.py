import math
import random

import pytest

from hquat import (
    J,
    MajorantViolatedError,
    NonRealCoefficientError,
    PowerSeries,
    Quaternion,
    RatioTestInconclusive,
    TermRuleMismatchError,
    ZERO,
    cos_coefficient,
    cos_series,
    evaluate,
    exp_coefficient,
    exp_series,
    general_term_check,
    geometric_series,
    inv_factorial,
    m_test,
    maclaurin_coeffs,
    maclaurin_extraction,
    parse,
    ratio_test,
    sin_coefficient,
    sin_cos_coefficient,
    sin_cos_series,
    sin_series,
)


def random_quat(rng, span):
    return Quaternion(*[rng.uniform(-span, span) for _ in range(4)])


# ---------------------------------------------------------------------------
# partial sums and evaluation
# ---------------------------------------------------------------------------


def test_partial_sum_examples():
    s = exp_series()
    for n in (0, 3, 10, 30):
        assert s.partial_sum(ZERO, n) == Quaternion.from_real(1.0)
    assert PowerSeries((5.0,)).partial_sum(Quaternion(1, 2, 3, 4), 0) == Quaternion.from_real(5.0)

    p = Quaternion(1, 0, 1, 0)
    want = evaluate(parse("exp(p)"), p)
    got = s.partial_sum(p, 30)
    assert (got - want).norm() <= 1e-10 * max(1.0, want.norm())


def test_evaluate_against_closed_form():
    p = J * 0.5
    res = sin_series().evaluate(p, tol=1e-12, max_terms=100)
    want = evaluate(parse("sin(p)"), p)
    assert res.converged
    assert (res.value - want).norm() <= 1e-10


def test_evaluate_divergent_geometric():
    p = Quaternion(2, 0, 0, 0)
    res = geometric_series().evaluate(p, tol=1e-12, max_terms=200)
    assert not res.converged
    assert res.terms_used == 200
    # the flagged result still carries the last partial sum
    assert res.value.x > 1e59


def test_evaluate_at_zero_stops_quickly():
    res = cos_series().evaluate(ZERO, tol=1e-12, max_terms=100)
    assert res.converged
    assert res.value == Quaternion.from_real(1.0)
    assert res.terms_used <= 5


def test_evaluate_runs_out_of_coefficients():
    s = PowerSeries((1.0, 1.0, 1.0))
    res = s.evaluate(Quaternion.from_real(0.9), tol=1e-12, max_terms=50)
    assert not res.converged
    assert res.terms_used == 3


def test_coefficient_access():
    s = PowerSeries((1.0, 2.0))
    assert s.coefficient(1) == 2.0
    with pytest.raises(IndexError):
        s.coefficient(2)
    with pytest.raises(IndexError):
        s.coefficient(-1)
    gen = PowerSeries((), generator=lambda l: 1.0 / (l + 1))
    assert gen.coefficient(9) == 0.1


def test_powerseries_rejects_nonfinite():
    with pytest.raises(ValueError):
        PowerSeries((1.0, float("nan")))


# ---------------------------------------------------------------------------
# ratio test
# ---------------------------------------------------------------------------


def test_ratio_test_entire_series():
    for s in (exp_series(64), sin_series(64), cos_series(64), sin_cos_series(80)):
        rep = ratio_test(s, n_tail=12)
        assert rep.monotone_decreasing
        assert rep.L_estimate < 1e-8
        assert math.isinf(rep.radius)
        assert rep.n_used == 12


def test_ratio_test_geometric():
    rep = ratio_test(geometric_series(48))
    assert abs(rep.radius - 1.0) <= 1e-9
    assert abs(rep.L_estimate - 1.0) <= 1e-9
    assert not rep.term_test_pass  # terms do not decay on the unit sphere


def test_ratio_test_with_point():
    rep = ratio_test(exp_series(64), point=Quaternion(1, 1, 1, 1))
    assert rep.L_at_point is not None
    assert rep.L_at_point < 1e-7
    assert rep.term_test_pass


def test_ratio_test_finite_radius_scaled_geometric():
    s = PowerSeries(tuple(2.0**-l for l in range(40)))
    rep = ratio_test(s)
    assert abs(rep.radius - 2.0) <= 1e-9


def test_ratio_test_inconclusive_on_oscillation():
    coeffs = tuple((2.0 if l % 2 else 1.0) for l in range(40))
    with pytest.raises(RatioTestInconclusive):
        ratio_test(PowerSeries(coeffs))


def test_ratio_test_needs_enough_nonzero_coefficients():
    with pytest.raises(ValueError):
        ratio_test(PowerSeries((1.0, 1.0, 1.0)), n_tail=12)


# ---------------------------------------------------------------------------
# majorant test
# ---------------------------------------------------------------------------


def test_m_test_sin_cos_majorant():
    # term i of the product series is bounded by 5^i rho^(2i+1)/(2i+1)!
    for rho in (0.5, 1.5, 3.0):
        cert = m_test(
            sin_cos_series(90),
            rho,
            lambda i, r=rho: 5.0**i * r ** (2 * i + 1) / math.factorial(2 * i + 1),
        )
        assert cert.passed
        assert cert.majorant_tail_ratio < 1.0


def test_m_test_geometric_equality_case():
    cert = m_test(geometric_series(40), 0.5, lambda i: 0.5**i)
    assert cert.passed


def test_m_test_violation_index():
    with pytest.raises(MajorantViolatedError) as exc:
        m_test(geometric_series(40), 2.0, lambda i: 0.5**i)
    assert exc.value.index == 1


def test_m_test_divergent_majorant():
    cert = m_test(geometric_series(40), 0.5, lambda i: 1.0)
    assert not cert.passed
    assert "ratio test" in cert.reason


# ---------------------------------------------------------------------------
# termwise differentiation
# ---------------------------------------------------------------------------


def test_differentiate_exp_fixed_point():
    s = exp_series(20)
    d = s.differentiate()
    for l in range(20):
        assert math.isclose(d.coeffs[l], s.coeffs[l], rel_tol=1e-15)


def test_differentiate_sin_cos_pair():
    n = 21
    dsin = sin_series(n).differentiate()
    for l in range(n):
        assert math.isclose(dsin.coeffs[l], cos_coefficient(l), rel_tol=1e-15, abs_tol=0.0)
    dcos = cos_series(n).differentiate()
    for l in range(n):
        assert math.isclose(dcos.coeffs[l], -sin_coefficient(l), rel_tol=1e-15, abs_tol=0.0)


def test_differentiate_transforms_generator_and_keeps_hint():
    s = exp_series(4)
    d = s.differentiate()
    assert d.radius_hint == s.radius_hint
    # beyond the stored prefix the transformed rule takes over
    assert math.isclose(d.coefficient(10), 11 * exp_coefficient(11), rel_tol=1e-15)


def test_termwise_differentiation_matches_closed_form_derivative():
    rng = random.Random(32)
    pairs = [
        (exp_series(), parse("exp(p)")),
        (sin_series(), parse("cos(p)")),
    ]
    for series, derivative_tree in pairs:
        d = series.differentiate()
        for _ in range(30):
            p = random_quat(rng, 1.5)
            got = d.evaluate(p, tol=1e-13, max_terms=120).value
            want = evaluate(derivative_tree, p)
            assert (got - want).norm() <= 1e-8 * max(1.0, want.norm())


# ---------------------------------------------------------------------------
# Maclaurin extraction
# ---------------------------------------------------------------------------


def test_exp_coefficients():
    ser = maclaurin_coeffs(parse("exp(p)"), 6, rho=1.0, samples=64)
    want = [1.0, 1.0, 1 / 2, 1 / 6, 1 / 24, 1 / 120, 1 / 720]
    for got, expect in zip(ser.coeffs, want):
        assert abs(got - expect) <= 1e-10


def test_sin_cos_product_coefficients():
    ser = maclaurin_coeffs(parse("sin(p)*cos(p)"), 9, rho=0.8, samples=128)
    want = [0.0, 1.0, 0.0, -4 / math.factorial(3), 0.0, 16 / math.factorial(5), 0.0, -64 / math.factorial(7), 0.0, 256 / math.factorial(9)]
    for got, expect in zip(ser.coeffs, want):
        assert abs(got - expect) <= 1e-9


def test_extraction_stability_across_radii():
    results = [maclaurin_coeffs(parse("exp(p)"), 7, rho=rho).coeffs for rho in (0.5, 0.8, 1.0)]
    for a in results:
        for b in results:
            for x, y in zip(a, b):
                assert abs(x - y) <= 1e-8


def test_linear_combination_of_coefficients():
    combo = maclaurin_coeffs(parse("2*sin(p) + 3*cos(p)"), 9).coeffs
    for l, got in enumerate(combo):
        want = 2 * sin_coefficient(l) + 3 * cos_coefficient(l)
        assert abs(got - want) <= 1e-9


def test_nonreal_rejection():
    with pytest.raises(NonRealCoefficientError) as exc:
        maclaurin_coeffs(parse("j*exp(p)"), 5)
    # the restriction of j*exp lives entirely in the second component
    assert exc.value.index == 0
    assert exc.value.residue > 0.5

    with pytest.raises(NonRealCoefficientError):
        maclaurin_coeffs(parse("i*exp(p)"), 5)


def test_extraction_preconditions():
    with pytest.raises(ValueError):
        maclaurin_extraction(parse("exp(p)"), 5, samples=16)  # fewer than 4*(n+1)
    with pytest.raises(ValueError):
        maclaurin_extraction(parse("exp(p)"), -1)
    with pytest.raises(ValueError):
        maclaurin_extraction(parse("exp(p)"), 3, rho=0.0)


def test_denoised_coefficients_zero_noise_entries():
    ext = maclaurin_extraction(parse("sin(p)"), 24, rho=1.0)
    den = ext.denoised_coeffs()
    assert all(den[l] == 0.0 for l in range(0, len(den), 2))
    assert den[-1] != 0.0


# ---------------------------------------------------------------------------
# general term rules
# ---------------------------------------------------------------------------


def test_rule_checks():
    ext = maclaurin_extraction(parse("sin(p)*cos(p)"), 17, rho=3.0, samples=256)
    assert general_term_check(sin_cos_coefficient, ext.coeffs) == 18

    assert general_term_check(exp_coefficient, exp_series(20).coeffs) == 21

    with pytest.raises(TermRuleMismatchError) as exc:
        general_term_check(lambda l: inv_factorial(l), sin_series(10).coeffs)
    assert exc.value.index == 0


def test_r17_value():
    ext = maclaurin_extraction(parse("sin(p)*cos(p)"), 17, rho=3.0, samples=256)
    want = 65536 / math.factorial(17)
    assert abs(ext.coeffs[17] - want) <= 1e-9 * want


def test_product_series_is_half_of_doubled_sine():
    # coefficient identity: (-1)^l 4^l/(2l+1)! == 2^(2l+1) (-1)^l / (2 (2l+1)!)
    for l in range(30):
        lhs = sin_cos_coefficient(2 * l + 1)
        rhs = 2.0 ** (2 * l + 1) * (-1.0) ** l / (2.0 * math.factorial(2 * l + 1))
        assert math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-300)


def test_series_match_closed_forms():
    rng = random.Random(33)
    catalog = [
        (exp_series(), parse("exp(p)")),
        (sin_series(), parse("sin(p)")),
        (cos_series(), parse("cos(p)")),
        (sin_cos_series(), parse("sin(p)*cos(p)")),
    ]
    for series, tree in catalog:
        for _ in range(25):
            p = random_quat(rng, 1.0)
            got = series.evaluate(p, tol=1e-12, max_terms=200)
            want = evaluate(tree, p)
            assert got.converged
            assert (got.value - want).norm() <= 1e-9 * max(1.0, want.norm())
