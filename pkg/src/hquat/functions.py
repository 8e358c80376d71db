"""Quaternionic function trees and their pointwise evaluation.

Functions are expression trees over one quaternionic variable ``p`` built
from real constants, +, -, *, /, non-negative integer powers and the
transcendental heads exp, sin, cos.  Quaternion-valued constants (i, j, k)
are admitted only so that non-holomorphic counterexamples can be expressed;
:func:`has_nonreal_constant` flags such trees.

Transcendental heads are evaluated through the polar split q = x + V*r of
their argument (V = sqrt(y^2+z^2+u^2), r a purely imaginary unit quaternion
with r^2 = -1): f(x + V*r) is the complex value f(x + V*i) with i replaced
by r.  In particular exp(p) = e^x * (cos V + r sin V), and sin/cos follow
from the exponential the same way as over the complex numbers.

For the heads applied directly to ``p``, :func:`phi_components` returns the
closed-form doubling components; the factors sin(V)/V and sinh(V)/V that
appear there are degenerate at V = 0 and are switched to degree-6 Taylor
polynomials below V = 1e-4 (their limits at 0 are 1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .quaternion import I, J, K, ONE, Quaternion, ZeroDivisorError


class EvaluationOverflowError(ArithmeticError):
    """An intermediate value exceeded the double-precision range."""


# ---------------------------------------------------------------------------
# Expression trees
# ---------------------------------------------------------------------------


class FuncExpr:
    """Base class for nodes of a quaternionic function expression."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(FuncExpr):
    """The independent quaternionic variable p."""


@dataclass(frozen=True)
class RealConst(FuncExpr):
    value: float

    def __post_init__(self) -> None:
        v = float(self.value)
        if not math.isfinite(v):
            raise ValueError(f"non-finite real constant {self.value!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class QuatConst(FuncExpr):
    """Quaternion constant; non-real values break holomorphy by design."""

    value: Quaternion


@dataclass(frozen=True)
class Add(FuncExpr):
    lhs: FuncExpr
    rhs: FuncExpr


@dataclass(frozen=True)
class Sub(FuncExpr):
    lhs: FuncExpr
    rhs: FuncExpr


@dataclass(frozen=True)
class Mul(FuncExpr):
    lhs: FuncExpr
    rhs: FuncExpr


@dataclass(frozen=True)
class Div(FuncExpr):
    """Right division lhs * rhs**-1."""

    lhs: FuncExpr
    rhs: FuncExpr


@dataclass(frozen=True)
class IntPow(FuncExpr):
    base: FuncExpr
    exponent: int

    def __post_init__(self) -> None:
        if not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError(f"integer power exponent must be >= 0, got {self.exponent!r}")


@dataclass(frozen=True)
class Exp(FuncExpr):
    arg: FuncExpr


@dataclass(frozen=True)
class Sin(FuncExpr):
    arg: FuncExpr


@dataclass(frozen=True)
class Cos(FuncExpr):
    arg: FuncExpr


P = Var()

Number = Union[int, float]


def has_nonreal_constant(expr: FuncExpr) -> bool:
    """True when the tree contains a quaternion constant with i/j/k parts."""
    if isinstance(expr, QuatConst):
        q = expr.value
        return q.y != 0.0 or q.z != 0.0 or q.u != 0.0
    if isinstance(expr, (Add, Sub, Mul, Div)):
        return has_nonreal_constant(expr.lhs) or has_nonreal_constant(expr.rhs)
    if isinstance(expr, IntPow):
        return has_nonreal_constant(expr.base)
    if isinstance(expr, (Exp, Sin, Cos)):
        return has_nonreal_constant(expr.arg)
    return False


def conjugate_expr() -> FuncExpr:
    """Tree evaluating to conj(p), via conj(p) = -(p + ipi + jpj + kpk)/2.

    Contains quaternion constants, so it is flagged non-real; it is the
    canonical expression expected to fail the holomorphy check.
    """
    half = RealConst(-0.5)
    terms: FuncExpr = P
    for unit in (I, J, K):
        c = QuatConst(unit)
        terms = Add(terms, Mul(Mul(c, P), c))
    return Mul(half, terms)


# ---------------------------------------------------------------------------
# Polar decomposition and scalar extension
# ---------------------------------------------------------------------------


class PolarDecomp(NamedTuple):
    """p = x + v*r with |r| = 1, r purely imaginary; r is None when v = 0."""

    x: float
    v: float
    r: Quaternion | None


def polar(p: Quaternion) -> PolarDecomp:
    """Split p into real part and imaginary magnitude/direction."""
    v = math.sqrt(p.y * p.y + p.z * p.z + p.u * p.u)
    if v == 0.0:
        return PolarDecomp(p.x, 0.0, None)
    return PolarDecomp(p.x, v, Quaternion(0.0, p.y / v, p.z / v, p.u / v))


def _lift(fn, q: Quaternion) -> Quaternion:
    """Apply a complex elementary function along the imaginary axis of q."""
    x, v, r = polar(q)
    w = fn(complex(x, v))
    if r is None:
        return Quaternion.from_real(w.real)
    return Quaternion(w.real, r.y * w.imag, r.z * w.imag, r.u * w.imag)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate(expr: FuncExpr, p: Quaternion) -> Quaternion:
    """Evaluate the function tree at the quaternion point p.

    Raises ZeroDivisorError for division by a numerically zero value and
    EvaluationOverflowError when intermediates leave the double range.
    """
    try:
        return _eval(expr, p)
    except OverflowError as exc:
        raise EvaluationOverflowError(str(exc)) from exc
    except ValueError as exc:
        # Quaternion constructors reject inf/nan produced by float arithmetic.
        raise EvaluationOverflowError(str(exc)) from exc


def _eval(expr: FuncExpr, p: Quaternion) -> Quaternion:
    if isinstance(expr, Var):
        return p
    if isinstance(expr, RealConst):
        return Quaternion.from_real(expr.value)
    if isinstance(expr, QuatConst):
        return expr.value
    if isinstance(expr, Add):
        return _eval(expr.lhs, p) + _eval(expr.rhs, p)
    if isinstance(expr, Sub):
        return _eval(expr.lhs, p) - _eval(expr.rhs, p)
    if isinstance(expr, Mul):
        return _eval(expr.lhs, p) * _eval(expr.rhs, p)
    if isinstance(expr, Div):
        return _eval(expr.lhs, p) / _eval(expr.rhs, p)
    if isinstance(expr, IntPow):
        base = _eval(expr.base, p)
        out = ONE
        for _ in range(expr.exponent):
            out = out * base
        return out
    if isinstance(expr, Exp):
        return _lift(cmath.exp, _eval(expr.arg, p))
    if isinstance(expr, Sin):
        return _lift(cmath.sin, _eval(expr.arg, p))
    if isinstance(expr, Cos):
        return _lift(cmath.cos, _eval(expr.arg, p))
    raise TypeError(f"unknown expression node {expr!r}")


# ---------------------------------------------------------------------------
# Doubling-form components
# ---------------------------------------------------------------------------


class ComplexPair(NamedTuple):
    """Doubling components of a function value: value = phi1 + phi2*j."""

    phi1: complex
    phi2: complex


_SERIES_CUTOFF = 1e-4


def _sinc(v: float) -> float:
    """sin(v)/v, by Taylor polynomial below the cutoff (limit 1 at v=0)."""
    if abs(v) < _SERIES_CUTOFF:
        v2 = v * v
        return 1.0 - v2 / 6.0 + v2 * v2 / 120.0 - v2 * v2 * v2 / 5040.0
    return math.sin(v) / v


def _sinhc(v: float) -> float:
    """sinh(v)/v, by Taylor polynomial below the cutoff (limit 1 at v=0)."""
    if abs(v) < _SERIES_CUTOFF:
        v2 = v * v
        return 1.0 + v2 / 6.0 + v2 * v2 / 120.0 + v2 * v2 * v2 / 5040.0
    return math.sinh(v) / v


def _imag_magnitude(p: Quaternion) -> float:
    return math.sqrt(p.y * p.y + p.z * p.z + p.u * p.u)


def _phi_exp(p: Quaternion) -> ComplexPair:
    # exp(p) = e^x (cos V + r sin V); componentwise this is
    # phi1 = e^x cos V + i y e^x sinc V, phi2 = e^x sinc V * b.
    v = _imag_magnitude(p)
    ex = math.exp(p.x)
    s = ex * _sinc(v)
    return ComplexPair(complex(ex * math.cos(v), p.y * s), complex(p.z * s, p.u * s))


def _phi_cos(p: Quaternion) -> ComplexPair:
    # cos(x + Vr) = cos x cosh V - r sin x sinh V.
    v = _imag_magnitude(p)
    ch = math.cosh(v)
    g = _sinhc(v) * math.sin(p.x)
    return ComplexPair(complex(ch * math.cos(p.x), -p.y * g), complex(-p.z * g, -p.u * g))


def _phi_sin(p: Quaternion) -> ComplexPair:
    # sin(x + Vr) = sin x cosh V + r cos x sinh V.
    v = _imag_magnitude(p)
    ch = math.cosh(v)
    g = _sinhc(v) * math.cos(p.x)
    return ComplexPair(complex(ch * math.sin(p.x), p.y * g), complex(p.z * g, p.u * g))


def phi_components(expr: FuncExpr, p: Quaternion) -> ComplexPair:
    """Doubling components of the function value at p.

    For exp/sin/cos applied directly to p the closed forms above are used;
    any other tree is evaluated and split.
    """
    if isinstance(expr, Exp) and isinstance(expr.arg, Var):
        return _phi_exp(p)
    if isinstance(expr, Sin) and isinstance(expr.arg, Var):
        return _phi_sin(p)
    if isinstance(expr, Cos) and isinstance(expr.arg, Var):
        return _phi_cos(p)
    a, b = evaluate(expr, p).to_cd()
    return ComplexPair(a, b)


def product_cd(fval: ComplexPair, gval: ComplexPair) -> ComplexPair:
    """Doubling-form product: re = f1 g1 - f2 conj(g2), im = f2 conj(g1) + f1 g2."""
    f1, f2 = fval
    g1, g2 = gval
    return ComplexPair(f1 * g1 - f2 * g2.conjugate(), f2 * g1.conjugate() + f1 * g2)


def commutator_residual(f: FuncExpr, g: FuncExpr, p: Quaternion) -> float:
    """|f(p)g(p) - g(p)f(p)|; vanishes for holomorphic pairs."""
    fv = evaluate(f, p)
    gv = evaluate(g, p)
    return (fv * gv - gv * fv).norm()
