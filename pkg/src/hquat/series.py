"""Quaternionic power series with real coefficients.

A series sum_l r_l p^l is held as a finite coefficient prefix plus an
optional closed-form rule l -> r_l for the tail.  Powers of one quaternion
commute with each other and with real scalars, so partial sums can be
evaluated by Horner's scheme exactly as over the complex numbers.

Convergence machinery:

* ratio test over the trailing nonzero coefficients, with zero gaps folded
  in as per-power block ratios (the g-th root of the ratio across a gap g);
* a majorant (M-) test certifying uniform and absolute convergence on a
  closed ball;
* Maclaurin coefficient extraction by sampling the restriction of the
  function to the complex plane (z = u = 0) on a circle and taking discrete
  Fourier coefficients.  Coefficients of a holomorphic series are real, so
  any imaginary or second-component residue above tolerance signals a
  non-holomorphic input.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .functions import FuncExpr, evaluate
from .quaternion import ONE, ZERO, Quaternion


class RatioTestInconclusive(ArithmeticError):
    """Ratio sequence oscillates too much to estimate a limit."""

    def __init__(self, spread: float):
        super().__init__(f"ratio sequence oscillates beyond 10% relative spread ({spread:.3g})")
        self.spread = spread


class MajorantViolatedError(ValueError):
    """A series term exceeds its majorant."""

    def __init__(self, index: int):
        super().__init__(f"majorant violated at term index {index}")
        self.index = index


class NonRealCoefficientError(ValueError):
    """Extracted coefficient has a non-real residue above tolerance."""

    def __init__(self, index: int, residue: float):
        super().__init__(f"non-real coefficient residue {residue:.3g} at index {index}")
        self.index = index
        self.residue = residue


class TermRuleMismatchError(ValueError):
    """Closed-form term rule disagrees with a coefficient."""

    def __init__(self, index: int, expected: float, actual: float):
        super().__init__(f"term rule mismatch at index {index}: rule {expected!r}, coefficient {actual!r}")
        self.index = index
        self.expected = expected
        self.actual = actual


@dataclass(frozen=True)
class SeriesEvaluation:
    value: Quaternion
    terms_used: int
    converged: bool


@dataclass(frozen=True)
class PowerSeries:
    """Real-coefficient power series sum_l r_l p^l."""

    coeffs: tuple[float, ...]
    generator: Callable[[int], float] | None = None
    radius_hint: float | None = None

    def __post_init__(self) -> None:
        vals = tuple(float(c) for c in self.coeffs)
        if any(not math.isfinite(c) for c in vals):
            raise ValueError("power series coefficients must be finite reals")
        object.__setattr__(self, "coeffs", vals)

    def coefficient(self, l: int) -> float:
        if l < 0:
            raise IndexError("negative coefficient index")
        if l < len(self.coeffs):
            return self.coeffs[l]
        if self.generator is not None:
            return float(self.generator(l))
        raise IndexError(f"coefficient {l} beyond stored length {len(self.coeffs)} and no generator")

    def partial_sum(self, p: Quaternion, n: int) -> Quaternion:
        """Horner evaluation of sum_{l<=n} r_l p^l."""
        acc = Quaternion.from_real(self.coefficient(n))
        for l in range(n - 1, -1, -1):
            acc = acc * p + self.coefficient(l)
        return acc

    def evaluate(self, p: Quaternion, tol: float = 1e-12, max_terms: int = 200) -> SeriesEvaluation:
        """Sum terms until |r_l p^l| < tol for 3 consecutive l (term-test
        heuristic), or give up at max_terms / coefficient exhaustion with
        converged=False and the last partial sum."""
        if tol <= 0.0:
            raise ValueError("tolerance must be positive")
        acc = ZERO
        power = ONE
        pnorm = p.norm()
        power_mag = 1.0
        streak = 0
        used = 0
        for l in range(max_terms):
            try:
                c = self.coefficient(l)
            except IndexError:
                break
            acc = acc + power * c
            used = l + 1
            if abs(c) * power_mag < tol:
                streak += 1
                if streak >= 3:
                    return SeriesEvaluation(acc, used, True)
            else:
                streak = 0
            power = power * p
            power_mag *= pnorm
        return SeriesEvaluation(acc, used, False)

    def differentiate(self) -> PowerSeries:
        """Termwise derivative: coefficients (l+1) r_{l+1}.

        The convergence radius of the derivative is at least that of the
        original series; the hint is carried over unchanged.
        """
        new_coeffs = tuple((l + 1) * self.coeffs[l + 1] for l in range(len(self.coeffs) - 1))
        gen = self.generator
        new_gen = (lambda l, g=gen: (l + 1) * g(l + 1)) if gen is not None else None
        return PowerSeries(new_coeffs, new_gen, self.radius_hint)


# ---------------------------------------------------------------------------
# Catalog coefficient rules and series
# ---------------------------------------------------------------------------

_MAX_FLOAT_FACTORIAL = 170  # 171! does not fit in a double


def inv_factorial(l: int) -> float:
    """1/l! in double precision; exactly rounded up to l=170, 0 beyond."""
    if l <= _MAX_FLOAT_FACTORIAL:
        return 1.0 / math.factorial(l)
    return 0.0


def exp_coefficient(l: int) -> float:
    return inv_factorial(l)


def sin_coefficient(l: int) -> float:
    if l % 2 == 0:
        return 0.0
    return (-1.0) ** ((l - 1) // 2) * inv_factorial(l)


def cos_coefficient(l: int) -> float:
    if l % 2 == 1:
        return 0.0
    return (-1.0) ** (l // 2) * inv_factorial(l)


def sin_cos_coefficient(l: int) -> float:
    """Coefficients of the sin*cos product series: odd l carry (-1)^m 4^m / l!
    with m = (l-1)/2, even l vanish."""
    if l % 2 == 0:
        return 0.0
    m = (l - 1) // 2
    if l > _MAX_FLOAT_FACTORIAL:
        return 0.0
    return (-1.0) ** m * float(4**m) * inv_factorial(l)


def geometric_coefficient(l: int) -> float:
    return 1.0


def exp_series(n: int = 32) -> PowerSeries:
    return PowerSeries(tuple(exp_coefficient(l) for l in range(n + 1)), exp_coefficient, math.inf)


def sin_series(n: int = 33) -> PowerSeries:
    return PowerSeries(tuple(sin_coefficient(l) for l in range(n + 1)), sin_coefficient, math.inf)


def cos_series(n: int = 32) -> PowerSeries:
    return PowerSeries(tuple(cos_coefficient(l) for l in range(n + 1)), cos_coefficient, math.inf)


def sin_cos_series(n: int = 35) -> PowerSeries:
    return PowerSeries(tuple(sin_cos_coefficient(l) for l in range(n + 1)), sin_cos_coefficient, math.inf)


def geometric_series(n: int = 32) -> PowerSeries:
    return PowerSeries(tuple(1.0 for _ in range(n + 1)), geometric_coefficient, 1.0)


# ---------------------------------------------------------------------------
# Ratio test
# ---------------------------------------------------------------------------

_FLAT_SPREAD = 0.1
_INFINITE_RADIUS_L = 1e-8
_EXTRAPOLATION_HORIZON = 1e12


@dataclass(frozen=True)
class ConvergenceReport:
    """Evidence and verdict of the ratio test.

    ``ratios`` are per-power magnitude ratios of consecutive nonzero
    coefficients (gap g folded in as a g-th root), at the powers ``indices``.
    ``L_estimate`` is the estimated limit of that sequence: the tail mean
    when the tail is flat, otherwise a log-log extrapolation evaluated at a
    fixed large index.  The radius is 1/L_estimate, reported infinite when
    the estimate falls below 1e-8 with a monotonically decreasing tail.
    """

    L_estimate: float
    L_at_point: float | None
    radius: float
    term_test_pass: bool
    monotone_decreasing: bool
    spread: float
    ratios: tuple[float, ...]
    indices: tuple[int, ...]
    n_used: int


def _fit_loglog(indices: tuple[int, ...], values: tuple[float, ...]) -> tuple[float, float]:
    xs = [math.log(i) for i in indices]
    ys = [math.log(v) for v in values]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx if sxx > 0 else 0.0
    intercept = my - slope * mx
    return intercept, slope


def ratio_test(
    s: PowerSeries,
    n_tail: int = 12,
    point: Quaternion | None = None,
    n_terms: int | None = None,
) -> ConvergenceReport:
    """Estimate the d'Alembert limit L and the convergence radius 1/L.

    Raises RatioTestInconclusive when the trailing ratios oscillate beyond
    10% relative spread without a monotone trend.
    """
    if n_tail < 2:
        raise ValueError("need at least 2 trailing ratios")
    limit = n_terms
    if limit is None:
        limit = len(s.coeffs) if s.generator is None else max(len(s.coeffs), 64)
    nonzero: list[tuple[int, float]] = []
    for l in range(limit):
        try:
            c = s.coefficient(l)
        except IndexError:
            break
        if c != 0.0:
            nonzero.append((l, abs(c)))
    if len(nonzero) < n_tail + 1:
        raise ValueError(f"need {n_tail + 1} nonzero coefficients, found {len(nonzero)}")

    ratios: list[float] = []
    indices: list[int] = []
    for (l1, c1), (l2, c2) in zip(nonzero, nonzero[1:]):
        gap = l2 - l1
        ratios.append((c2 / c1) ** (1.0 / gap))
        indices.append(l2)
    tail_r = tuple(ratios[-n_tail:])
    tail_i = tuple(indices[-n_tail:])

    mean = sum(tail_r) / len(tail_r)
    spread = (max(tail_r) - min(tail_r)) / mean if mean > 0 else 0.0
    monotone_dec = all(b <= a * (1.0 + 1e-12) for a, b in zip(tail_r, tail_r[1:]))
    monotone_inc = all(b >= a * (1.0 - 1e-12) for a, b in zip(tail_r, tail_r[1:]))

    if spread <= _FLAT_SPREAD:
        L = mean
    elif monotone_dec or monotone_inc:
        intercept, slope = _fit_loglog(tail_i, tail_r)
        L = math.exp(min(700.0, intercept + slope * math.log(_EXTRAPOLATION_HORIZON)))
    else:
        raise RatioTestInconclusive(spread)

    radius = math.inf if (L < _INFINITE_RADIUS_L and monotone_dec) else (math.inf if L == 0.0 else 1.0 / L)

    pn = point.norm() if point is not None else None
    terms = [c * pn**l for l, c in nonzero[-(n_tail + 1):]] if pn is not None else [c for _, c in nonzero[-(n_tail + 1):]]
    term_test = all(b <= a * (1.0 + 1e-12) for a, b in zip(terms, terms[1:])) and terms[-1] < terms[0]

    return ConvergenceReport(
        L_estimate=L,
        L_at_point=(L * pn) if pn is not None else None,
        radius=radius,
        term_test_pass=term_test,
        monotone_decreasing=monotone_dec,
        spread=spread,
        ratios=tail_r,
        indices=tail_i,
        n_used=len(tail_r),
    )


# ---------------------------------------------------------------------------
# Majorant (M-) test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MTestCertificate:
    passed: bool
    terms_checked: int
    ball_radius: float
    majorant_tail_ratio: float
    majorant_partial_sum: float
    reason: str


def m_test(
    s: PowerSeries,
    ball_radius: float,
    majorant: Callable[[int], float],
    n_terms: int = 40,
) -> MTestCertificate:
    """Check |r_l| R^l <= M_i termwise (i counts nonzero terms) and that the
    majorant series passes its own ratio test; a pass certifies uniform and
    absolute convergence on the closed ball of the given radius.

    Raises MajorantViolatedError at the first violated term index.
    """
    if ball_radius <= 0.0:
        raise ValueError("ball radius must be positive")
    bounds: list[float] = []
    ms: list[float] = []
    i = 0
    l = 0
    while i < n_terms:
        try:
            c = s.coefficient(l)
        except IndexError:
            break
        if c != 0.0:
            bound = abs(c) * ball_radius**l
            m = majorant(i)
            if bound > m * (1.0 + 1e-12):
                raise MajorantViolatedError(i)
            bounds.append(bound)
            ms.append(m)
            i += 1
        l += 1

    if not ms:
        return MTestCertificate(False, 0, ball_radius, math.nan, 0.0, "no nonzero terms to check")
    tail = [b / a for a, b in zip(ms, ms[1:]) if a > 0.0][-5:]
    tail_ratio = max(tail) if tail else 0.0
    if tail_ratio >= 1.0:
        return MTestCertificate(
            False, len(ms), ball_radius, tail_ratio, sum(ms), "majorant series fails its ratio test"
        )
    return MTestCertificate(True, len(ms), ball_radius, tail_ratio, sum(ms), "majorant summable, all terms bounded")


# ---------------------------------------------------------------------------
# Maclaurin coefficient extraction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MaclaurinExtraction:
    """Raw circle-sampling output: real parts and non-real residues.

    ``noise_floors[k]`` estimates the rounding noise of coefficient k
    (machine epsilon times the largest sampled magnitude, amplified by the
    1/rho^k rescaling); extracted values at or below it carry no signal.
    """

    coeffs: tuple[float, ...]
    nonreal_residues: tuple[float, ...]
    rho: float
    samples: int
    noise_floors: tuple[float, ...]

    def denoised_coeffs(self, factor: float = 10.0) -> tuple[float, ...]:
        """Coefficients with sub-noise entries zeroed and trailing zeros cut."""
        vals = [0.0 if abs(c) <= factor * f else c for c, f in zip(self.coeffs, self.noise_floors)]
        while vals and vals[-1] == 0.0:
            vals.pop()
        return tuple(vals)


def maclaurin_extraction(
    f: FuncExpr,
    n: int,
    rho: float = 0.8,
    samples: int | None = None,
) -> MaclaurinExtraction:
    """Fourier coefficients of f restricted to the circle |a| = rho, z = u = 0.

    The k-th coefficient estimate is (1/(N rho^k)) sum_m f(rho e^{i th_m})
    e^{-ik th_m}; for a holomorphic function this is the k-th series
    coefficient.  The residue of index k collects the imaginary part of the
    first doubling component and the magnitude of the second one.
    """
    if n < 0:
        raise ValueError("coefficient count must be >= 0")
    if rho <= 0.0:
        raise ValueError("circle radius must be positive")
    N = samples if samples is not None else max(64, 8 * (n + 1))
    if N < 4 * (n + 1):
        raise ValueError(f"need at least {4 * (n + 1)} samples for {n + 1} coefficients, got {N}")

    values: list[tuple[float, complex, complex]] = []
    vmax = 0.0
    for m in range(N):
        theta = 2.0 * math.pi * m / N
        point = Quaternion(rho * math.cos(theta), rho * math.sin(theta), 0.0, 0.0)
        a, b = evaluate(f, point).to_cd()
        vmax = max(vmax, abs(a), abs(b))
        values.append((theta, a, b))

    noise_unit = math.sqrt(N) * 2.220446049250313e-16 * vmax
    coeffs: list[float] = []
    residues: list[float] = []
    floors: list[float] = []
    for k in range(n + 1):
        s1 = 0.0j
        s2 = 0.0j
        for theta, a, b in values:
            w = cmath.exp(complex(0.0, -k * theta))
            s1 += a * w
            s2 += b * w
        scale = 1.0 / (N * rho**k)
        c1 = s1 * scale
        c2 = s2 * scale
        coeffs.append(c1.real)
        residues.append(math.hypot(c1.imag, abs(c2)))
        floors.append(noise_unit / rho**k)
    return MaclaurinExtraction(tuple(coeffs), tuple(residues), rho, N, tuple(floors))


def maclaurin_coeffs(
    f: FuncExpr,
    n: int,
    rho: float = 0.8,
    samples: int | None = None,
    nonreal_tol: float = 1e-8,
) -> PowerSeries:
    """Extract r_0..r_n, enforcing coefficient realness.

    Raises NonRealCoefficientError at the first index whose non-real residue
    exceeds ``nonreal_tol`` (the signature of a non-holomorphic input, e.g.
    a function multiplied by a non-real constant).
    """
    ext = maclaurin_extraction(f, n, rho, samples)
    for k, res in enumerate(ext.nonreal_residues):
        if res > nonreal_tol:
            raise NonRealCoefficientError(k, res)
    return PowerSeries(ext.coeffs)


def general_term_check(
    rule: Callable[[int], float],
    coeffs: tuple[float, ...] | list[float],
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
) -> int:
    """Verify a closed-form rule l -> r_l against coefficients index by index.

    Returns the number of indices checked; raises TermRuleMismatchError at
    the first disagreement (absolute floor covers exact-zero coefficients).
    """
    for l, actual in enumerate(coeffs):
        expected = float(rule(l))
        if not math.isclose(expected, actual, rel_tol=rel_tol, abs_tol=abs_tol):
            raise TermRuleMismatchError(l, expected, actual)
    return len(coeffs)
