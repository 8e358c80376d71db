"""Numerical Wirtinger partials and quaternionic holomorphy checks.

The doubling components phi1, phi2 are treated as functions of the four real
coordinates (x, y, z, u).  With a = x + y*i and b = z + u*i, the partial
derivatives with respect to a, conj(a), b, conj(b) are the standard Wirtinger
combinations of coordinate derivatives,

    d/da       = (d/dx - i d/dy)/2        d/d(conj a) = (d/dx + i d/dy)/2
    d/db       = (d/dz - i d/du)/2        d/d(conj b) = (d/dz + i d/du)/2

with each coordinate derivative taken as a central difference on
:func:`hquat.functions.phi_components`.  Partials of conjugated component
functions are never differenced separately; they follow exactly from
d/d(conj s) conj(F) = conj(d/ds F).

A function is holomorphic in the sense checked here when its components
satisfy the generalized Cauchy-Riemann system evaluated on the y = 0 slice
(where a = conj(a) = x); the derivative stencil still perturbs y, only the
evaluation point lies on the slice.  Four auxiliary identities hold at
arbitrary points without that restriction and are reported separately.

The full quaternionic derivative (the one uniting the left and right
derivatives) has components phi1' = da(phi1) + dabar(phi1) and likewise for
phi2; the two Wirtinger sums collapse to plain d/dx derivatives, which is
what the nested higher-order stencils exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .functions import FuncExpr, evaluate, phi_components
from .quaternion import Quaternion


class InvalidPointError(ValueError):
    """The main system must be evaluated at a point with y = 0."""


@dataclass(frozen=True)
class PartialsTable:
    """Wirtinger partials of phi1 and phi2 at one point."""

    dphi1_da: complex
    dphi1_dabar: complex
    dphi1_db: complex
    dphi1_dbbar: complex
    dphi2_da: complex
    dphi2_dabar: complex
    dphi2_db: complex
    dphi2_dbbar: complex
    step: float
    point: Quaternion


_UNITS = (
    Quaternion(1.0, 0.0, 0.0, 0.0),
    Quaternion(0.0, 1.0, 0.0, 0.0),
    Quaternion(0.0, 0.0, 1.0, 0.0),
    Quaternion(0.0, 0.0, 0.0, 1.0),
)


def partials(f: FuncExpr, p: Quaternion, step: float = 1e-5) -> PartialsTable:
    """Central-difference Wirtinger partials with step scaled by max(1, |p|)."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    h = step * max(1.0, p.norm())
    d = []
    for e in _UNITS:
        hi = phi_components(f, p + e * h)
        lo = phi_components(f, p - e * h)
        d.append(((hi.phi1 - lo.phi1) / (2.0 * h), (hi.phi2 - lo.phi2) / (2.0 * h)))
    (dx1, dx2), (dy1, dy2), (dz1, dz2), (du1, du2) = d
    return PartialsTable(
        dphi1_da=(dx1 - 1j * dy1) / 2.0,
        dphi1_dabar=(dx1 + 1j * dy1) / 2.0,
        dphi1_db=(dz1 - 1j * du1) / 2.0,
        dphi1_dbbar=(dz1 + 1j * du1) / 2.0,
        dphi2_da=(dx2 - 1j * dy2) / 2.0,
        dphi2_dabar=(dx2 + 1j * dy2) / 2.0,
        dphi2_db=(dz2 - 1j * du2) / 2.0,
        dphi2_dbbar=(dz2 + 1j * du2) / 2.0,
        step=h,
        point=p,
    )


@dataclass(frozen=True)
class HolomorphyReport:
    """Residuals of the main (y = 0) system and the auxiliary identities.

    main_residuals, in order:
      1. |da(phi1) - dbbar(conj phi2)|      (left derivative)
      2. |da(phi2) + dbbar(conj phi1)|      (left derivative)
      3. |da(phi1) - db(phi2)|              (right derivative)
      4. |dabar(phi2) + dbbar(phi1)|        (right derivative)

    aux_residuals, evaluated at aux_point without the y = 0 restriction:
      a. |db(phi2) - dbbar(conj phi2)|
      b. |da(phi2) + dbbar(phi1)|
      c. |dabar(phi1) - da(conj phi1)|
      d. |dabar(phi2) + dbbar(conj phi1)|

    Residuals 1 and 3 both constrain da(phi1) and are reported separately:
    they encode agreement of the left and the right derivative.
    """

    point: Quaternion
    aux_point: Quaternion
    main_residuals: tuple[float, float, float, float]
    aux_residuals: tuple[float, float, float, float]
    tolerance: float

    @property
    def main_verdicts(self) -> tuple[bool, ...]:
        return tuple(r <= self.tolerance for r in self.main_residuals)

    @property
    def aux_verdicts(self) -> tuple[bool, ...]:
        return tuple(r <= self.tolerance for r in self.aux_residuals)

    @property
    def passed(self) -> bool:
        return all(self.main_verdicts) and all(self.aux_verdicts)


def _main_residuals(t: PartialsTable) -> tuple[float, float, float, float]:
    return (
        abs(t.dphi1_da - t.dphi2_db.conjugate()),
        abs(t.dphi2_da + t.dphi1_db.conjugate()),
        abs(t.dphi1_da - t.dphi2_db),
        abs(t.dphi2_dabar + t.dphi1_dbbar),
    )


def _aux_residuals(t: PartialsTable) -> tuple[float, float, float, float]:
    return (
        abs(t.dphi2_db - t.dphi2_db.conjugate()),
        abs(t.dphi2_da + t.dphi1_dbbar),
        abs(t.dphi1_dabar - t.dphi1_dabar.conjugate()),
        abs(t.dphi2_dabar + t.dphi1_db.conjugate()),
    )


def check_holomorphy(
    f: FuncExpr,
    point: Quaternion,
    tol: float = 1e-6,
    step: float = 1e-5,
    aux_point: Quaternion | None = None,
) -> HolomorphyReport:
    """Evaluate the holomorphy residuals of f.

    ``point`` must lie on the y = 0 slice (exactly); ``aux_point`` may be any
    quaternion and defaults to ``point`` with y replaced by 0.5.
    """
    if tol <= 0.0:
        raise ValueError("tolerance must be positive")
    if point.y != 0.0:
        raise InvalidPointError(f"main system requires y = 0, got y = {point.y!r}")
    if aux_point is None:
        aux_point = replace(point, y=0.5)
    t_main = partials(f, point, step)
    t_aux = partials(f, aux_point, step)
    return HolomorphyReport(
        point=point,
        aux_point=aux_point,
        main_residuals=_main_residuals(t_main),
        aux_residuals=_aux_residuals(t_aux),
        tolerance=tol,
    )


def full_derivative(f: FuncExpr, p: Quaternion, step: float = 1e-5) -> Quaternion:
    """Full quaternionic derivative from the Wirtinger sums."""
    t = partials(f, p, step)
    return Quaternion.from_cd(t.dphi1_da + t.dphi1_dabar, t.dphi2_da + t.dphi2_dabar)


@dataclass(frozen=True)
class DerivativeResult:
    """k-th derivative with the method used and an accuracy estimate."""

    value: Quaternion
    order: int
    method: str  # "exact", "stencil" or "series"
    step: float | None
    truncation_estimate: float
    accuracy_warning: bool


_ACCURACY_FLAG_THRESHOLD = 1e-4
_MAX_STENCIL_ORDER = 4


def _nested_dx(f: FuncExpr, p: Quaternion, k: int, h: float) -> Quaternion:
    if k == 0:
        return evaluate(f, p)
    e = Quaternion(h, 0.0, 0.0, 0.0)
    hi = _nested_dx(f, p + e, k - 1, h)
    lo = _nested_dx(f, p - e, k - 1, h)
    return (hi - lo) * (0.5 / h)


def kth_derivative(
    f: FuncExpr,
    p: Quaternion,
    k: int,
    step: float = 1e-5,
    method: str = "auto",
    rho: float = 0.8,
) -> DerivativeResult:
    """k-th full quaternionic derivative of f at p.

    Two routes are available: nested central differences of the derivative
    recursion with per-level step ``step**(1/k)`` (any point, k <= 4 before
    the accuracy cliff), and k! times the k-th Maclaurin coefficient (p = 0
    only, any k).  ``method`` is "auto", "stencil" or "series"; auto picks
    the series route at the origin.  The truncation estimate is the leading
    stencil error term k*h^2/6 scaled by the result magnitude; the accuracy
    warning is set when it exceeds 1e-4.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if method not in ("auto", "stencil", "series"):
        raise ValueError(f"unknown method {method!r}")
    if k == 0:
        return DerivativeResult(evaluate(f, p), 0, "exact", None, 0.0, False)

    at_origin = p.norm_sq() == 0.0
    if method == "series" and not at_origin:
        raise ValueError("series route applies only at p = 0")
    use_series = method == "series" or (method == "auto" and at_origin)

    if use_series:
        from .series import maclaurin_coeffs

        ser = maclaurin_coeffs(f, n=k, rho=rho, samples=max(64, 8 * (k + 1)))
        value = Quaternion.from_real(ser.coeffs[k] * math.factorial(k))
        return DerivativeResult(value, k, "series", None, 0.0, False)

    if k > _MAX_STENCIL_ORDER:
        raise ValueError(f"stencil route supports k <= {_MAX_STENCIL_ORDER}, got {k}")
    if k == 1:
        value = full_derivative(f, p, step)
        h = step * max(1.0, p.norm())
    else:
        h = step ** (1.0 / k) * max(1.0, p.norm())
        value = _nested_dx(f, p, k, h)
    est = k * h * h / 6.0 * max(1.0, value.norm())
    return DerivativeResult(value, k, "stencil", h, est, est > _ACCURACY_FLAG_THRESHOLD)
