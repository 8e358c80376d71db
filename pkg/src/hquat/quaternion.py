"""Quaternion algebra in component and Cayley-Dickson doubling form.

A quaternion p = x + y*i + z*j + u*k is stored componentwise; the doubling
form p = a + b*j with complex a = x + y*i and b = z + u*i is a view obtained
with :meth:`Quaternion.to_cd`.  Multiplication is carried out in the doubling
form,

    p*q = (a1*a2 - b1*conj(b2)) + (a1*b2 + conj(a2)*b1)*j,

which is equivalent to the 16-term componentwise product generated by
i**2 = j**2 = k**2 = -1, ij = k, jk = i, ki = j.

All values are immutable and every operation is a pure function, so they can
be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class ZeroDivisorError(ZeroDivisionError):
    """Raised when inverting or dividing by a (numerically) zero quaternion."""


class CayleyDickson(NamedTuple):
    """Doubling-form view (a, b) of a quaternion: p = a + b*j."""

    a: complex
    b: complex


@dataclass(frozen=True)
class Quaternion:
    """Quaternion x + y*i + z*j + u*k with finite double-precision components."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    u: float = 0.0

    def __post_init__(self) -> None:
        for name in ("x", "y", "z", "u"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"non-finite quaternion component {name}={v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_real(cls, r: float) -> Quaternion:
        return cls(float(r), 0.0, 0.0, 0.0)

    @classmethod
    def from_cd(cls, a: complex, b: complex) -> Quaternion:
        """Inverse of :meth:`to_cd`; bit-exact field shuffle."""
        return cls(a.real, a.imag, b.real, b.imag)

    def to_cd(self) -> CayleyDickson:
        """Split into the doubling form a = x + y*i, b = z + u*i."""
        return CayleyDickson(complex(self.x, self.y), complex(self.z, self.u))

    def conjugate(self) -> Quaternion:
        return Quaternion(self.x, -self.y, -self.z, -self.u)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y + self.z * self.z + self.u * self.u

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    __abs__ = norm

    def inverse(self, eps: float = 1e-300) -> Quaternion:
        """Multiplicative inverse conj(p)/|p|**2.

        Raises ZeroDivisorError when the squared norm falls below ``eps``
        scaled by the largest component magnitude (guards 0/0, not accuracy).
        """
        n2 = self.norm_sq()
        scale = max(abs(self.x), abs(self.y), abs(self.z), abs(self.u), 1.0)
        if n2 <= eps * scale:
            raise ZeroDivisorError(f"quaternion too close to zero to invert: |p|^2 = {n2!r}")
        return Quaternion(self.x / n2, -self.y / n2, -self.z / n2, -self.u / n2)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.x, -self.y, -self.z, -self.u)

    def __add__(self, other: Quaternion | float | int) -> Quaternion:
        if isinstance(other, Quaternion):
            return Quaternion(self.x + other.x, self.y + other.y, self.z + other.z, self.u + other.u)
        if isinstance(other, (int, float)):
            return Quaternion(self.x + other, self.y, self.z, self.u)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: Quaternion | float | int) -> Quaternion:
        if isinstance(other, Quaternion):
            return Quaternion(self.x - other.x, self.y - other.y, self.z - other.z, self.u - other.u)
        if isinstance(other, (int, float)):
            return Quaternion(self.x - other, self.y, self.z, self.u)
        return NotImplemented

    def __rsub__(self, other: float | int) -> Quaternion:
        return (-self).__add__(other)

    def __mul__(self, other: Quaternion | float | int) -> Quaternion:
        if isinstance(other, Quaternion):
            a1, b1 = self.to_cd()
            a2, b2 = other.to_cd()
            return Quaternion.from_cd(
                a1 * a2 - b1 * b2.conjugate(),
                a1 * b2 + a2.conjugate() * b1,
            )
        if isinstance(other, (int, float)):
            return Quaternion(self.x * other, self.y * other, self.z * other, self.u * other)
        return NotImplemented

    def __rmul__(self, other: float | int) -> Quaternion:
        # Real scalars commute with quaternions.
        return self.__mul__(other)

    def __truediv__(self, other: Quaternion | float | int) -> Quaternion:
        if isinstance(other, Quaternion):
            # Right division p * q**-1; for the holomorphic operands this
            # toolkit targets, the left quotient coincides with it.
            return self * other.inverse()
        if isinstance(other, (int, float)):
            if other == 0.0:
                raise ZeroDivisorError("division of quaternion by zero scalar")
            return Quaternion(self.x / other, self.y / other, self.z / other, self.u / other)
        return NotImplemented

    def isclose(self, other: Quaternion, rel_tol: float = 1e-12, abs_tol: float = 0.0) -> bool:
        """Componentwise closeness against a mixed relative/absolute bound."""
        ref = max(self.norm(), other.norm())
        bound = max(rel_tol * ref, abs_tol)
        return (
            abs(self.x - other.x) <= bound
            and abs(self.y - other.y) <= bound
            and abs(self.z - other.z) <= bound
            and abs(self.u - other.u) <= bound
        )

    def __str__(self) -> str:
        return f"{self.x:.12g} + {self.y:.12g}i + {self.z:.12g}j + {self.u:.12g}k"


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
