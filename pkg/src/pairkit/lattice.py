"""Integer lattice foundations: points, step functions, exact square roots and
region predicates.

All arithmetic is done on Python ``int`` (unbounded) and
:class:`fractions.Fraction`; nothing in the package touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

Rational = Fraction


class DomainError(ValueError):
    """Point lies outside a mapping's domain (or is an excluded point)."""


class NotInImage(ValueError):
    """Value is not attained by the mapping."""


class SingularSystem(ArithmeticError):
    """Linear system has zero determinant."""


class Point2(NamedTuple):
    x: int
    y: int


class Point3(NamedTuple):
    x: int
    y: int
    z: int


def nat(v: int) -> int:
    """Return ``v`` as a natural number (with zero), rejecting negatives."""
    v = int(v)
    if v < 0:
        raise ValueError(f"expected a natural number, got {v}")
    return v


def canonical(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


def as_int(v: Fraction | int) -> Fraction | int:
    """Collapse integral rationals to ``int``."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def heaviside(v: int) -> int:
    return 1 if v > 0 else 0


def heaviside_plus(v: int) -> int:
    # H(v + eps) for any eps > 0, on integers: closed at zero
    return 1 if v >= 0 else 0


def sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def isqrt(n: int) -> int:
    """Largest ``s`` with ``s*s <= n``."""
    return math.isqrt(nat(n))


def iroot(n: int, k: int) -> int:
    """Largest ``r`` with ``r**k <= n`` for ``n >= 0``."""
    n = nat(n)
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


# ---------------------------------------------------------------------------
# affine substitutions of the plane
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Affine2:
    """Integer affine map ``(x, y) -> (a*x + b*y + e, c*x + d*y + f)``."""

    a: int = 1
    b: int = 0
    c: int = 0
    d: int = 1
    e: int = 0
    f: int = 0

    def __call__(self, p: tuple[int, int]) -> Point2:
        x, y = p
        return Point2(self.a * x + self.b * y + self.e, self.c * x + self.d * y + self.f)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Affine2":
        det = self.det
        if det not in (1, -1):
            raise ValueError("affine map is not invertible over the integers")
        a, b, c, d = self.d * det, -self.b * det, -self.c * det, self.a * det
        return Affine2(a, b, c, d, -(a * self.e + b * self.f), -(c * self.e + d * self.f))

    def then(self, other: "Affine2") -> "Affine2":
        """Composite ``p -> other(self(p))``."""
        return Affine2(
            other.a * self.a + other.b * self.c,
            other.a * self.b + other.b * self.d,
            other.c * self.a + other.d * self.c,
            other.c * self.b + other.d * self.d,
            other.a * self.e + other.b * self.f + other.e,
            other.c * self.e + other.d * self.f + other.f,
        )


def translation(dx: int, dy: int) -> Affine2:
    return Affine2(e=dx, f=dy)


# one clockwise quarter turn: the value at (x, y) is read from (-y, x)
QUARTER = Affine2(0, -1, 1, 0)


# ---------------------------------------------------------------------------
# region predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Exact membership test on lattice points.

    A point is a member when every inequality ``a*x + b*y + c >= 0`` holds,
    every congruence ``(a*x + b*y + c) % m == 0`` holds and the point is not
    listed in ``exclude``; points listed in ``include`` are always members.
    """

    ineqs: tuple[tuple[int, int, int], ...] = ()
    congruences: tuple[tuple[int, int, int, int], ...] = ()
    include: frozenset = field(default_factory=frozenset)
    exclude: frozenset = field(default_factory=frozenset)

    def __contains__(self, p) -> bool:
        x, y = p
        if (x, y) in self.include:
            return True
        for a, b, c in self.ineqs:
            if a * x + b * y + c < 0:
                return False
        for a, b, c, m in self.congruences:
            if (a * x + b * y + c) % m:
                return False
        return (x, y) not in self.exclude

    def pullback(self, t: Affine2) -> "Region":
        """Region of points ``p`` with ``t(p)`` in this region."""
        ineqs = tuple(
            (a * t.a + b * t.c, a * t.b + b * t.d, a * t.e + b * t.f + c) for a, b, c in self.ineqs
        )
        congs = tuple(
            (a * t.a + b * t.c, a * t.b + b * t.d, a * t.e + b * t.f + c, m)
            for a, b, c, m in self.congruences
        )
        inv = t.inverse()
        return Region(
            ineqs,
            congs,
            frozenset(tuple(inv(p)) for p in self.include),
            frozenset(tuple(inv(p)) for p in self.exclude),
        )

    def to_dict(self) -> dict:
        return {
            "ineqs": [list(q) for q in self.ineqs],
            "congruences": [list(q) for q in self.congruences],
            "include": sorted(list(p) for p in self.include),
            "exclude": sorted(list(p) for p in self.exclude),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Region":
        return cls(
            tuple(tuple(q) for q in d.get("ineqs", ())),
            tuple(tuple(q) for q in d.get("congruences", ())),
            frozenset(tuple(p) for p in d.get("include", ())),
            frozenset(tuple(p) for p in d.get("exclude", ())),
        )


def region(*ineqs: tuple[int, int, int], include: Iterable = (), exclude: Iterable = (),
           congruences: Iterable = ()) -> Region:
    return Region(
        tuple(ineqs),
        tuple(congruences),
        frozenset(tuple(p) for p in include),
        frozenset(tuple(p) for p in exclude),
    )


EVERYWHERE = Region()
