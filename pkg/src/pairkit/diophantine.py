"""Diophantine forms of the Cantor and triangular pairing polynomials.

``2z = a^2 + 2ab + b^2 + 3a + b`` has exactly one solution in N0^2 for every
natural z, and so does ``2c = a^2 + a + 2b`` under ``0 <= b <= a``.  The
solvers read the solution off the closed-form inverse and confirm it by
substitution; a brute-force mode is kept as an independent check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .inverses import invert_cantor1, invert_triangular
from .lattice import isqrt, nat
from .mappings import format_rational


@dataclass
class DiophResult:
    query: int
    equation: str
    solutions: list[tuple[int, int]]
    explanation: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "query": self.query,
            "equation": self.equation,
            "solutions": [list(s) for s in self.solutions],
            "explanation": self.explanation,
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)


CANTOR_EQ = "2z = a^2 + 2ab + b^2 + 3a + b"
TRIANGULAR_EQ = "2c = a^2 + a + 2b, 0 <= b <= a"
DEGRADED_EQ = "2c = a + 2b, 0 <= b <= a"


def cantor_lhs(a: int, b: int) -> int:
    """Right-hand side of the Cantor equation, i.e. ``2z``."""
    return a * a + 2 * a * b + b * b + 3 * a + b


def triangular_lhs(a: int, b: int) -> int:
    return a * a + a + 2 * b


def degraded_lhs(a: int, b: int) -> int:
    return a + 2 * b


def discriminant(z: int, a: int) -> int:
    """Discriminant of the Cantor equation read as a quadratic in ``b``."""
    return 1 + 8 * (z - a)


def b_for(z: int, a: int) -> int | None:
    """Natural ``b`` solving the Cantor equation for fixed ``a``, if any.

    ``b = sqrt(D)/2 - a - 1/2``; the negative root never gives ``b >= 0``.
    """
    d = discriminant(z, a)
    if d < 0:
        return None
    r = isqrt(d)
    if r * r != d:
        return None
    twice_b = r - 2 * a - 1
    if twice_b < 0 or twice_b % 2:
        return None
    return twice_b // 2


def _explain_a(z: int, a: int) -> str:
    d = discriminant(z, a)
    if d < 0:
        return f"a={a}: D = 1 + 8(z - a) = {d} < 0, no real b"
    r = isqrt(d)
    if r * r != d:
        return f"a={a}: D = {d} is not a perfect square, b = ±½√{d} − {format_rational(Fraction(2 * a + 1, 2))} is not an integer"
    b = b_for(z, a)
    if b is None:
        return f"a={a}: D = {d} = {r}², but b = ({r} − {2 * a + 1})/2 is negative"
    return f"a={a}: D = {d} = {r}², b = ({r} − {2 * a + 1})/2 = {b}"


def solve_cantor_dioph(z: int, a: int | None = None, brute: bool = False) -> DiophResult:
    """All natural ``(a, b)`` with ``2z = a^2 + 2ab + b^2 + 3a + b``.

    With ``a`` given, only that value of ``a`` is tried, which is how a
    non-solution is explained through its discriminant.
    """
    z = nat(z)
    if a is not None:
        b = b_for(z, nat(a))
        sols = [] if b is None else [(a, b)]
        return DiophResult(z, CANTOR_EQ, sols, [_explain_a(z, a)])
    if brute:
        top = isqrt(2 * z) + 1
        sols = [(x, y) for x in range(top + 1) for y in range(top + 1) if cantor_lhs(x, y) == 2 * z]
        return DiophResult(z, CANTOR_EQ, sols, [f"exhaustive scan over a, b <= {top}"])
    x, y = invert_cantor1(z)
    assert cantor_lhs(x, y) == 2 * z
    lines = [f"shell n = a + b = {x + y}, offset a = {x}"]
    lines += [_explain_a(z, t) for t in range(min(x + y, 8) + 1)]
    return DiophResult(z, CANTOR_EQ, [(x, y)], lines)


def solve_triangular_dioph(c: int, brute: bool = False) -> DiophResult:
    """All ``(a, b)`` with ``2c = a^2 + a + 2b`` and ``0 <= b <= a``."""
    c = nat(c)
    if brute:
        top = isqrt(2 * c) + 1
        sols = [(x, y) for x in range(top + 1) for y in range(x + 1) if triangular_lhs(x, y) == 2 * c]
        return DiophResult(c, TRIANGULAR_EQ, sols, [f"exhaustive scan over b <= a <= {top}"])
    x, y = invert_triangular(c)
    assert triangular_lhs(x, y) == 2 * c and 0 <= y <= x
    lines = [
        f"a = {x} is the largest value with a(a+1)/2 <= {c}",
        f"b = c − a(a+1)/2 = {y}",
        "a^2 + a is even for every a, so b is an integer whenever c is",
    ]
    return DiophResult(c, TRIANGULAR_EQ, [(x, y)], lines)


def check_parity_lemma(bound: int) -> bool:
    """True iff ``a^2 + a`` is even for all ``0 <= a <= bound``."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    return all((a * a + a) % 2 == 0 for a in range(bound + 1))


# ---------------------------------------------------------------------------
# uniqueness scans
# ---------------------------------------------------------------------------

@dataclass
class ScanReport:
    eq_id: str
    bound: int
    pairs: int
    collisions: dict[Fraction, list[tuple[int, int]]]
    covered: bool | None = None  # prefix coverage, where it applies

    @property
    def ok(self) -> bool:
        return not self.collisions and self.covered is not False

    def witnesses(self, value) -> list[tuple[int, int]]:
        return self.collisions.get(Fraction(value), [])

    def to_json(self) -> dict:
        return {
            "eq_id": self.eq_id,
            "bound": self.bound,
            "pairs": self.pairs,
            "collision_count": len(self.collisions),
            "collisions": [
                {"value": format_rational(v), "witnesses": [list(p) for p in ws]}
                for v, ws in sorted(self.collisions.items())[:20]
            ],
            "covered": self.covered,
            "ok": self.ok,
        }


_SCANS = {
    "cantor": (cantor_lhs, False),
    "triangular": (triangular_lhs, True),
    "degraded": (degraded_lhs, True),
}


def uniqueness_scan(eq_id: str, bound: int) -> ScanReport:
    """Evaluate an equation on every pair up to ``bound`` and group repeated values.

    ``cantor`` scans the square ``a, b <= bound``; the other two scan the
    triangle ``b <= a <= bound``.  For ``cantor`` the triangle ``a + b <= bound``
    must hit ``0..T-1`` exactly, and for ``triangular`` the whole scan must,
    with ``T = (bound+1)(bound+2)/2``.
    """
    if eq_id not in _SCANS:
        raise KeyError(f"unknown equation {eq_id!r}; expected one of {sorted(_SCANS)}")
    lhs, lower = _SCANS[eq_id]
    bound = nat(bound)
    seen: dict[int, tuple[int, int]] = {}
    groups: dict[int, list[tuple[int, int]]] = {}
    pairs = 0
    for a in range(bound + 1):
        for b in range(a + 1 if lower else bound + 1):
            pairs += 1
            v = lhs(a, b)
            if v in seen:
                groups.setdefault(v, [seen[v]]).append((a, b))
            else:
                seen[v] = (a, b)
    collisions = {Fraction(v, 2): ws for v, ws in groups.items()}
    t = (bound + 1) * (bound + 2) // 2
    covered = None
    if eq_id == "cantor":
        tri = sorted(v // 2 for v, (a, b) in seen.items() if a + b <= bound)
        covered = tri == list(range(t))
    elif eq_id == "triangular":
        covered = sorted(v // 2 for v in seen) == list(range(t))
    return ScanReport(eq_id, bound, pairs, collisions, covered)
