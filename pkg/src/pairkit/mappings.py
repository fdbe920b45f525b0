"""Pairing mappings as piecewise quadratic polynomials on lattice regions.

Every 2D mapping is a :class:`PiecewiseMapping`: an ordered list of
``(Region, QuadForm)`` pairs whose regions are pairwise disjoint, plus a
table of exceptional values (spiral origins) and a set of excluded points.
The catalogue in :func:`builtin` reproduces the published formulas
coefficient for coefficient.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from itertools import permutations, product
from typing import Callable, Iterable

from .lattice import (
    QUARTER,
    Affine2,
    DomainError,
    Point2,
    Region,
    as_int,
    heaviside,
    region,
    sgn,
    translation,
)

__all__ = [
    "QuadForm", "CubicForm3D", "PiecewiseMapping", "ComposedMapping",
    "BUILTIN_IDS", "builtin", "parse_map_id", "quadform_eval", "evaluate", "eval_unchecked",
    "affine_image", "shift_domain", "rotate_quarter", "transform_domain", "mirror_x",
    "compose_image", "b_transform", "eval_p3d", "eval_pkd", "P3D_FORM", "p3d_permutation",
    "rhombus_consolidated", "alternating_trig_selector", "saw2_family",
    "to_json", "from_json", "dumps", "loads", "format_rational", "parse_rational",
]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return parse_rational(v)
    return Fraction(v)


def format_rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(s)


# ---------------------------------------------------------------------------
# quadratic forms
# ---------------------------------------------------------------------------

QUAD_MONOMIALS = ("x^2", "xy", "y^2", "x", "y", "1")


@dataclass(frozen=True)
class QuadForm:
    """``a6*x^2 + a5*x*y + a4*y^2 + a3*x + a2*y + a1`` with rational coefficients."""

    a6: Fraction = Fraction(0)
    a5: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    _den: int = field(init=False, repr=False, compare=False)
    _nums: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cs = tuple(_frac(getattr(self, n)) for n in ("a6", "a5", "a4", "a3", "a2", "a1"))
        for n, c in zip(("a6", "a5", "a4", "a3", "a2", "a1"), cs):
            object.__setattr__(self, n, c)
        den = reduce(math.lcm, (c.denominator for c in cs), 1)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_nums", tuple(c.numerator * (den // c.denominator) for c in cs))

    @classmethod
    def of(cls, coeffs: Iterable) -> "QuadForm":
        return cls(*coeffs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return (self.a6, self.a5, self.a4, self.a3, self.a2, self.a1)

    def __call__(self, x: int, y: int) -> int | Fraction:
        n6, n5, n4, n3, n2, n1 = self._nums
        v = n6 * x * x + n5 * x * y + n4 * y * y + n3 * x + n2 * y + n1
        if self._den == 1:
            return v
        q, r = divmod(v, self._den)
        return q if r == 0 else Fraction(v, self._den)

    def scaled(self, k1, k2=0) -> "QuadForm":
        """``k1 * self + k2``."""
        c = [k1 * a for a in self.coeffs]
        c[5] += k2
        return QuadForm(*c)

    def substitute(self, t: Affine2) -> "QuadForm":
        """Form ``q`` with ``q(p) == self(t(p))``."""
        a, b, c, d, e, f = t.a, t.b, t.c, t.d, t.e, t.f
        A6, A5, A4, A3, A2, A1 = self.coeffs
        # X = a x + b y + e,  Y = c x + d y + f
        X2 = (a * a, 2 * a * b, b * b, 2 * a * e, 2 * b * e, e * e)
        XY = (a * c, a * d + b * c, b * d, a * f + c * e, b * f + d * e, e * f)
        Y2 = (c * c, 2 * c * d, d * d, 2 * c * f, 2 * d * f, f * f)
        X = (0, 0, 0, a, b, e)
        Y = (0, 0, 0, c, d, f)
        out = [A6 * X2[i] + A5 * XY[i] + A4 * Y2[i] + A3 * X[i] + A2 * Y[i] for i in range(6)]
        out[5] += A1
        return QuadForm(*out)

    def __str__(self) -> str:
        terms = []
        for c, m in zip(self.coeffs, QUAD_MONOMIALS):
            if c == 0:
                continue
            mag = abs(c)
            body = str(mag) if m == "1" else (m if mag == 1 else f"{mag}*{m}")
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def quadform_eval(q: QuadForm, p) -> int | Fraction:
    x, y = p
    return q(x, y)


def q(*coeffs) -> QuadForm:
    return QuadForm(*coeffs)


# ---------------------------------------------------------------------------
# cubic forms in three variables
# ---------------------------------------------------------------------------

CUBIC_EXPONENTS: tuple[tuple[int, int, int], ...] = (
    (3, 0, 0), (0, 3, 0), (0, 0, 3),
    (2, 1, 0), (2, 0, 1), (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2),
    (1, 1, 1),
    (2, 0, 0), (0, 2, 0), (0, 0, 2),
    (1, 1, 0), (1, 0, 1), (0, 1, 1),
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (0, 0, 0),
)


def _monomial_name(e: tuple[int, int, int]) -> str:
    parts = []
    for v, k in zip("xyz", e):
        if k:
            parts.append(v if k == 1 else f"{v}^{k}")
    return "*".join(parts) or "1"


CUBIC_MONOMIALS = tuple(_monomial_name(e) for e in CUBIC_EXPONENTS)


@dataclass(frozen=True)
class CubicForm3D:
    """Full cubic in (x, y, z); coefficients follow :data:`CUBIC_EXPONENTS`."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(_frac(c) for c in self.coeffs)
        if len(cs) != len(CUBIC_EXPONENTS):
            raise ValueError("a cubic form in three variables has 20 coefficients")
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, x: int, y: int, z: int) -> int | Fraction:
        v = sum(c * x**i * y**j * z**k for c, (i, j, k) in zip(self.coeffs, CUBIC_EXPONENTS) if c)
        return as_int(Fraction(v))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(CUBIC_MONOMIALS, self.coeffs))


_S = Fraction(1, 6)
P3D_FORM = CubicForm3D((
    _S, _S, _S,
    3 * _S, 3 * _S, 3 * _S, 3 * _S, 3 * _S, 3 * _S,
    Fraction(1),
    Fraction(1), Fraction(1), Fraction(1, 2),
    Fraction(2), Fraction(1), Fraction(1),
    Fraction(5, 6), Fraction(11, 6), Fraction(1, 3),
    Fraction(0),
))


def p3d_numerator(x: int, y: int, z: int) -> int:
    return (
        x**3 + y**3 + z**3
        + 3 * (x * z * z + y * z * z + z * x * x + 2 * x * y * z + z * y * y + y * x * x + x * y * y)
        + 3 * (2 * x * x + 2 * y * y + z * z + 2 * x * z + 2 * y * z + 4 * x * y)
        + 5 * x + 11 * y + 2 * z
    )


def eval_p3d(p) -> int:
    """Three-dimensional pairing polynomial sweeping the planes ``x+y+z = N``."""
    x, y, z = p
    if x < 0 or y < 0 or z < 0:
        raise DomainError(f"{tuple(p)} is not in N0^3")
    n = p3d_numerator(x, y, z)
    v, r = divmod(n, 6)
    assert r == 0, "numerator not divisible by 6"
    return v


def eval_pkd(coords) -> int:
    """k-dimensional Cantor value ``sum_j C(s_j + j - 1, j)`` with prefix sums ``s_j``."""
    coords = tuple(coords)
    if not coords:
        raise ValueError("need at least one coordinate")
    if any(c < 0 for c in coords):
        raise DomainError(f"{coords} has a negative coordinate")
    total, s = 0, 0
    for j, c in enumerate(coords, start=1):
        s += c
        total += math.comb(s + j - 1, j)
    return total


def p3d_permutation(bound: int = 4) -> tuple[int, int, int]:
    """Permutation ``sigma`` with ``eval_p3d(p) == eval_pkd(p[sigma])`` on a test cube."""
    cube = list(product(range(bound + 1), repeat=3))
    for sigma in permutations(range(3)):
        if all(eval_p3d(p) == eval_pkd(tuple(p[i] for i in sigma)) for p in cube):
            return sigma
    raise AssertionError("no coordinate permutation reconciles the two 3D maps")


# ---------------------------------------------------------------------------
# piecewise mappings
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PiecewiseMapping:
    name: str
    regions: tuple[tuple[Region, QuadForm], ...]
    exceptional: dict = field(default_factory=dict)
    excluded: frozenset = field(default_factory=frozenset)
    image_kind: str = "N0"
    family: str | None = None
    # ("image", k1, k2, base) or ("domain", Affine2, base) for derived maps
    derived_from: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "exceptional", {Point2(*p): v for p, v in self.exceptional.items()})
        object.__setattr__(self, "excluded", frozenset(Point2(*p) for p in self.excluded))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PiecewiseMapping):
            return NotImplemented
        return (
            self.name == other.name
            and self.regions == other.regions
            and self.exceptional == other.exceptional
            and self.excluded == other.excluded
            and self.image_kind == other.image_kind
        )

    __hash__ = None

    @property
    def forms(self) -> list[QuadForm]:
        return [f for _, f in self.regions]

    def region_of(self, p) -> int | None:
        for i, (reg, _) in enumerate(self.regions):
            if p in reg:
                return i
        return None

    def claims(self, p) -> list[int]:
        """Indices of every region containing ``p`` (a partition yields at most one)."""
        return [i for i, (reg, _) in enumerate(self.regions) if p in reg]

    def in_domain(self, p) -> bool:
        p = (p[0], p[1])
        if p in self.excluded:
            return False
        if p in self.exceptional:
            return True
        return self.region_of(p) is not None

    def __call__(self, x: int, y: int) -> int | Fraction:
        p = (x, y)
        if p in self.excluded:
            raise DomainError(f"{p} is excluded from the domain of {self.name}")
        v = self.exceptional.get(p)
        if v is not None:
            return v
        for reg, form in self.regions:
            if p in reg:
                return form(x, y)
        raise DomainError(f"{p} is outside the domain of {self.name}")

    def eval(self, p) -> int | Fraction:
        return self(p[0], p[1])


def evaluate(m: PiecewiseMapping, p) -> int | Fraction:
    return m(p[0], p[1])


def eval_unchecked(m: PiecewiseMapping, p, region_index: int) -> int | Fraction:
    """Raw value of one region's polynomial at ``p``, ignoring the domain."""
    if not 0 <= region_index < len(m.regions):
        raise IndexError(f"{m.name} has no region {region_index}")
    return m.regions[region_index][1](p[0], p[1])


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------

def affine_image(m: PiecewiseMapping, k1: int, k2: int) -> PiecewiseMapping:
    """Replace every value ``v`` by ``k1*v + k2``."""
    k1, k2 = int(k1), int(k2)
    if (k1, k2) == (1, 0):
        return m
    kind = "N0" if m.image_kind == "N0" and k1 > 0 and k2 >= 0 else "Z"
    return PiecewiseMapping(
        name=f"{k1}*{m.name}+{k2}",
        regions=tuple((reg, form.scaled(k1, k2)) for reg, form in m.regions),
        exceptional={p: k1 * v + k2 for p, v in m.exceptional.items()},
        excluded=m.excluded,
        image_kind=kind,
        derived_from=("image", k1, k2, m),
    )


def transform_domain(m: PiecewiseMapping, t: Affine2, name: str | None = None) -> PiecewiseMapping:
    """Mapping ``p -> m(t(p))`` for an integer-invertible affine ``t``."""
    inv = t.inverse()
    return PiecewiseMapping(
        name=name or f"{m.name}@{t.a},{t.b},{t.c},{t.d},{t.e},{t.f}",
        regions=tuple((reg.pullback(t), form.substitute(t)) for reg, form in m.regions),
        exceptional={inv(p): v for p, v in m.exceptional.items()},
        excluded=frozenset(inv(p) for p in m.excluded),
        image_kind=m.image_kind,
        derived_from=("domain", t, m),
    )


def shift_domain(m: PiecewiseMapping, k1: int, k2: int) -> PiecewiseMapping:
    """Translate the domain by ``(k1, k2)``: the new value at p is ``m(p - (k1, k2))``."""
    if (k1, k2) == (0, 0):
        return m
    return transform_domain(m, translation(-k1, -k2), name=f"{m.name}>>({k1},{k2})")


def rotate_quarter(m: PiecewiseMapping, quarters: int) -> PiecewiseMapping:
    """Rotate clockwise by ``quarters`` quarter turns; one turn reads ``m`` at ``(-y, x)``."""
    n = quarters % 4
    if n == 0:
        return m
    t = Affine2()
    for _ in range(n):
        t = t.then(QUARTER)
    return transform_domain(m, t, name=f"rot{n}({m.name})")


MIRROR_X = Affine2(-1, 0, 0, 1, -1, 0)  # (x, y) -> (-1 - x, y)


def mirror_x(m: PiecewiseMapping) -> PiecewiseMapping:
    """Mirror across the y axis and shift left by one: reads ``m`` at ``(-1-x, y)``."""
    return transform_domain(m, MIRROR_X, name=f"mirror({m.name})")


IMAGE_FUNCTIONS: dict[str, Callable[[int], int]] = {
    "identity": lambda v: v,
    "square": lambda v: v * v,
    "double": lambda v: 2 * v,
    "odd": lambda v: 2 * v + 1,
}


@dataclass(frozen=True)
class ComposedMapping:
    """Evaluator for ``f(m(p))``; not a polynomial mapping in general."""

    base: PiecewiseMapping
    f: Callable[[int], int]
    label: str = "f"

    @property
    def name(self) -> str:
        return f"{self.label}({self.base.name})"

    def __call__(self, x: int, y: int):
        return self.f(self.base(x, y))

    def eval(self, p):
        return self(p[0], p[1])


def compose_image(m: PiecewiseMapping, f: Callable[[int], int] | str) -> ComposedMapping:
    if isinstance(f, str):
        try:
            return ComposedMapping(m, IMAGE_FUNCTIONS[f], f)
        except KeyError:
            raise ValueError(f"unknown image function {f!r}") from None
    return ComposedMapping(m, f, getattr(f, "__name__", "f"))


def b_transform(p) -> Point2:
    """Send ``p`` to the triangular-domain point holding the same Cantor value."""
    from .inverses import invert_triangular

    x, y = p
    if x < 0 or y < 0:
        raise DomainError(f"{tuple(p)} is not in N0^2")
    r = invert_triangular(CANTOR1(x, y))
    assert r == (x + y, x), f"b_transform({x}, {y}) gave {r}"
    return r


# ---------------------------------------------------------------------------
# closed single-formula variants
# ---------------------------------------------------------------------------

def rhombus_consolidated(x: int, y: int) -> int:
    """Single sgn/Heaviside formula for the rhombus spiral (origin excluded)."""
    return (
        2 * x * x + 4 * sgn(x) * sgn(y) * x * y + 2 * y * y
        - 2 * heaviside(x) * sgn(y) * x - y + 1
    )


def alternating_trig_selector(x: int, y: int) -> tuple[int, int]:
    """Integer values of (sin^2, cos^2) at ``(x+y)*pi/2``."""
    odd = (x + y) % 2
    return odd, 1 - odd


# ---------------------------------------------------------------------------
# the catalogue
# ---------------------------------------------------------------------------

H = Fraction(1, 2)

X_GE0 = (1, 0, 0)
Y_GE0 = (0, 1, 0)

CANTOR1 = q(H, 1, H, 3 * H, H, 0)
CANTOR2 = q(H, 1, H, H, 3 * H, 0)
QUADRANT = region(X_GE0, Y_GE0)


def _single(name: str, form: QuadForm, reg: Region, family: str | None = None) -> PiecewiseMapping:
    return PiecewiseMapping(name=name, regions=((reg, form),), family=family or name)


def _cantor1():
    return _single("cantor1", CANTOR1, QUADRANT)


def _cantor2():
    return _single("cantor2", CANTOR2, QUADRANT)


def _cantor1_rot():
    return _single("cantor1_rot", q(H, -1, H, H, -3 * H, 0), region(X_GE0, (0, -1, 0)))


def _triangular():
    return _single("triangular", q(H, 0, 0, H, 1, 0), region(Y_GE0, (1, -1, 0)))


def _triangle_x():
    return _single("triangle_x", q(1, 0, 0, 1, 1, 0), region((1, 1, 0), (1, -1, 0)))


def _triangle_y():
    return _single("triangle_y", q(0, 0, 1, -1, 1, 0), region((1, 1, 0), (-1, 1, 0)))


def _rosenberg_strong():
    return PiecewiseMapping(
        name="rosenberg_strong",
        regions=(
            (region(X_GE0, (-1, 1, -1)), q(0, 0, 1, -1, 2, 0)),     # 0 <= x < y
            (region(Y_GE0, (1, -1, 0)), q(1, 0, 0, 0, 1, 0)),       # 0 <= y <= x
        ),
        family="rosenberg_strong",
    )


def _half_square_spiral():
    return PiecewiseMapping(
        name="half_square_spiral",
        regions=(
            (region(X_GE0, (-1, 1, -1)), q(0, 0, 2, -1, 3, 0)),     # y > x >= 0
            (region((1, 1, 0), (1, -1, 0)), q(2, 0, 0, 1, 1, 0)),   # |y| <= x
            (region(X_GE0, (-1, -1, -1)), q(0, 0, 2, 1, 1, 0)),     # y < -x <= 0
        ),
        family="half_square_spiral",
    )


ORIGIN = (0, 0)


def _rhombus_spiral():
    return PiecewiseMapping(
        name="rhombus_spiral",
        regions=(
            (region(X_GE0, Y_GE0, exclude=[ORIGIN]), q(2, 4, 2, -2, -1, 1)),
            (region((-1, 0, -1), Y_GE0), q(2, -4, 2, 0, -1, 1)),
            (region((-1, 0, 0), (0, -1, -1)), q(2, 4, 2, 0, -1, 1)),
            (region((1, 0, -1), (0, -1, -1)), q(2, -4, 2, 2, -1, 1)),
        ),
        exceptional={ORIGIN: 0},
        family="rhombus_spiral",
    )


def _square_spiral():
    return PiecewiseMapping(
        name="square_spiral",
        regions=(
            (region((1, 0, -1), Y_GE0, (1, -1, 0)), q(4, 0, 0, -4, 1, 1)),       # 0 <= y <= x
            (region((0, 1, -1), (1, 1, 0), (-1, 1, -1)), q(0, 0, 4, -1, -2, 1)),  # -y <= x < y
            (region((-1, 0, -1), (-1, 1, 0), (-1, -1, -1)), q(4, 0, 0, 0, -1, 1)),  # x <= y < -x
            (region((0, -1, -1), (1, -1, -1), (-1, -1, 0)), q(0, 0, 4, 1, -2, 1)),  # y < x <= -y
            (region((0, -1, -1), (1, 1, -1)), q(4, 0, 0, 4, 1, 1)),               # 0 < -y < x
        ),
        exceptional={ORIGIN: 0},
        family="square_spiral",
    )


def _rectangle_spiral():
    return PiecewiseMapping(
        name="rectangle_spiral",
        regions=(
            (region((1, 0, -1), (1, -1, 0), (1, 1, -1), include=[(1, -1)]), q(4, 0, 0, -1, 1, -1)),
            (region((0, 1, -1), (1, 1, 0), (-1, 1, -1)), q(0, 0, 4, -1, 1, -1)),
            (region((-1, 0, -1), (-1, 1, 0), (-1, -1, -1)), q(4, 0, 0, -3, -1, -1)),
            (region((0, -1, -2), (1, -1, -1), (-1, -1, 0)), q(0, 0, 4, 1, 3, -1)),
        ),
        exceptional={ORIGIN: 0},
        excluded=frozenset({(0, -1)}),
        family="rectangle_spiral",
    )


def _connected_triangle():
    return PiecewiseMapping(
        name="connected_triangle",
        regions=(
            (region((-1, 0, 2), (1, 1, 0), (1, -1, 0)), q(1, 0, 0, 1, 1, 0)),           # |y| <= x <= 2
            (region((1, 0, -3), Y_GE0, (1, -1, -3)), q(H, 0, 0, -5 * H, 1, 12)),        # 0 <= y <= x-3
        ),
        family="connected_triangle",
    )


def _strip(n: int) -> tuple:
    return (Y_GE0, (0, -1, n - 1))


def _saw(n: int):
    if n < 2:
        raise ValueError(f"saw width must be >= 2, got {n}")
    return _single(f"saw({n})", q(0, 0, 0, n, -(n - 1), 0), region(*_strip(n), (1, -1, 0)), f"saw({n})")


def saw2_family(a: int) -> PiecewiseMapping:
    """Width-2 saw written as ``(2+a)y^2 + 2x - (3+a)y``; equal to saw(2) on its domain."""
    return _single(f"saw2_family({a})", q(0, 0, 2 + a, 2, -(3 + a), 0),
                   region(*_strip(2), (1, -1, 0)), "saw(2)")


def _comb(n: int):
    if n < 2:
        raise ValueError(f"comb width must be >= 2, got {n}")
    return _single(f"comb({n})", q(0, 0, 0, n, 1, 0), region(X_GE0, *_strip(n)), f"comb({n})")


def _saw3():
    return PiecewiseMapping(
        name="saw3",
        regions=(
            (region(X_GE0, (-1, 0, 1), *_strip(3)), CANTOR2),
            (region((1, 0, -2), *_strip(3)), q(0, 0, 0, 3, 4, -3)),
        ),
        family="saw3",
    )


def _zigzag(image: str):
    half = _half_square_spiral()
    left = mirror_x(half)
    if image == "N0":
        regions = tuple((reg, f.scaled(2, 0)) for reg, f in half.regions) + tuple(
            (reg, f.scaled(2, 1)) for reg, f in left.regions
        )
        name = "zigzag_full_plane"
    else:
        regions = half.regions + tuple((reg, f.scaled(-1, -1)) for reg, f in left.regions)
        name = "zigzag_full_plane_z"
    return PiecewiseMapping(name=name, regions=regions, image_kind=image, family=name)


def zigzag_formula(x: int, y: int) -> int:
    """Step-function form ``H(-x)(2P(-1-x,y)+1) + 2H(x+eps)P(x,y)``."""
    from .lattice import heaviside_plus

    half = _half_square_spiral()
    left = half(-1 - x, y) if x < 0 else 0
    right = half(x, y) if x >= 0 else 0
    return heaviside(-x) * (2 * left + 1) + 2 * heaviside_plus(x) * right


def _alternating():
    # C1 on odd anti-diagonals, C2 on even ones
    return PiecewiseMapping(
        name="alternating",
        regions=(
            (region(X_GE0, Y_GE0, congruences=[(1, 1, -1, 2)]), CANTOR1),
            (region(X_GE0, Y_GE0, congruences=[(1, 1, 0, 2)]), CANTOR2),
        ),
        family="alternating",
    )


def _sheared(k: int):
    if k < 0:
        raise ValueError(f"shear must be >= 0, got {k}")
    form = q(H, k + 1, Fraction((k + 1) ** 2, 2), 3 * H, Fraction(3 * k + 1, 2), 0)
    return _single(f"sheared({k})", form, region(Y_GE0, (1, k, 0)), f"sheared({k})")


_PLAIN = {
    "cantor1": _cantor1,
    "cantor2": _cantor2,
    "cantor1_rot": _cantor1_rot,
    "triangular": _triangular,
    "triangle_x": _triangle_x,
    "triangle_y": _triangle_y,
    "rosenberg_strong": _rosenberg_strong,
    "half_square_spiral": _half_square_spiral,
    "rhombus_spiral": _rhombus_spiral,
    "square_spiral": _square_spiral,
    "rectangle_spiral": _rectangle_spiral,
    "connected_triangle": _connected_triangle,
    "saw3": _saw3,
    "zigzag_full_plane": lambda: _zigzag("N0"),
    "zigzag_full_plane_z": lambda: _zigzag("Z"),
    "alternating": _alternating,
}
_PARAMETRIC = {"saw": _saw, "comb": _comb, "sheared": _sheared}

BUILTIN_IDS = tuple(_PLAIN) + tuple(f"{k}(n)" for k in _PARAMETRIC)

_ID_RE = re.compile(r"^\s*([a-z][a-z0-9_]*)\s*(?:\(\s*(-?\d+)\s*\))?\s*$")


def parse_map_id(text: str) -> tuple[str, int | None]:
    """Split ``"saw(5)"`` into ``("saw", 5)`` and ``"cantor1"`` into ``("cantor1", None)``."""
    m = _ID_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse map id {text!r}")
    return m.group(1), (int(m.group(2)) if m.group(2) is not None else None)


_CACHE: dict[tuple, PiecewiseMapping] = {}


def builtin(map_id: str, param: int | None = None) -> PiecewiseMapping:
    """Construct a catalogue mapping, e.g. ``builtin("saw", 5)`` or ``builtin("saw(5)")``."""
    name, inline = parse_map_id(map_id)
    if inline is not None:
        if param is not None and param != inline:
            raise ValueError(f"conflicting parameters for {map_id!r}")
        param = inline
    key = (name, param)
    if key in _CACHE:
        return _CACHE[key]
    if name in _PLAIN:
        if param is not None:
            raise ValueError(f"{name} takes no parameter")
        m = _PLAIN[name]()
    elif name in _PARAMETRIC:
        if param is None:
            raise ValueError(f"{name} needs an integer parameter, e.g. {name}(3)")
        m = _PARAMETRIC[name](param)
    else:
        raise KeyError(f"unknown mapping {map_id!r}")
    _CACHE[key] = m
    return m


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def to_json(m: PiecewiseMapping) -> dict:
    return {
        "name": m.name,
        "family": m.family,
        "image_kind": m.image_kind,
        "regions": [
            {"region": reg.to_dict(), "form": [format_rational(c) for c in form.coeffs]}
            for reg, form in m.regions
        ],
        "exceptional": [[p[0], p[1], v] for p, v in sorted(m.exceptional.items())],
        "excluded": sorted([p[0], p[1]] for p in m.excluded),
    }


def from_json(d: dict) -> PiecewiseMapping:
    return PiecewiseMapping(
        name=d["name"],
        regions=tuple(
            (Region.from_dict(r["region"]), QuadForm(*(parse_rational(c) for c in r["form"])))
            for r in d["regions"]
        ),
        exceptional={(x, y): v for x, y, v in d.get("exceptional", [])},
        excluded=frozenset(tuple(p) for p in d.get("excluded", [])),
        image_kind=d.get("image_kind", "N0"),
        family=d.get("family"),
    )


def dumps(m: PiecewiseMapping, **kw) -> str:
    return json.dumps(to_json(m), **kw)


def loads(s: str) -> PiecewiseMapping:
    return from_json(json.loads(s))


def with_coefficient(m: PiecewiseMapping, region_index: int, coef: int, delta) -> PiecewiseMapping:
    """Copy of ``m`` with one coefficient nudged; a negative control for verification."""
    regions = list(m.regions)
    reg, form = regions[region_index]
    cs = list(form.coeffs)
    cs[coef] += _frac(delta)
    regions[region_index] = (reg, QuadForm(*cs))
    return replace(m, regions=tuple(regions), name=f"{m.name}~corrupt", derived_from=None)

