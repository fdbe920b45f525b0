"""Six-point exact fitting of pairing polynomials.

A quadratic ``a6 x^2 + a5 xy + a4 y^2 + a3 x + a2 y + a1`` is pinned down by
six lattice samples through the linear system whose rows are the monomials
``[x^2, xy, y^2, x, y, 1]`` of each sample.  The system is solved over the
rationals, so the coefficients come out exact, and the fitted form is then
checked against a reference mapping on a window around the samples: six
points always give *a* polynomial, but only well-chosen ones give the right
one.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .lattice import DomainError, NotInImage, SingularSystem, as_int
from .mappings import (
    CUBIC_EXPONENTS,
    CUBIC_MONOMIALS,
    QUAD_MONOMIALS,
    CubicForm3D,
    PiecewiseMapping,
    QuadForm,
    builtin,
    format_rational,
)

Matrix = list[list[Fraction]]


class SamplePoint(NamedTuple):
    point: tuple
    value: int


def quad_row(p) -> list[Fraction]:
    x, y = p
    return [Fraction(v) for v in (x * x, x * y, y * y, x, y, 1)]


def linear_row(p) -> list[Fraction]:
    x, y = p
    return [Fraction(x), Fraction(y), Fraction(1)]


def cubic_row(p) -> list[Fraction]:
    x, y, z = p
    return [Fraction(x**i * y**j * z**k) for i, j, k in CUBIC_EXPONENTS]


def _samples(samples: Iterable) -> list[SamplePoint]:
    out = []
    for s in samples:
        if isinstance(s, SamplePoint):
            out.append(s)
        else:
            *coords, v = s
            out.append(SamplePoint(tuple(coords), v))
    return out


def build_system(samples: Iterable, row: Callable = quad_row) -> tuple[Matrix, list[Fraction]]:
    samples = _samples(samples)
    if row is quad_row and len(samples) != 6:
        raise ValueError(f"a quadratic fit needs exactly six samples, got {len(samples)}")
    return [row(s.point) for s in samples], [Fraction(s.value) for s in samples]


def _eliminate(a: Matrix, b: list[Fraction] | None) -> tuple[Fraction, Matrix, list | None]:
    """Forward elimination with partial pivoting; returns the determinant and the
    reduced system."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    a = [list(map(Fraction, r)) for r in a]
    b = None if b is None else list(map(Fraction, b))
    det = Fraction(1)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            return Fraction(0), a, b
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            if b is not None:
                b[col], b[piv] = b[piv], b[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
                if b is not None:
                    b[r] -= f * b[col]
    return det, a, b


def det(matrix: Matrix) -> Fraction:
    """Exact determinant by rational Gaussian elimination."""
    return _eliminate(matrix, None)[0]


det6 = det


def solve_exact(matrix: Matrix, rhs: Sequence) -> list[Fraction]:
    d, a, b = _eliminate(matrix, list(rhs))
    if d == 0:
        raise SingularSystem("zero determinant: the sample pattern does not fix a polynomial")
    n = len(a)
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = b[r] - sum(a[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / a[r][r]
    return x


def _rref(a: Matrix) -> tuple[Matrix, list[int]]:
    a = [list(map(Fraction, r)) for r in a]
    rows, cols = len(a), len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(matrix: Matrix) -> int:
    return len(_rref(matrix)[1]) if matrix else 0


def solution_family(matrix: Matrix, rhs: Sequence) -> tuple[list[Fraction], list[list[Fraction]]]:
    """All solutions of a consistent system: ``particular + span(null_basis)``.

    Raises :class:`SingularSystem` when the system is inconsistent.
    """
    n = len(matrix[0])
    aug, pivots = _rref([list(r) + [Fraction(v)] for r, v in zip(matrix, rhs)])
    if n in pivots:
        raise SingularSystem("inconsistent system: no polynomial reproduces the samples")
    particular = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        particular[c] = aug[i][n]
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -aug[i][free]
        basis.append(v)
    return particular, basis


def fit(samples: Iterable) -> QuadForm:
    return QuadForm(*solve_exact(*build_system(samples)))


def fit_linear(samples: Iterable) -> tuple[Fraction, Fraction, Fraction]:
    """First-order fit ``a*x + b*y + c`` through three samples."""
    samples = _samples(samples)
    if len(samples) != 3:
        raise ValueError("a first-order fit needs exactly three samples")
    return tuple(solve_exact(*build_system(samples, linear_row)))


def fit3d(samples: Iterable) -> CubicForm3D:
    samples = _samples(samples)
    if len(samples) != len(CUBIC_EXPONENTS):
        raise ValueError(f"a cubic fit in three variables needs 20 samples, got {len(samples)}")
    return CubicForm3D(tuple(solve_exact(*build_system(samples, cubic_row))))


# ---------------------------------------------------------------------------
# validation against a reference mapping
# ---------------------------------------------------------------------------

@dataclass
class FitReport:
    form: QuadForm | None
    determinant: Fraction
    validation: str                     # valid | invalid | singular
    samples: list[SamplePoint]
    mismatches: list[tuple] = field(default_factory=list)   # (point, expected, got)
    window: tuple | None = None
    checked: int = 0

    @property
    def valid(self) -> bool:
        return self.validation == "valid"

    def to_json(self) -> dict:
        return {
            "form": None if self.form is None else dict(
                zip(("a6", "a5", "a4", "a3", "a2", "a1"), map(format_rational, self.form.coeffs))
            ),
            "determinant": format_rational(self.determinant),
            "validation": self.validation,
            "samples": [[*s.point, s.value] for s in self.samples],
            "window": None if self.window is None else list(self.window),
            "checked": self.checked,
            "mismatches": [
                {"point": list(p), "expected": _js(e), "got": _js(g)} for p, e, g in self.mismatches
            ],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)


def _js(v):
    v = as_int(v)
    return v if isinstance(v, int) else format_rational(v)


def default_window(samples: Sequence[SamplePoint], margin: int = 3) -> tuple[int, int, int, int]:
    xs = [s.point[0] for s in samples]
    ys = [s.point[1] for s in samples]
    return (min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin)


def validate(form, reference: PiecewiseMapping | str, window: tuple[int, int, int, int],
             region_index: int | None = None) -> tuple[list[tuple], int]:
    """Compare ``form`` with ``reference`` on every domain point of ``window``.

    Returns ``(mismatches, checked)`` where each mismatch is
    ``(point, expected, got)``.  With ``region_index`` only points claimed by
    that region are compared.
    """
    if isinstance(reference, str):
        reference = builtin(reference)
    x0, x1, y0, y1 = window
    mismatches, checked = [], 0
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if region_index is not None and reference.region_of((x, y)) != region_index:
                continue
            try:
                want = reference(x, y)
            except DomainError:
                continue
            checked += 1
            got = form(x, y)
            if got != want:
                mismatches.append(((x, y), want, got))
    return mismatches, checked


def fit_and_validate(samples: Iterable, reference: PiecewiseMapping | str,
                     window: tuple[int, int, int, int] | None = None,
                     margin: int = 3, region_index: int | None = None) -> FitReport:
    """Fit six samples, then compare the form with ``reference`` on a window.

    ``window`` is ``(xmin, xmax, ymin, ymax)``, inclusive; by default the
    samples' bounding box grown by ``margin``.  Points outside the reference
    domain (or outside region ``region_index``, when given) are skipped.
    """
    samples = _samples(samples)
    a, b = build_system(samples)
    d = det(a)
    window = window or default_window(samples, margin)
    if d == 0:
        return FitReport(None, d, "singular", samples, window=window)
    form = QuadForm(*solve_exact(a, b))
    mismatches, checked = validate(form, reference, window, region_index)
    if checked <= len(samples):
        raise ValueError("validation window holds no points beyond the samples")
    return FitReport(form, d, "invalid" if mismatches else "valid", samples,
                     mismatches, window, checked)


# ---------------------------------------------------------------------------
# choosing samples
# ---------------------------------------------------------------------------

def samples_for_values(m: PiecewiseMapping | str, values: Iterable[int]) -> list[SamplePoint]:
    """Locate the lattice points carrying the given image values."""
    from .inverses import invert

    if isinstance(m, str):
        m = builtin(m)
    return [SamplePoint(tuple(invert(m, v)), v) for v in values]


def initial_triangle_part(m: PiecewiseMapping | str, region_index: int | None = None,
                          count: int = 6, row: Callable = quad_row,
                          limit: int = 10**5) -> list[SamplePoint]:
    """Smallest-valued domain points that pin down a polynomial.

    Walks the image values upward and keeps a point whenever its monomial
    row is independent of the rows kept so far, so collinear runs near the
    origin are skipped instead of producing a zero determinant.  Integer
    images are walked by magnitude: 0, -1, 1, -2, ...  Exceptional
    points such as spiral origins never belong to a region polynomial and
    are never chosen.
    """
    from .inverses import invert

    if isinstance(m, str):
        m = builtin(m)
    out: list[SamplePoint] = []
    rows: Matrix = []
    if m.image_kind == "Z":
        values = (s * k for k in range(limit) for s in ((1,) if k == 0 else (-1, 1)))
    else:
        values = range(limit)
    for v in values:
        try:
            p = invert(m, v)
        except NotInImage:
            continue
        if p in m.exceptional:
            continue
        if region_index is not None and m.region_of(p) != region_index:
            continue
        r = row(p)
        if rank(rows + [r]) == len(rows) + 1:
            rows.append(r)
            out.append(SamplePoint(tuple(p), v))
            if len(out) == count:
                return out
    raise ValueError(f"no {count} independent samples among the first {limit} values")


# Image-value sets listed alongside each formula, keyed by (map id, region index).
PAPER_SETS: dict[tuple[str, int], tuple[int, ...]] = {
    ("cantor1_rot", 0): (0, 1, 2, 3, 4, 5),
    ("triangular", 0): (0, 1, 2, 3, 4, 5),
    ("rosenberg_strong", 0): (0, 3, 8, 2, 7, 6),
    ("rosenberg_strong", 1): (0, 1, 2, 4, 5, 6),
    ("half_square_spiral", 0): (0, 5, 4, 14, 13, 12),
    ("half_square_spiral", 1): (0, 2, 3, 4, 8, 12),
    ("half_square_spiral", 2): (0, 1, 2, 6, 7, 8),
    ("rhombus_spiral", 0): (6, 14, 15, 26, 27, 28),
    ("rhombus_spiral", 1): (8, 17, 18, 30, 31, 32),
    ("rhombus_spiral", 2): (10, 20, 21, 34, 35, 36),
    ("rhombus_spiral", 3): (12, 23, 24, 38, 39, 40),
    ("square_spiral", 0): (10, 26, 27, 50, 51, 52),
    ("square_spiral", 1): (3, 12, 13, 29, 30, 31),
    ("square_spiral", 2): (5, 17, 37, 16, 36, 35),
    ("square_spiral", 3): (7, 20, 21, 41, 42, 43),
    ("square_spiral", 4): (24, 47, 48, 78, 79, 80),
    ("rectangle_spiral", 0): (2, 13, 14, 32, 33, 34),
    ("rectangle_spiral", 1): (4, 16, 17, 36, 37, 38),
    ("rectangle_spiral", 2): (6, 20, 21, 42, 43, 44),
    ("rectangle_spiral", 3): (9, 26, 27, 51, 52, 53),
    ("triangle_x", 0): (0, 1, 2, 3, 5, 7),
}

# Alternative set for rectangle-spiral region I with a different pattern.
RECTANGLE_ALT_SET = (2, 12, 13, 14, 31, 33)

# Sample sets on the saw/Cantor overlay of the width-3 strip.
SAW3_SETS = {
    "cantor": (0, 1, 2, 3, 4, 5),
    "zero_det": (0, 1, 2, 3, 4, 6),
    "wrong": (1, 2, 3, 4, 6, 7),
    "saw": (3, 6, 7, 9, 10, 11),
}

# Wrong set on the rotated Cantor map.
ROTATED_WRONG_SET = (1, 2, 6, 7, 8, 9)
TRIANGULAR_SET_B = (5, 8, 9, 12, 13, 14)


# ---------------------------------------------------------------------------
# sample files
# ---------------------------------------------------------------------------

def read_samples(text: str) -> list[SamplePoint]:
    """Parse ``x,y,value`` or ``x,y,z,value`` lines; blank lines and ``#`` comments skipped."""
    out = []
    for rec in csv.reader(io.StringIO(text)):
        if not rec or rec[0].lstrip().startswith("#"):
            continue
        nums = [int(f) for f in rec]
        if len(nums) not in (3, 4):
            raise ValueError(f"expected x,y,value or x,y,z,value, got {rec}")
        out.append(SamplePoint(tuple(nums[:-1]), nums[-1]))
    return out


def write_samples(samples: Iterable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for s in _samples(samples):
        w.writerow([*s.point, s.value])
    return buf.getvalue()


def cubic_report(form: CubicForm3D) -> dict:
    return {name: format_rational(c) for name, c in zip(CUBIC_MONOMIALS, form.coeffs)}


def quad_report(form: QuadForm) -> dict:
    return {name: format_rational(c) for name, c in zip(QUAD_MONOMIALS, form.coeffs)}
