"""Geometric enumeration of each mapping's image order.

The walks below are written from the pictures: which point comes next is
decided by moving along anti-diagonals, columns, spiral perimeters or plane
sweeps.  None of them evaluates a polynomial, so they can serve as ground
truth for the polynomial catalogue.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .lattice import Point2, Point3
from .mappings import parse_map_id

Walk = Iterator[tuple]

RIGHT, LEFT, UP, DOWN = (1, 0), (-1, 0), (0, 1), (0, -1)


def _path(start: tuple[int, int], legs: Iterable[tuple[tuple[int, int], int]]) -> Walk:
    """Yield ``start`` then every point reached by the moves ``(step, count)``."""
    x, y = start
    yield Point2(x, y)
    for (dx, dy), count in legs:
        for _ in range(count):
            x += dx
            y += dy
            yield Point2(x, y)


def walk_cantor1() -> Walk:
    for n in itertools.count():
        for x in range(n + 1):
            yield Point2(x, n - x)


def walk_cantor2() -> Walk:
    for n in itertools.count():
        for y in range(n + 1):
            yield Point2(n - y, y)


def walk_cantor1_rot() -> Walk:
    # the anti-diagonal walk turned a quarter clockwise
    for p in walk_cantor1():
        yield Point2(p.y, -p.x)


def walk_triangular() -> Walk:
    for x in itertools.count():
        for y in range(x + 1):
            yield Point2(x, y)


def walk_triangle_x() -> Walk:
    for x in itertools.count():
        for y in range(-x, x + 1):
            yield Point2(x, y)


def walk_triangle_y() -> Walk:
    for y in itertools.count():
        for x in range(y, -y - 1, -1):
            yield Point2(x, y)


def walk_rosenberg_strong() -> Walk:
    for m in itertools.count():
        yield from _path((m, 0), [(UP, m), (LEFT, m)])


def walk_half_square_spiral() -> Walk:
    yield Point2(0, 0)
    for n in itertools.count(1):
        yield from _path((0, -n), [(RIGHT, n), (UP, 2 * n), (LEFT, n)])


def walk_rhombus_spiral() -> Walk:
    yield Point2(0, 0)
    for n in itertools.count(1):
        yield from _path((n, 0), [((-1, 1), n), ((-1, -1), n), ((1, -1), n), ((1, 1), n - 1)])


def walk_square_spiral() -> Walk:
    yield Point2(0, 0)
    for n in itertools.count(1):
        yield from _path((n, 0), [(UP, n), (LEFT, 2 * n), (DOWN, 2 * n), (RIGHT, 2 * n), (UP, n - 1)])


def walk_rectangle_spiral() -> Walk:
    yield Point2(0, 0)
    for n in itertools.count(1):
        ring = _path((1 - n, -n), [(RIGHT, 2 * n - 1), (UP, 2 * n), (LEFT, 2 * n), (DOWN, 2 * n)])
        for p in ring:
            if p != (0, -1):
                yield p


def walk_connected_triangle() -> Walk:
    for x in range(3):
        for y in range(-x, x + 1):
            yield Point2(x, y)
    for x in itertools.count(3):
        for y in range(x - 2):
            yield Point2(x, y)


def walk_saw(n: int) -> Walk:
    for d in itertools.count():
        for y in range(n):
            yield Point2(d + y, y)


def walk_comb(n: int) -> Walk:
    for x in itertools.count():
        for y in range(n):
            yield Point2(x, y)


def walk_saw3() -> Walk:
    # anti-diagonals clipped to the strip 0 <= y <= 2
    for n in itertools.count():
        for y in range(min(n, 2) + 1):
            yield Point2(n - y, y)


def walk_zigzag_full_plane() -> Walk:
    for p in walk_half_square_spiral():
        yield p
        yield Point2(-1 - p.x, p.y)


def walk_alternating() -> Walk:
    for n in itertools.count():
        if n % 2:
            for x in range(n + 1):
                yield Point2(x, n - x)
        else:
            for y in range(n + 1):
                yield Point2(n - y, y)


def walk_sheared(k: int) -> Walk:
    for p in walk_cantor1():
        yield Point2(p.x - k * p.y, p.y)


def walk_p3d() -> Walk:
    for n in itertools.count():
        for z in range(n, -1, -1):
            for y in range(n - z + 1):
                yield Point3(n - z - y, y, z)


def _simplex_layer(k: int, total: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (total,)
        return
    for inner in range(total + 1):
        for head in _simplex_layer(k - 1, inner):
            yield head + (total - inner,)


def walk_pkd(k: int) -> Walk:
    if k < 1:
        raise ValueError("dimension must be >= 1")
    for n in itertools.count():
        yield from _simplex_layer(k, n)


_WALKS: dict[str, Callable[[], Walk]] = {
    "cantor1": walk_cantor1,
    "cantor2": walk_cantor2,
    "cantor1_rot": walk_cantor1_rot,
    "triangular": walk_triangular,
    "triangle_x": walk_triangle_x,
    "triangle_y": walk_triangle_y,
    "rosenberg_strong": walk_rosenberg_strong,
    "half_square_spiral": walk_half_square_spiral,
    "rhombus_spiral": walk_rhombus_spiral,
    "square_spiral": walk_square_spiral,
    "rectangle_spiral": walk_rectangle_spiral,
    "connected_triangle": walk_connected_triangle,
    "saw3": walk_saw3,
    "zigzag_full_plane": walk_zigzag_full_plane,
    "alternating": walk_alternating,
    "p3d": walk_p3d,
}
_PARAM_WALKS: dict[str, Callable[[int], Walk]] = {
    "saw": walk_saw,
    "comb": walk_comb,
    "sheared": walk_sheared,
    "pkd": walk_pkd,
}

ENUMERABLE = tuple(_WALKS) + ("saw(n)", "comb(n)", "sheared(n)", "pkd(k)")


def walk(map_id: str) -> Walk:
    name, param = parse_map_id(map_id)
    if name in _WALKS and param is None:
        return _WALKS[name]()
    if name in _PARAM_WALKS and param is not None:
        return _PARAM_WALKS[name](param)
    raise KeyError(f"no enumeration walk for {map_id!r}")


@dataclass
class EnumerationTrace:
    map_id: str
    entries: list[tuple[tuple, int]] = field(default_factory=list)

    def points(self) -> list[tuple]:
        return [p for p, _ in self.entries]

    def position(self) -> dict[tuple, int]:
        return {p: v for p, v in self.entries}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for p, v in self.entries:
            w.writerow([*p, v])
        return buf.getvalue()


def enumerate_map(map_id: str, n: int) -> EnumerationTrace:
    """First ``n`` (point, value) pairs of the geometric walk."""
    if n < 0:
        raise ValueError("n must be >= 0")
    trace = EnumerationTrace(map_id)
    trace.entries = [(p, i) for i, p in enumerate(itertools.islice(walk(map_id), n))]
    return trace


def walk_position(map_id: str, p, limit: int = 10**6) -> int:
    """Index at which the walk reaches ``p``."""
    target = tuple(p)
    for i, q in enumerate(itertools.islice(walk(map_id), limit)):
        if tuple(q) == target:
            return i
    raise LookupError(f"{target} not reached within {limit} steps of {map_id}")


# ---------------------------------------------------------------------------
# bijectivity verification
# ---------------------------------------------------------------------------

@dataclass
class BijectionReport:
    map_id: str
    count: int
    passed: bool
    divergence: tuple | None = None  # (index, point, walk value, polynomial value)
    missing: int = 0
    duplicates: int = 0

    def summary(self) -> str:
        if self.passed:
            return f"PASS {self.map_id}: {self.count} points, values 0..{self.count - 1} each hit once"
        if self.divergence:
            i, p, want, got = self.divergence
            return f"FAIL {self.map_id}: at {tuple(p)} walk gives {want}, polynomial gives {got}"
        return f"FAIL {self.map_id}: {self.missing} values missing, {self.duplicates} repeated"


def _family(m) -> str:
    fam = getattr(m, "family", None)
    if fam is None:
        raise ValueError("mapping has no enumeration walk; pass walk=...")
    return fam


def verify_bijection(m, n: int, walk_id: str | None = None) -> BijectionReport:
    """Compare the polynomial against the walk on its first ``n`` points.

    ``m`` is anything callable on a point's coordinates: a built-in mapping,
    a bare :class:`~pairkit.mappings.QuadForm`, or one of the strings ``"p3d"``
    and ``"pkd(k)"``.
    """
    from .mappings import eval_p3d, eval_pkd

    if isinstance(m, str):
        name, param = parse_map_id(m)
        walk_id = walk_id or m
        if name == "p3d":
            fn = lambda *c: eval_p3d(c)
        elif name == "pkd":
            fn = lambda *c: eval_pkd(c)
        else:
            from .mappings import builtin

            fn = builtin(m)
    else:
        walk_id = walk_id or _family(m)
        fn = m
    seen = bytearray(n)
    duplicates = 0
    divergence = None
    for i, p in enumerate(itertools.islice(walk(walk_id), n)):
        try:
            v = fn(*p)
        except ValueError as exc:
            v = f"error: {exc}"
        if v != i:
            if divergence is None:
                divergence = (i, p, i, v)
            if isinstance(v, int) and 0 <= v < n:
                duplicates += seen[v]
                seen[v] = 1
            continue
        duplicates += seen[v]
        seen[v] = 1
    missing = n - sum(seen)
    passed = divergence is None and missing == 0 and duplicates == 0
    return BijectionReport(str(walk_id), n, passed, divergence, missing, duplicates)


# ---------------------------------------------------------------------------
# tile profiles
# ---------------------------------------------------------------------------

class NonConstantShift(ArithmeticError):
    """Adjacent lines of a raw form are not shifted copies of each other."""


@dataclass
class TileProfile:
    lines: list[int]
    offsets: list        # value of the raw form where each line crosses the other axis
    shifts: list         # offsets[i+1] - offsets[i]


def tile_profile(m, region_index: int, lines: Iterable[int], axis: str = "row",
                 span: Iterable[int] = range(-6, 7)) -> TileProfile:
    """Offsets between parallel lines of one region's raw polynomial.

    ``axis="row"`` walks horizontal lines ``y = const`` (tiles shift along x);
    ``axis="col"`` walks vertical lines ``x = const``.  Every line must carry
    the same one-dimensional scale up to an additive offset, otherwise
    :class:`NonConstantShift` is raised.
    """
    form = m.regions[region_index][1]
    lines = list(lines)
    span = list(span)

    def at(t, line):
        return form(t, line) if axis == "row" else form(line, t)

    if axis not in ("row", "col"):
        raise ValueError("axis must be 'row' or 'col'")
    scale = None
    offsets = []
    for line in lines:
        base = at(0, line)
        profile = [at(t, line) - base for t in span]
        if scale is None:
            scale = profile
        elif profile != scale:
            raise NonConstantShift(f"line {line} is not a shifted copy of line {lines[0]}")
        offsets.append(base)
    shifts = [b - a for a, b in zip(offsets, offsets[1:])]
    return TileProfile(lines, offsets, shifts)
