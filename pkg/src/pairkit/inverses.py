"""Exact inverses: value -> lattice point.

Every catalogue mapping is inverted in O(1) big-integer operations: find the
shell (anti-diagonal, column, spiral ring, plane) with an integer square or
cube root, then place the point by its offset along the shell.  Derived
mappings unwind their transformation; anything else falls back to a
growing-box search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import NotInImage, Point2, Point3, iroot, isqrt
from .mappings import PiecewiseMapping, builtin, parse_map_id


@dataclass(frozen=True)
class InverseResult:
    point: tuple
    method: str  # closed_form | shell_arithmetic | bounded_search


def _check_nat(z: int) -> int:
    if z < 0:
        raise NotInImage(f"{z} is negative; the image is N0")
    return z


def _tri_root(z: int) -> int:
    """Largest w with w(w+1)/2 <= z."""
    return (isqrt(8 * z + 1) - 1) // 2


def invert_cantor1(z: int) -> Point2:
    z = _check_nat(z)
    w = _tri_root(z)
    x = z - w * (w + 1) // 2
    return Point2(x, w - x)


def invert_cantor2(z: int) -> Point2:
    x, y = invert_cantor1(z)
    return Point2(y, x)


def invert_cantor1_rot(z: int) -> Point2:
    u, v = invert_cantor1(z)
    return Point2(v, -u)


def invert_triangular(z: int) -> Point2:
    z = _check_nat(z)
    x = _tri_root(z)
    return Point2(x, z - x * (x + 1) // 2)


def invert_triangle_x(z: int) -> Point2:
    x = isqrt(_check_nat(z))
    return Point2(x, z - x * x - x)


def invert_triangle_y(z: int) -> Point2:
    y = isqrt(_check_nat(z))
    return Point2(y * y + y - z, y)


def invert_rosenberg_strong(z: int) -> Point2:
    m = isqrt(_check_nat(z))
    r = z - m * m
    if r <= m:
        return Point2(m, r)
    return Point2(2 * m - r, m)


def invert_half_square_spiral(z: int) -> Point2:
    n = (isqrt(8 * _check_nat(z) + 1) + 1) // 4
    r = z - (2 * n * n - n)
    if r <= n:
        return Point2(r, -n)
    if r <= 3 * n:
        return Point2(n, r - 2 * n)
    return Point2(4 * n - r, n)


def invert_rhombus_spiral(z: int) -> Point2:
    if _check_nat(z) == 0:
        return Point2(0, 0)
    n = (isqrt(2 * z - 1) + 1) // 2
    side, k = divmod(z - (2 * n * n - 2 * n + 1), n)
    return (
        Point2(n - k, k),
        Point2(-k, n - k),
        Point2(k - n, -k),
        Point2(k, k - n),
    )[side]


def invert_square_spiral(z: int) -> Point2:
    if _check_nat(z) == 0:
        return Point2(0, 0)
    n = (isqrt(z) + 1) // 2
    r = z - (2 * n - 1) ** 2
    if r <= n:
        return Point2(n, r)
    if r <= 3 * n:
        return Point2(2 * n - r, n)
    if r <= 5 * n:
        return Point2(-n, 4 * n - r)
    if r <= 7 * n:
        return Point2(r - 6 * n, -n)
    return Point2(n, r - 8 * n)


def invert_rectangle_spiral(z: int) -> Point2:
    if _check_nat(z) == 0:
        return Point2(0, 0)
    n = (isqrt(z + 1) + 1) // 2
    side, k = divmod(z - 4 * n * (n - 1), 2 * n)
    return (
        Point2(1 - n + k, -n),
        Point2(n, 1 - n + k),
        Point2(n - 1 - k, n),
        Point2(-n, n - 1 - k),
    )[side]


def invert_connected_triangle(z: int) -> Point2:
    if _check_nat(z) <= 8:
        return invert_triangle_x(z)
    x, y = invert_triangular(z - 9)
    return Point2(x + 3, y)


def invert_saw(n: int, z: int) -> Point2:
    d, y = divmod(_check_nat(z), n)
    return Point2(d + y, y)


def invert_comb(n: int, z: int) -> Point2:
    x, y = divmod(_check_nat(z), n)
    return Point2(x, y)


def invert_saw3(z: int) -> Point2:
    if _check_nat(z) < 3:
        return (Point2(0, 0), Point2(1, 0), Point2(0, 1))[z]
    diag = (z + 3) // 3
    y = z - (3 * diag - 3)
    return Point2(diag - y, y)


def invert_zigzag(z: int) -> Point2:
    u, odd = divmod(_check_nat(z), 2)
    x, y = invert_half_square_spiral(u)
    return Point2(-1 - x, y) if odd else Point2(x, y)


def invert_zigzag_z(z: int) -> Point2:
    if z >= 0:
        return invert_half_square_spiral(z)
    x, y = invert_half_square_spiral(-z - 1)
    return Point2(-1 - x, y)


def invert_alternating(z: int) -> Point2:
    z = _check_nat(z)
    n = _tri_root(z)
    r = z - n * (n + 1) // 2
    return Point2(r, n - r) if n % 2 else Point2(n - r, r)


def invert_sheared(k: int, z: int) -> Point2:
    u, v = invert_cantor1(z)
    return Point2(u - k * v, v)


def _largest_binomial_le(z: int, j: int) -> int:
    """Largest s >= 0 with C(s + j - 1, j) <= z."""
    if j == 1:
        return z
    if j == 2:
        return _tri_root(z)
    lo = max(0, iroot(math.factorial(j) * z, j) - j)
    while math.comb(lo + j, j) <= z:
        lo += 1
    return lo


def invert_pkd(z: int, k: int) -> tuple[int, ...]:
    """Inverse of the k-dimensional binomial-sum map."""
    z = _check_nat(z)
    if k < 1:
        raise ValueError("dimension must be >= 1")
    sums = [0] * k
    for j in range(k, 0, -1):
        s = _largest_binomial_le(z, j)
        sums[j - 1] = s
        z -= math.comb(s + j - 1, j)
    coords = [sums[0]] + [sums[i] - sums[i - 1] for i in range(1, k)]
    return tuple(coords)


def invert_p3d(z: int) -> Point3:
    """Plane index from the largest tetrahedral number, then row, then offset."""
    z = _check_nat(z)
    n = _largest_binomial_le(z, 3)          # plane x + y + z = n
    r = z - math.comb(n + 2, 3)
    row = _tri_root(r)                     # row = n - z'
    y = r - row * (row + 1) // 2
    zc = n - row
    return Point3(row - y, y, zc)


_DIRECT = {
    "cantor1": invert_cantor1,
    "cantor2": invert_cantor2,
    "cantor1_rot": invert_cantor1_rot,
    "triangular": invert_triangular,
    "triangle_x": invert_triangle_x,
    "triangle_y": invert_triangle_y,
    "rosenberg_strong": invert_rosenberg_strong,
    "half_square_spiral": invert_half_square_spiral,
    "rhombus_spiral": invert_rhombus_spiral,
    "square_spiral": invert_square_spiral,
    "rectangle_spiral": invert_rectangle_spiral,
    "connected_triangle": invert_connected_triangle,
    "saw3": invert_saw3,
    "zigzag_full_plane": invert_zigzag,
    "zigzag_full_plane_z": invert_zigzag_z,
    "alternating": invert_alternating,
}
_PARAM = {"saw": invert_saw, "comb": invert_comb, "sheared": invert_sheared}


def _family_inverse(family: str):
    name, param = parse_map_id(family)
    if name in _DIRECT:
        return _DIRECT[name]
    if name in _PARAM:
        f = _PARAM[name]
        return lambda z: f(param, z)
    return None


def bounded_search(m: PiecewiseMapping, z: int, radius: int = 512) -> Point2:
    """Scan square shells around the origin until ``m`` attains ``z``."""
    for r in range(radius + 1):
        if r == 0:
            ring = [(0, 0)]
        else:
            ring = [(x, y) for x in range(-r, r + 1) for y in (-r, r)]
            ring += [(x, y) for x in (-r, r) for y in range(-r + 1, r)]
        for p in ring:
            if m.in_domain(p) and m(*p) == z:
                return Point2(*p)
    raise NotInImage(f"{z} not attained by {m.name} within radius {radius}")


def invert_result(m: PiecewiseMapping, z: int) -> InverseResult:
    if m.image_kind == "N0" and z < 0:
        raise NotInImage(f"{z} is negative; {m.name} maps into N0")
    if m.derived_from is not None:
        kind, *rest = m.derived_from
        if kind == "image":
            k1, k2, base = rest
            if k1 == 0:
                raise NotInImage("a constant image has no inverse")
            u, rem = divmod(z - k2, k1)
            if rem:
                raise NotInImage(f"{z} is not of the form {k1}*v + {k2}")
            inner = invert_result(base, u)
        else:
            t, base = rest
            inner = invert_result(base, z)
            inner = InverseResult(t.inverse()(inner.point), inner.method)
        return inner
    f = _family_inverse(m.family) if m.family else None
    if f is not None:
        method = "closed_form" if m.family in ("cantor1", "cantor2", "cantor1_rot") else "shell_arithmetic"
        return InverseResult(f(z), method)
    return InverseResult(bounded_search(m, z), "bounded_search")


def invert(m: PiecewiseMapping | str, z: int) -> Point2:
    """Unique preimage of ``z`` under ``m``."""
    if isinstance(m, str):
        m = builtin(m)
    return invert_result(m, z).point
