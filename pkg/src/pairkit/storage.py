"""Packed linear storage for triangular matrices and 3-simplex tensors.

A lower-triangular matrix of order ``n`` is kept in a flat list of length
``n(n+1)/2``: element ``(row, col)`` with ``col <= row`` sits at
``row(row+1)/2 + col``.  A tensor indexed by ``x + y + z <= N`` is kept in a
flat list of length ``(N+1)(N+2)(N+3)/6`` at the 3D Cantor index of
``(x, y, z)``.  Both layouts are dense, so external code can address a saved
stream directly.

Stream formats
--------------
CSV: first line ``triangular,<order>`` or ``simplex3,<extent>``, then one
element per line in flat-index order.

Binary: 4-byte magic (``PTRI`` or ``PSX3``), unsigned 64-bit little-endian
order/extent, 1-byte :mod:`array` typecode, then the elements packed as that
typecode in flat-index order.
"""

from __future__ import annotations

import array
import csv
import io
import random
import struct
import sys
import time
from typing import Any, Callable, Iterable

from .lattice import isqrt, nat
from .mappings import eval_p3d


def tri_index(row: int, col: int) -> int:
    if row < 0 or col < 0:
        raise IndexError(f"negative index ({row}, {col})")
    if col > row:
        raise IndexError(f"({row}, {col}) is above the diagonal")
    return row * (row + 1) // 2 + col


def tri_unindex(idx: int) -> tuple[int, int]:
    idx = nat(idx)
    row = (isqrt(8 * idx + 1) - 1) // 2
    return row, idx - row * (row + 1) // 2


def tri_size(order: int) -> int:
    return order * (order + 1) // 2


def simplex_size(extent: int) -> int:
    return (extent + 1) * (extent + 2) * (extent + 3) // 6


class _Packed:
    _magic = b""
    _kind = ""

    def __init__(self, size: int, data: Iterable | None, fill: Any):
        if data is None:
            self.data = [fill] * size
        else:
            self.data = list(data)
            if len(self.data) != size:
                raise ValueError(f"expected {size} elements, got {len(self.data)}")

    def __len__(self) -> int:
        return len(self.data)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self._param == other._param and self.data == other.data

    @property
    def _param(self) -> int:
        raise NotImplementedError

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([self._kind, self._param])
        for v in self.data:
            w.writerow([v])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, convert: Callable[[str], Any] = int):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0][0] != cls._kind:
            raise ValueError(f"not a {cls._kind} stream")
        return cls(int(rows[0][1]), [convert(r[0]) for r in rows[1:]])

    def to_bytes(self, typecode: str = "q") -> bytes:
        body = array.array(typecode, self.data)
        if body.itemsize > 1 and sys.byteorder == "big":
            body.byteswap()
        return self._magic + struct.pack("<Qc", self._param, typecode.encode()) + body.tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes):
        if blob[:4] != cls._magic:
            raise ValueError(f"not a {cls._kind} stream")
        param, tc = struct.unpack_from("<Qc", blob, 4)
        body = array.array(tc.decode())
        body.frombytes(blob[13:])
        if body.itemsize > 1 and sys.byteorder == "big":
            body.byteswap()
        return cls(param, body.tolist())


class PackedTriangular(_Packed):
    """Lower-triangular matrix in ``order(order+1)/2`` slots."""

    _magic = b"PTRI"
    _kind = "triangular"

    def __init__(self, order: int, data: Iterable | None = None, fill: Any = 0):
        self.order = nat(order)
        super().__init__(tri_size(self.order), data, fill)

    @property
    def _param(self) -> int:
        return self.order

    def _flat(self, row: int, col: int, upper: bool) -> int:
        if upper:
            row, col = col, row
        if not 0 <= row < self.order:
            raise IndexError(f"row {row} out of range for order {self.order}")
        return tri_index(row, col)

    def get(self, row: int, col: int, upper: bool = False):
        """Element ``(row, col)``; with ``upper`` the arguments address the upper triangle."""
        return self.data[self._flat(row, col, upper)]

    def set(self, row: int, col: int, value, upper: bool = False) -> None:
        self.data[self._flat(row, col, upper)] = value

    def __getitem__(self, rc):
        return self.get(*rc)

    def __setitem__(self, rc, value):
        self.set(*rc, value)

    def to_rows(self) -> list[list]:
        return [self.data[tri_index(r, 0):tri_index(r, r) + 1] for r in range(self.order)]

    @classmethod
    def from_rows(cls, rows: list[list]) -> "PackedTriangular":
        return cls(len(rows), [v for r, row in enumerate(rows) for v in row[: r + 1]])


class PackedSimplex3(_Packed):
    """Tensor over ``x + y + z <= extent`` in ``(N+1)(N+2)(N+3)/6`` slots."""

    _magic = b"PSX3"
    _kind = "simplex3"

    def __init__(self, extent: int, data: Iterable | None = None, fill: Any = 0):
        self.extent = nat(extent)
        super().__init__(simplex_size(self.extent), data, fill)

    @property
    def _param(self) -> int:
        return self.extent

    def _flat(self, x: int, y: int, z: int) -> int:
        if min(x, y, z) < 0 or x + y + z > self.extent:
            raise IndexError(f"({x}, {y}, {z}) outside the simplex of extent {self.extent}")
        return eval_p3d((x, y, z))

    def get(self, x: int, y: int, z: int):
        return self.data[self._flat(x, y, z)]

    def set(self, x: int, y: int, z: int, value) -> None:
        self.data[self._flat(x, y, z)] = value

    def __getitem__(self, xyz):
        return self.get(*xyz)

    def __setitem__(self, xyz, value):
        self.set(*xyz, value)


# ---------------------------------------------------------------------------
# packed vs padded micro-benchmark
# ---------------------------------------------------------------------------

def bench(order: int = 400, reads: int = 200_000, seed: int = 0) -> dict:
    """Time sequential and random lower-triangle reads, packed against a padded
    ``order x order`` flat list.  Informational only."""
    rng = random.Random(seed)
    packed = PackedTriangular(order, range(tri_size(order)))
    padded = [0] * (order * order)
    for r in range(order):
        for c in range(r + 1):
            padded[r * order + c] = packed.data[tri_index(r, c)]
    coords = [(r, c) for r in range(order) for c in range(r + 1)]
    rand = [coords[rng.randrange(len(coords))] for _ in range(reads)]

    def timed(fn) -> float:
        t = time.perf_counter()
        fn()
        return time.perf_counter() - t

    pd = packed.data

    def seq_packed():
        return sum(pd[r * (r + 1) // 2 + c] for r, c in coords)

    def seq_padded():
        return sum(padded[r * order + c] for r, c in coords)

    def rnd_packed():
        return sum(pd[r * (r + 1) // 2 + c] for r, c in rand)

    def rnd_padded():
        return sum(padded[r * order + c] for r, c in rand)

    assert seq_packed() == seq_padded() and rnd_packed() == rnd_padded()
    return {
        "order": order,
        "packed_slots": len(pd),
        "padded_slots": len(padded),
        "sequential_s": {"packed": timed(seq_packed), "padded": timed(seq_padded)},
        "random_s": {"packed": timed(rnd_packed), "padded": timed(rnd_padded)},
        "reads": {"sequential": len(coords), "random": reads},
    }
