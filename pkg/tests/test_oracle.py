import itertools

import pytest

from pairkit.mappings import QuadForm, builtin, eval_pkd, with_coefficient
from pairkit.oracle import (
    ENUMERABLE,
    NonConstantShift,
    enumerate_map,
    tile_profile,
    verify_bijection,
    walk,
    walk_position,
)
from refdata import TABLE2, WALKED_MAPS, WRONG_ROTATED


def test_cantor_walk_start():
    trace = enumerate_map("cantor1", 3)
    assert trace.entries == [((0, 0), 0), ((0, 1), 1), ((1, 0), 2)]


def test_p3d_walk_is_the_table():
    trace = enumerate_map("p3d", 20)
    assert trace.position() == TABLE2


@pytest.mark.parametrize("map_id", WALKED_MAPS + ["p3d", "pkd(3)", "zigzag_full_plane", "sheared(4)"])
def test_trace_invariants(map_id):
    trace = enumerate_map(map_id, 3000)
    assert [v for _, v in trace.entries] == list(range(3000))
    assert len(set(trace.points())) == 3000


def test_rhombus_shells():
    pts = enumerate_map("rhombus_spiral", 1 + 4 * sum(range(1, 11))).points()
    start = 1
    for n in range(1, 11):
        shell = pts[start:start + 4 * n]
        assert all(abs(x) + abs(y) == n for x, y in shell)
        start += 4 * n
    # value jumps between shells happen at the +x axis
    for a, b in [(4, 5), (12, 13), (24, 25)]:
        assert abs(pts[a][0]) + abs(pts[a][1]) + 1 == abs(pts[b][0]) + abs(pts[b][1])
        assert pts[b][1] == 0 and pts[b][0] > 0


def test_half_spiral_axis_series():
    vals = [walk_position("half_square_spiral", (x, 0)) for x in range(6)]
    assert vals[1:] == [3, 10, 21, 36, 55]
    assert all(vals[x] == vals[x - 1] + 4 * x - 1 for x in range(1, 6))


def test_square_spiral_axis_series():
    vals = [walk_position("square_spiral", (x, 0)) for x in range(6)]
    assert vals[1:] == [1, 9, 25, 49, 81]
    assert all(vals[x] == vals[x - 1] + 8 * (x - 1) for x in range(2, 6))


def test_rhombus_axis_series():
    vals = [walk_position("rhombus_spiral", (x, 0)) for x in range(1, 12)]
    assert all(b == a + 4 * x - 4 for x, a, b in zip(range(2, 12), vals, vals[1:]))


def test_pkd_walk_matches_pkd():
    for p, v in enumerate_map("pkd(4)", 2000).entries:
        assert eval_pkd(p) == v


def test_walk_unknown():
    with pytest.raises(KeyError):
        walk("nope")
    with pytest.raises(KeyError):
        walk("saw")
    assert "saw(n)" in ENUMERABLE


def test_walk_position_limit():
    with pytest.raises(LookupError):
        walk_position("cantor1", (-1, 0), limit=100)


def test_csv_export():
    text = enumerate_map("p3d", 3).to_csv()
    assert text == "0,0,0,0\n0,0,1,1\n1,0,0,2\n"


def test_enumerate_negative():
    with pytest.raises(ValueError):
        enumerate_map("cantor1", -1)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("map_id", WALKED_MAPS)
def test_verify_passes(map_id):
    report = verify_bijection(builtin(map_id), 20000)
    assert report.passed, report.summary()


@pytest.mark.parametrize("map_id", ["p3d", "pkd(2)", "pkd(3)", "pkd(4)"])
def test_verify_higher_dims(map_id):
    assert verify_bijection(map_id, 5000).passed


def test_wrong_form_fails_at_origin():
    report = verify_bijection(WRONG_ROTATED, 100, walk_id="cantor1_rot")
    assert not report.passed
    i, p, want, got = report.divergence
    assert (i, p, want) == (0, (0, 0), 0)
    assert "(0, 0)" in report.summary()


def test_mutation_caught_and_walk_unchanged():
    before = enumerate_map("square_spiral", 5000).entries
    bent = with_coefficient(builtin("square_spiral"), 2, 4, 1)
    report = verify_bijection(bent, 5000)
    assert not report.passed
    assert enumerate_map("square_spiral", 5000).entries == before
    assert verify_bijection(builtin("square_spiral"), 5000).passed


def test_missing_and_duplicates_counted():
    report = verify_bijection(QuadForm(0, 0, 0, 0, 0, 0), 50, walk_id="cantor1")
    assert not report.passed
    # every point lands on 0
    assert report.missing == 49 and report.duplicates == 49


def test_walk_never_evaluates_polynomials(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("walk touched a polynomial")

    monkeypatch.setattr(QuadForm, "__call__", boom)
    for map_id in WALKED_MAPS:
        list(itertools.islice(walk(map_id), 500))


# ---------------------------------------------------------------------------
# tiles
# ---------------------------------------------------------------------------

def test_triangle_y_tiles():
    prof = tile_profile(builtin("triangle_y"), 0, range(-6, 7))
    assert prof.offsets == [y * (y + 1) for y in range(-6, 7)]
    assert prof.offsets[prof.lines.index(0)] - prof.offsets[prof.lines.index(-1)] == 0


def test_triangular_columns():
    prof = tile_profile(builtin("triangular"), 0, range(0, 10), axis="col")
    assert prof.shifts == [x + 1 for x in range(0, 9)]


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_strip_tiles(n):
    saw = tile_profile(builtin(f"saw({n})"), 0, range(0, n))
    assert set(saw.shifts) == {-(n - 1)}
    comb = tile_profile(builtin(f"comb({n})"), 0, range(0, n))
    assert set(comb.shifts) == {1}


def test_non_constant_shift():
    with pytest.raises(NonConstantShift):
        tile_profile(builtin("cantor1"), 0, range(3))
    with pytest.raises(ValueError):
        tile_profile(builtin("triangle_y"), 0, range(3), axis="diag")
