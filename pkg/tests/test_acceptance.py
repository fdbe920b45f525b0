"""Acceptance suite: one group of tests per criterion, summarised at the end of the run."""

import itertools
from fractions import Fraction as F

import pytest

from pairkit.fitter import (
    PAPER_SETS,
    RECTANGLE_ALT_SET,
    ROTATED_WRONG_SET,
    SAW3_SETS,
    TRIANGULAR_SET_B,
    build_system,
    det6,
    fit,
    fit_and_validate,
    initial_triangle_part,
    samples_for_values,
)
from pairkit.diophantine import uniqueness_scan
from pairkit.inverses import invert, invert_cantor1
from pairkit.lattice import DomainError
from pairkit.mappings import (
    alternating_trig_selector,
    b_transform,
    builtin,
    eval_p3d,
    rhombus_consolidated,
)
from pairkit.oracle import tile_profile, verify_bijection
from pairkit.storage import tri_index, tri_size, tri_unindex
from refdata import INVERTIBLE_MAPS, TABLE2, WALKED_MAPS


def criterion(n, title):
    return pytest.mark.criterion(n, title)


def _sorted(map_id, values):
    return samples_for_values(map_id, sorted(values))


# 1 -------------------------------------------------------------------------

VALUE_TABLE = [
    ("cantor1", (1, 0), 2), ("cantor2", (1, 0), 1), ("cantor1", (1, 1), 4),
    ("triangular", (2, 0), 3), ("triangular", (3, 0), 6),
    ("rosenberg_strong", (0, 2), 8), ("rosenberg_strong", (2, 0), 4),
] + [("half_square_spiral", (x, 0), v) for x, v in zip(range(1, 6), (3, 10, 21, 36, 55))] \
  + [("square_spiral", (x, 0), v) for x, v in zip(range(1, 6), (1, 9, 25, 49, 81))] \
  + [("rectangle_spiral", (x, x), 4 * x * x - 1) for x in range(1, 6)]


@criterion(1, "value table")
@pytest.mark.parametrize("map_id, p, want", VALUE_TABLE)
def test_c1_values(map_id, p, want):
    assert builtin(map_id)(*p) == want


@criterion(1, "value table")
def test_c1_p3d_table():
    assert len(TABLE2) == 20
    assert {p: eval_p3d(p) for p in TABLE2} == TABLE2


# 2 -------------------------------------------------------------------------

@criterion(2, "cantor inverse")
def test_c2_inverse():
    c1 = builtin("cantor1")
    assert invert_cantor1(7) == (1, 2)
    for z in range(10**5 + 1):
        assert c1(*invert_cantor1(z)) == z


# 3 -------------------------------------------------------------------------

@criterion(3, "fitting reproduction")
def test_c3_triangular_set_a():
    report = fit_and_validate(_sorted("triangular", range(6)), "triangular")
    assert report.form.coeffs == (F(1, 2), 0, 0, F(1, 2), 1, 0)
    assert report.validation == "valid"


@criterion(3, "fitting reproduction")
def test_c3_rotated_set_a():
    report = fit_and_validate(_sorted("cantor1_rot", range(6)), "cantor1_rot")
    assert report.form.coeffs == (F(1, 2), -1, F(1, 2), F(1, 2), F(-3, 2), 0)
    assert report.validation == "valid"


@criterion(3, "fitting reproduction")
def test_c3_wrong_set_gives_invalid_form():
    report = fit_and_validate(samples_for_values("cantor1_rot", ROTATED_WRONG_SET), "cantor1_rot")
    assert report.form is not None, f"no unique fit: determinant {report.determinant}"
    assert report.form.coeffs == (F(3, 4), F(-3, 2), F(3, 4), F(-1, 2), F(-1, 2), F(3, 4))
    assert report.validation == "invalid"
    bad = {tuple(p): got for p, _, got in report.mismatches}
    assert bad[(0, 0)] == F(3, 4) and bad[(4, 0)] == F(43, 4)


@criterion(3, "fitting reproduction")
def test_c3_strip_set_decimals():
    report = fit_and_validate(samples_for_values("saw3", SAW3_SETS["wrong"]), "saw3")
    assert report.form is not None, f"no unique fit: determinant {report.determinant}"
    assert abs(float(report.form.a4) - 4.6915) <= 1e-4
    assert abs(float(report.form.a2) - (-2.6915)) <= 1e-4


@criterion(3, "fitting reproduction")
@pytest.mark.parametrize("map_id, values, want", [
    ("triangular", range(6), -4),
    ("triangular", TRIANGULAR_SET_B, -4),
    ("saw3", SAW3_SETS["zero_det"], 0),
    ("rectangle_spiral", RECTANGLE_ALT_SET, -8),
])
def test_c3_determinants(map_id, values, want):
    a, _ = build_system(_sorted(map_id, values))
    assert det6(a) == want


def _fittable_regions():
    for map_id in INVERTIBLE_MAPS:
        for r in range(len(builtin(map_id).regions)):
            if (map_id, r) not in {("saw(2)", 0), ("saw3", 0)}:
                yield map_id, r


@criterion(3, "fitting reproduction")
@pytest.mark.parametrize("key", list(PAPER_SETS))
def test_c3_listed_sets(key):
    map_id, r = key
    assert fit(_sorted(map_id, PAPER_SETS[key])) == builtin(map_id).regions[r][1]


@criterion(3, "fitting reproduction")
@pytest.mark.parametrize("map_id, r", list(_fittable_regions()))
def test_c3_self_consistency(map_id, r):
    m = builtin(map_id)
    assert fit(initial_triangle_part(m, r)) == m.regions[r][1]


# 4 -------------------------------------------------------------------------

@criterion(4, "bijectivity against the walk")
@pytest.mark.parametrize("map_id", WALKED_MAPS)
def test_c4_planar(map_id):
    report = verify_bijection(builtin(map_id), 10**5)
    assert report.passed, report.summary()


@criterion(4, "bijectivity against the walk")
@pytest.mark.parametrize("map_id", ["p3d", "pkd(3)"])
def test_c4_higher(map_id):
    report = verify_bijection(map_id, 10**4)
    assert report.passed, report.summary()


# 5 -------------------------------------------------------------------------

@criterion(5, "round trips")
@pytest.mark.parametrize("map_id", INVERTIBLE_MAPS)
def test_c5_box_round_trip(map_id):
    m = builtin(map_id)
    n = 0
    for p in itertools.product(range(-150, 151), repeat=2):
        if m.in_domain(p):
            assert invert(m, m(*p)) == p
            n += 1
    assert n > 0


@criterion(5, "round trips")
def test_c5_packed_index():
    for r in range(512):
        for c in range(r + 1):
            assert tri_unindex(tri_index(r, c)) == (r, c)
    assert tri_index(511, 511) == tri_size(512) - 1


# 6 -------------------------------------------------------------------------

DIAGONAL = [("cantor1", 0), ("cantor2", 0), ("cantor1_rot", 0)] + [("rhombus_spiral", i) for i in range(4)]
VERTICAL = [("triangular", 0), ("half_square_spiral", 1), ("square_spiral", 0)]
HORIZONTAL = [("half_square_spiral", 0), ("half_square_spiral", 2), ("triangle_y", 0)]


@criterion(6, "coefficient patterns")
@pytest.mark.parametrize("kind, key", [("diagonal", k) for k in DIAGONAL]
                         + [("vertical", k) for k in VERTICAL]
                         + [("horizontal", k) for k in HORIZONTAL])
def test_c6_direction_classes(kind, key):
    map_id, r = key
    a6, a5, a4 = builtin(map_id).regions[r][1].coeffs[:3]
    if kind == "diagonal":
        assert a6 != 0 and a5 != 0 and a4 != 0
    elif kind == "vertical":
        assert a6 != 0 and a5 == a4 == 0
    else:
        assert a4 != 0 and a6 == a5 == 0


@criterion(6, "coefficient patterns")
@pytest.mark.parametrize("map_id", [f"saw({n})" for n in range(2, 9)] + [f"comb({n})" for n in range(2, 9)])
def test_c6_strip_first_order(map_id):
    for _, form in builtin(map_id).regions:
        assert form.coeffs[:3] == (0, 0, 0) and form.coeffs[3:5] != (0, 0)


# 7 -------------------------------------------------------------------------

@criterion(7, "single-formula variants")
def test_c7_rhombus_formula():
    m = builtin("rhombus_spiral")
    bad = [(x, y) for x, y in itertools.product(range(-100, 101), repeat=2)
           if (x, y) != (0, 0) and rhombus_consolidated(x, y) != m(x, y)]
    assert not bad, f"{len(bad)} mismatches, first {bad[:3]}"


@criterion(7, "single-formula variants")
def test_c7_parity_formula():
    m = builtin("alternating")
    c1, c2 = builtin("cantor1").regions[0][1], builtin("cantor2").regions[0][1]
    for x, y in itertools.product(range(101), repeat=2):
        s2, k2 = alternating_trig_selector(x, y)
        assert s2 * c1(x, y) + k2 * c2(x, y) == m(x, y)


# 8 -------------------------------------------------------------------------

@criterion(8, "tile shifts")
def test_c8_triangle_y_tiles():
    lines = range(-20, 21)
    prof = tile_profile(builtin("triangle_y"), 0, lines)
    assert prof.offsets == [y * (y + 1) for y in lines]
    assert prof.offsets[prof.lines.index(0)] == prof.offsets[prof.lines.index(-1)] == 0


# 9 -------------------------------------------------------------------------

@criterion(9, "diophantine uniqueness")
@pytest.mark.parametrize("eq", ["cantor", "triangular"])
def test_c9_unique(eq):
    rep = uniqueness_scan(eq, 500)
    assert not rep.collisions and rep.covered


@criterion(9, "diophantine uniqueness")
def test_c9_degraded_collides():
    rep = uniqueness_scan("degraded", 500)
    assert [(2, 1), (4, 0)] == rep.witnesses(2)[:2]


# 10 ------------------------------------------------------------------------

@criterion(10, "b transform")
def test_c10_b_transform():
    for x, y in itertools.product(range(101), repeat=2):
        assert b_transform((x, y)) == (x + y, x)
    with pytest.raises(DomainError):
        b_transform((-1, 0))
