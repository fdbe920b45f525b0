"""Reference values shared by several test modules."""

from fractions import Fraction as F

from pairkit.mappings import QuadForm

# (x, y, z) -> value for the first four planes of the 3D map
TABLE2 = {
    (0, 0, 0): 0,
    (0, 0, 1): 1, (1, 0, 0): 2, (0, 1, 0): 3,
    (0, 0, 2): 4, (1, 0, 1): 5, (0, 1, 1): 6, (2, 0, 0): 7, (1, 1, 0): 8, (0, 2, 0): 9,
    (0, 0, 3): 10, (1, 0, 2): 11, (0, 1, 2): 12, (2, 0, 1): 13, (1, 1, 1): 14,
    (0, 2, 1): 15, (3, 0, 0): 16, (2, 1, 0): 17, (1, 2, 0): 18, (0, 3, 0): 19,
}

# maps checked against their walks on 10^5 points
WALKED_MAPS = [
    "cantor1", "cantor2", "cantor1_rot", "triangular", "triangle_x", "triangle_y",
    "rosenberg_strong", "half_square_spiral", "rhombus_spiral", "square_spiral",
    "rectangle_spiral", "connected_triangle", "saw(2)", "saw(5)", "comb(3)", "saw3",
    "zigzag_full_plane", "alternating", "sheared(2)",
]

INVERTIBLE_MAPS = WALKED_MAPS + ["zigzag_full_plane_z", "sheared(0)", "comb(7)", "saw(9)"]

# the "wrong" quadratic through six points of the rotated Cantor map
WRONG_ROTATED = QuadForm(F(3, 4), F(-3, 2), F(3, 4), F(-1, 2), F(-1, 2), F(3, 4))
