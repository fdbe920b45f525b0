"""Exact pairing polynomials on integer lattices: evaluation, inverses,
six-point fitting, walk oracles, Diophantine checks and packed storage."""

from .lattice import (
    Affine2,
    DomainError,
    NotInImage,
    Point2,
    Point3,
    Region,
    SingularSystem,
    isqrt,
    region,
)
from .mappings import (
    BUILTIN_IDS,
    PiecewiseMapping,
    QuadForm,
    builtin,
    eval_p3d,
    eval_pkd,
)
from .inverses import invert, invert_cantor1, invert_p3d, invert_pkd
from .fitter import (
    FitReport,
    SamplePoint,
    det6,
    fit,
    fit3d,
    fit_and_validate,
    samples_for_values,
    solve_exact,
)
from .oracle import enumerate_map, tile_profile, verify_bijection
from .diophantine import solve_cantor_dioph, solve_triangular_dioph, uniqueness_scan
from .storage import PackedSimplex3, PackedTriangular, tri_index, tri_unindex

__version__ = "0.1.0"
