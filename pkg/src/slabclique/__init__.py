"""Exact maximum-clique algorithms for disk and ball intersection graphs.

Everything is computed over exact rational arithmetic: tangency counts as
intersection, region boundaries are closed, and no predicate ever touches a
float.  The three solver families are

- k-radii disk graphs (``max_clique_kradii``),
- rectangle range queries over unit disks (``build_s_table`` /
  ``build_m_table`` / ``query_rect``),
- ball graphs with centers on parallel planes or on planes perpendicular
  to the xz-plane (``max_clique_balls_parallel`` / ``max_clique_balls_perp``),

each cross-checkable against the brute-force ``oracle`` module.
"""

from .balls import (
    BallInstance,
    enumerate_ball_guesses,
    max_clique_balls_parallel,
    max_clique_balls_perp,
)
from .cobipartite import (
    CliqueResult,
    Guess,
    GuessSlot,
    assemble_candidates,
    assert_side_clique,
    solve_guess,
)
from .errors import (
    BudgetExceededError,
    InternalError,
    ParseError,
    PreconditionError,
    SlabCliqueError,
    ValidationError,
)
from .geometry import (
    Ball,
    Disk,
    Plane,
    Point2,
    Point3,
    RadiusClass,
    Scalar,
    Side,
    balls_intersect,
    disks_intersect,
    dist_sq,
    in_extended_envelope,
    in_slab,
    in_slab_on_plane,
    project_xz,
    radius_classes,
    scalar,
    scalar_to_decimal,
    slab_bound_holds,
)
from .kradii import count_guess_products, enumerate_guesses, max_clique_kradii
from .matching import ConflictGraph, build_conflict_graph
from .oracle import (
    bron_kerbosch_max_clique,
    intersection_graph,
    max_clique_oracle,
    naive_rect_clique,
    verify_clique,
)
from .range_tables import (
    MTable,
    STable,
    UnitInstance,
    build_m_table,
    build_s_table,
    perturb_to_general_position,
    query_rect,
    read_tables,
    write_tables,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BallInstance",
    "BudgetExceededError",
    "CliqueResult",
    "ConflictGraph",
    "Disk",
    "Guess",
    "GuessSlot",
    "InternalError",
    "MTable",
    "ParseError",
    "Plane",
    "Point2",
    "Point3",
    "PreconditionError",
    "RadiusClass",
    "STable",
    "Scalar",
    "Side",
    "SlabCliqueError",
    "UnitInstance",
    "ValidationError",
    "assemble_candidates",
    "assert_side_clique",
    "balls_intersect",
    "bron_kerbosch_max_clique",
    "build_conflict_graph",
    "build_m_table",
    "build_s_table",
    "count_guess_products",
    "disks_intersect",
    "dist_sq",
    "enumerate_ball_guesses",
    "enumerate_guesses",
    "in_extended_envelope",
    "in_slab",
    "in_slab_on_plane",
    "intersection_graph",
    "max_clique_balls_parallel",
    "max_clique_balls_perp",
    "max_clique_kradii",
    "max_clique_oracle",
    "naive_rect_clique",
    "perturb_to_general_position",
    "project_xz",
    "query_rect",
    "radius_classes",
    "read_tables",
    "scalar",
    "scalar_to_decimal",
    "slab_bound_holds",
    "solve_guess",
    "verify_clique",
    "write_tables",
]
