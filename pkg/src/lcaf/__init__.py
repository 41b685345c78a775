"""Longest common Abelian factor solvers for plain and RLE strings."""

from .core import (
    InvalidInputError,
    LcafResult,
    ParikhVector,
    PlainString,
    RleString,
    parikh,
    renumber_alphabet,
    rle_decode,
    rle_encode,
)
from .oracle import (
    OracleGuardError,
    has_abelian_factor,
    lcaf_oracle,
    max_intersection_oracle,
    rect_points_oracle,
    window_parikh_set,
)
from .bucketed import WordBudgetError, lcaf_bucketed, select_b
from .rle_rect import (
    Rect,
    RectDelta,
    find_occurrence,
    l1_interval,
    min_cover_index,
    rect,
    rect_delta_stream,
    rects_at_norm,
)
from .rle_cubic import (
    best_against,
    consistent,
    intersection_max_norm,
    lcaf_rle_cubic,
    rect_parikh,
)
from .rle_geom import (
    GeomInstance,
    StepFunction,
    envelopes_binary,
    lcaf_rle_binary,
    lcaf_rle_geometric,
    normalize,
    reduction_instances,
    solve_2d,
    solve_3d,
)

__all__ = [
    "InvalidInputError",
    "LcafResult",
    "ParikhVector",
    "PlainString",
    "RleString",
    "parikh",
    "renumber_alphabet",
    "rle_decode",
    "rle_encode",
    "OracleGuardError",
    "has_abelian_factor",
    "lcaf_oracle",
    "max_intersection_oracle",
    "rect_points_oracle",
    "window_parikh_set",
    "WordBudgetError",
    "lcaf_bucketed",
    "select_b",
    "Rect",
    "RectDelta",
    "find_occurrence",
    "l1_interval",
    "min_cover_index",
    "rect",
    "rect_delta_stream",
    "rects_at_norm",
    "best_against",
    "consistent",
    "intersection_max_norm",
    "lcaf_rle_cubic",
    "rect_parikh",
    "GeomInstance",
    "StepFunction",
    "envelopes_binary",
    "lcaf_rle_binary",
    "lcaf_rle_geometric",
    "normalize",
    "reduction_instances",
    "solve_2d",
    "solve_3d",
]

__version__ = "0.1.0"
