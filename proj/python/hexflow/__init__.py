"""Crystalline curvature flow of planar networks under the hexagonal anisotropy."""

import json

from ._core import (
    HexflowError,
    Network,
    chuvaks,
    curvature_report,
    curvatures,
    evolve,
    fixtures,
    hexagon_abc,
    is_admissible,
    is_critical,
    solve_program,
    solve_shrinker,
    verify_by_flow,
    wulff_hexagon,
)
from ._core import classify as _classify


def classify(jobs=1):
    """Classification rows as a list of dicts."""
    return json.loads(_classify(jobs))


__all__ = [
    "HexflowError",
    "Network",
    "chuvaks",
    "classify",
    "curvature_report",
    "curvatures",
    "evolve",
    "fixtures",
    "hexagon_abc",
    "is_admissible",
    "is_critical",
    "solve_program",
    "solve_shrinker",
    "verify_by_flow",
    "wulff_hexagon",
]
