"""Constants."""

from __future__ import annotations

from enum import StrEnum
from typing import Final

# graph6 short form encodes n in a single byte
GRAPH6_MAX_VERTICES: Final = 62
GRAPH6_OFFSET: Final = 63
GRAPH6_HEADER: Final = ">>graph6<<"

# 2^21 labeled graphs at n = 7
ENUMERATION_MAX_VERTICES: Final = 7
BIPARTITE_ENUMERATION_MAX_CELLS: Final = 16

# Hard cap on universe size for the intersection-number search
UNIVERSE_CAP: Final = 20

DEFAULT_MINRANK_BUDGET: Final = 2_000_000
DEFAULT_REAL_SEARCH_ENTRIES: Final = (-2, -1, 1, 2)

EMPTY_SET_TOKEN: Final = "-"


class SolveStatus(StrEnum):
    """Outcome of an exact search."""

    SOLVED = "solved"
    EXHAUSTED = "exhausted"
    TIMED_OUT = "timed_out"
    BUDGET = "budget"


class RepresentationMode(StrEnum):
    FULL = "full"
    BIPARTITE = "bipartite"
    UNIFORM = "uniform"
    SIZES = "sizes"


class WitnessVariant(StrEnum):
    """Which polynomial the witness matrix evaluates on intersection sizes."""

    PRODUCT = "product"
    FERMAT = "fermat"


class GraphClass(StrEnum):
    """Graph classes with a known real minimum rank."""

    EDGELESS = "edgeless"
    COMPLETE = "complete"
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    COMPLETE_BIPARTITE = "complete_bipartite"
    UNSUPPORTED = "unsupported"
