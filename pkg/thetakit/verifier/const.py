"""Constants."""

from __future__ import annotations

from enum import StrEnum
from typing import TYPE_CHECKING, Final, TypedDict

if TYPE_CHECKING:
    from .theorems import TheoremParams

DEFAULT_BUDGET_MS: Final = 10_000
ENV_BUDGET_MS: Final = "THETAKIT_BUDGET_MS"

DEFAULT_WORKERS: Final = 1
DEFAULT_N_MAX: Final = 4
DEFAULT_PARTS_MAX: Final = 3
DEFAULT_X_MAX: Final = 12
DEFAULT_S_MAX: Final = 6
DEFAULT_GRID_L_MAX: Final = 5

CONF_THEOREM: Final = "theorem"
CONF_PARAMS: Final = "params"
CONF_CORPUS: Final = "corpus"
CONF_N_MIN: Final = "n_min"
CONF_N_MAX: Final = "n_max"
CONF_PARTS_MAX: Final = "parts_max"
CONF_FORMAT: Final = "format"
CONF_WORKERS: Final = "workers"
CONF_BUDGET_MS: Final = "budget_ms"
CONF_TIMINGS: Final = "timings"
CONF_BUNDLE_DIR: Final = "bundle_dir"

BUNDLE_FILENAME: Final = "thetakit-repro-{theorem}.json"

CSV_COLUMNS: Final = ("graph6", "theorem", "params", "lhs", "rhs", "holds", "slack", "millis")
UNKNOWN_VALUE: Final = "unknown"


class TheoremId(StrEnum):
    """Inequalities the verifier can check, by their report identifiers."""

    CLIQUE_COVER_ROOT = "T1.1"
    BIPARTITE_DEGREE_ROOT = "T1.2i"
    BIPARTITE_DEGREE_FERMAT_ROOT = "T1.2ii"
    MINRANK_SUBADDITIVE = "P2.1a"
    MINRANK_INDUCED = "P2.1b"
    INCLUSION_IDENTITY = "P2.2"
    MODULAR_PRODUCT = "T3.1i"
    MODULAR_FERMAT = "T3.1ii"
    MODULAR_PRODUCT_ROOT = "C3.2i"
    MODULAR_FERMAT_ROOT = "C3.2ii"
    FINITE_REAL_ROOT = "T3.3"
    BIPARTITE_PRODUCT = "T4.1i"
    BIPARTITE_FERMAT = "T4.1ii"
    BIPARTITE_PRODUCT_ROOT = "C4.2i"
    BIPARTITE_FERMAT_ROOT = "C4.2ii"
    ODD_TIGHTNESS = "TIGHT-GF2"
    UNIFORM = "T5.1"
    RESTRICTED_SIZES = "T5.2"
    BINOMIAL_POWER = "STAR-INEQ"
    INCREASING_SUBGRAPH = "INC-BMR"


class Verdict(StrEnum):
    TRUE = "true"
    FALSE = "false"
    INDETERMINATE = "indeterminate"
    VACUOUS = "vacuous"


class ReportFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class CorpusKind(StrEnum):
    """What a theorem is checked over."""

    GRAPHS = "graphs"
    BIPARTITE = "bipartite"
    GRID = "grid"


class VerifyConfig(TypedDict, total=False):
    """Config for a verification run."""

    theorem: TheoremId
    params: TheoremParams
    corpus: str | None
    n_min: int
    n_max: int
    parts_max: int
    format: ReportFormat
    workers: int
    budget_ms: int | None
    timings: bool
    bundle_dir: str
