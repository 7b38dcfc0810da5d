"""Exact counting, uniform generation, and spaced-seed sensitivity for
score-constrained gapless alignments."""

from .alignments import (
    Alignment,
    DetectionStrategy,
    ScoringScheme,
    Seed,
    Walk,
    enumerate_homogeneous,
    from_walk,
    is_homogeneous,
    is_homogeneous_segments,
    occurrence_ends,
    score,
    seed_detects,
    strategy_detects,
    to_walk,
)
from .counting import (
    Composition,
    CountTableC,
    CountTableD,
    InfeasibleScore,
    count_homogeneous,
    count_unconstrained,
    feasible_composition,
)
from .sampling import (
    GenerationBudgetExceeded,
    RandomStream,
    next_letter_probability,
    sample_fixed,
    sample_free,
    sample_rejection,
)
from .search import RankedSeed, RankedSeeds, SearchSpec, enumerate_seeds, find_optimal, seed_count
from .sensitivity import (
    HOMOGENEOUS,
    UNIFORM,
    McEstimate,
    SensitivityQuery,
    SensitivityReport,
    decimal_ratio,
    hit_probability,
    hit_probability_profile,
    mc_estimate,
    viable_suffixes,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "Composition",
    "CountTableC",
    "CountTableD",
    "DetectionStrategy",
    "GenerationBudgetExceeded",
    "HOMOGENEOUS",
    "InfeasibleScore",
    "McEstimate",
    "RandomStream",
    "RankedSeed",
    "RankedSeeds",
    "ScoringScheme",
    "SearchSpec",
    "Seed",
    "SensitivityQuery",
    "SensitivityReport",
    "UNIFORM",
    "Walk",
    "count_homogeneous",
    "count_unconstrained",
    "decimal_ratio",
    "enumerate_homogeneous",
    "enumerate_seeds",
    "feasible_composition",
    "find_optimal",
    "from_walk",
    "hit_probability",
    "hit_probability_profile",
    "is_homogeneous",
    "is_homogeneous_segments",
    "mc_estimate",
    "next_letter_probability",
    "occurrence_ends",
    "sample_fixed",
    "sample_free",
    "sample_rejection",
    "score",
    "seed_count",
    "seed_detects",
    "strategy_detects",
    "to_walk",
    "viable_suffixes",
]
