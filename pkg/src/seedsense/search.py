"""Exhaustive spaced-seed enumeration and ranking by exact sensitivity.

Candidate evaluation is embarrassingly parallel; results are merged and
sorted by exact probability (descending) with lexicographic pattern order as
the tie-break, so parallel and serial runs rank identically. A seed and its
reversal always have the same hit probability (reversal is a bijection on
both alignment models that preserves detection), so only one of each mirror
pair is evaluated.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .alignments import DetectionStrategy, ScoringScheme, Seed
from .sensitivity import HOMOGENEOUS, MODELS, hit_probability_profile


@dataclass(frozen=True)
class SearchSpec:
    weight: int
    max_span: int
    scheme: ScoringScheme
    length: int
    score: int
    model: str = HOMOGENEOUS
    top_k: int = 10

    def __post_init__(self) -> None:
        if self.weight < 2:
            raise ValueError("weight must be >= 2")
        if self.max_span < self.weight:
            raise ValueError("max_span must be >= weight")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class RankedSeed:
    seed: Seed
    numerator: int
    denominator: int

    @property
    def probability(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class RankedSeeds:
    entries: tuple[RankedSeed, ...]
    candidate_count: int
    elapsed_seconds: float


def enumerate_seeds(weight: int, max_span: int) -> Iterator[Seed]:
    """Every canonical seed of the given weight with span in [weight, max_span],
    ordered by span, then lexicographically by pattern."""
    if weight < 2:
        raise ValueError("weight must be >= 2")
    if max_span < weight:
        raise ValueError("max_span must be >= weight")
    for span in range(weight, max_span + 1):
        patterns = []
        for interior in combinations(range(1, span - 1), weight - 2):
            cells = ["0"] * span
            cells[0] = cells[-1] = "1"
            for i in interior:
                cells[i] = "1"
            patterns.append("".join(cells))
        patterns.sort()
        for pattern in patterns:
            yield Seed(pattern)


def seed_count(weight: int, max_span: int) -> int:
    """Closed form for the enumeration size."""
    return sum(math.comb(span - 2, weight - 2) for span in range(weight, max_span + 1))


def _evaluate_patterns(patterns: list[str], match: int, mismatch: int, length: int,
                       score: int, model: str) -> list[tuple[str, int, int]]:
    scheme = ScoringScheme(match, mismatch)
    out = []
    for pattern in patterns:
        strategy = DetectionStrategy(Seed(pattern))
        report = hit_probability_profile(strategy, scheme, score, [length], model)[0]
        out.append((pattern, report.numerator, report.denominator))
    return out


def find_optimal(spec: SearchSpec, threads: int | None = None) -> RankedSeeds:
    """Rank every candidate seed by exact hit probability under the spec's model."""
    started = time.perf_counter()
    patterns = [seed.pattern for seed in enumerate_seeds(spec.weight, spec.max_span)]
    representatives = sorted({min(p, p[::-1]) for p in patterns})
    if threads is None:
        threads = os.cpu_count() or 1
    args = (spec.scheme.match_score, spec.scheme.mismatch_penalty,
            spec.length, spec.score, spec.model)
    if threads > 1 and len(representatives) > 1:
        chunks = [representatives[w::threads] for w in range(threads)]
        chunks = [chunk for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(_evaluate_patterns, chunk, *args) for chunk in chunks]
            evaluated = {pattern: (num, den)
                         for future in futures
                         for pattern, num, den in future.result()}
    else:
        evaluated = {pattern: (num, den)
                     for pattern, num, den in _evaluate_patterns(representatives, *args)}
    ranked = []
    for pattern in patterns:
        num, den = evaluated[min(pattern, pattern[::-1])]
        ranked.append(RankedSeed(Seed(pattern), num, den))
    ranked.sort(key=lambda r: (Fraction(-r.numerator, r.denominator), r.seed.pattern))
    return RankedSeeds(tuple(ranked[: spec.top_k]), len(patterns),
                       time.perf_counter() - started)
