"""Core types for gapless match/mismatch alignments, their score walks, and spaced seeds.

An alignment is a binary sequence (1 = match, 0 = mismatch). Under a scoring
scheme it maps to a lattice walk of prefix scores; the alignment is
homogeneous when its total score is positive and strictly exceeds the score
of every proper contiguous segment, which is the same as saying the walk
stays strictly positive and strictly below its final ordinate everywhere in
between.
"""

from __future__ import annotations

from dataclasses import dataclass

ORACLE_LENGTH_LIMIT = 20


@dataclass(frozen=True)
class ScoringScheme:
    """Per-letter scores: +match_score per match, -mismatch_penalty per mismatch."""

    match_score: int = 1
    mismatch_penalty: int = 3

    def __post_init__(self) -> None:
        if self.match_score < 1:
            raise ValueError("match_score must be a positive integer")
        if self.mismatch_penalty < 1:
            raise ValueError("mismatch_penalty must be a positive integer")

    def letter_score(self, letter: int) -> int:
        return self.match_score if letter else -self.mismatch_penalty


@dataclass(frozen=True)
class Alignment:
    """A gapless alignment packed into an int; bit i-1 holds letter b_i (1 = match)."""

    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("alignment length must be >= 1")
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError("bits out of range for the given length")

    @classmethod
    def from_string(cls, text: str) -> Alignment:
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"alignment must be a nonempty 0/1 string, got {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    def letters(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.length))

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))


@dataclass(frozen=True)
class Walk:
    """Lattice walk of prefix scores: points (k, y_k) for k = 0..n, starting at (0, 0)."""

    points: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Seed:
    """Spaced-seed pattern over '1' (required match) and '0' (don't care).

    Canonical form: the pattern starts and ends with '1'. Any other pattern
    detects exactly the same alignments as a shorter canonical one.
    """

    pattern: str

    def __post_init__(self) -> None:
        if not self.pattern or set(self.pattern) - {"0", "1"}:
            raise ValueError(f"seed must be a nonempty 0/1 string, got {self.pattern!r}")
        if self.pattern[0] != "1" or self.pattern[-1] != "1":
            raise ValueError("seed pattern must start and end with '1'")

    @property
    def span(self) -> int:
        return len(self.pattern)

    @property
    def weight(self) -> int:
        return self.pattern.count("1")

    @property
    def required_mask(self) -> int:
        mask = 0
        for i, ch in enumerate(self.pattern):
            if ch == "1":
                mask |= 1 << i
        return mask

    def __str__(self) -> str:
        return self.pattern


@dataclass(frozen=True)
class DetectionStrategy:
    """Hit rule: required_occurrences seed matches whose consecutive windows
    overlap by at most max_overlap letters (end positions at least
    span - max_overlap apart)."""

    seed: Seed
    required_occurrences: int = 1
    max_overlap: int = 0

    def __post_init__(self) -> None:
        if self.required_occurrences < 1:
            raise ValueError("required_occurrences must be >= 1")
        if not 0 <= self.max_overlap <= self.seed.span - 1:
            raise ValueError("max_overlap must be in [0, span - 1]")


def score(alignment: Alignment, scheme: ScoringScheme) -> int:
    """Total alignment score: sum of per-letter scores."""
    matches = alignment.bits.bit_count()
    return matches * scheme.match_score - (alignment.length - matches) * scheme.mismatch_penalty


def to_walk(alignment: Alignment, scheme: ScoringScheme) -> Walk:
    points = [(0, 0)]
    y = 0
    for k in range(alignment.length):
        y += scheme.match_score if (alignment.bits >> k) & 1 else -scheme.mismatch_penalty
        points.append((k + 1, y))
    return Walk(tuple(points))


def from_walk(walk: Walk, scheme: ScoringScheme) -> Alignment:
    if not walk.points or walk.points[0] != (0, 0):
        raise ValueError("walk must start at the origin (0, 0)")
    bits = 0
    for i in range(1, len(walk.points)):
        k0, y0 = walk.points[i - 1]
        k1, y1 = walk.points[i]
        step = (k1 - k0, y1 - y0)
        if step == (1, scheme.match_score):
            bits |= 1 << (i - 1)
        elif step != (1, -scheme.mismatch_penalty):
            raise ValueError(f"step {step} is not a unit match or mismatch step under {scheme}")
    return Alignment(len(walk.points) - 1, bits)


def _walk_homogeneous(bits: int, n: int, s: int, p: int, total: int) -> bool:
    # prefix ordinates strictly positive, strictly below the total before the end
    if total <= 0:
        return False
    y = 0
    last = n - 1
    for k in range(n):
        y += s if (bits >> k) & 1 else -p
        if y <= 0 or (y >= total and k < last):
            return False
    return True


def is_homogeneous(alignment: Alignment, scheme: ScoringScheme) -> bool:
    """Walk criterion: positive total, every proper prefix ordinate in (0, total)."""
    total = score(alignment, scheme)
    return _walk_homogeneous(
        alignment.bits, alignment.length, scheme.match_score, scheme.mismatch_penalty, total
    )


def is_homogeneous_segments(alignment: Alignment, scheme: ScoringScheme) -> bool:
    """Literal definition: the total strictly exceeds every proper contiguous
    segment score, and is positive (the empty segment counts as score 0)."""
    n = alignment.length
    prefix = [0] * (n + 1)
    for k in range(n):
        prefix[k + 1] = prefix[k] + scheme.letter_score((alignment.bits >> k) & 1)
    total = prefix[n]
    if total <= 0:
        return False
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if (i, j) != (0, n) and prefix[j] - prefix[i] >= total:
                return False
    return True


def seed_detects(seed: Seed, alignment: Alignment) -> bool:
    """True iff some window of the alignment matches the seed at every required position."""
    mask = seed.required_mask
    bits = alignment.bits
    for i in range(alignment.length - seed.span + 1):
        if (bits >> i) & mask == mask:
            return True
    return False


def occurrence_ends(seed: Seed, alignment: Alignment) -> list[int]:
    """1-based end positions of every window the seed matches, in increasing order."""
    mask = seed.required_mask
    bits = alignment.bits
    span = seed.span
    return [i + span for i in range(alignment.length - span + 1) if (bits >> i) & mask == mask]


def _bits_detected(bits: int, length: int, mask: int, span: int, needed: int, min_gap: int) -> bool:
    # greedy earliest-admissible-end selection, optimal for a minimum-gap constraint
    picked = 0
    last = None
    for i in range(length - span + 1):
        if (bits >> i) & mask == mask:
            end = i + span
            if last is None or end - last >= min_gap:
                picked += 1
                if picked >= needed:
                    return True
                last = end
    return False


def strategy_detects(strategy: DetectionStrategy, alignment: Alignment) -> bool:
    """True iff there are required_occurrences seed matches with consecutive
    end positions at least span - max_overlap apart."""
    seed = strategy.seed
    return _bits_detected(
        alignment.bits,
        alignment.length,
        seed.required_mask,
        seed.span,
        strategy.required_occurrences,
        seed.span - strategy.max_overlap,
    )


def enumerate_homogeneous(
    scheme: ScoringScheme,
    n: int,
    score: int | None = None,
    limit: int = ORACLE_LENGTH_LIMIT,
) -> list[Alignment]:
    """Brute-force oracle: all homogeneous alignments of length n (and the given
    score, when fixed), in lexicographic order of their 0/1 text form."""
    if n < 1:
        raise ValueError("length must be >= 1")
    if n > limit:
        raise ValueError(f"length {n} exceeds the enumeration limit {limit}")
    s, p = scheme.match_score, scheme.mismatch_penalty
    out = []
    for bits in range(1 << n):
        matches = bits.bit_count()
        total = matches * s - (n - matches) * p
        if score is not None and total != score:
            continue
        if _walk_homogeneous(bits, n, s, p, total):
            out.append(Alignment(n, bits))
    out.sort(key=str)
    return out
