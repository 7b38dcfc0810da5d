"""Uniform random generation of homogeneous alignments.

Generation walks left to right; at each step the exact match probability is
the ratio of the suffix count after a match step to the suffix count of the
current state. Steps are decided by comparing a uniform integer draw below
the denominator against the numerator, so no floating point is involved and
the distribution over the target set is exactly uniform.

Sample i always draws from the child stream ``stream.spawn(i)``, never from
the base stream directly. Output therefore depends only on (seed, sample
index) and is identical no matter how samples are split across workers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterator

from .alignments import Alignment, ScoringScheme, is_homogeneous, score as alignment_score
from .counting import CountTableC, CountTableD, InfeasibleScore, feasible_composition

DEFAULT_REJECTION_LIMIT = 20
DEFAULT_ATTEMPT_BUDGET = 1_000_000

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class GenerationBudgetExceeded(RuntimeError):
    """Rejection sampling exhausted its attempt budget without enough accepts."""


def _splitmix64(x: int) -> int:
    # SplitMix64 finalizer (Steele, Lea & Flood); used only to derive child seeds
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    x = (x ^ (x >> 27)) * 0x94D049BB133111EB & _MASK64
    return x ^ (x >> 31)


class RandomStream:
    """Deterministic 64-bit-seeded randomness source.

    Wraps the Mersenne Twister (random.Random) and draws only via
    getrandbits, whose output is stable across platforms and Python
    releases. Child stream i is seeded with the (i+1)-th output of the
    SplitMix64 sequence started at this stream's seed.
    """

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._rng = random.Random(seed)

    def getrandbits(self, k: int) -> int:
        return self._rng.getrandbits(k)

    def randbelow(self, bound: int) -> int:
        """Uniform integer in [0, bound), by rejection on getrandbits."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        k = (bound - 1).bit_length()
        getrandbits = self._rng.getrandbits
        r = getrandbits(k)
        while r >= bound:
            r = getrandbits(k)
        return r

    def spawn(self, index: int) -> RandomStream:
        if index < 0:
            raise ValueError("index must be nonnegative")
        return RandomStream(_splitmix64((self.seed + (index + 1) * _GOLDEN) & _MASK64))


def next_letter_probability(table: CountTableD | CountTableC, state: tuple[int, ...]) -> Fraction:
    """Exact probability that the next letter is a match, from a generation state.

    For a fixed-score table the state is (y, k); for a free-score table it is
    (y, h, k) with h the running maximum ordinate. A zero suffix count means
    the caller asked about an unreachable state.
    """
    if isinstance(table, CountTableD):
        s = table.scheme.match_score
        y, k = state
        denominator = table.count(y, k)
        if denominator == 0:
            raise ValueError(f"state {state} has no completions")
        return Fraction(table.count(y + s, k - 1), denominator)
    if isinstance(table, CountTableC):
        s = table.scheme.match_score
        y, h, k = state
        denominator = table.count(y, h, k)
        if denominator == 0:
            raise ValueError(f"state {state} has no completions")
        if k == 1:
            return Fraction(1)  # a one-step completion is always a match
        return Fraction(table.count(y + s, max(h, y + s), k - 1), denominator)
    raise TypeError(f"unsupported table type {type(table).__name__}")


def _fixed_table(scheme: ScoringScheme, n: int, score: int) -> CountTableD:
    if n < 1:
        raise ValueError("length must be >= 1")
    if score < 1 or feasible_composition(scheme, n, score) is None:
        raise InfeasibleScore(f"no alignment of length {n} has score {score} under {scheme}")
    table = CountTableD(scheme, score, n)
    if table.count(0, n) == 0:
        raise InfeasibleScore(f"no homogeneous alignment of length {n} has score {score}")
    return table


def _iter_fixed_bits(table: CountTableD, n: int, count: int, stream: RandomStream,
                     start: int = 0) -> Iterator[int]:
    s = table.scheme.match_score
    p = table.scheme.mismatch_penalty
    target = table.score
    rows = table._rows
    for i in range(start, start + count):
        randbelow = stream.spawn(i).randbelow
        bits = 0
        y = 0
        for k in range(n, 0, -1):
            up = y + s
            if k > 1:
                num = rows[k - 1][up] if up < target else 0
            else:
                num = 1 if up == target else 0
            if randbelow(rows[k][y]) < num:
                bits |= 1 << (n - k)
                y = up
            else:
                y -= p
        yield bits


def _sample_fixed_range(match: int, mismatch: int, n: int, score: int,
                        seed: int, start: int, count: int) -> list[int]:
    table = _fixed_table(ScoringScheme(match, mismatch), n, score)
    return list(_iter_fixed_bits(table, n, count, RandomStream(seed), start))


def sample_fixed(scheme: ScoringScheme, n: int, score: int, count: int,
                 stream: RandomStream, workers: int = 1) -> list[Alignment]:
    """Uniform samples over homogeneous alignments of length n and exact score.

    Output is identical for any worker count; workers only split the sample
    index range.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    table = _fixed_table(scheme, n, score)
    if workers > 1 and count > 1:
        ranges = _index_ranges(count, workers)
        with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
            parts = pool.map(
                _sample_fixed_range,
                *zip(*[(scheme.match_score, scheme.mismatch_penalty, n, score,
                        stream.seed, lo, hi - lo) for lo, hi in ranges]),
            )
        return [Alignment(n, bits) for part in parts for bits in part]
    return [Alignment(n, bits) for bits in _iter_fixed_bits(table, n, count, stream)]


def _index_ranges(count: int, workers: int) -> list[tuple[int, int]]:
    span, extra = divmod(count, workers)
    ranges = []
    lo = 0
    for w in range(workers):
        hi = lo + span + (1 if w < extra else 0)
        if hi > lo:
            ranges.append((lo, hi))
        lo = hi
    return ranges


def _iter_free_bits(table: CountTableC, n: int, count: int, stream: RandomStream,
                    start: int = 0) -> Iterator[int]:
    s = table.scheme.match_score
    p = table.scheme.mismatch_penalty
    for i in range(start, start + count):
        randbelow = stream.spawn(i).randbelow
        bits = 0
        y = h = 0
        for k in range(n, 0, -1):
            denominator = table.count(y, h, k)
            if k == 1:
                num = denominator  # last step must be a match
            else:
                num = table.count(y + s, max(h, y + s), k - 1)
            if randbelow(denominator) < num:
                bits |= 1 << (n - k)
                y += s
                h = max(h, y)
            else:
                y -= p
        yield bits


def _sample_free_range(match: int, mismatch: int, n: int,
                       seed: int, start: int, count: int) -> list[int]:
    table = CountTableC(ScoringScheme(match, mismatch), n)
    return list(_iter_free_bits(table, n, count, RandomStream(seed), start))


def sample_free(scheme: ScoringScheme, n: int, count: int,
                stream: RandomStream, workers: int = 1) -> list[Alignment]:
    """Uniform samples over all homogeneous alignments of length n, any score."""
    if n < 1:
        raise ValueError("length must be >= 1")
    if count < 0:
        raise ValueError("count must be nonnegative")
    table = CountTableC(scheme, n)
    if workers > 1 and count > 1:
        ranges = _index_ranges(count, workers)
        with ProcessPoolExecutor(max_workers=len(ranges)) as pool:
            parts = pool.map(
                _sample_free_range,
                *zip(*[(scheme.match_score, scheme.mismatch_penalty, n,
                        stream.seed, lo, hi - lo) for lo, hi in ranges]),
            )
        return [Alignment(n, bits) for part in parts for bits in part]
    return [Alignment(n, bits) for bits in _iter_free_bits(table, n, count, stream)]


def sample_rejection(scheme: ScoringScheme, n: int, score: int | None, count: int,
                     stream: RandomStream, limit: int = DEFAULT_REJECTION_LIMIT,
                     max_attempts: int = DEFAULT_ATTEMPT_BUDGET) -> list[Alignment]:
    """Uniform sampling by accept-reject; a test oracle only.

    Draws length-n bit strings from the stream and keeps the homogeneous ones
    (with the requested score, when fixed). The acceptance rate decays
    exponentially with n, hence the hard length limit and attempt budget.
    """
    if n < 1:
        raise ValueError("length must be >= 1")
    if n > limit:
        raise ValueError(f"length {n} exceeds the rejection-sampling limit {limit}")
    if count < 0:
        raise ValueError("count must be nonnegative")
    out: list[Alignment] = []
    attempts = 0
    while len(out) < count:
        if attempts >= max_attempts:
            raise GenerationBudgetExceeded(
                f"{len(out)}/{count} accepted after {attempts} attempts"
            )
        attempts += 1
        candidate = Alignment(n, stream.getrandbits(n))
        if score is not None and alignment_score(candidate, scheme) != score:
            continue
        if is_homogeneous(candidate, scheme):
            out.append(candidate)
    return out
