"""Command-line interface.

Subcommands: count, generate, sensitivity, mc, optimize, curve, selfcheck.
All parameters are flags and are echoed into CSV/JSON output rows; text
output keeps the primary result terse. Exit codes: 0 success, 2 bad
arguments, 3 infeasible length/score combination, 4 failed self-check.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from typing import Sequence

import click

from .alignments import DetectionStrategy, ScoringScheme, Seed
from .counting import CountTableD, InfeasibleScore, count_homogeneous, count_unconstrained
from .sampling import RandomStream, sample_fixed, sample_free
from .search import SearchSpec, find_optimal
from .sensitivity import (
    HOMOGENEOUS,
    UNIFORM,
    SensitivityQuery,
    decimal_ratio,
    hit_probability_profile,
    mc_estimate,
)
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_SELFCHECK = 4


class SelfCheckFailure(Exception):
    """At least one consistency suite reported a failure."""


def _scheme_options(f):
    f = click.option("--match", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Score added per matching position.")(f)
    f = click.option("--mismatch", type=click.IntRange(min=1), default=3, show_default=True,
                     help="Penalty magnitude subtracted per mismatching position.")(f)
    return f


def _output_options(f):
    f = click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]),
                     default="text", show_default=True, help="Output rendering.")(f)
    f = click.option("--precision", type=click.IntRange(min=1), default=6, show_default=True,
                     help="Digits in decimal probability renderings.")(f)
    f = click.option("--output", "output_path", type=click.Path(dir_okay=False, writable=True),
                     default=None, help="Write to this file instead of standard output.")(f)
    return f


def _strategy_options(f):
    f = click.option("--seed", "seed_pattern", required=True,
                     help="Seed pattern over 0/1; must start and end with 1.")(f)
    f = click.option("--occurrences", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Seed occurrences required for a hit.")(f)
    f = click.option("--max-overlap", type=click.IntRange(min=0), default=0, show_default=True,
                     help="Largest permitted overlap between consecutive occurrences.")(f)
    return f


def _parse_strategy(seed_pattern: str, occurrences: int, max_overlap: int) -> DetectionStrategy:
    try:
        return DetectionStrategy(Seed(seed_pattern), occurrences, max_overlap)
    except ValueError as err:
        raise click.BadParameter(str(err))


def _parse_range(text: str) -> list[int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise click.BadParameter("length range must look like a:b or a:b:step")
    try:
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise click.BadParameter(f"length range {text!r} is not numeric")
    if lo < 1 or hi < lo or step < 1:
        raise click.BadParameter(f"length range {text!r} is empty or invalid")
    return list(range(lo, hi + 1, step))


def _emit(rows: list[dict], text_lines: list[str], fmt: str, output_path: str | None) -> None:
    if fmt == "text":
        payload = "".join(line + "\n" for line in text_lines)
    elif fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        payload = buffer.getvalue()
    else:
        payload = json.dumps(rows, indent=2) + "\n"
    if output_path:
        with open(output_path, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        click.echo(payload, nl=False)


@click.group()
def cli() -> None:
    """Exact counting, uniform generation, and spaced-seed sensitivity for
    score-constrained gapless alignments."""


@cli.command()
@click.option("--length", type=click.IntRange(min=1), required=True, help="Alignment length.")
@click.option("--score", type=int, default=None, help="Total alignment score; omit for any score.")
@click.option("--model", type=click.Choice([HOMOGENEOUS, UNIFORM]), default=HOMOGENEOUS,
              show_default=True, help="Alignment population to count.")
@_scheme_options
@_output_options
def count(length: int, score: int | None, model: str, match: int, mismatch: int,
          fmt: str, precision: int, output_path: str | None) -> None:
    """Count alignments of a given length (and score)."""
    scheme = ScoringScheme(match, mismatch)
    if model == UNIFORM:
        if score is None:
            raise click.UsageError("--model all requires --score")
        result = count_unconstrained(scheme, length, score)
    else:
        result = count_homogeneous(scheme, length, score)
    rows = [{
        "match": match, "mismatch": mismatch, "length": length,
        "score": score, "model": model, "count": str(result),
    }]
    _emit(rows, [str(result)], fmt, output_path)


@cli.command()
@click.option("--length", type=click.IntRange(min=1), required=True, help="Alignment length.")
@click.option("--score", type=int, default=None,
              help="Exact total score; omit to sample over all homogeneous alignments.")
@click.option("--samples", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--rng-seed", type=click.IntRange(min=0, max=2**64 - 1), default=0,
              show_default=True, help="64-bit seed for the sample streams.")
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Worker processes; output is identical for any value "
                   "(default: one per core for large sample counts).")
@_scheme_options
@_output_options
def generate(length: int, score: int | None, samples: int, rng_seed: int, threads: int | None,
             match: int, mismatch: int, fmt: str, precision: int,
             output_path: str | None) -> None:
    """Generate uniform random homogeneous alignments, one per line."""
    scheme = ScoringScheme(match, mismatch)
    stream = RandomStream(rng_seed)
    if threads is None:
        # worker processes only pay off for big batches; output never changes
        threads = (os.cpu_count() or 1) if samples >= 50_000 else 1
    workers = threads
    if score is None:
        drawn = sample_free(scheme, length, samples, stream, workers=workers)
    else:
        drawn = sample_fixed(scheme, length, score, samples, stream, workers=workers)
    rows = [{
        "alignment": str(a), "match": match, "mismatch": mismatch, "length": length,
        "score": score, "rng_seed": rng_seed, "samples": samples,
    } for a in drawn]
    text_lines = [str(a) for a in drawn]
    text_lines.append(
        f"# match={match} mismatch={mismatch} length={length} "
        f"score={'any' if score is None else score} rng-seed={rng_seed} samples={samples}"
    )
    _emit(rows, text_lines, fmt, output_path)


def _sensitivity_rows(reports, precision: int) -> list[dict]:
    rows = []
    for report in reports:
        q = report.query
        rows.append({
            "seed": q.strategy.seed.pattern,
            "occurrences": q.strategy.required_occurrences,
            "max_overlap": q.strategy.max_overlap,
            "match": q.scheme.match_score,
            "mismatch": q.scheme.mismatch_penalty,
            "length": q.length,
            "score": q.score,
            "model": q.model,
            "numerator": str(report.numerator),
            "denominator": str(report.denominator),
            "probability": report.decimal(precision),
        })
    return rows


@cli.command()
@_strategy_options
@click.option("--length", type=click.IntRange(min=1), required=True, help="Alignment length.")
@click.option("--score", type=int, required=True, help="Total alignment score.")
@click.option("--model", type=click.Choice([HOMOGENEOUS, UNIFORM]), default=HOMOGENEOUS,
              show_default=True, help="Alignment population.")
@_scheme_options
@_output_options
def sensitivity(seed_pattern: str, occurrences: int, max_overlap: int, length: int, score: int,
                model: str, match: int, mismatch: int, fmt: str, precision: int,
                output_path: str | None) -> None:
    """Exact probability that the strategy detects a random alignment."""
    strategy = _parse_strategy(seed_pattern, occurrences, max_overlap)
    scheme = ScoringScheme(match, mismatch)
    if model == HOMOGENEOUS and score < 1:
        raise click.UsageError("--model homogeneous requires --score >= 1")
    report = hit_probability_profile(strategy, scheme, score, [length], model)[0]
    _emit(_sensitivity_rows([report], precision), [report.decimal(precision)],
          fmt, output_path)


@cli.command()
@_strategy_options
@click.option("--length", type=click.IntRange(min=1), required=True, help="Alignment length.")
@click.option("--score", type=int, required=True, help="Total alignment score.")
@click.option("--model", type=click.Choice([HOMOGENEOUS, UNIFORM]), default=HOMOGENEOUS,
              show_default=True, help="Alignment population.")
@click.option("--samples", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--rng-seed", type=click.IntRange(min=0, max=2**64 - 1), default=0,
              show_default=True)
@_scheme_options
@_output_options
def mc(seed_pattern: str, occurrences: int, max_overlap: int, length: int, score: int,
       model: str, samples: int, rng_seed: int, match: int, mismatch: int,
       fmt: str, precision: int, output_path: str | None) -> None:
    """Monte-Carlo estimate of the hit probability, with standard error."""
    strategy = _parse_strategy(seed_pattern, occurrences, max_overlap)
    scheme = ScoringScheme(match, mismatch)
    if model == HOMOGENEOUS and score < 1:
        raise click.UsageError("--model homogeneous requires --score >= 1")
    query = SensitivityQuery(strategy, scheme, length, score, model)
    result = mc_estimate(query, samples, RandomStream(rng_seed))
    estimate_text = decimal_ratio(result.hits, result.samples, precision)
    stderr_text = f"{result.stderr:.{precision}f}"
    rows = [{
        "seed": seed_pattern, "occurrences": occurrences, "max_overlap": max_overlap,
        "match": match, "mismatch": mismatch, "length": length, "score": score,
        "model": model, "samples": samples, "rng_seed": rng_seed,
        "hits": result.hits, "estimate": estimate_text, "stderr": stderr_text,
    }]
    _emit(rows, [f"{estimate_text} stderr {stderr_text}"], fmt, output_path)


@cli.command()
@click.option("--weight", type=click.IntRange(min=2), required=True,
              help="Required matches in every candidate seed.")
@click.option("--max-span", type=click.IntRange(min=2), required=True,
              help="Largest candidate span to enumerate.")
@click.option("--length", type=click.IntRange(min=1), required=True, help="Alignment length.")
@click.option("--score", type=int, required=True, help="Total alignment score.")
@click.option("--model", type=click.Choice([HOMOGENEOUS, UNIFORM]), default=HOMOGENEOUS,
              show_default=True, help="Alignment population.")
@click.option("--top", type=click.IntRange(min=1), default=10, show_default=True,
              help="Ranked seeds to keep.")
@click.option("--threads", type=click.IntRange(min=1), default=None,
              help="Worker processes (default: available cores).")
@_scheme_options
@_output_options
def optimize(weight: int, max_span: int, length: int, score: int, model: str, top: int,
             threads: int | None, match: int, mismatch: int, fmt: str, precision: int,
             output_path: str | None) -> None:
    """Exhaustively rank candidate seeds by exact sensitivity."""
    scheme = ScoringScheme(match, mismatch)
    try:
        spec = SearchSpec(weight, max_span, scheme, length, score, model, top)
    except ValueError as err:
        raise click.UsageError(str(err))
    ranked = find_optimal(spec, threads=threads)
    rows = []
    text_lines = []
    for rank, entry in enumerate(ranked.entries, start=1):
        probability = decimal_ratio(entry.numerator, entry.denominator, precision)
        rows.append({
            "rank": rank, "seed": entry.seed.pattern, "span": entry.seed.span,
            "weight": entry.seed.weight, "numerator": str(entry.numerator),
            "denominator": str(entry.denominator), "probability": probability,
        })
        text_lines.append(f"{rank} {entry.seed.pattern} {probability}")
    text_lines.append(f"# candidates={ranked.candidate_count}")
    _emit(rows, text_lines, fmt, output_path)


@cli.command()
@_strategy_options
@click.option("--score", type=int, required=True, help="Total alignment score.")
@click.option("--length-range", "length_range", required=True,
              help="Lengths to sweep, as a:b or a:b:step (inclusive).")
@click.option("--model", type=click.Choice([HOMOGENEOUS, UNIFORM, "both"]), default="both",
              show_default=True, help="Population(s) to evaluate.")
@_scheme_options
@_output_options
def curve(seed_pattern: str, occurrences: int, max_overlap: int, score: int, length_range: str,
          model: str, match: int, mismatch: int, fmt: str, precision: int,
          output_path: str | None) -> None:
    """Hit probability as a function of alignment length, at a fixed score.

    Lengths in the range with no alignment of the given score (in every
    requested model) are skipped; each remaining (length, model) pair yields
    exactly one row.
    """
    strategy = _parse_strategy(seed_pattern, occurrences, max_overlap)
    scheme = ScoringScheme(match, mismatch)
    if score < 1 and model != UNIFORM:
        raise click.UsageError("homogeneous curves require --score >= 1")
    lengths = _parse_range(length_range)
    period = scheme.match_score + scheme.mismatch_penalty
    feasible = [n for n in lengths
                if (score + n * scheme.mismatch_penalty) % period == 0
                and 0 <= (score + n * scheme.mismatch_penalty) // period <= n]
    models = [HOMOGENEOUS, UNIFORM] if model == "both" else [model]
    if HOMOGENEOUS in models and feasible:
        # a feasible composition can still have an empty homogeneous population
        table = CountTableD(scheme, score, max(feasible))
        feasible = [n for n in feasible if table.count(0, n) > 0]
    if not feasible:
        raise InfeasibleScore(f"no length in {length_range} admits score {score}")
    by_model = {}
    for m in models:
        reports = hit_probability_profile(strategy, scheme, score, feasible, m)
        by_model[m] = dict(zip(feasible, reports))
    rows = []
    text_lines = []
    for n in feasible:
        for m in sorted(models):
            report = by_model[m][n]
            probability = report.decimal(precision)
            rows.append({
                "n": n, "score": score, "seed": seed_pattern, "model": m,
                "numerator": str(report.numerator),
                "denominator": str(report.denominator),
                "probability": probability,
            })
            text_lines.append(f"n={n} model={m} probability={probability}")
    _emit(rows, text_lines, fmt, output_path)


@cli.command()
@click.option("--max-length", type=click.IntRange(min=1, max=20), default=14, show_default=True,
              help="Exhaustive-enumeration bound for the oracle suites.")
@_output_options
def selfcheck(max_length: int, fmt: str, precision: int, output_path: str | None) -> None:
    """Run the brute-force oracle suites and report pass/fail per property."""
    results = run_selfcheck(max_length)
    rows = [{"property": r.name, "status": "pass" if r.passed else "FAIL", "detail": r.detail}
            for r in results]
    text_lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    failures = sum(not r.passed for r in results)
    text_lines.append(f"# {len(results) - failures}/{len(results)} properties passed")
    _emit(rows, text_lines, fmt, output_path)
    if failures:
        raise SelfCheckFailure(f"{failures} consistency properties failed")


def run(argv: Sequence[str] | None = None) -> int:
    """Dispatch a command line; returns the process exit code."""
    try:
        cli.main(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.UsageError as err:
        err.show()
        return EXIT_USAGE
    except click.exceptions.Exit as err:
        return err.exit_code
    except click.ClickException as err:
        err.show()
        return err.exit_code
    except InfeasibleScore as err:
        click.echo(f"error: {err}", err=True)
        return EXIT_INFEASIBLE
    except SelfCheckFailure as err:
        click.echo(f"error: {err}", err=True)
        return EXIT_SELFCHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
