"""Reproducible statistics over the term families.

Four experiment kinds, all driven by one seeded generator per run:

  * var-depth: mean variable depth (Abs+App nodes above an index
    occurrence, averaged within a term, then over the sample) per size,
    with the comparison curves 2n/log(n)^a for a = 1, 1.1;
  * head-lambdas: mean length of the leading abstraction chain per size,
    with curves sqrt(n/log(n)^a) for a = 0.025, 0.2, 0.3, 0.5;
  * typable-ratio: fraction of simply-typable terms per size, exhaustive
    or Monte Carlo (with a 95% normal-approximation interval);
  * segment-histogram: the rank interval of one size split into near-equal
    contiguous segments, with the typable fraction sampled per segment;
    typable terms concentrate in the low-rank (abstraction-heavy) part.

Sample statistics are computed exactly as Fractions and only rounded at
the formatting boundary (6 significant digits), so a (spec, seed) pair
produces byte-identical reports everywhere; reports carry no timestamps.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

from .counting import count_nf, count_terms
from .ranking import enumerate_nf, enumerate_terms, unrank_nf, unrank_term
from .sampling import SamplerConfig, make_rng, random_nf, random_rank, random_term
from .terms import Term, head_lambdas, variable_depths
from .typecheck import is_typable

KINDS = ("var-depth", "head-lambdas", "typable-ratio", "segment-histogram")

_DEPTH_CURVES = (1.0, 1.1)
_HEAD_CURVES = (0.025, 0.2, 0.3, 0.5)

_Z95 = 1.96  # two-sided 95% normal quantile


@dataclass(frozen=True)
class ExperimentSpec:
    """A complete, seedable description of one experiment run."""

    kind: str
    family: str = "terms"
    sizes: tuple[int, ...] = ()
    samples_per_point: int = 100
    segments: int = 0
    seed: int = 0
    mode: str = "montecarlo"
    exhaustive_cap: int = 10 ** 8

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}, expected one of {KINDS}")
        if self.family not in ("terms", "nf"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.mode not in ("montecarlo", "exhaustive"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.sizes:
            raise ValueError("at least one size is required")
        if any(n < 1 for n in self.sizes):
            raise ValueError("sizes must be positive")
        if self.mode == "montecarlo" and self.samples_per_point < 1:
            raise ValueError("samples_per_point must be positive")
        if self.kind == "segment-histogram":
            if len(self.sizes) != 1:
                raise ValueError("segment-histogram wants exactly one size")
            if self.segments < 1:
                raise ValueError("segments must be positive")
            if self.mode != "montecarlo":
                raise ValueError("segment-histogram is Monte Carlo only")


@dataclass
class ExperimentReport:
    """Tabular result plus the spec that produced it."""

    kind: str
    family: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    metadata: dict

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines.extend(",".join(_format_cell(c) for c in row) for row in self.rows)
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "family": self.family,
            "columns": list(self.columns),
            "rows": [[_json_cell(c) for c in row] for row in self.rows],
            "metadata": self.metadata,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _format_cell(value) -> str:
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (float, Fraction)):
        return f"{float(value):.6g}"
    return str(value)


def _json_cell(value):
    if isinstance(value, int):
        return value
    if isinstance(value, (float, Fraction)):
        return float(f"{float(value):.6g}")
    return value


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run a spec to a report.  Same spec, same report, byte for byte."""
    runner = {
        "var-depth": _run_mean_statistic,
        "head-lambdas": _run_mean_statistic,
        "typable-ratio": _run_typable_ratio,
        "segment-histogram": _run_segment_histogram,
    }[spec.kind]
    return runner(spec)


def _family_tools(spec: ExperimentSpec):
    if spec.family == "nf":
        return count_nf, enumerate_nf, random_nf, unrank_nf
    return count_terms, enumerate_terms, random_term, unrank_term


def _check_cap(spec: ExperimentSpec, total: int, size: int) -> None:
    if total > spec.exhaustive_cap:
        raise ValueError(
            f"family has {total} members at size {size}, over the exhaustive "
            f"cap {spec.exhaustive_cap}; use montecarlo mode")


def _run_mean_statistic(spec: ExperimentSpec) -> ExperimentReport:
    if spec.kind == "var-depth":
        def statistic(t: Term) -> Fraction:
            depths = variable_depths(t)
            return Fraction(sum(depths), len(depths))
        curves = _DEPTH_CURVES
        curve_of = _depth_curve
        value_column = "mean_depth"
        formula = "2*n/log(n)**a"
    else:
        def statistic(t: Term) -> Fraction:
            return Fraction(head_lambdas(t))
        curves = _HEAD_CURVES
        curve_of = _head_curve
        value_column = "mean_head_lambdas"
        formula = "sqrt(n/log(n)**a)"

    count, enumerate_fn, random_fn, _ = _family_tools(spec)
    rng = make_rng(spec.seed)
    rows = []
    for size in spec.sizes:
        if spec.mode == "exhaustive":
            total = count(size, 0)
            _check_cap(spec, total, size)
            acc = sum(statistic(t) for t in enumerate_fn(size, 0))
            samples = total
        else:
            cfg = SamplerConfig(size=size, family=spec.family, seed=spec.seed)
            acc = Fraction(0)
            for _ in range(spec.samples_per_point):
                acc += statistic(random_fn(cfg, rng))
            samples = spec.samples_per_point
        mean = acc / samples
        rows.append((size, samples, mean,
                     *(curve_of(size, a) for a in curves)))
    columns = ("size", "samples", value_column,
               *(f"curve_a{a:g}" for a in curves))
    return ExperimentReport(spec.kind, spec.family, columns, tuple(rows),
                            _metadata(spec, curves=formula))


def _depth_curve(n: int, a: float) -> float:
    log = math.log(n)
    return math.inf if log == 0 else 2 * n / log ** a


def _head_curve(n: int, a: float) -> float:
    log = math.log(n)
    return math.inf if log == 0 else math.sqrt(n / log ** a)


def _run_typable_ratio(spec: ExperimentSpec) -> ExperimentReport:
    count, enumerate_fn, random_fn, _ = _family_tools(spec)
    rng = make_rng(spec.seed)
    rows = []
    if spec.mode == "exhaustive":
        for size in spec.sizes:
            total = count(size, 0)
            _check_cap(spec, total, size)
            typable = sum(1 for t in enumerate_fn(size, 0) if is_typable(t))
            rows.append((size, total, typable, Fraction(typable, total)))
        columns = ("size", "total", "typable", "ratio")
    else:
        for size in spec.sizes:
            cfg = SamplerConfig(size=size, family=spec.family, seed=spec.seed)
            typable = sum(1 for _ in range(spec.samples_per_point)
                          if is_typable(random_fn(cfg, rng)))
            ratio = Fraction(typable, spec.samples_per_point)
            low, high = _binomial_interval(typable, spec.samples_per_point)
            rows.append((size, spec.samples_per_point, typable, ratio,
                         low, high))
        columns = ("size", "samples", "typable", "ratio", "ci_low", "ci_high")
    return ExperimentReport(spec.kind, spec.family, columns, tuple(rows),
                            _metadata(spec))


def _binomial_interval(successes: int, trials: int) -> tuple[float, float]:
    p = successes / trials
    half = _Z95 * math.sqrt(p * (1 - p) / trials)
    return max(0.0, p - half), min(1.0, p + half)


def _run_segment_histogram(spec: ExperimentSpec) -> ExperimentReport:
    count, _, _, unrank = _family_tools(spec)
    size = spec.sizes[0]
    total = count(size, 0)
    if spec.segments > total:
        raise ValueError(
            f"cannot split {total} ranks into {spec.segments} segments")
    rng = make_rng(spec.seed)
    base, spare = divmod(total, spec.segments)
    rows = []
    lo = 1
    for segment in range(spec.segments):
        width = base + (1 if segment < spare else 0)  # spare spread leftmost
        hi = lo + width - 1
        typable = 0
        for _ in range(spec.samples_per_point):
            rank = lo - 1 + random_rank(width, rng)
            typable += is_typable(unrank(size, 0, rank))
        rows.append((segment, lo, hi, spec.samples_per_point, typable,
                     Fraction(typable, spec.samples_per_point)))
        lo = hi + 1
    columns = ("segment", "rank_lo", "rank_hi", "samples", "typable", "ratio")
    return ExperimentReport(spec.kind, spec.family, columns, tuple(rows),
                            _metadata(spec))


def _metadata(spec: ExperimentSpec, **extra) -> dict:
    meta = {"spec": asdict(spec)}
    meta.update(extra)
    return meta
