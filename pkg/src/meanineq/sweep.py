"""Sweep execution: run catalog or Ky Fan checks over deterministic samples.

A sweep evaluates a set of inequality ids over counter-based random inputs
and aggregates, per id: the number of samples, the minimum margin with the
inputs that attained it, equality cases, and any violations.  Aggregation is
an order-independent reduction (minimum with lowest-sample-index tie-break),
so reports are byte-identical for any worker count; re-evaluating the
reported argmin inputs reproduces the minimum margin bit-for-bit.
"""

from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import catalog, kyfan
from .report import EQUALITY, VIOLATED, dumps
from .rng import (DEFAULT_RANGE, SampleStream, sample_exponent, sample_int,
                  sample_kyfan_values, sample_pair, sample_quad)

__all__ = ["SweepConfig", "run_sweep", "run_kyfan_sweep", "resolve_ids",
           "WORKERS_ENV"]

#: Environment variable supplying the default worker count.
WORKERS_ENV = "MEANINEQ_WORKERS"

_CHUNK = 1024
_MAX_VIOLATION_ECHOES = 10

#: Sequence entries draw n log-uniform over this range.
SEQ_N_RANGE = (1, 10 ** 6)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SweepConfig:
    ids: tuple = ("ALL",)
    samples: int = 1000
    seed: int = 0
    sign: str = "any"                    # quad discriminant constraint
    bounds: tuple = DEFAULT_RANGE        # log-uniform coordinate bounds
    kyfan_n_range: tuple = (2, 20)
    tolerance: float | None = None       # when set, a sample counts as a
                                         # violation iff margin < -tolerance
    workers: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not (0.0 < self.bounds[0] < self.bounds[1]):
            raise ValueError("bounds lower bound must be positive and below the upper")

    def to_dict(self) -> dict:
        return {
            "ids": list(self.ids), "samples": self.samples, "seed": self.seed,
            "sign": self.sign, "bounds": list(self.bounds),
            "kyfan_n_range": list(self.kyfan_n_range),
            "tolerance": self.tolerance,
        }


def resolve_ids(ids) -> tuple:
    if isinstance(ids, str):
        ids = [ids]
    out = []
    for id in ids:
        token = id.strip().upper()
        if token == "ALL":
            out.extend(catalog.INEQUALITY_IDS)
        elif token in catalog.REGISTRY:
            out.append(token)
        else:
            raise KeyError(f"unknown inequality id {id!r}; valid ids: "
                           f"{', '.join(catalog.INEQUALITY_IDS)} (or ALL)")
    seen = {}
    for id in out:
        seen.setdefault(id, None)
    return tuple(seen)


def _draw_inputs(entry, stream, pstream, index, config):
    if entry.arity == "quad":
        quad = sample_quad(stream, index, sign=config.sign, bounds=config.bounds)
        return quad.as_dict()
    if entry.arity == "quad_pq":
        quad = sample_quad(stream, index, sign=config.sign, bounds=config.bounds)
        p = sample_exponent(pstream, index, salt0=1)
        q = sample_exponent(pstream, index, salt0=2)
        return {**quad.as_dict(), "p": p, "q": q}
    if entry.arity == "pair":
        min_ratio = catalog.EQ10_MIN_RATIO if entry.id == "EQ10" else 1.0
        a, b = sample_pair(stream, index, bounds=config.bounds, min_ratio=min_ratio)
        return {"a": a, "b": b}
    if entry.arity == "seq_n":
        lo, hi = SEQ_N_RANGE
        # log-uniform integer so every decade of n is exercised
        u = stream.floats(index, 1)[0]
        import math
        n = int(round(math.exp(math.log(lo) + u * (math.log(hi) - math.log(lo)))))
        return {"n": max(lo, min(hi, n))}
    raise AssertionError(f"unhandled arity {entry.arity}")


@dataclass
class _Agg:
    tolerance: float | None = None
    samples_run: int = 0
    equality_cases: int = 0
    min_margin: float = float("inf")
    argmin_index: int = -1
    violations: list = field(default_factory=list)
    violation_count: int = 0

    def update(self, index, margin, verdict, inputs):
        self.samples_run += 1
        if self.tolerance is not None:
            violated = margin < -self.tolerance
        else:
            violated = verdict == VIOLATED
        if violated:
            self.violation_count += 1
            if len(self.violations) < _MAX_VIOLATION_ECHOES:
                self.violations.append({"sample_index": index, "margin": margin,
                                        "inputs": inputs})
        elif verdict == EQUALITY:
            self.equality_cases += 1
        if margin < self.min_margin or (margin == self.min_margin
                                        and index < self.argmin_index):
            self.min_margin = margin
            self.argmin_index = index

    def merge(self, other: "_Agg"):
        # chunks arrive in index order, so lowest-index tie-break is preserved
        self.samples_run += other.samples_run
        self.equality_cases += other.equality_cases
        self.violation_count += other.violation_count
        for v in other.violations:
            if len(self.violations) < _MAX_VIOLATION_ECHOES:
                self.violations.append(v)
        if other.min_margin < self.min_margin:
            self.min_margin = other.min_margin
            self.argmin_index = other.argmin_index


def _run_id_sweep(entry, config, csv_rows):
    stream = SampleStream(config.seed, f"catalog/{entry.id}")
    pstream = SampleStream(config.seed, f"catalog/{entry.id}/exponents")

    def run_chunk(start):
        agg = _Agg(tolerance=config.tolerance)
        rows = [] if csv_rows is not None else None
        for index in range(start, min(start + _CHUNK, config.samples)):
            inputs = _draw_inputs(entry, stream, pstream, index, config)
            rep = entry.evaluate(**inputs)
            agg.update(index, rep.margin, rep.verdict, inputs)
            if rows is not None:
                rows.append((entry.id, index, dumps(inputs), repr(rep.margin),
                             rep.verdict))
        return agg, rows

    starts = range(0, config.samples, _CHUNK)
    workers = config.workers or default_workers()
    agg = _Agg(tolerance=config.tolerance)
    if workers <= 1:
        chunk_results = map(run_chunk, starts)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunk_results = list(pool.map(run_chunk, starts))
    for part, rows in chunk_results:
        agg.merge(part)
        if csv_rows is not None and rows:
            csv_rows.extend(rows)

    argmin_inputs = _draw_inputs(entry, stream, pstream, agg.argmin_index, config)
    replay = entry.evaluate(**argmin_inputs)
    return {
        "samples_run": agg.samples_run,
        "min_margin": agg.min_margin,
        "argmin_index": agg.argmin_index,
        "argmin_inputs": argmin_inputs,
        "argmin_margin_replay": replay.margin,
        "equality_cases": agg.equality_cases,
        "violation_count": agg.violation_count,
        "violations": agg.violations,
    }


def run_sweep(config: SweepConfig, csv_path: str | None = None) -> dict:
    """Evaluate the configured catalog ids over deterministic sample streams.

    Returns the verification report as a JSON-ready dict; content (minus
    ``wall_time_s``) depends only on the config.  ``csv_path`` optionally
    dumps one row per sample.
    """
    ids = resolve_ids(config.ids)
    t0 = time.monotonic()
    csv_rows = [] if csv_path else None
    results = {}
    for id in ids:
        results[id] = _run_id_sweep(catalog.REGISTRY[id], config, csv_rows)
    report = {
        "kind": "catalog_sweep",
        "seed": config.seed,
        "config": config.to_dict(),
        "results": results,
        "total_violations": sum(r["violation_count"] for r in results.values()),
        "wall_time_s": time.monotonic() - t0,
    }
    if csv_path:
        _write_csv(csv_path, csv_rows)
    return report


def run_kyfan_sweep(config: SweepConfig, csv_path: str | None = None) -> dict:
    """Evaluate EQ18 .. EQ31 over random Ky Fan samples with random n."""
    nlo, nhi = config.kyfan_n_range
    if nlo < 1 or nhi < nlo:
        raise ValueError("kyfan_n_range must satisfy 1 <= lo <= hi")
    stream = SampleStream(config.seed, "kyfan/values")
    nstream = SampleStream(config.seed, "kyfan/n")

    def run_chunk(start):
        aggs = {id: _Agg(tolerance=config.tolerance) for id in kyfan.KYFAN_IDS}
        rows = [] if csv_path else None
        for index in range(start, min(start + _CHUNK, config.samples)):
            n = sample_int(nstream, index, nlo, nhi)
            values = sample_kyfan_values(stream, index, n)
            stats = kyfan.compute_stats(kyfan.KyFanSample(values))
            for id, rep in kyfan.all_slacks(stats).items():
                aggs[id].update(index, rep.margin, rep.verdict, {"n": n, "values": values})
                if rows is not None:
                    rows.append((id, index, dumps({"n": n, "values": values}),
                                 repr(rep.margin), rep.verdict))
        return aggs, rows

    t0 = time.monotonic()
    starts = range(0, config.samples, _CHUNK)
    workers = config.workers or default_workers()
    if workers <= 1:
        chunk_results = map(run_chunk, starts)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunk_results = list(pool.map(run_chunk, starts))
    totals = {id: _Agg(tolerance=config.tolerance) for id in kyfan.KYFAN_IDS}
    csv_rows = [] if csv_path else None
    for aggs, rows in chunk_results:
        for id in totals:
            totals[id].merge(aggs[id])
        if csv_rows is not None and rows:
            csv_rows.extend(rows)

    results = {}
    for id, agg in totals.items():
        n = sample_int(nstream, agg.argmin_index, nlo, nhi)
        values = sample_kyfan_values(stream, agg.argmin_index, n)
        stats = kyfan.compute_stats(kyfan.KyFanSample(values))
        replay = kyfan.all_slacks(stats)[id]
        results[id] = {
            "samples_run": agg.samples_run,
            "min_margin": agg.min_margin,
            "argmin_index": agg.argmin_index,
            "argmin_inputs": {"n": n, "values": values},
            "argmin_margin_replay": replay.margin,
            "equality_cases": agg.equality_cases,
            "violation_count": agg.violation_count,
            "violations": agg.violations,
        }
    report = {
        "kind": "kyfan_sweep",
        "seed": config.seed,
        "config": config.to_dict(),
        "results": results,
        "total_violations": sum(r["violation_count"] for r in results.values()),
        "wall_time_s": time.monotonic() - t0,
    }
    if csv_path:
        _write_csv(csv_path, csv_rows)
    return report


def _write_csv(path, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "sample_index", "inputs", "margin", "verdict"])
        writer.writerows(rows)
