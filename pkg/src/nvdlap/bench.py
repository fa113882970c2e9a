"""Timing harness for distance computations: size and density sweeps, outlier
filtering and log-log exponent fits."""

from __future__ import annotations

import csv
import json
import logging
import time
from dataclasses import asdict, dataclass, fields
from typing import Callable, Iterable, Mapping, Sequence, TextIO

import numpy as np

from .generators import generate, spec_for_degree
from .graph import Graph
from .metrics import ge_distance
from .oracle import DENSE_CAP
from .solvers import METHODS, SolverConfig

log = logging.getLogger(__name__)

DENSITY_DEGREES = (1, 2, 4, 8, 16, 32, 64)


@dataclass(frozen=True)
class RunProtocol:
    """``repetitions`` timed runs after ``warmup`` untimed ones; runs slower
    than ``outlier_factor`` times the mean are dropped, once."""

    repetitions: int = 10
    warmup: int = 1
    outlier_factor: float = 2.0

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.warmup < 0:
            raise ValueError(f"warmup must be >= 0, got {self.warmup}")


@dataclass(frozen=True)
class BenchRecord:
    model: str
    n: int
    m: int
    avg_degree: float
    method: str
    mean_time: float
    sd_time: float
    runs_kept: int
    converged_fraction: float
    seed: int


COLUMNS = tuple(f.name for f in fields(BenchRecord))


def summarize_times(times: Sequence[float], outlier_factor: float = 2.0) -> tuple[float, float, int]:
    """Mean, sample standard deviation and count of runs that are not
    outliers (``t > outlier_factor * mean``). One run gives ``sd = 0``."""
    t = np.asarray(times, dtype=np.float64)
    kept = t[t <= outlier_factor * t.mean()]
    sd = float(kept.std(ddof=1)) if len(kept) > 1 else 0.0
    return float(kept.mean()), sd, len(kept)


def time_distance(g: Graph, a, b, method: str, protocol: RunProtocol | None = None,
                  cfg: SolverConfig | None = None, *, model: str = "", seed: int = 0,
                  clock: Callable[[], float] = time.perf_counter) -> BenchRecord:
    """Time :func:`ge_distance` under ``protocol``."""
    protocol = protocol or RunProtocol()
    for _ in range(protocol.warmup):
        ge_distance(g, a, b, method, cfg)
    times, converged = [], 0
    for _ in range(protocol.repetitions):
        t0 = clock()
        _, report = ge_distance(g, a, b, method, cfg)
        times.append(clock() - t0)
        converged += report.converged
    mean, sd, kept = summarize_times(times, protocol.outlier_factor)
    return BenchRecord(model, g.n, g.m, 2.0 * g.m / g.n, method, mean, sd, kept,
                       converged / protocol.repetitions, seed)


def random_vectors(n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Two i.i.d. U[0, 1) node vectors; the stream is keyed on ``(seed, n)``."""
    rng = np.random.Generator(np.random.PCG64([int(seed), int(n)]))
    return rng.random(n), rng.random(n)


def _sweep(cells: Iterable[tuple[int, float]], model: str, methods: Sequence[str],
           protocol: RunProtocol, seed: int, cfg: SolverConfig | None,
           protocol_overrides: Mapping[str, RunProtocol] | None,
           baseline_cap: int) -> list[BenchRecord]:
    for meth in methods:
        if meth not in METHODS:
            raise ValueError(f"unknown method {meth!r}; expected one of {', '.join(METHODS)}")
    overrides = protocol_overrides or {}
    records = []
    for n, degree in cells:
        g = generate(spec_for_degree(model, n, degree, seed))
        a, b = random_vectors(n, seed)
        for meth in methods:
            if meth == "baseline" and n > baseline_cap:
                log.info("skipping baseline at n=%d (cap %d)", n, baseline_cap)
                continue
            rec = time_distance(g, a, b, meth, overrides.get(meth, protocol), cfg,
                                model=model, seed=seed)
            log.info("%s n=%d deg=%.2f %s: %.4gs", model, n, rec.avg_degree, meth, rec.mean_time)
            records.append(rec)
    return records


def bench_size_sweep(model: str, sizes: Sequence[int], target_avg_degree: float,
                     methods: Sequence[str], protocol: RunProtocol | None = None,
                     seed: int = 0, cfg: SolverConfig | None = None,
                     protocol_overrides: Mapping[str, RunProtocol] | None = None,
                     baseline_cap: int = DENSE_CAP) -> list[BenchRecord]:
    """Time every method on ``model`` graphs of each size at fixed average
    degree. Baseline is skipped above ``baseline_cap`` nodes."""
    sizes = [int(s) for s in sizes]
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    return _sweep(((n, target_avg_degree) for n in sizes), model, methods,
                  protocol or RunProtocol(), seed, cfg, protocol_overrides, baseline_cap)


def bench_density_sweep(model: str, n: int = 10_000,
                        degrees: Sequence[float] = DENSITY_DEGREES,
                        methods: Sequence[str] = METHODS, protocol: RunProtocol | None = None,
                        seed: int = 0, cfg: SolverConfig | None = None,
                        protocol_overrides: Mapping[str, RunProtocol] | None = None,
                        baseline_cap: int = DENSE_CAP) -> list[BenchRecord]:
    """Time every method at fixed ``n`` over a range of average degrees."""
    return _sweep(((n, d) for d in degrees), model, methods, protocol or RunProtocol(),
                  seed, cfg, protocol_overrides, baseline_cap)


def fit_exponent(sizes, mean_times) -> tuple[float, float, float]:
    """Least-squares fit of ``log t = exponent * log n + intercept``.

    Returns ``(exponent, intercept, r2)`` with natural logarithms.
    """
    x = np.asarray(sizes, dtype=np.float64)
    y = np.asarray(mean_times, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("sizes and times must be 1-d arrays of equal length")
    if len(x) < 3:
        raise ValueError(f"need at least 3 points, got {len(x)}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("sizes and times must be positive")
    lx, ly = np.log(x), np.log(y)
    if np.ptp(lx) == 0:
        raise ValueError("sizes must not all be equal")
    xc = lx - lx.mean()
    slope = float(xc @ (ly - ly.mean()) / (xc @ xc))
    intercept = float(ly.mean() - slope * lx.mean())
    resid = ly - (slope * lx + intercept)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 - float(resid @ resid) / ss_tot if ss_tot > 0 else 1.0
    return slope, intercept, r2


def emit_results(records: Sequence[BenchRecord], stream: TextIO, fmt: str = "csv") -> None:
    """Write records as CSV (header + one row each) or a JSON array."""
    if fmt == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in records:
            w.writerow([getattr(r, c) for c in COLUMNS])
    elif fmt == "json":
        json.dump([asdict(r) for r in records], stream, indent=1)
        stream.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}; expected csv or json")


def _coerce(row: Mapping[str, object]) -> BenchRecord:
    return BenchRecord(
        model=str(row["model"]), n=int(row["n"]), m=int(row["m"]),
        avg_degree=float(row["avg_degree"]), method=str(row["method"]),
        mean_time=float(row["mean_time"]), sd_time=float(row["sd_time"]),
        runs_kept=int(row["runs_kept"]),
        converged_fraction=float(row["converged_fraction"]), seed=int(row["seed"]),
    )


def parse_results(stream: TextIO, fmt: str = "csv") -> list[BenchRecord]:
    """Inverse of :func:`emit_results`."""
    if fmt == "csv":
        return [_coerce(row) for row in csv.DictReader(stream)]
    if fmt == "json":
        return [_coerce(row) for row in json.load(stream)]
    raise ValueError(f"unknown format {fmt!r}; expected csv or json")
