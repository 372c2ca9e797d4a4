"""Autocorrelation and sample-mean diagnostics for the swap chains.

Every potential edge gives a 0/1 indicator series along the chain. The
estimators are:

    mean      mu  = (1/n) sum x_i
    C(t)          = 1/(n-t) sum_{i<n-t} (x_i - mu)(x_{i+t} - mu)
    rho(t)        = C(t) / C(0)
    tau_int       = 1/2 + step * sum_{0<t<W, t on grid} rho(t)

The last line is the rectangular-window estimator evaluated on a sparse lag
grid, where each grid value stands in for ``step`` consecutive lags. With a
dense grid (step 1) it is exactly 1/2 * sum_{|t|<W} rho(|t|).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptySeries, LagTooLarge, ZeroVariance
from .mcmc import ChainKind, make_rng, seed_chain
from .model import JointDegreeMatrix, edge_count, require_graphical, slot_count

_EPS = 1e-12


def sample_mean(series) -> float:
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        raise EmptySeries("series is empty")
    return float(x.mean())


def autocorr_unnormalized(series, t: int, mean: float | None = None) -> float:
    """Direct O(n) evaluation of C(t)."""
    x = np.asarray(series, dtype=float)
    n = x.size
    if n == 0:
        raise EmptySeries("series is empty")
    if not 0 <= t < n:
        raise LagTooLarge(f"lag {t} not in [0, {n})")
    mu = x.mean() if mean is None else mean
    d = x - mu
    return float(np.dot(d[: n - t], d[t:]) / (n - t))


def autocorr_normalized(series, t: int) -> float:
    c0 = autocorr_unnormalized(series, 0)
    if c0 <= _EPS:
        raise ZeroVariance("series is constant")
    return autocorr_unnormalized(series, t) / c0


@dataclass
class AutocorrSeries:
    lags: np.ndarray
    rho: np.ndarray
    c0: float

    @property
    def step(self) -> int:
        positive = self.lags[self.lags > 0]
        if positive.size >= 2:
            return int(positive[1] - positive[0])
        return int(positive[0]) if positive.size else 1


def _fft_sums(x: np.ndarray) -> np.ndarray:
    """Lagged products sum_i x_i x_{i+t} for every t, along axis 0."""
    n = x.shape[0]
    nfft = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(x, n=nfft, axis=0)
    return np.fft.irfft(f * np.conj(f), n=nfft, axis=0)[:n]


def autocorrelation_matrix(X, lags: Sequence[int], chunk: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """rho(t) for every column of X (samples x series) at the given lags.

    Returns (rho with shape (len(lags), columns), c0 per column). Columns with
    zero variance get NaN rho.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[:, None]
    n, cols = X.shape
    lags = np.asarray(lags, dtype=int)
    if n == 0:
        raise EmptySeries("series is empty")
    if lags.size and (lags.min() < 0 or lags.max() >= n):
        raise LagTooLarge(f"lags must lie in [0, {n})")
    rho = np.full((lags.size, cols), np.nan)
    c0 = np.zeros(cols)
    denom = (n - lags).astype(float)
    for s in range(0, cols, chunk):
        block = X[:, s : s + chunk].astype(float)
        block -= block.mean(axis=0)
        sums = _fft_sums(block)
        c = sums[lags] / denom[:, None]
        var = sums[0] / n
        c0[s : s + chunk] = var
        ok = var > _EPS
        rho[:, s : s + chunk][:, ok] = c[:, ok] / var[ok]
    return rho, c0


def autocorrelation(series, lags: Sequence[int]) -> AutocorrSeries:
    rho, c0 = autocorrelation_matrix(np.asarray(series, dtype=float), lags)
    if c0[0] <= _EPS:
        raise ZeroVariance("series is constant")
    return AutocorrSeries(np.asarray(lags, dtype=int), rho[:, 0], float(c0[0]))


def tau_from_acf(acf: AutocorrSeries, window: int) -> float:
    """Rectangular-window integrated autocorrelation time on the acf's lag grid."""
    mask = (acf.lags > 0) & (acf.lags < window)
    return 0.5 + acf.step * float(np.sum(acf.rho[mask]))


def integrated_autocorr(series, window: int, lag_step: int = 1) -> float:
    """tau_int with cutoff |t| < window, on lags lag_step, 2*lag_step, ..."""
    x = np.asarray(series, dtype=float)
    if window > x.size:
        raise LagTooLarge(f"window {window} exceeds series length {x.size}")
    lags = np.concatenate([[0], np.arange(lag_step, window, lag_step)])
    return tau_from_acf(autocorrelation(x, lags), window)


def threshold_crossing_time(acf: AutocorrSeries, threshold: float) -> int | None:
    """Smallest measured lag whose rho falls below ``threshold``."""
    below = np.nonzero(acf.rho < threshold)[0]
    return int(acf.lags[below[0]]) if below.size else None


def mean_abs_crossing_time(lags, rho: np.ndarray, threshold: float) -> int | None:
    """First lag at which the mean |rho| over series drops below ``threshold``."""
    with np.errstate(invalid="ignore"):
        avg = np.nanmean(np.abs(rho), axis=1)
    below = np.nonzero(avg < threshold)[0]
    return int(np.asarray(lags)[below[0]]) if below.size else None


@dataclass(frozen=True)
class LagGrid:
    start: int
    end: int
    step: int

    def lags(self) -> np.ndarray:
        return np.arange(self.start, self.end + 1, self.step)

    @classmethod
    def default_for(cls, m: int) -> LagGrid:
        # 100..15,000 by 100 below 1,000 edges; scaled with m above
        scale = max(1, math.ceil(m / 1000))
        return cls(100 * scale, 15000 * scale, 100 * scale)


@dataclass(frozen=True)
class ProbeEdge:
    u: int
    v: int
    k: int
    l: int
    mean: Fraction

    @property
    def label(self) -> str:
        return f"{self.u}-{self.v}"


def potential_edges(jdm: JointDegreeMatrix) -> list[ProbeEdge]:
    """Every vertex pair of the canonical labeling, with its exact edge mean."""
    dv = require_graphical(jdm)
    degrees = dv.sequence()
    means: dict[tuple[int, int], Fraction] = {}
    out = []
    n = len(degrees)
    for u in range(n):
        for v in range(u + 1, n):
            k, l = degrees[u], degrees[v]
            key = (min(k, l), max(k, l))
            if key not in means:
                slots = slot_count(dv, k, l)
                means[key] = Fraction(jdm.get(key, 0), slots) if slots else Fraction(0)
            out.append(ProbeEdge(u, v, key[0], key[1], means[key]))
    return out


def select_probe_edges(jdm: JointDegreeMatrix, count: int, low=0.4, high=0.6) -> list[ProbeEdge]:
    """Up to ``count`` potential edges with mean in [low, high].

    When too few qualify the list is padded with the highest-mean remaining
    edges. Selection is deterministic: qualifying edges are thinned evenly.
    """
    edges = potential_edges(jdm)
    lo, hi = Fraction(low).limit_denominator(), Fraction(high).limit_denominator()
    inside = [e for e in edges if lo <= e.mean <= hi]
    if len(inside) >= count:
        if count <= 0:
            return []
        idx = np.linspace(0, len(inside) - 1, count).round().astype(int)
        return [inside[i] for i in idx]
    chosen = set(inside)
    rest = sorted((e for e in edges if e not in chosen), key=lambda e: (-e.mean, e.u, e.v))
    return inside + rest[: count - len(inside)]


def record_series(chain, pairs: Sequence[tuple[int, int]], samples: int, gap: int = 1) -> np.ndarray:
    """Indicator matrix (samples x pairs) read every ``gap`` steps."""
    state = chain.track(pairs)
    rows = []
    run = chain.run
    for _ in range(samples):
        run(gap)
        rows.append(bytes(state))
    if not rows:
        return np.zeros((0, len(pairs)), dtype=np.uint8)
    return np.frombuffer(b"".join(rows), dtype=np.uint8).reshape(samples, len(pairs))


@dataclass
class ConvergenceReport:
    edges: list[ProbeEdge]
    lags: np.ndarray
    rho: np.ndarray  # replicas x lags x edges
    tau: np.ndarray  # replicas x edges
    threshold_time: np.ndarray  # replicas x edges, NaN when never crossed
    threshold: float
    mean_abs_time: list[int | None] = field(default_factory=list)
    tvd: list[TvdPoint] = field(default_factory=list)

    def constant_edges(self) -> np.ndarray:
        """Edges whose series had zero variance in every replica."""
        return np.all(np.isnan(self.tau), axis=0)

    def aggregates(self) -> dict[str, dict[str, float]]:
        """Per-edge mean/median/max over replicas, then max/mean/min over edges."""
        out = {}
        for name, values in (("tau_int", self.tau), ("threshold_time", self.threshold_time)):
            keep = ~np.all(np.isnan(values), axis=0)
            vals = values[:, keep]
            for per_edge, fn in (("mean", np.nanmean), ("median", np.nanmedian), ("max", np.nanmax)):
                if vals.size == 0:
                    out[f"{name}:{per_edge}"] = {"max": math.nan, "mean": math.nan, "min": math.nan}
                    continue
                with np.errstate(all="ignore"):
                    col = fn(vals, axis=0)
                out[f"{name}:{per_edge}"] = {
                    "max": float(np.nanmax(col)),
                    "mean": float(np.nanmean(col)),
                    "min": float(np.nanmin(col)),
                }
        return out


def _autocorr_replica(jdm, kind, pairs, steps, burn_in, lags, window, threshold, seed, replica):
    chain = seed_chain(jdm, kind, make_rng(seed, replica))
    chain.run(burn_in)
    X = record_series(chain, pairs, steps)
    full = np.concatenate([[0], lags]) if lags[0] != 0 else lags
    rho_full, _ = autocorrelation_matrix(X, full)
    rho = rho_full[1:] if lags[0] != 0 else rho_full
    grid = np.asarray(lags)
    step = int(grid[1] - grid[0]) if grid.size > 1 else max(1, int(grid[0]))
    mask = (grid > 0) & (grid < window)
    with np.errstate(invalid="ignore"):
        tau = 0.5 + step * rho[mask].sum(axis=0)
        below = rho < threshold
    const = np.isnan(rho[0]) if rho.size else np.zeros(len(pairs), bool)
    tau[const] = np.nan
    thr = np.full(len(pairs), np.nan)
    any_below = below.any(axis=0)
    first = below.argmax(axis=0)
    thr[any_below] = grid[first[any_below]]
    thr[const] = np.nan
    return rho, tau, thr


def _pool_map(fn, arglists, workers):
    if workers <= 1:
        return [fn(*a) for a in arglists]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *a) for a in arglists]
        return [f.result() for f in futures]


def autocorrelation_experiment(
    jdm: JointDegreeMatrix,
    edges: Sequence[ProbeEdge],
    *,
    kind: ChainKind | str = ChainKind.B,
    steps: int = 50_000,
    grid: LagGrid | None = None,
    window: int | None = None,
    threshold: float = 0.001,
    replicas: int = 10,
    seed: int = 0,
    burn_in: int | None = None,
    workers: int = 1,
) -> ConvergenceReport:
    """Run ``replicas`` chains, record every step, estimate rho, tau_int and threshold times."""
    require_graphical(jdm)
    m = edge_count(jdm)
    grid = grid or LagGrid.default_for(m)
    lags = grid.lags()
    if lags.size == 0 or lags[-1] >= steps:
        raise LagTooLarge(f"lag grid end {grid.end} must be below steps={steps}")
    window = grid.end if window is None else window
    burn = 5 * m if burn_in is None else burn_in
    pairs = [(e.u, e.v) for e in edges]
    kind = ChainKind.parse(kind)
    results = _pool_map(
        _autocorr_replica,
        [(jdm, kind, pairs, steps, burn, lags, window, threshold, seed, r) for r in range(replicas)],
        workers,
    )
    rho = np.stack([r[0] for r in results]) if results else np.zeros((0, lags.size, len(pairs)))
    tau = np.stack([r[1] for r in results]) if results else np.zeros((0, len(pairs)))
    thr = np.stack([r[2] for r in results]) if results else np.zeros((0, len(pairs)))
    mean_abs = [mean_abs_crossing_time(lags, r[0], threshold) for r in results]
    return ConvergenceReport(list(edges), lags, rho, tau, thr, threshold, mean_abs)


@dataclass
class TvdPoint:
    gap: int
    values: list[float]

    @property
    def min(self) -> float:
        return float(np.min(self.values))

    @property
    def median(self) -> float:
        return float(np.median(self.values))

    @property
    def max(self) -> float:
        return float(np.max(self.values))


def edge_means_table(jdm: JointDegreeMatrix) -> tuple[list[int], dict[tuple[int, int], float]]:
    dv = require_graphical(jdm)
    table = {}
    for key, c in jdm.items():
        table[key] = c / slot_count(dv, *key)
    return dv.sequence(), table


def tvd_statistic(counts: dict[tuple[int, int], int], samples: int, jdm: JointDegreeMatrix) -> float:
    """sum_e |S_e - mu_e| / sum_e mu_e over every potential edge.

    ``counts`` maps observed vertex pairs to the number of samples containing
    them; unobserved pairs contribute their full mean. sum_e mu_e equals m.
    """
    degrees, means = edge_means_table(jdm)
    m = edge_count(jdm)
    err = 0.0
    seen_mass = 0.0
    for (u, v), c in counts.items():
        if u == v:
            continue
        k, l = degrees[u], degrees[v]
        mu = means.get((min(k, l), max(k, l)), 0.0)
        seen_mass += mu
        err += abs(c / samples - mu)
    err += max(0.0, m - seen_mass)
    return err / m


def _tvd_replica(jdm, kind, gap, samples, burn_in, seed, replica):
    chain = seed_chain(jdm, kind, make_rng(seed, replica))
    chain.run(burn_in)
    counts: dict[tuple[int, int], int] = {}
    run = chain.run
    for _ in range(samples):
        run(gap)
        for e in set(chain.edges()):
            counts[e] = counts.get(e, 0) + 1
    return tvd_statistic(counts, samples, jdm)


def tvd_convergence(
    jdm: JointDegreeMatrix,
    kind: ChainKind | str = ChainKind.B,
    gaps: Sequence[int] = (),
    samples_per_gap: int = 10_000,
    replicas: int = 10,
    seed: int = 0,
    burn_in: int | None = None,
    workers: int = 1,
) -> list[TvdPoint]:
    """Sample-mean TVD against the exact edge means, per gap, over replicas.

    Replica r at gap index i uses stream (seed, i * replicas + r).
    """
    require_graphical(jdm)
    burn = 5 * edge_count(jdm) if burn_in is None else burn_in
    kind = ChainKind.parse(kind)
    jobs = []
    for i, g in enumerate(gaps):
        for r in range(replicas):
            jobs.append((jdm, kind, int(g), samples_per_gap, burn, seed, i * replicas + r))
    values = _pool_map(_tvd_replica, jobs, workers)
    return [
        TvdPoint(int(g), values[i * replicas : (i + 1) * replicas])
        for i, g in enumerate(gaps)
    ]


def iid_tvd_floor(jdm: JointDegreeMatrix, samples: int) -> float:
    """Expected TVD statistic for independent exact samples (normal approximation)."""
    dv = require_graphical(jdm)
    total = 0.0
    for key, c in jdm.items():
        slots = slot_count(dv, *key)
        mu = c / slots
        total += slots * math.sqrt(2 * mu * (1 - mu) / (math.pi * samples))
    return total / edge_count(jdm)


def ar1_series(phi: float, n: int, seed: int = 0) -> np.ndarray:
    """Stationary Gaussian AR(1) series; rho(t) = phi**t."""
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal(n) * math.sqrt(1 - phi * phi)
    x = np.empty(n)
    x[0] = rng.standard_normal()
    for i in range(1, n):
        x[i] = phi * x[i - 1] + noise[i]
    return x
