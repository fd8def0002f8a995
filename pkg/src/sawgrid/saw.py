"""Saw functions: ramped generator sums over persistence diagrams.

Each diagram point (b, d) contributes a generator that ramps 0 -> 1 over
[b, b+lag], holds 1 on [b+lag, d-lag], and ramps back to 0 over [d-lag, d].
The sum is piecewise linear; L1 and Sobolev distances are integrated
analytically over the merged breakpoint set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .persistence import PersistenceDiagram

WASSERSTEIN_SIZE_CAP = 64


def default_lag(thresholds) -> float:
    """Quarter of the mean gap, clamped to keep ramps disjoint under
    uneven spacing."""
    t = sorted(thresholds)
    if len(t) < 2:
        raise ValueError("need at least 2 thresholds")
    gaps = [t[i + 1] - t[i] for i in range(len(t) - 1)]
    lam = 0.25 * sum(gaps) / len(gaps)
    clamp = 0.5 * min(gaps) * (1.0 - 1e-9)
    return min(lam, clamp)


def generator_value(b: float, d: float, lam: float, t: float) -> float:
    """Single ramped generator; short bars degrade to a symmetric tent."""
    if t <= b or t >= d:
        return 0.0
    if d - b < 2.0 * lam:
        mid = 0.5 * (b + d)
        peak = (d - b) / (2.0 * lam)
        if t <= mid:
            return peak * (t - b) / (mid - b)
        return peak * (d - t) / (d - mid)
    if t < b + lam:
        return (t - b) / lam
    if t > d - lam:
        return (d - t) / lam
    return 1.0


@dataclass(frozen=True)
class SawFunction:
    """Sum of generators for one diagram; immutable and pure to evaluate."""

    points: tuple          # (birth, death) pairs
    lag: float
    domain: tuple          # (t0, t1) signature/evaluation interval

    def __call__(self, t: float) -> float:
        return sum(generator_value(b, d, self.lag, t) for b, d in self.points)

    def breakpoints(self):
        """All kink locations, including domain endpoints."""
        pts = set(self.domain)
        for b, d in self.points:
            if d - b < 2.0 * self.lag:
                pts.update((b, 0.5 * (b + d), d))
            else:
                pts.update((b, b + self.lag, d - self.lag, d))
        return sorted(pts)

    def integral(self) -> float:
        """Exact integral of the function over the whole real line."""
        total = 0.0
        for b, d in self.points:
            if d - b < 2.0 * self.lag:
                total += 0.5 * (d - b) * (d - b) / (2.0 * self.lag)
            else:
                total += (d - b) - self.lag
        return total


def saw_function(diagram: PersistenceDiagram, lam: float | None = None,
                 domain: tuple | None = None) -> SawFunction:
    """Build the saw function of a diagram.

    The lag defaults to a quarter of the diagram's mean threshold gap;
    the domain defaults to [first threshold, last death] so essential
    caps stay inside the signature window.
    """
    points = tuple((p.birth, p.death) for p in diagram.pairs)
    if lam is None:
        if not diagram.thresholds:
            raise ValueError("lag required for diagrams without threshold metadata")
        lam = default_lag(diagram.thresholds)
    if domain is None:
        if diagram.thresholds:
            t = diagram.thresholds
            delta = (t[-1] - t[0]) / (len(t) - 1)
            domain = (t[0], t[-1] + delta)
        elif points:
            domain = (min(b for b, _ in points), max(d for _, d in points))
        else:
            domain = (0.0, 1.0)
    return SawFunction(points, float(lam), (float(domain[0]), float(domain[1])))


def signature(saw: SawFunction, length: int = 100):
    """Evaluate the saw function at `length` evenly spaced points
    spanning its domain, endpoints included."""
    if length < 2:
        raise ValueError("signature length must be at least 2")
    t0, t1 = saw.domain
    return [saw(t) for t in np.linspace(t0, t1, length)]


def birth_death_counts(diagram: PersistenceDiagram, thresholds=None):
    """Per-threshold birth and death counts (deaths at the essential cap
    fall outside every threshold and are not counted)."""
    t = list(thresholds if thresholds is not None else diagram.thresholds)
    if not t:
        raise ValueError("thresholds required")
    births = [0] * len(t)
    deaths = [0] * len(t)
    pos = {round(v, 12): i for i, v in enumerate(t)}
    for p in diagram.pairs:
        i = pos.get(round(p.birth, 12))
        if i is not None:
            births[i] += 1
        j = pos.get(round(p.death, 12))
        if j is not None:
            deaths[j] += 1
    return births, deaths


def tension(counts, i: int) -> int:
    """Total birth/death activity at threshold i: b(a_i) + d(a_i)."""
    births, deaths = counts
    return births[i] + deaths[i]


def _merged_breakpoints(f: SawFunction, g: SawFunction):
    pts = set(f.breakpoints()) | set(g.breakpoints())
    return sorted(pts)


def l1_distance(f: SawFunction, g: SawFunction) -> float:
    """Exact integral of |f - g|, both zero-extended outside their supports."""
    pts = _merged_breakpoints(f, g)
    total = 0.0
    for x0, x1 in zip(pts, pts[1:]):
        h0 = f(x0) - g(x0)
        h1 = f(x1) - g(x1)
        total += _abs_linear_integral(h0, h1, x1 - x0)
    return total


def l2_sobolev_distance(f: SawFunction, g: SawFunction) -> float:
    """Integral of |f - g| + |f' - g'|; derivatives are piecewise constant."""
    pts = _merged_breakpoints(f, g)
    total = l1_distance(f, g)
    for x0, x1 in zip(pts, pts[1:]):
        length = x1 - x0
        sf = (f(x1) - f(x0)) / length
        sg = (g(x1) - g(x0)) / length
        total += abs(sf - sg) * length
    return total


def _abs_linear_integral(h0: float, h1: float, length: float) -> float:
    """Integral of |h| over an interval where h is linear from h0 to h1."""
    if h0 * h1 >= 0:
        return 0.5 * abs(h0 + h1) * length
    # sign change: split at the root
    root = length * h0 / (h0 - h1)
    return 0.5 * abs(h0) * root + 0.5 * abs(h1) * (length - root)


def _diagram_points(pd: PersistenceDiagram):
    return [(p.birth, p.death) for p in pd.pairs]


def wasserstein(pd_a: PersistenceDiagram, pd_b: PersistenceDiagram, p) -> float:
    """Exact W_1 or bottleneck (p = inf) distance with diagonal augmentation.

    Point-to-diagonal cost is the inf-norm distance (d - b) / 2. Intended
    for small diagrams; raises beyond the size cap.
    """
    if pd_a.dimension != pd_b.dimension:
        raise ValueError("diagrams must share a dimension")
    a = _diagram_points(pd_a)
    b = _diagram_points(pd_b)
    if len(a) > WASSERSTEIN_SIZE_CAP or len(b) > WASSERSTEIN_SIZE_CAP:
        raise ValueError(
            f"diagram exceeds the {WASSERSTEIN_SIZE_CAP}-pair cap; "
            "subsample before computing an exact matching"
        )
    if p == 1:
        return _wasserstein_1(a, b)
    if p == float("inf") or p == "inf":
        return _bottleneck(a, b)
    raise ValueError("only p = 1 and p = inf are supported")


def _linf(q, r) -> float:
    return max(abs(q[0] - r[0]), abs(q[1] - r[1]))


def _diag_dist(q) -> float:
    return 0.5 * (q[1] - q[0])


def _cost_matrix(a, b):
    """Augmented (n+m) x (m+n) cost matrix with diagonal slots."""
    n, m = len(a), len(b)
    cost = np.zeros((n + m, m + n))
    for i, q in enumerate(a):
        for j, r in enumerate(b):
            cost[i, j] = _linf(q, r)
        cost[i, m:] = _diag_dist(q)
    for j, r in enumerate(b):
        # matching point r of the second diagram to the diagonal
        cost[n:, j] = _diag_dist(r)
    # diagonal-to-diagonal block stays zero
    return cost


def _wasserstein_1(a, b) -> float:
    if not a and not b:
        return 0.0
    cost = _cost_matrix(a, b)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


def _bottleneck(a, b) -> float:
    if not a and not b:
        return 0.0
    cost = _cost_matrix(a, b)
    candidates = np.unique(cost)

    def feasible(c: float) -> bool:
        mask = csr_matrix(cost <= c + 1e-15)
        match = maximum_bipartite_matching(mask, perm_type="column")
        return int((match >= 0).sum()) == cost.shape[0]

    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(candidates[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(candidates[lo])
