"""Generalized increments and the increment ratio statistic (IRS).

The elementary ratio of two numbers is psi(x, y) = |x + y| / (|x| + |y|),
which is 1 when x and y share a sign, 0 when they cancel, and 1 by
convention at (0, 0).  The IRS of a discretized path is the average of
psi over consecutive generalized increments; being scale-free, it reads
off the sign-persistence structure of the path and, for fBm, converges to
a known monotone function of the Hurst index.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import floor

import numpy as np

from .errors import PathTooShort, TooFewIncrements, WindowTooSmall
from .filters import Filter
from .synthesis import SamplePath

# |x| + |y| below this is treated as the (0, 0) convention point.
ZERO_DENOMINATOR = 1e-300

MIN_WINDOW_PAIRS = 8


@dataclass(frozen=True)
class IncrementSeries:
    """Generalized increments D_k = sum_l a_l X(t_{k+l}), k = 0..n-L-1."""

    filter: Filter
    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if len(values) != self.n - self.filter.length_L:
            raise ValueError("increment series must have length n - L")

    def __len__(self) -> int:
        return len(self.values)


def increments(path: SamplePath, filt: Filter) -> IncrementSeries:
    """Filter a path into its generalized increments.

    The coefficient convention is values[k] = sum_l a_l X(t_{k+l}); with
    the order-1 filter (1, -1) this gives X(t_k) - X(t_{k+1}).
    """
    L = filt.length_L
    if path.n < L + 2:
        raise PathTooShort(f"need n >= L + 2 = {L + 2}, got n = {path.n}")
    x = path.values
    count = path.n - L
    out = np.zeros(count)
    for l, a in enumerate(filt.coeffs):
        out += a * x[l:l + count]
    return IncrementSeries(filter=filt, n=path.n, values=out)


def psi(x: float, y: float) -> float:
    """|x + y| / (|x| + |y|), with psi(0, 0) = 1.  Always in [0, 1]."""
    den = abs(x) + abs(y)
    if den < ZERO_DENOMINATOR:
        return 1.0
    return abs(x + y) / den


def pair_ratios(inc: IncrementSeries) -> np.ndarray:
    """psi over consecutive increment pairs; length len(inc) - 1."""
    u = inc.values[:-1]
    v = inc.values[1:]
    den = np.abs(u) + np.abs(v)
    out = np.ones_like(den)
    ok = den >= ZERO_DENOMINATOR
    np.divide(np.abs(u + v), den, out=out, where=ok)
    return out


def irs(inc: IncrementSeries) -> float:
    """Mean of psi over the consecutive increment pairs of the series.

    All len(inc) - 1 available pairs are used and the mean is normalized
    by that pair count.
    """
    if len(inc) < 2:
        raise TooFewIncrements("need at least 2 increments to form a ratio pair")
    return float(pair_ratios(inc).mean())


@dataclass(frozen=True)
class LocalWindow:
    """Index window around t*: k in [lo, hi] with |t_k - t*| <= n^(-gamma).

    lo and hi are floor(n t* -/+ n^(1-gamma)) clipped to the valid
    increment index range [0, n - L - 1]; the unclipped cardinality is
    2 n^(1-gamma) + 1.
    """

    gamma: float
    t_star: float
    lo: int
    hi: int

    def pair_bounds(self, n_increments: int) -> tuple[int, int]:
        """Range of pair indices k (pairing D_k with D_{k+1}) inside the window."""
        return self.lo, min(self.hi, n_increments - 2)

    def pair_count(self, n_increments: int) -> int:
        lo, hi = self.pair_bounds(n_increments)
        return max(0, hi - lo + 1)


def local_window(n: int, L: int, gamma: float, t_star: float) -> LocalWindow:
    """Build the window of increment indices within n^(-gamma) of t*."""
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    if not 0.0 < t_star < 1.0:
        raise ValueError("t_star must lie in (0, 1)")
    half = n ** (1.0 - gamma)
    lo = max(0, floor(n * t_star - half))
    hi = min(n - L - 1, floor(n * t_star + half))
    return LocalWindow(gamma=gamma, t_star=t_star, lo=lo, hi=hi)


def localized_irs(inc: IncrementSeries, window: LocalWindow) -> float:
    """Mean of psi over the pairs whose leading index falls in the window.

    Normalized by the number of pairs actually available after boundary
    clipping, not the nominal 2 n^(1-gamma) + 1.
    """
    if window.hi - window.lo < 1:
        raise WindowTooSmall(max(0, window.hi - window.lo + 1), MIN_WINDOW_PAIRS)
    lo, hi = window.pair_bounds(len(inc))
    count = hi - lo + 1
    if count < MIN_WINDOW_PAIRS:
        raise WindowTooSmall(max(0, count), MIN_WINDOW_PAIRS)
    u = inc.values[lo:hi + 1]
    v = inc.values[lo + 1:hi + 2]
    den = np.abs(u) + np.abs(v)
    out = np.ones_like(den)
    ok = den >= ZERO_DENOMINATOR
    np.divide(np.abs(u + v), den, out=out, where=ok)
    return float(out.mean())
