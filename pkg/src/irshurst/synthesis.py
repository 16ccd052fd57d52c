"""Sample-path synthesis for fractional and multifractional Brownian motion.

Paths live on the regular grid t_k = k / n, k = 0..n, always start at 0,
and are normalized to unit scale (the ratio statistic downstream is
scale-free, so nothing is lost).  fBm is sampled exactly through circulant
embedding of the increment covariance (Wood-Chan / Davies-Harte); a dense
Cholesky factorization of the path covariance is kept as a slow exact
oracle.  mBm is approximated by interpolating, at each time, across a
family of fBm paths driven by common random numbers on a grid of Hurst
values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import exp

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import EmbeddingNotPSD, NotPositiveDefinite, RangeTooWide
from .seeds import rng_from

# Circulant eigenvalues this far below zero (relative to the largest) are
# treated as roundoff and clipped; anything worse signals a bug.
EIG_CLIP_RTOL = 1e-9

CHOLESKY_MAX_N = 4096


# ---------------------------------------------------------------------------
# Hurst functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HurstFunction:
    """A time-varying Hurst index t -> H(t) on [0, 1].

    ``kind`` is one of constant, linear, periodic, logistic, tabulated;
    ``params`` carries the kind-specific parameters; ``holder_eta`` is the
    declared Holder exponent of the function (1 for the built-in kinds,
    which are Lipschitz).  ``range`` is the exact attained range over
    [0, 1] and must sit inside (0, 1).
    """

    kind: str
    params: tuple
    holder_eta: float = 1.0

    def __post_init__(self):
        lo, hi = self.range
        if not (0.0 < lo <= hi < 1.0):
            raise ValueError(f"Hurst range [{lo}, {hi}] must lie inside (0, 1)")
        if self.holder_eta <= 0:
            raise ValueError("holder_eta must be positive")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            (h,) = self.params
            return np.full_like(t, h)
        if self.kind == "linear":
            intercept, slope = self.params
            return intercept + slope * t
        if self.kind == "periodic":
            base, amplitude = self.params
            return base + amplitude * np.sin(np.pi * t)
        if self.kind == "logistic":
            base, amplitude, rate, center = self.params
            return base + amplitude / (1.0 + np.exp(-rate * (t - center)))
        if self.kind == "tabulated":
            grid_t, grid_h = self.params
            return np.interp(t, grid_t, grid_h)
        raise ValueError(f"unknown Hurst function kind {self.kind!r}")

    @property
    def range(self) -> tuple[float, float]:
        """Exact [min, max] of H over [0, 1]."""
        if self.kind == "constant":
            (h,) = self.params
            return h, h
        if self.kind == "linear":
            intercept, slope = self.params
            ends = (intercept, intercept + slope)
            return min(ends), max(ends)
        if self.kind == "periodic":
            base, amplitude = self.params
            # sin(pi t) spans [0, 1] on [0, 1]
            ends = (base, base + amplitude)
            return min(ends), max(ends)
        if self.kind == "logistic":
            base, amplitude, rate, center = self.params
            lo = base + amplitude / (1.0 + exp(rate * center))
            hi = base + amplitude / (1.0 + exp(-rate * (1.0 - center)))
            return (min(lo, hi), max(lo, hi))
        if self.kind == "tabulated":
            _, grid_h = self.params
            return float(np.min(grid_h)), float(np.max(grid_h))
        raise ValueError(f"unknown Hurst function kind {self.kind!r}")

    def is_constant(self) -> bool:
        lo, hi = self.range
        return hi - lo < 1e-12

    def to_dict(self) -> dict:
        if self.kind == "tabulated":
            grid_t, grid_h = self.params
            return {"kind": "tabulated", "t": list(grid_t), "h": list(grid_h),
                    "holder_eta": self.holder_eta}
        names = {
            "constant": ("h",),
            "linear": ("intercept", "slope"),
            "periodic": ("base", "amplitude"),
            "logistic": ("base", "amplitude", "rate", "center"),
        }[self.kind]
        d = {"kind": self.kind, "holder_eta": self.holder_eta}
        d.update(dict(zip(names, self.params)))
        return d


def constant_hurst(h: float) -> HurstFunction:
    return HurstFunction("constant", (float(h),))


def linear_hurst(intercept: float, slope: float) -> HurstFunction:
    return HurstFunction("linear", (float(intercept), float(slope)))


def periodic_hurst(base: float, amplitude: float) -> HurstFunction:
    return HurstFunction("periodic", (float(base), float(amplitude)))


def logistic_hurst(base: float, amplitude: float, rate: float, center: float) -> HurstFunction:
    return HurstFunction("logistic", (float(base), float(amplitude), float(rate), float(center)))


def tabulated_hurst(grid_t, grid_h, holder_eta: float = 1.0) -> HurstFunction:
    grid_t = tuple(float(t) for t in grid_t)
    grid_h = tuple(float(h) for h in grid_h)
    if len(grid_t) != len(grid_h) or len(grid_t) < 2:
        raise ValueError("tabulated Hurst function needs matching grids of length >= 2")
    if any(t2 <= t1 for t1, t2 in zip(grid_t, grid_t[1:])):
        raise ValueError("tabulated time grid must be strictly increasing")
    return HurstFunction("tabulated", (grid_t, grid_h), holder_eta=holder_eta)


def builtin_hurst_function(name: str) -> HurstFunction:
    """The three stock experiment profiles.

    linear:   H(t) = 0.1 + 0.8 t
    periodic: H(t) = 0.5 + 0.3 sin(pi t)
    logistic: H(t) = 0.3 + 0.3 / (1 + exp(-100 (t - 0.7)))
    """
    if name == "linear":
        return linear_hurst(0.1, 0.8)
    if name == "periodic":
        return periodic_hurst(0.5, 0.3)
    if name == "logistic":
        return logistic_hurst(0.3, 0.3, 100.0, 0.7)
    raise ValueError(f"unknown built-in Hurst function {name!r}")


def hurst_function_from_json(source) -> HurstFunction:
    """Build a HurstFunction from a JSON file path, JSON text, or dict."""
    if isinstance(source, dict):
        obj = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            obj = json.loads(text)
        else:
            with open(text) as fh:
                obj = json.load(fh)
    kind = obj["kind"]
    eta = float(obj.get("holder_eta", 1.0))
    if kind == "constant":
        f = constant_hurst(obj["h"])
    elif kind == "linear":
        f = linear_hurst(obj["intercept"], obj["slope"])
    elif kind == "periodic":
        f = periodic_hurst(obj["base"], obj["amplitude"])
    elif kind == "logistic":
        f = logistic_hurst(obj["base"], obj["amplitude"], obj["rate"], obj["center"])
    elif kind == "tabulated":
        f = tabulated_hurst(obj["t"], obj["h"], holder_eta=eta)
    else:
        raise ValueError(f"unknown Hurst function kind {kind!r}")
    if eta != f.holder_eta:
        f = HurstFunction(f.kind, f.params, holder_eta=eta)
    return f


# ---------------------------------------------------------------------------
# Sample paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SamplePath:
    """Values X(t_k) on the grid t_k = k / n, with X(0) = 0.

    ``provenance`` is "fbm", "mbm" or "external"; for simulated paths the
    Hurst parameter or function and the integer seed are recorded.
    """

    n: int
    values: np.ndarray
    provenance: str = "external"
    hurst: float | None = None
    hurst_function: HurstFunction | None = None
    seed: int | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if len(values) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} values, got {len(values)}")
        if values[0] != 0.0:
            raise ValueError("paths start at X(0) = 0")

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n + 1) / self.n


def save_path_csv(path: SamplePath, file) -> None:
    """Write ``t,value`` rows at full double precision."""
    close = False
    if isinstance(file, (str, bytes)) or hasattr(file, "__fspath__"):
        fh = open(file, "w")
        close = True
    else:
        fh = file
    try:
        fh.write("t,value\n")
        for t, v in zip(path.times, path.values):
            fh.write(f"{t:.17g},{v:.17g}\n")
    finally:
        if close:
            fh.close()


def load_path_csv(file) -> SamplePath:
    """Read a ``t,value`` CSV back into a SamplePath.

    The first value is subtracted so that X(0) = 0; every statistic in
    this package is invariant under that shift.
    """
    data = np.genfromtxt(file, delimiter=",", names=True)
    values = np.atleast_1d(data["value"]).astype(float)
    if len(values) < 2:
        raise ValueError("need at least two grid points")
    values = values - values[0]
    return SamplePath(n=len(values) - 1, values=values, provenance="external")


# ---------------------------------------------------------------------------
# fBm: covariances and simulators
# ---------------------------------------------------------------------------

def fbm_covariance(H: float, s, t):
    """Cov(X(s), X(t)) = (t^2H + s^2H - |t - s|^2H) / 2 for unit-scale fBm."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    out = 0.5 * (np.abs(t) ** (2 * H) + np.abs(s) ** (2 * H) - np.abs(t - s) ** (2 * H))
    return out if out.ndim else float(out)


def fgn_autocovariance(H: float, lags) -> np.ndarray:
    """Autocovariance of unit-spacing fractional Gaussian noise.

    gamma(j) = (|j+1|^2H - 2|j|^2H + |j-1|^2H) / 2.  On the grid t_k = k/n
    the path increments have covariance n^(-2H) * gamma(j).
    """
    j = np.asarray(lags, dtype=float)
    return 0.5 * (np.abs(j + 1) ** (2 * H) - 2 * np.abs(j) ** (2 * H) + np.abs(j - 1) ** (2 * H))


def embedding_size(n: int) -> int:
    """First power of two >= 2 (n - 1)."""
    M = 1
    while M < 2 * (n - 1):
        M *= 2
    return M


def circulant_eigenvalues(H: float, M: int) -> np.ndarray:
    """Eigenvalues of the circulant embedding of the fGn covariance.

    For fGn the embedding is nonnegative definite; eigenvalues below
    -EIG_CLIP_RTOL * max raise EmbeddingNotPSD, tiny negatives are clipped.
    """
    m = M // 2
    g = fgn_autocovariance(H, np.arange(m + 1))
    row = np.concatenate([g, g[m - 1:0:-1]])
    lam = np.fft.fft(row).real
    top = lam.max()
    if lam.min() < -EIG_CLIP_RTOL * top:
        raise EmbeddingNotPSD(
            f"negative circulant eigenvalue {lam.min():.3e} (max {top:.3e}) for H={H}"
        )
    return np.clip(lam, 0.0, None)


def _draw_embedding_noise(rng: np.random.Generator, M: int) -> np.ndarray:
    """Hermitian complex normal vector used by the circulant sampler.

    The draw order is part of the determinism contract: scalar, scalar,
    then two blocks of m - 1 normals.
    """
    m = M // 2
    w = np.empty(M, dtype=complex)
    w[0] = rng.standard_normal()
    if m >= 1:
        w[m] = rng.standard_normal()
    if m >= 2:
        re = rng.standard_normal(m - 1)
        im = rng.standard_normal(m - 1)
        w[1:m] = (re + 1j * im) / np.sqrt(2.0)
        w[m + 1:] = np.conj(w[1:m][::-1])
    return w


def _fgn_from_noise(lam: np.ndarray, w: np.ndarray, n: int) -> np.ndarray:
    """Turn embedding noise into n exact fGn samples (unit spacing)."""
    M = len(lam)
    e = np.fft.fft(np.sqrt(lam / M) * w)
    return e.real[:n].copy()


def _path_from_fgn(fgn: np.ndarray, H: float, n: int) -> np.ndarray:
    values = np.empty(n + 1)
    values[0] = 0.0
    np.cumsum(fgn * float(n) ** (-H), out=values[1:])
    return values


def simulate_fbm(H: float, n: int, seed) -> SamplePath:
    """Exact-in-distribution fBm path by circulant embedding.

    Increments X(t_{k+1}) - X(t_k) form a stationary Gaussian sequence
    with autocovariance n^(-2H) * fgn_autocovariance(H, j).  Deterministic
    given the seed.
    """
    if not 0.0 < H < 1.0:
        raise ValueError("H must lie in (0, 1)")
    if n < 2:
        raise ValueError("n must be >= 2")
    rng = rng_from(seed)
    M = embedding_size(n)
    lam = circulant_eigenvalues(H, M)
    fgn = _fgn_from_noise(lam, _draw_embedding_noise(rng, M), n)
    return SamplePath(n=n, values=_path_from_fgn(fgn, H, n), provenance="fbm",
                      hurst=float(H), seed=seed if isinstance(seed, int) else None)


def simulate_fbm_cholesky(H: float, n: int, seed) -> SamplePath:
    """Exact fBm path by dense Cholesky factorization (slow oracle, n <= 4096)."""
    if not 0.0 < H < 1.0:
        raise ValueError("H must lie in (0, 1)")
    if not 2 <= n <= CHOLESKY_MAX_N:
        raise ValueError(f"n must lie in [2, {CHOLESKY_MAX_N}] for the Cholesky oracle")
    t = np.arange(1, n + 1) / n
    cov = fbm_covariance(H, t[:, None], t[None, :])
    try:
        L = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError as err:
        raise NotPositiveDefinite(f"fBm covariance failed Cholesky for H={H}: {err}") from err
    rng = rng_from(seed)
    values = np.empty(n + 1)
    values[0] = 0.0
    values[1:] = L @ rng.standard_normal(n)
    return SamplePath(n=n, values=values, provenance="fbm", hurst=float(H),
                      seed=seed if isinstance(seed, int) else None)


# ---------------------------------------------------------------------------
# mBm
# ---------------------------------------------------------------------------

def simulate_mbm(hurst_function: HurstFunction, n: int, seed,
                 h_grid_size: int = 20) -> SamplePath:
    """Approximate mBm driven by a time-varying Hurst function.

    A family of fBm paths is synthesized on an equispaced grid of Hurst
    values covering the function's range, all from the same underlying
    Gaussian noise (common random numbers), and the path value at t_k is
    obtained by monotone cubic interpolation across the grid at H(t_k).
    Shared noise keeps the output continuous across grid cells.  A
    constant Hurst function degenerates exactly to simulate_fbm.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if h_grid_size < 2:
        raise ValueError("h_grid_size must be >= 2")
    lo, hi = hurst_function.range
    if not (0.01 < lo and hi < 0.99):
        raise RangeTooWide(
            f"Hurst range [{lo}, {hi}] leaves the supported band (0.01, 0.99)"
        )
    seed_int = seed if isinstance(seed, int) else None
    if hurst_function.is_constant():
        base = simulate_fbm(lo, n, seed)
        return SamplePath(n=n, values=base.values, provenance="mbm",
                          hurst_function=hurst_function, seed=seed_int)

    rng = rng_from(seed)
    M = embedding_size(n)
    w = _draw_embedding_noise(rng, M)
    grid = np.linspace(lo, hi, h_grid_size)
    family = np.empty((h_grid_size, n + 1))
    for i, Hi in enumerate(grid):
        fgn = _fgn_from_noise(circulant_eigenvalues(Hi, M), w, n)
        family[i] = _path_from_fgn(fgn, Hi, n)

    hvals = hurst_function(np.arange(n + 1) / n)
    interp = PchipInterpolator(grid, family, axis=0)
    # Evaluate the interpolant at a different H for every time index
    # without forming the full (time x time) cross product.
    cell = np.clip(np.searchsorted(grid, hvals) - 1, 0, h_grid_size - 2)
    dx = hvals - grid[cell]
    c = interp.c  # (4, h_grid_size - 1, n + 1)
    cols = np.arange(n + 1)
    values = ((c[0, cell, cols] * dx + c[1, cell, cols]) * dx + c[2, cell, cols]) * dx \
        + c[3, cell, cols]
    values[0] = 0.0
    return SamplePath(n=n, values=values, provenance="mbm",
                      hurst_function=hurst_function, seed=seed_int)
