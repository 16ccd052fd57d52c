"""Finite-difference filters with a prescribed number of vanishing moments.

A filter a = (a_0, ..., a_L) of order p annihilates polynomials of degree
below p:  sum_l a_l l^i = 0 for i = 0..p-1 while sum_l a_l l^p != 0.
Applying such a filter to a discretized process removes trends and yields
generalized increments whose correlation structure drives everything else
in this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, fsum

import numpy as np

from .errors import MomentConditionViolated

# Direct double loops over coefficient pairs are used throughout; keep
# filters short enough that this is never a cost concern.
MAX_FILTER_LENGTH = 32

# Relative tolerance for moment checks on non-integer coefficients.
MOMENT_RTOL = 1e-12


def _moment(coeffs, i, exact):
    if exact:
        return sum(int(a) * l**i for l, a in enumerate(coeffs))
    return fsum(a * l**i for l, a in enumerate(coeffs))


@dataclass(frozen=True)
class Filter:
    """An order-``order_p`` difference filter with coefficients ``coeffs``.

    Instances are immutable and validated on construction: the first
    ``order_p`` moments must vanish and moment ``order_p`` must not.
    Integer-valued coefficients are checked in exact arithmetic, others
    against a scale-aware tolerance.
    """

    coeffs: tuple[float, ...]
    order_p: int

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) == 0:
            raise ValueError("filter needs at least one coefficient")
        if len(coeffs) - 1 > MAX_FILTER_LENGTH:
            raise ValueError(f"filter length limited to {MAX_FILTER_LENGTH}")
        p = self.order_p
        if p < 1:
            raise ValueError("filter order must be >= 1")
        if p > len(coeffs) - 1:
            raise ValueError("filter order cannot exceed its length L")
        exact = all(float(c).is_integer() for c in coeffs)
        L = len(coeffs) - 1
        scale = fsum(abs(c) for c in coeffs)
        for i in range(p):
            m = _moment(coeffs, i, exact)
            tol = 0 if exact else MOMENT_RTOL * scale * max(L, 1) ** i
            if abs(m) > tol:
                raise MomentConditionViolated(i, "nonzero", m)
        mp = _moment(coeffs, p, exact)
        tol = 0 if exact else MOMENT_RTOL * scale * max(L, 1) ** p
        if abs(mp) <= tol:
            raise MomentConditionViolated(p, "zero", mp)

    @property
    def length_L(self) -> int:
        return len(self.coeffs) - 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def moment(self, i: int) -> float:
        """sum_l a_l l^i."""
        exact = all(float(c).is_integer() for c in self.coeffs)
        return float(_moment(self.coeffs, i, exact))

    def dilated(self, step: int = 2) -> "Filter":
        """Same coefficients placed at lags ``step * l`` (zeros in between).

        The dilated filter keeps the order: its i-th moment is step^i times
        the original one.
        """
        out = [0.0] * (step * self.length_L + 1)
        for l, a in enumerate(self.coeffs):
            out[step * l] = a
        return Filter(tuple(out), self.order_p)

    def spec_string(self) -> str:
        """Round-trippable textual form, e.g. ``coeffs:1,-2,1:p=2``."""
        binom = tuple(float((-1) ** (self.order_p - l) * comb(self.order_p, l))
                      for l in range(self.order_p + 1))
        if self.coeffs == binom:
            return f"binomial:{self.order_p}"
        body = ",".join(format(c, "g") for c in self.coeffs)
        return f"coeffs:{body}:p={self.order_p}"

    def is_binomial(self) -> bool:
        return self.spec_string().startswith("binomial:")


def validate_filter(coeffs, order_p: int) -> Filter:
    """Check the vanishing-moment conditions and wrap the coefficients.

    Raises MomentConditionViolated when some moment below ``order_p`` is
    nonzero or moment ``order_p`` vanishes, identifying the offending index.
    """
    return Filter(tuple(float(c) for c in np.atleast_1d(coeffs)), int(order_p))


def binomial_filter(order_p: int) -> Filter:
    """The alternating binomial filter a_l = (-1)^(p-l) C(p, l), l = 0..p.

    These are the canonical order-p filters: (-1, 1) for p = 1,
    (1, -2, 1) for p = 2, and so on.  Their lag-1 increment correlation is
    monotone in H, which is what makes the ratio statistic invertible.
    """
    p = int(order_p)
    if p < 1:
        raise ValueError("order must be >= 1")
    return Filter(tuple(float((-1) ** (p - l) * comb(p, l)) for l in range(p + 1)), p)


def double_moment_sum(filt: Filter, m: int) -> float:
    """sum_{l1, l2} a_{l1} a_{l2} |l1 - l2|^m by direct enumeration.

    Caution: with the absolute value this vanishes only for even m < 2p.
    For odd m no cancellation identity holds, and at m = 2p the value is
    (-1)^p C(2p, p) (sum_l a_l l^p)^2, as the signed-power binomial
    expansion shows.  Tests pin these identities down.
    """
    if m < 0:
        raise ValueError("moment degree must be >= 0")
    a = filt.coeffs
    L = filt.length_L
    terms = []
    for l1 in range(L + 1):
        for l2 in range(L + 1):
            d = float(abs(l1 - l2))
            terms.append(a[l1] * a[l2] * d**m)  # 0**0 == 1
    return fsum(terms)


def parse_filter_spec(text: str) -> Filter:
    """Parse ``binomial:p`` or ``coeffs:a0,a1,...:p=p`` into a Filter."""
    parts = text.strip().split(":")
    if parts[0] == "binomial" and len(parts) == 2:
        return binomial_filter(int(parts[1]))
    if parts[0] == "coeffs" and len(parts) == 3 and parts[2].startswith("p="):
        coeffs = [float(c) for c in parts[1].split(",")]
        return validate_filter(coeffs, int(parts[2][2:]))
    raise ValueError(
        f"cannot parse filter spec {text!r}; expected 'binomial:p' or 'coeffs:a0,a1,...:p=p'"
    )
