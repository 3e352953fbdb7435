"""Weighted Hardy norms and distances as truncated cepstrum series.

Every result carries a rigorous bound on the omitted tail.  The bound uses
``|c_s - c'_s| <= K r**s / s`` for ``s >= 1``, where ``K`` counts all poles
and zeros of both models and ``r`` is their largest modulus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SeriesDidNotConverge
from .model import IDENTITY, ArmaModel, power_sums

MIN_TERMS = 8
MAX_TERMS = 10**6
DEFAULT_TOL = 1e-10

_KINDS = ("hardy", "sobolev", "dirichlet", "bergman", "diffsemi")


@dataclass(frozen=True)
class WeightScheme:
    """One of the five weight sequences: Hardy, Sobolev(m), Dirichlet, Bergman, DiffSemiNorm(m)."""

    kind: str
    m: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown weight scheme {self.kind!r}")
        if self.kind == "sobolev":
            if self.m is None or self.m < 1:
                raise ValueError("Sobolev weight needs a positive integer m")
        elif self.kind == "diffsemi":
            if self.m is None or self.m < 0:
                raise ValueError("differentiation semi-norm weight needs m >= 0")
        elif self.m is not None:
            raise ValueError(f"{self.kind} weight takes no parameter")

    @classmethod
    def parse(cls, text: str) -> WeightScheme:
        """Parse ``hardy``, ``sobolev:m``, ``dirichlet``, ``bergman`` or ``diffsemi:m``."""
        name, _, arg = text.strip().lower().partition(":")
        if arg:
            return cls(name, int(arg))
        return cls(name)

    def __str__(self) -> str:
        return self.kind if self.m is None else f"{self.kind}:{self.m}"

    @property
    def s_min(self) -> int:
        """First index with a nonzero weight."""
        if self.kind == "dirichlet" or (self.kind == "diffsemi" and self.m >= 1):
            return 1
        return 0

    def weights(self, n_max: int) -> np.ndarray:
        """Weights ``omega_0, ..., omega_{n_max}``."""
        s = np.arange(n_max + 1, dtype=float)
        if self.kind == "hardy":
            return np.ones_like(s)
        if self.kind == "sobolev":
            return sum(s ** (2 * k) for k in range(self.m + 1))
        if self.kind == "dirichlet":
            return s
        if self.kind == "bergman":
            return 1.0 / (1.0 + s)
        # 0**0 == 1 in numpy, so diffsemi:0 is the Hardy weight.
        return s**self.m

    def tail_exponents(self) -> list[int]:
        """Exponents k with ``omega_s / s**2 <= sum_k s**k`` for ``s >= 1``."""
        if self.kind == "hardy":
            return [-2]
        if self.kind == "sobolev":
            return [2 * k - 2 for k in range(self.m + 1)]
        if self.kind == "dirichlet":
            return [-1]
        if self.kind == "bergman":
            return [-3]
        return [self.m - 2]


HARDY = WeightScheme("hardy")
DIRICHLET = WeightScheme("dirichlet")
BERGMAN = WeightScheme("bergman")


def weight_at(scheme: WeightScheme, s: int) -> float:
    if s < 0:
        raise ValueError(f"weight index must be nonnegative, got {s}")
    return float(scheme.weights(s)[s])


@dataclass(frozen=True)
class SeriesResult:
    value: float
    value_squared: float
    terms_used: int
    tail_bound: float


def _tail_bound_array(scheme: WeightScheme, K: int, r: float, N: np.ndarray) -> np.ndarray:
    N = np.asarray(N, dtype=float)
    if K == 0 or r == 0.0:
        return np.zeros_like(N)
    x = r * r
    first = np.power(x, N + 1)
    total = np.zeros_like(N)
    for k in scheme.tail_exponents():
        if k <= 0:
            total += first / (1.0 - x)
        else:
            ratio = (1.0 + 1.0 / (N + 1)) ** k * x
            with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
                term = np.where(ratio < 1.0, (N + 1) ** k * first / (1.0 - ratio), np.inf)
            total += term
    return K * K * total


def _bound_params(a: ArmaModel, b: ArmaModel | None) -> tuple[int, float]:
    b = IDENTITY if b is None else b
    K = a.p + a.q + b.p + b.q
    r = max(a.max_modulus, b.max_modulus)
    return K, r


def truncation_bound(
    a: ArmaModel, b: ArmaModel | None, scheme: WeightScheme, N: int
) -> float:
    """Upper bound on ``sum_{s > N} omega_s |c_s - c'_s|**2``; ``b=None`` means the identity filter."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    K, r = _bound_params(a, b)
    return float(_tail_bound_array(scheme, K, r, np.array([N]))[0])


def terms_needed(
    scheme: WeightScheme, K: int, r: float, tol: float, n_min: int = MIN_TERMS
) -> int:
    """Smallest ``N >= n_min`` whose tail bound is below ``tol``."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lo = n_min
    hi = max(2 * n_min, 1024)
    while lo <= MAX_TERMS:
        hi = min(hi, MAX_TERMS)
        candidates = np.arange(lo, hi + 1)
        ok = np.nonzero(_tail_bound_array(scheme, K, r, candidates) < tol)[0]
        if ok.size:
            return int(candidates[ok[0]])
        lo, hi = hi + 1, hi * 16
    raise SeriesDidNotConverge(
        f"tail bound stays above {tol:g} up to {MAX_TERMS} terms (r={r!r})"
    )


def partial_sum(a: ArmaModel, b: ArmaModel | None, scheme: WeightScheme, N: int) -> float:
    """``sum_{s=0}^{N} omega_s |c_s - c'_s|**2`` with compensated summation."""
    b = IDENTITY if b is None else b
    # Power sums are formed per model so that swapping a and b only negates
    # the difference and the result is exactly symmetric.
    delta = power_sums(a, N) - power_sums(b, N)
    s = np.arange(1, N + 1)
    w = scheme.weights(N)
    terms = w[1:] * (np.abs(delta[1:]) / s) ** 2
    dc0 = math.log(a.gain) - math.log(b.gain)
    return math.fsum(terms.tolist()) + float(w[0]) * dc0 * dc0


def weighted_distance_series(
    a: ArmaModel, b: ArmaModel, scheme: WeightScheme, tol: float = DEFAULT_TOL
) -> SeriesResult:
    """``||log h_a - log h_b||_omega`` summed in ascending order until the tail bound drops below ``tol``.

    ``tol`` bounds the omitted tail of ``value_squared``.
    """
    K, r = _bound_params(a, b)
    N = terms_needed(scheme, K, r, tol)
    total = partial_sum(a, b, scheme, N)
    tail = float(_tail_bound_array(scheme, K, r, np.array([N]))[0])
    total = max(total, 0.0)
    return SeriesResult(math.sqrt(total), total, N, tail)


def weighted_norm_series(
    model: ArmaModel, scheme: WeightScheme, tol: float = DEFAULT_TOL
) -> SeriesResult:
    return weighted_distance_series(model, IDENTITY, scheme, tol)
