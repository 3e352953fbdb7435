"""Closed-form Dirichlet distance and its hyperbolic decomposition.

With the Dirichlet weight the cepstrum series sums to logarithms of
``1 - u conj(v)`` over pairs of poles and zeros.  Regrouping those logarithms
with the Poincare-disk distance ``rho`` gives a decomposition of the squared
distance into AR-AR, MA-MA and AR-MA cross sums of

    Xi(u, v) = log cosh^2(rho(u, v) / 2)
             = log|1 - u conj(v)|^2 - log(1 - |u|^2) - log(1 - |v|^2)

plus a residual that is proportional to the change in relative order
``(p - q) - (p' - q')``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import InternalInconsistency
from .model import IDENTITY, ArmaModel

XI_CHECK_TOL = 1e-10


def _one_minus_sq(u: complex) -> float:
    # (1 - |u|)(1 + |u|) keeps relative accuracy as |u| -> 1.
    r = abs(u)
    return (1.0 - r) * (1.0 + r)


def log_one_minus_sq(u: complex) -> float:
    """``log(1 - |u|**2)``."""
    r = abs(u)
    return math.log1p(-r) + math.log1p(r)


def hyperbolic_distance(u: complex, v: complex) -> float:
    """Poincare-disk distance ``log((|1-u v*| + |u-v|) / (|1-u v*| - |u-v|))``.

    The denominator is evaluated as ``(1-|u|^2)(1-|v|^2) / (|1-u v*| + |u-v|)``,
    which is the same quantity without the cancellation near the boundary.
    """
    a = abs(1.0 - u * complex(v).conjugate())
    b = abs(u - v)
    if b == 0.0:
        return 0.0
    num = a + b
    den = _one_minus_sq(u) * _one_minus_sq(v) / num
    return math.log(num / den)


def xi_cosh_form(u: complex, v: complex) -> float:
    """``log(cosh^2(rho/2))`` computed from the hyperbolic distance."""
    half = 0.5 * hyperbolic_distance(u, v)
    return 2.0 * math.log(math.cosh(half))


def xi_log_form(u: complex, v: complex) -> float:
    """``log|1-u v*|^2 - log(1-|u|^2) - log(1-|v|^2)``, term by term."""
    a = abs(1.0 - u * complex(v).conjugate())
    return 2.0 * math.log(a) - log_one_minus_sq(u) - log_one_minus_sq(v)


def _xi_stable(u: complex, v: complex) -> float:
    # |1 - u v*|^2 = |u - v|^2 + (1-|u|^2)(1-|v|^2), so Xi = log1p(|u-v|^2 / D).
    d = abs(u - v)
    return math.log1p(d * d / (_one_minus_sq(u) * _one_minus_sq(v)))


def xi(u: complex, v: complex) -> float:
    """Xi(u, v): symmetric, nonnegative, zero on the diagonal, not a metric.

    Both printed forms are evaluated and checked against each other; the
    returned value is the log form rearranged as ``log1p`` so that it is
    exactly zero for ``u == v`` and never negative.
    """
    value = _xi_stable(u, v)
    for other in (xi_log_form(u, v), xi_cosh_form(u, v)):
        if abs(other - value) > XI_CHECK_TOL * max(1.0, value):
            raise InternalInconsistency(
                f"Xi({u!r}, {v!r}): forms disagree ({value!r} vs {other!r})"
            )
    return value


def _as_array(points: Sequence[complex]) -> np.ndarray:
    return np.asarray(points, dtype=complex).reshape(-1)


def _log_abs_pairs(us: Sequence[complex], vs: Sequence[complex]) -> float:
    """``sum_{i,j} log|1 - u_i conj(v_j)|``."""
    u, v = _as_array(us), _as_array(vs)
    if u.size == 0 or v.size == 0:
        return 0.0
    return float(np.sum(np.log(np.abs(1.0 - u[:, None] * np.conj(v)[None, :]))))


def _xi_matrix(us: Sequence[complex], vs: Sequence[complex]) -> np.ndarray:
    u, v = _as_array(us), _as_array(vs)
    if u.size == 0 or v.size == 0:
        return np.zeros((u.size, v.size))
    du = (1.0 - np.abs(u)) * (1.0 + np.abs(u))
    dv = (1.0 - np.abs(v)) * (1.0 + np.abs(v))
    diff = np.abs(u[:, None] - v[None, :]) ** 2
    return np.log1p(diff / (du[:, None] * dv[None, :]))


def _xi_cross_sum(us: Sequence[complex], vs: Sequence[complex]) -> float:
    return float(np.sum(_xi_matrix(us, vs)))


def _xi_within_sum(us: Sequence[complex]) -> float:
    """``sum_{i<j} Xi(u_i, u_j)``."""
    m = _xi_matrix(us, us)
    return float(np.sum(np.triu(m, k=1)))


def _sum_log_one_minus_sq(points: Sequence[complex]) -> float:
    return math.fsum(log_one_minus_sq(x) for x in points)


def _block(x: Sequence[complex], y: Sequence[complex]) -> float:
    # log( prod|1 - x_i y_j*|^2 / (prod (1 - x_i x_j*) prod (1 - y_i y_j*)) )
    return (
        2.0 * _log_abs_pairs(x, y) - _log_abs_pairs(x, x) - _log_abs_pairs(y, y)
    )


def dirichlet_blocks(a: ArmaModel, b: ArmaModel) -> tuple[float, float, float]:
    """The AR, MA and AR-MA log blocks whose sum is the squared Dirichlet distance."""
    lam, mu = a.poles, a.zeros
    lam2, mu2 = b.poles, b.zeros
    ar = _block(lam, lam2)
    ma = _block(mu, mu2)
    cross = 2.0 * (
        _log_abs_pairs(lam, mu)
        + _log_abs_pairs(lam2, mu2)
        - _log_abs_pairs(lam, mu2)
        - _log_abs_pairs(lam2, mu)
    )
    return ar, ma, cross


def dirichlet_distance_squared_closed(a: ArmaModel, b: ArmaModel) -> float:
    ar, ma, cross = dirichlet_blocks(a, b)
    return max(ar + ma + cross, 0.0)


def dirichlet_distance_closed(a: ArmaModel, b: ArmaModel) -> float:
    return math.sqrt(dirichlet_distance_squared_closed(a, b))


def dirichlet_norm_closed(model: ArmaModel) -> float:
    """Dirichlet norm of ``log h``, i.e. the distance to the identity filter."""
    return dirichlet_distance_closed(model, IDENTITY)


@dataclass(frozen=True)
class DecompositionReport:
    ar_ar: float
    ma_ma: float
    ar_ma_cross: float
    residual: float
    total_squared: float
    relative_order_delta: int
    residual_log_ratio: float

    @property
    def components_sum(self) -> float:
        return self.ar_ar + self.ma_ma + self.ar_ma_cross + self.residual

    def as_dict(self) -> dict[str, float | int]:
        return asdict(self)


def decompose(a: ArmaModel, b: ArmaModel) -> DecompositionReport:
    """Hyperbolic decomposition of the squared Dirichlet distance between ``a`` and ``b``."""
    lam, mu = a.poles, a.zeros
    lam2, mu2 = b.poles, b.zeros

    ar_ar = _xi_cross_sum(lam, lam2) - _xi_within_sum(lam) - _xi_within_sum(lam2)
    ma_ma = _xi_cross_sum(mu, mu2) - _xi_within_sum(mu) - _xi_within_sum(mu2)
    ar_ma = (
        _xi_cross_sum(lam, mu)
        + _xi_cross_sum(lam2, mu2)
        - _xi_cross_sum(lam, mu2)
        - _xi_cross_sum(mu, lam2)
    )

    delta = (a.p - a.q) - (b.p - b.q)
    log_ratio = (
        _sum_log_one_minus_sq(lam2)
        + _sum_log_one_minus_sq(mu)
        - _sum_log_one_minus_sq(lam)
        - _sum_log_one_minus_sq(mu2)
    )
    residual = delta * log_ratio if delta != 0 else 0.0

    return DecompositionReport(
        ar_ar=ar_ar,
        ma_ma=ma_ma,
        ar_ma_cross=ar_ma,
        residual=residual,
        total_squared=dirichlet_distance_squared_closed(a, b),
        relative_order_delta=delta,
        residual_log_ratio=log_ratio,
    )
