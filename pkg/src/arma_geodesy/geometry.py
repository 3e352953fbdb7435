"""Kahler geometry of the ARMA manifold.

The potential is the squared weighted Hardy norm of ``log h``.  The metric
and Levi-Civita connection are its mixed derivatives

    g_{i jbar} = d_i dbar_j K,        Gamma_{ij, kbar} = d_i d_j dbar_k K,

taken in the complex pole/zero coordinates (poles first, then zeros).  For
the Dirichlet weight both tensors have closed forms; finite differences of
the potential and unit-circle quadrature provide independent routes.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingularMetric, StepOutOfDisk
from .model import ArmaModel
from .series import DIRICHLET, WeightScheme, partial_sum, terms_needed, weighted_norm_series

COINCIDENCE_TOL = 1e-10
METRIC_STEP = 1e-4
CONNECTION_STEP = 1e-3
FD_TOL = 1e-12


@dataclass
class GeometryReport:
    coords: tuple[complex, ...]
    signs: tuple[int, ...]
    metric: np.ndarray | None = None
    connection: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.coords)

    def as_dict(self) -> dict:
        def cplx(a: np.ndarray) -> list:
            return np.stack([a.real, a.imag], axis=-1).tolist()

        out: dict = {
            "coords": [[z.real, z.imag] for z in self.coords],
            "signs": list(self.signs),
        }
        if self.metric is not None:
            out["metric"] = cplx(self.metric)
        if self.connection is not None:
            out["connection"] = cplx(self.connection)
        return out


def _hermitian(m: np.ndarray) -> np.ndarray:
    # Mirror the upper triangle so g[j, i] == conj(g[i, j]) holds bit for bit.
    out = np.triu(m, 1)
    out = out + out.conj().T
    out[np.diag_indices_from(out)] = np.diag(m).real
    return out


def _report(model: ArmaModel) -> GeometryReport:
    return GeometryReport(model.coords, model.signs)


def kahler_potential(model: ArmaModel, scheme: WeightScheme, tol: float = 1e-10) -> float:
    return weighted_norm_series(model, scheme, tol).value_squared


def _check_coincident(coords: tuple[complex, ...]) -> None:
    for i, j in itertools.combinations(range(len(coords)), 2):
        if abs(coords[i] - coords[j]) <= COINCIDENCE_TOL:
            warnings.warn(
                f"coordinates {i} and {j} coincide ({coords[i]!r}); metric is singular",
                SingularMetric,
                stacklevel=3,
            )
            return


def metric_dirichlet_closed(model: ArmaModel) -> GeometryReport:
    """``g_{i jbar} = gamma_i gamma_j / (1 - xi_i conj(xi_j))**2``."""
    if model.p + model.q == 0:
        raise ValueError("metric needs at least one pole or zero")
    xi = np.asarray(model.coords, dtype=complex)
    gamma = np.asarray(model.signs, dtype=float)
    _check_coincident(model.coords)
    rep = _report(model)
    rep.metric = _hermitian(np.outer(gamma, gamma) / (1.0 - np.outer(xi, np.conj(xi))) ** 2)
    return rep


def connection_dirichlet_closed(model: ArmaModel) -> GeometryReport:
    """``Gamma_{ij,kbar} = delta_ij gamma_j gamma_k 2 conj(xi_k) / (1 - xi_j conj(xi_k))**3``."""
    n = model.p + model.q
    xi = np.asarray(model.coords, dtype=complex)
    gamma = np.asarray(model.signs, dtype=float)
    diag = (
        np.outer(gamma, gamma)
        * 2.0
        * np.conj(xi)[None, :]
        / (1.0 - np.outer(xi, np.conj(xi))) ** 3
    )
    conn = np.zeros((n, n, n), dtype=complex)
    idx = np.arange(n)
    conn[idx, idx, :] = diag
    rep = _report(model)
    rep.connection = conn
    return rep


def hardy_metric_closed(model: ArmaModel) -> GeometryReport:
    """Unweighted Hardy metric ``gamma_i gamma_j / (1 - xi_i conj(xi_j))``."""
    xi = np.asarray(model.coords, dtype=complex)
    gamma = np.asarray(model.signs, dtype=float)
    rep = _report(model)
    rep.metric = _hermitian(np.outer(gamma, gamma) / (1.0 - np.outer(xi, np.conj(xi))))
    return rep


def metric_contour_hardy(model: ArmaModel, n_samples: int = 4096) -> GeometryReport:
    """Hardy metric from trapezoidal quadrature of ``(d_i log h)(d_j log h)^*`` on the unit circle."""
    if n_samples < 64:
        raise ValueError(f"n_samples must be >= 64, got {n_samples}")
    z = np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    zinv = np.conj(z)
    xi = np.asarray(model.coords, dtype=complex)
    gamma = np.asarray(model.signs, dtype=float)
    # d log h / d lambda = z^-1 / (1 - lambda z^-1); zeros carry the opposite sign.
    grads = gamma[:, None] * zinv[None, :] / (1.0 - xi[:, None] * zinv[None, :])
    rep = _report(model)
    rep.metric = grads @ np.conj(grads).T / n_samples
    return rep


class _StencilPotential:
    """Potential as a function of real coordinates, on a fixed truncation.

    All stencil points share one series length so the finite differences act
    on a single smooth function rather than on a piecewise truncation.
    """

    def __init__(self, model: ArmaModel, scheme: WeightScheme, step: float, reach: int, tol: float):
        self.model = model
        self.scheme = scheme
        self.step = step
        self.base = np.array([[z.real, z.imag] for z in model.coords]).reshape(-1)
        r = model.max_modulus + reach * step
        if r > 1.0 - model.eps_stab:
            raise StepOutOfDisk(
                f"step {step:g} moves a coordinate to modulus {r:.6g}, outside the disk"
            )
        K = model.p + model.q
        self.n_terms = terms_needed(scheme, K, r, tol)
        self._cache: dict[tuple[int, ...], float] = {}

    def __call__(self, offsets: dict[int, int]) -> float:
        key = tuple(sorted((k, v) for k, v in offsets.items() if v))
        if key not in self._cache:
            x = self.base.copy()
            for k, v in key:
                x[k] += v * self.step
            coords = x[0::2] + 1j * x[1::2]
            moved = self.model.with_coords(coords.tolist())
            self._cache[key] = partial_sum(moved, None, self.scheme, self.n_terms)
        return self._cache[key]

    def partial(self, axes: tuple[int, ...]) -> float:
        """Central-difference mixed partial along the given real axes (repeats allowed)."""
        total = 0.0
        for signs in itertools.product((1, -1), repeat=len(axes)):
            offsets: dict[int, int] = {}
            for ax, s in zip(axes, signs):
                offsets[ax] = offsets.get(ax, 0) + s
            total += np.prod(signs) * self(offsets)
        return total / (2.0 * self.step) ** len(axes)


# Wirtinger operators in real coordinates: d = (dx - i dy)/2, dbar = (dx + i dy)/2.
_HOLO = ((0, 0.5), (1, -0.5j))
_ANTI = ((0, 0.5), (1, 0.5j))


def metric_fd(
    model: ArmaModel,
    scheme: WeightScheme = DIRICHLET,
    step: float = METRIC_STEP,
    tol: float = FD_TOL,
) -> GeometryReport:
    """Metric ``d_i dbar_j K`` by central second differences of the potential."""
    n = model.p + model.q
    if n == 0:
        raise ValueError("metric needs at least one pole or zero")
    pot = _StencilPotential(model, scheme, step, 2, tol)
    g = np.zeros((n, n), dtype=complex)
    for i, j in itertools.product(range(n), repeat=2):
        for (a, ca), (b, cb) in itertools.product(_HOLO, _ANTI):
            g[i, j] += ca * cb * pot.partial((2 * i + a, 2 * j + b))
    rep = _report(model)
    rep.metric = g
    return rep


def connection_fd(
    model: ArmaModel,
    scheme: WeightScheme = DIRICHLET,
    step: float = CONNECTION_STEP,
    tol: float = FD_TOL,
) -> GeometryReport:
    """Connection ``d_i d_j dbar_k K`` by central third differences of the potential."""
    n = model.p + model.q
    if n == 0:
        raise ValueError("connection needs at least one pole or zero")
    pot = _StencilPotential(model, scheme, step, 3, tol)
    conn = np.zeros((n, n, n), dtype=complex)
    for i, j, k in itertools.product(range(n), repeat=3):
        for (a, ca), (b, cb), (c, cc) in itertools.product(_HOLO, _HOLO, _ANTI):
            conn[i, j, k] += ca * cb * cc * pot.partial((2 * i + a, 2 * j + b, 2 * k + c))
    rep = _report(model)
    rep.connection = conn
    return rep
