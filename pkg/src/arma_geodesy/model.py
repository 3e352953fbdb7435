"""Validated ARMA models on the open unit disk.

A model is a gain prefactor together with an ordered list of poles and an
ordered list of zeros.  Its transfer function is::

    h(z) = gain * prod_j (1 - mu_j / z) / prod_i (1 - lambda_i / z)

and the complex cepstrum follows the convention ``s * c_s = sum_i lambda_i**s
- sum_j mu_j**s`` for ``s >= 1`` with ``c_0 = log(gain)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NoConvergence, NonPositiveGain, RootOutsideDisk, UnstablePoint

EPS_STAB = 1e-9

# Cepstrum convention: poles enter the power sums with +1, zeros with -1.
SIGN_POLE = 1
SIGN_ZERO = -1


@dataclass(frozen=True)
class CepstrumConvention:
    sign_pole: int = SIGN_POLE
    sign_zero: int = SIGN_ZERO

    def as_dict(self) -> dict[str, int]:
        return {"sign_pole": self.sign_pole, "sign_zero": self.sign_zero}


CONVENTION = CepstrumConvention()


def check_disk_point(
    point: complex, *, index: int = 0, kind: str = "point", eps_stab: float = EPS_STAB
) -> complex:
    """Return ``point`` as a complex number, raising if it is too close to the circle."""
    z = complex(point)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UnstablePoint(index, kind, float("inf"), eps_stab)
    modulus = abs(z)
    if modulus > 1.0 - eps_stab:
        raise UnstablePoint(index, kind, modulus, eps_stab)
    return z


@dataclass(frozen=True)
class ArmaModel:
    """ARMA(p, q) transfer function parameterised by its poles and zeros.

    ``gain`` holds the whole constant prefactor of ``h`` (the ``sigma**2 /
    2 pi`` factor); sigma itself is never stored.  Construction validates
    every point against ``1 - eps_stab``.
    """

    gain: float = 1.0
    poles: tuple[complex, ...] = ()
    zeros: tuple[complex, ...] = ()
    label: str | None = field(default=None, compare=False)
    eps_stab: float = field(default=EPS_STAB, compare=False, repr=False)

    def __post_init__(self) -> None:
        gain = float(self.gain)
        if not (gain > 0.0 and math.isfinite(gain)):
            raise NonPositiveGain(self.gain)
        poles = tuple(
            check_disk_point(x, index=i, kind="pole", eps_stab=self.eps_stab)
            for i, x in enumerate(self.poles)
        )
        zeros = tuple(
            check_disk_point(x, index=i, kind="zero", eps_stab=self.eps_stab)
            for i, x in enumerate(self.zeros)
        )
        object.__setattr__(self, "gain", gain)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "zeros", zeros)

    @property
    def p(self) -> int:
        return len(self.poles)

    @property
    def q(self) -> int:
        return len(self.zeros)

    @property
    def coords(self) -> tuple[complex, ...]:
        """Geometry coordinates: poles first, then zeros."""
        return self.poles + self.zeros

    @property
    def signs(self) -> tuple[int, ...]:
        return (SIGN_POLE,) * self.p + (SIGN_ZERO,) * self.q

    @property
    def max_modulus(self) -> float:
        return max((abs(x) for x in self.coords), default=0.0)

    @property
    def is_identity(self) -> bool:
        return self.p == 0 and self.q == 0 and self.gain == 1.0

    def with_coords(self, coords: Sequence[complex]) -> ArmaModel:
        """Return a copy with the pole/zero coordinates replaced (same p, q, gain)."""
        coords = tuple(coords)
        if len(coords) != self.p + self.q:
            raise ValueError(f"expected {self.p + self.q} coordinates, got {len(coords)}")
        return ArmaModel(
            self.gain, coords[: self.p], coords[self.p :], self.label, self.eps_stab
        )


IDENTITY = ArmaModel()


def validate(
    raw_gain: float,
    raw_poles: Iterable[complex],
    raw_zeros: Iterable[complex],
    *,
    eps_stab: float = EPS_STAB,
    label: str | None = None,
) -> ArmaModel:
    """Build an :class:`ArmaModel`, raising a :class:`ValidationError` subclass on bad input."""
    return ArmaModel(raw_gain, tuple(raw_poles), tuple(raw_zeros), label, eps_stab)


def transfer_at(model: ArmaModel, z: complex) -> complex:
    zinv = 1.0 / complex(z)
    num = complex(model.gain)
    for mu in model.zeros:
        num *= 1.0 - mu * zinv
    den = 1.0 + 0j
    for lam in model.poles:
        den *= 1.0 - lam * zinv
    return num / den


def spectral_density_at(model: ArmaModel, z: complex) -> float:
    return abs(transfer_at(model, z)) ** 2


def log_transfer_at(model: ArmaModel, z: complex) -> complex:
    """Analytic branch of ``log h(z)`` for ``|z| >= 1``.

    Each factor ``1 - xi / z`` has positive real part, so the principal log of
    every factor is analytic and their sum is the branch whose Laurent series
    is the cepstrum.
    """
    zinv = 1.0 / complex(z)
    out = complex(math.log(model.gain))
    for mu in model.zeros:
        out += cmath.log(1.0 - mu * zinv)
    for lam in model.poles:
        out -= cmath.log(1.0 - lam * zinv)
    return out


def power_sums(model: ArmaModel, n_max: int) -> np.ndarray:
    """Signed power sums ``sum_i lambda_i**s - sum_j mu_j**s`` for ``s = 0..n_max``."""
    return signed_power_sums(model.coords, model.signs, n_max)


def signed_power_sums(
    points: Sequence[complex], signs: Sequence[int], n_max: int
) -> np.ndarray:
    s = np.arange(n_max + 1)
    out = np.zeros(n_max + 1, dtype=complex)
    for x, g in zip(points, signs):
        out += g * np.power(complex(x), s)
    return out


def cepstrum_sequence(model: ArmaModel, n_max: int) -> np.ndarray:
    """Cepstrum coefficients ``c_0, ..., c_{n_max}`` as a complex array."""
    sums = power_sums(model, n_max)
    out = np.empty(n_max + 1, dtype=complex)
    out[0] = math.log(model.gain)
    out[1:] = sums[1:] / np.arange(1, n_max + 1)
    return out


def cepstrum(model: ArmaModel, s: int) -> complex:
    if s < 0:
        raise ValueError(f"cepstrum index must be nonnegative, got {s}")
    if s == 0:
        return complex(math.log(model.gain))
    total = sum(x**s for x in model.poles) - sum(x**s for x in model.zeros)
    return complex(total) / s


def cepstrum_quadrature(model: ArmaModel, s: int, n_samples: int = 4096) -> complex:
    """Evaluate ``(1/2 pi i) \\oint log h(z) z**s dz/z`` by the trapezoidal rule.

    Independent numerical route to :func:`cepstrum`; on the unit circle the
    rule reduces to the mean of ``log h(z_k) z_k**s`` over equispaced nodes.
    """
    theta = 2.0 * np.pi * np.arange(n_samples) / n_samples
    z = np.exp(1j * theta)
    zinv = np.conj(z)
    logh = np.full(n_samples, math.log(model.gain), dtype=complex)
    for mu in model.zeros:
        logh += np.log(1.0 - mu * zinv)
    for lam in model.poles:
        logh -= np.log(1.0 - lam * zinv)
    return complex(np.mean(logh * z**s))


def _durand_kerner(monic: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    # monic[0] == 1, descending powers of z.
    n = len(monic) - 1
    radius = 1.0 + max(abs(c) for c in monic[1:])
    roots = radius * (0.4 + 0.9j) ** np.arange(n)
    for _ in range(max_iter):
        values = np.polyval(monic, roots)
        diffs = roots[:, None] - roots[None, :]
        np.fill_diagonal(diffs, 1.0)
        denom = np.prod(diffs, axis=1)
        step = values / denom
        roots = roots - step
        if np.max(np.abs(step)) <= tol * max(1.0, np.max(np.abs(roots))):
            return roots
    raise NoConvergence(f"Durand-Kerner did not converge in {max_iter} iterations")


def roots_from_poly(
    coeffs: Sequence[complex],
    kind: str = "pole",
    *,
    tol: float = 1e-12,
    max_iter: int = 1000,
    eps_stab: float = EPS_STAB,
) -> list[complex]:
    """Roots of ``1 + a_1 z^-1 + ... + a_n z^-n`` given ``coeffs = [1, a_1, ..., a_n]``.

    Multiplying through by ``z**n`` gives a monic polynomial in ``z`` with the
    same coefficient order, whose roots are the pole (or zero) locations.
    """
    if kind not in ("pole", "zero"):
        raise ValueError(f"kind must be 'pole' or 'zero', got {kind!r}")
    c = np.asarray([complex(x) for x in coeffs], dtype=complex)
    if len(c) < 2:
        raise ValueError("polynomial degree must be at least 1")
    if c[0] != 1:
        raise ValueError(f"leading coefficient must be 1, got {c[0]!r}")
    if len(c) == 2:
        roots = np.array([-c[1]])
    else:
        roots = _durand_kerner(c, tol, max_iter)
    if np.all(c.imag == 0):
        # Real polynomial: snap numerically-real roots onto the axis.
        snap = np.abs(roots.imag) <= 1e-10 * np.maximum(1.0, np.abs(roots))
        roots = np.where(snap, roots.real + 0j, roots)
    out = []
    for r in sorted(roots, key=lambda x: (-abs(x), x.real, x.imag)):
        r = complex(r)
        if abs(r) > 1.0 - eps_stab:
            raise RootOutsideDisk(r, kind)
        out.append(r)
    return out
