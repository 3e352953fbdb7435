"""Random model corpora and brute-force oracles shared by the tests."""

from __future__ import annotations

import numpy as np

from arma_geodesy import ArmaModel


def disk_points(rng: np.random.Generator, n: int, rmax: float) -> list[complex]:
    r = rmax * np.sqrt(rng.uniform(size=n))
    t = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return [complex(z) for z in r * np.exp(1j * t)]


def conjugate_closed_points(rng: np.random.Generator, n: int, rmax: float) -> list[complex]:
    """``n`` points closed under conjugation (real roots plus conjugate pairs)."""
    out: list[complex] = []
    while len(out) < n:
        if n - len(out) >= 2 and rng.uniform() < 0.5:
            z = disk_points(rng, 1, rmax)[0]
            out += [z, z.conjugate()]
        else:
            out.append(complex(rng.uniform(-rmax, rmax), 0.0))
    return out


def random_model(
    rng: np.random.Generator, max_p: int = 5, max_q: int = 5, rmax: float = 0.95
) -> ArmaModel:
    p = int(rng.integers(0, max_p + 1))
    q = int(rng.integers(0, max_q + 1))
    pts = conjugate_closed_points if rng.uniform() < 0.5 else disk_points
    gain = float(np.exp(rng.normal()))
    return ArmaModel(gain, tuple(pts(rng, p, rmax)), tuple(pts(rng, q, rmax)))


def brute_dirichlet_sq(a: ArmaModel, b: ArmaModel, n_terms: int = 5000) -> float:
    """Plain-Python sum of ``|sum lam^s - sum mu^s - (...)'|^2 / s``."""
    total = 0.0
    for s in range(1, n_terms + 1):
        d = (
            sum(x**s for x in a.poles)
            - sum(x**s for x in a.zeros)
            - sum(x**s for x in b.poles)
            + sum(x**s for x in b.zeros)
        )
        total += abs(d) ** 2 / s
    return total


def unwrapped_cepstrum(model: ArmaModel, s: int, n_samples: int = 4096) -> complex:
    """Cepstrum from samples of h on the circle, with the log branch fixed by phase unwrapping."""
    from arma_geodesy import transfer_at

    z = np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    h = np.array([transfer_at(model, zk) for zk in z])
    logh = np.log(np.abs(h)) + 1j * np.unwrap(np.angle(h))
    return complex(np.mean(logh * z**s))
