"""Seeded randomness helpers.

All streams come from numpy's Philox engine, a 64-bit counter-based
generator with published test vectors, keyed directly by the caller's
seed.  Identical seeds therefore reproduce bit-identical draws.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1


def make_rng(seed: int) -> np.random.Generator:
    """Philox generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def sub_seed(rng: np.random.Generator) -> int:
    """Draw a fresh 63-bit seed for a child stream."""
    return int(rng.integers(0, 1 << 63))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Standard complex Gaussian matrix (unit total variance per entry)."""
    re = rng.standard_normal((rows, cols))
    im = rng.standard_normal((rows, cols))
    return (re + 1j * im) / math.sqrt(2.0)


def sample_flat_vectors(
    rng: np.random.Generator, count: int, n: int, length: int
) -> np.ndarray:
    """Batch of flattened module vectors, shape (count, n, n*length)."""
    re = rng.standard_normal((count, n, n * length))
    im = rng.standard_normal((count, n, n * length))
    return (re + 1j * im) / math.sqrt(2.0)


def haar_unitary(rng: np.random.Generator, m: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix.

    The diagonal of R is phase-fixed so the distribution does not depend
    on the QR sign convention.
    """
    z = complex_gaussian(rng, m, m)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    return q * (diag / np.abs(diag))
