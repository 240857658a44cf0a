"""Matrix *-algebra kernel.

Elements are square complex matrices under the conjugate-transpose
involution, with the spectral norm, the eigenvalue-based positivity
order, and positive-semidefinite square roots.  Every value is
immutable and every operation is a pure function, so the kernel is safe
to use from concurrent code without locking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotPositive


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute slack used by the numerical predicates.

    A comparison at magnitude ``s`` is allowed to err by
    ``abs + rel * s``.
    """

    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        if self.rel < 0.0 or self.abs < 0.0:
            raise ValueError("tolerance components must be nonnegative")

    def margin(self, scale: float) -> float:
        """Total slack for a comparison at the given magnitude."""
        return self.abs + self.rel * float(scale)


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An n-by-n complex matrix, one element of the scalar algebra.

    Entries are stored as an immutable complex128 array.  The class only
    validates shape and finiteness; all algebraic structure lives in the
    module-level functions below.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionMismatch(
                f"algebra element must be a square matrix, got shape {arr.shape}"
            )
        if not np.isfinite(arr).all():
            raise ValueError("algebra element entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_dims(self, other)
        return AlgebraElement(self.entries + other.entries)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_dims(self, other)
        return AlgebraElement(self.entries - other.entries)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.entries)

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_dims(self, other)
        return AlgebraElement(self.entries @ other.entries)

    def __mul__(self, scalar: complex) -> "AlgebraElement":
        return AlgebraElement(self.entries * scalar)

    __rmul__ = __mul__


def _check_dims(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"algebra dims differ: {a.dim} vs {b.dim}")


def identity(n: int) -> AlgebraElement:
    """The unit of the n-by-n algebra."""
    return AlgebraElement(np.eye(n, dtype=np.complex128))


def zero(n: int) -> AlgebraElement:
    """The zero element of the n-by-n algebra."""
    return AlgebraElement(np.zeros((n, n), dtype=np.complex128))


def hermitian_part(mat: np.ndarray) -> np.ndarray:
    """Hermitian part (m + m*)/2 of a square complex matrix."""
    return (mat + mat.conj().T) / 2.0


def spectral_norm(mat: np.ndarray) -> float:
    """Largest singular value of a complex matrix."""
    if mat.size == 0:
        return 0.0
    return float(np.linalg.norm(mat, 2))


def adjoint(a: AlgebraElement) -> AlgebraElement:
    """Conjugate transpose.  An exact involution: adjoint(adjoint(a)) == a."""
    return AlgebraElement(a.entries.conj().T)


def operator_norm(a: AlgebraElement) -> float:
    """Spectral norm of the element, i.e. its largest singular value."""
    return spectral_norm(a.entries)


def is_positive(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Decide positivity spectrally.

    True iff ``a`` is Hermitian up to the tolerance margin and every
    eigenvalue of its Hermitian part clears ``-margin``.  The margin is
    ``tol.abs + tol.rel * ||a||``, so near-singular positives on the PSD
    boundary are accepted.
    """
    scale = operator_norm(a)
    margin = tol.margin(scale)
    herm_dev = spectral_norm(a.entries - a.entries.conj().T)
    if herm_dev > margin:
        return False
    eigs = np.linalg.eigvalsh(hermitian_part(a.entries))
    return bool(eigs[0] >= -margin)


def sqrt_psd(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """Positive square root of a positive element.

    Computed by Hermitian eigendecomposition with negative round-off
    eigenvalues clamped to zero.  Raises NotPositive when the input is
    not positive at the given tolerance.
    """
    if not is_positive(a, tol):
        raise NotPositive("sqrt_psd requires a positive element")
    eigs, vecs = np.linalg.eigh(hermitian_part(a.entries))
    eigs = np.clip(eigs, 0.0, None)
    root = (vecs * np.sqrt(eigs)) @ vecs.conj().T
    return AlgebraElement(root)


def abs_element(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """Absolute value |a| = (a* a)^(1/2)."""
    return sqrt_psd(adjoint(a) @ a, tol)


def psd_order_leq(
    a: AlgebraElement, b: AlgebraElement, tol: Tolerance = DEFAULT_TOL
) -> bool:
    """True iff a <= b in the positive-semidefinite order, i.e. b - a >= 0."""
    _check_dims(a, b)
    return is_positive(b - a, tol)
