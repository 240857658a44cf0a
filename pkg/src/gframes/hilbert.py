"""Hilbert module vectors and adjointable block operators.

A module vector over the n-by-n algebra is a d-tuple of algebra
elements; an adjointable operator between modules of lengths d and d'
is a d-by-d' array of blocks.  Both flatten exactly to complex
matrices: vectors become n-by-(n*d) row-block matrices, and operators
act on that representation by right multiplication.  Under this
convention the flattened adjoint is the conjugate transpose, and
``flat(compose(T2, T1)) == flat(T1) @ flat(T2)`` holds to the bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import AlgebraElement, DEFAULT_TOL, Tolerance, adjoint, spectral_norm
from .errors import DimensionMismatch


@dataclass(frozen=True, eq=False)
class ModuleVector:
    """Element of the length-d module over the n-by-n algebra."""

    components: tuple[AlgebraElement, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise DimensionMismatch("module vector needs at least one component")
        dims = {c.dim for c in comps}
        if len(dims) != 1:
            raise DimensionMismatch(f"components mix algebra dims {sorted(dims)}")
        object.__setattr__(self, "components", comps)

    @property
    def algebra_dim(self) -> int:
        return self.components[0].dim

    @property
    def length(self) -> int:
        return len(self.components)

    @cached_property
    def flat(self) -> np.ndarray:
        """Row-block matrix of shape (n, n*length)."""
        out = np.hstack([c.entries for c in self.components])
        out.setflags(write=False)
        return out

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        _check_vectors(self, other)
        return ModuleVector(
            tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        _check_vectors(self, other)
        return ModuleVector(
            tuple(a - b for a, b in zip(self.components, other.components))
        )

    def __mul__(self, scalar: complex) -> "ModuleVector":
        return ModuleVector(tuple(c * scalar for c in self.components))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class AdjointableOp:
    """Adjointable map between modules, stored as a block matrix.

    ``blocks[i][j]`` multiplies component i of the input and contributes
    to component j of the output.
    """

    blocks: tuple[tuple[AlgebraElement, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.blocks)
        if not rows or not rows[0]:
            raise DimensionMismatch("operator needs at least one block")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatch("operator block rows have unequal lengths")
        dims = {b.dim for row in rows for b in row}
        if len(dims) != 1:
            raise DimensionMismatch(f"operator blocks mix algebra dims {sorted(dims)}")
        object.__setattr__(self, "blocks", rows)

    @property
    def algebra_dim(self) -> int:
        return self.blocks[0][0].dim

    @property
    def source_len(self) -> int:
        return len(self.blocks)

    @property
    def target_len(self) -> int:
        return len(self.blocks[0])

    @cached_property
    def flat(self) -> np.ndarray:
        """Assembled complex matrix of shape (n*source_len, n*target_len)."""
        out = np.block([[b.entries for b in row] for row in self.blocks])
        out.setflags(write=False)
        return out

    def __add__(self, other: "AdjointableOp") -> "AdjointableOp":
        _check_op_shapes(self, other)
        return op_from_flat(self.flat + other.flat, self.algebra_dim)

    def __sub__(self, other: "AdjointableOp") -> "AdjointableOp":
        _check_op_shapes(self, other)
        return op_from_flat(self.flat - other.flat, self.algebra_dim)

    def __neg__(self) -> "AdjointableOp":
        return op_from_flat(-self.flat, self.algebra_dim)

    def __mul__(self, scalar: complex) -> "AdjointableOp":
        return op_from_flat(self.flat * scalar, self.algebra_dim)

    __rmul__ = __mul__

    def __matmul__(self, other: "AdjointableOp") -> "AdjointableOp":
        """Operator product self . other (other is applied first)."""
        return compose(self, other)


def _check_vectors(x: ModuleVector, y: ModuleVector) -> None:
    if x.algebra_dim != y.algebra_dim or x.length != y.length:
        raise DimensionMismatch(
            f"vector shapes differ: ({x.algebra_dim},{x.length}) vs"
            f" ({y.algebra_dim},{y.length})"
        )


def _check_op_shapes(a: AdjointableOp, b: AdjointableOp) -> None:
    if (
        a.algebra_dim != b.algebra_dim
        or a.source_len != b.source_len
        or a.target_len != b.target_len
    ):
        raise DimensionMismatch("operator shapes differ")


def vector_from_flat(flat: np.ndarray, algebra_dim: int) -> ModuleVector:
    """Rebuild a module vector from its n-by-(n*d) flattening."""
    n = algebra_dim
    if flat.ndim != 2 or flat.shape[0] != n or flat.shape[1] % n != 0:
        raise DimensionMismatch(f"flat vector shape {flat.shape} invalid for dim {n}")
    d = flat.shape[1] // n
    comps = tuple(AlgebraElement(flat[:, i * n : (i + 1) * n]) for i in range(d))
    return ModuleVector(comps)


def op_from_flat(flat: np.ndarray, algebra_dim: int) -> AdjointableOp:
    """Rebuild an operator from its (n*d)-by-(n*d') flattening."""
    n = algebra_dim
    if flat.ndim != 2 or flat.shape[0] % n != 0 or flat.shape[1] % n != 0:
        raise DimensionMismatch(f"flat operator shape {flat.shape} invalid for dim {n}")
    src = flat.shape[0] // n
    tgt = flat.shape[1] // n
    blocks = tuple(
        tuple(
            AlgebraElement(flat[i * n : (i + 1) * n, j * n : (j + 1) * n])
            for j in range(tgt)
        )
        for i in range(src)
    )
    return AdjointableOp(blocks)


def identity_op(n: int, length: int) -> AdjointableOp:
    """Identity operator on the length-d module over the n-by-n algebra."""
    return op_from_flat(np.eye(n * length, dtype=np.complex128), n)


def zero_op(n: int, source_len: int, target_len: int) -> AdjointableOp:
    """Zero operator between modules of the given lengths."""
    return op_from_flat(
        np.zeros((n * source_len, n * target_len), dtype=np.complex128), n
    )


def block_diag_op(a: AlgebraElement, length: int) -> AdjointableOp:
    """Operator acting as the algebra element on every component.

    This is the adjointable lift of an algebra coefficient to the whole
    module: each component of the input picks up ``a``.
    """
    n = a.dim
    flat = np.zeros((n * length, n * length), dtype=np.complex128)
    for i in range(length):
        flat[i * n : (i + 1) * n, i * n : (i + 1) * n] = a.entries
    return op_from_flat(flat, n)


def inner_product(x: ModuleVector, y: ModuleVector) -> AlgebraElement:
    """Algebra-valued inner product, linear in the first argument.

    Returns sum_i x_i y_i*; satisfies <a x + y, z> = a <x, z> + <y, z>
    and <x, y> = adjoint(<y, x>).
    """
    _check_vectors(x, y)
    return AlgebraElement(x.flat @ y.flat.conj().T)


def module_scale(a: AlgebraElement, x: ModuleVector) -> ModuleVector:
    """Module action of an algebra element: components become a x_i."""
    if a.dim != x.algebra_dim:
        raise DimensionMismatch("algebra dim does not match vector")
    return ModuleVector(tuple(a @ c for c in x.components))


def scalar_norm(x: ModuleVector) -> float:
    """Module norm ||x|| = ||<x, x>||^(1/2)."""
    gram = inner_product(x, x)
    return float(np.sqrt(max(spectral_norm(gram.entries), 0.0)))


def apply(op: AdjointableOp, x: ModuleVector) -> ModuleVector:
    """Apply the operator: component j of the result is sum_i x_i blocks[i][j]."""
    if op.algebra_dim != x.algebra_dim or op.source_len != x.length:
        raise DimensionMismatch(
            f"operator expects length {op.source_len}, vector has {x.length}"
        )
    return vector_from_flat(x.flat @ op.flat, op.algebra_dim)


def adjoint_op(op: AdjointableOp) -> AdjointableOp:
    """Adjoint: blocks transposed, each block conjugate-transposed.

    Satisfies <apply(T, x), y> = <x, apply(adjoint_op(T), y)> and
    flattens to the exact conjugate transpose of flat(T).
    """
    blocks = tuple(
        tuple(adjoint(op.blocks[i][j]) for i in range(op.source_len))
        for j in range(op.target_len)
    )
    return AdjointableOp(blocks)


def compose(second: AdjointableOp, first: AdjointableOp) -> AdjointableOp:
    """Composition second . first (apply ``first``, then ``second``)."""
    if first.algebra_dim != second.algebra_dim:
        raise DimensionMismatch("operators live over different algebras")
    if first.target_len != second.source_len:
        raise DimensionMismatch(
            f"cannot compose: inner lengths {first.target_len} vs {second.source_len}"
        )
    return op_from_flat(first.flat @ second.flat, first.algebra_dim)


def op_norm(op: AdjointableOp) -> float:
    """Operator norm, the largest singular value of the flattening."""
    return spectral_norm(op.flat)


def is_surjective(op: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Surjectivity via the flattened adjoint being bounded below.

    The adjoint is bounded below exactly when the target is no larger
    than the source and the smallest of the n*target_len singular values
    clears a tolerance-scaled threshold.
    """
    if op.target_len > op.source_len:
        return False
    svals = np.linalg.svd(op.flat, compute_uv=False)
    if svals.size == 0:
        return False
    return bool(svals[-1] > tol.margin(svals[0]))


def is_isometry(op: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff adjoint_op(T) . T is the identity within tolerance."""
    gram = compose(adjoint_op(op), op).flat
    eye = np.eye(gram.shape[0], dtype=np.complex128)
    return bool(spectral_norm(gram - eye) <= tol.margin(1.0))
