"""JSON forms of the core values.

Complex scalars are [re, im] pairs; matrices are nested lists of those;
operators carry their block grid; families list their members.  These
shapes appear verbatim inside scenario files and reports.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraElement
from .errors import ValidationError
from .frames import FrameBounds, GFrameFamily
from .hilbert import AdjointableOp, ModuleVector
from .sums import CheckItem, ScalarWeights, TheoremReport
from .stability import PerturbationReport


def matrix_to_json(mat: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in mat]


def matrix_from_json(data) -> np.ndarray:
    try:
        arr = np.array(
            [[complex(cell[0], cell[1]) for cell in row] for row in data],
            dtype=np.complex128,
        )
    except (TypeError, IndexError, ValueError) as exc:
        raise ValidationError(f"malformed complex matrix: {exc}") from exc
    return arr


def element_to_json(a: AlgebraElement) -> list:
    return matrix_to_json(a.entries)


def element_from_json(data) -> AlgebraElement:
    return AlgebraElement(matrix_from_json(data))


def vector_to_json(x: ModuleVector) -> dict:
    return {"components": [element_to_json(c) for c in x.components]}


def vector_from_json(data) -> ModuleVector:
    if not isinstance(data, dict) or "components" not in data:
        raise ValidationError("module vector needs a 'components' list")
    return ModuleVector(tuple(element_from_json(c) for c in data["components"]))


def op_to_json(op: AdjointableOp) -> dict:
    return {
        "algebra_dim": op.algebra_dim,
        "source_len": op.source_len,
        "target_len": op.target_len,
        "blocks": [[element_to_json(b) for b in row] for row in op.blocks],
    }


def op_from_json(data) -> AdjointableOp:
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValidationError("operator needs a 'blocks' grid")
    op = AdjointableOp(
        tuple(
            tuple(element_from_json(b) for b in row) for row in data["blocks"]
        )
    )
    for key, actual in (
        ("algebra_dim", op.algebra_dim),
        ("source_len", op.source_len),
        ("target_len", op.target_len),
    ):
        if key in data and data[key] != actual:
            raise ValidationError(f"operator {key} disagrees with its blocks")
    return op


def family_to_json(family: GFrameFamily) -> dict:
    return {
        "algebra_dim": family.algebra_dim,
        "source_len": family.source_len,
        "members": [op_to_json(m) for m in family.members],
    }


def family_from_json(data) -> GFrameFamily:
    if not isinstance(data, dict) or "members" not in data:
        raise ValidationError("family needs a 'members' list")
    return GFrameFamily(tuple(op_from_json(m) for m in data["members"]))


def weights_to_json(w: ScalarWeights) -> dict:
    return {
        "thetas": [element_to_json(t) for t in w.thetas],
        "deltas": [element_to_json(t) for t in w.deltas],
        "band": [w.band_lower, w.band_upper],
    }


def weights_from_json(data) -> ScalarWeights:
    try:
        band = data["band"]
        return ScalarWeights(
            tuple(element_from_json(t) for t in data["thetas"]),
            tuple(element_from_json(t) for t in data["deltas"]),
            float(band[0]),
            float(band[1]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ValidationError(f"malformed weights: {exc}") from exc


def bounds_to_json(b: FrameBounds) -> dict:
    return {
        "lower": float(b.lower),
        "upper": float(b.upper),
        "tight": bool(b.tight),
        "parseval": bool(b.parseval),
    }


def _check_to_json(c: CheckItem) -> dict:
    return {
        "name": c.name,
        "passed": bool(c.passed),
        "measured": None if c.measured is None else float(c.measured),
        "limit": None if c.limit is None else float(c.limit),
    }


def report_to_json(report) -> dict:
    """Serialize either report flavor to a plain JSON-ready dict."""
    if isinstance(report, TheoremReport):
        return {
            "theorem": report.theorem_id,
            "verdict": report.verdict.value,
            "hypothesis_checks": [
                _check_to_json(c) for c in report.hypothesis_checks
            ],
            "predicted_lower": report.predicted_lower,
            "predicted_upper": report.predicted_upper,
            "achieved": bounds_to_json(report.achieved),
            "result_kind": report.result_kind,
            "details": {k: report.details[k] for k in sorted(report.details)},
        }
    if isinstance(report, PerturbationReport):
        return {
            "theorem": report.theorem_id,
            "verdict": report.verdict.value,
            "alphas": None if report.alphas is None else list(report.alphas),
            "measured_lhs": report.measured_lhs,
            "allowed_rhs": report.allowed_rhs,
            "claimed_bounds": None
            if report.claimed_bounds is None
            else list(report.claimed_bounds),
            "achieved": bounds_to_json(report.achieved),
            "bound_discrepancy_note": report.bound_discrepancy_note,
            "details": {k: report.details[k] for k in sorted(report.details)},
        }
    raise TypeError(f"cannot serialize {type(report).__name__}")
