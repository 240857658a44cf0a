"""Checkers for sums and compositions of g-frame families.

Each checker constructs the combined family, measures the stated
hypotheses numerically, compares achieved optimal bounds against the
bounds the statement predicts, and reports a verdict:

* ``HypothesisFails``   - a hypothesis did not hold; nothing asserted.
* ``ConclusionHolds``   - hypotheses held and the combined family behaves
  as claimed (including predicted-bound conservativeness).
* ``ConclusionFails``   - hypotheses held but the claim is violated.

Checkers never raise on hypothesis failure, only on malformed inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .algebra import (
    AlgebraElement,
    DEFAULT_TOL,
    Tolerance,
    hermitian_part,
    is_positive,
    spectral_norm,
)
from ._rand import make_rng, sample_flat_vectors
from .errors import BadRange, DimensionMismatch, NotTight
from .frames import (
    FrameBounds,
    GFrameFamily,
    classify,
    cross_operator,
    frame_operator,
    is_frame_bounds,
    optimal_bounds,
    synthesis_op,
)
from .hilbert import (
    AdjointableOp,
    adjoint_op,
    block_diag_op,
    compose,
    identity_op,
    is_isometry,
    is_surjective,
    op_norm,
)


class TheoremId(str, Enum):
    PERTURB_LAMBDA = "PERTURB_LAMBDA"
    T3_EQUIV = "T3_EQUIV"
    T3_COROLLARY = "T3_COROLLARY"
    T7_SCALAR = "T7_SCALAR"
    T11_POSITIVE = "T11_POSITIVE"
    TIGHT_SUM = "TIGHT_SUM"
    ISOMETRY_SUM = "ISOMETRY_SUM"
    LAMBDA_LOWER = "LAMBDA_LOWER"
    TIGHT_MN = "TIGHT_MN"


class Verdict(str, Enum):
    CONCLUSION_HOLDS = "ConclusionHolds"
    HYPOTHESIS_FAILS = "HypothesisFails"
    CONCLUSION_FAILS = "ConclusionFails"


# Closed-form frame-operator expressions must match the directly
# assembled operator to this relative accuracy.
FORMULA_AGREEMENT_REL = 1e-10


@dataclass(frozen=True)
class CheckItem:
    """One named hypothesis check with its measured value."""

    name: str
    passed: bool
    measured: float | None = None
    limit: float | None = None


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    hypothesis_checks: tuple[CheckItem, ...]
    predicted_lower: float | None
    predicted_upper: float | None
    achieved: FrameBounds
    verdict: Verdict
    result_kind: str
    details: dict[str, float] = field(default_factory=dict)

    @property
    def hypotheses_pass(self) -> bool:
        return all(c.passed for c in self.hypothesis_checks)


@dataclass(frozen=True)
class ScalarWeights:
    """Two sequences of algebra coefficients with a strict spectral band.

    Every theta and delta must satisfy band_lower < eig(w* w) < band_upper
    elementwise on the spectrum; violations raise BadRange at construction.
    """

    thetas: tuple[AlgebraElement, ...]
    deltas: tuple[AlgebraElement, ...]
    band_lower: float
    band_upper: float

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(self.thetas))
        object.__setattr__(self, "deltas", tuple(self.deltas))
        if not (0.0 < self.band_lower < self.band_upper):
            raise BadRange("weight band must satisfy 0 < lower < upper")
        if len(self.thetas) != len(self.deltas) or not self.thetas:
            raise BadRange("weight sequences must be nonempty and equally long")
        for seq_name, seq in (("theta", self.thetas), ("delta", self.deltas)):
            for w in seq:
                eigs = np.linalg.eigvalsh(w.entries.conj().T @ w.entries)
                if eigs[0] <= self.band_lower or eigs[-1] >= self.band_upper:
                    raise BadRange(
                        f"{seq_name} weight spectrum [{eigs[0]:.6g}, {eigs[-1]:.6g}]"
                        f" leaves the open band ({self.band_lower}, {self.band_upper})"
                    )

    @property
    def count(self) -> int:
        return len(self.thetas)


def _verdict(checks: tuple[CheckItem, ...], conclusion_ok: bool) -> Verdict:
    if not all(c.passed for c in checks):
        return Verdict.HYPOTHESIS_FAILS
    return Verdict.CONCLUSION_HOLDS if conclusion_ok else Verdict.CONCLUSION_FAILS


def _bound_slack(achieved: FrameBounds, tol: Tolerance) -> float:
    return tol.margin(max(1.0, achieved.upper))


def _conclusion_with_bounds(
    achieved: FrameBounds,
    predicted_lower: float | None,
    predicted_upper: float | None,
    tol: Tolerance,
) -> bool:
    ok = is_frame_bounds(achieved, tol)
    slack = _bound_slack(achieved, tol)
    if predicted_lower is not None:
        ok = ok and achieved.lower >= predicted_lower - slack
    if predicted_upper is not None:
        ok = ok and achieved.upper <= predicted_upper + slack
    return ok


def _require_endomorphism(op: AdjointableOp, n: int, d: int, name: str) -> None:
    if op.algebra_dim != n or op.source_len != d or op.target_len != d:
        raise DimensionMismatch(f"{name} must act on the source module itself")


def _require_pair(left: GFrameFamily, right: GFrameFamily) -> None:
    if (
        left.algebra_dim != right.algebra_dim
        or left.source_len != right.source_len
        or left.size != right.size
        or left.member_dims != right.member_dims
    ):
        raise DimensionMismatch("families are not index-compatible")


def _min_eig(flat: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(hermitian_part(flat))[0])


def _positivity_check(name: str, op: AdjointableOp, tol: Tolerance) -> CheckItem:
    flat = op.flat
    margin = tol.margin(spectral_norm(flat))
    return CheckItem(
        name=name,
        passed=is_positive(AlgebraElement(flat), tol),
        measured=_min_eig(flat),
        limit=-margin,
    )


def _frame_check(name: str, bounds: FrameBounds, tol: Tolerance) -> CheckItem:
    return CheckItem(
        name=name,
        passed=is_frame_bounds(bounds, tol),
        measured=bounds.lower,
        limit=tol.margin(bounds.upper),
    )


def _s_formula_residual(formula: AdjointableOp, family: GFrameFamily) -> float:
    direct = frame_operator(family).flat
    denom = max(spectral_norm(direct), 1.0)
    return spectral_norm(formula.flat - direct) / denom


def weighted_family(family: GFrameFamily, coeffs) -> GFrameFamily:
    """Family whose members are the originals composed with the lifted
    algebra coefficients on their target modules."""
    coeffs = tuple(coeffs)
    if len(coeffs) != family.size:
        raise DimensionMismatch("one coefficient per family member required")
    members = tuple(
        compose(block_diag_op(w, m.target_len), m)
        for w, m in zip(coeffs, family.members)
    )
    return GFrameFamily(members)


def _weight_band_check(weights: ScalarWeights) -> CheckItem:
    worst_low = math.inf
    worst_high = -math.inf
    for w in weights.thetas + weights.deltas:
        eigs = np.linalg.eigvalsh(w.entries.conj().T @ w.entries)
        worst_low = min(worst_low, float(eigs[0]))
        worst_high = max(worst_high, float(eigs[-1]))
    passed = weights.band_lower < worst_low and worst_high < weights.band_upper
    return CheckItem("weights_in_band", passed, worst_low, weights.band_lower)


def perturb_lambda(
    family: GFrameFamily, lam: AdjointableOp, tol: Tolerance = DEFAULT_TOL
) -> tuple[GFrameFamily, TheoremReport]:
    """Members composed with (I + lam); a frame again whenever the
    conjugated frame operator dominates the original."""
    n, d = family.algebra_dim, family.source_len
    _require_endomorphism(lam, n, d, "lam")
    shifted = identity_op(n, d) + lam
    new_family = GFrameFamily(tuple(compose(m, shifted) for m in family.members))

    base = optimal_bounds(family)
    s_op = frame_operator(family)
    conjugated = adjoint_op(shifted) @ s_op @ shifted
    checks = (
        _frame_check("input_is_frame", base, tol),
        _positivity_check("conjugation_dominates", conjugated - s_op, tol),
    )
    predicted_lower = base.lower
    predicted_upper = 2.0 * base.upper * (1.0 + op_norm(lam) ** 2)
    achieved = optimal_bounds(new_family)
    conclusion = _conclusion_with_bounds(achieved, predicted_lower, predicted_upper, tol)
    report = TheoremReport(
        theorem_id=TheoremId.PERTURB_LAMBDA.value,
        hypothesis_checks=checks,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={"s_formula_residual": _s_formula_residual(conjugated, new_family)},
    )
    return new_family, report


def op_weighted_sum(
    family: GFrameFamily,
    other: GFrameFamily,
    m_op: AdjointableOp,
    n_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[GFrameFamily, TheoremReport]:
    """Equivalence checker for members P.M + Q.N.

    The three conditions (combined family is a frame; the combined
    synthesis operator is surjective; the closed-form frame operator is
    strictly positive) must agree pairwise; their agreement is the
    conclusion.
    """
    _require_pair(family, other)
    n, d = family.algebra_dim, family.source_len
    _require_endomorphism(m_op, n, d, "m_op")
    _require_endomorphism(n_op, n, d, "n_op")

    members = tuple(
        compose(p, m_op) + compose(q, n_op)
        for p, q in zip(family.members, other.members)
    )
    new_family = GFrameFamily(members)

    t_left = synthesis_op(family)
    t_right = synthesis_op(other)
    combined_synthesis = adjoint_op(m_op) @ t_left + adjoint_op(n_op) @ t_right

    s_left = frame_operator(family)
    s_right = frame_operator(other)
    cross = cross_operator(family, other)
    mh, nh = adjoint_op(m_op), adjoint_op(n_op)
    s_formula = (
        mh @ s_left @ m_op
        + mh @ cross @ n_op
        + nh @ adjoint_op(cross) @ m_op
        + nh @ s_right @ n_op
    )

    achieved = optimal_bounds(new_family)
    cond_frame = is_frame_bounds(achieved, tol)
    cond_surjective = is_surjective(combined_synthesis, tol)
    eigs = np.linalg.eigvalsh(hermitian_part(s_formula.flat))
    cond_positive = eigs[0] > tol.margin(max(eigs[-1], 0.0))
    residual = _s_formula_residual(s_formula, new_family)

    agree = cond_frame == cond_surjective == cond_positive
    predicted_upper = 2.0 * (
        optimal_bounds(family).upper * op_norm(m_op) ** 2
        + optimal_bounds(other).upper * op_norm(n_op) ** 2
    )
    slack = _bound_slack(achieved, tol)
    conclusion = agree and residual <= FORMULA_AGREEMENT_REL and (
        achieved.upper <= predicted_upper + slack
    )
    report = TheoremReport(
        theorem_id=TheoremId.T3_EQUIV.value,
        hypothesis_checks=(),
        predicted_lower=None,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict((), conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={
            "condition_frame": float(cond_frame),
            "condition_surjective": float(cond_surjective),
            "condition_positive": float(cond_positive),
            "s_formula_residual": residual,
        },
    )
    return new_family, report


def t3_corollary_check(
    family: GFrameFamily, other: GFrameFamily, tol: Tolerance = DEFAULT_TOL
) -> TheoremReport:
    """Plain member sums form a frame when the mixed operator is positive.

    The printed statement admits degenerate inputs (both families merely
    Bessel), so an auxiliary hypothesis requires at least one input to
    classify as a frame before the conclusion is asserted.
    """
    _require_pair(family, other)
    cross = cross_operator(family, other)
    bounds_left = optimal_bounds(family)
    bounds_right = optimal_bounds(other)
    either_frame = is_frame_bounds(bounds_left, tol) or is_frame_bounds(
        bounds_right, tol
    )
    checks = (
        _positivity_check("mixed_operator_positive", cross, tol),
        CheckItem(
            "aux_either_input_frame",
            either_frame,
            max(bounds_left.lower, bounds_right.lower),
            None,
        ),
    )

    members = tuple(p + q for p, q in zip(family.members, other.members))
    new_family = GFrameFamily(members)
    s_formula = (
        frame_operator(family)
        + cross
        + adjoint_op(cross)
        + frame_operator(other)
    )
    achieved = optimal_bounds(new_family)
    predicted_lower = bounds_left.lower + bounds_right.lower
    predicted_upper = 2.0 * (bounds_left.upper + bounds_right.upper)
    conclusion = _conclusion_with_bounds(achieved, predicted_lower, predicted_upper, tol)
    return TheoremReport(
        theorem_id=TheoremId.T3_COROLLARY.value,
        hypothesis_checks=checks,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={"s_formula_residual": _s_formula_residual(s_formula, new_family)},
    )


def _weighted_sum_family(
    family: GFrameFamily, other: GFrameFamily, weights: ScalarWeights
) -> GFrameFamily:
    if weights.count != family.size:
        raise DimensionMismatch("one weight pair per member index required")
    left = weighted_family(family, weights.thetas)
    right = weighted_family(other, weights.deltas)
    members = tuple(p + q for p, q in zip(left.members, right.members))
    return GFrameFamily(members)


def scalar_weighted_sum(
    family: GFrameFamily,
    other: GFrameFamily,
    weights: ScalarWeights,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[GFrameFamily, TheoremReport]:
    """Coefficient-weighted member sums.

    Hypotheses: the first family is a frame with lower bound D, the
    second is Bessel with bound B_delta, the weights stay in their band,
    and band_upper * B_delta < band_lower * D.  The predicted lower
    bound is (sqrt(band_lower * D) - sqrt(band_upper * B_delta))^2.
    """
    _require_pair(family, other)
    new_family = _weighted_sum_family(family, other, weights)

    bounds_left = optimal_bounds(family)
    bounds_right = optimal_bounds(other)
    d_low, d_high = bounds_left.lower, bounds_left.upper
    bessel = bounds_right.upper
    lhs = weights.band_upper * bessel
    rhs = weights.band_lower * d_low
    checks = (
        _frame_check("input_is_frame", bounds_left, tol),
        _weight_band_check(weights),
        CheckItem("weighted_bessel_below_weighted_frame", lhs < rhs, lhs, rhs),
    )
    predicted_lower = (
        math.sqrt(weights.band_lower * d_low) - math.sqrt(weights.band_upper * bessel)
    ) ** 2
    predicted_upper = 2.0 * weights.band_upper * (bessel + d_high)
    achieved = optimal_bounds(new_family)
    conclusion = _conclusion_with_bounds(achieved, predicted_lower, predicted_upper, tol)
    report = TheoremReport(
        theorem_id=TheoremId.T7_SCALAR.value,
        hypothesis_checks=checks,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={"bessel_bound": bessel, "frame_lower": d_low},
    )
    return new_family, report


def t11_check(
    family: GFrameFamily,
    other: GFrameFamily,
    weights: ScalarWeights,
    tol: Tolerance = DEFAULT_TOL,
) -> TheoremReport:
    """Weighted sum of two frames with a positive mixed operator.

    Predicted lower bound: band_lower * (alpha + beta) where alpha and
    beta are the input lower bounds.
    """
    _require_pair(family, other)
    bounds_left = optimal_bounds(family)
    bounds_right = optimal_bounds(other)
    cross = cross_operator(family, other)
    checks = (
        _frame_check("first_is_frame", bounds_left, tol),
        _frame_check("second_is_frame", bounds_right, tol),
        _weight_band_check(weights),
        _positivity_check("mixed_operator_positive", cross, tol),
    )
    new_family = _weighted_sum_family(family, other, weights)
    predicted_lower = weights.band_lower * (bounds_left.lower + bounds_right.lower)
    predicted_upper = 2.0 * weights.band_upper * (
        bounds_left.upper + bounds_right.upper
    )
    achieved = optimal_bounds(new_family)
    conclusion = _conclusion_with_bounds(achieved, predicted_lower, predicted_upper, tol)
    return TheoremReport(
        theorem_id=TheoremId.T11_POSITIVE.value,
        hypothesis_checks=checks,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={},
    )


def _tight_constant(bounds: FrameBounds) -> float:
    return (bounds.lower + bounds.upper) / 2.0


def _require_tight_frame(
    family: GFrameFamily, tol: Tolerance, label: str
) -> FrameBounds:
    bounds = optimal_bounds(family)
    if not bounds.tight or not is_frame_bounds(bounds, tol):
        raise NotTight(
            f"{label} must be a tight frame, has bounds"
            f" ({bounds.lower:.6g}, {bounds.upper:.6g})"
        )
    return bounds


def tight_sum_check(
    family: GFrameFamily, other: GFrameFamily, tol: Tolerance = DEFAULT_TOL
) -> TheoremReport:
    """Member sums of two tight frames with vanishing mixed operator are
    tight with constant the sum of the two tight constants."""
    _require_pair(family, other)
    bounds_left = _require_tight_frame(family, tol, "first family")
    bounds_right = _require_tight_frame(other, tol, "second family")
    alpha1 = _tight_constant(bounds_left)
    alpha2 = _tight_constant(bounds_right)

    cross_norm = op_norm(cross_operator(family, other))
    cross_scale = max(1.0, bounds_left.upper, bounds_right.upper)
    checks = (
        CheckItem(
            "mixed_operator_vanishes",
            cross_norm <= tol.margin(cross_scale),
            cross_norm,
            tol.margin(cross_scale),
        ),
    )

    members = tuple(p + q for p, q in zip(family.members, other.members))
    new_family = GFrameFamily(members)
    achieved = optimal_bounds(new_family)
    target = alpha1 + alpha2
    constant_margin = 1e-8 * max(1.0, target)
    conclusion = (
        is_frame_bounds(achieved, tol)
        and achieved.tight
        and abs(_tight_constant(achieved) - target) <= constant_margin
    )
    return TheoremReport(
        theorem_id=TheoremId.TIGHT_SUM.value,
        hypothesis_checks=checks,
        predicted_lower=target,
        predicted_upper=target,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={
            "achieved_tight_constant": _tight_constant(achieved),
            "target_tight_constant": target,
        },
    )


def isometry_sum_check(
    family: GFrameFamily,
    other: GFrameFamily,
    lam: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> TheoremReport:
    """Member sums composed with an isometry keep the first family's
    lower bound when the mixed operator is positive."""
    _require_pair(family, other)
    n, d = family.algebra_dim, family.source_len
    _require_endomorphism(lam, n, d, "lam")
    bounds_left = optimal_bounds(family)
    bounds_right = optimal_bounds(other)
    cross = cross_operator(family, other)
    gram_dev = spectral_norm(compose(adjoint_op(lam), lam).flat - np.eye(n * d))
    checks = (
        _frame_check("first_is_frame", bounds_left, tol),
        _positivity_check("mixed_operator_positive", cross, tol),
        CheckItem("lam_is_isometry", is_isometry(lam, tol), gram_dev, tol.margin(1.0)),
    )
    members = tuple(
        compose(p + q, lam) for p, q in zip(family.members, other.members)
    )
    new_family = GFrameFamily(members)
    predicted_lower = bounds_left.lower
    predicted_upper = 2.0 * (bounds_left.upper + bounds_right.upper)
    achieved = optimal_bounds(new_family)
    conclusion = _conclusion_with_bounds(achieved, predicted_lower, predicted_upper, tol)
    return TheoremReport(
        theorem_id=TheoremId.ISOMETRY_SUM.value,
        hypothesis_checks=checks,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={},
    )


def lambda_lower_check(
    family: GFrameFamily,
    other: GFrameFamily,
    m_op: AdjointableOp,
    n_op: AdjointableOp,
    lam_bound: float,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 500,
    seed: int = 0,
) -> TheoremReport:
    """Members P.M + Q.N with N bounded below by lam_bound.

    The derivation quietly uses ||Mx|| >= ||Nx||, which is not part of
    the stated hypotheses; it is verified here as an explicit auxiliary
    check instead of being assumed.
    """
    _require_pair(family, other)
    n, d = family.algebra_dim, family.source_len
    _require_endomorphism(m_op, n, d, "m_op")
    _require_endomorphism(n_op, n, d, "n_op")
    if lam_bound <= 0.0:
        raise BadRange("lam_bound must be positive")

    bounds_left = optimal_bounds(family)
    bounds_right = optimal_bounds(other)
    d_low, d_high = bounds_left.lower, bounds_left.upper
    bessel = bounds_right.upper

    n_svals = np.linalg.svd(n_op.flat, compute_uv=False)
    sigma_min = float(n_svals[-1])
    rng = make_rng(seed)
    xs = sample_flat_vectors(rng, samples, n, d)
    norms_x = np.linalg.norm(xs, ord=2, axis=(1, 2))
    norms_nx = np.linalg.norm(xs @ n_op.flat, ord=2, axis=(1, 2))
    norms_mx = np.linalg.norm(xs @ m_op.flat, ord=2, axis=(1, 2))
    sampled_gap = float(np.min(norms_nx - lam_bound * norms_x))
    dominance_flat = m_op.flat @ m_op.flat.conj().T - n_op.flat @ n_op.flat.conj().T
    dominance_sampled = float(np.min(norms_mx - norms_nx))
    dom_margin = tol.margin(max(op_norm(m_op), op_norm(n_op)) ** 2)

    checks = (
        _frame_check("input_is_frame", bounds_left, tol),
        CheckItem(
            "n_bounded_below",
            sigma_min > lam_bound and sampled_gap > -tol.margin(lam_bound),
            sigma_min,
            lam_bound,
        ),
        CheckItem("bessel_below_frame_lower", bessel < d_low, bessel, d_low),
        CheckItem(
            "aux_m_dominates_n",
            _min_eig(dominance_flat) >= -dom_margin
            and dominance_sampled >= -math.sqrt(dom_margin),
            _min_eig(dominance_flat),
            -dom_margin,
        ),
    )
    members = tuple(
        compose(p, m_op) + compose(q, n_op)
        for p, q in zip(family.members, other.members)
    )
    new_family = GFrameFamily(members)
    predicted_lower = lam_bound**2 * (math.sqrt(d_low) - math.sqrt(bessel)) ** 2
    predicted_upper = 2.0 * (
        d_high * op_norm(m_op) ** 2 + bessel * op_norm(n_op) ** 2
    )
    achieved = optimal_bounds(new_family)
    conclusion = _conclusion_with_bounds(achieved, predicted_lower, predicted_upper, tol)
    return TheoremReport(
        theorem_id=TheoremId.LAMBDA_LOWER.value,
        hypothesis_checks=checks,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={"n_sigma_min": sigma_min, "sampled_lower_gap": sampled_gap},
    )


def tight_mn_check(
    family: GFrameFamily,
    other: GFrameFamily,
    m_op: AdjointableOp,
    n_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> TheoremReport:
    """Both directions of the tight characterization for members P.M + Q.N.

    With two tight frames and vanishing mixed operator, the combined
    family is tight with constant alpha exactly when
    alpha1 M*M + alpha2 N*N equals alpha times the identity; alpha is
    extracted as the trace mean and confirmed by the residual.
    """
    _require_pair(family, other)
    n, d = family.algebra_dim, family.source_len
    _require_endomorphism(m_op, n, d, "m_op")
    _require_endomorphism(n_op, n, d, "n_op")
    bounds_left = _require_tight_frame(family, tol, "first family")
    bounds_right = _require_tight_frame(other, tol, "second family")
    alpha1 = _tight_constant(bounds_left)
    alpha2 = _tight_constant(bounds_right)

    cross_norm = op_norm(cross_operator(family, other))
    cross_scale = max(1.0, bounds_left.upper, bounds_right.upper)
    checks = (
        CheckItem(
            "mixed_operator_vanishes",
            cross_norm <= tol.margin(cross_scale),
            cross_norm,
            tol.margin(cross_scale),
        ),
    )

    combo = alpha1 * (adjoint_op(m_op) @ m_op) + alpha2 * (adjoint_op(n_op) @ n_op)
    size = n * d
    alpha = float(np.trace(combo.flat).real) / size
    residual = spectral_norm(combo.flat - alpha * np.eye(size))
    combo_margin = tol.margin(max(1.0, spectral_norm(combo.flat)))
    condition_holds = residual <= combo_margin and alpha > combo_margin

    members = tuple(
        compose(p, m_op) + compose(q, n_op)
        for p, q in zip(family.members, other.members)
    )
    new_family = GFrameFamily(members)
    achieved = optimal_bounds(new_family)
    measured_constant = _tight_constant(achieved)
    measured_tight = achieved.tight and is_frame_bounds(achieved, tol)

    constant_margin = 1e-8 * max(1.0, alpha)
    if condition_holds:
        conclusion = measured_tight and abs(measured_constant - alpha) <= constant_margin
    else:
        conclusion = not measured_tight
    return TheoremReport(
        theorem_id=TheoremId.TIGHT_MN.value,
        hypothesis_checks=checks,
        predicted_lower=alpha if condition_holds else None,
        predicted_upper=alpha if condition_holds else None,
        achieved=achieved,
        verdict=_verdict(checks, conclusion),
        result_kind=classify(new_family, tol).kind.value,
        details={
            "identity_multiple": alpha,
            "identity_residual": residual,
            "achieved_tight_constant": measured_constant,
            "condition_holds": float(condition_holds),
            "measured_tight": float(measured_tight),
        },
    )
