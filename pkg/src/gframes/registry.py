"""Theorem registry and instance construction.

Maps theorem identifiers to builders that assemble a checkable instance
(either generated from a seed or deserialized inline) and run the
corresponding checker.  The same builders back both the scenario runner
and the acceptance suites, so "hypothesis-satisfying generator" means
one thing throughout the repository.
"""

from __future__ import annotations

import math

import numpy as np

from . import serialize
from ._rand import complex_gaussian, haar_unitary, make_rng, sub_seed
from .algebra import DEFAULT_TOL, Tolerance
from .errors import ValidationError
from .frames import GFrameFamily, classify, frame_operator, scale_family
from .generators import (
    FamilyTarget,
    GenSpec,
    gen_family,
    gen_isometry,
    gen_orthogonal_pair,
    gen_weights,
)
from .hilbert import AdjointableOp, identity_op, op_from_flat, zero_op
from .sums import (
    ScalarWeights,
    TheoremReport,
    Verdict,
    isometry_sum_check,
    lambda_lower_check,
    op_weighted_sum,
    perturb_lambda,
    scalar_weighted_sum,
    t3_corollary_check,
    t11_check,
    tight_mn_check,
    tight_sum_check,
)
from .stability import (
    difference_check,
    final_corollary_check,
    operators_from_family,
    prop_mixed_check,
    t12_check,
)


def parse_target(data) -> FamilyTarget:
    """Accepts "random" | "parseval" | {"tight": nu} | {"bounds": [lo, hi]}."""
    if isinstance(data, str):
        if data in ("random", "parseval"):
            return FamilyTarget(data)
        raise ValidationError(f"unknown family target {data!r}")
    if isinstance(data, dict):
        if "tight" in data:
            return FamilyTarget.tight(float(data["tight"]))
        if "bounds" in data:
            lo, hi = data["bounds"]
            return FamilyTarget.bounds(float(lo), float(hi))
    raise ValidationError(f"unparseable family target {data!r}")


def _sizes(
    cfg: dict, rng, *, even_dims: bool = False, min_flat: int = 1
) -> tuple[int, int, tuple[int, ...]]:
    """Instance sizes: explicit from the config, otherwise drawn at desk scale.

    ``min_flat`` forces the drawn flattening dimension n*d upward, for
    builders whose targets need room for two distinct bounds.
    """
    n = int(cfg.get("algebra_dim", 0)) or int(rng.integers(1, 4))
    d = int(cfg.get("module_len", 0)) or int(rng.integers(1, 4))
    if "module_len" not in cfg:
        while n * d < min_flat:
            d += 1
    if "member_dims" in cfg:
        dims = tuple(int(v) for v in cfg["member_dims"])
    else:
        count = int(rng.integers(2, 6))
        if even_dims:
            dims = tuple(int(rng.choice((2, 4))) for _ in range(count))
            while sum(dims) < 2 * d:
                dims = dims + (2,)
        else:
            dims = tuple(int(rng.integers(1, d + 3)) for _ in range(count))
            while sum(dims) < d:
                dims = dims + (1,)
    return n, d, dims


def _evened(dims: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Even member dims whose column halves can span a length-d module."""
    even = tuple(dz + (dz % 2) for dz in dims)
    while sum(even) < 2 * d:
        even = even + (2,)
    return even


def _family(cfg, key, rng, n, d, dims, default_target) -> GFrameFamily:
    inline = cfg.get(key)
    if inline is not None:
        return serialize.family_from_json(inline)
    target = parse_target(cfg.get(f"{key}_target", default_target))
    return gen_family(GenSpec(sub_seed(rng), n, d, dims, target))


def _random_endo(rng, n, d, scale=1.0) -> AdjointableOp:
    return op_from_flat(scale * complex_gaussian(rng, n * d, n * d), n)


def _rescale_to_upper(family: GFrameFamily, target_upper: float) -> GFrameFamily:
    """Scale a family so its optimal upper bound equals target_upper."""
    current = float(
        np.linalg.eigvalsh(frame_operator(family).flat).max().real
    )
    if current <= 0.0:
        return family
    return scale_family(family, math.sqrt(target_upper / current))


def _classify_report(family: GFrameFamily, tol: Tolerance) -> TheoremReport:
    cls = classify(family, tol)
    return TheoremReport(
        theorem_id="CLASSIFY",
        hypothesis_checks=(),
        predicted_lower=None,
        predicted_upper=None,
        achieved=cls.bounds,
        verdict=Verdict.CONCLUSION_HOLDS,
        result_kind=cls.kind.value,
        details={},
    )


# Builders.  Each receives the instance config, a seed, and a tolerance,
# assembles inputs (inline values win over generation), and runs the
# checker.  Generated instances satisfy the theorem hypotheses by
# construction so that seeded suites exercise the asserted branch.


def _build_classify(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng)
    family = _family(cfg, "family", rng, n, d, dims, "parseval")
    return _classify_report(family, tol)


def _build_perturb_lambda(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    kind = cfg.get("lambda_kind", "expansive" if seed % 2 == 0 else "scalar")
    if kind == "expansive":
        family = _family(cfg, "family", rng, n, d, dims, "parseval")
        stretch = rng.uniform(1.05, 1.8, n * d)
        expansive = (haar_unitary(rng, n * d) * stretch) @ haar_unitary(rng, n * d)
        lam = op_from_flat(expansive - np.eye(n * d), n)
    elif kind == "scalar":
        family = _family(cfg, "family", rng, n, d, dims, {"bounds": [0.5, 2.0]})
        lam = float(rng.uniform(0.0, 1.0)) * identity_op(n, d)
    elif kind == "zero":
        family = _family(cfg, "family", rng, n, d, dims, {"bounds": [0.5, 2.0]})
        lam = zero_op(n, d, d)
    else:
        raise ValidationError(f"unknown lambda_kind {kind!r}")
    if cfg.get("lambda") is not None:
        lam = serialize.op_from_json(cfg["lambda"])
    _, report = perturb_lambda(family, lam, tol)
    return report


def _build_t3_equiv(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng)
    family = _family(cfg, "family", rng, n, d, dims, "random")
    other = _family(cfg, "second_family", rng, n, d, dims, "random")
    if cfg.get("m") is not None:
        m_op = serialize.op_from_json(cfg["m"])
    elif seed % 7 == 0:
        m_op = identity_op(n, d)
    else:
        m_op = _random_endo(rng, n, d)
    if cfg.get("n") is not None:
        n_op = serialize.op_from_json(cfg["n"])
    elif seed % 5 == 0:
        n_op = zero_op(n, d, d)
    else:
        n_op = _random_endo(rng, n, d)
    _, report = op_weighted_sum(family, other, m_op, n_op, tol)
    return report


def _scaled_or_orthogonal_pair(cfg, rng, seed, n, d, dims):
    """A pair with positive mixed operator: a scaled copy, or supported
    on complementary columns (exactly zero mixed operator)."""
    mode = cfg.get("mode", "scaled" if seed % 2 == 0 else "orthogonal")
    if mode == "orthogonal":
        even = _evened(dims, d)
        pair = gen_orthogonal_pair(
            GenSpec(sub_seed(rng), n, d, even, FamilyTarget.parseval())
        )
        first = scale_family(pair[0], math.sqrt(float(rng.uniform(0.8, 2.0))))
        second = scale_family(pair[1], math.sqrt(float(rng.uniform(0.2, 1.5))))
        return first, second
    family = gen_family(
        GenSpec(sub_seed(rng), n, d, dims, FamilyTarget.bounds(0.8, 2.0))
    )
    other = scale_family(family, math.sqrt(float(rng.uniform(0.3, 1.3))))
    return family, other


def _build_t3_corollary(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
    else:
        family, other = _scaled_or_orthogonal_pair(cfg, rng, seed, n, d, dims)
    return t3_corollary_check(family, other, tol)


def _build_t7_scalar(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    band = cfg.get("weight_band", [0.8, 1.25])
    family = _family(cfg, "family", rng, n, d, dims, {"bounds": [1.0, 2.5]})
    if cfg.get("weights") is not None:
        weights = serialize.weights_from_json(cfg["weights"])
    else:
        weights = gen_weights(
            sub_seed(rng), n, family.size, float(band[0]), float(band[1])
        )
    if cfg.get("second_family") is not None:
        other = serialize.family_from_json(cfg["second_family"])
    else:
        raw = gen_family(GenSpec(sub_seed(rng), n, d, family.member_dims))
        # Hypothesis headroom: weighted Bessel term at 40% of the
        # weighted frame term.
        ratio = float(cfg.get("bessel_ratio", 0.4))
        lower_f = float(
            np.linalg.eigvalsh(frame_operator(family).flat).min().real
        )
        target = ratio * weights.band_lower * lower_f / weights.band_upper
        other = _rescale_to_upper(raw, target)
    _, report = scalar_weighted_sum(family, other, weights, tol)
    return report


def _build_t11(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    band = cfg.get("weight_band", [0.7, 1.4])
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
        weights = serialize.weights_from_json(cfg["weights"])
        return t11_check(family, other, weights, tol)
    mode = cfg.get("mode", "orthogonal" if seed % 2 == 0 else "same")
    if mode == "orthogonal":
        even = _evened(dims, d)
        family, other = gen_orthogonal_pair(
            GenSpec(sub_seed(rng), n, d, even, FamilyTarget.parseval())
        )
        family = scale_family(family, math.sqrt(float(rng.uniform(0.8, 2.0))))
        other = scale_family(other, math.sqrt(float(rng.uniform(0.8, 2.0))))
        weights = gen_weights(
            sub_seed(rng), n, family.size, float(band[0]), float(band[1])
        )
    else:
        family = gen_family(
            GenSpec(sub_seed(rng), n, d, dims, FamilyTarget.bounds(0.8, 2.0))
        )
        other = scale_family(family, math.sqrt(float(rng.uniform(0.3, 1.2))))
        drawn = gen_weights(
            sub_seed(rng), n, family.size, float(band[0]), float(band[1])
        )
        # A shared coefficient sequence keeps the weighted mixed term
        # positive whenever the unweighted one is.
        weights = ScalarWeights(
            drawn.thetas, drawn.thetas, drawn.band_lower, drawn.band_upper
        )
    return t11_check(family, other, weights, tol)


def _tight_pair(cfg, rng, n, d, dims, alpha1, alpha2):
    even = _evened(dims, d)
    pair = gen_orthogonal_pair(
        GenSpec(sub_seed(rng), n, d, even, FamilyTarget.parseval())
    )
    return (
        scale_family(pair[0], math.sqrt(alpha1)),
        scale_family(pair[1], math.sqrt(alpha2)),
    )


def _build_tight_sum(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, even_dims=True)
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
    else:
        alpha1 = float(cfg.get("alpha1", 1.0))
        alpha2 = float(cfg.get("alpha2", 1.0))
        family, other = _tight_pair(cfg, rng, n, d, dims, alpha1, alpha2)
    return tight_sum_check(family, other, tol)


def _build_isometry_sum(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
    else:
        family, other = _scaled_or_orthogonal_pair(cfg, rng, seed, n, d, dims)
    if cfg.get("lambda") is not None:
        lam = serialize.op_from_json(cfg["lambda"])
    else:
        lam = gen_isometry(sub_seed(rng), n, d)
    return isometry_sum_check(family, other, lam, tol)


def _build_lambda_lower(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    family = _family(cfg, "family", rng, n, d, dims, {"bounds": [1.0, 2.0]})
    if cfg.get("second_family") is not None:
        other = serialize.family_from_json(cfg["second_family"])
    else:
        raw = gen_family(GenSpec(sub_seed(rng), n, d, family.member_dims))
        other = _rescale_to_upper(raw, float(cfg.get("bessel_upper", 0.2)))
    if cfg.get("m") is not None and cfg.get("n") is not None:
        m_op = serialize.op_from_json(cfg["m"])
        n_op = serialize.op_from_json(cfg["n"])
        lam_bound = float(cfg["lambda_bound"])
    else:
        svals = rng.uniform(0.6, 0.9, n * d)
        n_op = op_from_flat(
            (haar_unitary(rng, n * d) * svals) @ haar_unitary(rng, n * d), n
        )
        lam_bound = 0.9 * float(svals.min())
        m_op = op_from_flat(1.05 * float(svals.max()) * haar_unitary(rng, n * d), n)
    return lambda_lower_check(
        family, other, m_op, n_op, lam_bound, tol, seed=sub_seed(rng)
    )


def _build_tight_mn(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, even_dims=True)
    alpha1 = float(cfg.get("alpha1", 1.0))
    alpha2 = float(cfg.get("alpha2", 1.0))
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
    else:
        family, other = _tight_pair(cfg, rng, n, d, dims, alpha1, alpha2)
    if cfg.get("m") is not None and cfg.get("n") is not None:
        m_op = serialize.op_from_json(cfg["m"])
        n_op = serialize.op_from_json(cfg["n"])
    else:
        mode = cfg.get("mode", "scalar" if seed % 2 == 0 else "violating")
        if mode == "scalar":
            s = float(rng.uniform(0.3, 1.2))
            t = float(rng.uniform(0.3, 1.2))
            m_op = op_from_flat(s * haar_unitary(rng, n * d), n)
            n_op = op_from_flat(t * haar_unitary(rng, n * d), n)
        else:
            # Distinct Hermitian spectrum: the identity-multiple
            # condition fails and the sum must measure non-tight.
            basis = haar_unitary(rng, n * d)
            spread = np.linspace(0.5, 1.5, n * d) if n * d > 1 else np.array([1.0])
            m_flat = (basis * spread) @ basis.conj().T
            m_op = op_from_flat(m_flat, n)
            n_op = op_from_flat(
                float(rng.uniform(0.4, 1.1)) * haar_unitary(rng, n * d), n
            )
            if n * d == 1:
                # Degenerate size: every operator is a scalar, so fall
                # back to the consistent tight branch.
                m_op = op_from_flat(np.array([[0.7 + 0j]]), n)
    return tight_mn_check(family, other, m_op, n_op, tol)


def _build_prop_mixed(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    alpha1 = float(cfg.get("alpha1", 0.5))
    alpha2 = float(cfg.get("alpha2", 0.5))
    band = cfg.get("weight_band", [0.9, 1.1])
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
        weights = serialize.weights_from_json(cfg["weights"])
    else:
        family = gen_family(
            GenSpec(sub_seed(rng), n, d, dims, FamilyTarget.bounds(1.0, 2.0))
        )
        other = scale_family(family, float(rng.uniform(0.95, 1.05)))
        weights = gen_weights(
            sub_seed(rng), n, family.size, float(band[0]), float(band[1])
        )
    return prop_mixed_check(
        family, other, weights, alpha1, alpha2, tol, seed=sub_seed(rng)
    )


def _build_difference(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    alpha1 = float(cfg.get("alpha1", 0.5))
    alpha2 = float(cfg.get("alpha2", 0.5))
    band = cfg.get("weight_band", [0.9, 1.1])
    if cfg.get("family") is not None:
        family = serialize.family_from_json(cfg["family"])
        other = serialize.family_from_json(cfg["second_family"])
        weights = serialize.weights_from_json(cfg["weights"])
    else:
        family = gen_family(
            GenSpec(sub_seed(rng), n, d, dims, FamilyTarget.bounds(1.0, 2.0))
        )
        shrink = rng.uniform(0.0, 0.02, family.size)
        other = GFrameFamily(
            tuple(
                (1.0 - float(eps)) * m
                for eps, m in zip(shrink, family.members)
            )
        )
        drawn = gen_weights(
            sub_seed(rng), n, family.size, float(band[0]), float(band[1])
        )
        weights = ScalarWeights(
            drawn.thetas, drawn.thetas, drawn.band_lower, drawn.band_upper
        )
    return difference_check(
        family, other, weights, alpha1, alpha2, tol, seed=sub_seed(rng)
    )


def _build_t12(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    family = _family(cfg, "family", rng, n, d, dims, {"bounds": [1.0, 2.0]})
    if cfg.get("delta_ops") is not None:
        delta_ops = [serialize.op_from_json(o) for o in cfg["delta_ops"]]
    elif cfg.get("second_family") is not None:
        delta_ops = operators_from_family(
            serialize.family_from_json(cfg["second_family"])
        )
    else:
        margin = float(cfg.get("budget_fraction", 0.5))
        lower_f = float(
            np.linalg.eigvalsh(frame_operator(family).flat).min().real
        )
        upper_f = float(
            np.linalg.eigvalsh(frame_operator(family).flat).max().real
        )
        budget = margin * lower_f / max(upper_f, 1e-12)
        raws = [complex_gaussian(rng, n * d, n * d) for _ in family.members]
        bumps = [r @ r.conj().T for r in raws]
        total = sum(float(np.linalg.norm(b, 2)) for b in bumps)
        delta_ops = [
            op_from_flat(
                m.flat @ m.flat.conj().T + (budget / max(total, 1e-12)) * b, n
            )
            for m, b in zip(family.members, bumps)
        ]
    return t12_check(family, delta_ops, tol)


def _build_final_corollary(cfg, seed, tol):
    rng = make_rng(seed)
    n, d, dims = _sizes(cfg, rng, min_flat=2)
    alpha = float(cfg.get("alpha", 0.5))
    family = _family(cfg, "family", rng, n, d, dims, {"bounds": [1.0, 2.0]})
    if cfg.get("second_family") is not None:
        other = serialize.family_from_json(cfg["second_family"])
    else:
        eps = float(rng.uniform(0.01, 0.1))
        other = scale_family(family, 1.0 - eps)
    return final_corollary_check(family, other, alpha, tol)


THEOREMS: dict[str, tuple] = {
    "CLASSIFY": (_build_classify, "classify a family and report its optimal bounds"),
    "PERTURB_LAMBDA": (
        _build_perturb_lambda,
        "members composed with (I + L) under the conjugation-dominance hypothesis",
    ),
    "T3_EQUIV": (
        _build_t3_equiv,
        "three-way equivalence for members P.M + Q.N",
    ),
    "T3_COROLLARY": (
        _build_t3_corollary,
        "plain member sums with positive mixed operator",
    ),
    "T7_SCALAR": (
        _build_t7_scalar,
        "coefficient-weighted sums with a dominated Bessel term",
    ),
    "T11_POSITIVE": (
        _build_t11,
        "coefficient-weighted sums of two frames with positive mixed operator",
    ),
    "TIGHT_SUM": (
        _build_tight_sum,
        "sum of two tight families with vanishing mixed operator",
    ),
    "ISOMETRY_SUM": (
        _build_isometry_sum,
        "member sums composed with an isometry",
    ),
    "LAMBDA_LOWER": (
        _build_lambda_lower,
        "members P.M + Q.N with N bounded below",
    ),
    "TIGHT_MN": (
        _build_tight_mn,
        "tightness characterization for members P.M + Q.N",
    ),
    "PROP_MIXED": (
        _build_prop_mixed,
        "norm-difference perturbation implies the second family is a frame",
    ),
    "THM_DIFFERENCE": (
        _build_difference,
        "quadratic-difference perturbation implies the second family is a frame",
    ),
    "T12_OPERATOR": (
        _build_t12,
        "frame-operator perturbation within the C/D budget",
    ),
    "FINAL_COROLLARY": (
        _build_final_corollary,
        "frame-operator proximity below the lower bound",
    ),
}


def theorem_ids() -> list[str]:
    return list(THEOREMS)


def build_and_run(
    theorem: str, instance: dict, seed: int, tol: Tolerance = DEFAULT_TOL
):
    """Assemble the instance for one repetition and run its checker."""
    if theorem not in THEOREMS:
        raise ValidationError(f"unknown theorem id {theorem!r}")
    builder, _ = THEOREMS[theorem]
    return builder(dict(instance or {}), int(seed), tol)
