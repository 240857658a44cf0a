"""Generator postconditions: exactness, determinism, degeneracy errors."""

import numpy as np
import pytest

from gframes import (
    BadRange,
    DegenerateSpec,
    FamilyTarget,
    GenSpec,
    classify,
    compose,
    cross_operator,
    FrameKind,
    gen_family,
    gen_isometry,
    gen_orthogonal_pair,
    gen_weights,
    op_norm,
    optimal_bounds,
)


def test_gen_family_is_deterministic():
    spec = GenSpec(12345, 2, 2, (2, 3), FamilyTarget.parseval())
    first = gen_family(spec)
    second = gen_family(spec)
    for a, b in zip(first.members, second.members):
        assert np.array_equal(a.flat, b.flat)


def test_parseval_target_hits_unit_bounds():
    for seed in range(100):
        family = gen_family(GenSpec(seed, 2, 2, (2, 2), FamilyTarget.parseval()))
        bounds = optimal_bounds(family)
        assert abs(bounds.lower - 1.0) <= 1e-8
        assert abs(bounds.upper - 1.0) <= 1e-8
        assert classify(family).kind is FrameKind.PARSEVAL_FRAME


def test_tight_target():
    for seed in range(20):
        family = gen_family(GenSpec(seed, 1, 2, (2, 2), FamilyTarget.tight(3.0)))
        bounds = optimal_bounds(family)
        assert bounds.lower == pytest.approx(3.0, abs=1e-8)
        assert bounds.upper == pytest.approx(3.0, abs=1e-8)


def test_bounds_target_places_spectrum_exactly():
    for seed in range(100):
        family = gen_family(GenSpec(seed, 2, 2, (3, 2), FamilyTarget.bounds(0.5, 2.0)))
        bounds = optimal_bounds(family)
        assert bounds.lower == pytest.approx(0.5, abs=1e-8)
        assert bounds.upper == pytest.approx(2.0, abs=1e-8)
        assert classify(family).kind is not FrameKind.BESSEL_ONLY


def test_gen_family_degenerate_span():
    with pytest.raises(DegenerateSpec):
        gen_family(GenSpec(0, 2, 3, (1, 1), FamilyTarget.parseval()))
    with pytest.raises(DegenerateSpec):
        gen_family(GenSpec(0, 1, 1, (2,), FamilyTarget.bounds(0.5, 2.0)))


def test_random_target_allows_rank_deficiency():
    family = gen_family(GenSpec(5, 2, 3, (1,)))
    assert classify(family).kind is FrameKind.BESSEL_ONLY


def test_orthogonal_pair_has_exactly_zero_cross_term():
    for seed in range(100):
        first, second = gen_orthogonal_pair(
            GenSpec(seed, 1, 2, (4, 4), FamilyTarget.parseval())
        )
        assert op_norm(cross_operator(first, second)) <= 1e-12
        assert optimal_bounds(first).parseval
        assert optimal_bounds(second).parseval


def test_orthogonal_pair_member_level_orthogonality():
    first, second = gen_orthogonal_pair(GenSpec(9, 2, 2, (2, 2), FamilyTarget.parseval()))
    for p, q in zip(first.members, second.members):
        assert np.linalg.norm(q.flat @ p.flat.conj().T, 2) <= 1e-13


def test_orthogonal_pair_degeneracy():
    with pytest.raises(DegenerateSpec):
        gen_orthogonal_pair(GenSpec(0, 2, 2, (1, 2), FamilyTarget.parseval()))
    with pytest.raises(DegenerateSpec):
        # Halved columns cannot span a length-3 module.
        gen_orthogonal_pair(GenSpec(0, 1, 3, (2, 2), FamilyTarget.parseval()))


def test_gen_isometry_postcondition():
    for seed in range(100):
        lam = gen_isometry(seed, 2, 2)
        gram = lam.flat @ lam.flat.conj().T
        assert np.linalg.norm(gram - np.eye(4), 2) <= 1e-10


def test_isometry_preserves_parseval():
    family = gen_family(GenSpec(3, 2, 2, (2, 2), FamilyTarget.parseval()))
    lam = gen_isometry(4, 2, 2)
    moved = type(family)(tuple(compose(m, lam) for m in family.members))
    bounds = optimal_bounds(moved)
    assert bounds.lower == pytest.approx(1.0, abs=1e-8)
    assert bounds.upper == pytest.approx(1.0, abs=1e-8)


def test_gen_weights_band_invariants():
    for seed in range(50):
        weights = gen_weights(seed, 2, 4, 0.8, 1.3)
        for w in weights.thetas + weights.deltas:
            eigs = np.linalg.eigvalsh(w.entries.conj().T @ w.entries)
            assert eigs[0] > 0.8
            assert eigs[-1] < 1.3


def test_gen_weights_degenerate_band_gives_near_scalars():
    weights = gen_weights(7, 2, 2, 4.0 - 1e-6, 4.0 + 1e-6)
    for w in weights.thetas:
        np.testing.assert_allclose(w.entries, 2.0 * np.eye(2), atol=1e-6)


def test_gen_weights_bad_range():
    with pytest.raises(BadRange):
        gen_weights(0, 2, 2, 1.5, 1.0)
    with pytest.raises(BadRange):
        gen_weights(0, 2, 0, 0.5, 1.0)


def test_distinct_seeds_differ():
    a = gen_isometry(1, 2, 2)
    b = gen_isometry(2, 2, 2)
    assert np.linalg.norm(a.flat - b.flat, 2) > 0.01
