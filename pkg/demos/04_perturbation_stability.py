"""Perturbation stability: how far can a family drift and stay a frame.

The operator-budget checker also demonstrates the recorded-only bound
policy: constants quoted from the source derivation appear in the
report next to the achieved spectrum, but only the qualitative frame
conclusion is asserted.
"""

import numpy as np

from gframes import (
    FamilyTarget,
    GenSpec,
    adjoint_op,
    compose,
    final_corollary_check,
    gen_family,
    gen_weights,
    op_from_flat,
    prop_mixed_check,
    scale_family,
    t12_check,
)

family = gen_family(GenSpec(11, 2, 2, (2, 2), FamilyTarget.bounds(1.0, 2.0)))

print("== norm-difference perturbation ==")
drifted = scale_family(family, 1.03)
weights = gen_weights(12, 2, family.size, 0.9, 1.1)
report = prop_mixed_check(family, drifted, weights, 0.5, 0.5)
print("verdict:", report.verdict.value)
print("worst sampled margin:",
      f"{report.details['worst_sample_margin']:.3e}", "(<= 0 passes)")
print("claimed bounds (recorded only):",
      tuple(round(v, 4) for v in report.claimed_bounds))
print("achieved bounds of the drifted family:",
      (round(report.achieved.lower, 6), round(report.achieved.upper, 6)))

print()
print("== frame-operator budget with subset scan ==")
eps = 0.3
n, d = family.algebra_dim, family.source_len
bump = (eps / family.size) * np.eye(n * d)
deltas = [
    op_from_flat(m.flat @ m.flat.conj().T + bump, n) for m in family.members
]
report = t12_check(family, deltas)
print("verdict:", report.verdict.value)
print(f"max subset deviation: {report.measured_lhs:.6f} (budget {report.allowed_rhs})")
print(f"contraction norm:     {report.details['contraction_norm']:.6f}"
      f" (limit {report.details['contraction_limit']})")
print("shifted spectrum:",
      (round(report.achieved.lower, 9), round(report.achieved.upper, 9)))
print("claimed bounds (recorded only):",
      tuple(round(v, 4) for v in report.claimed_bounds))
print("note:", report.bound_discrepancy_note.split(";")[0])

print()
print("== frame-operator proximity ==")
shrunk = scale_family(family, 0.95)
report = final_corollary_check(family, shrunk, 0.5)
print("verdict:", report.verdict.value)
print(f"||S_F - S_G|| = {report.measured_lhs:.6f} (allowed {report.allowed_rhs})")
print("shrunk family bounds:",
      (round(report.achieved.lower, 6), round(report.achieved.upper, 6)))

print()
print("== exact summands reproduce the input spectrum ==")
exact = [compose(adjoint_op(m), m) for m in family.members]
report = t12_check(family, exact)
print("verdict:", report.verdict.value,
      "| deviation:", f"{report.measured_lhs:.2e}",
      "| bounds:", (round(report.achieved.lower, 9), round(report.achieved.upper, 9)))
