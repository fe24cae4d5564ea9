"""Periodic grid sets: small A, large E, and boxes from E that are mostly inside A.

Each block of (L+1)^2 coordinates carries a grid of short arcs. A point of E
is close to the arcs on most coordinates, and shifting the basis box onto
the grid by at most one arc length keeps a fixed share of it inside A.
Stacking blocks on disjoint coordinates gives independent stages.
"""

from fractions import Fraction

from torusdiff.counterexamples import lemma31_ratio, lemma33_build, schedule, theorem31_assemble
from torusdiff.expbounds import certified_exp_bounds, exp_upper

lo, hi = certified_exp_bounds(-8)
print(f"e^-8 lies in [{lo}, {hi}]")

print()
print("share of the dilated box where too many coordinates sit in the upper band")
for n in range(2, 9):
    print(f"  n={n}: {float(lemma31_ratio(n).computed['ratio']):.3e}")

for L in (1, 2):
    grid, cert = lemma33_build(1, L, n_samples=6)
    print()
    print(f"grid sets at K=1, L={L} (block of {grid.n ** 2} coordinates)")
    print(f"  m(A) = {float(grid.a_measure):.5f}  < e^-{L}")
    print(f"  m(E) = {float(grid.e_measure):.5f}  > 1/(2e)")
    worst = min(v for k, v in cert.computed.items() if k.endswith("_average"))
    print(f"  smallest sampled box average {float(worst):.4f} vs e^-8 = {float(exp_upper(-8)):.6f}")
    print(f"  verdict {cert.verdict}")

print()
eps = Fraction(1, 2)
print(f"stage schedule for epsilon = {eps}: (K_n, L_n) = {schedule(eps, 2)}")
c = theorem31_assemble(eps, 2)
print(f"  m(A_1 u A_2) = {float(c.computed['m_union_A']):.5f} < {eps}")
print(f"  m(E_1 n E_2) == m(E_1) m(E_2): {c.computed['m_E_joint_1_2'] == c.computed['m_E_product_1_2']}")
print(f"  verdict {c.verdict}")
