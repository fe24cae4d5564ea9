"""Adding sets that only touch the origin can wreck the maximal operator.

The d-basis adds two adjacent copies of U_n; the g-basis adds V_n together
with any translate of it, so some candidates are tiny yet stretch across
the torus.
"""

from fractions import Fraction

from torusdiff import build_family, family_profile
from torusdiff.counterexamples import prop41_certificate, prop42_certificate

print("d-basis, f = indicator of U_n, lambda = 1/3")
for n in range(1, 11):
    c = prop41_certificate(n)
    print(f"  n={n:<2} weak-type ratio {str(c.computed['ratio']):>5}  (needs >= {c.computed['ratio_bound']})")

print()
print("g-basis, f = indicator of V_(k+2): the superlevel set at 1/3 is the whole torus")
for k in range(1, 7):
    c = prop42_certificate(k)
    print(f"  k={k}: 2^k ||f||_1 = {c.computed['scaled_norm']} < 1/3, delta_k >= {c.computed['delta_lower_bound']}")

print()
for name in ("rdf-restricted", "g-basis"):
    prof = family_profile(build_family(name, 10))
    wide = [(m, d) for m, d in prof if m <= Fraction(1, 2**9)]
    print(f"{name}: largest diameter among candidates of measure <= 2^-9 is {max(d for _, d in wide)}")
