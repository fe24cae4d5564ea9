"""A bump of total mass 1 squeezed near the center is seen at full height from a big set.

Translates of the cube U_n are free to slide, so every point of a set E_n
around the bump sees an average of 2^(n^2). The weak
(1,1) ratio therefore grows like 2^(n-2). A grid of such bumps turns this
into averages of 1 on sets of nearly full measure.
"""

from torusdiff.counterexamples import prop31_certificate, prop32_assemble, prop32_certificate

print("single bump: lambda * m(E_n) / ||f||_1 against 2^(n-2)")
for n in range(1, 9):
    c = prop31_certificate(n, n_samples=2)
    v = c.computed["weak_ratio"]
    print(f"  n={n}: ratio {float(v):10.3f}  floor {2 ** (n - 2):>6}  witness average {c.computed['w0_average']}  ok={c.verdict}")

print()
print("grid of bumps: small support, averages of 1 on most of the torus")
for n in range(2, 6):
    c = prop32_certificate(n, n_samples=2)
    print(
        f"  n={n}: m(A)={float(c.computed['m_A']):.3e}  m(E)={float(c.computed['m_E']):.6f}"
        f"  ||f||_1={c.computed['norm_f']}  grid points={c.computed['grid_size_formula']}  ok={c.verdict}"
    )

print()
c = prop32_assemble(4)
print("summing four grid functions:")
print(f"  m(union of supports) = {float(c.computed['m_union_A']):.4f} <= {c.computed['union_bound']}")
for k in range(1, 5):
    label = "E_4" if k == 4 else f"E_{k} n ... n E_4"
    print(f"  m({label}) = {float(c.computed[f'm_E_from_{k}']):.6f} >= {c.computed[f'E_bound_from_{k}']}")
print(f"  verdict: {c.verdict}")
