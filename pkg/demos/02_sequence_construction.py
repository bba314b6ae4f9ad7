"""Walk through the sequence construction algebra step by step.

Starts from the elementary two-pulse words, pairs opposite windings to
cancel the leading z error, finds the odd-winding complement by token
flipping, and climbs the whole '2'..'256' ladder, printing the fitted
z-error exponent at each stage.  The spinor sign does the work: a word
winding to -identity carries its leading z error with the opposite sign,
so concatenating the two paired words cancels it.
"""

from spinrefocus import (
    CANONICAL_LABELS,
    SequenceExpr,
    bar_seq,
    build_canonical,
    combine,
    concat,
    estimate_order,
    find_complement,
    simple_pi,
    to_string,
    winding_sign,
)

base = simple_pi()
p = SequenceExpr((False,), "P")
pp = concat(p, p, "PP")
pq = concat(p, bar_seq(p), "PQ")

print("elementary words (P = pi about +y, Q = pi about -y):")
for word in (pq, pp):
    est = estimate_order(word, base, "delta_z", 1e-2, 1e-1)
    print(
        f"  {word.name}: winding {winding_sign(word):+d}, "
        f"leading z error ~ {est.coefficient:.3g} * eps^{est.exponent:.2f}"
    )

print("\npairing opposite windings cancels the common z error:")
a = combine(pq, pp, base, "A")
est_a = estimate_order(a, base, "delta_z", 1e-2, 1e-1)
print(f"  A = {to_string(a)}")
print(f"  z error ~ {est_a.coefficient:.3g} * eps^{est_a.exponent:.2f}  (was eps^3)")

print("\nthe odd-winding complement differs by one token flip:")
b = find_complement(a, base)
print(f"  B = {to_string(b)}  (winding {winding_sign(b):+d})")

c = combine(a, b, base, "C")
est_c = estimate_order(c, base, "delta_z", 1e-2, 1e-1)
print(f"  C = A Abar B Bbar: z error ~ {est_c.coefficient:.3g} * eps^{est_c.exponent:.2f}")

print("\nthe canonical ladder (antisymmetric / SA arrangements of PP, A, C, F):")
for label in CANONICAL_LABELS:
    expr = build_canonical(label)
    window = (1e-3, 1e-2) if int(label) < 256 else (1e-2, 1e-1)
    est = estimate_order(expr, base, "delta_z", *window)
    text = to_string(expr)
    shown = text if len(text) <= 32 else text[:29] + "..."
    print(f"  '{label:>3}' ({shown}): z exponent {est.exponent:.2f}")
