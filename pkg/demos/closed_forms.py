"""
Closed-form fragility
=====================

Complete, complete equitable bipartite (CEB) and generalized barbell (GB)
graphs have exact fragility values. This walk-through prints them and
checks the small cases against brute force.
"""
from fractions import Fraction

from fragility import closed_form as cf
from fragility.generators import gen_ceb, gen_complete, gen_gb
from fragility.oracle import brute_r_star

half = Fraction(1, 2)

# Complete graphs are the reference point, so their fragility is always 0.
for n in (4, 10, 50):
    print(f"K_{n}: F = {cf.fragility_exact('complete', n, half)}")

# CEB graphs become less fragile as they grow, GB graphs more fragile.
print("\n  n   CEB        GB")
for n in (8, 16, 32, 64, 128):
    ceb = cf.fragility_exact("ceb", n, half)
    gb = cf.fragility_exact("gb", n, half)
    print(f"{n:4d}  {str(ceb):9s} {str(gb):10s} ({float(gb):.4f})")

# For tiny graphs the optimum can be found exhaustively.
for name, g in (("K_8", gen_complete(8)), ("CEB_8", gen_ceb(8)), ("GB_8", gen_gb(8))):
    print(f"{name}: r*(c=4) = {brute_r_star(g, 4)} of m = {g.m}")

# The same numbers are available per family object.
fam = cf.ClosedFormFamily("ceb", 12)
print("\nCEB_12 r* by c:", [fam.r_star(c) for c in range(1, 12)])
