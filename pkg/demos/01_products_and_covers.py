"""
Subset products and when they cover the group
==============================================

A product of subsets A*B = {ab : a in A, b in B} covers G as soon as
|A| + |B| > |G|. At |A| + |B| = |G| anything can happen, and far below
that a lucky pair can still cover.
"""

import numpy as np

from groupcover import (
    Subset,
    cyclic,
    dihedral,
    elementary_abelian,
    mann_pair,
    parse_subset,
    product,
    symmetric,
)
from groupcover.subsets import format_subset, random_subset

# Groups are Cayley tables. Element 0 is always the identity.
z4 = cyclic(4)
print(z4.mul_table)

# The subgroup H = {0, 2} times its complement misses H entirely
h = parse_subset(z4, "0,2")
print("H (G\\H) =", format_subset(h * ~h))          # {1,3}
print("branch:", mann_pair(h, ~h))                 # sizes add up to exactly |G|

# Same sizes, different outcome: two subgroups of the Klein group
v4 = elementary_abelian(2, 2)
a, b = parse_subset(v4, "e,a"), parse_subset(v4, "e,b")
print("<a><b> =", format_subset(a * b))            # G

# Index-2 subgroup times {e, t} covers with only |G|/2 + 2 elements
d4 = dihedral(4)
rot = parse_subset(d4, "e,r,r^2,r^3")
print("rotations * {e,s} =", format_subset(rot * parse_subset(d4, "e,s")))

# How often does a random pair cover S4? Bucket by |A| + |B| - |G|
s4 = symmetric(4)
rng = np.random.default_rng(0)
hits = {}
for _ in range(4000):
    x, y = random_subset(s4, rng), random_subset(s4, rng)
    excess = len(x) + len(y) - s4.order
    covered, total = hits.get(excess, (0, 0))
    hits[excess] = (covered + product(x, y).is_full(), total + 1)

print("\nexcess  covered/total")
for excess in sorted(hits):
    covered, total = hits[excess]
    if total >= 20:
        print(f"{excess:6d}  {covered:4d}/{total:<4d}")
# every row with excess > 0 is fully covered

# Powers of a subset grow until they reach G or get stuck on a coset
z6 = cyclic(6)
g12 = Subset.from_indices(z6, [1, 2])
acc = g12
for k in range(1, 7):
    print(f"A^{k} = {format_subset(acc)}")
    acc = acc * g12
