"""
Counting factorisations with and without complements
====================================================

N_B(g) counts tuples (a_1, ..., a_n) with a_i in A_i and a_1 ... a_n = g.
Doing the same with the complements gives N_Bbar(g). The difference
N_B(g) - (-1)^n N_Bbar(g) does not depend on g, and equals

    d(B) = (prod |A_i| - (-1)^n prod |G \\ A_i|) / |G|.

The sign of d(B) decides which of the two products is all of G.
"""

import pathlib

import numpy as np

from groupcover import (
    SubsetFamily,
    count_products,
    count_products_bruteforce,
    cyclic,
    decide_by_sign,
    elementary_abelian,
    indicator,
    read_table_file,
    sweep_theorem2,
    verify_theorem2,
)
from groupcover.subsets import random_family

# Counting is convolution of indicator vectors in the group algebra
z4 = cyclic(4)
fam = SubsetFamily.from_indices(z4, [0, 1, 2], [0, 1])
u = indicator(fam.members[0]) * indicator(fam.members[1])
print("[A1][A2] =", u.to_list())                     # [1, 2, 2, 1]

rep = count_products(fam)
print("N_B    =", rep.counts.to_list())
print("N_Bbar =", rep.counts_complement.to_list())
print("difference =", rep.difference(), " d(B) =", rep.d)

# Brute force agrees (it enumerates every tuple)
print("brute force:", count_products_bruteforce(fam).to_list())

# Two singletons {0} in Z4: d is negative, so the complements cover
small = SubsetFamily.from_indices(z4, [0], [0])
print("\nd =", count_products(small).d, "->", decide_by_sign(small))

# A full report, serialisable to JSON
print(verify_theorem2(fam).to_text(verbose=True))

# Quaternions from a table file
q8 = read_table_file(pathlib.Path(__file__).parent.parent / "tests" / "data" / "q8.txt")
qfam = SubsetFamily.from_indices(q8, ["1", "i", "j"], ["-1", "k"], ["i", "-i", "-k"])
print("Q8:", qfam.describe(), " d =", count_products(qfam).d)

# Random sweep over an elementary abelian group of order 27
g27 = elementary_abelian(3, 3)
for n in (2, 3, 4):
    s = sweep_theorem2(g27, n, 50, seed=n)
    print(f"ea:3,3 n={n}: {s.passed}/{s.families} families pass")

# Distribution of d over random pairs in Z12 is |A1| + |A2| - 12
rng = np.random.default_rng(1)
ds = []
for _ in range(500):
    ds.append(count_products(random_family(cyclic(12), 2, rng)).d)
vals, cnt = np.unique(ds, return_counts=True)
print(dict(zip(vals.tolist(), cnt.tolist())))
