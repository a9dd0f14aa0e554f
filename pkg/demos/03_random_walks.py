"""
Random walks and carrier stabilization
======================================

Step uniformly from a subset A. The walk's law after n steps is P^(n),
and its support (carrier) is exactly A^n. The walk approaches uniform
when the powers of A reach G, and stays away from it when they cycle
through cosets of a proper subgroup.
"""

from groupcover import convergence_probe, make_group, parse_subset, uniform_on

cases = [
    ("cyclic:6", "1,2"),
    ("cyclic:4", "1,3"),        # odd steps: parity alternates forever
    ("sym:3", "(01),(02),(12)"),  # transpositions flip the sign each step
    ("sym:3", "e,(01),(012)"),
    ("dihedral:4", "s,r"),      # r and s both map to 1 in Z2
]

for spec, subset in cases:
    g = make_group(spec)
    p = uniform_on(parse_subset(g, subset))
    rep = convergence_probe(p, tol=1e-3, max_n=200)
    st = rep.stabilization
    status = f"k={st.k}" if st.stabilizes else f"cycle start {st.cycle[0]}, period {st.cycle[1]}"
    n_at = rep.n_at_tol if rep.converged else "-"
    print(f"{spec:11s} {subset:16s} tv<1e-3 at n={n_at!s:4s} stabilization: {status}")

# The exact backend keeps tv as a rational number
rep = convergence_probe(uniform_on(parse_subset(make_group("cyclic:4"), "1,3")), 1e-3, max_n=5)
print([str(t) for t in rep.tv_trace])

# Float backend, and a CSV trace for plotting elsewhere
z6 = make_group("cyclic:6")
rep = convergence_probe(uniform_on(parse_subset(z6, "1,2"), backend="float"), 1e-6, max_n=500)
print(rep.to_csv().splitlines()[:6])
print("steps to 1e-6:", rep.n_at_tol)
