"""Golden scenarios: the worked examples and corollaries, checked exactly.

Each scenario builds concrete groups and subsets, computes the relevant
products directly, and compares them with the stated outcome. Generic
statements are instantiated on fixed groups:

* ex1 uses Z4 with H = {0, 2} and S3 with the non-normal H = {e, (01)}.
* ex4 ("A_1 of index 2, |G| > 4") uses Z6 with A_1 = {0, 2, 4}, t = 1 and
  D4 with A_1 = rotations, t = s; in both A_2 = {e, t}.
* boundary uses every index-2 subgroup found in Z4, Z6, S3 and D4.
* large-pairs and commute are exhaustive over S3 and D4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .algebra import Trichotomy, count_products_bruteforce, mann_pair, theorem3_decide, Decision
from .group import FiniteGroup, cyclic, dihedral, elementary_abelian, symmetric
from .subsets import Subset, SubsetFamily, complement, format_subset, inverse_set, product, product_of


@dataclass
class Claim:
    text: str
    ok: bool


@dataclass
class ScenarioResult:
    name: str
    title: str
    claims: list[Claim] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.claims)

    def check(self, text: str, ok) -> None:
        self.claims.append(Claim(text, bool(ok)))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "title": self.title,
            "passed": self.passed,
            "claims": [{"text": c.text, "ok": c.ok} for c in self.claims],
        }


def all_subsets(group: FiniteGroup, nonempty: bool = True):
    """Every subset of ``group`` (order <= 16), in mask-integer order."""
    n = group.order
    if n > 16:
        raise ValueError("exhaustive enumeration limited to order 16")
    bits = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
    for row in bits[1 if nonempty else 0:]:
        yield Subset(group, row.astype(bool))


def subgroups(group: FiniteGroup) -> list[Subset]:
    """All subgroups, by brute force over subsets containing the identity."""
    out = []
    for s in all_subsets(group):
        if 0 in s and product(s, s) == s:
            out.append(s)
    return out


def _ex1() -> ScenarioResult:
    r = ScenarioResult("ex1", "subgroup H and its complement: |A1|+|A2| = |G| but A1 A2 != G")
    for g, h in [(cyclic(4), [0, 2]), (symmetric(3), ["e", "(01)"])]:
        a1 = Subset.from_indices(g, h)
        a2 = complement(a1)
        p = product(a1, a2)
        tag = f"{g.name}, H={format_subset(a1)}"
        r.check(f"{tag}: |A1|+|A2| = |G|", a1.cardinality + a2.cardinality == g.order)
        r.check(f"{tag}: mann_pair is Equal", mann_pair(a1, a2) is Trichotomy.EQUAL)
        r.check(f"{tag}: H(G\\H) = {format_subset(p)} != G", not p.is_full())
        r.check(f"{tag}: A1 A2 = ~A1 ~A2", p == product(complement(a1), complement(a2)))
    return r


def _disjoint() -> ScenarioResult:
    r = ScenarioResult("disjoint", "H (G \\ H) is disjoint from H for every subgroup H")
    for g in [cyclic(4), cyclic(6), elementary_abelian(2, 2), symmetric(3), dihedral(4)]:
        subs = [h for h in subgroups(g) if not h.is_full()]
        ok = all((product(h, complement(h)) & h).is_empty() for h in subs)
        r.check(f"{g.name}: all {len(subs)} proper subgroups", ok)
    return r


def _ex2() -> ScenarioResult:
    r = ScenarioResult("ex2", "V4 with A1 = <a>, A2 = <b>: A1 A2 = G")
    g = elementary_abelian(2, 2)
    a1 = Subset.from_indices(g, ["e", "a"])
    a2 = Subset.from_indices(g, ["e", "b"])
    c1, c2 = complement(a1), complement(a2)
    r.check("|A1|+|A2| = |G|", a1.cardinality + a2.cardinality == g.order)
    r.check("A1 A2 = G", product(a1, a2).is_full())
    r.check("A1 meet A2 = {e}", (a1 & a2) == Subset.from_indices(g, ["e"]))
    r.check("~A1 ~A2 = G", product(c1, c2).is_full())
    r.check("~A1 meet ~A2 nonempty", not (c1 & c2).is_empty())
    return r


def _ex3() -> ScenarioResult:
    r = ScenarioResult("ex3", "(Z3)^3 with A1 = {1,a,b}, A2 = G \\ A1: A1 A2 = G, disjoint")
    g = elementary_abelian(3, 3)
    a1 = Subset.from_indices(g, ["e", "a", "b"])
    a2 = complement(a1)
    e, a, b = g.element("e"), g.element("a"), g.element("b")
    r.check("|A1|+|A2| = |G|", a1.cardinality + a2.cardinality == g.order)
    r.check("A1 meet A2 empty", (a1 & a2).is_empty())
    r.check("A1 A2 = G", product(a1, a2).is_full())
    counts = count_products_bruteforce(SubsetFamily([a1, a2]))
    r.check("every g has a factorisation (brute force over 72 pairs)", min(counts.to_list()) > 0)
    for target, left, right in [
        (e, a, a * a),
        (a, b, b * b * a),
        (b, a, a * a * b),
    ]:
        r.check(f"{target!r} = {left!r} {right!r} with {left!r} in A1, {right!r} in A2",
                left.index in a1 and right.index in a2 and left * right == target)
    r.check("~A1 ~A2 = A1 A2", product(complement(a1), complement(a2)) == product(a1, a2))
    return r


def _ex4() -> ScenarioResult:
    r = ScenarioResult("ex4", "index-2 subgroup A1 and A2 = {e,t}: A1 A2 = G with |A1|+|A2| < |G|")
    cases = [
        (cyclic(6), [0, 2, 4], 1),
        (dihedral(4), ["e", "r", "r^2", "r^3"], "s"),
    ]
    for g, sub, t in cases:
        a1 = Subset.from_indices(g, sub)
        a2 = Subset.from_indices(g, [0, t])
        tag = f"{g.name}, A1={format_subset(a1)}, A2={format_subset(a2)}"
        r.check(f"{tag}: A1 is an index-2 subgroup", product(a1, a1) == a1 and 2 * a1.cardinality == g.order)
        r.check(f"{tag}: |A1|+|A2| < |G|", a1.cardinality + a2.cardinality < g.order)
        r.check(f"{tag}: A1 A2 = G", product(a1, a2).is_full())
        r.check(f"{tag}: ~A1 ~A2 = G", product(complement(a1), complement(a2)).is_full())
    return r


def _boundary() -> ScenarioResult:
    r = ScenarioResult("boundary", "|A| = |G|/2 is not enough: index-2 subgroup A has AA = AA^-1 = A")
    for g in [cyclic(4), cyclic(6), symmetric(3), dihedral(4)]:
        idx2 = [h for h in subgroups(g) if 2 * h.cardinality == g.order]
        r.check(f"{g.name}: has an index-2 subgroup", bool(idx2))
        for h in idx2:
            tag = f"{g.name}, A={format_subset(h)}"
            r.check(f"{tag}: AA = A != G", product(h, h) == h and not h.is_full())
            r.check(f"{tag}: AA^-1 = A^-1A = A", product(h, inverse_set(h)) == h == product(inverse_set(h), h))
    return r


def _large_pairs() -> ScenarioResult:
    r = ScenarioResult("large-pairs", "|A| > |G|/2 and |B| >= |G|/2 give A^2 = AB = BA = AA^-1 = A^-1A = G")
    for g in [symmetric(3), dihedral(4)]:
        subs = list(all_subsets(g))
        big = [a for a in subs if 2 * a.cardinality > g.order]
        half = [b for b in subs if 2 * b.cardinality >= g.order]
        ok_inv = all(product(a, inverse_set(a)).is_full() and product(inverse_set(a), a).is_full() for a in big)
        ok_pair = all(
            product(a, a).is_full() and product(a, b).is_full() and product(b, a).is_full()
            for a in big for b in half
        )
        r.check(f"{g.name}: AA^-1 = A^-1A = G for all {len(big)} large A", ok_inv)
        r.check(f"{g.name}: A^2 = AB = BA = G for all {len(big) * len(half)} pairs", ok_pair)
    return r


def _commute() -> ScenarioResult:
    r = ScenarioResult("commute", "A ~A = ~A A for every nonempty proper subset A")
    for g in [cyclic(6), symmetric(3), dihedral(4)]:
        subs = [a for a in all_subsets(g) if not a.is_full()]
        ok = all(product(a, complement(a)) == product(complement(a), a) for a in subs)
        r.check(f"{g.name}: all {len(subs)} subsets", ok)
    return r


def _tight_sums() -> ScenarioResult:
    r = ScenarioResult("tight-sums", "all pairwise sums = |G|: both C = G and C != G occur")
    g = cyclic(4)
    h = Subset.from_indices(g, [0, 2])
    fam = SubsetFamily([h, h, h])
    r.check("Z4, ({0,2})^3: decision Indeterminate", theorem3_decide(fam) is Decision.INDETERMINATE)
    r.check("Z4, ({0,2})^3 = {0,2} != G", fam.product() == h)
    fam = SubsetFamily.from_indices(g, [0, 1], [0, 2], [0, 3])
    r.check("Z4, ({0,1},{0,2},{0,3}): decision Indeterminate", theorem3_decide(fam) is Decision.INDETERMINATE)
    r.check("Z4, {0,1}{0,2} = G", product_of(fam.members[:2]).is_full())
    r.check("Z4, {0,1}{0,2}{0,3} = G", fam.product().is_full())
    return r


SCENARIOS: dict[str, Callable[[], ScenarioResult]] = {
    "ex1": _ex1,
    "ex2": _ex2,
    "ex3": _ex3,
    "ex4": _ex4,
    "disjoint": _disjoint,
    "boundary": _boundary,
    "large-pairs": _large_pairs,
    "commute": _commute,
    "tight-sums": _tight_sums,
}


def run_scenario(name: str) -> ScenarioResult:
    try:
        return SCENARIOS[name]()
    except KeyError:
        raise KeyError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}") from None


def run_all() -> list[ScenarioResult]:
    return [fn() for fn in SCENARIOS.values()]
