"""Exact integer group algebra ZG and the product-counting identity.

For a family B = (A_1, ..., A_n) of nonempty subsets, N_B(g) counts the
tuples (a_1, ..., a_n) in A_1 x ... x A_n whose product is g; it is the
coefficient of g in the group-algebra product [A_1]...[A_n]. With B-bar the
family of complements, the quantity N_B(g) - (-1)^n N_{B-bar}(g) does not
depend on g and equals

    d(B) = (prod |A_i| - (-1)^n prod |~A_i|) / |G|,

which is always an integer. The deciders below turn the sign of d(B), and
pairwise size sums, into certificates that a product covers G.
"""

from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import (
    EmptySubset,
    GroupMismatch,
    InternalInconsistency,
    Overflow,
    TooLarge,
)
from .group import FiniteGroup
from .subsets import Subset, SubsetFamily, _same_group, random_family

#: Default cap on the number of tuples the brute-force oracle enumerates.
BRUTE_FORCE_CAP = 10**7

_INT64_MAX = np.iinfo(np.int64).max


class GroupAlgebraVector:
    """An element of ZG: one exact integer coefficient per group element.

    ``backend="exact"`` (default) stores Python integers and never
    overflows. ``backend="int64"`` is a fixed-width fast path; any product
    whose result could leave the int64 range raises :class:`Overflow`
    before computing anything.
    """

    __slots__ = ("group", "coeffs", "backend")

    def __init__(self, group: FiniteGroup, coeffs, backend: str = "exact"):
        if backend == "exact":
            arr = np.empty(group.order, dtype=object)
            arr[:] = [int(c) for c in coeffs]
        elif backend == "int64":
            arr = np.array(coeffs, dtype=np.int64)
        else:
            raise ValueError(f"unknown backend {backend!r}")
        if arr.shape != (group.order,):
            raise ValueError(f"{arr.shape[0]} coefficients for group of order {group.order}")
        arr.flags.writeable = False
        self.group = group
        self.coeffs = arr
        self.backend = backend

    @classmethod
    def zero(cls, group: FiniteGroup, backend: str = "exact") -> "GroupAlgebraVector":
        return cls(group, [0] * group.order, backend)

    def to_list(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def total(self) -> int:
        """Sum of coefficients (the augmentation map ZG -> Z)."""
        return sum(self.to_list())

    def support(self) -> Subset:
        return Subset(self.group, np.array([c != 0 for c in self.to_list()], dtype=bool))

    def __getitem__(self, g) -> int:
        return int(self.coeffs[self.group.index_of(g)])

    def __len__(self):
        return self.group.order

    def _combine(self, other, op):
        if not isinstance(other, GroupAlgebraVector):
            return NotImplemented
        if other.group != self.group:
            raise GroupMismatch("vectors over different groups")
        a, b = self.to_list(), other.to_list()
        vals = [op(x, y) for x, y in zip(a, b)]
        backend = "exact" if "exact" in (self.backend, other.backend) else "int64"
        if backend == "int64" and any(abs(v) > _INT64_MAX for v in vals):
            raise Overflow("int64 coefficient overflow in vector arithmetic")
        return GroupAlgebraVector(self.group, vals, backend)

    def __add__(self, other):
        return self._combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._combine(other, lambda x, y: x - y)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k: int) -> "GroupAlgebraVector":
        vals = [k * c for c in self.to_list()]
        if self.backend == "int64" and any(abs(v) > _INT64_MAX for v in vals):
            raise Overflow("int64 coefficient overflow in scaling")
        return GroupAlgebraVector(self.group, vals, self.backend)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraVector):
            return convolve(self, other)
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraVector):
            return NotImplemented
        return self.group == other.group and self.to_list() == other.to_list()

    def __hash__(self):
        return hash((self.group.key, tuple(self.to_list())))

    def __repr__(self):
        return f"GroupAlgebraVector({self.to_list()})"


def indicator(a: Subset, backend: str = "exact") -> GroupAlgebraVector:
    """[A]: coefficient 1 on members of ``a``, 0 elsewhere; [empty] = 0."""
    return GroupAlgebraVector(a.group, a.mask.astype(np.int64), backend)


def convolve(u: GroupAlgebraVector, v: GroupAlgebraVector) -> GroupAlgebraVector:
    """Product in ZG: result(g) = sum over x*y = g of u(x) v(y).

    Runs over nonzero coefficients only. Each row of the Cayley table is a
    permutation, so the indices touched for a fixed ``x`` are distinct and
    one vectorised add per ``x`` is exact.
    """
    if u.group != v.group:
        raise GroupMismatch("convolution of vectors over different groups")
    g = u.group
    backend = "int64" if u.backend == v.backend == "int64" else "exact"
    uc, vc = u.to_list(), v.to_list()
    if backend == "int64":
        bound = sum(abs(c) for c in uc) * sum(abs(c) for c in vc)
        if bound > _INT64_MAX:
            raise Overflow(f"convolution may reach {bound}, beyond int64")
        out = np.zeros(g.order, dtype=np.int64)
        vv = np.asarray(vc, dtype=np.int64)
    else:
        out = np.zeros(g.order, dtype=object)
        vv = np.empty(g.order, dtype=object)
        vv[:] = vc
    ynz = np.flatnonzero(np.asarray([c != 0 for c in vc], dtype=bool))
    if ynz.size:
        vnz = vv[ynz]
        table = g.mul_table
        for x, cx in enumerate(uc):
            if cx:
                out[table[x, ynz]] += cx * vnz
    return GroupAlgebraVector(g, out, backend)


def _fold(subsets: Sequence[Subset], backend: str) -> GroupAlgebraVector:
    return reduce(convolve, [indicator(s, backend) for s in subsets])


def full_indicator(group: FiniteGroup, backend: str = "exact") -> GroupAlgebraVector:
    return GroupAlgebraVector(group, [1] * group.order, backend)


# ---------------------------------------------------------------------------
# the counting identity


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


def d_of_family(b: SubsetFamily) -> int:
    """d(B) = (prod |A_i| - (-1)^n prod |~A_i|) / |G|, exactly.

    Divisibility by |G| always holds; a remainder raises
    :class:`InternalInconsistency`.
    """
    order = b.group.order
    sizes = b.sizes()
    numerator = math.prod(sizes) - _sign(len(sizes)) * math.prod(order - s for s in sizes)
    q, r = divmod(numerator, order)
    if r:
        raise InternalInconsistency(
            f"|G| = {order} does not divide {numerator} for sizes {sizes}"
        )
    return q


@dataclass(frozen=True)
class CountReport:
    """N_B and N_{B-bar} for a family, with the constant d(B)."""

    family: SubsetFamily
    counts: GroupAlgebraVector
    counts_complement: GroupAlgebraVector
    d: int

    def difference(self) -> list[int]:
        """N_B(g) - (-1)^n N_{B-bar}(g) for each g; constant by theory."""
        s = _sign(len(self.family))
        return [x - s * y for x, y in zip(self.counts.to_list(), self.counts_complement.to_list())]


def count_products(b: SubsetFamily, backend: str = "exact") -> CountReport:
    """Count factorisations of every element through the family and its complements.

    Raises :class:`InternalInconsistency` if the resulting counts break the
    identity N_B(g) - (-1)^n N_{B-bar}(g) = d(B) at any g, or if they do not
    sum to prod |A_i|.
    """
    counts = _fold(b.members, backend)
    counts_c = _fold(b.complements(), backend)
    d = d_of_family(b)
    report = CountReport(b, counts, counts_c, d)
    diff = report.difference()
    for g, v in enumerate(diff):
        if v != d:
            raise InternalInconsistency(
                f"N_B - (-1)^n N_Bbar = {v} != d(B) = {d} at element {b.group.labels[g]}"
            )
    if counts.total() != math.prod(b.sizes()):
        raise InternalInconsistency("counts do not sum to the product of sizes")
    return report


def count_products_bruteforce(b: SubsetFamily, cap: int = BRUTE_FORCE_CAP) -> GroupAlgebraVector:
    """N_B by enumerating every tuple of A_1 x ... x A_n.

    Each tuple is multiplied left to right and its product tallied; nothing
    is aggregated before the final tally. Raises :class:`TooLarge` when the
    number of tuples exceeds ``cap``.
    """
    total = math.prod(b.sizes())
    if total > cap:
        raise TooLarge(total, cap)
    table = b.group.mul_table
    prods = b.members[0].indices()
    for m in b.members[1:]:
        prods = table[prods[:, None], m.indices()[None, :]].ravel()
    tally = np.bincount(prods, minlength=b.group.order)
    return GroupAlgebraVector(b.group, tally.tolist())


# ---------------------------------------------------------------------------
# deciders


class Decision(enum.Enum):
    PRODUCT_IS_G = "ProductIsG"
    COMPLEMENT_PRODUCT_IS_G = "ComplementProductIsG"
    PRODUCTS_EQUAL = "ProductsEqual"
    INDETERMINATE = "Indeterminate"

    def __str__(self):
        return self.value


class Trichotomy(enum.Enum):
    ABOVE = "Above"    # |A1| + |A2| > |G|: A1 A2 = G
    BELOW = "Below"    # |A1| + |A2| < |G|: ~A1 ~A2 = G
    EQUAL = "Equal"    # |A1| + |A2| = |G|: A1 A2 = ~A1 ~A2

    def __str__(self):
        return self.value


def decide_by_sign(b: SubsetFamily) -> Decision:
    """Covering certificate from the sign of d(B).

    For even n, d > 0 forces every N_B(g) >= d > 0, so the product is G;
    d < 0 gives the same for the complements. d = 0 only happens for even
    n and then the two products coincide. Odd n gives no conclusion.
    """
    n = len(b)
    d = d_of_family(b)
    if d == 0:
        if n % 2:
            raise InternalInconsistency(f"d(B) = 0 with odd n = {n}")
        return Decision.PRODUCTS_EQUAL
    if n % 2:
        return Decision.INDETERMINATE
    return Decision.PRODUCT_IS_G if d > 0 else Decision.COMPLEMENT_PRODUCT_IS_G


def mann_pair(a1: Subset, a2: Subset) -> Trichotomy:
    """Branch on |A1| + |A2| - |G|, which is d((A1, A2))."""
    g = _same_group(a1, a2)
    if a1.cardinality == 0 or a2.cardinality == 0:
        raise EmptySubset("mann_pair needs nonempty subsets")
    excess = a1.cardinality + a2.cardinality - g.order
    if excess > 0:
        return Trichotomy.ABOVE
    if excess < 0:
        return Trichotomy.BELOW
    return Trichotomy.EQUAL


def theorem3_decide(b: SubsetFamily) -> Decision:
    """Covering certificate from pairwise size sums, for n >= 2.

    Any two members (not necessarily adjacent) with |A_i| + |A_j| > |G|
    force the product to be G; a pair with sum < |G| forces the product of
    complements to be G. When every pairwise sum equals |G| both outcomes
    occur, so the answer is :attr:`Decision.INDETERMINATE`.
    """
    if len(b) < 2:
        raise ValueError("theorem3_decide needs at least two subsets")
    order = b.group.order
    sizes = sorted(b.sizes())
    if sizes[-1] + sizes[-2] > order:
        return Decision.PRODUCT_IS_G
    if sizes[0] + sizes[1] < order:
        return Decision.COMPLEMENT_PRODUCT_IS_G
    return Decision.INDETERMINATE


def decision_holds(b: SubsetFamily, decision: Decision) -> bool:
    """Check a decision against the directly computed subset products."""
    if decision is Decision.PRODUCT_IS_G:
        return b.product().is_full()
    if decision is Decision.COMPLEMENT_PRODUCT_IS_G:
        return b.complement_product().is_full()
    if decision is Decision.PRODUCTS_EQUAL:
        return b.product() == b.complement_product()
    return True


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    """Result of checking the counting identity on one family.

    ``checks`` maps check names to outcomes (``None`` when skipped):
    ``identity`` (per-element difference equals d), ``total`` (counts sum
    to prod |A_i|), ``vector`` (the same identity as an equation in ZG) and
    ``oracle`` (convolution agrees with brute force).
    """

    family: str
    group: str
    n: int
    sizes: list[int]
    d: int
    passed: bool
    checks: dict[str, bool | None]
    witness: int | None = None
    witness_label: str | None = None
    failure: str | None = None
    counts: list[int] = field(default_factory=list)
    counts_complement: list[int] = field(default_factory=list)

    def to_dict(self, verbose: bool = False) -> dict:
        out = asdict(self)
        if not verbose:
            out.pop("counts")
            out.pop("counts_complement")
        return out

    def to_json(self, verbose: bool = False) -> str:
        return json.dumps(self.to_dict(verbose), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls(**json.loads(text))

    def to_text(self, verbose: bool = False) -> str:
        lines = [
            f"family: {self.family}",
            f"n: {self.n}",
            f"sizes: {' '.join(map(str, self.sizes))}",
            f"d(B): {self.d}",
        ]
        for name, ok in self.checks.items():
            lines.append(f"check {name}: {'skipped' if ok is None else ('pass' if ok else 'FAIL')}")
        if verbose:
            lines.append("counts: " + " ".join(map(str, self.counts)))
            lines.append("counts_complement: " + " ".join(map(str, self.counts_complement)))
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        if not self.passed:
            lines.append(f"failure: {self.failure}")
            if self.witness is not None:
                lines.append(f"witness: {self.witness_label} (index {self.witness})")
        return "\n".join(lines) + "\n"


def verify_theorem2(b: SubsetFamily, brute_cap: int = BRUTE_FORCE_CAP,
                    backend: str = "exact") -> VerificationReport:
    """Check the counting identity for ``b`` and report rather than raise.

    N_B is computed by convolution and, when prod |A_i| <= ``brute_cap``,
    by brute-force enumeration as well.
    """
    group = b.group
    n = len(b)
    s = _sign(n)
    d = d_of_family(b)
    counts_v = _fold(b.members, backend)
    comp_v = _fold(b.complements(), backend)
    counts, comp = counts_v.to_list(), comp_v.to_list()
    checks: dict[str, bool | None] = {}
    witness = failure = None

    bad = [g for g in range(group.order) if counts[g] - s * comp[g] != d]
    checks["identity"] = not bad
    if bad:
        witness, failure = bad[0], "identity"

    checks["total"] = sum(counts) == math.prod(b.sizes())
    if not checks["total"] and failure is None:
        failure = "total"

    lhs = counts_v - comp_v.scale(s)
    rhs = full_indicator(group).scale(d)
    checks["vector"] = lhs == rhs
    if not checks["vector"] and failure is None:
        failure = "vector"

    if math.prod(b.sizes()) <= brute_cap:
        brute = count_products_bruteforce(b, cap=brute_cap).to_list()
        diff = [g for g in range(group.order) if brute[g] != counts[g]]
        checks["oracle"] = not diff
        if diff and failure is None:
            witness, failure = diff[0], "oracle"
    else:
        checks["oracle"] = None

    return VerificationReport(
        family=b.describe(),
        group=group.name,
        n=n,
        sizes=list(b.sizes()),
        d=d,
        passed=all(v is not False for v in checks.values()),
        checks=checks,
        witness=witness,
        witness_label=None if witness is None else group.labels[witness],
        failure=failure,
        counts=counts,
        counts_complement=comp,
    )


@dataclass
class SweepSummary:
    group: str
    n: int
    families: int
    passed: int
    failures: list[VerificationReport]

    @property
    def ok(self) -> bool:
        return self.passed == self.families


def _verify_task(args):
    family, cap = args
    return verify_theorem2(family, brute_cap=cap)


def sweep_theorem2(group: FiniteGroup, n: int, count: int, seed: int = 0,
                   brute_cap: int = BRUTE_FORCE_CAP, workers: int | None = None) -> SweepSummary:
    """Verify the identity on ``count`` random families of length ``n``.

    Families are drawn up front from ``seed``, so the outcome is identical
    whether or not ``workers`` spreads the checks over processes.
    """
    rng = np.random.default_rng(seed)
    families = [random_family(group, n, rng) for _ in range(count)]
    tasks = [(f, brute_cap) for f in families]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_task, tasks, chunksize=16))
    else:
        reports = [_verify_task(t) for t in tasks]
    failures = [r for r in reports if not r.passed]
    return SweepSummary(group.name, n, count, count - len(failures), failures)
