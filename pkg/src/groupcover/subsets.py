"""Subsets of a finite group as boolean masks, and their products."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptySubset, GroupMismatch, Inconclusive, ParseError
from .group import FiniteGroup


class Subset:
    """Immutable subset of a group, stored as a boolean mask.

    ``a * b`` is the subset product, ``~a`` the complement and ``a.inverse()``
    the set of inverses.
    """

    __slots__ = ("group", "mask", "cardinality", "_key")

    def __init__(self, group: FiniteGroup, mask):
        mask = np.array(mask, dtype=bool)
        if mask.shape != (group.order,):
            raise ValueError(f"mask of shape {mask.shape} for group of order {group.order}")
        mask.flags.writeable = False
        self.group = group
        self.mask = mask
        self.cardinality = int(mask.sum())
        self._key = mask.tobytes()

    @classmethod
    def from_indices(cls, group: FiniteGroup, indices: Iterable[int | str]) -> "Subset":
        mask = np.zeros(group.order, dtype=bool)
        for i in indices:
            mask[group.index_of(i)] = True
        return cls(group, mask)

    @classmethod
    def full(cls, group: FiniteGroup) -> "Subset":
        return cls(group, np.ones(group.order, dtype=bool))

    @classmethod
    def empty(cls, group: FiniteGroup) -> "Subset":
        return cls(group, np.zeros(group.order, dtype=bool))

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def labels(self) -> list[str]:
        return [self.group.labels[i] for i in self.indices()]

    def is_empty(self) -> bool:
        return self.cardinality == 0

    def is_full(self) -> bool:
        return self.cardinality == self.group.order

    def __len__(self):
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices().tolist())

    def __contains__(self, item) -> bool:
        return bool(self.mask[self.group.index_of(item)])

    def __eq__(self, other):
        if not isinstance(other, Subset):
            return NotImplemented
        return self.group == other.group and self._key == other._key

    def __hash__(self):
        return hash((self.group.key, self._key))

    def __mul__(self, other: "Subset") -> "Subset":
        return product(self, other)

    def __invert__(self) -> "Subset":
        return complement(self)

    def __and__(self, other: "Subset") -> "Subset":
        _same_group(self, other)
        return Subset(self.group, self.mask & other.mask)

    def __or__(self, other: "Subset") -> "Subset":
        _same_group(self, other)
        return Subset(self.group, self.mask | other.mask)

    def inverse(self) -> "Subset":
        return inverse_set(self)

    def __reduce__(self):
        return (Subset, (self.group, np.array(self.mask)))

    def __repr__(self):
        body = ",".join(self.labels())
        return f"Subset({{{body}}} of {self.group.name})"


def _same_group(*subsets: Subset) -> FiniteGroup:
    g = subsets[0].group
    for s in subsets[1:]:
        if s.group != g:
            raise GroupMismatch(f"subsets of {g.name} and {s.group.name} combined")
    return g


def product(a: Subset, b: Subset) -> Subset:
    """The set {x*y : x in a, y in b}."""
    g = _same_group(a, b)
    out = np.zeros(g.order, dtype=bool)
    if a.cardinality == 0 or b.cardinality == 0:
        return Subset(g, out)
    ai, bi = a.indices(), b.indices()
    table = g.mul_table
    # walk the smaller operand and mark its translate of the larger one
    if len(ai) <= len(bi):
        for x in ai:
            out[table[x, bi]] = True
    else:
        for y in bi:
            out[table[ai, y]] = True
    return Subset(g, out)


def product_of(subsets: Sequence[Subset]) -> Subset:
    """Left fold of :func:`product` over a nonempty sequence."""
    if not subsets:
        raise ValueError("product of no subsets")
    return reduce(product, subsets)


def complement(a: Subset) -> Subset:
    return Subset(a.group, ~a.mask)


def inverse_set(a: Subset) -> Subset:
    out = np.zeros(a.group.order, dtype=bool)
    out[a.group.inv_table[a.indices()]] = True
    return Subset(a.group, out)


def power(a: Subset, k: int) -> Subset:
    """A^k, the k-fold product of ``a`` with itself."""
    if a.cardinality == 0:
        raise EmptySubset("power of an empty subset")
    if k < 1:
        raise ValueError(f"power exponent must be >= 1, got {k}")
    x = a
    for _ in range(k - 1):
        x = product(x, a)
    return x


@dataclass(frozen=True)
class StabilizationReport:
    """Outcome of iterating X <- X*A from X = A.

    ``k`` is the least step with A^k = G when ``stabilizes`` is true.
    Otherwise ``cycle = (start, period)`` records that A^(start+period) is
    A^start with G never reached. ``sizes[i]`` is |A^(i+1)| for every power
    visited.
    """

    stabilizes: bool
    k: int | None = None
    cycle: tuple[int, int] | None = None
    sizes: tuple[int, ...] = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {
            "stabilizes": self.stabilizes,
            "k": self.k,
            "cycle": list(self.cycle) if self.cycle else None,
            "sizes": list(self.sizes),
        }


def stabilizes_at_G(a: Subset, max_steps: int | None = None) -> StabilizationReport:
    """Decide whether the powers of ``a`` eventually equal the whole group.

    Once some A^k = G every later power is G too, since G*A = G. Powers
    form a deterministic sequence in a finite set, so the sequence either
    hits G or revisits an earlier subset; the latter is a proof that G is
    never reached. ``max_steps`` defaults to ``4 * |G|``.

    Raises :class:`Inconclusive` if neither happens within ``max_steps``.
    """
    if a.cardinality == 0:
        raise EmptySubset("stabilization of an empty subset")
    n = a.group.order
    if max_steps is None:
        max_steps = 4 * n
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    seen: dict[bytes, int] = {}
    sizes = []
    x = a
    for step in range(1, max_steps + 1):
        sizes.append(x.cardinality)
        if x.cardinality == n:
            return StabilizationReport(True, k=step, sizes=tuple(sizes))
        # keyed by the full mask bytes, so equal hashes never fake a cycle
        if x._key in seen:
            start = seen[x._key]
            sizes.pop()
            return StabilizationReport(False, cycle=(start, step - start), sizes=tuple(sizes))
        seen[x._key] = step
        x = product(x, a)
    raise Inconclusive(max_steps)


class SubsetFamily:
    """Ordered tuple (A_1, ..., A_n) of nonempty subsets of one group."""

    __slots__ = ("group", "members")

    def __init__(self, members: Iterable[Subset]):
        members = tuple(members)
        if not members:
            raise ValueError("a subset family needs at least one member")
        self.group = _same_group(*members)
        for i, m in enumerate(members):
            if m.cardinality == 0:
                raise EmptySubset(f"family member {i} is empty")
        self.members = members

    @classmethod
    def from_indices(cls, group: FiniteGroup, *sets: Iterable[int | str]) -> "SubsetFamily":
        return cls(Subset.from_indices(group, s) for s in sets)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]

    def complements(self) -> tuple[Subset, ...]:
        """(~A_1, ..., ~A_n); members may be empty, so this is not a family."""
        return tuple(complement(m) for m in self.members)

    def sizes(self) -> tuple[int, ...]:
        return tuple(m.cardinality for m in self.members)

    def product(self) -> Subset:
        return product_of(self.members)

    def complement_product(self) -> Subset:
        return product_of(self.complements())

    def permuted(self, order: Sequence[int]) -> "SubsetFamily":
        return SubsetFamily(self.members[i] for i in order)

    def describe(self) -> str:
        parts = ["{" + ",".join(m.labels()) + "}" for m in self.members]
        return f"{self.group.name}: (" + ", ".join(parts) + ")"

    def __eq__(self, other):
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"SubsetFamily({self.describe()})"


def random_subset(group: FiniteGroup, rng: np.random.Generator) -> Subset:
    """Uniformly random nonempty subset (rejection from all 2^n masks)."""
    while True:
        mask = rng.integers(0, 2, size=group.order).astype(bool)
        if mask.any():
            return Subset(group, mask)


def random_family(group: FiniteGroup, n: int, rng: np.random.Generator) -> SubsetFamily:
    return SubsetFamily(random_subset(group, rng) for _ in range(n))


def parse_subset(group: FiniteGroup, text: str) -> Subset:
    """Parse a subset literal.

    ``0,1,5`` lists elements by label or index, ``all`` is G, ``none`` (or
    ``{}``) is the empty set and ``comp:<literal>`` is a complement. Labels
    win over indices when a token is both.
    """
    src = text
    text = text.strip()
    offset = len(src) - len(src.lstrip())
    if text.startswith("comp:"):
        return complement(parse_subset(group, " " * (offset + 5) + text[5:]))
    if text in ("all", "G"):
        return Subset.full(group)
    if text in ("none", "{}", ""):
        return Subset.empty(group)
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
        offset += 1
    mask = np.zeros(group.order, dtype=bool)
    pos = offset
    for tok in text.split(","):
        stripped = tok.strip()
        col = pos + (len(tok) - len(tok.lstrip())) + 1
        if not stripped:
            raise ParseError("empty element in subset literal", column=col, source=src)
        try:
            idx = group.index_of(stripped)
        except KeyError:
            try:
                idx = group.index_of(int(stripped))
            except (ValueError, IndexError):
                raise ParseError(f"unknown element {stripped!r} in {group.name}",
                                 column=col, source=src) from None
        mask[idx] = True
        pos += len(tok) + 1
    return Subset(group, mask)


def format_subset(a: Subset) -> str:
    if a.is_full():
        return "G"
    return "{" + ",".join(a.labels()) + "}"
