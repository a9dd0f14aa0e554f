"""Finite groups as explicit Cayley tables.

Every group is stored as an ``order x order`` multiplication table of element
indices with the identity normalised to index 0. Constructors for the usual
families (cyclic, elementary abelian, dihedral, symmetric, direct products,
permutation-generator closures) all go through the same validation as
user-supplied tables.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ClosureTooLarge,
    GroupMismatch,
    InvalidSpec,
    MalformedTable,
    NotAGroup,
    ParseError,
)

#: Default cap on the number of elements produced by generator closure.
DEFAULT_CLOSURE_CAP = 10**6
#: Largest order whose full Cayley table we are willing to materialise.
MAX_TABLE_ORDER = 8192


def _index_dtype(order: int) -> np.dtype:
    return np.min_scalar_type(max(order - 1, 0))


class FiniteGroup:
    """An immutable finite group given by its Cayley table.

    Use :func:`from_cayley_table` or one of the constructors rather than
    calling this directly; the initializer trusts its input.
    """

    __slots__ = ("order", "mul_table", "inv_table", "labels", "name", "_key", "_label_index")

    def __init__(self, mul_table: np.ndarray, inv_table: np.ndarray,
                 labels: Sequence[str], name: str = "group"):
        mul_table = np.ascontiguousarray(mul_table, dtype=_index_dtype(len(mul_table)))
        inv_table = np.ascontiguousarray(inv_table, dtype=mul_table.dtype)
        mul_table.flags.writeable = False
        inv_table.flags.writeable = False
        self.order = int(mul_table.shape[0])
        self.mul_table = mul_table
        self.inv_table = inv_table
        self.labels = tuple(labels)
        self.name = name
        digest = hashlib.sha1(mul_table.astype(np.int64).tobytes()).hexdigest()
        self._key = (self.order, digest)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    def __reduce__(self):
        return (FiniteGroup, (np.array(self.mul_table), np.array(self.inv_table),
                              self.labels, self.name))

    # identity is always index 0 after normalisation
    @property
    def identity_index(self) -> int:
        return 0

    @property
    def key(self) -> tuple[int, str]:
        """Identifier compared on every cross-object operation."""
        return self._key

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # element-level API

    def element(self, ref: int | str) -> "GroupElement":
        """Look up an element by index or by label."""
        return GroupElement(self, self.index_of(ref))

    def index_of(self, ref: int | str) -> int:
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            i = int(ref)
            if not 0 <= i < self.order:
                raise IndexError(f"element index {i} out of range for order {self.order}")
            return i
        if isinstance(ref, str) and ref in self._label_index:
            return self._label_index[ref]
        raise KeyError(f"no element {ref!r} in {self.name}")

    def elements(self) -> list["GroupElement"]:
        return [GroupElement(self, i) for i in range(self.order)]

    def identity(self) -> "GroupElement":
        return GroupElement(self, 0)

    def mul(self, g: "GroupElement", h: "GroupElement") -> "GroupElement":
        self._check_member(g)
        self._check_member(h)
        return GroupElement(self, int(self.mul_table[g.index, h.index]))

    def inv(self, g: "GroupElement") -> "GroupElement":
        self._check_member(g)
        return GroupElement(self, int(self.inv_table[g.index]))

    def element_order(self, g: int | "GroupElement") -> int:
        i = g.index if isinstance(g, GroupElement) else int(g)
        k, x = 1, i
        while x != 0:
            x = int(self.mul_table[x, i])
            k += 1
        return k

    def _check_member(self, g: "GroupElement") -> None:
        if not isinstance(g, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(g).__name__}")
        if g.group != self:
            raise GroupMismatch(f"element of {g.group.name} used with {self.name}")

    def label(self, i: int) -> str:
        return self.labels[i]


@dataclass(frozen=True)
class GroupElement:
    """An element of a specific group, identified by its table index."""

    group: FiniteGroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise IndexError(f"element index {self.index} out of range")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.mul(self, other)

    def inverse(self) -> "GroupElement":
        return self.group.inv(self)

    def __repr__(self):
        return f"<{self.group.labels[self.index]}>"


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """Product of two elements of the same group."""
    if g.group != h.group:
        raise GroupMismatch("elements belong to different groups")
    return g.group.mul(g, h)


def inv(g: GroupElement) -> GroupElement:
    return g.group.inv(g)


def identity(group: FiniteGroup) -> GroupElement:
    return group.identity()


# ---------------------------------------------------------------------------
# validation


def _first_duplicate(line: np.ndarray) -> tuple[int, int]:
    seen: dict[int, int] = {}
    for pos, v in enumerate(line.tolist()):
        if v in seen:
            return seen[v], pos
        seen[v] = pos
    raise AssertionError("no duplicate found")  # pragma: no cover


def _check_latin(table: np.ndarray) -> None:
    n = len(table)
    full = np.arange(n)
    rows_ok = (np.sort(table, axis=1) == full).all(axis=1)
    if not rows_ok.all():
        a = int(np.argmin(rows_ok))
        b, c = _first_duplicate(table[a])
        raise NotAGroup(
            f"row {a} is not a permutation: {a}*{b} = {a}*{c} = {table[a, b]}",
            witness=(a, b, c),
        )
    cols_ok = (np.sort(table, axis=0) == full[:, None]).all(axis=0)
    if not cols_ok.all():
        c = int(np.argmin(cols_ok))
        a, b = _first_duplicate(table[:, c])
        raise NotAGroup(
            f"column {c} is not a permutation: {a}*{c} = {b}*{c} = {table[a, c]}",
            witness=(a, b, c),
        )


def _find_identity(table: np.ndarray) -> int:
    full = np.arange(len(table))
    left = np.flatnonzero((table == full).all(axis=1))
    for e in left.tolist():
        if (table[:, e] == full).all():
            return e
    raise NotAGroup("no two-sided identity element")


def _inverse_table(table: np.ndarray, e: int) -> np.ndarray:
    # Latin rows give exactly one right inverse per element
    right = np.argmax(table == e, axis=1)
    left_ok = table[right, np.arange(len(table))] == e
    if not left_ok.all():
        g = int(np.argmin(left_ok))
        h = int(right[g])
        raise NotAGroup(
            f"element {g} has right inverse {h} but {h}*{g} != identity",
            witness=(g, h),
        )
    return right


def _generating_set(table: np.ndarray, e: int) -> list[int]:
    """Greedy generators: every element is a left-nested word in them."""
    n = len(table)
    gens: list[int] = []
    reached = np.zeros(n, dtype=bool)
    reached[e] = True
    while not reached.all():
        gens.append(int(np.argmin(reached)))
        frontier = np.flatnonzero(reached)
        while frontier.size:
            nxt = np.unique(table[np.ix_(frontier, gens)])
            nxt = nxt[~reached[nxt]]
            reached[nxt] = True
            frontier = nxt
    return gens


def _check_associative(table: np.ndarray, e: int) -> None:
    # Light's test: elements a with (x*a)*y == x*(a*y) for all x, y form a
    # submagma, so checking a generating set decides associativity exactly.
    for a in _generating_set(table, e):
        lhs = table[table[:, a]]          # (x*a)*y indexed [x, y]
        rhs = table[:, table[a]]          # x*(a*y) indexed [x, y]
        bad = lhs != rhs
        if bad.any():
            x, y = np.argwhere(bad)[0].tolist()
            raise NotAGroup(f"({x}*{a})*{y} != {x}*({a}*{y})", witness=(x, a, y))


def from_cayley_table(table, labels: Sequence[str] | None = None, *,
                      name: str = "table") -> FiniteGroup:
    """Validate a Cayley table and build a group from it.

    Row ``g``, column ``h`` of ``table`` holds the index of ``g*h``. The
    identity is moved to index 0 by swapping it with element 0; labels (by
    default the original indices as strings) follow their elements, so
    ``labels`` always names elements as the caller knew them.

    Associativity is decided exactly with Light's test over a generating
    set, so no triple sampling is involved at any order.
    """
    try:
        arr = np.asarray(table)
    except (ValueError, TypeError) as exc:
        raise MalformedTable(f"cannot read table: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"table must be a nonempty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.dtype.kind not in "iu":
        if arr.dtype.kind == "f" and np.all(np.mod(arr, 1) == 0):
            arr = arr.astype(np.int64)
        else:
            raise MalformedTable(f"table entries must be integers, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() >= n:
        bad = np.argwhere((arr < 0) | (arr >= n))[0].tolist()
        raise MalformedTable(f"entry {arr[tuple(bad)]} at {tuple(bad)} outside 0..{n - 1}")
    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = [str(s) for s in labels]
    if len(labels) != n:
        raise MalformedTable(f"{len(labels)} labels for {n} elements")
    if len(set(labels)) != n:
        raise MalformedTable("labels must be distinct")
    if any(not s or any(ch.isspace() for ch in s) for s in labels):
        raise MalformedTable("labels must be nonempty and whitespace-free")

    arr = arr.astype(np.intp)
    _check_latin(arr)
    e = _find_identity(arr)
    inv_t = _inverse_table(arr, e)
    _check_associative(arr, e)

    if e != 0:
        perm = np.arange(n)
        perm[[0, e]] = perm[[e, 0]]          # old index -> new index (an involution)
        arr = perm[arr[np.ix_(perm, perm)]]
        inv_t = perm[inv_t[perm]]
        labels = [labels[i] for i in perm]
    return FiniteGroup(arr, inv_t, labels, name=name)


# ---------------------------------------------------------------------------
# constructors


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def _check_table_size(order: int) -> None:
    if order > MAX_TABLE_ORDER:
        raise ClosureTooLarge(
            f"order {order} exceeds the Cayley-table limit {MAX_TABLE_ORDER}"
        )


def cyclic(n: int) -> FiniteGroup:
    """The cyclic group Z_n written additively: element i is i mod n."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidSpec(f"cyclic order must be a positive integer, got {n!r}")
    _check_table_size(n)
    i = np.arange(n)
    table = (i[:, None] + i[None, :]) % n
    return from_cayley_table(table, [str(k) for k in range(n)], name=f"cyclic:{n}")


def _power_word(gens: Sequence[str], exps: Sequence[int]) -> str:
    parts = []
    for g, x in zip(gens, exps):
        if x == 1:
            parts.append(g)
        elif x > 1:
            parts.append(f"{g}^{x}")
    return "".join(parts) or "e"


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    """(Z_p)^k with generators labelled a, b, c, ...

    Element index ``sum(x_i * p**i)`` stands for ``a^x_0 b^x_1 ...``, so for
    ``elementary_abelian(2, 2)`` the elements are e, a, b, ab.
    """
    if not _is_prime(int(p)):
        raise InvalidSpec(f"elementary abelian group needs a prime p, got {p}")
    if k < 1:
        raise InvalidSpec(f"rank must be at least 1, got {k}")
    n = p**k
    _check_table_size(n)
    idx = np.arange(n)
    digits = np.stack([(idx // p**i) % p for i in range(k)], axis=1)
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    weights = p ** np.arange(k)
    table = summed @ weights
    letters = "abcdfghijklmnopqrstuvwxyz"      # no "e": that names the identity
    gens = list(letters[:k]) if k <= len(letters) else [f"x{i}." for i in range(k)]
    labels = [_power_word(gens, row) for row in digits.tolist()]
    return from_cayley_table(table, labels, name=f"ea:{p},{k}")


def dihedral(m: int) -> FiniteGroup:
    """Symmetries of the regular m-gon, order 2m.

    Indices ``0..m-1`` are rotations r^i, ``m..2m-1`` are reflections s r^i.
    """
    if m < 1:
        raise InvalidSpec(f"dihedral parameter must be positive, got {m}")
    _check_table_size(2 * m)
    idx = np.arange(2 * m)
    refl = idx >= m
    rot = idx % m
    # (s^a r^i)(s^b r^j) = s^(a+b) r^((-1)^b i + j)
    sign = np.where(refl, -1, 1)
    exp = (sign[None, :] * rot[:, None] + rot[None, :]) % m
    flip = refl[:, None] ^ refl[None, :]
    table = exp + m * flip
    labels = ["e"] + [f"r^{i}" if i > 1 else "r" for i in range(1, m)]
    labels += ["s"] + [f"sr^{i}" if i > 1 else "sr" for i in range(1, m)]
    return from_cayley_table(table, labels, name=f"dihedral:{m}")


def _perm_label(p: Sequence[int]) -> str:
    seen = set()
    sep = "" if len(p) <= 10 else "."
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x))
            x = p[x]
        cycles.append("(" + sep.join(cyc) + ")")
    return "".join(cycles) or "e"


def _table_from_permutations(perms: np.ndarray) -> np.ndarray:
    """Cayley table of a closed set of permutations (rows are images).

    The product g*h is the composite "apply h, then g".
    """
    n, d = perms.shape
    perms = np.ascontiguousarray(perms, dtype=np.uint8 if d <= 256 else np.uint32)
    void = np.dtype((np.void, perms.dtype.itemsize * d))
    keys = perms.view(void).ravel()
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.intp)
    for g in range(n):
        comp = np.ascontiguousarray(perms[g][perms])   # row h: x -> g(h(x))
        ck = comp.view(void).ravel()
        pos = np.searchsorted(sorted_keys, ck)
        if (pos >= n).any() or (sorted_keys[np.minimum(pos, n - 1)] != ck).any():
            raise NotAGroup("permutation set is not closed under composition")
        table[g] = order[pos]
    return table


def symmetric(m: int) -> FiniteGroup:
    """The symmetric group on {0, ..., m-1}, elements in lexicographic order."""
    if not 0 <= m <= 8:
        raise InvalidSpec(f"symmetric(m) supports 0 <= m <= 8, got {m}")
    _check_table_size(math.factorial(m))
    if m == 0:
        return from_cayley_table([[0]], ["e"], name="sym:0")
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.uint8)
    table = _table_from_permutations(perms)
    labels = [_perm_label(p) for p in perms.tolist()]
    return from_cayley_table(table, labels, name=f"sym:{m}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with (a, b) stored at index ``a * |H| + b``."""
    n1, n2 = g.order, h.order
    _check_table_size(n1 * n2)
    tg = g.mul_table.astype(np.intp)
    th = h.mul_table.astype(np.intp)
    table = (tg[:, None, :, None] * n2 + th[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    labels = [f"{a}|{b}" for a in g.labels for b in h.labels]
    return from_cayley_table(table, labels, name=f"prod({g.name},{h.name})")


def from_permutations(generators: Iterable[Sequence[int]], degree: int | None = None,
                      max_order: int = DEFAULT_CLOSURE_CAP,
                      name: str = "perm") -> FiniteGroup:
    """Group generated by permutations given as image lists.

    Closure is a plain breadth-first search multiplying every new element by
    every generator. Raises :class:`ClosureTooLarge` once more than
    ``max_order`` elements appear.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        degree = max((len(g) for g in gens), default=0)
    padded = []
    for g in gens:
        if sorted(g) != list(range(len(g))):
            raise InvalidSpec(f"{g} is not a permutation")
        padded.append(g + tuple(range(len(g), degree)))
    ident = tuple(range(degree))
    seen = {ident: 0}
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in padded:
                y = tuple(x[i] for i in s)      # x after s
                if y not in seen:
                    seen[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
                    if len(elems) > max_order:
                        raise ClosureTooLarge(
                            f"closure exceeded {max_order} elements"
                        )
        frontier = nxt
    _check_table_size(len(elems))
    perms = np.array(elems, dtype=np.intp).reshape(len(elems), degree)
    table = _table_from_permutations(perms)
    labels = [_perm_label(p) for p in elems]
    return from_cayley_table(table, labels, name=name)


def cycles_to_permutation(cycles: Sequence[Sequence[int]], degree: int) -> list[int]:
    """Image list of a product of disjoint-or-not cycles (rightmost applied first)."""
    perm = list(range(degree))
    for cyc in reversed(cycles):
        step = list(range(degree))
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            step[a] = b
        perm = [step[x] for x in perm]
    return perm


# ---------------------------------------------------------------------------
# table files


def read_table_file(path: str | Path) -> FiniteGroup:
    """Read the plain-text Cayley table format.

    ::

        order 4
        0 1 2 3
        1 0 3 2
        2 3 0 1
        3 2 1 0
        labels e a b ab

    Blank lines and ``#`` comments are ignored.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}", source=str(path)) from None
    return parse_table_text(text, source=str(path))


def parse_table_text(text: str, source: str | None = None) -> FiniteGroup:
    lines = [(no, ln.split("#", 1)[0]) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, ln) for no, ln in lines if ln.strip()]
    if not lines:
        raise ParseError("empty table file", source=source)
    no, first = lines[0]
    head = first.split()
    if len(head) != 2 or head[0] != "order":
        raise ParseError("expected 'order N'", line=no, column=_col(first, head[0] if head else ""), source=source)
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad order {head[1]!r}", line=no, column=_col(first, head[1]), source=source) from None
    if n < 1:
        raise ParseError("order must be positive", line=no, column=_col(first, head[1]), source=source)
    rows = []
    labels = None
    for no, ln in lines[1:]:
        toks = ln.split()
        if toks[0] == "labels":
            if labels is not None:
                raise ParseError("duplicate labels line", line=no, column=_col(ln, "labels"), source=source)
            labels = toks[1:]
            if len(labels) != n:
                raise ParseError(f"expected {n} labels, got {len(labels)}", line=no,
                                 column=_col(ln, "labels"), source=source)
            continue
        if labels is not None:
            raise ParseError("table rows must precede the labels line", line=no, column=1, source=source)
        if len(rows) == n:
            raise ParseError(f"more than {n} table rows", line=no, column=1, source=source)
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", line=no, column=1, source=source)
        row = []
        offset = 0
        for tok in toks:
            offset = ln.index(tok, offset)
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"bad entry {tok!r}", line=no, column=offset + 1, source=source) from None
            if not 0 <= v < n:
                raise ParseError(f"entry {v} outside 0..{n - 1}", line=no, column=offset + 1, source=source)
            row.append(v)
            offset += len(tok)
        rows.append(row)
    if len(rows) != n:
        raise ParseError(f"expected {n} table rows, got {len(rows)}", line=lines[-1][0], column=1, source=source)
    name = f"table:{source}" if source else "table"
    return from_cayley_table(rows, labels, name=name)


def format_table_text(group: FiniteGroup, with_labels: bool = True) -> str:
    """Serialise a group in the format read by :func:`read_table_file`."""
    out = [f"order {group.order}"]
    out += [" ".join(str(int(v)) for v in row) for row in group.mul_table]
    if with_labels:
        out.append("labels " + " ".join(group.labels))
    return "\n".join(out) + "\n"


def write_table_file(group: FiniteGroup, path: str | Path) -> None:
    Path(path).write_text(format_table_text(group))


def _col(line: str, token: str) -> int:
    pos = line.find(token) if token else -1
    return pos + 1 if pos >= 0 else 1


# ---------------------------------------------------------------------------
# descriptor strings


class _DescriptorParser:
    """Recursive-descent parser for group descriptor strings.

    Grammar (whitespace allowed between tokens)::

        desc  := 'prod' '(' desc (',' desc)+ ')'
               | 'cyclic:' INT | 'ea:' INT ',' INT | 'dihedral:' INT
               | 'sym:' INT | 'table:' PATH | 'perm:' '[' gens ']'
        gens  := gen (';' gen)*        gen := cycle+ | 'e'
        cycle := '(' INT ((',' | ' ') INT)* ')'
    """

    def __init__(self, text: str, closure_cap: int):
        self.text = text
        self.pos = 0
        self.closure_cap = closure_cap

    def error(self, message: str, pos: int | None = None) -> ParseError:
        p = self.pos if pos is None else pos
        return ParseError(message, line=1, column=p + 1, source=self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> FiniteGroup:
        g = self.desc()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected trailing text {self.text[self.pos:]!r}")
        return g

    def desc(self) -> FiniteGroup:
        start = self.pos
        name = self.word()
        if name == "prod":
            self.expect("(")
            parts = [self.desc()]
            while self.peek() == ",":
                self.pos += 1
                parts.append(self.desc())
            self.expect(")")
            if len(parts) < 2:
                raise self.error("prod needs at least two factors", start)
            return reduce(direct_product, parts)
        if not name:
            raise self.error("expected a group descriptor")
        self.expect(":")
        argpos = self.pos
        try:
            if name in ("cyclic", "c", "z"):
                return cyclic(self.integer())
            if name in ("ea", "elementary_abelian"):
                p = self.integer()
                self.expect(",")
                return elementary_abelian(p, self.integer())
            if name in ("dihedral", "d"):
                return dihedral(self.integer())
            if name in ("sym", "symmetric", "s"):
                return symmetric(self.integer())
            if name == "table":
                return self.table_path()
            if name == "perm":
                return self.perm()
        except (InvalidSpec, ClosureTooLarge) as exc:
            raise type(exc)(f"column {argpos + 1}: {exc}") from None
        raise self.error(f"unknown group constructor {name!r}", start)

    def table_path(self) -> FiniteGroup:
        self.skip_ws()
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch in ",)" and depth == 0:
                break
            depth += ch == "("
            depth -= ch == ")"
            self.pos += 1
        path = self.text[start:self.pos].strip()
        if not path:
            raise self.error("expected a file path", start)
        return read_table_file(path)

    def perm(self) -> FiniteGroup:
        self.expect("[")
        gens: list[list[list[int]]] = []
        if self.peek() != "]":
            gens.append(self.generator())
            while self.peek() == ";":
                self.pos += 1
                gens.append(self.generator())
        self.expect("]")
        degree = 1 + max((x for g in gens for c in g for x in c), default=0)
        perms = [cycles_to_permutation(g, degree) for g in gens]
        return from_permutations(perms, degree, max_order=self.closure_cap,
                                 name=f"perm:{self.text}")

    def generator(self) -> list[list[int]]:
        if self.peek() == "e":
            self.pos += 1
            return []
        cycles = []
        while self.peek() == "(":
            self.pos += 1
            cyc = [self.integer()]
            while self.peek() not in (")", ""):
                if self.peek() == ",":
                    self.pos += 1
                cyc.append(self.integer())
            self.expect(")")
            if len(set(cyc)) != len(cyc):
                raise self.error("repeated point in cycle")
            cycles.append(cyc)
        if not cycles:
            raise self.error("expected a cycle '(...)' or 'e'")
        return cycles


def make_group(spec: str | FiniteGroup, closure_cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Build a group from a descriptor string such as ``"ea:3,3"``.

    Accepted forms: ``cyclic:6``, ``ea:3,3``, ``dihedral:4``, ``sym:3``,
    ``prod(cyclic:2,cyclic:2)``, ``table:PATH`` and
    ``perm:[(0,1,2);(0,1)]`` (generators in cycle notation, ``;``-separated).
    A :class:`FiniteGroup` is returned unchanged.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if not isinstance(spec, str):
        raise InvalidSpec(f"group descriptor must be a string, got {type(spec).__name__}")
    return _DescriptorParser(spec, closure_cap).parse()
