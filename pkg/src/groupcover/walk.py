"""Probabilities on a finite group and convergence of their convolution powers."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import EmptySubset, GroupMismatch
from .group import FiniteGroup
from .subsets import StabilizationReport, Subset, product, stabilizes_at_G

FLOAT_SUM_TOL = 1e-12


class ProbDist:
    """A probability on a group.

    ``backend="exact"`` keeps :class:`fractions.Fraction` weights and
    requires them to sum to exactly 1; ``backend="float"`` uses float64 and
    allows a 1e-12 slack.
    """

    __slots__ = ("group", "weights", "backend")

    def __init__(self, group: FiniteGroup, weights: Sequence, backend: str = "exact"):
        if len(weights) != group.order:
            raise ValueError(f"{len(weights)} weights for group of order {group.order}")
        if backend == "exact":
            arr = np.empty(group.order, dtype=object)
            arr[:] = [Fraction(w) for w in weights]
            total = sum(arr, Fraction(0))
            if total != 1:
                raise ValueError(f"weights sum to {total}, not 1")
        elif backend == "float":
            arr = np.asarray(weights, dtype=np.float64)
            if abs(arr.sum() - 1.0) > FLOAT_SUM_TOL:
                raise ValueError(f"weights sum to {arr.sum()!r}, not 1")
        else:
            raise ValueError(f"unknown backend {backend!r}")
        if any(w < 0 for w in arr):
            raise ValueError("weights must be nonnegative")
        arr.flags.writeable = False
        self.group = group
        self.weights = arr
        self.backend = backend

    def __getitem__(self, g):
        return self.weights[self.group.index_of(g)]

    def __eq__(self, other):
        if not isinstance(other, ProbDist):
            return NotImplemented
        return self.group == other.group and list(self.weights) == list(other.weights)

    def __repr__(self):
        return f"ProbDist({[str(w) for w in self.weights]})"

    def as_float(self) -> "ProbDist":
        return ProbDist(self.group, [float(w) for w in self.weights], "float")


def uniform(group: FiniteGroup, backend: str = "exact") -> ProbDist:
    """U(g) = 1/|G| for every g."""
    w = Fraction(1, group.order) if backend == "exact" else 1.0 / group.order
    return ProbDist(group, [w] * group.order, backend)


def uniform_on(a: Subset, backend: str = "exact") -> ProbDist:
    if a.cardinality == 0:
        raise EmptySubset("uniform distribution on an empty subset")
    w = Fraction(1, a.cardinality) if backend == "exact" else 1.0 / a.cardinality
    zero = Fraction(0) if backend == "exact" else 0.0
    return ProbDist(a.group, [w if m else zero for m in a.mask], backend)


def point_mass(group: FiniteGroup, g: int | str = 0, backend: str = "exact") -> ProbDist:
    i = group.index_of(g)
    return ProbDist(group, [int(j == i) for j in range(group.order)], backend)


def carrier(p: ProbDist) -> Subset:
    """The support {g : P(g) != 0}."""
    return Subset(p.group, np.array([w != 0 for w in p.weights], dtype=bool))


def convolve_prob(p: ProbDist, q: ProbDist) -> ProbDist:
    """(p * q)(g) = sum over x*y = g of p(x) q(y)."""
    if p.group != q.group:
        raise GroupMismatch("distributions on different groups")
    g = p.group
    backend = "exact" if p.backend == q.backend == "exact" else "float"
    if backend == "exact":
        out = np.empty(g.order, dtype=object)
        out[:] = [Fraction(0)] * g.order
        qw = q.weights
    else:
        out = np.zeros(g.order)
        qw = np.asarray([float(w) for w in q.weights])
    ynz = np.flatnonzero([w != 0 for w in q.weights])
    qnz = qw[ynz]
    table = g.mul_table
    for x, px in enumerate(p.weights):
        if px:
            # table rows are permutations: no repeated targets within a row
            out[table[x, ynz]] += (px if backend == "exact" else float(px)) * qnz
    return _trusted(g, out, backend)


def _trusted(group: FiniteGroup, weights: np.ndarray, backend: str) -> ProbDist:
    # skip re-validation for results of convolution; the sum is preserved
    d = ProbDist.__new__(ProbDist)
    weights.flags.writeable = False
    d.group, d.weights, d.backend = group, weights, backend
    return d


def n_fold(p: ProbDist, n: int, squaring: bool = False) -> ProbDist:
    """P^(n). ``squaring=True`` uses repeated squaring (final value only)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not squaring:
        out = p
        for _ in range(n - 1):
            out = convolve_prob(out, p)
        return out
    result = None
    base = p
    while n:
        if n & 1:
            result = base if result is None else convolve_prob(result, base)
        n >>= 1
        if n:
            base = convolve_prob(base, base)
    return result


def tv_distance(p: ProbDist, q: ProbDist):
    """Total variation distance 1/2 sum |p(g) - q(g)|."""
    if p.group != q.group:
        raise GroupMismatch("distributions on different groups")
    if p.backend == q.backend == "exact":
        return sum((abs(a - b) for a, b in zip(p.weights, q.weights)), Fraction(0)) / 2
    return 0.5 * float(sum(abs(float(a) - float(b)) for a, b in zip(p.weights, q.weights)))


def tv_to_uniform(p: ProbDist):
    return tv_distance(p, uniform(p.group, p.backend))


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{x:.12g}"


def _to_json_value(x):
    # exact: "p/q" strings; float: JSON numbers (repr round-trips exactly)
    return str(x) if isinstance(x, Fraction) else float(x)


def _from_json_value(v, backend: str):
    return Fraction(v) if backend == "exact" else float(v)


@dataclass
class ConvergenceReport:
    """TV distance of P^(n) to uniform alongside carrier stabilization.

    ``tv_trace[i]`` is the distance at n = i + 1. ``carriers_match`` records
    whether carrier(P^(n)) = A^n held at every computed n.
    """

    converged: bool
    n_at_tol: int | None
    tol: float
    tv_trace: list = field(repr=False)
    stabilization: StabilizationReport
    carriers_match: bool
    carrier_sizes: list[int] = field(repr=False)
    backend: str = "exact"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("n,tv\n")
        for i, tv in enumerate(self.tv_trace, 1):
            buf.write(f"{i},{_fmt(tv)}\n")
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "converged": self.converged,
            "n_at_tol": self.n_at_tol,
            "tol": self.tol,
            "steps": len(self.tv_trace),
            "final_tv": _to_json_value(self.tv_trace[-1]) if self.tv_trace else None,
            "tv_trace": [_to_json_value(t) for t in self.tv_trace],
            "stabilization": self.stabilization.to_dict(),
            "carriers_match": self.carriers_match,
            "carrier_sizes": list(self.carrier_sizes),
            "backend": self.backend,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ConvergenceReport":
        d = json.loads(text)
        st = d["stabilization"]
        stab = StabilizationReport(
            st["stabilizes"], st["k"], tuple(st["cycle"]) if st["cycle"] else None,
            tuple(st["sizes"]),
        )
        return cls(
            converged=d["converged"],
            n_at_tol=d["n_at_tol"],
            tol=d["tol"],
            tv_trace=[_from_json_value(t, d["backend"]) for t in d["tv_trace"]],
            stabilization=stab,
            carriers_match=d["carriers_match"],
            carrier_sizes=d["carrier_sizes"],
            backend=d["backend"],
        )


def convergence_probe(p: ProbDist, tol: float, max_n: int = 1000,
                      max_steps: int | None = None) -> ConvergenceReport:
    """Track tv(P^(n), U) for n = 1..max_n, stopping once it drops below ``tol``.

    Independently runs :func:`stabilizes_at_G` on the carrier of ``p``. The
    two findings are reported side by side; neither is derived from the
    other.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    a = carrier(p)
    stab = stabilizes_at_G(a, max_steps)
    u = uniform(p.group, p.backend)
    trace = []
    sizes = []
    match = True
    cur, a_pow = p, a
    n_at = None
    for n in range(1, max_n + 1):
        if n > 1:
            cur = convolve_prob(cur, p)
            a_pow = product(a_pow, a)
        supp = carrier(cur)
        match = match and supp == a_pow
        sizes.append(supp.cardinality)
        tv = tv_distance(cur, u)
        trace.append(tv)
        if tv < tol:
            n_at = n
            break
    return ConvergenceReport(
        converged=n_at is not None,
        n_at_tol=n_at,
        tol=tol,
        tv_trace=trace,
        stabilization=stab,
        carriers_match=match,
        carrier_sizes=sizes,
        backend=p.backend,
    )

