import itertools
from pathlib import Path

import numpy as np
import pytest

from groupcover import (
    Subset,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    read_table_file,
    symmetric,
)

DATA = Path(__file__).parent / "data"


# Independent oracles. These use only the raw Cayley table and plain Python
# sets, never the library's product/convolution kernels.

def naive_product(group, a, b):
    t = group.mul_table
    return frozenset(int(t[x, y]) for x in a for y in b)


def naive_fold(group, sets):
    acc = frozenset(sets[0])
    for s in sets[1:]:
        acc = naive_product(group, acc, s)
    return acc


def naive_counts(group, sets):
    t = group.mul_table
    counts = [0] * group.order
    for tup in itertools.product(*sets):
        x = tup[0]
        for y in tup[1:]:
            x = int(t[x, y])
        counts[x] += 1
    return counts


def brute_axioms(group):
    """Return the first violated axiom name, or None. O(n^3) triple loop."""
    t = group.mul_table.astype(np.int64)
    n = group.order
    full = set(range(n))
    for i in range(n):
        if set(t[i].tolist()) != full or set(t[:, i].tolist()) != full:
            return "latin"
    for g in range(n):
        if t[0, g] != g or t[g, 0] != g:
            return "identity"
        h = int(group.inv_table[g])
        if t[g, h] != 0 or t[h, g] != 0:
            return "inverse"
    idx = np.arange(n)
    lhs = t[t[:, :, None], idx[None, None, :]]      # (a*b)*c at [a, b, c]
    rhs = t[idx[:, None, None], t[None, :, :]]      # a*(b*c) at [a, b, c]
    if not (lhs == rhs).all():
        return "associativity"
    return None


def all_nonempty(group):
    n = group.order
    for mask in range(1, 2**n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def to_subset(group, s):
    return Subset.from_indices(group, sorted(s))


@pytest.fixture(scope="session")
def q8():
    return read_table_file(DATA / "q8.txt")


@pytest.fixture(scope="session")
def z4():
    return cyclic(4)


@pytest.fixture(scope="session")
def z6():
    return cyclic(6)


@pytest.fixture(scope="session")
def v4():
    return elementary_abelian(2, 2)


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def d4():
    return dihedral(4)


def small_groups():
    """Every built-in group of order <= 8 used for exhaustive checks."""
    gs = [cyclic(n) for n in range(1, 9)]
    gs += [elementary_abelian(2, 2), elementary_abelian(2, 3), symmetric(3), dihedral(4),
           read_table_file(DATA / "q8.txt")]
    gs.append(direct_product(cyclic(2), cyclic(4)))
    return gs


# Acceptance reporting: tests marked ``criterion(num, title)`` get one
# PASS/FAIL line each in the terminal summary.

_CRITERIA: dict[int, dict] = {}
_ELAPSED = pytest.StashKey[list]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    # setup time counts too: shared fixtures do the heavy lifting
    item.stash.setdefault(_ELAPSED, []).append(rep.duration)
    if not (rep.when == "call" or rep.failed):
        return
    num, title = mark.args
    detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    _CRITERIA[num] = {"title": title, "passed": rep.passed, "detail": detail,
                      "seconds": sum(item.stash[_ELAPSED])}


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        c = _CRITERIA[num]
        status = "PASS" if c["passed"] else "FAIL"
        line = f"[{status}] criterion {num}: {c['title']} ({c['seconds']:.2f} s)"
        if c["detail"]:
            line += f" | {c['detail']}"
        tr.write_line(line)
