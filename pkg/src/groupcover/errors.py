"""Exception hierarchy shared by every module of the package."""


class GroupCoverError(Exception):
    """Base class for all package errors."""


class MalformedTable(GroupCoverError, ValueError):
    """A Cayley table is not square or holds out-of-range entries."""


class NotAGroup(GroupCoverError, ValueError):
    """A Cayley table violates a group axiom.

    ``witness`` holds the first offending tuple of element indices.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidSpec(GroupCoverError, ValueError):
    """A group constructor descriptor is not recognised or has bad arguments."""


class ClosureTooLarge(GroupCoverError):
    """Generator closure (or table materialisation) exceeded its size cap."""


class GroupMismatch(GroupCoverError, ValueError):
    """Objects attached to different groups were combined."""


class EmptySubset(GroupCoverError, ValueError):
    """An operation that needs a nonempty subset received an empty one."""


class Inconclusive(GroupCoverError):
    """Stabilization detection ran out of steps before reaching G or a cycle."""

    def __init__(self, max_steps):
        super().__init__(
            f"no stabilization or cycle within {max_steps} steps; raise max_steps"
        )
        self.max_steps = max_steps


class Overflow(GroupCoverError, ArithmeticError):
    """A fixed-width integer computation would have wrapped around."""


class TooLarge(GroupCoverError):
    """Brute-force enumeration exceeds its configured tuple cap."""

    def __init__(self, size, cap):
        super().__init__(f"{size} tuples to enumerate exceeds cap {cap}")
        self.size = size
        self.cap = cap


class InternalInconsistency(GroupCoverError, AssertionError):
    """An unconditional identity failed. This is always an implementation bug."""


class ParseError(GroupCoverError, ValueError):
    """Located parse failure in a descriptor, subset literal or table file."""

    def __init__(self, message, line=1, column=1, source=None):
        where = f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
        self.source = source
