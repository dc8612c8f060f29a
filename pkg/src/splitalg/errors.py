"""Exception hierarchy shared by every module."""


class SplitalgError(Exception):
    """Base class for all errors raised by the package."""


class PosetError(SplitalgError, ValueError):
    """Invalid poset input or query."""


class PosetParseError(PosetError):
    pass


class DuplicateElement(PosetError):
    pass


class UnknownElementInCover(PosetError):
    pass


class RankConflict(PosetError):
    pass


class OrphanElement(PosetError):
    pass


class CycleDetected(PosetError):
    pass


class StarNotMinimal(PosetError):
    pass


class WidthOutOfRange(PosetError):
    pass


class NotComparable(PosetError):
    pass


class UnknownFamily(PosetError):
    pass


class BadParams(PosetError):
    pass


class DimensionMismatch(SplitalgError, ValueError):
    pass


class NotASubcomplex(SplitalgError, ValueError):
    pass


class IndexOutOfRange(SplitalgError, IndexError):
    pass


class DegreeMismatch(SplitalgError, ValueError):
    pass


class CapExceeded(SplitalgError):
    """A computation would materialize more objects than the configured cap."""

    def __init__(self, what: str, count: int, cap: int):
        super().__init__(f"{what}: {count} exceeds cap {cap}")
        self.what = what
        self.count = count
        self.cap = cap


class IdentityFailed(SplitalgError):
    def __init__(self, name: str):
        super().__init__(f"identity failed: {name}")
        self.name = name


class Underdetermined(SplitalgError):
    def __init__(self, degree: int, solutions: int):
        super().__init__(
            f"degree {degree}: bounds and Euler identity admit {solutions} solutions"
        )
        self.degree = degree
        self.solutions = solutions


class InternalCheckFailed(SplitalgError):
    """An invariant that must hold for every valid input was violated."""
