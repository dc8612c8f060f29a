"""Finite ranked posets with a unique minimal element ``*``.

A poset is given by its cover relation only; ranks are inferred from the
covers and checked. Elements are opaque string ids, ordered everywhere by
``(rank, id)`` so that every derived output is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import (
    CycleDetected,
    DuplicateElement,
    NotComparable,
    OrphanElement,
    PosetParseError,
    RankConflict,
    StarNotMinimal,
    UnknownElementInCover,
    WidthOutOfRange,
)

STAR = "*"
_ID = re.compile(r"[A-Za-z0-9_]+\Z")


class RankedPoset:
    """Immutable validated ranked poset.

    Build with :meth:`from_covers` or :func:`parse_poset`; the constructor
    performs full validation.
    """

    def __init__(self, elements: Iterable[str], covers: Iterable[tuple[str, str]], name: str | None = None):
        elems = set(elements)
        elems.add(STAR)
        cover_set = set()
        for upper, lower in covers:
            if upper not in elems or lower not in elems:
                missing = upper if upper not in elems else lower
                raise UnknownElementInCover(f"cover {upper} -> {lower}: unknown element {missing!r}")
            if upper == STAR:
                raise StarNotMinimal(f"'*' cannot cover {lower!r}")
            if upper == lower:
                raise CycleDetected(f"self-cover on {upper!r}")
            cover_set.add((upper, lower))

        lower_covers: dict[str, set[str]] = {x: set() for x in elems}
        upper_covers: dict[str, set[str]] = {x: set() for x in elems}
        for upper, lower in cover_set:
            lower_covers[upper].add(lower)
            upper_covers[lower].add(upper)

        for x in sorted(elems):
            if x != STAR and not lower_covers[x]:
                raise OrphanElement(f"element {x!r} has no lower cover")

        rank = _infer_ranks(elems, lower_covers, upper_covers)

        self.name = name
        self._rank = rank
        self._key = {x: (rank[x], x) for x in elems}
        self.elements: tuple[str, ...] = tuple(sorted(elems, key=self._key.__getitem__))
        self._lower = {x: tuple(sorted(lower_covers[x], key=self._key.__getitem__)) for x in elems}
        self._upper = {x: tuple(sorted(upper_covers[x], key=self._key.__getitem__)) for x in elems}
        self.covers: frozenset[tuple[str, str]] = frozenset(cover_set)

        below: dict[str, frozenset[str]] = {}
        for x in self.elements:
            acc = set()
            for y in self._lower[x]:
                acc.add(y)
                acc |= below[y]
            below[x] = frozenset(acc)
        self._below = below

    @classmethod
    def from_covers(cls, covers: Iterable[tuple[str, str]], name: str | None = None) -> "RankedPoset":
        covers = list(covers)
        elems = {u for u, _ in covers} | {v for _, v in covers}
        return cls(elems, covers, name=name)

    # -- basic queries -------------------------------------------------

    def rank(self, x: str) -> int:
        return self._rank[x]

    def key(self, x: str) -> tuple[int, str]:
        return self._key[x]

    def d(self, x: str, y: str) -> int:
        return self._rank[x] - self._rank[y]

    def lt(self, a: str, b: str) -> bool:
        """``a < b``."""
        return a in self._below[b]

    def gt(self, x: str, y: str) -> bool:
        return y in self._below[x]

    def below(self, x: str) -> frozenset[str]:
        """All elements strictly below ``x``."""
        return self._below[x]

    def lower_covers(self, x: str) -> tuple[str, ...]:
        return self._lower[x]

    def upper_covers(self, x: str) -> tuple[str, ...]:
        return self._upper[x]

    def level(self, k: int) -> tuple[str, ...]:
        return tuple(x for x in self.elements if self._rank[x] == k)

    @cached_property
    def plus(self) -> tuple[str, ...]:
        """The non-minimal elements, in canonical order."""
        return tuple(x for x in self.elements if x != STAR)

    @cached_property
    def max_rank(self) -> int:
        return max(self._rank.values())

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._rank

    def sort(self, xs: Iterable[str]) -> list[str]:
        return sorted(xs, key=self._key.__getitem__)

    def open_interval(self, a: str, b: str) -> frozenset[str]:
        """``(a, b) = {c : a < c < b}``."""
        return frozenset(c for c in self._below[b] if a in self._below[c])

    def sorted_covers(self) -> list[tuple[str, str]]:
        return sorted(self.covers, key=lambda c: (self._key[c[0]], self._key[c[1]]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankedPoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), self.covers))

    def __repr__(self) -> str:
        label = self.name or "poset"
        return f"RankedPoset({label}, {len(self.elements)} elements, {len(self.covers)} covers)"


def _infer_ranks(elems, lower_covers, upper_covers) -> dict[str, int]:
    # Kahn's algorithm from the bottom; anything left over sits on a cycle.
    pending = {x: len(lower_covers[x]) for x in elems}
    rank: dict[str, int] = {STAR: 0}
    frontier = [STAR]
    done = 0
    while frontier:
        nxt = []
        for y in sorted(frontier):
            done += 1
            for x in sorted(upper_covers[y]):
                r = rank[y] + 1
                if x in rank and rank[x] != r:
                    raise RankConflict(
                        f"element {x!r} reached at ranks {rank[x]} and {r}; chains of different lengths"
                    )
                rank[x] = r
                pending[x] -= 1
                if pending[x] == 0:
                    nxt.append(x)
        frontier = nxt
    if done != len(elems):
        stuck = sorted(x for x in elems if pending[x] > 0)
        raise CycleDetected(f"cover graph has a cycle through {stuck}")
    return rank


# -- derived sets ------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """Elements of ``(*, base)`` within rank distance ``width - 1`` of ``base``."""

    base: str
    width: int
    members: tuple[str, ...]


def window(P: RankedPoset, b: str, q: int) -> Window:
    if b not in P or b == STAR or not 1 <= q <= P.rank(b):
        top = P.rank(b) if b in P else "?"
        raise WidthOutOfRange(f"width {q} outside 1..{top} for element {b!r}")
    members = [a for a in P.below(b) if a != STAR and P.d(b, a) <= q - 1]
    return Window(b, q, tuple(P.sort(members)))


def sphere(P: RankedPoset, b: str, k: int) -> frozenset[str]:
    """``{a < b : d(b, a) = k}``."""
    return frozenset(a for a in P.below(b) if P.d(b, a) == k)


@dataclass(frozen=True)
class Path:
    """A downward cover path ``vertices[0] -> vertices[1] -> ...``."""

    vertices: tuple[str, ...]

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        v = self.vertices
        return tuple(zip(v[:-1], v[1:]))

    def __len__(self) -> int:
        return len(self.vertices) - 1


def enumerate_paths(P: RankedPoset, b: str, a: str) -> list[Path]:
    """All cover paths from ``b`` down to ``a`` in lexicographic order."""
    if a == b:
        return [Path((b,))]
    if not P.lt(a, b):
        raise NotComparable(f"{a!r} is not below {b!r}")
    out: list[Path] = []

    def walk(prefix: list[str]) -> None:
        x = prefix[-1]
        for y in P.lower_covers(x):
            if y == a:
                out.append(Path(tuple(prefix + [y])))
            elif P.lt(a, y):
                walk(prefix + [y])

    walk([b])
    return out


def distinguished_path(P: RankedPoset, x: str) -> Path:
    """Follow the least lower cover from ``x`` down to ``*``."""
    verts = [x]
    while verts[-1] != STAR:
        verts.append(P.lower_covers(verts[-1])[0])
    return Path(tuple(verts))


# -- file format -------------------------------------------------------


def parse_poset(text: str) -> RankedPoset:
    name = None
    declared: list[str] = []
    seen: set[str] = set()
    covers: list[tuple[str, str]] = []
    cover_seen: set[tuple[str, str]] = set()

    def check_id(tok: str, lineno: int) -> str:
        if tok != STAR and not _ID.match(tok):
            raise PosetParseError(f"line {lineno}: invalid element id {tok!r}")
        return tok

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, args = parts[0], parts[1:]
        if head == "poset":
            if len(args) != 1 or not _ID.match(args[0]):
                raise PosetParseError(f"line {lineno}: expected 'poset <name>'")
            name = args[0]
        elif head == "elem":
            if len(args) != 1:
                raise PosetParseError(f"line {lineno}: expected 'elem <id>'")
            x = check_id(args[0], lineno)
            if x in seen:
                raise DuplicateElement(f"line {lineno}: element {x!r} declared twice")
            seen.add(x)
            declared.append(x)
        elif head == "cover":
            if len(args) != 2:
                raise PosetParseError(f"line {lineno}: expected 'cover <upper> <lower>'")
            u, v = (check_id(t, lineno) for t in args)
            if (u, v) in cover_seen:
                raise PosetParseError(f"line {lineno}: duplicate cover {u} {v}")
            cover_seen.add((u, v))
            covers.append((u, v))
        else:
            raise PosetParseError(f"line {lineno}: unknown directive {head!r}")

    elems = set(declared) | {u for u, _ in covers} | {v for _, v in covers}
    return RankedPoset(elems, covers, name=name)


def serialize_poset(P: RankedPoset) -> str:
    lines = []
    if P.name:
        lines.append(f"poset {P.name}")
    for x in P.plus:
        lines.append(f"elem {x}")
    for u, v in P.sorted_covers():
        lines.append(f"cover {u} {v}")
    return "\n".join(lines) + "\n"


def maximal_chains(P: RankedPoset, x: str) -> list[tuple[str, ...]]:
    """Brute-force maximal chains of ``[*, x]`` via the full order relation."""
    interval = [y for y in P.elements if y == x or P.lt(y, x)]
    out = []

    def grow(chain: list[str]) -> None:
        top = chain[-1]
        ups = [y for y in interval if P.lt(top, y)]
        # y is a next step iff nothing in the interval sits strictly between
        steps = [y for y in ups if not any(P.lt(top, z) and P.lt(z, y) for z in interval)]
        if not steps:
            out.append(tuple(chain))
        for y in steps:
            grow(chain + [y])

    grow([STAR])
    return out
