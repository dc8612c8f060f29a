"""Named poset families used as the test and demo corpus."""

from __future__ import annotations

import itertools
import random
import string

from .errors import BadParams, UnknownFamily
from .poset import STAR, RankedPoset

FAMILIES = ("chain", "boolean", "example5", "nonuniform4", "random")


def chain(n: int) -> RankedPoset:
    if n < 0:
        raise BadParams("chain length must be >= 0")
    names = list(string.ascii_lowercase[:n]) if n <= 26 else [f"c{i}" for i in range(1, n + 1)]
    covers = list(zip(names, [STAR] + names[:-1]))
    return RankedPoset([STAR, *names], covers, name=f"chain{n}")


def boolean(n: int) -> RankedPoset:
    """Subsets of the first ``n`` letters ordered by inclusion; ``*`` is the empty set."""
    if not 0 <= n <= 26:
        raise BadParams("boolean lattice size must be in 0..26")
    atoms = string.ascii_lowercase[:n]

    def label(s):
        return "".join(s) if s else STAR

    elems, covers = [STAR], []
    for k in range(1, n + 1):
        for subset in itertools.combinations(atoms, k):
            elems.append(label(subset))
            for drop in range(k):
                covers.append((label(subset), label(subset[:drop] + subset[drop + 1:])))
    return RankedPoset(elems, covers, name=f"boolean{n}")


def example5() -> RankedPoset:
    """The rank-4 poset on B, X1, X2, Y1, Y2, Z1, Z2.

    Both X's cover both Y's; each Y has a single lower cover.
    """
    covers = [
        ("B", "X1"), ("B", "X2"),
        ("X1", "Y1"), ("X1", "Y2"), ("X2", "Y1"), ("X2", "Y2"),
        ("Y1", "Z1"), ("Y2", "Z2"),
        ("Z1", STAR), ("Z2", STAR),
    ]
    return RankedPoset.from_covers(covers, name="example5")


def nonuniform4() -> RankedPoset:
    """Two disjoint length-3 paths from ``b`` to ``*``."""
    covers = [
        ("b", "x1"), ("b", "x2"),
        ("x1", "y1"), ("x2", "y2"),
        ("y1", STAR), ("y2", STAR),
    ]
    return RankedPoset.from_covers(covers, name="nonuniform4")


def random_poset(
    seed: int, max_rank: int, widths: int | list[int] = 2, max_covers: int | None = None
) -> RankedPoset:
    """Random ranked poset built one level at a time.

    ``widths`` is either a per-level maximum (levels get 1..widths elements)
    or an explicit list of level sizes. Every element of level ``k`` covers a
    nonempty random subset of level ``k - 1`` (of size at most
    ``max_covers`` when given), so the result is always graded.
    """
    if max_rank < 1:
        raise BadParams("max_rank must be >= 1")
    rng = random.Random(seed)
    if isinstance(widths, int):
        if widths < 1:
            raise BadParams("widths must be >= 1")
        sizes = [rng.randint(1, widths) for _ in range(max_rank)]
    else:
        sizes = list(widths)
        if len(sizes) != max_rank or min(sizes) < 1:
            raise BadParams("explicit widths need one positive size per level")

    levels = [[STAR]]
    covers = []
    for k, size in enumerate(sizes, 1):
        level = [f"v{k}_{i}" for i in range(size)]
        prev = levels[-1]
        for x in level:
            count = rng.randint(1, min(len(prev), max_covers or len(prev)))
            for y in rng.sample(prev, count):
                covers.append((x, y))
        levels.append(level)
    elems = [x for lvl in levels for x in lvl]
    return RankedPoset(elems, covers, name=f"random_s{seed}")


def random_corpus(count: int, max_elements: int, seed: int = 0) -> list[RankedPoset]:
    """``count`` distinct seeded random posets with at most ``max_elements`` elements."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = rng.randrange(2**32)
        max_rank = rng.randint(2, 5)
        width = rng.randint(1, 3)
        P = random_poset(s, max_rank, width, max_covers=rng.choice([1, 2, 2, None]))
        if len(P) <= max_elements:
            out.append(P)
    return out


_SHAPES = ([3, 3, 2], [3, 3, 1], [2, 3, 2, 1], [3, 3, 2, 1], [2, 2, 2, 1], [3, 2, 2], [2, 2, 2, 2])


def property_corpus(count: int, seed: int = 0) -> list[RankedPoset]:
    """Seeded posets with wide lower levels, so both verdict outcomes occur.

    Plain :func:`random_corpus` output is overwhelmingly uniform and
    Cohen-Macaulay at small sizes; fixing the level sizes and allowing two
    or more covers per element yields a useful share of failures.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        shape = rng.choice(_SHAPES)
        out.append(random_poset(rng.randrange(2**32), len(shape), shape, max_covers=rng.choice([2, 2, None])))
    return out


def build_family(name: str, **params) -> RankedPoset:
    try:
        if name == "chain":
            return chain(int(params.get("n", 2)))
        if name == "boolean":
            return boolean(int(params.get("n", 3)))
        if name == "example5":
            return example5()
        if name == "nonuniform4":
            return nonuniform4()
        if name == "random":
            widths = params.get("widths", 2)
            if isinstance(widths, str):
                widths = [int(w) for w in widths.split(",")] if "," in widths else int(widths)
            max_covers = params.get("max_covers")
            return random_poset(
                int(params.get("seed", 0)),
                int(params.get("max_rank", 3)),
                widths,
                int(max_covers) if max_covers is not None else None,
            )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(str(exc)) from exc
    raise UnknownFamily(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def standard_corpus() -> list[RankedPoset]:
    """Fixed corpus: chains up to 4, boolean lattices up to 3, and the two named posets."""
    return [
        *(chain(n) for n in range(1, 5)),
        *(boolean(n) for n in range(1, 4)),
        example5(),
        nonuniform4(),
    ]
