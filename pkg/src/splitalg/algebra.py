"""The associated graded splitting algebra on its good-monomial basis.

A letter ``(x, k)`` stands for the basis element built from the first ``k``
edges of a path down from ``x``; it has degree ``k`` and filtration weight
``k*rk(x) - k(k-1)/2``. A word of letters is *good* when no consecutive pair
``(x, j), (y, k)`` has ``x > y`` and ``j = d(x, y)``; such a pair multiplies
to the single letter ``(x, j + k)``. Products of good monomials are again
single good monomials, obtained by merging at the junction until no
mergeable pair is left.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterator, NamedTuple

from .errors import CapExceeded, InternalCheckFailed
from .poset import STAR, RankedPoset

DEFAULT_CAP = 200_000


class Letter(NamedTuple):
    element: str
    exponent: int


Monomial = tuple[Letter, ...]
ONE: Monomial = ()


def weight(P: RankedPoset, letter: Letter) -> int:
    x, k = letter
    return k * P.rank(x) - k * (k - 1) // 2


class GoodMonomials:
    """Basis, product and Hilbert function of the graded algebra of ``P``."""

    def __init__(self, P: RankedPoset):
        self.P = P

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        P = self.P
        return tuple(Letter(x, k) for x in P.plus for k in range(1, P.rank(x) + 1))

    def letter_key(self, letter: Letter) -> tuple:
        return (*self.P.key(letter.element), letter.exponent)

    def monomial_key(self, m: Monomial) -> tuple:
        return tuple(self.letter_key(a) for a in m)

    def mergeable(self, a: Letter, b: Letter) -> bool:
        P = self.P
        return P.gt(a.element, b.element) and a.exponent == P.d(a.element, b.element)

    def is_letter(self, a: Letter) -> bool:
        return a.element in self.P and a.element != STAR and 1 <= a.exponent <= self.P.rank(a.element)

    def is_good(self, m: Monomial) -> bool:
        if not all(self.is_letter(a) for a in m):
            return False
        return not any(self.mergeable(a, b) for a, b in zip(m, m[1:]))

    @staticmethod
    def degree(m: Monomial) -> int:
        return sum(a.exponent for a in m)

    def filtration_degree(self, m: Monomial) -> int:
        return sum(weight(self.P, a) for a in m)

    def f(self, b: str, a: str) -> Letter:
        """The letter reached by any edge path from ``b`` down to ``a``."""
        return Letter(b, self.P.d(b, a))

    def multiply(self, m1: Monomial, m2: Monomial) -> Monomial:
        out = list(m1)
        for a in m2:
            if out and self.mergeable(out[-1], a):
                top = out.pop()
                a = Letter(top.element, top.exponent + a.exponent)
                # the merged letter keeps top's element, so its left neighbour stays unmergeable
                if out and self.mergeable(out[-1], a):
                    raise InternalCheckFailed(f"merge created a mergeable pair at {out[-1]}, {a}")
            out.append(a)
        return tuple(out)

    def product(self, *ms: Monomial) -> Monomial:
        acc = ONE
        for m in ms:
            acc = self.multiply(acc, m)
        return acc

    # -- counting and enumeration -----------------------------------------

    def _ending_counts(self, N: int) -> list[dict[Letter, int]]:
        """``counts[d][a]`` = number of good monomials of degree d ending in ``a``."""
        letters = self.letters
        preds = {b: [a for a in letters if not self.mergeable(a, b)] for b in letters}
        counts: list[dict[Letter, int]] = [{} for _ in range(N + 1)]
        for d in range(1, N + 1):
            row = {}
            for b in letters:
                k = b.exponent
                if k > d:
                    continue
                c = 1 if k == d else sum(counts[d - k].get(a, 0) for a in preds[b])
                if c:
                    row[b] = c
            counts[d] = row
        return counts

    def hilbert_coeffs(self, N: int) -> list[int]:
        counts = self._ending_counts(N)
        return [1] + [sum(counts[d].values()) for d in range(1, N + 1)]

    def iter_good(self, d: int) -> Iterator[Monomial]:
        if d == 0:
            yield ONE
            return
        letters = sorted(self.letters, key=self.letter_key)

        def grow(prefix: list[Letter], remaining: int):
            if remaining == 0:
                yield tuple(prefix)
                return
            for a in letters:
                if a.exponent > remaining:
                    continue
                if prefix and self.mergeable(prefix[-1], a):
                    continue
                prefix.append(a)
                yield from grow(prefix, remaining - a.exponent)
                prefix.pop()

        yield from grow([], d)

    def enumerate_good(self, d: int, cap: int = DEFAULT_CAP) -> list[Monomial]:
        count = self.hilbert_coeffs(d)[d]
        if count > cap:
            raise CapExceeded(f"good monomials of degree {d}", count, cap)
        return list(self.iter_good(d))


def merge_product(P: RankedPoset, m1: Monomial, m2: Monomial) -> Monomial:
    return GoodMonomials(P).multiply(m1, m2)


def enumerate_good(P: RankedPoset, d: int, cap: int = DEFAULT_CAP) -> list[Monomial]:
    return GoodMonomials(P).enumerate_good(d, cap)


def hilbert_coeffs(P: RankedPoset, N: int) -> list[int]:
    return GoodMonomials(P).hilbert_coeffs(N)


def mono(*pairs) -> Monomial:
    """Shorthand: ``mono(("B", 1), ("Y1", 1))``."""
    return tuple(Letter(x, k) for x, k in pairs)


def format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    return "".join(f"[{a.element},{a.exponent}]" for a in m)
