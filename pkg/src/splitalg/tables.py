"""Bigraded Ext/Tor dimension tables of the associated graded algebra.

``ext_table`` sums reduced Betti numbers of window order complexes.
``tor_bar_oracle`` recomputes the same numbers from the normalized bar
complex of the good-monomial algebra without touching order complexes.
Because products of basis monomials are basis monomials, the bar
differential preserves the total product of a bar element, and the complex
splits into one small block per good monomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import DEFAULT_CAP, GoodMonomials, Monomial
from .complexes import betti_vector, order_complex
from .errors import CapExceeded, InternalCheckFailed, Underdetermined
from .linalg import RATIONAL, Echelon, FieldSpec
from .poset import RankedPoset, window
from .tensors import minimal_generator_counts


@dataclass
class ExtTable:
    field: FieldSpec
    entries: dict[tuple[int, int], int]
    breakdown: dict[tuple[str, int], list[int]] = field(default_factory=dict)

    def get(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def poincare(self) -> list[int]:
        """Coefficients of ``sum_{p,q} (-1)^p dim Tor_{p,q} t^q``."""
        top = max((q for _, q in self.entries), default=0)
        out = [0] * (top + 1)
        for (p, q), v in self.entries.items():
            out[q] += (-1) ** p * v
        return out

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "entries": [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(self.entries.items()) if v],
            "breakdown": [
                {"b": b, "q": q, "betti": vec} for (b, q), vec in self.breakdown.items()
            ],
        }

    def grid(self) -> str:
        cells = self.nonzero()
        if not cells:
            return "(empty)"
        pmax = max(p for p, _ in cells)
        qmax = max(q for _, q in cells)
        width = max(3, *(len(str(v)) for v in cells.values()))
        head = "p\\q " + " ".join(str(q).rjust(width) for q in range(qmax + 1))
        lines = [head]
        for p in range(pmax + 1):
            row = [str(cells.get((p, q), ".")).rjust(width) for q in range(qmax + 1)]
            lines.append(f"{p:>3} " + " ".join(row))
        return "\n".join(lines)


def window_betti(P: RankedPoset, b: str, q: int, F: FieldSpec = RATIONAL) -> list[int]:
    """``[H~_{-1}, ..., H~_{q-2}]`` of the window order complex."""
    W = window(P, b, q)
    return betti_vector(order_complex(P, W.members), F, q - 2)


def ext_table(P: RankedPoset, F: FieldSpec = RATIONAL) -> ExtTable:
    entries: dict[tuple[int, int], int] = {(0, 0): 1}
    breakdown = {}
    for b in P.plus:
        for q in range(1, P.rank(b) + 1):
            vec = window_betti(P, b, q, F)
            if len(vec) > q:
                raise InternalCheckFailed(f"window ({b},{q}) has dimension above {q - 2}")
            breakdown[(b, q)] = vec
            for i, v in enumerate(vec):
                if v:
                    p = i + 1
                    entries[(p, q)] = entries.get((p, q), 0) + v
    return ExtTable(F, entries, breakdown)


# -- independent bar-complex oracle ------------------------------------------


def _compositions(q: int, p: int) -> Iterable[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, q), p - 1):
        bounds = (0, *cuts, q)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(p))


class BarComplex:
    """Normalized bar complex ``(A_+)^{⊗p}`` in internal degree ``q``, split by total product."""

    def __init__(self, P: RankedPoset, F: FieldSpec = RATIONAL, cap: int = DEFAULT_CAP):
        self.A = GoodMonomials(P)
        self.F = F
        self.cap = cap
        self._basis: dict[int, list[Monomial]] = {}
        self._blocks: dict[tuple[int, int], dict[Monomial, list[tuple[Monomial, ...]]]] = {}

    def good(self, d: int) -> list[Monomial]:
        if d not in self._basis:
            self._basis[d] = self.A.enumerate_good(d, self.cap)
        return self._basis[d]

    def size(self, p: int, q: int) -> int:
        h = self.A.hilbert_coeffs(q)
        total = 0
        for comp in _compositions(q, p):
            n = 1
            for d in comp:
                n *= h[d]
            total += n
        return total

    def blocks(self, p: int, q: int) -> dict[Monomial, list[tuple[Monomial, ...]]]:
        key = (p, q)
        if key not in self._blocks:
            if p == 0:
                self._blocks[key] = {(): [()]} if q == 0 else {}
                return self._blocks[key]
            n = self.size(p, q)
            if n > self.cap:
                raise CapExceeded(f"bar complex B_{p} in degree {q}", n, self.cap)
            out: dict[Monomial, list[tuple[Monomial, ...]]] = {}
            for comp in _compositions(q, p):
                for tup in itertools.product(*(self.good(d) for d in comp)):
                    out.setdefault(self.A.product(*tup), []).append(tup)
            self._blocks[key] = out
        return self._blocks[key]

    def differential(self, tup: tuple[Monomial, ...]) -> dict[tuple[Monomial, ...], int]:
        out: dict = {}
        mult = self.A.multiply
        for i in range(len(tup) - 1):
            face = tup[:i] + (mult(tup[i], tup[i + 1]),) + tup[i + 2:]
            out[face] = out.get(face, 0) + (-1) ** (i + 1)
        return {k: c for k, c in out.items() if c}

    def rank_d(self, p: int, q: int) -> int:
        """Rank of ``B_p -> B_{p-1}`` in degree ``q``."""
        if p <= 1:
            return 0
        total = 0
        for tuples in self.blocks(p, q).values():
            E = Echelon(self.F)
            E.extend(self.differential(t) for t in tuples)
            total += E.rank
        return total

    def tor(self, p: int, q: int) -> int:
        if p == 0:
            return 1 if q == 0 else 0
        if p > q:
            return 0
        dim = sum(len(v) for v in self.blocks(p, q).values())
        return dim - self.rank_d(p, q) - self.rank_d(p + 1, q)


def tor_bar_oracle(
    P: RankedPoset, F: FieldSpec = RATIONAL, p_max: int = 3, q_max: int = 4, cap: int = DEFAULT_CAP
) -> dict[tuple[int, int], int]:
    """Nonzero ``dim Tor_{p,q}`` for ``p <= p_max``, ``q <= q_max`` (with ``(0,0) = 1``)."""
    bar = BarComplex(P, F, cap)
    out = {(0, 0): 1}
    for q in range(1, q_max + 1):
        for p in range(1, min(p_max, q) + 1):
            v = bar.tor(p, q)
            if v:
                out[(p, q)] = v
    return out


# -- Euler identity ------------------------------------------------------------


@dataclass
class EulerResult:
    passed: bool
    degree: int
    residual: list[int]
    hilbert: list[int]
    poincare: list[int]


def series_product(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def series_inverse(a: list[int], N: int) -> list[int]:
    """Power-series inverse of an integer series with constant term 1."""
    if not a or a[0] != 1:
        raise ValueError("series must have constant term 1")
    inv = [1] + [0] * N
    for n in range(1, N + 1):
        inv[n] = -sum(a[k] * inv[n - k] for k in range(1, min(n, len(a) - 1) + 1))
    return inv


def euler_check(P: RankedPoset, F: FieldSpec = RATIONAL, N: int = 8, table: ExtTable | None = None) -> EulerResult:
    table = table or ext_table(P, F)
    H = GoodMonomials(P).hilbert_coeffs(N)
    poly = table.poincare()
    prod = series_product(H, poly, N)
    residual = [prod[0] - 1] + prod[1:]
    return EulerResult(not any(residual), N, residual, H, poly)


# -- Ext of the filtered algebra from bounds -------------------------------------


@dataclass
class FilteredTable:
    entries: dict[tuple[int, int], int]
    sources: dict[tuple[int, int], str]

    def nonzero(self) -> dict[tuple[int, int], int]:
        return {k: v for k, v in sorted(self.entries.items()) if v}

    def to_json(self) -> dict:
        return {
            "entries": [
                {"p": p, "q": q, "dim": v, "source": self.sources[(p, q)]}
                for (p, q), v in sorted(self.entries.items())
                if v or self.sources[(p, q)] != "upper-bound"
            ]
        }


def infer_filtered_table(
    P: RankedPoset,
    F: FieldSpec = RATIONAL,
    table: ExtTable | None = None,
    cap: int = DEFAULT_CAP,
) -> FilteredTable:
    """Ext dimensions of the filtered algebra pinned by bounds and the Euler identity.

    Known inputs per degree ``q``: ``Ext^{1,q}`` (the generators, all in
    degree 1), ``Ext^{2,q}`` (minimal relation counts, computed only where the
    graded table leaves room), the upper bounds ``Ext^{p,q} <= graded
    Ext^{p,q}``, and the alternating sum fixed by the common Hilbert series.
    Every remaining unknown must be forced; otherwise :class:`Underdetermined`.
    """
    table = table or ext_table(P, F)
    top = P.max_rank
    need_rel = [q for q in range(2, top + 1) if table.get(2, q)]
    rel_counts = (
        minimal_generator_counts(P, max(need_rel), F, cap=cap, degrees=need_rel) if need_rel else {}
    )

    entries = {(0, 0): 1}
    sources = {(0, 0): "unit"}
    euler = table.poincare() + [0] * (top + 1)
    for q in range(1, top + 1):
        known = {}
        known[1] = len(P.plus) if q == 1 else 0
        sources[(1, q)] = "generators"
        if q >= 2:
            if table.get(2, q):
                known[2] = rel_counts.get(q, 0)
                sources[(2, q)] = "relations"
                if known[2] > table.get(2, q):
                    raise InternalCheckFailed(f"relation count exceeds graded bound at degree {q}")
            else:
                known[2] = 0
                sources[(2, q)] = "upper-bound"
        unknown = [p for p in range(3, q + 1) if table.get(p, q)]
        for p in range(3, q + 1):
            if p not in unknown:
                known[p] = 0
                sources[(p, q)] = "upper-bound"
        target = euler[q] - sum((-1) ** p * v for p, v in known.items())
        boxes = [range(table.get(p, q) + 1) for p in unknown]
        sols = [
            vals
            for vals in itertools.product(*boxes)
            if sum((-1) ** p * v for p, v in zip(unknown, vals)) == target
        ]
        if not sols:
            raise InternalCheckFailed(f"no solution in degree {q}: bounds contradict Euler identity")
        if len(sols) > 1:
            raise Underdetermined(q, len(sols))
        for p, v in zip(unknown, sols[0]):
            known[p] = v
            sources[(p, q)] = "euler"
        for p, v in known.items():
            entries[(p, q)] = v
    return FilteredTable(entries, sources)
