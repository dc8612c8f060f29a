"""Order complexes and their reduced and relative homology over a field.

A simplex is a chain of the poset stored top-down, i.e. with vertices in
strictly decreasing order. The boundary of ``(b_n > ... > b_0)`` is
``sum_i (-1)^i`` times the chain with the i-th vertex *from the top*
removed; the resolution code uses the same rule, so both share identical
boundary matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotASubcomplex
from .linalg import RATIONAL, Echelon, ExactMatrix, FieldSpec
from .poset import RankedPoset

Simplex = tuple[str, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    simplices_by_dim: tuple[tuple[Simplex, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.simplices_by_dim) - 1

    def simplices(self, n: int) -> tuple[Simplex, ...]:
        if n == -1:
            return ((),)
        if 0 <= n < len(self.simplices_by_dim):
            return self.simplices_by_dim[n]
        return ()

    def f_vector(self) -> list[int]:
        return [len(s) for s in self.simplices_by_dim]

    def all_simplices(self) -> set[Simplex]:
        return {s for layer in self.simplices_by_dim for s in layer}

    def is_empty(self) -> bool:
        return not self.vertices


def poset_chains(P: RankedPoset, members: Iterable[str]) -> list[Simplex]:
    """All nonempty chains of the induced subposet, each listed top-down."""
    pool = P.sort(members)
    out: list[Simplex] = []

    def extend(chain: tuple[str, ...]) -> None:
        out.append(chain)
        top = chain[-1]
        for y in pool:
            if P.lt(y, top):
                extend(chain + (y,))

    for x in pool:
        extend((x,))
    return out


def order_complex(P: RankedPoset, members: Iterable[str]) -> SimplicialComplex:
    members = P.sort(set(members))
    layers: dict[int, list[Simplex]] = {}
    for ch in poset_chains(P, members):
        layers.setdefault(len(ch) - 1, []).append(ch)
    key = P.key
    by_dim = tuple(
        tuple(sorted(layers[n], key=lambda s: [key(v) for v in s])) for n in range(len(layers))
    )
    return SimplicialComplex(tuple(members), by_dim)


def boundary_terms(simplex: Simplex) -> list[tuple[Simplex, int]]:
    """Faces with signs; the face of a vertex is the empty simplex."""
    return [(simplex[:i] + simplex[i + 1:], -1 if i % 2 else 1) for i in range(len(simplex))]


class ReducedChainComplex:
    """Augmented simplicial chain complex ``C_n`` for ``n >= -1``."""

    def __init__(self, K: SimplicialComplex, F: FieldSpec = RATIONAL):
        self.K = K
        self.field = F
        self.spaces = {n: K.simplices(n) for n in range(-1, K.dim + 1)}
        self._index = {n: {s: i for i, s in enumerate(basis)} for n, basis in self.spaces.items()}

    def boundary(self, n: int) -> ExactMatrix:
        """``d_n : C_n -> C_{n-1}`` for ``n >= 0``."""
        src = self.spaces.get(n, ())
        tgt_index = self._index.get(n - 1, {})
        entries = {}
        for j, s in enumerate(src):
            for face, sign in boundary_terms(s):
                entries[(tgt_index[face], j)] = sign
        return ExactMatrix(len(tgt_index), len(src), entries)

    def boundary_squares_vanish(self) -> bool:
        for n in range(1, self.K.dim + 1):
            if not self.boundary(n - 1).matmul(self.boundary(n), self.field).is_zero(self.field):
                return False
        return True


def _column_rank(columns: list[dict], F: FieldSpec) -> int:
    E = Echelon(F)
    E.extend(columns)
    return E.rank


def _boundary_columns(src: Iterable[Simplex], keep: set | None = None) -> list[dict]:
    cols = []
    for s in src:
        col = {}
        for face, sign in boundary_terms(s):
            if keep is None or face in keep:
                col[face] = sign
        cols.append(col)
    return cols


def reduced_betti(K: SimplicialComplex, F: FieldSpec = RATIONAL) -> dict[int, int]:
    """``n -> dim H~_n(K)`` for ``-1 <= n <= dim K``."""
    top = K.dim
    ranks = {}
    for n in range(0, top + 1):
        ranks[n] = _column_rank(_boundary_columns(K.simplices(n)), F)
    out = {}
    for n in range(-1, top + 1):
        out[n] = len(K.simplices(n)) - ranks.get(n, 0) - ranks.get(n + 1, 0)
    return out


def betti_vector(K: SimplicialComplex, F: FieldSpec, top: int) -> list[int]:
    """Reduced Betti numbers ``[H~_{-1}, ..., H~_top]`` padded with zeros."""
    b = reduced_betti(K, F)
    return [b.get(n, 0) for n in range(-1, top + 1)]


def relative_betti(K: SimplicialComplex, L: SimplicialComplex, F: FieldSpec = RATIONAL) -> dict[int, int]:
    """``n -> dim H_n(K, L)`` from the quotient of unreduced chains (``n >= 0``).

    With ``L`` empty this is the ordinary unreduced homology of ``K``.
    """
    ks, ls = K.all_simplices(), L.all_simplices()
    if not ls <= ks:
        raise NotASubcomplex(f"{len(ls - ks)} simplices of L are not in K")
    quotient = {n: [s for s in K.simplices(n) if s not in ls] for n in range(0, K.dim + 1)}
    ranks = {}
    for n in range(1, K.dim + 1):
        keep = set(quotient[n - 1])
        ranks[n] = _column_rank(_boundary_columns(quotient[n], keep), F)
    return {n: len(quotient[n]) - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in range(0, K.dim + 1)}
