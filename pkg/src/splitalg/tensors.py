"""Free tensor algebra arithmetic, path coefficients and defining relations.

Words are tuples of atoms. An edge atom is an ``(upper, lower)`` pair; a
generator atom is an element id standing for ``v_x``. Edges become
generators through ``x -> y  |->  v_x - v_y`` with ``v_* = 0``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

from .errors import CapExceeded, IdentityFailed, IndexOutOfRange, InternalCheckFailed
from .linalg import RATIONAL, Echelon, FieldSpec
from .poset import STAR, Path, RankedPoset, enumerate_paths

Word = tuple


class FreeTensor:
    """Finite linear combination of words with coefficients in a field."""

    __slots__ = ("field", "terms")

    def __init__(self, terms: Mapping[Word, object] | None = None, field: FieldSpec = RATIONAL):
        self.field = field
        clean = {}
        for w, c in (terms or {}).items():
            c = field.normalize(field.coerce(c))
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def word(cls, *atoms, field: FieldSpec = RATIONAL, coeff=1) -> "FreeTensor":
        return cls({tuple(atoms): coeff}, field)

    @classmethod
    def one(cls, field: FieldSpec = RATIONAL) -> "FreeTensor":
        return cls({(): 1}, field)

    @classmethod
    def gen(cls, x: str, field: FieldSpec = RATIONAL) -> "FreeTensor":
        """The generator ``v_x``; ``v_*`` is zero."""
        return cls() if x == STAR else cls({(x,): 1}, field)

    def _combine(self, other: "FreeTensor", sign: int) -> "FreeTensor":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + sign * c
        return FreeTensor(out, self.field)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return FreeTensor({w: -c for w, c in self.terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, FreeTensor):
            out: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
            return FreeTensor(out, self.field)
        return FreeTensor({w: c * other for w, c in self.terms.items()}, self.field)

    __matmul__ = __mul__

    def __rmul__(self, scalar):
        return FreeTensor({w: c * scalar for w, c in self.terms.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, FreeTensor):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            name = "*".join(a if isinstance(a, str) else f"({a[0]}>{a[1]})" for a in w) or "1"
            parts.append(f"{c}{'' if not w else '·' + name}")
        return " + ".join(parts)


def tensor_sum(ts: Iterable[FreeTensor], field: FieldSpec = RATIONAL) -> FreeTensor:
    acc = FreeTensor(field=field)
    for t in ts:
        acc = acc + t
    return acc


def expand_e(path: Path, j: int, field: FieldSpec = RATIONAL) -> FreeTensor:
    """Sum of the order-preserving length-``j`` subwords of the path's edges."""
    edges = path.edges
    if not 0 <= j <= len(edges):
        raise IndexOutOfRange(f"j={j} outside 0..{len(edges)}")
    terms: dict = {}
    for idx in itertools.combinations(range(len(edges)), j):
        w = tuple(edges[i] for i in idx)
        terms[w] = terms.get(w, 0) + 1
    return FreeTensor(terms, field)


def substitute_v(t: FreeTensor) -> FreeTensor:
    """Rewrite edge atoms as ``v_upper - v_lower`` and expand."""
    F = t.field
    out: dict = {}
    for w, c in t.terms.items():
        choices = []
        for atom in w:
            if isinstance(atom, tuple):
                u, l = atom
                opts = [(u, 1)]
                if l != STAR:
                    opts.append((l, -1))
                choices.append(opts)
            else:
                choices.append([(atom, 1)])
        for combo in itertools.product(*choices):
            sign = 1
            for _, s in combo:
                sign *= s
            word = tuple(a for a, _ in combo)
            out[word] = out.get(word, 0) + sign * c
    return FreeTensor(out, F)


def v_expr(*terms, field: FieldSpec = RATIONAL) -> FreeTensor:
    """Linear form from ``("B", 1), ("X1", -1)`` pairs or bare ids (coefficient 1)."""
    out = FreeTensor(field=field)
    for t in terms:
        x, c = (t, 1) if isinstance(t, str) else t
        out = out + FreeTensor.gen(x, field) * c
    return out


def comparable_pairs(P: RankedPoset) -> list[tuple[str, str]]:
    """All ``(b, a)`` with ``a < b`` in canonical order."""
    return [(b, a) for b in P.elements for a in P.sort(P.below(b))]


def defining_relations(P: RankedPoset, max_degree: int, field: FieldSpec = RATIONAL) -> dict[int, list[FreeTensor]]:
    """Relations ``e(pi, j) - e(pi_ref, j)`` in generator letters, by degree ``j >= 2``."""
    rels: dict[int, list[FreeTensor]] = {}
    for b, a in comparable_pairs(P):
        paths = enumerate_paths(P, b, a)
        if len(paths) < 2:
            continue
        ref = paths[0]
        for pi in paths[1:]:
            lin = substitute_v(expand_e(pi, 1, field) - expand_e(ref, 1, field))
            if not lin.is_zero():
                raise InternalCheckFailed(f"linear relation for {b}>{a} does not vanish")
            for j in range(2, min(P.d(b, a), max_degree) + 1):
                r = substitute_v(expand_e(pi, j, field) - expand_e(ref, j, field))
                if not r.is_zero():
                    rels.setdefault(j, []).append(r)
    return rels


def minimal_generator_counts(
    P: RankedPoset,
    max_degree: int,
    field: FieldSpec = RATIONAL,
    cap: int = 200_000,
    degrees: Iterable[int] | None = None,
) -> dict[int, int]:
    """Number of minimal relations of the filtered algebra, per degree.

    Computes ``dim I_q - dim (V I_{q-1} + I_{q-1} V)`` in the free algebra
    on the generators ``v_x``. Degrees with count zero are omitted. When
    ``degrees`` is given only those counts are reported (lower ideal pieces
    are still built as needed).
    """
    gens = list(P.plus)
    rels = defining_relations(P, max_degree, field)
    wanted = set(range(2, max_degree + 1)) if degrees is None else set(degrees)
    top = max(wanted, default=1)
    counts = {}
    prev: list[dict] = []
    for q in range(2, top + 1):
        if len(gens) ** q > cap:
            raise CapExceeded(f"tensor degree {q} ambient dimension", len(gens) ** q, cap)
        E = Echelon(field)
        for vec in prev:
            for x in gens:
                E.add({(x,) + w: c for w, c in vec.items()})
                E.add({w + (x,): c for w, c in vec.items()})
        base = E.rank
        for r in rels.get(q, []):
            E.add(r.terms)
        if q in wanted and E.rank > base:
            counts[q] = E.rank - base
        prev = E.basis()
    return counts


# -- the worked rank-4 example ---------------------------------------------


def _paths_by_vertices(P: RankedPoset, *names: str) -> Path:
    path = Path(tuple(names))
    for u, l in path.edges:
        if (u, l) not in P.covers:
            raise InternalCheckFailed(f"{u} -> {l} is not a cover")
    return path


def example5_tensors(field: FieldSpec = RATIONAL) -> dict[str, FreeTensor]:
    """Named quadratic and cubic elements of the rank-4 example poset."""
    from .families import example5

    P = example5()

    def e(j, *verts):
        return substitute_v(expand_e(_paths_by_vertices(P, *verts), j, field))

    t = {
        "Q1": e(2, "B", "X1", "Y1") - e(2, "B", "X2", "Y1"),
        "Q2": e(2, "B", "X2", "Y2") - e(2, "B", "X1", "Y2"),
        "Q3": e(2, "X1", "Y1", "Z1", STAR) - e(2, "X1", "Y2", "Z2", STAR),
        "Q4": e(2, "X2", "Y1", "Z1", STAR) - e(2, "X2", "Y2", "Z2", STAR),
        "C1": e(3, "B", "X1", "Y1", "Z1", STAR),
        "C2": e(3, "B", "X1", "Y2", "Z2", STAR),
        "C3": e(3, "B", "X2", "Y2", "Z2", STAR),
        "C4": e(3, "B", "X2", "Y1", "Z1", STAR),
        "U1": e(3, "X1", "Y1", "Z1", STAR),
        "V1": e(3, "X1", "Y2", "Z2", STAR),
        "U2": e(3, "X2", "Y1", "Z1", STAR),
        "V2": e(3, "X2", "Y2", "Z2", STAR),
    }
    return t


def verify_example5_identities(field: FieldSpec = RATIONAL, strict: bool = False) -> dict[str, bool]:
    """Check the tensor identities behind the relation count of the example.

    Returns ``name -> passed``. With ``strict`` an :class:`IdentityFailed`
    is raised for the first failure instead.
    """
    t = example5_tensors(field)
    Q1, Q2, Q3, Q4 = (t[k] for k in ("Q1", "Q2", "Q3", "Q4"))
    C1, C2, C3, C4 = (t[k] for k in ("C1", "C2", "C3", "C4"))
    U1, V1, U2, V2 = (t[k] for k in ("U1", "V1", "U2", "V2"))

    def v(*xs):
        return v_expr(*xs, field=field)

    B_X1 = v("B", ("X1", -1))
    B_X2 = v("B", ("X2", -1))
    Y1, Y2 = v("Y1"), v("Y2")
    cross = v("X1", ("X2", -1)) * v("Y1", ("Y2", -1))

    span = Echelon(field)
    span.extend(q.terms for q in (Q1, Q2, Q3, Q4))

    results = {
        "Q1+Q2 = (X1-X2)(Y1-Y2)": Q1 + Q2 == cross,
        "Q3-Q4 = (X1-X2)(Y1-Y2)": Q3 - Q4 == cross,
        "dim span{Q1..Q4} = 3": span.rank == 3,
        "C1-C2 = (B-X1)Q3 + (U1-V1)": C1 - C2 == B_X1 * Q3 + (U1 - V1),
        "C2-C3 = -Q2 Y2": C2 - C3 == -(Q2 * Y2),
        "C3-C4 = -(B-X2)Q4 + (V2-U2)": C3 - C4 == -(B_X2 * Q4) + (V2 - U2),
        "C1-C4 = Q1 Y1": C1 - C4 == Q1 * Y1,
        "(B-X1)Q3 - Q2 Y2 - (B-X2)Q4 - Q1 Y1 + (U1-V1) = U2-V2":
            B_X1 * Q3 - Q2 * Y2 - B_X2 * Q4 - Q1 * Y1 + (U1 - V1) == U2 - V2,
    }

    quad = Echelon(field)
    gens = ["B", "X1", "X2", "Y1", "Y2", "Z1", "Z2"]
    for q in (Q1, Q2, Q3, Q4):
        for x in gens:
            quad.add((v(x) * q).terms)
            quad.add((q * v(x)).terms)
    with_u1 = Echelon(field)
    with_u1.pivots = dict(quad.pivots)
    with_u1.add((U1 - V1).terms)
    results["U1-V1 generates U2-V2 modulo quadratics"] = with_u1.contains((U2 - V2).terms)
    with_u2 = Echelon(field)
    with_u2.pivots = dict(quad.pivots)
    with_u2.add((U2 - V2).terms)
    results["U2-V2 generates U1-V1 modulo quadratics"] = with_u2.contains((U1 - V1).terms)
    results["U1-V1 not generated by quadratics"] = not quad.contains((U1 - V1).terms)

    if strict:
        for name, ok in results.items():
            if not ok:
                raise IdentityFailed(name)
    return results
