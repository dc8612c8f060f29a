"""Uniform / Cohen-Macaulay / condition (*) / quadratic / Koszul verdicts.

Each property is decided twice: once combinatorially on the poset and once
from the Ext table, so that the equivalences between them can be tested.
Witnesses are the first failure in the canonical ``(rank, id)`` order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import order_complex, reduced_betti, relative_betti
from .linalg import RATIONAL, FieldSpec
from .poset import RankedPoset, sphere, window
from .tables import ExtTable, ext_table, window_betti


@dataclass
class Verdict:
    property: str
    value: bool
    field: str | None = None
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"property": self.property, "value": self.value, "field": self.field, "witness": self.witness}


def _classes(P: RankedPoset, items: list[str], linked) -> list[list[str]]:
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, a in enumerate(items):
        for b in items[i + 1:]:
            if linked(a, b):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb, key=P.key)] = min(ra, rb, key=P.key)
    groups: dict[str, list[str]] = {}
    for x in items:
        groups.setdefault(find(x), []).append(x)
    return sorted((P.sort(g) for g in groups.values()), key=lambda g: P.key(g[0]))


def uniform(P: RankedPoset) -> Verdict:
    for x in P.elements:
        covers = P.sort(sphere(P, x, 1))
        if len(covers) < 2:
            continue
        down = {a: sphere(P, a, 1) for a in covers}
        classes = _classes(P, covers, lambda a, b: bool(down[a] & down[b]))
        if len(classes) > 1:
            return Verdict("uniform", False, None, {"element": x, "classes": classes})
    return Verdict("uniform", True)


def uniform_via_windows(P: RankedPoset) -> Verdict:
    for b in P.elements:
        if P.rank(b) < 3:
            continue
        members = list(window(P, b, 3).members)
        comps = _classes(P, members, lambda u, v: P.lt(u, v) or P.lt(v, u))
        if len(comps) > 1:
            return Verdict("uniform", False, None, {"element": b, "width": 3, "components": comps})
    return Verdict("uniform", True)


def cohen_macaulay(P: RankedPoset, F: FieldSpec = RATIONAL) -> Verdict:
    for b in P.elements:
        for a in P.sort(P.below(b)):
            top = P.d(b, a) - 2
            betti = reduced_betti(order_complex(P, P.open_interval(a, b)), F)
            for n in sorted(betti):
                if betti[n] and n != top:
                    return Verdict("cohen_macaulay", False, str(F), {"a": a, "b": b, "n": n, "dim": betti[n]})
    return Verdict("cohen_macaulay", True, str(F))


def condition_star(P: RankedPoset, F: FieldSpec = RATIONAL) -> Verdict:
    for b in P.plus:
        for q in range(1, P.rank(b) + 1):
            vec = window_betti(P, b, q, F)
            # vec[i] is H~_{i-1}, i.e. the term indexed by n = i + 1
            for i, v in enumerate(vec):
                n = i + 1
                if v and n < q:
                    return Verdict("condition_star", False, str(F), {"b": b, "q": q, "n": n, "dim": v})
    return Verdict("condition_star", True, str(F))


def _contributors(table: ExtTable, p: int, q: int) -> list[str]:
    return [b for (b, w), vec in table.breakdown.items() if w == q and len(vec) > p - 1 and vec[p - 1]]


def quadratic_verdict(table: ExtTable) -> Verdict:
    for (p, q), v in sorted(table.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if p == 2 and q > 2 and v:
            bases = _contributors(table, p, q)
            return Verdict("quadratic", False, str(table.field), {"p": p, "q": q, "dim": v, "b": bases[0], "bases": bases})
    return Verdict("quadratic", True, str(table.field))


def koszul_verdict(table: ExtTable) -> Verdict:
    for (p, q), v in sorted(table.entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if p != q and v:
            bases = _contributors(table, p, q)
            return Verdict("koszul", False, str(table.field), {"p": p, "q": q, "dim": v, "b": bases[0], "bases": bases})
    return Verdict("koszul", True, str(table.field))


def classify(P: RankedPoset, F: FieldSpec = RATIONAL, table: ExtTable | None = None) -> list[Verdict]:
    table = table or ext_table(P, F)
    return [
        uniform(P),
        cohen_macaulay(P, F),
        condition_star(P, F),
        quadratic_verdict(table),
        koszul_verdict(table),
    ]


@dataclass
class Disagreement:
    statement: str
    values: dict[str, bool]


def equivalence_disagreements(P: RankedPoset, F: FieldSpec = RATIONAL, table: ExtTable | None = None) -> list[Disagreement]:
    """Empty when every predicted equivalence holds on ``P``."""
    table = table or ext_table(P, F)
    out = []
    uni = {
        "uniform": uniform(P).value,
        "windows_connected": uniform_via_windows(P).value,
        "quadratic": quadratic_verdict(table).value,
    }
    if len(set(uni.values())) > 1:
        out.append(Disagreement("uniform = windows connected = quadratic", uni))
    cm = {
        "cohen_macaulay": cohen_macaulay(P, F).value,
        "condition_star": condition_star(P, F).value,
        "koszul": koszul_verdict(table).value,
    }
    if len(set(cm.values())) > 1:
        out.append(Disagreement("cohen_macaulay = condition (*) = koszul", cm))
    if cm["koszul"] and not uni["quadratic"]:
        out.append(Disagreement("koszul implies quadratic", {**cm, **uni}))
    return out


def relative_decomposition_failures(P: RankedPoset, F: FieldSpec = RATIONAL) -> list[dict]:
    """Compare relative homology of consecutive windows with the interval sum.

    For ``2 <= p <= rk(b)``: ``dim H_n(win(b,p), win(b,p-1))`` should equal the
    sum over ``a`` at distance ``p - 1`` below ``b`` of ``dim H~_{n-1}((a, b))``.
    """
    bad = []
    for b in P.plus:
        for p in range(2, P.rank(b) + 1):
            K = order_complex(P, window(P, b, p).members)
            L = order_complex(P, window(P, b, p - 1).members)
            lhs = relative_betti(K, L, F)
            rhs: dict[int, int] = {}
            for a in P.sort(sphere(P, b, p - 1)):
                for m, v in reduced_betti(order_complex(P, P.open_interval(a, b)), F).items():
                    rhs[m + 1] = rhs.get(m + 1, 0) + v
            keys = set(lhs) | set(rhs)
            if any(lhs.get(n, 0) != rhs.get(n, 0) for n in keys):
                bad.append({"b": b, "p": p, "relative": lhs, "intervals": rhs})
    return bad
