"""Symbolic free resolution of the ground field over the graded algebra.

Basis terms are pairs ``(m, beta)`` of a good monomial and a chain symbol
``beta = (b_n > ... > b_0) / (b, q)``, a chain of the window of width ``q``
under ``b``. The differential, its augmentation and the contracting
homotopy act on finite linear combinations of such terms, and every check
here is an exhaustive computation over all terms up to a bound on the total
internal degree ``deg(m) + q``, which both maps preserve.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .algebra import ONE, GoodMonomials, Letter, Monomial, format_monomial
from .complexes import boundary_terms, poset_chains
from .errors import CapExceeded, DegreeMismatch, InternalCheckFailed
from .linalg import RATIONAL, Echelon, FieldSpec
from .poset import RankedPoset, window


class ChainSymbol(NamedTuple):
    base: str
    width: int
    chain: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return len(self.chain) - 1

    def __str__(self) -> str:
        return f"({'>'.join(self.chain)})/({self.base},{self.width})"


Term = tuple[Monomial, ChainSymbol]


class _Combination:
    """Sparse linear combination with coefficients reduced in a field."""

    __slots__ = ("field", "terms")

    def __init__(self, terms=None, field: FieldSpec = RATIONAL):
        self.field = field
        self.terms = {}
        for k, c in (terms or {}).items():
            self._acc(k, c)

    def _acc(self, key, c):
        F = self.field
        c = F.normalize(F.coerce(self.terms.get(key, 0)) + F.coerce(c))
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def __add__(self, other):
        out = type(self)(self.terms, self.field)
        for k, c in other.terms.items():
            out._acc(k, c)
        return out

    def __sub__(self, other):
        out = type(self)(self.terms, self.field)
        for k, c in other.terms.items():
            out._acc(k, -c)
        return out

    def __eq__(self, other):
        return type(self) is type(other) and not (self - other).terms

    def __bool__(self):
        return bool(self.terms)

    def scale(self, c):
        return type(self)({k: v * c for k, v in self.terms.items()}, self.field)


class AlgebraElement(_Combination):
    """Linear combination of good monomials."""

    def __repr__(self):
        return " + ".join(f"{c}·{format_monomial(m)}" for m, c in sorted(self.terms.items())) or "0"


class ResolutionElement(_Combination):
    """Linear combination of ``(monomial, symbol)`` terms."""

    def __repr__(self):
        return " + ".join(
            f"{c}·{format_monomial(m)}⊗{s}" for (m, s), c in sorted(self.terms.items())
        ) or "0"

    def homological_degrees(self) -> set[int]:
        return {s.n for _, s in self.terms}


class Resolution:
    """The complex ``A' ⊗ C`` over a fixed poset and field."""

    def __init__(self, P: RankedPoset, F: FieldSpec = RATIONAL):
        self.P = P
        self.F = F
        self.A = GoodMonomials(P)
        self._windows: dict[tuple[str, int], frozenset[str]] = {}

    # -- basis ----------------------------------------------------------------

    def term(self, m: Monomial, s: ChainSymbol, c=1) -> ResolutionElement:
        return ResolutionElement({(m, s): c}, self.F)

    def algebra(self, m: Monomial, c=1) -> AlgebraElement:
        return AlgebraElement({m: c}, self.F)

    def window_members(self, b: str, q: int) -> frozenset[str]:
        if (b, q) not in self._windows:
            self._windows[(b, q)] = frozenset(window(self.P, b, q).members)
        return self._windows[(b, q)]

    def is_valid(self, s: ChainSymbol) -> bool:
        P = self.P
        if s.base not in P.plus or not 1 <= s.width <= P.rank(s.base):
            return False
        members = self.window_members(s.base, s.width)
        if not all(x in members for x in s.chain):
            return False
        return all(P.gt(a, b) for a, b in zip(s.chain, s.chain[1:]))

    def symbols_in(self, b: str, q: int) -> list[ChainSymbol]:
        chains = poset_chains(self.P, self.window_members(b, q))
        key = self.P.key
        chains.sort(key=lambda ch: (len(ch), [key(v) for v in ch]))
        return [ChainSymbol(b, q, ())] + [ChainSymbol(b, q, ch) for ch in chains]

    def enumerate_symbols(self, n: int | None, max_width: int) -> list[ChainSymbol]:
        """Symbols of homological degree ``n`` (all degrees if ``None``) with width <= bound."""
        out = []
        for b in self.P.plus:
            for q in range(1, min(self.P.rank(b), max_width) + 1):
                out.extend(s for s in self.symbols_in(b, q) if n is None or s.n == n)
        return out

    def basis_terms(self, D: int) -> Iterator[Term]:
        """Every ``(m, beta)`` with ``deg(m) + width(beta) <= D``."""
        by_degree = {d: list(self.A.iter_good(d)) for d in range(0, D)}
        for s in self.enumerate_symbols(None, D):
            for d in range(0, D - s.width + 1):
                for m in by_degree[d]:
                    yield (m, s)

    def internal_degree(self, t: Term) -> int:
        m, s = t
        return self.A.degree(m) + s.width

    def value(self, t: Term) -> Monomial:
        """``m * e'(b, q)``; both maps preserve it, so it labels a direct summand."""
        m, s = t
        return self.A.multiply(m, (Letter(s.base, s.width),))

    # -- maps -------------------------------------------------------------------

    def _homogeneous(self, e: ResolutionElement) -> tuple[int, int] | None:
        degs = {(s.n, self.internal_degree((m, s))) for m, s in e.terms}
        if len(degs) > 1:
            raise DegreeMismatch(f"element mixes (homological, internal) degrees {sorted(degs)}")
        return next(iter(degs), None)

    def differential(self, e: ResolutionElement) -> ResolutionElement | AlgebraElement:
        """``d`` on ``A' ⊗ C_n``; for ``n = -1`` this is the augmentation into ``A'``."""
        deg = self._homogeneous(e)
        if deg is None:
            return ResolutionElement(field=self.F)
        if deg[0] == -1:
            return self.augmentation(e)
        P, A = self.P, self.A
        out: dict = {}

        def acc(key, c):
            out[key] = out.get(key, 0) + c

        for (m, s), c in e.terms.items():
            b, q, chain = s
            top = chain[0]
            k = P.d(b, top)
            acc((A.multiply(m, (A.f(b, top),)), ChainSymbol(top, q - k, chain[1:])), c)
            for face, sign in boundary_terms(chain):
                acc((m, ChainSymbol(b, q, face)), -sign * c)
        res = ResolutionElement(out, self.F)
        self._assert_preserved(deg[1], res)
        return res

    def augmentation(self, e: ResolutionElement) -> AlgebraElement:
        out: dict = {}
        for (m, s), c in e.terms.items():
            if s.n != -1:
                raise DegreeMismatch("augmentation is defined on empty-chain symbols only")
            key = self.A.multiply(m, (Letter(s.base, s.width),))
            out[key] = out.get(key, 0) + c
        return AlgebraElement(out, self.F)

    def homotopy(self, e: ResolutionElement | AlgebraElement) -> ResolutionElement:
        """The contracting homotopy, on resolution terms or on algebra elements."""
        P = self.P
        out: dict = {}
        if isinstance(e, AlgebraElement):
            for m, c in e.terms.items():
                if m:
                    z, j = m[-1]
                    key = (m[:-1], ChainSymbol(z, j, ()))
                    out[key] = out.get(key, 0) + c
            return ResolutionElement(out, self.F)
        deg = self._homogeneous(e)
        for (m, s), c in e.terms.items():
            if not m:
                continue
            z, j = m[-1]
            b = s.base
            # the merge test only involves the last letter and the base
            if P.gt(z, b) and j == P.d(z, b):
                key = (m[:-1], ChainSymbol(z, s.width + j, (b,) + s.chain))
                out[key] = out.get(key, 0) + c
        res = ResolutionElement(out, self.F)
        if deg is not None:
            self._assert_preserved(deg[1], res)
        return res

    def _assert_preserved(self, degree: int, e: ResolutionElement) -> None:
        for t in e.terms:
            if self.internal_degree(t) != degree:
                raise InternalCheckFailed(f"internal degree changed: {t} has {self.internal_degree(t)}, expected {degree}")

    def kill_augmentation(self, e: ResolutionElement) -> ResolutionElement:
        """Drop every term whose monomial has positive degree (tensoring with the field)."""
        return ResolutionElement({t: c for t, c in e.terms.items() if not t[0]}, self.F)


# -- checks -------------------------------------------------------------------


@dataclass
class CheckResult:
    check: str
    poset: str
    degree_bound: int
    status: str
    witness: str | None = None
    count: int = 0
    details: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "poset": self.poset,
            "degree_bound": self.degree_bound,
            "status": self.status,
            "terms_checked": self.count,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _term_sort_key(R: Resolution, t: Term):
    m, s = t
    key = R.P.key
    return (
        R.internal_degree(t),
        s.n,
        R.A.monomial_key(m),
        key(s.base),
        s.width,
        [key(v) for v in s.chain],
    )


def _first_failure(R: Resolution, terms: Iterable[Term], ok) -> tuple[int, Term | None]:
    failures = []
    count = 0
    for t in terms:
        count += 1
        if not ok(t):
            failures.append(t)
    if not failures:
        return count, None
    return count, min(failures, key=lambda t: _term_sort_key(R, t))


def _fmt(t: Term) -> str:
    return f"{format_monomial(t[0])}⊗{t[1]}"


def _name(P: RankedPoset) -> str:
    return P.name or "poset"


def check_d_squared(P: RankedPoset, D: int, F: FieldSpec = RATIONAL) -> CheckResult:
    R = Resolution(P, F)

    def ok(t):
        if t[1].n < 0:
            return True
        x = R.term(*t)
        once = R.differential(x)
        return not R.differential(once)

    count, bad = _first_failure(R, R.basis_terms(D), ok)
    return CheckResult("d_squared", _name(P), D, "pass" if bad is None else "fail", bad and _fmt(bad), count)


def check_homotopy_identity(P: RankedPoset, D: int, F: FieldSpec = RATIONAL) -> CheckResult:
    """``zeta d + d zeta = id`` on every term, and ``d zeta = id`` on positive monomials."""
    R = Resolution(P, F)

    def ok(t):
        x = R.term(*t)
        dz = R.differential(R.homotopy(x))
        zd = R.homotopy(R.differential(x))
        return dz + zd == x

    count, bad = _first_failure(R, R.basis_terms(D), ok)
    witness = bad and _fmt(bad)
    if bad is None:
        for d in range(1, D + 1):
            for m in R.A.iter_good(d):
                count += 1
                a = R.algebra(m)
                if R.differential(R.homotopy(a)) != a:
                    witness = f"algebra element {format_monomial(m)}"
                    break
            if witness:
                break
    return CheckResult("homotopy", _name(P), D, "pass" if witness is None else "fail", witness, count)


def check_augmentation_image(P: RankedPoset, D: int, F: FieldSpec = RATIONAL) -> CheckResult:
    """The images ``m * e'(b, q)`` span the positive part of the algebra in each degree."""
    R = Resolution(P, F)
    h = R.A.hilbert_coeffs(D)
    dims = {}
    witness = None
    for t in range(1, D + 1):
        E = Echelon(F)
        for b in P.plus:
            for q in range(1, min(P.rank(b), t) + 1):
                for m in R.A.iter_good(t - q):
                    E.add(R.augmentation(R.term(m, ChainSymbol(b, q))).terms)
        dims[t] = E.rank
        if E.rank != h[t] and witness is None:
            witness = f"degree {t}: span {E.rank}, expected {h[t]}"
    status = "pass" if witness is None else "fail"
    return CheckResult("augmentation_image", _name(P), D, status, witness, sum(h[1:]), {"span_dims": dims})


def _block_ranks(R: Resolution, terms: list[Term], apply) -> int:
    """Rank of a linear map given on basis terms, computed per value block."""
    blocks: dict[Monomial, list[Term]] = {}
    for t in terms:
        blocks.setdefault(R.value(t), []).append(t)
    total = 0
    for group in blocks.values():
        E = Echelon(R.F)
        for t in group:
            E.add(apply(t).terms)
        total += E.rank
    return total


def check_exactness(P: RankedPoset, D: int, F: FieldSpec = RATIONAL, cap: int = 500_000) -> CheckResult:
    """Rank-based exactness of ``... -> C_0 -> C_{-1} -> A'_t -> 0`` for ``1 <= t <= D``."""
    R = Resolution(P, F)
    by_pos: dict[tuple[int, int], list[Term]] = {}
    n_terms = 0
    for t in R.basis_terms(D):
        n_terms += 1
        if n_terms > cap:
            raise CapExceeded("resolution basis terms", n_terms, cap)
        by_pos.setdefault((R.internal_degree(t), t[1].n), []).append(t)
    h = R.A.hilbert_coeffs(D)

    def d_of(t):
        return R.differential(R.term(*t))

    witness = None
    for deg in range(1, D + 1):
        top = max((n for (d, n) in by_pos if d == deg), default=-1)
        ranks = {}
        for n in range(-1, top + 1):
            ranks[n] = _block_ranks(R, by_pos.get((deg, n), []), d_of)
        if ranks[-1] != h[deg]:
            witness = f"degree {deg}: augmentation rank {ranks[-1]} != {h[deg]}"
            break
        for n in range(-1, top + 1):
            dim = len(by_pos.get((deg, n), []))
            homology = dim - ranks[n] - ranks.get(n + 1, 0)
            if homology:
                witness = f"degree {deg}, position {n}: homology {homology}"
                break
        if witness:
            break
    return CheckResult("exactness", _name(P), D, "pass" if witness is None else "fail", witness, n_terms)


def killed_betti(P: RankedPoset, F: FieldSpec = RATIONAL, max_width: int | None = None) -> dict[tuple[str, int], list[int]]:
    """Homology of ``F ⊗ (A' ⊗ C)`` per ``(b, q)``, as ``[H_{-1}, ..., H_{q-2}]``."""
    R = Resolution(P, F)
    out = {}
    for b in P.plus:
        top = P.rank(b) if max_width is None else min(P.rank(b), max_width)
        for q in range(1, top + 1):
            syms = R.symbols_in(b, q)
            by_n: dict[int, list[ChainSymbol]] = {}
            for s in syms:
                by_n.setdefault(s.n, []).append(s)
            ranks = {}
            for n, group in by_n.items():
                if n < 0:
                    ranks[n] = 0
                    continue
                E = Echelon(F)
                for s in group:
                    E.add(R.kill_augmentation(R.differential(R.term(ONE, s))).terms)
                ranks[n] = E.rank
            out[(b, q)] = [
                len(by_n.get(n, [])) - ranks.get(n, 0) - ranks.get(n + 1, 0) for n in range(-1, q - 1)
            ]
    return out


def run_resolution_checks(P: RankedPoset, D: int, F: FieldSpec = RATIONAL) -> list[CheckResult]:
    return [
        check_d_squared(P, D, F),
        check_homotopy_identity(P, D, F),
        check_augmentation_image(P, D, F),
    ]
