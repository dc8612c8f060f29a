"""Exact linear algebra over the rationals or a prime field.

Vectors are sparse dicts ``key -> scalar`` with sortable keys. Elimination
always pivots on the least key of a vector, so results (including the
stored echelon basis) are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .errors import DimensionMismatch


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("rational field takes no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip().lower()
        if text in ("rational", "q", "qq"):
            return RATIONAL
        if text.startswith("fp:"):
            try:
                return cls("prime", int(text[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field spec {text!r}: {exc}") from None
        raise ValueError(f"bad field spec {text!r}; expected 'rational' or 'fp:<prime>'")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    def __str__(self) -> str:
        return "rational" if self.kind == "rational" else f"fp:{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    def coerce(self, x):
        if self.p is None:
            return x if isinstance(x, (int, Fraction)) else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p

    def inv(self, x):
        if self.p is None:
            return Fraction(1) / x
        return pow(x, -1, self.p)

    def normalize(self, x):
        """Canonical representative; rationals that are integral become ``int``."""
        if self.p is not None:
            return x % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x


RATIONAL = FieldSpec()
GF2 = FieldSpec("prime", 2)


class Echelon:
    """Incrementally built row space in reduced-leading-term form.

    Each stored vector has leading coefficient 1 at its pivot (least key).
    """

    def __init__(self, F: FieldSpec = RATIONAL):
        self.F = F
        self.pivots: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping) -> dict:
        """Reduce ``vec`` against the basis; returns the nonzero remainder (or ``{}``)."""
        F = self.F
        p = F.p
        v = {}
        for k, c in vec.items():
            c = F.coerce(c)
            if c:
                v[k] = c
        pivots = self.pivots
        done: dict = {}
        # Leading-term elimination; terms below the current pivot are settled.
        while v:
            lead = min(v)
            c = v.pop(lead)
            row = pivots.get(lead)
            if row is None:
                done[lead] = c
                continue
            for k, a in row.items():
                if k == lead:
                    continue
                nv = v.get(k, 0) - c * a
                if p is not None:
                    nv %= p
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return done

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; returns True iff it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        inv = self.F.inv(r[lead])
        p = self.F.p
        if p is None:
            row = {k: c * inv for k, c in r.items()}
        else:
            row = {k: c * inv % p for k, c in r.items()}
        self.pivots[lead] = row
        return True

    def extend(self, vecs: Iterable[Mapping]) -> int:
        return sum(self.add(v) for v in vecs)

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[dict]:
        return [self.pivots[k] for k in sorted(self.pivots)]


def span_rank(vecs: Iterable[Mapping], F: FieldSpec = RATIONAL) -> int:
    E = Echelon(F)
    E.extend(vecs)
    return E.rank


@dataclass
class ExactMatrix:
    """Sparse matrix; ``entries[(i, j)]`` is the scalar in row i, column j."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], object] = field(default_factory=dict)

    def __post_init__(self):
        for (i, j) in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise DimensionMismatch(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")

    @classmethod
    def from_dense(cls, data: list[list]) -> "ExactMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise DimensionMismatch("ragged dense matrix")
            for j, x in enumerate(row):
                if x:
                    entries[(i, j)] = x
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def columns(self) -> list[dict[int, object]]:
        cols: list[dict[int, object]] = [{} for _ in range(self.cols)]
        for (i, j), x in self.entries.items():
            cols[j][i] = x
        return cols

    def row_vectors(self) -> list[dict[int, object]]:
        rows: list[dict[int, object]] = [{} for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            rows[i][j] = x
        return rows

    def matmul(self, other: "ExactMatrix", F: FieldSpec = RATIONAL) -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, dict[int, object]] = {}
        for (k, j), x in other.entries.items():
            by_row.setdefault(k, {})[j] = x
        out: dict[tuple[int, int], object] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, {}).items():
                out[(i, j)] = out.get((i, j), 0) + F.coerce(a) * F.coerce(b)
        out = {ij: F.normalize(x) for ij, x in out.items() if F.normalize(x)}
        return ExactMatrix(self.rows, other.cols, out)

    def is_zero(self, F: FieldSpec = RATIONAL) -> bool:
        return all(not F.coerce(x) for x in self.entries.values())


def rank(M: ExactMatrix, F: FieldSpec = RATIONAL) -> int:
    # Row and column rank agree; eliminate along whichever side is shorter.
    vecs = M.columns() if M.cols <= M.rows else M.row_vectors()
    return span_rank(vecs, F)


def kernel_dim(M: ExactMatrix, F: FieldSpec = RATIONAL) -> int:
    return M.cols - rank(M, F)


def solve_membership(v: Mapping, rows: Iterable[Mapping], F: FieldSpec = RATIONAL, width: int | None = None) -> bool:
    """Is ``v`` in the span of ``rows``?

    When ``width`` is given, integer keys must lie in ``range(width)``.
    """
    rows = list(rows)
    if width is not None:
        for vec in [v, *rows]:
            for k in vec:
                if not (isinstance(k, int) and 0 <= k < width):
                    raise DimensionMismatch(f"index {k!r} outside width {width}")
    E = Echelon(F)
    E.extend(rows)
    return E.contains(v)
