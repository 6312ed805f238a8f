"""Exact linear algebra over the rationals.

Scalars are arbitrary-precision rationals (``fractions.Fraction``), which
already carry the canonical invariants we need: reduced representation and
a positive denominator. The elimination kernel works on denominator-cleared
integer rows with per-row gcd reduction, which keeps entry growth bounded
in practice while every intermediate value stays exact. No floating point
appears anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "DEFAULT_MAX_CELLS",
    "DimensionMismatchError",
    "DimensionOverflowError",
    "NullspaceBasis",
    "SparseMatrix",
    "in_span",
    "nullspace",
    "rank",
    "row_space_basis",
    "scalar_from_str",
    "scalar_to_str",
]

DEFAULT_MAX_CELLS = 200_000_000


class DimensionOverflowError(Exception):
    """The matrix exceeds the configured cell limit; the window is too large."""


class DimensionMismatchError(Exception):
    """A vector length does not match the expected column count."""


def scalar_from_str(text: str) -> Fraction:
    """Parse a ``"p/q"`` or plain ``"p"`` string into an exact rational."""
    return Fraction(str(text).strip())


def scalar_to_str(value) -> str:
    """Render an exact rational as ``"p/q"``, or just ``"p"`` when q = 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


class SparseMatrix:
    """Immutable sparse matrix with Fraction entries.

    Entries are kept sorted by (row, col) with no explicit zeros and no
    duplicates, so iteration is deterministic however the matrix was built.
    Rows with no entries still count toward ``n_rows``.
    """

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows: int, n_cols: int, entries=()):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        cleaned = {}
        for r, c, v in entries:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError("entry (%r, %r) out of range" % (r, c))
            if (r, c) in cleaned:
                raise ValueError("duplicate entry at (%r, %r)" % (r, c))
            v = Fraction(v)
            if v:
                cleaned[(r, c)] = v
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = tuple(sorted((r, c, v) for (r, c), v in cleaned.items()))

    @classmethod
    def from_rows(cls, rows):
        """Build from an iterable of dense rows."""
        rows = [list(row) for row in rows]
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        ents = []
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v:
                    ents.append((r, c, Fraction(v)))
        return cls(len(rows), width, ents)

    def row_dicts(self):
        rows = [dict() for _ in range(self.n_rows)]
        for r, c, v in self.entries:
            rows[r][c] = v
        return rows

    def apply(self, vector):
        """Exact matrix-vector product."""
        if len(vector) != self.n_cols:
            raise DimensionMismatchError(
                "vector length %d != %d columns" % (len(vector), self.n_cols))
        out = [Fraction(0)] * self.n_rows
        for r, c, v in self.entries:
            out[r] += v * vector[c]
        return tuple(out)

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (
            self.n_rows, self.n_cols, len(self.entries))


def _gcd_normalize(row):
    """Divide an integer row by its content; make the leading entry positive."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g == 0:
        return {}
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _int_row(row):
    """Clear denominators of a Fraction dict row and gcd-normalize."""
    if not row:
        return {}
    lcm = 1
    for v in row.values():
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    return _gcd_normalize(
        {c: v.numerator * (lcm // v.denominator) for c, v in row.items()})


class _IntEchelon:
    """Incremental row echelon over gcd-reduced integer rows.

    Rows are keyed by leading column. The reduced result extracted at the
    end is the unique reduced echelon form of the row space, so insertion
    order never shows in the output.
    """

    def __init__(self):
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, row):
        """Return the normalized remainder of ``row`` against the basis."""
        row = dict(row)
        while row:
            lead = min(row)
            pivot = self.rows.get(lead)
            if pivot is None:
                return _gcd_normalize(row)
            a = row[lead]
            b = pivot[lead]
            g = gcd(a, b)
            ma = b // g
            mb = a // g
            out = {c: v * ma for c, v in row.items()}
            for c, v in pivot.items():
                w = out.get(c, 0) - v * mb
                if w:
                    out[c] = w
                else:
                    out.pop(c, None)
            row = _gcd_normalize(out) if out else {}
        return {}

    def insert(self, row) -> bool:
        rem = self.reduce(row)
        if not rem:
            return False
        self.rows[min(rem)] = rem
        return True

    def reduced_fraction_rows(self):
        """Back-substitute into reduced echelon rows with unit pivots."""
        reduced = {}
        for col in sorted(self.rows, reverse=True):
            src = self.rows[col]
            inv = Fraction(1, src[col])
            row = {c: v * inv for c, v in src.items()}
            for p in [c for c in row if c != col and c in reduced]:
                coeff = row.pop(p)
                for cc, vv in reduced[p].items():
                    if cc == p:
                        continue
                    w = row.get(cc, 0) - coeff * vv
                    if w:
                        row[cc] = w
                    else:
                        row.pop(cc, None)
            reduced[col] = row
        return reduced


def _echelonize(m: SparseMatrix, max_cells, early_stop=True) -> _IntEchelon:
    limit = DEFAULT_MAX_CELLS if max_cells is None else max_cells
    if m.n_rows * m.n_cols > limit:
        raise DimensionOverflowError(
            "%dx%d matrix exceeds the %d-cell limit" % (m.n_rows, m.n_cols, limit))
    ech = _IntEchelon()
    seen = set()
    for row in m.row_dicts():
        if not row:
            continue
        introw = _int_row(row)
        sig = tuple(sorted(introw.items()))
        if sig in seen:
            continue
        seen.add(sig)
        ech.insert(introw)
        if early_stop and ech.rank == m.n_cols:
            break
    return ech


@dataclass(frozen=True)
class NullspaceBasis:
    """Canonical basis of a matrix kernel.

    Vector k carries a unit entry at its own free column and zeros at all
    other free columns, which makes the basis uniquely determined by the
    kernel itself: golden comparisons stay byte-stable.
    """

    n_cols: int
    vectors: tuple

    @property
    def dimension(self) -> int:
        return len(self.vectors)


def nullspace(m: SparseMatrix, max_cells=None) -> NullspaceBasis:
    """Exact canonical kernel basis of ``m``.

    Deterministic: the result depends only on the row space of ``m``, not
    on entry insertion order or row scaling.
    """
    ech = _echelonize(m, max_cells)
    if ech.rank == m.n_cols:
        return NullspaceBasis(m.n_cols, ())
    reduced = ech.reduced_fraction_rows()
    pivots = sorted(reduced)
    pivot_set = set(pivots)
    zero = Fraction(0)
    one = Fraction(1)
    vectors = []
    for f in range(m.n_cols):
        if f in pivot_set:
            continue
        vec = [zero] * m.n_cols
        vec[f] = one
        for p in pivots:
            if p >= f:
                break
            coeff = reduced[p].get(f)
            if coeff:
                vec[p] = -coeff
        vectors.append(tuple(vec))
    return NullspaceBasis(m.n_cols, tuple(vectors))


def rank(m: SparseMatrix, max_cells=None) -> int:
    """Exact rank over the rationals; rank + kernel dimension = n_cols."""
    return _echelonize(m, max_cells).rank


def row_space_basis(m: SparseMatrix, max_cells=None):
    """Canonical reduced-echelon basis of the row space of ``m``."""
    reduced = _echelonize(m, max_cells).reduced_fraction_rows()
    zero = Fraction(0)
    out = []
    for p in sorted(reduced):
        vec = [zero] * m.n_cols
        for c, v in reduced[p].items():
            vec[c] = v
        out.append(tuple(vec))
    return tuple(out)


def _vector_int_row(vector):
    return _int_row({c: Fraction(v) for c, v in enumerate(vector) if v})


def in_span(vector, basis: NullspaceBasis) -> bool:
    """Whether ``vector`` is a rational combination of the basis vectors."""
    if len(vector) != basis.n_cols:
        raise DimensionMismatchError(
            "vector length %d != %d columns" % (len(vector), basis.n_cols))
    ech = _IntEchelon()
    for b in basis.vectors:
        ech.insert(_vector_int_row(b))
    return not ech.reduce(_vector_int_row(vector))
