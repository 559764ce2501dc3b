"""Exact sparse linear algebra over the rationals with a finite-field
cross-check.

Pivot selection is fixed (lowest column, then lowest surviving row) so
echelon data and the quotient bases built on it are reproducible across
runs.  The matrices arising here are small and very sparse; exactness
matters, fill-in does not.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .errors import BadPrime


class SparseMat:
    """Sparse rational matrix stored as one dict per row."""

    def __init__(self, n_rows: int, n_cols: int):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._rows: list[dict[int, Fraction]] = [dict() for _ in range(n_rows)]

    @classmethod
    def from_rows(cls, rows, n_cols) -> "SparseMat":
        m = cls(len(rows), n_cols)
        for i, row in enumerate(rows):
            for j, v in row.items():
                m[i, j] = v
        return m

    @classmethod
    def from_dense(cls, rows) -> "SparseMat":
        n_cols = len(rows[0]) if rows else 0
        m = cls(len(rows), n_cols)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                m[i, j] = v
        return m

    def __setitem__(self, idx, value):
        i, j = idx
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(idx)
        value = Fraction(value)
        if value:
            self._rows[i][j] = value
        else:
            self._rows[i].pop(j, None)

    def __getitem__(self, idx):
        i, j = idx
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(idx)
        return self._rows[i].get(j, Fraction(0))

    def row(self, i) -> dict[int, Fraction]:
        return dict(self._rows[i])

    def entries(self):
        for i, row in enumerate(self._rows):
            for j, v in row.items():
                yield i, j, v

    def n_entries(self) -> int:
        return sum(len(r) for r in self._rows)

    def transpose(self) -> "SparseMat":
        m = SparseMat(self.n_cols, self.n_rows)
        for i, j, v in self.entries():
            m[j, i] = v
        return m

    def __eq__(self, other):
        return (
            isinstance(other, SparseMat)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self._rows == other._rows
        )


def _eliminate(rows, n_cols, reduce_fully):
    """Shared elimination engine.

    Returns (pivots, final_rows) where pivots is a list of (col, row_index
    into final_rows).  With reduce_fully the surviving rows are normalized
    and back-substituted (reduced row echelon data).
    """
    rows = [dict(r) for r in rows]
    by_col = defaultdict(set)
    for i, r in enumerate(rows):
        for j in r:
            by_col[j].add(i)
    used = set()
    pivots = []
    for col in range(n_cols):
        live = sorted(i for i in by_col[col] if i not in used)
        if not live:
            continue
        piv = live[0]
        used.add(piv)
        pivots.append((col, piv))
        prow = rows[piv]
        pval = prow[col]
        targets = [i for i in by_col[col] if i != piv and (reduce_fully or i not in used)]
        for i in targets:
            r = rows[i]
            factor = r[col] / pval
            for j, v in prow.items():
                new = r.get(j, Fraction(0)) - factor * v
                if new:
                    if j not in r:
                        by_col[j].add(i)
                    r[j] = new
                else:
                    if j in r:
                        del r[j]
                        by_col[j].discard(i)
    if reduce_fully:
        for col, piv in pivots:
            prow = rows[piv]
            pval = prow[col]
            if pval != 1:
                rows[piv] = {j: v / pval for j, v in prow.items()}
    return pivots, rows


def rank(m: SparseMat) -> int:
    """Exact rank over the rationals."""
    pivots, _ = _eliminate(m._rows, m.n_cols, reduce_fully=False)
    return len(pivots)


def echelonize(m: SparseMat):
    """Deterministic reduced row-echelon data.

    Returns (pivot_cols, reduced_rows): pivot columns in increasing order
    and, for each, the fully reduced row with pivot entry 1.
    """
    pivots, rows = _eliminate(m._rows, m.n_cols, reduce_fully=True)
    pivots.sort()
    pivot_cols = tuple(col for col, _ in pivots)
    reduced = [rows[piv] for _, piv in pivots]
    return pivot_cols, reduced


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_modp(m: SparseMat, p: int) -> int:
    """Rank of m reduced mod p; always at most the rational rank."""
    if p <= 1 << 20:
        raise BadPrime(f"modulus {p} is not greater than 2^20")
    if not _is_prime(p):
        raise BadPrime(f"modulus {p} is not prime")
    rows = []
    for r in m._rows:
        row = {}
        for j, v in r.items():
            if v.denominator % p == 0:
                raise BadPrime(f"{p} divides a denominator of the matrix")
            e = v.numerator * pow(v.denominator, p - 2, p) % p
            if e:
                row[j] = e
        rows.append(row)

    by_col = defaultdict(set)
    for i, r in enumerate(rows):
        for j in r:
            by_col[j].add(i)
    used = set()
    rk = 0
    for col in range(m.n_cols):
        live = sorted(i for i in by_col[col] if i not in used)
        if not live:
            continue
        piv = live[0]
        used.add(piv)
        rk += 1
        prow = rows[piv]
        inv = pow(prow[col], p - 2, p)
        for i in [i for i in by_col[col] if i != piv and i not in used]:
            r = rows[i]
            factor = r[col] * inv % p
            for j, v in prow.items():
                new = (r.get(j, 0) - factor * v) % p
                if new:
                    if j not in r:
                        by_col[j].add(i)
                    r[j] = new
                else:
                    if j in r:
                        del r[j]
                        by_col[j].discard(i)
    return rk
