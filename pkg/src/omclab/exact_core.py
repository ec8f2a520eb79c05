"""Exact rational linear algebra: scalars, dense matrices, ranks, kernels.

Everything is computed over Q with no rounding anywhere.  Elimination is
fraction-free (Bareiss) on denominator-cleared integer rows, which keeps
intermediate growth polynomial at the small sizes this package targets
(matrices with at most ~20 columns).  Kernel and row-space vectors are
normalized to primitive integer vectors whose first nonzero entry is
positive, so that +/- pairs deduplicate deterministically.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import ParseError

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "parse_rational",
    "matrix_from_json_obj",
    "matrix_from_csv_text",
    "rank",
    "kernel_basis",
    "kernel_basis_ints",
    "solve_in_rowspace",
    "solve_linear",
    "affine_solution_space",
    "primitive_vector",
    "primitive_inequality",
]


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Parse a cell like "-9", "1/2" or an int into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ParseError(f"refusing float input {value!r}; use a string like '1/2'")
    text = str(value).strip().replace("−", "-")  # tolerate typographic minus
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {value!r}") from exc


class RatMatrix:
    """Immutable dense matrix over Q, stored row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        ent = tuple(parse_rational(e) if not isinstance(e, Fraction) else e
                    for e in entries)
        if rows < 0 or cols < 0 or len(ent) != rows * cols:
            raise ValueError(f"entry count {len(ent)} != {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_entries", ent)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, row_lists: Sequence[Sequence]) -> "RatMatrix":
        nrows = len(row_lists)
        ncols = len(row_lists[0]) if nrows else 0
        flat = [x for row in row_lists for x in row]
        return cls(nrows, ncols, flat)

    @classmethod
    def from_cols(cls, col_lists: Sequence[Sequence]) -> "RatMatrix":
        ncols = len(col_lists)
        nrows = len(col_lists[0]) if ncols else 0
        flat = [col_lists[j][i] for i in range(nrows) for j in range(ncols)]
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def entry(self, i: int, j: int) -> Fraction:
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self._entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        flat = [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)]
        return RatMatrix(self.cols, self.rows, flat)

    def select_cols(self, indices: Sequence[int]) -> "RatMatrix":
        flat = [self.entry(i, j) for i in range(self.rows) for j in indices]
        return RatMatrix(self.rows, len(indices), flat)

    def matvec(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum(self.entry(i, j) * v[j] for j in range(self.cols))
                     for i in range(self.rows))

    def __eq__(self, other) -> bool:
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._entries == other._entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: {body})"


def matrix_from_json_obj(obj) -> RatMatrix:
    """Build a matrix from a JSON array-of-arrays of rational strings."""
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError("matrix JSON must be a nonempty array of arrays")
    width = len(obj[0])
    if any(len(r) != width for r in obj):
        raise ParseError("matrix rows have unequal lengths")
    return RatMatrix.from_rows([[parse_rational(x) for x in r] for r in obj])


def matrix_from_csv_text(text: str) -> RatMatrix:
    """Build a matrix from CSV with the same cell syntax as the JSON form."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise ParseError("empty CSV matrix")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("CSV rows have unequal lengths")
    return RatMatrix.from_rows([[parse_rational(x) for x in r] for r in rows])


def primitive_vector(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to primitive integers, first nonzero > 0."""
    fracs = [x if isinstance(x, Fraction) else Fraction(x) for x in vec]
    den = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * den) for f in fracs]
    g = gcd(*ints) if ints else 0
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def primitive_inequality(normal: Sequence, offset) -> tuple[tuple[int, ...], Fraction]:
    """Scale (a, b) of a·x <= b by a positive rational so a is primitive integer.

    Unlike primitive_vector this never flips the sign, which would reverse
    the inequality.
    """
    fracs = [x if isinstance(x, Fraction) else Fraction(x) for x in normal]
    den = lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = gcd(*ints)
    if g == 0:
        raise ValueError("zero normal")
    scale = Fraction(den, g)
    return tuple(x // g for x in ints), Fraction(offset) * scale


def _integer_rows(M: RatMatrix) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves rank and kernel)."""
    out = []
    for i in range(M.rows):
        row = M.row(i)
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form in place; returns (rows, pivot columns).

    Every interior division is exact by the Bareiss identity, so all
    intermediate entries stay integers.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if rows[i][c]), None)
        if k is None:
            continue
        if k != r:
            rows[r], rows[k] = rows[k], rows[r]
        rrc = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, n):
                row_i[j] = (rrc * row_i[j] - ric * row_r[j]) // prev
            row_i[c] = 0
        prev = rrc
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rank(M: RatMatrix) -> int:
    """Dimension of the column space, by fraction-free elimination."""
    _, pivots = _bareiss(_integer_rows(M))
    return len(pivots)


def kernel_basis_ints(rows: list[list[int]], ncols: int) -> list[tuple[int, ...]]:
    """Kernel basis of an integer matrix given as row lists.

    Returns one primitive integer vector per free column; the basis spans
    {x : rows @ x = 0} exactly.
    """
    ech, pivots = _bareiss([list(r) for r in rows])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        x: list[Fraction | int] = [0] * ncols
        x[f] = 1
        for i in reversed(range(len(pivots))):
            p = pivots[i]
            s = sum(ech[i][j] * x[j] for j in range(p + 1, ncols))
            x[p] = Fraction(-s, ech[i][p])
        basis.append(primitive_vector(x))
    return basis


def kernel_basis(M: RatMatrix) -> list[tuple[int, ...]]:
    """Basis of {x : Mx = 0}, as primitive integer vectors."""
    return kernel_basis_ints(_integer_rows(M), M.cols)


def solve_in_rowspace(M: RatMatrix, zero_on: Iterable[int]) -> tuple[int, ...] | None:
    """A nonzero row-space vector of M vanishing on the given columns, or None.

    Columns are 0-based.  The returned vector is primitive integer with
    positive first nonzero entry.
    """
    cols = sorted(set(zero_on))
    if any(j < 0 or j >= M.cols for j in cols):
        raise ValueError("zero_on contains an out-of-range column index")
    sub = M.select_cols(cols)
    for c in kernel_basis(sub.transpose()):
        u = tuple(sum(c[i] * M.entry(i, j) for i in range(M.rows))
                  for j in range(M.cols))
        if any(u):
            return primitive_vector(u)
    return None


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q (pivots scaled to 1, cleared above)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def affine_solution_space(
    rows: Sequence[Sequence], rhs: Sequence, ncols: int | None = None
) -> tuple[tuple[Fraction, ...], list[tuple[int, ...]]] | None:
    """Solve rows @ x = rhs; returns (particular solution, kernel basis) or None.

    The particular solution sets all free variables to zero; the kernel
    basis vectors are primitive integers.
    """
    m = len(rows)
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for an empty system")
        ncols = len(rows[0])
    n = ncols
    if any(len(r) != n for r in rows):
        raise ValueError("ragged system")
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    red, pivots = _rref(aug)
    if n in pivots:  # pivot in the rhs column: inconsistent
        return None
    particular = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        particular[p] = red[i][n]
    kernel = kernel_basis_ints(_clear(red), n)
    return tuple(particular), kernel


def _clear(aug_rows: list[list[Fraction]]) -> list[list[int]]:
    """Denominator-cleared coefficient part of an augmented Fraction system."""
    out = []
    for row in aug_rows:
        coeffs = row[:-1]
        den = lcm(*(x.denominator for x in coeffs)) if coeffs else 1
        out.append([int(x * den) for x in coeffs])
    return out


def solve_linear(A: RatMatrix, rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One exact solution of A x = rhs, or None if the system is inconsistent."""
    result = affine_solution_space(A.row_lists(), list(rhs))
    return None if result is None else result[0]
