"""Exact rational linear algebra for graded chain complexes.

Dimensions at each grading are computed over the rationals by fraction
Gaussian elimination; nothing here touches floating point. Matrices are
dense lists of ``Fraction``, which is ample at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InconsistentComplex


class RationalMatrix:
    """Dense matrix of exact rationals."""

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.entries = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entry grid does not match declared shape")
            self.entries = [[Fraction(x) for x in row] for row in entries]

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __setitem__(self, idx, value):
        i, j = idx
        self.entries[i][j] = Fraction(value)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"

    def copy(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, self.entries)

    def multiply(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = RationalMatrix(self.rows, other.cols)
        for i in range(self.rows):
            row = self.entries[i]
            for k in range(self.cols):
                x = row[k]
                if x == 0:
                    continue
                other_row = other.entries[k]
                out_row = out.entries[i]
                for j in range(other.cols):
                    y = other_row[j]
                    if y != 0:
                        out_row[j] += x * y
        return out

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def rank(self) -> int:
        """Rank by fraction Gaussian elimination.

        The pivot in each column is the nonzero candidate with the smallest
        |numerator * denominator|, which keeps intermediate fractions small.
        """
        if self.rows == 0 or self.cols == 0:
            return 0
        work = [row[:] for row in self.entries]
        rank = 0
        for col in range(self.cols):
            best = None
            best_size = None
            for i in range(rank, self.rows):
                x = work[i][col]
                if x == 0:
                    continue
                size = abs(x.numerator * x.denominator)
                if best is None or size < best_size:
                    best, best_size = i, size
            if best is None:
                continue
            work[rank], work[best] = work[best], work[rank]
            pivot_row = work[rank]
            pivot = pivot_row[col]
            for i in range(rank + 1, self.rows):
                x = work[i][col]
                if x == 0:
                    continue
                factor = x / pivot
                row = work[i]
                for j in range(col, self.cols):
                    row[j] -= factor * pivot_row[j]
            rank += 1
            if rank == self.rows:
                break
        return rank


def rank_by_minors(matrix: RationalMatrix) -> int:
    """Rank as the largest k with a nonvanishing k x k minor.

    Exponential cost; intended as an independent cross-check for matrices
    of dimension at most ~5.
    """
    from itertools import combinations

    def det(rows, cols):
        if len(rows) == 1:
            return matrix[rows[0], cols[0]]
        total = Fraction(0)
        for pos, c in enumerate(cols):
            x = matrix[rows[0], c]
            if x == 0:
                continue
            sub = det(rows[1:], cols[:pos] + cols[pos + 1 :])
            total += (-1) ** pos * x * sub
        return total

    for k in range(min(matrix.rows, matrix.cols), 0, -1):
        for rows in combinations(range(matrix.rows), k):
            for cols in combinations(range(matrix.cols), k):
                if det(tuple(rows), tuple(cols)) != 0:
                    return k
    return 0


GradedDims = dict[int, int]


def graded_homology(complex) -> GradedDims:
    """Graded homology dimensions of a complex over the rationals.

    ``complex`` must expose ``generators_by_grading`` (grading -> generator
    list) and ``differential`` (grading k -> RationalMatrix mapping the
    grading-k chain group into grading k-1). The dimension at grading k is
    dim ker(d_k) - rank(d_{k+1}); absent gradings have dimension zero.

    Raises InconsistentComplex unless consecutive differentials compose
    to zero.
    """
    chain_dims = {k: len(g) for k, g in complex.generators_by_grading.items() if g}
    diffs = complex.differential

    for k, mat in diffs.items():
        upper = diffs.get(k + 1)
        if upper is not None and mat.cols > 0 and upper.cols > 0:
            if not mat.multiply(upper).is_zero():
                raise InconsistentComplex(
                    f"differentials at gradings {k + 1} and {k} do not compose to zero"
                )

    ranks = {k: mat.rank() for k, mat in diffs.items()}
    out: GradedDims = {}
    for k, dim in chain_dims.items():
        h = dim - ranks.get(k, 0) - ranks.get(k + 1, 0)
        assert h >= 0
        if h:
            out[k] = h
    return out


@dataclass(frozen=True)
class PoincareSeries:
    """Graded dimensions rendered as a polynomial in t with exponent -grading."""

    terms: tuple[tuple[int, int], ...]
    text: str


def poincare_series(dims: GradedDims, floor: int) -> PoincareSeries:
    """Truncate at the grading floor and format deterministically.

    Terms are sorted by descending grading (ascending exponent of t); a
    grading k of dimension c renders as ``c*t^{-k}``, or just ``c`` when
    k = 0. The empty series renders as "0".
    """
    if floor > 0:
        raise ValueError("floor must be <= 0")
    kept = sorted(
        ((k, c) for k, c in dims.items() if k >= floor and c), key=lambda kc: -kc[0]
    )
    if not kept:
        return PoincareSeries(terms=(), text="0")
    pieces = []
    for k, c in kept:
        pieces.append(str(c) if k == 0 else f"{c}*t^{-k}")
    return PoincareSeries(terms=tuple(kept), text=" + ".join(pieces))


def euler_characteristic(dims: GradedDims) -> int:
    return sum((-1) ** (k % 2) * c for k, c in dims.items())
