"""Dense exact linear algebra over the rationals.

Matrices are small (a few thousand rows at most), so everything is dense.
Row reduction clears denominators and eliminates with integer arithmetic,
dividing each row by its content to keep entries small; pivots are
normalised back to 1 over the rationals at the end.  Results are exact.

Any matrix whose row or column count exceeds the cap from the environment
variable ``SOERGEL_MAX_DIM`` (default 5000) is refused with
:class:`SizeCapError` rather than ground through.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_DIMENSION_CAP = 5000


class SizeCapError(RuntimeError):
    """A computation was refused because it exceeds the configured size cap."""


def dimension_cap() -> int:
    raw = os.environ.get("SOERGEL_MAX_DIM")
    if not raw:
        return DEFAULT_DIMENSION_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise SizeCapError(f"SOERGEL_MAX_DIM={raw!r} is not an integer") from exc
    if cap <= 0:
        raise SizeCapError(f"SOERGEL_MAX_DIM={raw!r} must be positive")
    return cap


def _check_cap(rows: int, cols: int) -> None:
    cap = dimension_cap()
    if rows > cap or cols > cap:
        raise SizeCapError(
            f"matrix of size {rows}x{cols} exceeds the dimension cap {cap} "
            "(raise SOERGEL_MAX_DIM to override)"
        )


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"matrix entries must be rational, got {x!r}")


class QMatrix:
    """An immutable dense matrix of rationals.

    Rows and columns may be zero; the shape fields stay authoritative for
    empty matrices.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = [[_frac(x) for x in r] for r in data]

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, data) -> "QMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def column(cls, vec) -> "QMatrix":
        return cls(len(vec), 1, [[x] for x in vec])

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.data[i])

    def col(self, j: int) -> list[Fraction]:
        return [r[j] for r in self.data]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, [self.col(j) for j in range(self.cols)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        raise TypeError("QMatrix is unhashable")

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix addition")
        return QMatrix(
            self.rows,
            self.cols,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
        )

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + (-other)

    def __neg__(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [[-x for x in r] for r in self.data])

    def scale(self, c) -> "QMatrix":
        c = _frac(c)
        return QMatrix(self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in matrix product: {self.rows}x{self.cols} times "
                f"{other.rows}x{other.cols}"
            )
        ot = other.transpose().data
        out = []
        for r in self.data:
            out.append([sum(a * b for a, b in zip(r, c) if a and b) for c in ot])
        return QMatrix(self.rows, other.cols, out)

    def times_vector(self, vec) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((a * b for a, b in zip(r, vec) if a and b), Fraction(0)) for r in self.data]

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return QMatrix(
            self.rows, self.cols + other.cols, [r1 + r2 for r1, r2 in zip(self.data, other.data)]
        )

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class RrefResult:
    matrix: QMatrix
    pivots: tuple[int, ...]
    rank: int


def _int_rows(m: QMatrix) -> list[list[int]]:
    rows = []
    for r in m.data:
        den = 1
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
        rows.append([x.numerator * (den // x.denominator) for x in r])
    return rows


def _row_content(row: list[int]) -> int:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                break
    return g


def rref(m: QMatrix) -> RrefResult:
    """Reduced row echelon form with pivot columns and rank."""
    _check_cap(m.rows, m.cols)
    n_rows, n_cols = m.rows, m.cols
    rows = _int_rows(m)
    pivots: list[int] = []
    pr = 0
    for pc in range(n_cols):
        if pr == n_rows:
            break
        best = -1
        best_abs = 0
        for i in range(pr, n_rows):
            a = rows[i][pc]
            if a:
                aa = abs(a)
                if best == -1 or aa < best_abs:
                    best, best_abs = i, aa
                    if aa == 1:
                        break
        if best == -1:
            continue
        rows[pr], rows[best] = rows[best], rows[pr]
        row_p = rows[pr]
        piv = row_p[pc]
        for i in range(n_rows):
            if i == pr:
                continue
            row_i = rows[i]
            b = row_i[pc]
            if not b:
                continue
            g = math.gcd(piv, b)
            pm, bm = piv // g, b // g
            for j in range(n_cols):
                row_i[j] = row_i[j] * pm - row_p[j] * bm
            c = _row_content(row_i)
            if c > 1:
                for j in range(n_cols):
                    row_i[j] //= c
        pivots.append(pc)
        pr += 1
    out_rows: list[list[Fraction]] = []
    for k, pc in enumerate(pivots):
        piv = rows[k][pc]
        out_rows.append([Fraction(x, piv) for x in rows[k]])
    for _ in range(n_rows - len(pivots)):
        out_rows.append([Fraction(0)] * n_cols)
    return RrefResult(QMatrix(n_rows, n_cols, out_rows), tuple(pivots), len(pivots))


def rank(m: QMatrix) -> int:
    return rref(m).rank


def kernel_basis(m: QMatrix) -> list[list[Fraction]]:
    """A basis of the null space, one vector per free column.

    The basis vector for free column f has a 1 in position f; vectors are
    returned in ascending free-column order, so the result is deterministic.
    """
    res = rref(m)
    pivot_set = set(res.pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for k, pc in enumerate(res.pivots):
            vec[pc] = -res.matrix.data[k][f]
        basis.append(vec)
    return basis


def solve(m: QMatrix, b) -> list[Fraction] | None:
    """Some solution x of m x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = m.hstack(QMatrix.column(b))
    res = rref(aug)
    if res.pivots and res.pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for k, pc in enumerate(res.pivots):
        x[pc] = res.matrix.data[k][m.cols]
    return x


class SpanSolver:
    """Coordinates with respect to a fixed list of linearly independent vectors.

    Precomputes one row reduction so that membership tests and coordinate
    extraction for many vectors are cheap.
    """

    def __init__(self, vectors: list[list[Fraction]], dim: int):
        self.k = len(vectors)
        self.dim = dim
        for v in vectors:
            if len(v) != dim:
                raise ValueError("basis vector length does not match ambient dimension")
        a = QMatrix(dim, self.k, [[vectors[j][i] for j in range(self.k)] for i in range(dim)])
        res = rref(a.hstack(QMatrix.identity(dim)))
        if res.pivots[: self.k] != tuple(range(self.k)):
            raise ValueError("vectors passed to SpanSolver are linearly dependent")
        # rows of E satisfy E a = [I_k; 0]
        self._e = QMatrix(dim, dim, [row[self.k :] for row in res.matrix.data])

    def coords(self, vec: list[Fraction]) -> list[Fraction]:
        t = self._e.times_vector(vec)
        if any(t[self.k :]):
            raise ValueError("vector does not lie in the span")
        return t[: self.k]

    def contains(self, vec: list[Fraction]) -> bool:
        t = self._e.times_vector(vec)
        return not any(t[self.k :])
