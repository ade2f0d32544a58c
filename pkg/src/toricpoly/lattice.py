"""Exact integer-lattice and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`; there is
no floating point.  Vectors are plain tuples.  Matrices are :class:`IntMatrix`
values (row-major, immutable), although every public function also accepts a
list of rows.

Normal-form conventions
-----------------------
* Smith form: ``U @ A @ V == D`` with ``U``, ``V`` unimodular and the diagonal
  of ``D`` nonnegative with ``d1 | d2 | ... | dk``.
* Hermite form is the *column* form ``H = A @ V`` (``V`` unimodular).  Nonzero
  columns come first, their pivots (first nonzero entry, top to bottom) sit in
  strictly increasing rows and are positive, and every entry to the left of a
  pivot in the pivot row lies in ``[0, pivot)``.  Trailing columns are zero.
  For example ``[[2, 1], [0, 1]]`` reduces to ``[[1, 0], [1, 2]]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ZeroVector

Rational = Fraction
LatticeVector = tuple  # tuple[int, ...]
RationalVector = tuple  # tuple[Fraction, ...]


def primitive_part(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries, keeping its sign."""
    g = math.gcd(*v) if len(v) else 0
    if g == 0:
        raise ZeroVector("the zero vector has no primitive part")
    return tuple(int(x) // g for x in v)


def content(v: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    return math.gcd(*v) if len(v) else 0


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive multiple of a rational vector that is integral."""
    den = math.lcm(*(Fraction(x).denominator for x in v)) if len(v) else 1
    return tuple(int(Fraction(x) * den) for x in v)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        columns = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def coerce(cls, A) -> "IntMatrix":
        return A if isinstance(A, IntMatrix) else cls.from_rows(A)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            cols = [other.column(j) for j in range(other.cols)]
            return IntMatrix.from_rows(
                [[dot(self.row(i), c) for c in cols] for i in range(self.rows)],
                cols=other.cols,
            )
        other = tuple(other)
        if len(other) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(dot(self.row(i), other) for i in range(self.rows))

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def __str__(self):
        return "\n".join(" ".join(f"{x:>4d}" for x in self.row(i)) for i in range(self.rows))


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries of ``D`` in divisibility order."""
        return tuple(d for d in self.D.diagonal() if d != 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        """Invariant factors greater than one."""
        return tuple(d for d in self.invariant_factors if d > 1)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``.

    When ``a`` divides ``b`` and ``a != 0`` the coefficients are ``(sign(a), 0)``.
    """
    if a != 0 and b % a == 0:
        return abs(a), (1 if a > 0 else -1), 0
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A) -> SmithDecomposition:
    """Smith normal form with unimodular transforms, ``U @ A @ V == D``."""
    A = IntMatrix.coerce(A)
    r, c = A.rows, A.cols
    D = A.to_rows()
    U = _identity(r)
    V = _identity(c)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, V):
                for row in M:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        if k:
            for M in (D, U):
                M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, k):
        if k:
            for M in (D, V):
                for row in M:
                    row[dst] += k * row[src]

    for t in range(min(r, c)):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, r) for j in range(t, c) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, r):
                add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, c):
                add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, r) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, c) if D[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(
        IntMatrix.from_rows(U, cols=r),
        IntMatrix.from_rows(D, cols=c),
        IntMatrix.from_rows(V, cols=c),
    )


def invariant_factors(A) -> tuple[int, ...]:
    return smith_normal_form(A).invariant_factors


def _column_hnf(A: IntMatrix) -> tuple[list[list[int]], list[list[int]], int]:
    """Column Hermite form; returns ``(H, V, rank)`` as row lists with ``H = A V``."""
    r, c = A.rows, A.cols
    H = A.to_rows()
    V = _identity(c)

    def combine(j, k, a, b, cc, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, cc*col_j + d*col_k)
        for M in (H, V):
            for row in M:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, cc * x + d * y

    pc = 0
    for i in range(r):
        if pc == c:
            break
        for j in range(pc + 1, c):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][pc]
            g, x, y = ext_gcd(a, b)
            # [[x, -b/g], [y, a/g]] has determinant 1
            combine(pc, j, x, y, -b // g, a // g)
        if H[i][pc] == 0:
            continue
        if H[i][pc] < 0:
            for M in (H, V):
                for row in M:
                    row[pc] = -row[pc]
        p = H[i][pc]
        for k in range(pc):
            q = H[i][k] // p
            if q:
                for M in (H, V):
                    for row in M:
                        row[k] -= q * row[pc]
        pc += 1
    return H, V, pc


def hermite_normal_form(A) -> IntMatrix:
    """Column-style Hermite normal form (see the module docstring)."""
    A = IntMatrix.coerce(A)
    H, _, _ = _column_hnf(A)
    return IntMatrix.from_rows(H, cols=A.cols)


def lattice_kernel(A) -> list[tuple[int, ...]]:
    """Lattice basis of ``{v in Z^c : A v = 0}``.

    The basis is saturated and returned in a canonical form: the vectors are
    the nonzero columns of the Hermite form of the basis matrix, so the first
    nonzero entry of each vector is positive.
    """
    A = IntMatrix.coerce(A)
    c = A.cols
    _, V, rank = _column_hnf(A)
    basis = [[V[i][j] for i in range(c)] for j in range(rank, c)]
    if not basis:
        return []
    K = IntMatrix.from_columns(basis, rows=c)
    H, _, k = _column_hnf(K)
    return [tuple(H[i][j] for i in range(c)) for j in range(k)]


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = IntMatrix.coerce(A)
    n = A.rows
    if n != A.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = A.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _echelon(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over Q (zero rows dropped)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    out = []
    for j in range(ncols):
        piv = next((i for i, r in enumerate(M) if r[j] != 0), None)
        if piv is None:
            continue
        prow = M.pop(piv)
        inv = 1 / prow[j]
        prow = [x * inv for x in prow]
        M = [[x - r[j] * y for x, y in zip(r, prow)] if r[j] else r for r in M]
        out = [[x - r[j] * y for x, y in zip(r, prow)] if r[j] else r for r in out]
        out.append(prow)
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a list of rational (or integer) row vectors."""
    return len(_echelon(rows))


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a nonempty point set (-1 if empty)."""
    if not points:
        return -1
    base = points[0]
    return rank([[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]])


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve a square system ``A x = b`` over Q; ``None`` if ``A`` is singular."""
    n = len(rows)
    M = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k] != 0), None)
        if piv is None:
            return None
        M[k], M[piv] = M[piv], M[k]
        inv = 1 / M[k][k]
        M[k] = [x * inv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k] != 0:
                f = M[i][k]
                M[i] = [x - f * y for x, y in zip(M[i], M[k])]
    return tuple(M[i][n] for i in range(n))


def unimodular_inverse(A) -> IntMatrix:
    """Inverse of a unimodular integer matrix (raises if not unimodular)."""
    A = IntMatrix.coerce(A)
    n = A.rows
    if abs(determinant(A)) != 1:
        raise ValueError("matrix is not unimodular")
    cols = [solve(A.to_rows(), [int(i == j) for i in range(n)]) for j in range(n)]
    return IntMatrix.from_columns([[int(x) for x in c] for c in cols], rows=n)
