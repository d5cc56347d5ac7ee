"""Exact integer linear algebra over Z^r.

All arithmetic uses Python's arbitrary-precision integers; nothing here ever
rounds.  The global convention, used by every other module, is that matrices
act on ROW vectors from the RIGHT: the image of v under M is v @ M.

Values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotAUnit, RankMismatch


@dataclass(frozen=True, slots=True)
class IntVec:
    """An integer row vector; ``rank`` is its length."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) == 0:
            raise ValueError("IntVec needs at least one entry")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def is_primitive(self) -> bool:
        """True when the entries have gcd 1 (the vector generates a saturated Z)."""
        return math.gcd(*self.entries) == 1

    def __add__(self, other: "IntVec") -> "IntVec":
        if self.rank != other.rank:
            raise RankMismatch(f"cannot add vectors of rank {self.rank} and {other.rank}")
        return IntVec(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntVec") -> "IntVec":
        if self.rank != other.rank:
            raise RankMismatch(f"cannot subtract vectors of rank {self.rank} and {other.rank}")
        return IntVec(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scaled(self, k: int) -> "IntVec":
        return IntVec(tuple(k * a for a in self.entries))

    def times(self, m: "IntMatrix") -> "IntVec":
        """Right action: the row vector self @ m."""
        if self.rank != m.dim:
            raise RankMismatch(f"vector of rank {self.rank} cannot act on a {m.dim}x{m.dim} matrix")
        cols = range(m.dim)
        return IntVec(tuple(sum(self.entries[i] * m.rows[i][j] for i in range(m.dim)) for j in cols))


@dataclass(frozen=True, slots=True)
class IntMatrix:
    """A square integer matrix, stored row-major."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("IntMatrix needs at least one row")
        if any(len(row) != n for row in rows):
            raise ValueError("IntMatrix must be square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, dim: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.dim != other.dim:
            raise RankMismatch(f"cannot multiply {self.dim}x{self.dim} by {other.dim}x{other.dim}")
        n = self.dim
        return IntMatrix(
            tuple(
                tuple(sum(self.rows[i][k] * other.rows[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
        )

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("only nonnegative matrix powers are supported")
        result = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = m.dim
    a = [list(row) for row in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntMatrix) -> bool:
    """True when det(m) is +1 or -1, i.e. m is an automorphism of the lattice."""
    return det(m) in (1, -1)


def mod_inverse(a: int, n: int) -> int:
    """The inverse of a modulo n, as a residue in [0, n); for n = 1 this is 0.

    Raises NotAUnit when gcd(a, n) != 1.
    """
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    try:
        return pow(a, -1, n)
    except ValueError:
        raise NotAUnit(f"{a} is not a unit modulo {n}") from None


def rank_of(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (rows need not be square).

    Division-free cross-multiplication elimination: scaling a row by a
    nonzero integer never changes the rank, so the result is exact.
    """
    a = [list(row) for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        head = a[row][col]
        for r in range(row + 1, nrows):
            lead = a[r][col]
            if lead:
                a[r] = [head * x - lead * y for x, y in zip(a[r], a[row])]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def elementary_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """The elementary divisors d_1 | d_2 | ... of an integer matrix.

    Returns min(#rows, #cols) nonnegative integers in divisibility order,
    padded with zeros when the rank is deficient.  Only row/column operations
    over Z are used, so the result is exact.
    """
    a = [[int(x) for x in row] for row in rows]
    if not a:
        return []
    nrows, ncols = len(a), len(a[0])
    if any(len(row) != ncols for row in a):
        raise ValueError("rows must all have the same length")
    divisors: list[int] = []
    t = 0
    while t < nrows and t < ncols:
        # Move a nonzero entry of minimal magnitude into the pivot slot.
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
            # Euclidean reduction of column t, then row t; a swap during either
            # pass strictly shrinks the pivot, so this terminates.
            reduced = True
            for i in range(t + 1, nrows):
                while a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        reduced = False
            for j in range(t + 1, ncols):
                while a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        reduced = False
            if not reduced:
                pivot = (t, t)
                continue
            # Enforce that the pivot divides every remaining entry, so the
            # diagonal comes out in divisibility order.
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            pivot = (t, t)
        divisors.append(abs(a[t][t]))
        t += 1
    divisors.extend(0 for _ in range(min(nrows, ncols) - len(divisors)))
    return divisors


def extends_to_basis(vectors: Iterable[IntVec]) -> bool:
    """True when the vectors generate a direct summand of the full lattice.

    Equivalently, all elementary divisors of the stacked matrix are 1, which
    is what it takes for the vectors to extend to a Z-basis.
    """
    vecs = list(vectors)
    if not vecs:
        return True
    rank = vecs[0].rank
    if any(v.rank != rank for v in vecs):
        raise RankMismatch("vectors must share one ambient rank")
    if len(vecs) > rank:
        raise RankMismatch(f"{len(vecs)} vectors cannot be independent in rank {rank}")
    divisors = elementary_divisors([v.entries for v in vecs])
    return all(d == 1 for d in divisors)
