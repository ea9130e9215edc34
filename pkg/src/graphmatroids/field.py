"""Exact dense linear algebra over prime fields F_p.

Rank and row reduction for matrices with entries reduced modulo a
word-sized prime.  All arithmetic is exact (64-bit widening, then
reduction); pivoting always takes the first nonzero entry, so results are
deterministic.  A vectorized numpy twin of the elimination loop backs the
rank oracle for speed; the pure-Python routine stays around as an
independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# One working prime plus two confirmation primes, all just below 2^31 so
# products of two residues fit in int64.  Cross-prime agreement turns the
# "with high probability" of randomized rank into an auditable check.
DEFAULT_PRIMES: tuple[int, ...] = (2147483647, 2147483629, 2147483587)

MIN_PRIME = 1 << 20  # smaller moduli make random-evaluation rank too lossy
MAX_PRIME = 1 << 32  # 64-bit widening bound


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 3.3 * 10^24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
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


def check_modulus(p: int) -> int:
    if not (MIN_PRIME < p < MAX_PRIME):
        raise ValueError(f"modulus {p} outside ({MIN_PRIME}, {MAX_PRIME})")
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


@dataclass(frozen=True)
class FieldElem:
    """A residue in F_p.  Mostly for small exact computations; the hot
    paths work on raw ints with a shared modulus."""

    value: int
    p: int

    def __post_init__(self):
        check_modulus(self.p)
        if not 0 <= self.value < self.p:
            object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        return FieldElem(int(other), self.p)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem((self.value + o.value) % self.p, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem((self.value - o.value) % self.p, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.value * o.value % self.p, self.p)

    def inverse(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElem(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __neg__(self):
        return FieldElem(-self.value % self.p, self.p)

    def __bool__(self):
        return self.value != 0


class FieldMatrix:
    """Dense matrix over F_p, row-major int entries in [0, p)."""

    __slots__ = ("rows", "cols", "entries", "p")

    def __init__(self, rows: int, cols: int, entries, p: int):
        check_modulus(p)
        entries = [int(e) % p for e in entries]
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.p = p

    @classmethod
    def from_rows(cls, row_lists, p: int) -> "FieldMatrix":
        row_lists = [list(r) for r in row_lists]
        rows = len(row_lists)
        cols = len(row_lists[0]) if row_lists else 0
        flat = [e for r in row_lists for e in r]
        return cls(rows, cols, flat, p)

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [self.entries[i * c:(i + 1) * c] for i in range(self.rows)]

    def transpose(self) -> "FieldMatrix":
        rows = self.to_rows()
        return FieldMatrix.from_rows(
            [[rows[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.p,
        ) if self.rows and self.cols else FieldMatrix(self.cols, self.rows, [], self.p)


def mat_rank(M: FieldMatrix) -> int:
    """F_p row rank by Gaussian elimination, first-nonzero pivoting.

    Pure Python on a working copy; the caller's matrix is untouched.
    """
    p = M.p
    rows = M.to_rows()
    m, n = M.rows, M.cols
    rank = 0
    for col in range(n):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        prow = [e * inv % p for e in rows[rank]]
        rows[rank] = prow
        for i in range(rank + 1, m):
            f = rows[i][col] % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rank += 1
    return rank


def solve_nullspace_dim(M: FieldMatrix) -> int:
    """Dimension of the right nullspace: cols - rank."""
    return M.cols - mat_rank(M)


def rank_mod(A: np.ndarray, p: int) -> int:
    """Rank of an int64 array over F_p; numpy-vectorized elimination.

    Entries must already lie in [0, p) with p < 2^32 so that products fit
    in int64.  Same pivot rule as mat_rank, so the two agree exactly.
    """
    if A.size == 0:
        return 0
    A = np.array(A, dtype=np.int64)
    m, n = A.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        nz = np.nonzero(A[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        below = A[rank + 1:, col]
        if below.size:
            A[rank + 1:] = (A[rank + 1:] - below[:, None] * A[rank][None, :]) % p
        rank += 1
    return rank
