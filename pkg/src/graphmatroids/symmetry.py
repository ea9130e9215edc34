"""Canonical forms, stabilizer orders and orbit sizes for masks.

A bipartite mask is a k x l 0/1 matrix with no zero row or column,
considered up to independent row and column permutations.  A symmetric
mask is an n x n symmetric 0/1 matrix (diagonal entries allowed, used as
loops) up to simultaneous row/column relabeling.

The canonizer maximizes the row-major bit string of the matrix.  For a
fixed order on one side the optimal order on the other side is a plain
sort, so the search runs over permutations of the smaller side only; the
masks handled here have at most ~7 vertices per side, where this simple
exact scheme beats wiring in a general graph-isomorphism engine.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from math import factorial


@dataclass(frozen=True)
class Mask:
    """0/1 mask; rows[i] has bit j set iff cell (i, j) is present."""

    kind: str  # "bipartite" | "symmetric"
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if self.kind not in ("bipartite", "symmetric"):
            raise ValueError(f"bad mask kind {self.kind!r}")
        if any(r < 0 or r >> self.ncols for r in self.rows):
            raise ValueError("row bits outside column range")
        if self.kind == "symmetric":
            if len(self.rows) != self.ncols:
                raise ValueError("symmetric mask must be square")
            for i in range(self.ncols):
                for j in range(self.ncols):
                    if (self.rows[i] >> j & 1) != (self.rows[j] >> i & 1):
                        raise ValueError("symmetric mask must equal its transpose")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def cell(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def edge_count(self) -> int:
        if self.kind == "bipartite":
            return sum(r.bit_count() for r in self.rows)
        # count each off-diagonal pair once, each loop once
        total = sum(r.bit_count() for r in self.rows)
        loops = sum(self.rows[i] >> i & 1 for i in range(self.ncols))
        return (total + loops) // 2

    def signature(self):
        if self.kind == "bipartite":
            k = sum(1 for r in self.rows if r)
            cols = 0
            for r in self.rows:
                cols |= r
            return (k, cols.bit_count())
        return sum(1 for r in self.rows if r)

    def has_isolated(self) -> bool:
        if self.kind == "bipartite":
            cols = 0
            for r in self.rows:
                cols |= r
            return any(r == 0 for r in self.rows) or cols != (1 << self.ncols) - 1
        return any(r == 0 for r in self.rows)

    def transpose(self) -> "Mask":
        if self.kind == "symmetric":
            return self
        cols = tuple(
            sum(self.cell(i, j) << i for i in range(self.nrows))
            for j in range(self.ncols)
        )
        return Mask("bipartite", cols, self.nrows)

    def to_ascii(self) -> str:
        return "\n".join(
            "".join("#" if self.cell(i, j) else "." for j in range(self.ncols))
            for i in range(self.nrows)
        )

    @classmethod
    def from_ascii(cls, text: str, kind: str = "bipartite") -> "Mask":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty mask")
        width = len(lines[0])
        if any(len(ln) != width for ln in lines):
            raise ValueError("ragged mask")
        if any(c not in "#." for ln in lines for c in ln):
            raise ValueError("mask characters must be '#' or '.'")
        rows = tuple(
            sum((1 << j) for j, c in enumerate(ln) if c == "#") for ln in lines
        )
        return cls(kind, rows, width)

    @classmethod
    def from_cells(cls, cells, kind: str = "bipartite", nrows=None, ncols=None):
        """Build from 1-based (i, j) cells; symmetric kind mirrors them."""
        cells = [tuple(c) for c in cells]
        if kind == "symmetric":
            n = max(max(i, j) for i, j in cells)
            n = max(n, nrows or 0, ncols or 0)
            rows = [0] * n
            for i, j in cells:
                rows[i - 1] |= 1 << (j - 1)
                rows[j - 1] |= 1 << (i - 1)
            return cls(kind, tuple(rows), n)
        k = max(i for i, _ in cells)
        l = max(j for _, j in cells)
        k = max(k, nrows or 0)
        l = max(l, ncols or 0)
        rows = [0] * k
        for i, j in cells:
            rows[i - 1] |= 1 << (j - 1)
        return cls(kind, tuple(rows), l)

    def cells(self):
        """1-based present cells; symmetric kind yields i <= j once."""
        out = []
        for i in range(self.nrows):
            for j in range(self.ncols):
                if self.cell(i, j):
                    if self.kind == "symmetric" and i > j:
                        continue
                    out.append((i + 1, j + 1))
        return out


@dataclass(frozen=True)
class CanonicalMask:
    mask: Mask
    aut_order: int


def _bip_candidate_rowiter(rows, k, l, sigma):
    """Row order fixed by sigma; best column order is the descending sort
    of columns read as k-bit integers (top row = most significant bit)."""
    cols = []
    for j in range(l):
        v = 0
        for i in range(k):
            v = v << 1 | (rows[sigma[i]] >> j & 1)
        cols.append((v, j))
    cols.sort(key=lambda t: t[0], reverse=True)
    out = []
    for i in range(k):
        v = 0
        for _, j in cols:
            v = v << 1 | (rows[sigma[i]] >> j & 1)
        out.append(v)
    return tuple(out), tuple(j for _, j in cols)


def _bip_candidate_coliter(rows, k, l, tau):
    """Column order fixed by tau; best row order sorts rows descending."""
    out = []
    for i in range(k):
        v = 0
        for j in tau:
            v = v << 1 | (rows[i] >> j & 1)
        out.append(v)
    out.sort(reverse=True)
    return tuple(out)


def _canonical_bipartite(mask: Mask):
    rows, k, l = mask.rows, mask.nrows, mask.ncols
    best = None
    if factorial(k) <= factorial(l):
        for sigma in permutations(range(k)):
            cand, _ = _bip_candidate_rowiter(rows, k, l, sigma)
            if best is None or cand > best:
                best = cand
    else:
        for tau in permutations(range(l)):
            cand = _bip_candidate_coliter(rows, k, l, tau)
            if best is None or cand > best:
                best = cand
    # candidate stores column position t at bit (l-1-t); convert to the
    # storage convention bit j = column j
    conv = tuple(
        sum(((v >> (l - 1 - t)) & 1) << t for t in range(l)) for v in best
    )
    return Mask("bipartite", conv, l)


def _aut_order_bipartite(mask: Mask) -> int:
    rows, k, l = mask.rows, mask.nrows, mask.ncols

    def col_tuple(rws):
        out = []
        for j in range(l):
            v = 0
            for i in range(k):
                v = v << 1 | (rws[i] >> j & 1)
            out.append(v)
        return out

    if factorial(k) <= factorial(l):
        base_sorted = sorted(col_tuple(rows))
        dup = 1
        for c in Counter(base_sorted).values():
            dup *= factorial(c)
        total = 0
        for sigma in permutations(range(k)):
            perm_rows = [rows[s] for s in sigma]
            if sorted(col_tuple(perm_rows)) == base_sorted:
                total += dup
        return total
    return _aut_order_bipartite(mask.transpose())


def _sym_candidate(rows, n, sigma):
    out = []
    for i in range(n):
        v = 0
        for j in range(n):
            v = v << 1 | (rows[sigma[i]] >> sigma[j] & 1)
        out.append(v)
    return tuple(out)


def _canonical_symmetric(mask: Mask):
    rows, n = mask.rows, mask.ncols
    best = None
    for sigma in permutations(range(n)):
        cand = _sym_candidate(rows, n, sigma)
        if best is None or cand > best:
            best = cand
    conv = tuple(
        sum(((v >> (n - 1 - t)) & 1) << t for t in range(n)) for v in best
    )
    return Mask("symmetric", conv, n)


def _aut_order_symmetric(mask: Mask) -> int:
    rows, n = mask.rows, mask.ncols
    count = 0
    for sigma in permutations(range(n)):
        ok = True
        for i in range(n):
            v = rows[sigma[i]]
            w = rows[i]
            for j in range(n):
                if (v >> sigma[j] & 1) != (w >> j & 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
    return count


def canonical_form(mask: Mask) -> CanonicalMask:
    """Canonical labeling plus stabilizer order.

    Two masks canonicalize identically iff related by row/column
    permutations (bipartite) or vertex relabeling (symmetric).  Raises on
    isolated vertices: the mask would not determine its signature.
    """
    if mask.has_isolated():
        raise ValueError("mask has an isolated vertex")
    if mask.kind == "bipartite":
        return CanonicalMask(_canonical_bipartite(mask), _aut_order_bipartite(mask))
    return CanonicalMask(_canonical_symmetric(mask), _aut_order_symmetric(mask))


def orbit_size(c: CanonicalMask, m: int, n: int | None = None) -> int:
    """Labeled placements of the class inside [m] x [n] (or K_m), by
    orbit-stabilizer."""
    if c.mask.kind == "bipartite":
        if n is None:
            raise ValueError("bipartite orbit size needs both m and n")
        k, l = c.mask.signature()
        if k > m or l > n:
            raise ValueError("signature exceeds ambient size")
        num = factorial(m) * factorial(n)
        den = c.aut_order * factorial(m - k) * factorial(n - l)
    else:
        k = c.mask.signature()
        if k > m:
            raise ValueError("signature exceeds ambient size")
        num = factorial(m)
        den = c.aut_order * factorial(m - k)
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("orbit-stabilizer division not integral")
    return q


def transpose_distinct(mask: Mask) -> bool:
    """Whether the transpose lies in a different class."""
    if mask.kind == "symmetric":
        return False
    a = _canonical_bipartite(mask)
    b = _canonical_bipartite(mask.transpose())
    return a != b


def representatives(k: int, l: int, edges: int, min_row_deg: int = 1,
                    min_col_deg: int = 1) -> list[Mask]:
    """One bipartite mask per isomorphism class with signature exactly
    (k, l), the given edge count, and the given per-vertex degree floors.

    Generation walks non-increasing row vectors (killing row-permutation
    duplicates cheaply) and prunes on column feasibility; exact
    deduplication happens through the canonical form.
    """
    min_row_deg = max(1, min_row_deg)
    min_col_deg = max(1, min_col_deg)
    if edges < k * min_row_deg or edges < l * min_col_deg or edges > k * l:
        return []
    pool = [v for v in range(1, 1 << l) if v.bit_count() >= min_row_deg]
    pool.sort(reverse=True)
    seen: set[tuple] = set()
    out: list[Mask] = []
    colcount = [0] * l

    def feasible(level, used):
        remaining = k - level
        budget = edges - used
        if budget < remaining * min_row_deg or budget > remaining * l:
            return False
        for j in range(l):
            if colcount[j] + remaining < min_col_deg:
                return False
        return True

    def rec(level, used, start, rows):
        if level == k:
            if used != edges:
                return
            if any(c < min_col_deg for c in colcount):
                return
            mask = Mask("bipartite", tuple(rows), l)
            can = canonical_form(mask)
            key = can.mask.rows
            if key not in seen:
                seen.add(key)
                out.append(can.mask)
            return
        if not feasible(level, used):
            return
        for idx in range(start, len(pool)):
            v = pool[idx]
            cnt = v.bit_count()
            if used + cnt > edges:
                continue
            for j in range(l):
                if v >> j & 1:
                    colcount[j] += 1
            rows.append(v)
            rec(level + 1, used + cnt, idx, rows)
            rows.pop()
            for j in range(l):
                if v >> j & 1:
                    colcount[j] -= 1

    rec(0, 0, 0, [])
    return out
