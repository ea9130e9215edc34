"""The four matroid families and their linear realizations.

Each family is a polynomial parametrization of its ground-set coordinates:

  det     X_ij = sum_k U_ik V_jk          on [m] x [n]
  symdet  X_ij = sum_k V_ik V_jk          on pairs i <= j
  rig     D_ij = sum_k (P_ik - P_jk)^2    on pairs i < j
  biprig  D_ij = sum_k (P_ik - Q_jk)^2    on [m] x [n]

Rank queries evaluate the Jacobian of the parametrization at random points
over large prime fields; random points are generic with high probability,
and specialization can only lose rank, so the maximum over several points
(and agreement across several primes) certifies the generic rank.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import check_modulus

FAMILIES = ("det", "symdet", "rig", "biprig")
BIPARTITE_FAMILIES = ("det", "biprig")
SYMMETRIC_FAMILIES = ("symdet", "rig")


@dataclass(frozen=True)
class ModelSpec:
    """Which family and which finite truncation of its ground set.

    Bipartite families carry (m, n, r); symmetric ones carry (n, r) with
    m left as None.  symdet includes the diagonal pairs (i, i), rig does
    not.
    """

    family: str
    m: int | None
    n: int
    r: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.r < 1:
            raise ValueError("r >= 1 required")
        if self.family in BIPARTITE_FAMILIES:
            if self.m is None or self.m < 1 or self.n < 1:
                raise ValueError(f"{self.family} needs m >= 1 and n >= 1")
        else:
            if self.m is not None:
                raise ValueError(f"{self.family} takes no m")
            if self.n < 2:
                raise ValueError(f"{self.family} needs n >= 2")

    @property
    def bipartite(self) -> bool:
        return self.family in BIPARTITE_FAMILIES

    @property
    def with_diagonal(self) -> bool:
        return self.family == "symdet"

    @property
    def nparams(self) -> int:
        if self.bipartite:
            return (self.m + self.n) * self.r
        return self.n * self.r

    def __str__(self) -> str:
        if self.bipartite:
            return f"{self.family}:{self.m}x{self.n}x{self.r}"
        return f"{self.family}:{self.n}x{self.r}"


_MODEL_RE = re.compile(r"^(det|symdet|rig|biprig):(\d+)x(\d+)(?:x(\d+))?$")


def parse_model(text: str) -> ModelSpec:
    """Parse model strings like det:4x4x2, symdet:4x2, rig:5x2, biprig:3x4x2."""
    m = _MODEL_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad model string {text!r}")
    family, a, b, c = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4)
    if family in BIPARTITE_FAMILIES:
        if c is None:
            raise ValueError(f"{family} needs MxNxR, got {text!r}")
        return ModelSpec(family, a, b, int(c))
    if c is not None:
        raise ValueError(f"{family} needs NxR, got {text!r}")
    return ModelSpec(family, None, a, int(c) if c else b)


@lru_cache(maxsize=None)
def ground_set(spec: ModelSpec) -> tuple[tuple[int, int], ...]:
    """Ordered ground set; row-major / lexicographic, 1-based indices."""
    if spec.bipartite:
        return tuple((i, j) for i in range(1, spec.m + 1)
                     for j in range(1, spec.n + 1))
    if spec.with_diagonal:
        return tuple((i, j) for i in range(1, spec.n + 1)
                     for j in range(i, spec.n + 1))
    return tuple((i, j) for i in range(1, spec.n + 1)
                 for j in range(i + 1, spec.n + 1))


@lru_cache(maxsize=None)
def ground_index(spec: ModelSpec) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(ground_set(spec))}


def ground_size(spec: ModelSpec) -> int:
    return len(ground_set(spec))


def full_bits(spec: ModelSpec) -> int:
    return (1 << ground_size(spec)) - 1


def bits_from_pairs(spec: ModelSpec, pairs) -> int:
    idx = ground_index(spec)
    bits = 0
    for e in pairs:
        e = tuple(e)
        if not spec.bipartite and not spec.with_diagonal and e[0] > e[1]:
            e = (e[1], e[0])
        elif spec.with_diagonal and e[0] > e[1]:
            e = (e[1], e[0])
        if e not in idx:
            raise ValueError(f"{e} not in ground set of {spec}")
        bits |= 1 << idx[e]
    return bits


def pairs_from_bits(spec: ModelSpec, bits: int) -> list[tuple[int, int]]:
    g = ground_set(spec)
    if bits < 0 or bits >> len(g):
        raise ValueError("bits outside ground set")
    return [g[i] for i in range(len(g)) if bits >> i & 1]


@dataclass(frozen=True)
class EdgeSet:
    """A subset of a spec's ground set, stored as a bitmask over the
    canonical element order."""

    spec: ModelSpec
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> ground_size(self.spec):
            raise ValueError("bits outside ground set")

    @classmethod
    def from_pairs(cls, spec: ModelSpec, pairs) -> "EdgeSet":
        return cls(spec, bits_from_pairs(spec, pairs))

    @classmethod
    def full(cls, spec: ModelSpec) -> "EdgeSet":
        return cls(spec, full_bits(spec))

    def pairs(self) -> list[tuple[int, int]]:
        return pairs_from_bits(self.spec, self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.spec, self.bits | other.bits)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet(self.spec, self.bits & other.bits)


def as_bits(S) -> int:
    """Accept an EdgeSet or a raw bitmask."""
    return S.bits if isinstance(S, EdgeSet) else int(S)


@dataclass(frozen=True)
class GenericPoint:
    """One uniform random assignment of all parameters over F_prime."""

    spec: ModelSpec
    prime: int
    seed: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.spec.nparams:
            raise ValueError("wrong number of parameter values")


def sample_point(spec: ModelSpec, prime: int, seed: int) -> GenericPoint:
    """Deterministic in (spec, prime, seed); uniform per parameter."""
    check_modulus(prime)
    rng = random.Random(f"{spec}|{prime}|{seed}")
    values = tuple(rng.randrange(prime) for _ in range(spec.nparams))
    return GenericPoint(spec, prime, seed, values)


def _param_index(spec: ModelSpec, side: int, i: int, k: int) -> int:
    # side 0 = U/P/V block, side 1 = V/Q block of bipartite families
    r = spec.r
    if side == 0:
        return (i - 1) * r + (k - 1)
    return spec.m * r + (i - 1) * r + (k - 1)


def jacobian_row(spec: ModelSpec, e: tuple[int, int], pt: GenericPoint) -> list[int]:
    """Gradient of the coordinate of e w.r.t. all parameters, at pt."""
    if e not in ground_index(spec):
        raise ValueError(f"{e} not in ground set of {spec}")
    p = pt.prime
    v = pt.values
    r = spec.r
    i, j = e
    row = [0] * spec.nparams
    if spec.family == "det":
        for k in range(1, r + 1):
            row[_param_index(spec, 0, i, k)] = v[_param_index(spec, 1, j, k)]
            row[_param_index(spec, 1, j, k)] = v[_param_index(spec, 0, i, k)]
    elif spec.family == "symdet":
        for k in range(1, r + 1):
            a, b = _param_index(spec, 0, i, k), _param_index(spec, 0, j, k)
            if i == j:
                row[a] = 2 * v[a] % p
            else:
                row[a] = v[b]
                row[b] = v[a]
    elif spec.family == "rig":
        for k in range(1, r + 1):
            a, b = _param_index(spec, 0, i, k), _param_index(spec, 0, j, k)
            d = (v[a] - v[b]) % p
            row[a] = 2 * d % p
            row[b] = (-2 * d) % p
    else:  # biprig
        for k in range(1, r + 1):
            a, b = _param_index(spec, 0, i, k), _param_index(spec, 1, j, k)
            d = (v[a] - v[b]) % p
            row[a] = 2 * d % p
            row[b] = (-2 * d) % p
    return row


def jacobian_matrix(spec: ModelSpec, pt: GenericPoint) -> np.ndarray:
    """Full Jacobian, one row per ground element in canonical order."""
    rows = [jacobian_row(spec, e, pt) for e in ground_set(spec)]
    return np.array(rows, dtype=np.int64)


def coordinate_values(spec: ModelSpec, pt: GenericPoint) -> dict[tuple[int, int], int]:
    """Values of the parametrized coordinates at pt (not the Jacobian)."""
    p = pt.prime
    v = pt.values
    r = spec.r
    out = {}
    for (i, j) in ground_set(spec):
        acc = 0
        for k in range(1, r + 1):
            if spec.family == "det":
                acc += v[_param_index(spec, 0, i, k)] * v[_param_index(spec, 1, j, k)]
            elif spec.family == "symdet":
                acc += v[_param_index(spec, 0, i, k)] * v[_param_index(spec, 0, j, k)]
            elif spec.family == "rig":
                d = v[_param_index(spec, 0, i, k)] - v[_param_index(spec, 0, j, k)]
                acc += d * d
            else:
                d = v[_param_index(spec, 0, i, k)] - v[_param_index(spec, 1, j, k)]
                acc += d * d
            acc %= p
        out[(i, j)] = acc
    return out


def bipartition_spec(sym: ModelSpec, m: int, n: int):
    """Split a symmetric family on m+n vertices into its bipartite block.

    Returns the bipartite ModelSpec plus the injection of each bipartite
    element (i, j) into the symmetric ground set as (i, j + m).
    """
    if sym.family not in SYMMETRIC_FAMILIES:
        raise ValueError("bipartition needs a symmetric family")
    if sym.n != m + n:
        raise ValueError(f"{sym} has {sym.n} vertices, cannot split as {m}+{n}")
    target = "biprig" if sym.family == "rig" else "det"
    bip = ModelSpec(target, m, n, sym.r)
    element_map = {(i, j): (i, j + m)
                   for i in range(1, m + 1) for j in range(1, n + 1)}
    return bip, element_map
