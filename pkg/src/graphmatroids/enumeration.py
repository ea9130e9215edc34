"""Enumeration of circuit classes up to symmetry.

Bipartite families stream isomorphism-class representatives inside proved
signature and degree bounds and keep the ones the rank oracle certifies as
circuits.  Symmetric families at desk scale are scanned exhaustively by
subset size, which doubles as a brute-force ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil

from .models import ModelSpec, as_bits, bits_from_pairs, ground_set, pairs_from_bits
from .oracle import RankOracle
from .symmetry import Mask, canonical_form, representatives, transpose_distinct


@dataclass(frozen=True)
class CircuitClass:
    """One isomorphism class of circuits: canonical mask plus invariants."""

    mask: Mask
    signature: tuple
    aut_order: int
    edge_count: int
    transpose_distinct: bool


@dataclass(frozen=True)
class SignatureBounds:
    """Signature box that provably contains every circuit signature.

    l_bounds maps each admissible row-support size k to the (l_min, l_max)
    range of column-support sizes; min_degree is the floor every vertex of
    a circuit must meet on both sides.
    """

    k_min: int
    k_max: int
    l_bounds: dict[int, tuple[int, int]]
    min_degree: int

    def signatures(self):
        out = []
        for k in range(self.k_min, self.k_max + 1):
            if k not in self.l_bounds:
                continue
            lmin, lmax = self.l_bounds[k]
            for l in range(lmin, lmax + 1):
                out.append((k, l))
        return out


def signature_bounds(spec: ModelSpec) -> SignatureBounds:
    """Family-specific circuit-signature box, capped at the spec's size.

    det:    k >= r+1 and l <= r(k-r)+1 (plus the transposed constraint);
    biprig: r+1 <= k and (C(r+1,2)+k-1)/r <= l <= rk - C(r+1,2) + 1.
    Symmetric families get the trivial box over their vertex range; they
    are enumerated by exhaustive scan anyway.
    """
    r = spec.r
    if spec.family == "det":
        kappa2 = r  # one-sided realization size
        lb = {}
        for k in range(r + 1, spec.m + 1):
            lmin = max(r + 1, k and r + 1)
            lmax = min(spec.n, r * (k - r) + 1)
            if lmin <= lmax:
                lb[k] = (lmin, lmax)
        return SignatureBounds(r + 1, spec.m, lb, r + 1)
    if spec.family == "biprig":
        c2 = r * (r + 1) // 2
        lb = {}
        for k in range(r + 1, spec.m + 1):
            lmin = max(r + 1, ceil((c2 + k - 1) / r))
            lmax = min(spec.n, r * k - c2 + 1)
            if lmin <= lmax:
                lb[k] = (lmin, lmax)
        return SignatureBounds(r + 1, spec.m, lb, r + 1)
    # symmetric: vertex-count box only
    lb = {k: (k, k) for k in range(2, spec.n + 1)}
    return SignatureBounds(2, spec.n, lb, r + 1)


def support_mask(spec: ModelSpec, S) -> Mask:
    """Mask of the support of S, with empty rows/columns dropped."""
    pairs = pairs_from_bits(spec, as_bits(S))
    if not pairs:
        raise ValueError("empty subset has no mask")
    if spec.bipartite:
        ris = sorted({i for i, _ in pairs})
        cjs = sorted({j for _, j in pairs})
        rmap = {v: t for t, v in enumerate(ris)}
        cmap = {v: t for t, v in enumerate(cjs)}
        rows = [0] * len(ris)
        for i, j in pairs:
            rows[rmap[i]] |= 1 << cmap[j]
        return Mask("bipartite", tuple(rows), len(cjs))
    vs = sorted({v for e in pairs for v in e})
    vmap = {v: t for t, v in enumerate(vs)}
    n = len(vs)
    rows = [0] * n
    for i, j in pairs:
        rows[vmap[i]] |= 1 << vmap[j]
        rows[vmap[j]] |= 1 << vmap[i]
    return Mask("symmetric", tuple(rows), n)


def embed_mask(spec: ModelSpec, mask: Mask) -> int:
    """Bits of the mask placed on the initial rows/columns of the spec."""
    cells = mask.cells()
    if spec.bipartite:
        if mask.kind != "bipartite":
            raise ValueError("bipartite spec needs a bipartite mask")
        if mask.nrows > spec.m or mask.ncols > spec.n:
            raise ValueError("mask does not fit the spec")
        return bits_from_pairs(spec, cells)
    if mask.kind != "symmetric":
        raise ValueError("symmetric spec needs a symmetric mask")
    if mask.ncols > spec.n:
        raise ValueError("mask does not fit the spec")
    if spec.family == "rig" and any(i == j for i, j in cells):
        raise ValueError("rig masks cannot carry loops")
    return bits_from_pairs(spec, cells)


def rect_bits(spec: ModelSpec, k: int, l: int | None = None) -> int:
    """Complete graph K_{k,l} (or K_k for symmetric specs) as bits."""
    if spec.bipartite:
        return bits_from_pairs(
            spec, [(i, j) for i in range(1, k + 1) for j in range(1, l + 1)])
    return bits_from_pairs(
        spec, [e for e in ground_set(spec) if e[0] <= k and e[1] <= k
               and (spec.with_diagonal or e[0] < e[1])])


def _class_from_mask(mask: Mask, edge_count: int) -> CircuitClass:
    can = canonical_form(mask)
    sig = can.mask.signature()
    return CircuitClass(can.mask, sig, can.aut_order, edge_count,
                        transpose_distinct(can.mask))


def enumerate_circuit_classes(oracle: RankOracle,
                              bounds: SignatureBounds | None = None,
                              max_signature: tuple[int, int] | None = None,
                              ) -> list[CircuitClass]:
    """All circuit classes of the oracle's model within the bounds.

    Bipartite families walk signatures with k <= l and mirror the results
    across the transpose (a matroid isomorphism for det and biprig);
    symmetric families delegate to the exhaustive scan.
    """
    spec = oracle.spec
    if not spec.bipartite:
        return enumerate_circuit_classes_symmetric(oracle, max_signature)
    if bounds is None:
        bounds = signature_bounds(spec)
    cap_k = spec.m if max_signature is None else min(spec.m, max_signature[0])
    cap_l = spec.n if max_signature is None else min(spec.n, max_signature[1])
    dmin = bounds.min_degree
    found: dict[tuple, CircuitClass] = {}
    for k in range(bounds.k_min, bounds.k_max + 1):
        if k not in bounds.l_bounds:
            continue
        lmin, lmax = bounds.l_bounds[k]
        for l in range(max(lmin, k), lmax + 1):
            fits = k <= cap_k and l <= cap_l
            fits_t = l <= cap_k and k <= cap_l
            if not fits and not fits_t:
                continue
            # transposition is an isomorphism of det/biprig, so one
            # embedding orientation suffices for the circuit test
            straight = k <= spec.m and l <= spec.n
            if not straight and not (l <= spec.m and k <= spec.n):
                continue
            e_hi = oracle.rank(rect_bits(spec, k, l) if straight
                               else rect_bits(spec, l, k)) + 1
            e_lo = max(k, l) * dmin
            for e in range(e_lo, e_hi + 1):
                for rep in representatives(k, l, e, dmin, dmin):
                    bits = embed_mask(spec, rep if straight else rep.transpose())
                    if not oracle.is_circuit(bits):
                        continue
                    if fits:
                        cls = _class_from_mask(rep, e)
                        found.setdefault((cls.signature, cls.mask.rows), cls)
                    if k != l and fits_t:
                        tcls = _class_from_mask(rep.transpose(), e)
                        found.setdefault((tcls.signature, tcls.mask.rows), tcls)
    return sorted(found.values(),
                  key=lambda c: (c.signature, c.edge_count, c.mask.rows))


def enumerate_circuit_classes_symmetric(oracle: RankOracle,
                                        max_signature=None,
                                        ) -> list[CircuitClass]:
    """Exhaustive circuit scan for symmetric families at desk scale."""
    spec = oracle.spec
    if spec.bipartite:
        raise ValueError("use enumerate_circuit_classes for bipartite specs")
    max_vertices = spec.n if max_signature is None else int(max_signature)
    circuits = brute_force_circuits(oracle)
    found: dict[tuple, CircuitClass] = {}
    for bits in circuits:
        mask = support_mask(spec, bits)
        if mask.signature() > max_vertices:
            continue
        cls = _class_from_mask(mask, mask.edge_count())
        found.setdefault((cls.signature, cls.mask.rows), cls)
    return sorted(found.values(),
                  key=lambda c: (c.signature, c.edge_count, c.mask.rows))


def brute_force_circuits(oracle: RankOracle, max_size: int | None = None) -> list[int]:
    """Every labeled circuit, by subset scan in increasing size.

    A set is a circuit iff it is dependent and contains no smaller
    circuit; scanning sizes upward makes the second test a containment
    check against circuits already found.
    """
    n = oracle.nground
    cap = oracle.full_rank() + 1 if max_size is None else max_size
    cap = min(cap, n)
    found: list[int] = []
    for size in range(1, cap + 1):
        for combo in combinations(range(n), size):
            bits = 0
            for i in combo:
                bits |= 1 << i
            if any(c & bits == c for c in found):
                continue
            if oracle.rank(bits) < size:
                found.append(bits)
    return found


def classify(oracle: RankOracle, S):
    """(verdict, canonical class or None): independent,
    dependent-not-circuit, or circuit with its CanonicalMask attached."""
    bits = as_bits(S)
    if oracle.is_independent(bits):
        return "independent", None
    if oracle.is_circuit(bits):
        return "circuit", canonical_form(support_mask(oracle.spec, bits))
    return "dependent", None


# Known total degrees of circuit polynomials for small determinantal
# circuit classes, keyed by (r, signature, edge_count).  Externally
# computed by symbolic elimination; carried as documentation fixtures
# only and never asserted or used in any computation here.
CIRCUIT_POLY_DEGREE_FIXTURES = {
    (2, (3, 3), 9): (3,),
    (2, (4, 4), 13): (5,),
    (2, (4, 5), 15): (5, 7),
    (2, (5, 5), 16): (5, 5, 7, 7, 7, 7, 7, 7, 9, 12),
    (3, (4, 4), 16): (4,),
    (3, (5, 5), 22): (7,),
    (3, (5, 6), 24): (7, 10, 15),
    (3, (5, 7), 28): (7, 7, 10, 13, 13, 18),
}
