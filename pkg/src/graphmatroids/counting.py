"""Class counts, symmetry-weighted counts and labeled-circuit totals.

For each signature the table stores c (number of classes) and
beta = sum over classes of 1/#stabilizer, kept as an exact rational.
Labeled totals follow from the orbit-stabilizer theorem:

  #circuits in [m] x [n]  =  sum_(k,l) beta_(k,l) * m! n! / ((m-k)! (n-l)!)

and the single-symmetric-group analogue for graph ground sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .enumeration import CircuitClass
from .symmetry import CanonicalMask, orbit_size


class IncompleteTableError(ValueError):
    """Totals were requested from a class list flagged as partial."""


@dataclass
class CountTable:
    """signature -> (class count, exact beta).  Bipartite signatures are
    (k, l) pairs; symmetric ones are bare vertex counts."""

    kind: str
    by_signature: dict = field(default_factory=dict)
    complete: bool = True

    def c(self, sig) -> int:
        return self.by_signature.get(sig, (0, Fraction(0)))[0]

    def beta(self, sig) -> Fraction:
        return self.by_signature.get(sig, (0, Fraction(0)))[1]


def count_classes(classes: list[CircuitClass], complete: bool = True) -> CountTable:
    """Aggregate enumerated classes into a (c, beta) table."""
    if not classes:
        return CountTable("bipartite", {}, complete)
    kind = classes[0].mask.kind
    table = CountTable(kind, {}, complete)
    for cls in classes:
        if cls.mask.kind != kind:
            raise ValueError("mixed mask kinds in one table")
        c, b = table.by_signature.get(cls.signature, (0, Fraction(0)))
        table.by_signature[cls.signature] = (c + 1, b + Fraction(1, cls.aut_order))
    return table


def total_circuits(table: CountTable, m: int, n: int) -> int:
    """Labeled circuits of the bipartite model on [m] x [n]."""
    if table.kind != "bipartite":
        raise ValueError("bipartite table required")
    if not table.complete:
        raise IncompleteTableError("class table flagged partial")
    total = Fraction(0)
    for (k, l), (_, beta) in table.by_signature.items():
        if k <= m and l <= n:
            total += beta * (Fraction(factorial(m), factorial(m - k))
                             * Fraction(factorial(n), factorial(n - l)))
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral circuit total {total}")
    return int(total)


def total_circuits_symmetric(table: CountTable, n: int) -> int:
    """Labeled circuits of the graph model on vertex set [n]."""
    if table.kind != "symmetric":
        raise ValueError("symmetric table required")
    if not table.complete:
        raise IncompleteTableError("class table flagged partial")
    total = Fraction(0)
    for k, (_, beta) in table.by_signature.items():
        if k <= n:
            total += beta * Fraction(factorial(n), factorial(n - k))
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral circuit total {total}")
    return int(total)


def orbit_sum_identity(classes: list[CircuitClass]) -> bool:
    """At each signature, sum of orbit sizes at the signature's own size
    must equal beta * k! * l! exactly (resp. beta * k! for symmetric)."""
    table = count_classes(classes)
    sums: dict = {}
    for cls in classes:
        cm = CanonicalMask(cls.mask, cls.aut_order)
        if cls.mask.kind == "bipartite":
            k, l = cls.signature
            sums[cls.signature] = sums.get(cls.signature, 0) + orbit_size(cm, k, l)
        else:
            k = cls.signature
            sums[cls.signature] = sums.get(cls.signature, 0) + orbit_size(cm, k)
    for sig, total in sums.items():
        beta = table.beta(sig)
        if isinstance(sig, tuple):
            expected = beta * factorial(sig[0]) * factorial(sig[1])
        else:
            expected = beta * factorial(sig)
        if expected != total:
            return False
    return True
