"""The matroid layer: rank, independence, circuits, closure over the
randomized Jacobian oracle.

Rank of a subset is the maximum, over several sampled parameter points, of
the F_p rank of the corresponding Jacobian rows.  Specialization can only
lose rank, so the maximum is a lower bound that equals the generic rank
with overwhelming probability; computing it independently over three
primes and insisting on agreement turns that probability into a check that
actually fires on genericity failure.
"""

from __future__ import annotations

from .field import DEFAULT_PRIMES, check_modulus, rank_mod
from .models import (ModelSpec, as_bits, full_bits, ground_index, ground_set,
                     jacobian_matrix, sample_point)


class GenericityError(RuntimeError):
    """Cross-prime rank disagreement: a sampled point was degenerate."""


class RankOracle:
    """Rank queries for one ModelSpec, cached by subset bitmask.

    points: `trials` sampled parameter points per configured prime.  The
    oracle is read-only after construction; concurrent queries are safe
    because cache writes are idempotent.
    """

    def __init__(self, spec: ModelSpec, primes=DEFAULT_PRIMES, trials: int = 3,
                 seed: int = 0):
        if trials < 1:
            raise ValueError("trials >= 1 required")
        if not primes:
            raise ValueError("at least one prime required")
        for p in primes:
            check_modulus(p)
        self.spec = spec
        self.primes = tuple(primes)
        self.trials = trials
        self.seed = seed
        self.ground = ground_set(spec)
        self.index = ground_index(spec)
        self.nground = len(self.ground)
        # one full Jacobian per (prime, trial); subset rank = row-slice rank
        self._jacobians = [
            (p, jacobian_matrix(spec, sample_point(spec, p, seed * 1000 + t)))
            for p in self.primes for t in range(trials)
        ]
        self._cache: dict[int, int] = {}

    # -- core rank ---------------------------------------------------------

    def rank(self, S) -> int:
        bits = as_bits(S)
        if bits >> self.nground:
            raise ValueError("subset outside ground set")
        hit = self._cache.get(bits)
        if hit is not None:
            return hit
        if bits == 0:
            self._cache[0] = 0
            return 0
        rows = [i for i in range(self.nground) if bits >> i & 1]
        per_prime: dict[int, int] = {}
        for p, jac in self._jacobians:
            r = rank_mod(jac[rows], p)
            if r > per_prime.get(p, -1):
                per_prime[p] = r
        ranks = set(per_prime.values())
        if len(ranks) != 1:
            raise GenericityError(
                f"rank of {bits:#x} in {self.spec} disagrees across primes: "
                f"{per_prime}")
        rank = ranks.pop()
        self._cache[bits] = rank
        return rank

    def full_rank(self) -> int:
        return self.rank(full_bits(self.spec))

    # -- derived predicates --------------------------------------------------

    def is_independent(self, S) -> bool:
        bits = as_bits(S)
        return self.rank(bits) == bits.bit_count()

    def is_dependent(self, S) -> bool:
        return not self.is_independent(S)

    def is_circuit(self, S) -> bool:
        """Dependent with every proper subset independent."""
        bits = as_bits(S)
        size = bits.bit_count()
        if size == 0 or self.rank(bits) != size - 1:
            return False
        b = bits
        while b:
            e = b & -b
            if self.rank(bits ^ e) != size - 1:
                return False
            b ^= e
        return True

    def relative_rank(self, T, S) -> int:
        t, s = as_bits(T), as_bits(S)
        return self.rank(t | s) - self.rank(s)

    def closure(self, S) -> int:
        """All elements whose addition does not raise the rank."""
        bits = as_bits(S)
        r = self.rank(bits)
        out = bits
        for i in range(self.nground):
            e = 1 << i
            if not bits & e and self.rank(bits | e) == r:
                out |= e
        return out

    def basis_of(self, S) -> int:
        """A maximal independent subset of S (greedy by element order)."""
        bits = as_bits(S)
        out = 0
        b = bits
        while b:
            e = b & -b
            b ^= e
            if self.rank(out | e) == (out | e).bit_count():
                out |= e
        return out

    def find_contained_circuit(self, S) -> int | None:
        """A circuit inside S, or None if S is independent.

        Greedy removal keeping dependence; the survivor is minimal
        dependent.
        """
        bits = as_bits(S)
        if self.is_independent(bits):
            return None
        cur = bits
        changed = True
        while changed:
            changed = False
            b = cur
            while b:
                e = b & -b
                b ^= e
                cand = cur ^ e
                if self.is_dependent(cand):
                    cur = cand
                    changed = True
        return cur

    def fundamental_circuit(self, e_bit: int, S) -> int:
        """The unique circuit inside basis(S) + e, for e in closure(S) - S."""
        base = self.basis_of(S)
        if self.rank(base | e_bit) != self.rank(base):
            raise ValueError("element not in the closure of S")
        c = self.find_contained_circuit(base | e_bit)
        assert c is not None and c & e_bit
        return c


def brute_force_rank(spec: ModelSpec, S, npoints: int = 200, prime: int | None = None,
                     seed: int = 10**6) -> int:
    """Independent rank oracle: fresh points, pure-Python elimination.

    Deliberately shares no code path with RankOracle.rank (different
    sampling stream, different row reduction), for cross-checks.
    """
    from .field import FieldMatrix, mat_rank
    from .models import jacobian_row, pairs_from_bits

    p = prime if prime is not None else DEFAULT_PRIMES[0]
    pairs = pairs_from_bits(spec, as_bits(S))
    if not pairs:
        return 0
    best = 0
    for t in range(npoints):
        pt = sample_point(spec, p, seed + 7919 * t)
        rows = [jacobian_row(spec, e, pt) for e in pairs]
        best = max(best, mat_rank(FieldMatrix.from_rows(rows, p)))
        if best == min(len(pairs), spec.nparams):
            break
    return best
