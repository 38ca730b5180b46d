"""Partitions, ramification profiles, and the cycle-type dictionary.

A ramification type is a partition kappa of the multiplicity d of a
critical value; its parts are the multiplicities of the critical points
sitting over that value.  A local model z^(k+1) contributes a critical
point of multiplicity k, i.e. a cycle of length k+1 in the monodromy.
A profile of degree n lists the ramification types of all degenerate
critical values and must have total degeneracy 2n - 2 (Riemann-Hurwitz
in genus zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidPartitionError(ValueError):
    pass


class InvalidProfileError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing tuple of positive integers.

    The empty partition is allowed (it sums to 0); canonical order is
    enforced at construction so partitions compare and hash as multisets.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(sorted(parts, reverse=True))
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise InvalidPartitionError(f"parts must be positive integers, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse a comma-separated list of parts, e.g. "2,1,1"."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise InvalidPartitionError(f"cannot parse partition {text!r}") from exc

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def degeneracy(kappa: Partition) -> int:
    """Sum of the parts, i.e. the multiplicity d of the critical value."""
    return sum(kappa.parts)


def partition_factorial(kappa: Partition) -> int:
    """Product of the factorials of the parts."""
    out = 1
    for p in kappa.parts:
        out *= math.factorial(p)
    return out


def aut_multiset(xs: Sequence) -> int:
    """Order of the automorphism group of a multiset.

    This is the number of permutations of positions fixing the sequence
    as a multiset: the product of the factorials of the multiplicities.
    """
    if not xs:
        raise ValueError("aut_multiset needs a nonempty sequence")
    counts: dict = {}
    for x in xs:
        counts[x] = counts.get(x, 0) + 1
    out = 1
    for c in counts.values():
        out *= math.factorial(c)
    return out


def to_cycle_type(kappa: Partition, n: int) -> Partition:
    """Cycle type in S_n of the monodromy around a value of type kappa.

    A critical point of multiplicity k is a cycle of length k + 1; the
    n - d - m regular preimages are fixed points.  Rejects profiles that
    do not fit in degree n (d + m > n).
    """
    d = degeneracy(kappa)
    m = len(kappa)
    if d + m > n:
        raise InvalidProfileError(
            f"type {kappa} needs {d + m} sheets over its value, only {n} available"
        )
    return Partition(tuple(k + 1 for k in kappa.parts) + (1,) * (n - d - m))


@dataclass(frozen=True)
class RamificationProfile:
    """A covering degree n together with the ordered ramification types.

    Validation enforces total degeneracy sum d(kappa_i) = 2n - 2, that
    every listed type is a genuine critical value (d >= 1), and that each
    type fits in degree n.  User order is kept; ``canonical_key`` is the
    order-independent form used for caching and deduplication.
    """

    n: int
    types: tuple[Partition, ...]

    def __init__(self, n: int, types: Iterable[Partition]):
        types = tuple(types)
        if n < 2:
            raise InvalidProfileError(f"covering degree must be >= 2, got {n}")
        if not types:
            raise InvalidProfileError("profile needs at least one ramification type")
        for t in types:
            if not isinstance(t, Partition):
                raise InvalidProfileError(f"profile types must be Partitions, got {t!r}")
            if degeneracy(t) < 1:
                raise InvalidProfileError("empty partition is not a critical value type")
        total = sum(degeneracy(t) for t in types)
        if total != 2 * n - 2:
            raise InvalidProfileError(
                f"total degeneracy {total} != 2n-2 = {2 * n - 2} for n = {n}"
            )
        for t in types:
            to_cycle_type(t, n)  # raises if d + m > n
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "types", types)

    @property
    def c(self) -> int:
        return len(self.types)

    @property
    def degeneracies(self) -> tuple[int, ...]:
        return tuple(degeneracy(t) for t in self.types)

    @property
    def canonical_key(self) -> str:
        body = ";".join(str(t) for t in sorted(self.types))
        return f"{self.n}|{body}"

    @classmethod
    def parse(cls, n: int, text: str) -> "RamificationProfile":
        """Parse semicolon-separated partitions, e.g. "2,1;3;1"."""
        toks = [tok for tok in text.split(";") if tok.strip()]
        if not toks:
            raise InvalidProfileError(f"cannot parse profile {text!r}")
        return cls(n, tuple(Partition.parse(tok) for tok in toks))

    @classmethod
    def single_type(cls, n: int, kappa: Partition) -> "RamificationProfile":
        """Profile with one type kappa and 2n-2-d simple critical values."""
        d = degeneracy(kappa)
        simple = (Partition((1,)),) * (2 * n - 2 - d)
        return cls(n, (kappa,) + simple)

    @classmethod
    def all_simple(cls, n: int) -> "RamificationProfile":
        return cls(n, (Partition((1,)),) * (2 * n - 2))

    def __str__(self) -> str:
        return ";".join(str(t) for t in self.types)


def stratum_dimension(profile: RamificationProfile) -> int:
    """Dimension of the projectivized stratum: one modulus per critical
    value, minus one for the projectivization, i.e. c - 1.

    On the open stratum (all 2n-2 values simple) this gives 2n - 3, the
    dimension of the whole projectivized space.
    """
    return profile.c - 1
