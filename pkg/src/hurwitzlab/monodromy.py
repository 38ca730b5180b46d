"""Ground-truth Hurwitz numbers by exhaustive monodromy enumeration.

A degree-n covering of the sphere with c branch points corresponds to a
tuple (s_1, ..., s_c) of permutations in S_n whose cycle types are
dictated by the ramification types, whose product is the identity, and
which generate a transitive subgroup.  Counting tuples and dividing by
n! gives the automorphism-weighted count of coverings.  This module is
the independent oracle the closed formulas are tested against, so it
stays deliberately simple: a depth-first enumeration with two exact
shortcuts that are plain bijections, not theory.

* The tuple set is invariant under simultaneous conjugation, so the
  factor with the largest conjugacy class is pinned to one representative
  and the count is multiplied by the class size.
* The last factor is determined by the others (it must be the inverse of
  their product), so it is read off and type-checked instead of being
  enumerated.

The enumeration is split into chunks over the first free factor's class;
chunk counts are exact integers, so the total is identical for any
worker count.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from pathlib import Path

from .partitions import Partition, RamificationProfile, to_cycle_type

DEFAULT_DEGREE_BOUND = 7


class EnumerationBoundError(ValueError):
    """Raised when a profile exceeds the configured degree bound."""


class WorkLimitError(ValueError):
    """Raised when the projected tuple count exceeds the allowed budget."""


@dataclass(frozen=True)
class FactorizationCount:
    profile: RamificationProfile
    raw_count: int
    hurwitz_number: Fraction

    def __post_init__(self):
        n = self.profile.n
        assert self.hurwitz_number * math.factorial(n) == self.raw_count


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Cycle type of a permutation in one-line notation, sorted decreasing."""
    n = len(perm)
    seen = [False] * n
    sizes = []
    for start in range(n):
        if seen[start]:
            continue
        size = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            size += 1
        sizes.append(size)
    return tuple(sorted(sizes, reverse=True))


def class_size(n: int, ct: tuple[int, ...]) -> int:
    """Size of the conjugacy class in S_n with the given cycle type."""
    mult: dict[int, int] = {}
    for length in ct:
        mult[length] = mult.get(length, 0) + 1
    denom = 1
    for length, m in mult.items():
        denom *= length**m * math.factorial(m)
    return math.factorial(n) // denom


def conjugacy_class(n: int, ct: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All permutations of S_n with the given cycle type."""
    return [p for p in permutations(range(n)) if cycle_type(p) == ct]


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


def _inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _is_transitive(n: int, perms: list[tuple[int, ...]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = n
    for perm in perms:
        for i in range(n):
            ri, rj = find(i), find(perm[i])
            if ri != rj:
                parent[ri] = rj
                components -= 1
    return components == 1


def _enumeration_plan(profile: RamificationProfile):
    """Order the factors: largest class pinned, second largest determined."""
    n = profile.n
    cts = [to_cycle_type(t, n).parts for t in profile.types]
    order = sorted(range(len(cts)), key=lambda i: (class_size(n, cts[i]), cts[i]), reverse=True)
    fixed_ct = cts[order[0]]
    determined_ct = cts[order[1]]
    middle_cts = [cts[i] for i in order[2:]]
    return fixed_ct, middle_cts, determined_ct


def estimate_work(profile: RamificationProfile) -> int:
    """Projected number of enumerated tuples (product of free class sizes)."""
    _, middle_cts, _ = _enumeration_plan(profile)
    est = 1
    for ct in middle_cts:
        est *= class_size(profile.n, ct)
    return est


def _count_chunk(
    n: int,
    prefix: tuple[int, ...],
    middle_classes: list[list[tuple[int, ...]]],
    determined_set: frozenset,
    fixed_factors: list[tuple[int, ...]],
) -> int:
    """Count completions of ``prefix`` by the remaining middle factors.

    ``prefix`` is the product of the already chosen factors.  A leaf is
    accepted when the product so far lies in the determined factor's
    class (its inverse then has the right cycle type) and the whole tuple
    acts transitively.  The determined factor has the same orbits as the
    product, so transitivity is checked on the chosen factors plus the
    product itself.
    """
    factors = list(fixed_factors)
    is_transitive = _is_transitive

    if not middle_classes:
        if prefix in determined_set and is_transitive(n, factors + [prefix]):
            return 1
        return 0

    last_level = len(middle_classes) - 1
    last_class = middle_classes[last_level]

    def rec(pref: tuple[int, ...], level: int) -> int:
        total = 0
        if level == last_level:
            # innermost loop, kept free of per-leaf call overhead
            for perm in last_class:
                prod = tuple(perm[x] for x in pref)
                if prod in determined_set:
                    factors.append(perm)
                    factors.append(prod)
                    if is_transitive(n, factors):
                        total += 1
                    factors.pop()
                    factors.pop()
            return total
        for perm in middle_classes[level]:
            factors.append(perm)
            total += rec(tuple(perm[x] for x in pref), level + 1)
            factors.pop()
        return total

    return rec(prefix, 0)


def _worker(args) -> int:
    return _count_chunk(*args)


def count_factorizations(
    profile: RamificationProfile,
    *,
    bound: int = DEFAULT_DEGREE_BOUND,
    work_limit: int | None = None,
    threads: int = 1,
) -> FactorizationCount:
    """Count monodromy tuples for ``profile`` and the resulting Hurwitz number.

    Refuses degrees above ``bound`` and, when ``work_limit`` is given,
    projected enumerations above it.  ``threads`` > 1 forks workers over
    chunks of the first free factor's class; the result does not depend
    on the worker count.
    """
    n = profile.n
    if n > bound:
        raise EnumerationBoundError(
            f"degree n = {n} exceeds the enumeration bound {bound}"
        )
    estimate = estimate_work(profile)
    if work_limit is not None and estimate > work_limit:
        raise WorkLimitError(
            f"projected {estimate} tuples exceeds the work limit {work_limit}"
        )

    fixed_ct, middle_cts, determined_ct = _enumeration_plan(profile)
    fixed_rep = _class_representative(n, fixed_ct)
    middle_classes = [conjugacy_class(n, ct) for ct in middle_cts]
    determined_set = frozenset(conjugacy_class(n, determined_ct))

    if threads > 1 and middle_classes:
        first = middle_classes[0]
        nchunks = min(threads, len(first)) or 1
        chunks = [first[i::nchunks] for i in range(nchunks)]
        jobs = [
            (n, fixed_rep, [chunk] + middle_classes[1:], determined_set, [fixed_rep])
            for chunk in chunks
        ]
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(nchunks) as pool:
            pinned = sum(pool.map(_worker, jobs))
    else:
        pinned = _count_chunk(n, fixed_rep, middle_classes, determined_set, [fixed_rep])

    raw = class_size(n, fixed_ct) * pinned
    return FactorizationCount(profile, raw, Fraction(raw, math.factorial(n)))


def _class_representative(n: int, ct: tuple[int, ...]) -> tuple[int, ...]:
    perm = list(range(n))
    start = 0
    for length in ct:
        for i in range(length):
            perm[start + i] = start + (i + 1) % length
        start += length
    return tuple(perm)


class OracleCache:
    """On-disk memo of raw tuple counts, keyed by canonical profile key.

    File format: one record per line, "key<TAB>raw_count" in decimal,
    UTF-8.  Writes go through a temporary file and an atomic rename.
    Corrupt entries are dropped with a warning and recomputed.
    """

    FILENAME = "counts.tsv"

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._entries: dict[str, int] | None = None

    @property
    def path(self) -> Path:
        return self.directory / self.FILENAME

    def _load(self) -> dict[str, int]:
        if self._entries is not None:
            return self._entries
        entries: dict[str, int] = {}
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                key, sep, value = line.partition("\t")
                if not sep or not value.strip().isdigit():
                    warnings.warn(f"dropping corrupt cache line {line!r}")
                    continue
                entries[key] = int(value)
        self._entries = entries
        return entries

    def get(self, key: str) -> int | None:
        return self._load().get(key)

    def put(self, key: str, raw_count: int) -> None:
        entries = self._load()
        entries[key] = raw_count
        self.directory.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tsv.tmp")
        body = "".join(f"{k}\t{v}\n" for k, v in sorted(entries.items()))
        tmp.write_text(body, encoding="utf-8")
        os.replace(tmp, self.path)

    def invalidate(self) -> None:
        self._entries = None

    def stats(self) -> dict:
        entries = self._load()
        return {
            "path": str(self.path),
            "entries": len(entries),
            "largest_raw_count": max(entries.values()) if entries else 0,
        }


def count_cached(
    profile: RamificationProfile,
    cache: OracleCache,
    **kwargs,
) -> FactorizationCount:
    """Memoized count_factorizations; cache hits skip the enumeration."""
    key = profile.canonical_key
    cached = cache.get(key)
    if cached is not None:
        return FactorizationCount(
            profile, cached, Fraction(cached, math.factorial(profile.n))
        )
    result = count_factorizations(profile, **kwargs)
    cache.put(key, result.raw_count)
    return result
