"""Degree-2 cohomology of the projectivized space of rational functions.

The presentation has one generator [D] for every unordered 2-block split
of the n marks with both blocks of size >= 2, plus the hyperplane class
Psi.  A split with a singleton block is not an independent generator: it
equals Psi - psi_i, where psi_i is the cotangent-line class at mark i,
itself a sum of boundary generators.  Linear relations are generated by
the four-point relations: for distinct i, j, k, l the sums of boundary
classes separating {i,j} | {k,l}, {i,k} | {j,l} and {i,l} | {j,k} agree.

Equality of classes therefore means equality modulo the relation
lattice, tested by exact rank arguments.  The distinguished symmetric
classes (size-(p,q) boundary sums, their halved total, the caustic and
the Maxwell class) and the pairing tables against the one-parameter
pole-collision families sigma_{p,q} live here too, as do the genus-zero
psi-intersection numbers used to evaluate top powers of Psi.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import SparseRowSpace, solve_with_nullspace, det

Rat = Fraction


class MarkError(ValueError):
    pass


class SigmaSpanError(ValueError):
    """Pairing requested against a class outside span{Psi, Delta_{p,q}}."""


@dataclass(frozen=True)
class MarkSplit:
    """Unordered partition of {1..n} into two nonempty blocks.

    Canonical orientation: blockA is the block containing mark 1.
    """

    blockA: frozenset
    blockB: frozenset

    def __init__(self, blockA: Iterable[int], blockB: Iterable[int]):
        a, b = frozenset(blockA), frozenset(blockB)
        if not a or not b:
            raise MarkError("both blocks must be nonempty")
        if a & b:
            raise MarkError(f"blocks overlap: {sorted(a & b)}")
        marks = a | b
        n = len(marks)
        if marks != frozenset(range(1, n + 1)):
            raise MarkError(f"blocks must cover 1..{n}, got {sorted(marks)}")
        if 1 not in a:
            a, b = b, a
        object.__setattr__(self, "blockA", a)
        object.__setattr__(self, "blockB", b)

    @property
    def n(self) -> int:
        return len(self.blockA) + len(self.blockB)

    @property
    def is_moduli_boundary(self) -> bool:
        return len(self.blockA) >= 2 and len(self.blockB) >= 2

    @property
    def sizes(self) -> tuple[int, int]:
        return tuple(sorted((len(self.blockA), len(self.blockB))))

    def __repr__(self) -> str:
        return f"{sorted(self.blockA)}|{sorted(self.blockB)}"


def compatible(d1: MarkSplit, d2: MarkSplit) -> bool:
    """Whether two splits can appear on a common stable curve.

    Equivalent to one block of one split being contained in a block of
    the other, i.e. some pair of blocks is disjoint.
    """
    if d1.n != d2.n:
        raise MarkError("splits of different mark counts")
    return any(
        not (x & y)
        for x in (d1.blockA, d1.blockB)
        for y in (d2.blockA, d2.blockB)
    )


@lru_cache(maxsize=None)
def split_basis(n: int) -> tuple[MarkSplit, ...]:
    """All splits with both blocks >= 2, in a fixed deterministic order."""
    rest = range(2, n + 1)
    splits = []
    for size in range(1, n - 2):
        for extra in combinations(rest, size):
            splits.append(MarkSplit({1, *extra}, set(rest) - set(extra)))
    return tuple(splits)


@lru_cache(maxsize=None)
def _split_index(n: int) -> dict:
    return {s: i for i, s in enumerate(split_basis(n))}


class H2Vector:
    """Exact rational combination of boundary generators and Psi."""

    __slots__ = ("n", "psi", "coeffs")

    def __init__(self, n: int, psi: Rat = Rat(0), coeffs: dict | None = None):
        self.n = n
        self.psi = Rat(psi)
        clean = {}
        for split, c in (coeffs or {}).items():
            c = Rat(c)
            if c == 0:
                continue
            if not split.is_moduli_boundary:
                raise MarkError(f"{split} is not a boundary generator; expand it first")
            if split.n != n:
                raise MarkError("split mark count differs from vector mark count")
            clean[split] = c
        self.coeffs = clean

    # ---- linear structure -------------------------------------------------

    def _binop(self, other: "H2Vector", sign: int) -> "H2Vector":
        if self.n != other.n:
            raise MarkError("mark counts differ")
        coeffs = dict(self.coeffs)
        for split, c in other.coeffs.items():
            coeffs[split] = coeffs.get(split, Rat(0)) + sign * c
        return H2Vector(self.n, self.psi + sign * other.psi, coeffs)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return self * -1

    def __mul__(self, scalar):
        scalar = Rat(scalar)
        return H2Vector(
            self.n, self.psi * scalar, {s: c * scalar for s, c in self.coeffs.items()}
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Rat(1) / Rat(scalar))

    def __eq__(self, other):
        return (
            isinstance(other, H2Vector)
            and self.n == other.n
            and self.psi == other.psi
            and self.coeffs == other.coeffs
        )

    def is_zero(self) -> bool:
        return self.psi == 0 and not self.coeffs

    def dense(self) -> list[Rat]:
        """Coordinates over split_basis(n) followed by the Psi coordinate."""
        idx = _split_index(self.n)
        vec = [Rat(0)] * (len(idx) + 1)
        for split, c in self.coeffs.items():
            vec[idx[split]] = c
        vec[-1] = self.psi
        return vec

    def sparse_splits(self) -> dict[int, Rat]:
        idx = _split_index(self.n)
        return {idx[s]: c for s, c in self.coeffs.items()}

    def __repr__(self):
        parts = [f"{c}*[{s!r}]" for s, c in sorted(self.coeffs.items(), key=lambda kv: repr(kv[0]))]
        if self.psi:
            parts.append(f"{self.psi}*Psi")
        return " + ".join(parts) if parts else "0"

    # ---- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        idx = _split_index(self.n)
        splits = sorted(self.coeffs.items(), key=lambda kv: idx[kv[0]])
        return {
            "n": self.n,
            "psi": str(self.psi),
            "splits": [
                {"blockA": sorted(s.blockA), "coeff": str(c)} for s, c in splits
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "H2Vector":
        n = data["n"]
        coeffs = {}
        for item in data["splits"]:
            block_a = set(item["blockA"])
            split = MarkSplit(block_a, set(range(1, n + 1)) - block_a)
            coeffs[split] = Fraction(item["coeff"])
        return cls(n, Fraction(data["psi"]), coeffs)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "H2Vector":
        return cls.from_json_dict(json.loads(text))


def zero_vector(n: int) -> H2Vector:
    return H2Vector(n)

def psi_class(n: int) -> H2Vector:
    return H2Vector(n, psi=Rat(1))


def psi_small(i: int, j: int, k: int, n: int) -> H2Vector:
    """Cotangent-line class at mark i: the sum of boundary generators
    separating i from {j, k}."""
    _check_marks(n, i, j, k)
    rest = [m for m in range(1, n + 1) if m not in (i, j, k)]
    coeffs = {}
    for size in range(1, len(rest) + 1):
        for extra in combinations(rest, size):
            block_a = {i, *extra}
            split = MarkSplit(block_a, set(range(1, n + 1)) - block_a)
            coeffs[split] = Rat(1)
    return H2Vector(n, Rat(0), coeffs)


def _canonical_psi(i: int, n: int) -> H2Vector:
    j, k = [m for m in range(1, n + 1) if m != i][:2]
    return psi_small(i, j, k, n)


def boundary_class(split: MarkSplit) -> H2Vector:
    """The class of a split; a singleton block expands as Psi - psi_i."""
    n = split.n
    if split.is_moduli_boundary:
        return H2Vector(n, Rat(0), {split: Rat(1)})
    singleton = split.blockA if len(split.blockA) == 1 else split.blockB
    (i,) = singleton
    return psi_class(n) - _canonical_psi(i, n)


def psi_big(i: int, j: int, k: int, n: int) -> H2Vector:
    """Sum over all splits (singletons allowed) separating i from {j, k};
    equals Psi modulo the relation lattice."""
    _check_marks(n, i, j, k)
    singleton = MarkSplit({i}, set(range(1, n + 1)) - {i})
    return psi_small(i, j, k, n) + boundary_class(singleton)


def _check_marks(n: int, *marks: int):
    if n < 3:
        raise MarkError(f"need at least 3 marks, got n = {n}")
    if len(set(marks)) != len(marks):
        raise MarkError(f"marks must be pairwise distinct, got {marks}")
    if any(m < 1 or m > n for m in marks):
        raise MarkError(f"marks out of range 1..{n}: {marks}")


# ---- the relation lattice ---------------------------------------------


def _bracket(n: int, i: int, j: int, k: int, l: int) -> H2Vector:
    # sum of generators with {i,j} in one block and {k,l} in the other
    rest = [m for m in range(1, n + 1) if m not in (i, j, k, l)]
    coeffs = {}
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            block = {i, j, *extra}
            split = MarkSplit(block, set(range(1, n + 1)) - block)
            coeffs[split] = coeffs.get(split, Rat(0)) + 1
    return H2Vector(n, Rat(0), coeffs)


class RelationLattice:
    """Row space of the four-point relations for a fixed mark count."""

    def __init__(self, n: int, rows: Sequence[H2Vector]):
        self.n = n
        self.rows = tuple(rows)
        self._space: SparseRowSpace | None = None

    @property
    def space(self) -> SparseRowSpace:
        if self._space is None:
            space = SparseRowSpace()
            for row in self.rows:
                assert row.psi == 0
                space.add_row(row.sparse_splits())
            self._space = space
        return self._space

    @property
    def rank(self) -> int:
        return self.space.rank

    def reduce(self, v: H2Vector) -> H2Vector:
        """Residual of v modulo the lattice (Psi coordinate untouched)."""
        residual = self.space.reduce(v.sparse_splits())
        basis = split_basis(self.n)
        return H2Vector(self.n, v.psi, {basis[i]: c for i, c in residual.items()})

    def contains(self, v: H2Vector) -> bool:
        return v.psi == 0 and not self.space.reduce(v.sparse_splits())


@lru_cache(maxsize=None)
def relation_lattice(n: int) -> RelationLattice:
    """All rows [ijDkl] - [ikDjl] and [ikDjl] - [ilDjk] over 4-subsets."""
    rows = []
    for i, j, k, l in combinations(range(1, n + 1), 4):
        b1 = _bracket(n, i, j, k, l)
        b2 = _bracket(n, i, k, j, l)
        b3 = _bracket(n, i, l, j, k)
        rows.append(b1 - b2)
        rows.append(b2 - b3)
    return RelationLattice(n, rows)


def classes_equal(u: H2Vector, v: H2Vector, lattice: RelationLattice) -> bool:
    """Exact equality in cohomology: u - v lies in the relation lattice.

    Relations never involve Psi, so the Psi coordinates must agree on the
    nose.
    """
    if u.n != v.n or u.n != lattice.n:
        raise MarkError("mark counts differ")
    return lattice.contains(u - v) if u.psi == v.psi else False


def h2_rank(n: int) -> int:
    """Dimension of the degree-2 cohomology presentation after relations."""
    return len(split_basis(n)) + 1 - relation_lattice(n).rank


# ---- distinguished symmetric classes ------------------------------------


def delta_pq(n: int, p: int, q: int) -> H2Vector:
    """Sum of split classes with block sizes (p, q), enumerated by the
    size-p block; for p = q every unordered split is counted twice."""
    if p < 1 or q < 1 or p + q != n:
        raise MarkError(f"need p, q >= 1 with p + q = n, got p={p}, q={q}, n={n}")
    total = zero_vector(n)
    for block in combinations(range(1, n + 1), p):
        split = MarkSplit(set(block), set(range(1, n + 1)) - set(block))
        total = total + boundary_class(split)
    return total


def delta_total(n: int) -> H2Vector:
    """Half the sum of all delta_pq; each unordered split has coefficient 1."""
    if n < 2:
        raise MarkError(f"need n >= 2, got {n}")
    total = zero_vector(n)
    for p in range(1, n):
        total = total + delta_pq(n, p, n - p)
    return total / 2


def caustic_class(n: int) -> H2Vector:
    """Class of the locus with a degenerate critical point:
    6(n-1) Psi - 3 Delta_n."""
    if n < 3:
        raise MarkError(f"need n >= 3, got {n}")
    return 6 * (n - 1) * psi_class(n) - 3 * delta_total(n)


def maxwell_class(n: int) -> H2Vector:
    """Class of the locus with two critical points sharing a value:
    2(n-1)(n-6) Psi + 4 Delta_n."""
    if n < 3:
        raise MarkError(f"need n >= 3, got {n}")
    return 2 * (n - 1) * (n - 6) * psi_class(n) + 4 * delta_total(n)


# ---- identity verification ----------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    residual: H2Vector


@dataclass(frozen=True)
class IdentityReport:
    n: int
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def identity_candidates(n: int) -> list[tuple[str, H2Vector]]:
    """The four linear identities among Psi, Delta, caustic and Maxwell,
    each expressed as a vector that must vanish modulo the lattice."""
    psi = psi_class(n)
    dn = delta_total(n)
    caustic = caustic_class(n)
    maxwell = maxwell_class(n)
    weighted = zero_vector(n)
    caustic_expansion = zero_vector(n)
    maxwell_expansion = zero_vector(n)
    for p in range(1, n):
        dpq = delta_pq(n, p, n - p)
        weighted = weighted + p * (n - p) * dpq
        caustic_expansion = caustic_expansion + (Rat(p * (n - p), n) - Rat(1, 2)) * dpq
        maxwell_expansion = maxwell_expansion + (Rat((n - 6) * p * (n - p), n) + 2) * dpq
    return [
        ("psi-vs-weighted-boundary", psi - weighted / (2 * n * (n - 1))),
        (
            "psi-vs-strata-sum",
            psi - (3 * caustic + 2 * maxwell + dn) / ((2 * n - 2) * (2 * n - 3)),
        ),
        ("caustic-vs-boundary-expansion", caustic - 3 * caustic_expansion),
        ("maxwell-vs-boundary-expansion", maxwell - maxwell_expansion),
    ]


def verify_identities(n: int) -> IdentityReport:
    """Check the linear identities exactly, modulo the relation lattice."""
    if n < 4:
        raise MarkError(f"identity suite needs n >= 4, got {n}")
    lattice = relation_lattice(n)
    checks = []
    for name, vector in identity_candidates(n):
        residual = lattice.reduce(vector)
        checks.append(IdentityCheck(name, residual.is_zero(), residual))
    return IdentityReport(n, tuple(checks))


# ---- pairings with the sigma families ------------------------------------


def sigma_delta_pairing(p: int, q: int, p2: int, q2: int) -> Rat:
    """Intersection index of the family sigma_{p,q} with the class
    Delta_{p2,q2}, accumulated over the family's degeneration points.

    The family meets the boundary at u=0 and v=0 (one split of sizes
    {p,q}, simply) and at the pq pole-collision points (n-2 singleton
    splits and one split of sizes {2, n-2}, each simply); the pairing
    with a Delta class counts those splits with their coefficients.
    """
    n = p + q
    sizes = tuple(sorted((p2, q2)))
    val = Rat(0)
    if sizes == tuple(sorted((p, q))):
        val += 2 * (2 if p2 == q2 else 1)
    if sizes == tuple(sorted((1, n - 1))):
        val += p * q * (n - 2)
    if sizes == tuple(sorted((2, n - 2))):
        val += p * q * (2 if 2 == n - 2 else 1)
    return val


def sigma_pairing(p: int, q: int, v: H2Vector) -> Rat:
    """Pair sigma_{p,q} with a class in span{Psi, Delta_{p',q'}}.

    The input is decomposed exactly over that span; anything outside is
    refused, because the tables do not determine pairings with individual
    split classes.
    """
    n = p + q
    if p < 1 or q < 1 or n < 3:
        raise MarkError(f"need p, q >= 1 with p + q >= 3, got p={p}, q={q}")
    if v.n != n:
        raise MarkError(f"class lives on {v.n} marks, family on {n}")
    columns = [psi_class(n)] + [delta_pq(n, p2, n - p2) for p2 in range(1, n // 2 + 1)]
    values = [Rat(p * q)] + [
        sigma_delta_pairing(p, q, p2, n - p2) for p2 in range(1, n // 2 + 1)
    ]
    sol, nullspace = solve_with_nullspace([c.dense() for c in columns], v.dense())
    if sol is None:
        raise SigmaSpanError(
            "class is not a combination of Psi and the Delta_{p,q}"
        )
    for kernel in nullspace:
        if sum(z * val for z, val in zip(kernel, values)) != 0:
            raise AssertionError("pairing table inconsistent on a span relation")
    return sum(x * val for x, val in zip(sol, values))


def sigma_distinguishing_matrix(n: int) -> list[list[Rat]]:
    """Pairing matrix of the families sigma_{p,q} against the Delta classes.

    Rows are the families with p <= q, columns the classes with p2 <= q2;
    nonsingularity means the families separate all combinations of the
    Delta classes.
    """
    ps = range(1, n // 2 + 1)
    return [[sigma_delta_pairing(p, n - p, p2, n - p2) for p2 in ps] for p in ps]


def sigma_families_distinguish(n: int) -> bool:
    return det(sigma_distinguishing_matrix(n)) != 0


# ---- psi intersection numbers and top Psi powers -------------------------


def psi_integral(exponents: Sequence[int]) -> Rat:
    """Integral of prod psi_i^{k_i} over the space of stable genus-zero
    curves with n = len(exponents) marks: (n-3)! / prod k_i!, and zero
    unless the total degree is n - 3."""
    ks = _checked_exponents(exponents)
    n = len(ks)
    if sum(ks) != n - 3:
        return Rat(0)
    denom = 1
    for k in ks:
        denom *= math.factorial(k)
    return Rat(math.factorial(n - 3), denom)


def psi_integral_by_string_equation(exponents: Sequence[int]) -> Rat:
    """Same integral evaluated by the string-equation recursion; an
    independent route kept for cross-checking the closed form."""
    ks = _checked_exponents(exponents)
    return _string_equation(tuple(sorted(ks)))


def _checked_exponents(exponents: Sequence[int]) -> tuple[int, ...]:
    ks = tuple(exponents)
    if len(ks) < 3:
        raise MarkError(f"need at least 3 marks, got {len(ks)}")
    if any(not isinstance(k, int) or k < 0 for k in ks):
        raise MarkError(f"exponents must be nonnegative integers, got {ks}")
    return ks


@lru_cache(maxsize=None)
def _string_equation(sorted_key: tuple[int, ...]) -> Rat:
    n = len(sorted_key)
    if sum(sorted_key) != n - 3:
        return Rat(0)
    if n == 3:
        return Rat(1)
    # total degree n-3 < n forces a zero exponent; remove that mark
    rest = list(sorted_key)
    rest.remove(0)
    total = Rat(0)
    for pos, k in enumerate(rest):
        if k > 0:
            child = rest[:pos] + [k - 1] + rest[pos + 1 :]
            total += _string_equation(tuple(sorted(child)))
    return total


def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _weak_compositions(total - head, parts - 1):
            yield (head,) + tail


def top_psi_power(n: int) -> Rat:
    """Top self-intersection of the hyperplane class, degree 2n-3.

    Evaluated by reducing powers of Psi through the ring relation
    (Psi - psi_1) ... (Psi - psi_n) Psi = 0, i.e. Psi^{n+1} =
    e_1 Psi^n - e_2 Psi^{n-1} + ..., until every term has Psi-degree at
    most n, then pushing the Psi^n coefficient (a degree n-3 polynomial
    in the psi_i) to the psi integrals.  n = 2 is the orbifold case: the
    space is a weighted projective line and the top power is 1/2.
    """
    if n < 2:
        raise MarkError(f"need n >= 2, got {n}")
    if n == 2:
        return Rat(1, 2)
    elementary = {
        j: [frozenset(sub) for sub in combinations(range(n), j)]
        for j in range(1, n + 1)
    }
    # levels: Psi-degree -> multivariate psi-polynomial (exponent tuple -> coeff)
    levels: dict[int, dict[tuple[int, ...], Rat]] = {
        2 * n - 3: {(0,) * n: Rat(1)}
    }
    while True:
        top = max(levels)
        if top <= n:
            break
        poly = levels.pop(top)
        for j, monomials in elementary.items():
            target = levels.setdefault(top - j, {})
            sign = 1 if j % 2 == 1 else -1
            for support in monomials:
                for exps, coeff in poly.items():
                    bumped = tuple(
                        e + 1 if i in support else e for i, e in enumerate(exps)
                    )
                    newc = target.get(bumped, Rat(0)) + sign * coeff
                    if newc == 0:
                        target.pop(bumped, None)
                    else:
                        target[bumped] = newc
    total = Rat(0)
    for exps, coeff in levels.get(n, {}).items():
        total += coeff * psi_integral(exps)
    return total


def top_psi_power_segre(n: int) -> Rat:
    """Cross-check route: the same number as the sum of all psi integrals
    of total degree n - 3 (the top Segre class of the pole bundle)."""
    if n < 2:
        raise MarkError(f"need n >= 2, got {n}")
    if n == 2:
        return Rat(1, 2)
    return sum(
        psi_integral(comp) for comp in _weak_compositions(n - 3, n)
    )
