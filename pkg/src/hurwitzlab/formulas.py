"""Closed formulas for Hurwitz numbers and the degree/coupling bridge.

Two exact evaluations live here: the classical count for one arbitrary
ramification type plus simple points, and the count for two double
points plus simple points.  The bridge converts a Hurwitz number h into
the degree mu of the Lyashko-Looijenga map on the corresponding stratum
and further into the intersection coupling of the projectivized stratum
with the complementary power of the hyperplane class:

    h  = (1/n!) * |Aut{kappa_1..kappa_c}| / |Aut{d_1..d_c}| * mu
    mu = |Aut{d_1..d_c}| * coupling

All arithmetic is exact; negative powers of n are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .partitions import (
    Partition,
    RamificationProfile,
    aut_multiset,
    degeneracy,
)


class FormulaDomainError(ValueError):
    pass


class BridgeInconsistencyError(ValueError):
    """The LL-map degree computed from h is not a nonnegative integer."""


def hurwitz_formula(n: int, kappa: Partition) -> Fraction:
    """Coverings of degree n with type kappa over one point, simple otherwise.

    h = (2n-2-d)! / ((n-d-m)! |Aut(kappa)|)
        * prod (k_i+1)^(k_i+1) / (k_i+1)!  *  n^(n-d-3)
    """
    if n < 2:
        raise FormulaDomainError(f"degree must be >= 2, got {n}")
    d = degeneracy(kappa)
    m = len(kappa)
    if d < 1:
        raise FormulaDomainError("kappa must be a nonempty partition")
    if n - d - m < 0:
        raise FormulaDomainError(
            f"no stratum: n - d - m = {n - d - m} < 0 for kappa = {kappa}, n = {n}"
        )
    value = Fraction(math.factorial(2 * n - 2 - d), math.factorial(n - d - m) * aut_multiset(kappa.parts))
    for k in kappa.parts:
        value *= Fraction((k + 1) ** (k + 1), math.factorial(k + 1))
    value *= Fraction(n) ** (n - d - 3)
    return value


def h22_formula(n: int) -> Fraction:
    """Coverings with two double critical points and 2n-6 simple ones.

    h_{2,2} = (3/4) (27n^2 - 137n + 180) n^(n-6) (2n-6)! / (n-3)!

    The edge case n = 3 (no simple points at all) evaluates to 1/3 and
    agrees with direct enumeration, so it is accepted.
    """
    if n < 3:
        raise FormulaDomainError(f"need n >= 3 for two double points, got {n}")
    return (
        Fraction(3, 4)
        * (27 * n**2 - 137 * n + 180)
        * Fraction(n) ** (n - 6)
        * Fraction(math.factorial(2 * n - 6), math.factorial(n - 3))
    )


@dataclass(frozen=True)
class BridgeReport:
    profile: RamificationProfile
    h: Fraction
    mu: Fraction
    coupling: Fraction
    aut_kappa: int
    aut_d: int


def bridge(profile: RamificationProfile, h: Fraction) -> BridgeReport:
    """Convert a Hurwitz number into the LL degree and the Psi-coupling.

    mu must come out a nonnegative integer; anything else signals a wrong
    h and raises BridgeInconsistencyError.
    """
    n = profile.n
    aut_kappa = aut_multiset(profile.types)
    aut_d = aut_multiset(profile.degeneracies)
    mu = Fraction(h) * math.factorial(n) * aut_d / aut_kappa
    if mu.denominator != 1 or mu < 0:
        raise BridgeInconsistencyError(
            f"LL degree mu = {mu} is not a nonnegative integer for h = {h}"
        )
    coupling = mu / aut_d
    return BridgeReport(profile, Fraction(h), mu, coupling, aut_kappa, aut_d)


def closed_form_for(profile: RamificationProfile) -> tuple[str, Fraction] | None:
    """Closed-form value applicable to ``profile``, if any.

    Returns ("hurwitz", value) when at most one type is non-simple, and
    ("double-double", value) when the non-simple types are exactly two
    double points.  Otherwise None.
    """
    nonsimple = [t for t in profile.types if t.parts != (1,)]
    if len(nonsimple) <= 1:
        kappa = nonsimple[0] if nonsimple else Partition((1,))
        return "hurwitz", hurwitz_formula(profile.n, kappa)
    if len(nonsimple) == 2 and all(t.parts == (2,) for t in nonsimple):
        return "double-double", h22_formula(profile.n)
    return None
