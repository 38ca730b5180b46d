"""Exact univariate polynomial engine: resultants, discriminants, and the
caustic computations for the pole-collision families.

Polynomials are dense with Fraction coefficients, lowest degree first.
Resultants use the subresultant polynomial remainder sequence over the
integers; a Sylvester-determinant evaluation is kept alongside as the
independent route, and it is also the workhorse for parametric
resultants: a one-parameter resultant is reconstructed exactly by
interpolating formal-degree Sylvester determinants at enough rational
points (the determinant of the formal matrix commutes with evaluation,
so no genericity assumptions are needed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .linalg import det, solve_with_nullspace

Rat = Fraction


class PolynomialError(ValueError):
    pass


class GenericityError(ValueError):
    """Audit parameters have coinciding ratios or zero entries."""


class AuditError(ValueError):
    """A claimed multiplicity failed; the message names the point."""


class CofactorError(ValueError):
    """Stripping monomial factors did not leave a cubic."""


class ExactPoly:
    """Dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # ---- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Rat:
        if not self.coeffs:
            raise PolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, ExactPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @classmethod
    def constant(cls, c) -> "ExactPoly":
        return cls((Rat(c),))

    @classmethod
    def variable(cls) -> "ExactPoly":
        return cls((Rat(0), Rat(1)))

    # ---- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ExactPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return ExactPoly()
        out = [Rat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise PolynomialError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ExactPoly(), self
        quo = [Rat(0)] * (dq + 1)
        dlc = other.lc
        for shift in range(dq, -1, -1):
            c = rem[shift + other.degree] / dlc
            if c != 0:
                quo[shift] = c
                for i, oc in enumerate(other.coeffs):
                    rem[shift + i] -= c * oc
        return ExactPoly(quo), ExactPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "ExactPoly":
        quo, rem = divmod(self, other)
        if not rem.is_zero():
            raise PolynomialError("division is not exact")
        return quo

    def derivative(self) -> "ExactPoly":
        return ExactPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def evaluate(self, x) -> Rat:
        x = Rat(x)
        out = Rat(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    # ---- root bookkeeping ----------------------------------------------------

    def trailing_order(self) -> int:
        """Multiplicity of the root at 0."""
        if self.is_zero():
            raise PolynomialError("zero polynomial")
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def multiplicity_at(self, r) -> int:
        """Multiplicity of the rational root r, by repeated exact division."""
        r = Rat(r)
        factor = ExactPoly((-r, Rat(1)))
        poly = self
        mult = 0
        while not poly.is_zero() and poly.evaluate(r) == 0:
            poly = poly.exact_div(factor)
            mult += 1
        return mult

    def reverse(self, total_degree: int) -> "ExactPoly":
        """Coefficient reversal after padding up to the given degree."""
        if total_degree < self.degree:
            raise PolynomialError("reversal degree below actual degree")
        padded = list(self.coeffs) + [Rat(0)] * (total_degree + 1 - len(self.coeffs))
        return ExactPoly(tuple(reversed(padded)))

    def is_squarefree(self) -> bool:
        return poly_gcd(self, self.derivative()).degree <= 0

    def __repr__(self):
        return f"ExactPoly({self.to_str()})"

    def to_str(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if k == 0 else f"{c}*{var}^{k}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_poly(x) -> ExactPoly:
    if isinstance(x, ExactPoly):
        return x
    return ExactPoly.constant(x)


def poly_from_roots(roots: Sequence) -> ExactPoly:
    out = ExactPoly.constant(1)
    for r in roots:
        out = out * ExactPoly((-Rat(r), Rat(1)))
    return out


# ---- integer subresultant machinery ---------------------------------------


def _int_clear(poly: ExactPoly) -> tuple[list[int], int]:
    """Clear denominators: returns (integer coefficients, common denominator)."""
    denom = 1
    for c in poly.coeffs:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    return [int(c * denom) for c in poly.coeffs], denom


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    da, db = len(a) - 1, len(b) - 1
    lb = b[-1]
    e = da - db + 1
    rem = list(a)
    while len(rem) - 1 >= db and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < db:
            break
        shift = len(rem) - 1 - db
        lead = rem[-1]
        rem = [lb * c for c in rem]
        for i, bc in enumerate(b):
            rem[shift + i] -= lead * bc
        rem.pop()
        e -= 1
    scale = lb**e
    return [c * scale for c in rem]


def _int_subresultant_resultant(a: list[int], b: list[int]) -> int:
    """Resultant of two nonzero integer polynomials via the subresultant
    polynomial remainder sequence."""
    a = list(a)
    b = list(b)
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    da, db = len(a) - 1, len(b) - 1
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if (da * db) % 2 == 1:
            sign = -sign
    if db == 0:
        return sign * b[0] ** da
    g, h = 1, 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        rem = _int_prem(a, b)
        while rem and rem[-1] == 0:
            rem.pop()
        if not rem:
            return 0  # nontrivial common factor (deg b >= 1 here)
        divisor = g * h**delta
        a = b
        b = [c // divisor for c in rem]
        g = a[-1]
        h = h * (g**delta) // h**delta if delta == 0 else (g**delta) // (h ** (delta - 1))
        if len(b) - 1 == 0:
            da = len(a) - 1
            return sign * b[0] ** da // h ** (da - 1)


def resultant(f: ExactPoly, g: ExactPoly) -> Rat:
    """Resultant of two nonzero rational polynomials (subresultant PRS)."""
    if f.is_zero() or g.is_zero():
        raise PolynomialError("resultant of the zero polynomial is refused")
    fi, fd = _int_clear(f)
    gi, gd = _int_clear(g)
    raw = _int_subresultant_resultant(fi, gi)
    return Rat(raw, fd ** g.degree * gd ** f.degree)


def sylvester_matrix(
    f_coeffs: Sequence[Rat], deg_f: int, g_coeffs: Sequence[Rat], deg_g: int
) -> list[list[Rat]]:
    """Sylvester matrix with the stated formal degrees (coefficient lists
    are padded; leading entries may be zero)."""
    fc = list(f_coeffs) + [Rat(0)] * (deg_f + 1 - len(f_coeffs))
    gc = list(g_coeffs) + [Rat(0)] * (deg_g + 1 - len(g_coeffs))
    size = deg_f + deg_g
    rows = []
    frow = list(reversed(fc))
    grow = list(reversed(gc))
    for i in range(deg_g):
        rows.append([Rat(0)] * i + frow + [Rat(0)] * (size - deg_f - 1 - i))
    for i in range(deg_f):
        rows.append([Rat(0)] * i + grow + [Rat(0)] * (size - deg_g - 1 - i))
    return rows


def sylvester_resultant(
    f_coeffs: Sequence[Rat], deg_f: int, g_coeffs: Sequence[Rat], deg_g: int
) -> Rat:
    """Formal-degree resultant as a Sylvester determinant; the independent
    route, and the specialization-safe one."""
    if deg_f == 0 and deg_g == 0:
        return Rat(1)
    if deg_f == 0:
        return Rat(f_coeffs[0]) ** deg_g
    if deg_g == 0:
        return Rat(g_coeffs[0]) ** deg_f
    return det(sylvester_matrix(f_coeffs, deg_f, g_coeffs, deg_g))


def discriminant(f: ExactPoly) -> Rat:
    """Discriminant (-1)^(m(m-1)/2) res(f, f') / lc(f); degree >= 2 only."""
    m = f.degree
    if m < 2:
        raise PolynomialError(f"discriminant needs degree >= 2, got {m}")
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def poly_gcd(f: ExactPoly, g: ExactPoly) -> ExactPoly:
    """Monic gcd via the primitive PRS over the integers."""
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    a, _ = _int_clear(f)
    b, _ = _int_clear(g)
    if len(a) < len(b):
        a, b = b, a
    while True:
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        if len(b) == 1:
            return ExactPoly.constant(1)
        rem = _int_prem(a, b)
        content = 0
        for c in rem:
            content = math.gcd(content, c)
        if content:
            rem = [c // content for c in rem]
        a, b = b, rem
    return _monic(ExactPoly(a))


def _monic(f: ExactPoly) -> ExactPoly:
    if f.is_zero():
        return f
    inv = Rat(1) / f.lc
    return ExactPoly(tuple(c * inv for c in f.coeffs))


# ---- one-parameter polynomials in z ----------------------------------------


class ParamPoly:
    """Polynomial in a main variable z whose coefficients are ExactPoly
    in one parameter t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ExactPoly]):
        cs = [c if isinstance(c, ExactPoly) else ExactPoly.constant(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> ExactPoly:
        return self.coeffs[-1]

    @property
    def max_param_degree(self) -> int:
        return max((c.degree for c in self.coeffs if not c.is_zero()), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return ParamPoly(out)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if isinstance(other, ParamPoly):
            if self.is_zero() or other.is_zero():
                return ParamPoly(())
            out = [ExactPoly()] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return ParamPoly(out)
        other = other if isinstance(other, ExactPoly) else ExactPoly.constant(other)
        return ParamPoly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def derivative_z(self) -> "ParamPoly":
        return ParamPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def coeff_values(self, t0) -> list[Rat]:
        """Coefficient list at t = t0, padded to the formal degree."""
        return [c.evaluate(t0) for c in self.coeffs]


def newton_interpolate(points: Sequence[tuple[Rat, Rat]]) -> ExactPoly:
    """Exact polynomial through the given (x, y) pairs (divided differences)."""
    xs = [Rat(x) for x, _ in points]
    coeffs = [Rat(y) for _, y in points]
    npts = len(points)
    for j in range(1, npts):
        for i in range(npts - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - j])
    poly = ExactPoly.constant(coeffs[-1])
    for i in range(npts - 2, -1, -1):
        poly = poly * ExactPoly((-xs[i], Rat(1))) + ExactPoly.constant(coeffs[i])
    return poly


def _sample_points(count: int):
    pts = []
    value = 0
    while len(pts) < count:
        pts.append(Rat(value))
        if value > 0:
            value = -value
        else:
            value = -value + 1
    return pts


def resultant_z(p: ParamPoly, q: ParamPoly) -> ExactPoly:
    """Resultant in z of two one-parameter polynomials, exact in t.

    Evaluates the formal Sylvester determinant at enough points and
    interpolates; the formal determinant specializes correctly at every
    point, including zeros of the leading coefficients.
    """
    if p.is_zero() or q.is_zero():
        raise PolynomialError("resultant of the zero polynomial is refused")
    m, k = p.degree, q.degree
    bound = k * max(p.max_param_degree, 0) + m * max(q.max_param_degree, 0)
    pts = _sample_points(bound + 1 + 2)
    values = [
        sylvester_resultant(p.coeff_values(t0), m, q.coeff_values(t0), k)
        for t0 in pts
    ]
    poly = newton_interpolate(list(zip(pts[: bound + 1], values[: bound + 1])))
    for t0, val in zip(pts[bound + 1 :], values[bound + 1 :]):
        if poly.evaluate(t0) != val:
            raise PolynomialError("interpolation bound violated")
    return poly


def discriminant_z(p: ParamPoly) -> ExactPoly:
    """Parametric discriminant: (-1)^(m(m-1)/2) res_z(p, dp/dz) / lc_z(p)."""
    m = p.degree
    if m < 2:
        raise PolynomialError(f"discriminant needs z-degree >= 2, got {m}")
    res = resultant_z(p, p.derivative_z())
    quo = res.exact_div(p.lead)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * ExactPoly.constant(1) * quo if sign == 1 else ExactPoly(tuple(-c for c in quo.coeffs)) if False else (quo if sign == 1 else ExactPoly(tuple(-c for c in quo.coeffs)))
