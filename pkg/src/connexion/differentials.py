"""Rational 1-forms: residues, the residue divisor map, dlog and regularity.

A form is stored as ``g * dx`` on an elliptic curve and ``g * dt`` on a line.
On an elliptic curve ``dx/y`` is regular and nowhere zero on X, so ``g dx`` is
regular on X exactly when ``g * y`` lies in the coordinate ring.
"""
from __future__ import annotations

from fractions import Fraction

from .curve import Curve, Derivation, Function, Point, Puncture
from .divisors import Divisor
from .errors import (
    CurveMismatchError,
    DomainError,
    HigherOrderPoleError,
    InputError,
    NonIntegerResidueError,
    NonRationalSupportError,
)
from .local import _check_place, form_expansion
from .polys import Poly, rational_roots


class Differential:
    __slots__ = ("curve", "coeff")

    def __init__(self, curve: Curve, coeff: Function):
        if coeff.curve != curve:
            raise CurveMismatchError(f"coefficient {coeff} does not live on {curve}")
        self.curve = curve
        self.coeff = coeff

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def _other(self, other) -> "Differential":
        if not isinstance(other, Differential):
            return NotImplemented
        if other.curve != self.curve:
            raise CurveMismatchError("forms on different curves")
        return other

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            if isinstance(other, int) and other == 0:
                return self
            return o
        return Differential(self.curve, self.coeff + o.coeff)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return Differential(self.curve, -self.coeff)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Differential(self.curve, self.coeff - o.coeff)

    def __mul__(self, k):
        if isinstance(k, (int, Fraction, Function)):
            return Differential(self.curve, self.coeff * k)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k):
        if isinstance(k, (int, Fraction, Function)):
            return Differential(self.curve, self.coeff / k)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Differential):
            return NotImplemented
        return self.curve == other.curve and self.coeff == other.coeff

    def __hash__(self) -> int:
        return hash(("form", self.coeff))

    def __str__(self) -> str:
        from .textio import format_form

        return format_form(self)

    def __repr__(self) -> str:
        return f"Differential({self})"


def canonical_form(curve: Curve) -> Differential:
    """``dx/y`` on an elliptic curve, ``dt`` on a line."""
    if curve.is_elliptic:
        return Differential(curve, 1 / curve.y)
    return Differential(curve, curve.one)


def zero_form(curve: Curve) -> Differential:
    return Differential(curve, curve.zero)


def d(curve: Curve, g: Function) -> Differential:
    """Exterior derivative ``dg``."""
    if g.curve != curve:
        raise CurveMismatchError(f"{g} does not live on {curve}")
    dg = g.derivative()
    return Differential(curve, dg / curve.y if curve.is_elliptic else dg)


def dlog(curve: Curve, g: Function) -> Differential:
    if g.is_zero():
        raise DomainError("dlog of the zero function")
    return d(curve, g) / g


def pairing(curve: Curve, w: Differential, D: Derivation | None = None) -> Function:
    """``<w, D>``: contraction with the distinguished derivation."""
    if w.curve != curve or (D is not None and D.curve != curve):
        raise CurveMismatchError("pairing across curves")
    return w.coeff * curve.y if curve.is_elliptic else w.coeff


def _regular_part(curve: Curve, w: Differential) -> Function:
    """The function ``h`` with ``w = h * (canonical form)``."""
    return pairing(curve, w)


def is_regular_on_X(curve: Curve, w: Differential) -> bool:
    return _regular_part(curve, w).in_ring()


def residue(curve: Curve, w: Differential, P) -> Fraction:
    """Coefficient of ``dz/z`` in the expansion of ``w`` at ``P``."""
    _check_place(curve, P)
    if w.curve != curve:
        raise CurveMismatchError(f"{w} does not live on {curve}")
    return form_expansion(curve, w.coeff, P, 0).coeff(-1)


def pole_order(curve: Curve, w: Differential, P) -> int:
    """Order of the pole of ``w`` at ``P`` (0 when regular there)."""
    _check_place(curve, P)
    s = form_expansion(curve, w.coeff, P, 0)
    return max(-s.val, 0)


def poles_on_X(curve: Curve, w: Differential) -> list[Point]:
    """Points of X where ``w`` has a pole, sorted.

    Raises NonRationalSupportError when a pole lies at a point not defined
    over Q.
    """
    h = _regular_part(curve, w)
    roots, rest = rational_roots(h.d)
    bad = [fac for fac, _ in rest]
    if not curve.is_elliptic:
        if bad:
            raise NonRationalSupportError(bad[0], "pole set")
        return [Point((r,)) for r, _ in roots if r not in curve.punctures]
    if bad:
        raise NonRationalSupportError(bad[0], "pole set")
    out = []
    for r, _ in roots:
        pts = curve.points_over(r)
        if not pts:
            raise NonRationalSupportError(Poly((-r, 1)), "pole set")
        out.extend(P for P in pts if pole_order(curve, w, P) > 0)
    return sorted(out)


def res_map(curve: Curve, w: Differential) -> Divisor:
    """Residue divisor of a form with simple poles and integer residues on X."""
    terms = []
    for P in poles_on_X(curve, w):
        s = form_expansion(curve, w.coeff, P, 0)
        if s.val < -1:
            raise HigherOrderPoleError(P, -s.val)
        r = s.coeff(-1)
        if r.denominator != 1:
            raise NonIntegerResidueError(P, r)
        terms.append((P, int(r)))
    return Divisor(terms)


def residues_at_punctures(curve: Curve, w: Differential, *, infinity_sign: int = 1) -> dict:
    out = {}
    for P in curve.puncture_points:
        r = residue(curve, w, P)
        out[P] = r * infinity_sign if P.is_infinity else r
    return out


def total_residue_completion(curve: Curve, w: Differential, *, infinity_sign: int = 1) -> Fraction:
    """Sum of residues over every point of the completion (0 for every form).

    ``infinity_sign`` flips the sign convention of the chart at infinity; it
    exists so the verification suite can check that a wrong convention is
    detected.
    """
    if infinity_sign not in (1, -1):
        raise InputError("infinity_sign must be +1 or -1")
    total = sum((residue(curve, w, P) for P in poles_on_X(curve, w)), Fraction(0))
    return total + sum(residues_at_punctures(curve, w, infinity_sign=infinity_sign).values(), Fraction(0))


def partial_fraction_residue(curve: Curve, w: Differential, a: Fraction) -> Fraction:
    """Residue of ``g dt`` at ``t = a`` on a line via the partial fraction of ``g``."""
    if curve.is_elliptic:
        raise CurveMismatchError("partial fractions are used on lines only")
    g = w.coeff
    k = g.d.ord_at(a)
    if k == 0:
        return Fraction(0)
    lin = Poly((-Fraction(a), 1))
    rest = g.d // lin**k
    # residue = (k-1)-th Taylor coefficient of p/rest at a
    num, den = g.p, rest
    for _ in range(k - 1):
        num, den = num.deriv() * den - num * den.deriv(), den * den
    fact = 1
    for i in range(1, k):
        fact *= i
    return Fraction(num(a)) / Fraction(den(a)) / fact


def is_puncture(curve: Curve, P) -> bool:
    return isinstance(P, Puncture) and curve.is_puncture(P)
