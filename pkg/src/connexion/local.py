"""Local parameters, Laurent expansions and valuations.

Local parameters are fixed per point class so expansions are reproducible:

========================  ==========================  =======================
point                     parameter ``z``             coordinates
========================  ==========================  =======================
line, finite ``a``        ``t - a``                   ``t = a + z``
line, infinity            ``1/t``                     ``t = 1/z``
elliptic, ``y0 != 0``     ``x - x0``                  ``y = y0 sqrt(f/f(x0))``
elliptic, ``y0 == 0``     ``y``                       ``x = x0 + w(z)``
elliptic, infinity        ``z`` with ``x = z^-2``     ``y = z^-3 sqrt(...)``
========================  ==========================  =======================
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .curve import Curve, Function, Point, Puncture
from .errors import CurveMismatchError, InputError
from .series import Laurent, sqrt_one_plus

_MAX_WORKING = 4096


@dataclass(frozen=True)
class LaurentSeries:
    """A truncated expansion of a function or form at a point."""

    point: object
    parameter: str
    val: int
    coeffs: tuple[Fraction, ...]
    order: int

    def coeff(self, k: int) -> Fraction:
        if k >= self.val + self.order and self.coeffs:
            raise ValueError(f"z^{k} is beyond the truncation order")
        if k < self.val or k - self.val >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[k - self.val]

    @property
    def precision(self) -> int:
        """Absolute precision: the series is exact modulo z^precision."""
        return self.val + self.order

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*z^{self.val + i}")
        terms.append(f"O(z^{self.precision})")
        return " + ".join(terms)


def parameter_name(curve: Curve, P) -> str:
    if isinstance(P, Puncture) and P.is_infinity:
        return "1/t" if not curve.is_elliptic else "x/y"
    if not curve.is_elliptic:
        return f"t - {P.at if isinstance(P, Puncture) else P.x}"
    if P.y == 0:
        return "y"
    return f"x - {P.x}"


def _check_place(curve: Curve, P, g: Function | None = None) -> None:
    if g is not None and g.curve != curve:
        raise CurveMismatchError(f"{g} does not live on {curve}")
    if isinstance(P, Puncture):
        if not curve.is_puncture(P):
            raise InputError(f"{P} is not a puncture of {curve}")
    elif not curve.contains(P):
        raise InputError(f"{P} is not a point of {curve}")


@lru_cache(maxsize=512)
def chart(curve: Curve, P, W: int) -> tuple[Laurent, Laurent | None, Laurent]:
    """``(x(z), y(z), dx/dz)`` at ``P`` to working precision ``W``."""
    if not curve.is_elliptic:
        if isinstance(P, Puncture) and P.is_infinity:
            t = Laurent(-1, [1], W)
            return t, None, Laurent(-2, [-1], W)
        a = P.at if isinstance(P, Puncture) else P.x
        return Laurent(0, [a, 1], W), None, Laurent(0, [1], W)

    f = curve.f
    if isinstance(P, Puncture):
        # x = z^-2, y = z^-3 sqrt(1 + a z^4 + b z^6)
        u = Laurent(4, [curve.a, 0, curve.b], W)
        s = sqrt_one_plus(u)
        x = Laurent(-2, [1], W)
        y = Laurent(-3, s.coeffs, W - 3) if not s.is_zero() else s
        return x, y, x.deriv()
    x0, y0 = P.x, P.y
    if y0 != 0:
        fx0 = f(x0)
        fp = f.deriv()
        # f(x0 + z) / f(x0) - 1
        u = Laurent(1, [fp(x0) / fx0, (3 * x0) / fx0, 1 / fx0], W)
        s = sqrt_one_plus(u)
        return Laurent(0, [x0, 1], W), s * y0, Laurent(0, [1], W)
    # ramified point: z = y, f(x0 + w) = c1 w + c2 w^2 + w^3 = z^2
    c1 = f.deriv()(x0)
    c2 = 3 * x0
    z2 = Laurent(2, [1], W)
    w = Laurent(W, [], W)
    for _ in range(W // 2 + 2):
        w = (z2 - c2 * (w * w) - w * w * w) * (1 / c1)
    x = w + x0
    return x, Laurent(1, [1], W), w.deriv()


def _eval(g: Function, xs: Laurent, ys: Laurent | None) -> Laurent:
    W = xs.prec

    def lift(v):
        return v if isinstance(v, Laurent) else Laurent(0, [v], W + 64)

    num = lift(g.p(xs))
    if g.q:
        num = num + lift(g.q(xs)) * ys
    den = lift(g.d(xs))
    if den.is_zero():
        return None
    if num.is_zero():
        return Laurent(num.prec - den.val, [], num.prec - den.val)
    return num / den


def _expand_raw(g: Function, P, *, abs_prec: int | None = None, rel: int | None = None) -> Laurent:
    if g.is_zero():
        return Laurent(abs_prec or 0, [], abs_prec or 0)
    W = 8 + (rel or 0) + max(abs_prec or 0, 0)
    while W <= _MAX_WORKING:
        xs, ys, _ = chart(g.curve, P, W)
        s = _eval(g, xs, ys)
        if s is not None and (abs_prec is None or s.prec >= abs_prec):
            if rel is None or (not s.is_zero() and s.relprec >= rel):
                return s
        W *= 2
    raise ArithmeticError(f"expansion of {g} at {P} did not stabilise")


def local_expansion(curve: Curve, g: Function, P, N: int) -> LaurentSeries:
    """Laurent expansion of ``g`` at ``P`` with ``N`` terms from the leading one."""
    if N < 1:
        raise InputError("truncation order must be at least 1")
    _check_place(curve, P, g)
    name = parameter_name(curve, P)
    if g.is_zero():
        return LaurentSeries(P, name, 0, (), N)
    s = _expand_raw(g, P, rel=N)
    return LaurentSeries(P, name, s.val, s.coeffs[:N], N)


def valuation(curve: Curve, g: Function, P) -> int | float:
    """Order of vanishing of ``g`` at ``P`` (``math.inf`` for the zero function)."""
    _check_place(curve, P, g)
    if g.is_zero():
        return math.inf
    return _expand_raw(g, P, rel=1).val


def form_expansion(curve: Curve, coeff: Function, P, abs_prec: int) -> Laurent:
    """Expansion of ``coeff * dx`` (or ``coeff * dt``) as ``h(z) dz`` to O(z^abs_prec)."""
    if coeff.curve != curve:
        raise CurveMismatchError(f"{coeff} does not live on {curve}")
    if coeff.is_zero():
        return Laurent(abs_prec, [], abs_prec)
    W = 8 + max(abs_prec, 0)
    while W <= _MAX_WORKING:
        xs, ys, dxs = chart(curve, P, W)
        s = _eval(coeff, xs, ys)
        if s is not None:
            out = s * dxs
            if out.prec >= abs_prec:
                return out
        W *= 2
    raise ArithmeticError(f"expansion of {coeff} d{curve.var} at {P} did not stabilise")
