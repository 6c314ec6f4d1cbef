"""Dense univariate polynomials over the rationals.

Coefficients are stored low degree first as a tuple of ``Fraction`` with no
trailing zeros, so the zero polynomial is the empty tuple.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import sympy


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        self.c = _trim([Fraction(v) for v in coeffs])

    @classmethod
    def _raw(cls, c: tuple) -> "Poly":
        p = cls.__new__(cls)
        p.c = c
        return p

    @classmethod
    def const(cls, v) -> "Poly":
        return cls((v,))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        out = ONE
        for r in roots:
            out = out * cls((-Fraction(r), 1))
        return out

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_const(self) -> bool:
        return len(self.c) <= 1

    def coeff(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly.const(other).c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"Poly({[str(v) for v in self.c]})"

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-v for v in self.c))

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return Poly._raw(tuple(v * other for v in self.c))
        o = self._coerce(other)
        if not self.c or not o.c:
            return ZERO
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, u in enumerate(self.c):
            if u:
                for j, v in enumerate(o.c):
                    out[i + j] += u * v
        return Poly._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(o.c)
        if dq < 0:
            return ZERO, self
        quo = [Fraction(0)] * (dq + 1)
        inv = 1 / o.c[-1]
        for k in range(dq, -1, -1):
            coef = rem[k + len(o.c) - 1] * inv
            quo[k] = coef
            if coef:
                for j, v in enumerate(o.c):
                    rem[k + j] -= coef * v
        return Poly._raw(_trim(quo)), Poly._raw(_trim(rem[: len(o.c) - 1]))

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def scale(self, s) -> "Poly":
        return self * Fraction(s)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self * (1 / self.c[-1])

    def deriv(self) -> "Poly":
        return Poly._raw(_trim([k * v for k, v in enumerate(self.c)][1:]))

    def __call__(self, v):
        """Horner evaluation; ``v`` may be any ring element closed under + and *.

        A constant polynomial returns a plain ``Fraction`` whatever ``v`` is.
        """
        if not self.c:
            return Fraction(0)
        acc = self.c[-1]
        for coef in reversed(self.c[:-1]):
            acc = acc * v + coef
        return acc

    def compose(self, other: "Poly") -> "Poly":
        acc = ZERO
        for coef in reversed(self.c):
            acc = acc * other + coef
        return acc

    def ord_at(self, r) -> int:
        """Multiplicity of ``r`` as a root."""
        if not self.c:
            raise ValueError("order of the zero polynomial")
        lin = Poly((-Fraction(r), 1))
        k, p = 0, self
        while True:
            q, rem = divmod(p, lin)
            if rem:
                return k
            k, p = k + 1, q

    def float_coeffs(self) -> list[float]:
        """Coefficients high degree first, for ``numpy.polyval``/``numpy.roots``."""
        return [float(v) for v in reversed(self.c)]


ZERO = Poly._raw(())
ONE = Poly._raw((Fraction(1),))
X = Poly._raw((Fraction(0), Fraction(1)))


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    while b.c:
        a, b = b, a % b
    return a.monic()


def gcd_many(polys: Sequence[Poly]) -> Poly:
    g = ZERO
    for p in polys:
        g = gcd(g, p)
        if g.is_one():
            break
    return g


_SYM = sympy.Symbol("_z")


@lru_cache(maxsize=4096)
def _factor_cached(c: tuple) -> tuple:
    sp = sympy.Poly([sympy.Rational(v.numerator, v.denominator) for v in reversed(c)], _SYM, domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for fac, mult in facs:
        coeffs = [Fraction(int(r.p), int(r.q)) for r in reversed(fac.all_coeffs())]
        out.append((Poly(coeffs).monic(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].c))
    return tuple(out)


def factor(p: Poly) -> list[tuple[Poly, int]]:
    """Irreducible monic factors over Q with multiplicities (constant dropped)."""
    if p.degree < 1:
        return []
    return list(_factor_cached(p.c))


def rational_roots(p: Poly) -> tuple[list[tuple[Fraction, int]], list[tuple[Poly, int]]]:
    """Split the factorisation into rational roots and the irreducible rest."""
    roots, rest = [], []
    for fac, mult in factor(p):
        if fac.degree == 1:
            roots.append((-fac.c[0], mult))
        else:
            rest.append((fac, mult))
    return roots, rest


def rational_sqrt(v: Fraction) -> Fraction | None:
    """Exact square root in Q, or None."""
    from math import isqrt

    v = Fraction(v)
    if v < 0:
        return None
    n, d = isqrt(v.numerator), isqrt(v.denominator)
    if n * n == v.numerator and d * d == v.denominator:
        return Fraction(n, d)
    return None


def format_poly(p: Poly, var: str) -> str:
    """Render as a parseable expression, highest degree first."""
    if not p.c:
        return "0"
    parts = []
    for k in range(len(p.c) - 1, -1, -1):
        v = p.c[k]
        if v == 0:
            continue
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
