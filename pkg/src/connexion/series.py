"""Truncated Laurent series with exact rational coefficients.

A series is ``sum(coeffs[k] * z**(val + k)) + O(z**prec)``.  The leading
coefficient is nonzero unless the series is zero to the known precision, in
which case ``coeffs`` is empty and ``val == prec``.
"""
from __future__ import annotations

from fractions import Fraction


class Laurent:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs, prec: int):
        coeffs = list(coeffs)[: max(prec - val, 0)]
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        coeffs = coeffs[k:]
        val += k
        if not coeffs:
            val = prec
        self.val = val
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        self.prec = prec

    @classmethod
    def const(cls, c, prec: int) -> "Laurent":
        return cls(0, [c], prec)

    @classmethod
    def z(cls, prec: int, power: int = 1) -> "Laurent":
        return cls(power, [1], prec)

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known."""
        return not self.coeffs

    @property
    def relprec(self) -> int:
        return self.prec - self.val

    def coeff(self, k: int) -> Fraction:
        if k >= self.prec:
            raise ValueError(f"coefficient z^{k} beyond precision O(z^{self.prec})")
        i = k - self.val
        if i < 0 or i >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[i]

    def __repr__(self) -> str:
        terms = [f"{c}*z^{self.val + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms + [f"O(z^{self.prec})"])

    @staticmethod
    def _lift(other, prec: int) -> "Laurent":
        if isinstance(other, Laurent):
            return other
        return Laurent(0, [other], prec)

    def __add__(self, other) -> "Laurent":
        o = self._lift(other, self.prec)
        prec = min(self.prec, o.prec)
        lo = min(self.val, o.val)
        out = [Fraction(0)] * max(prec - lo, 0)
        for s in (self, o):
            for i, c in enumerate(s.coeffs):
                k = s.val + i - lo
                if k < len(out):
                    out[k] += c
        return Laurent(lo, out, prec)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other) -> "Laurent":
        return self + (-self._lift(other, self.prec))

    def __rsub__(self, other) -> "Laurent":
        return self._lift(other, self.prec) - self

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                return Laurent(self.prec, [], self.prec)
            return Laurent(self.val, [c * other for c in self.coeffs], self.prec)
        o = other
        val = self.val + o.val
        prec = min(self.val + o.prec, o.val + self.prec)
        n = prec - val
        out = [Fraction(0)] * max(n, 0)
        for i, a in enumerate(self.coeffs):
            if i >= n:
                break
            if a:
                for j in range(min(len(o.coeffs), n - i)):
                    out[i + j] += a * o.coeffs[j]
        return Laurent(val, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Laurent":
        if self.is_zero():
            raise ZeroDivisionError("inverse of a series with no known nonzero term")
        n = self.relprec
        a = self.coeffs
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, n):
            s = sum((a[j] * b[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
            b.append(-s * inv0)
        return Laurent(-self.val, b, -self.val + n)

    def __truediv__(self, other) -> "Laurent":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Laurent":
        return self.inverse() * other

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            return self.inverse() ** (-n)
        out = Laurent(0, [1], self.prec - self.val + 10**9)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def deriv(self) -> "Laurent":
        return Laurent(self.val - 1, [(self.val + i) * c for i, c in enumerate(self.coeffs)], self.prec - 1)


def sqrt_one_plus(u: Laurent) -> Laurent:
    """Power series square root of ``1 + u`` where ``u`` has positive valuation."""
    if not u.is_zero() and u.val < 1:
        raise ValueError("sqrt_one_plus needs u = O(z)")
    n = u.prec
    s = [Fraction(1)] + [Fraction(0)] * max(n - 1, 0)
    for k in range(1, n):
        acc = u.coeff(k)
        for j in range(1, k):
            acc -= s[j] * s[k - j]
        s[k] = acc / 2
    return Laurent(0, s, n)
