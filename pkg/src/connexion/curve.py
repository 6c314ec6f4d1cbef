"""Curve models, points, and exact arithmetic in the function field.

Two families are supported:

* punctured lines ``A^1 - {a_1, ..., a_m}`` with coordinate ``t``; the point at
  infinity is always an extra puncture;
* affine elliptic curves ``y^2 = x^3 + a x + b`` with the point at infinity
  removed.

Every element of the function field is kept in the canonical form
``(p(x) + q(x) y) / d(x)`` with ``d`` monic and ``gcd(p, q, d) = 1`` (on a line
``q`` is always zero), so equality of functions is equality of fields.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import CurveMismatchError, InputError, SingularCurveError
from .polys import ONE, ZERO, Poly, X, gcd, gcd_many

LINE = "punctured_line"
ELLIPTIC = "elliptic"


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise InputError(f"not a rational number: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {v!r}") from exc
    raise InputError(f"not a rational number: {v!r}")


@dataclass(frozen=True, order=True)
class Point:
    """A Q-rational point of X: ``(a,)`` on a line, ``(x, y)`` on an elliptic curve."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_fraction(c) for c in self.coords))

    @property
    def x(self) -> Fraction:
        return self.coords[0]

    @property
    def y(self) -> Fraction:
        return self.coords[1]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class Puncture:
    """A point of the completion that is not on X. ``at=None`` is infinity."""

    at: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.at is None

    def __str__(self) -> str:
        return "[inf]" if self.at is None else f"[{self.at}]"


INFINITY = Puncture(None)


def point_key(p) -> tuple:
    """Total order used for deterministic output: affine points first."""
    if isinstance(p, Point):
        return (0, p.coords)
    return (1, (p.at is None, p.at if p.at is not None else 0))


@dataclass(frozen=True)
class Curve:
    kind: str
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    punctures: tuple[Fraction, ...] = ()
    _f: Poly = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind == ELLIPTIC:
            f = Poly((self.b, self.a, 0, 1))
            if self.discriminant == 0:
                raise SingularCurveError(f"y^2 = x^3 + {self.a}*x + {self.b} is singular")
        elif self.kind == LINE:
            if len(set(self.punctures)) != len(self.punctures):
                raise InputError(f"duplicated punctures {list(map(str, self.punctures))}")
            f = None
        else:
            raise InputError(f"unknown curve kind {self.kind!r}")
        object.__setattr__(self, "_f", f)

    @classmethod
    def elliptic(cls, a, b) -> "Curve":
        return cls(ELLIPTIC, as_fraction(a), as_fraction(b))

    @classmethod
    def punctured_line(cls, punctures: Iterable = ()) -> "Curve":
        return cls(LINE, punctures=tuple(as_fraction(p) for p in punctures))

    # -- structure -------------------------------------------------------
    @property
    def is_elliptic(self) -> bool:
        return self.kind == ELLIPTIC

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    @property
    def f(self) -> Poly:
        """The cubic ``x^3 + a x + b`` (elliptic only)."""
        if self._f is None:
            raise CurveMismatchError("a punctured line has no cubic")
        return self._f

    @property
    def var(self) -> str:
        return "x" if self.is_elliptic else "t"

    @property
    def puncture_points(self) -> tuple[Puncture, ...]:
        """Completion points missing from X; the first one is distinguished."""
        if self.is_elliptic:
            return (INFINITY,)
        return tuple(Puncture(a) for a in self.punctures) + (INFINITY,)

    @property
    def distinguished_puncture(self) -> Puncture:
        return self.puncture_points[0]

    @property
    def puncture_poly(self) -> Poly:
        """``prod (t - a_i)`` over finite punctures (line only)."""
        return Poly.from_roots(self.punctures)

    def contains(self, P) -> bool:
        if not isinstance(P, Point):
            return False
        if self.is_elliptic:
            return len(P.coords) == 2 and P.y**2 == self.f(P.x)
        return len(P.coords) == 1 and P.x not in self.punctures

    def is_puncture(self, P) -> bool:
        return isinstance(P, Puncture) and P in self.puncture_points

    def check_point(self, P) -> None:
        if not self.contains(P):
            raise InputError(f"{P} is not a point of {self}")

    def conjugate(self, P: Point) -> Point:
        """The hyperelliptic conjugate ``(x, -y)``; identity on a line."""
        if not self.is_elliptic:
            return P
        return Point((P.x, -P.y))

    def points_over(self, x0: Fraction) -> list[Point]:
        """Rational points with first coordinate ``x0`` (may be empty)."""
        from .polys import rational_sqrt

        if not self.is_elliptic:
            return [] if x0 in self.punctures else [Point((x0,))]
        r = rational_sqrt(self.f(x0))
        if r is None:
            return []
        return [Point((x0, r))] if r == 0 else [Point((x0, r)), Point((x0, -r))]

    def spec(self) -> dict:
        if self.is_elliptic:
            return {"kind": ELLIPTIC, "a": str(self.a), "b": str(self.b)}
        return {"kind": LINE, "punctures": [str(p) for p in self.punctures]}

    def __str__(self) -> str:
        if self.is_elliptic:
            from .polys import format_poly

            return f"y^2 = {format_poly(self.f, 'x')}"
        return "A^1 - {" + ", ".join([str(p) for p in self.punctures] + ["inf"]) + "}"

    # -- function field --------------------------------------------------
    def function(self, p=ZERO, q=ZERO, d=ONE) -> "Function":
        return Function(self, _poly(p), _poly(q), _poly(d))

    def const(self, c) -> "Function":
        return Function(self, Poly.const(as_fraction(c)), ZERO, ONE)

    @property
    def zero(self) -> "Function":
        return self.const(0)

    @property
    def one(self) -> "Function":
        return self.const(1)

    @property
    def x(self) -> "Function":
        return Function(self, X, ZERO, ONE)

    @property
    def t(self) -> "Function":
        if self.is_elliptic:
            raise CurveMismatchError("t is the line coordinate")
        return Function(self, X, ZERO, ONE)

    @property
    def y(self) -> "Function":
        if not self.is_elliptic:
            raise CurveMismatchError("y exists only on elliptic curves")
        return Function(self, ZERO, ONE, ONE)

    def ring_generators(self) -> list["Function"]:
        """Algebra generators of O(X) over Q."""
        if self.is_elliptic:
            return [self.x, self.y]
        return [self.t] + [1 / (self.t - a) for a in self.punctures]


def _poly(v) -> Poly:
    if isinstance(v, Poly):
        return v
    if isinstance(v, (int, Fraction)):
        return Poly.const(v)
    return Poly(v)


def make_curve(spec: Mapping) -> Curve:
    """Validated curve from a JSON-style description."""
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise InputError(f"malformed curve spec {spec!r}")
    kind = spec["kind"]
    if kind == ELLIPTIC:
        extra = set(spec) - {"kind", "a", "b"}
        if extra or "a" not in spec or "b" not in spec:
            raise InputError(f"elliptic spec needs exactly a and b, got {sorted(spec)}")
        return Curve.elliptic(spec["a"], spec["b"])
    if kind == LINE:
        extra = set(spec) - {"kind", "punctures"}
        punct = spec.get("punctures", [])
        if extra or not isinstance(punct, (list, tuple)):
            raise InputError(f"malformed punctured-line spec {spec!r}")
        return Curve.punctured_line(punct)
    raise InputError(f"unknown curve kind {kind!r}")


class Function:
    """An element of the function field K of a curve, in canonical form."""

    __slots__ = ("curve", "p", "q", "d", "_hash")

    def __init__(self, curve: Curve, p: Poly, q: Poly = ZERO, d: Poly = ONE):
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        if q and not curve.is_elliptic:
            raise CurveMismatchError("a y-term on a punctured line")
        if not p and not q:
            p, q, d = ZERO, ZERO, ONE
        else:
            g = gcd_many([d, p, q]) if q else gcd(d, p)
            if not g.is_one():
                p, q, d = p // g, q // g, d // g
            lc = d.lead
            if lc != 1:
                inv = 1 / lc
                p, q, d = p * inv, q * inv, d * inv
        self.curve, self.p, self.q, self.d = curve, p, q, d
        self._hash = None

    # -- basic -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.p and not self.q

    def is_constant(self) -> bool:
        return not self.q and self.d.is_one() and self.p.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.p.coeff(0)

    def in_ring(self) -> bool:
        """Membership in the coordinate ring O(X)."""
        if self.d.is_one():
            return True
        if self.curve.is_elliptic:
            return False
        d, u = self.d, self.curve.puncture_poly
        while not d.is_one():
            g = gcd(d, u)
            if g.is_one():
                return False
            d = d // g
        return True

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.p.coeff(0) == other
        if not isinstance(other, Function):
            return NotImplemented
        return self.curve == other.curve and self.p == other.p and self.q == other.q and self.d == other.d

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.q, self.d))
        return self._hash

    def __repr__(self) -> str:
        return f"Function({self})"

    def __str__(self) -> str:
        from .textio import format_function

        return format_function(self)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Function":
        if isinstance(other, Function):
            if other.curve != self.curve:
                raise CurveMismatchError("functions on different curves")
            return other
        if isinstance(other, (int, Fraction)):
            return Function(self.curve, Poly.const(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.d == o.d:
            return Function(self.curve, self.p + o.p, self.q + o.q, self.d)
        return Function(self.curve, self.p * o.d + o.p * self.d, self.q * o.d + o.q * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self) -> "Function":
        return Function(self.curve, -self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Function(self.curve, self.p * other, self.q * other, self.d)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.q or o.q:
            f = self.curve.f
            p = self.p * o.p + self.q * o.q * f
            q = self.p * o.q + self.q * o.p
        else:
            p, q = self.p * o.p, ZERO
        return Function(self.curve, p, q, self.d * o.d)

    __rmul__ = __mul__

    def norm_numerator(self) -> Poly:
        """``p^2 - q^2 f`` (or ``p`` on a line): the x-norm of the numerator."""
        if not self.q:
            return self.p * self.p if self.curve.is_elliptic else self.p
        return self.p * self.p - self.q * self.q * self.curve.f

    def inverse(self) -> "Function":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        if not self.q:
            return Function(self.curve, self.d, ZERO, self.p)
        n = self.p * self.p - self.q * self.q * self.curve.f
        return Function(self.curve, self.p * self.d, -self.q * self.d, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int) -> "Function":
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Function(self.curve, ONE), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "Function":
        """Image under the distinguished derivation (d/dt, or x' = y, y' = f'/2)."""
        p, q, d = self.p, self.q, self.d
        if not self.curve.is_elliptic:
            return Function(self.curve, p.deriv() * d - p * d.deriv(), ZERO, d * d)
        f = self.curve.f
        fp = f.deriv()
        dp = d.deriv()
        newp = (q.deriv() * f + q * fp * Fraction(1, 2)) * d - q * dp * f
        newq = p.deriv() * d - p * dp
        return Function(self.curve, newp, newq, d * d)

    def value_at(self, P: Point) -> Fraction:
        """Exact value at a point where the canonical denominator is nonzero."""
        dv = self.d(P.x)
        if dv == 0:
            raise ZeroDivisionError(f"{self} has vanishing denominator at {P}")
        num = self.p(P.x) + (self.q(P.x) * P.y if self.q else 0)
        return Fraction(num) / dv

    def leading_coefficient(self) -> Fraction:
        """Coefficient of the numerator term of highest pole order at infinity.

        Monomials are weighted ``x^i -> 2i`` and ``x^i y -> 2i + 3`` (``t^i -> i``
        on a line), which totally orders the terms of ``p + q y``.
        """
        if self.is_zero():
            return Fraction(0)
        if not self.q:
            return self.p.lead
        if not self.p or 2 * self.q.degree + 3 > 2 * self.p.degree:
            return self.q.lead
        return self.p.lead

    def normalized(self) -> "Function":
        return self * (1 / self.leading_coefficient())


@dataclass(frozen=True)
class Derivation:
    """The distinguished global derivation, extended to K by the Leibniz rule."""

    curve: Curve

    def __call__(self, g: Function) -> Function:
        return g.derivative()

    @property
    def images(self) -> dict[str, Function]:
        C = self.curve
        if C.is_elliptic:
            return {"x": C.y, "y": C.function(C.f.deriv() * Fraction(1, 2))}
        return {"t": C.one}


def distinguished_derivation(curve: Curve) -> Derivation:
    return Derivation(curve)


@dataclass(frozen=True)
class UnitGroupDesc:
    """Generators of O(X)^x modulo constants."""

    generators: tuple[Function, ...]


def units(curve: Curve) -> UnitGroupDesc:
    if curve.is_elliptic:
        return UnitGroupDesc(())
    return UnitGroupDesc(tuple(curve.t - a for a in curve.punctures))
