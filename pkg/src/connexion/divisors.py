"""Divisors on X, divisors of functions, and principality with witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .curve import INFINITY, Curve, Function, Point, Puncture, point_key
from .errors import CurveMismatchError, DomainError, InputError, NonRationalSupportError, NotPrincipalError
from .local import valuation
from .polys import Poly, rational_roots

PRINCIPAL = "principal"
NOT_PRINCIPAL = "not-principal"
INCONCLUSIVE = "inconclusive"


class Divisor:
    """A finitely supported integer combination of points of X.

    Immutable; zero coefficients are never stored and terms are kept sorted so
    equal divisors compare and print identically.
    """

    __slots__ = ("_terms", "_hash")
    _allow_punctures = False

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for P, n in items:
            if isinstance(P, Puncture) and not self._allow_punctures:
                raise InputError(f"puncture {P} cannot appear in a divisor on X")
            if not isinstance(P, (Point, Puncture)):
                raise InputError(f"not a point: {P!r}")
            if int(n) != n:
                raise InputError(f"non-integer multiplicity {n} at {P}")
            acc[P] = acc.get(P, 0) + int(n)
        self._terms = tuple(sorted(((P, n) for P, n in acc.items() if n), key=lambda pn: point_key(pn[0])))
        self._hash = None

    @classmethod
    def point(cls, P, n: int = 1) -> "Divisor":
        return cls([(P, n)])

    @classmethod
    def from_vector(cls, support: Sequence, v: Sequence[int]) -> "Divisor":
        return cls(zip(support, v))

    def vector(self, support: Sequence) -> list[int]:
        extra = set(self.support) - set(support)
        if extra:
            raise DomainError(f"divisor support {sorted(map(str, extra))} lies outside {list(map(str, support))}")
        return [self[P] for P in support]

    def items(self):
        return iter(self._terms)

    @property
    def support(self) -> tuple:
        return tuple(P for P, _ in self._terms)

    @property
    def degree(self) -> int:
        return sum(n for _, n in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_effective(self) -> bool:
        return all(n > 0 for _, n in self._terms)

    def __getitem__(self, P) -> int:
        for Q, n in self._terms:
            if Q == P:
                return n
        return 0

    def __len__(self) -> int:
        return len(self._terms)

    def _same(self, other):
        if type(other) is not type(self) and not (isinstance(other, Divisor) and isinstance(self, Divisor)):
            return NotImplemented
        return other

    def __add__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        cls = CompletionDivisor if isinstance(other, CompletionDivisor) else type(self)
        return cls(list(self._terms) + list(other._terms))

    def __neg__(self):
        return type(self)([(P, -n) for P, n in self._terms])

    def __sub__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return type(self)([(P, k * n) for P, n in self._terms])

    __rmul__ = __mul__

    def positive_part(self) -> "Divisor":
        return type(self)([(P, n) for P, n in self._terms if n > 0])

    def negative_part(self) -> "Divisor":
        """``D-`` with ``D = D+ - D-``; returned with positive coefficients."""
        return type(self)([(P, -n) for P, n in self._terms if n < 0])

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __str__(self) -> str:
        from .textio import format_divisor

        return format_divisor(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class CompletionDivisor(Divisor):
    """A divisor on the completion of X; punctures may carry multiplicity."""

    __slots__ = ()
    _allow_punctures = True

    def restrict(self) -> Divisor:
        return Divisor([(P, n) for P, n in self.items() if isinstance(P, Point)])


def check_divisor(curve: Curve, D: Divisor) -> None:
    for P in D.support:
        if isinstance(P, Puncture):
            if not curve.is_puncture(P):
                raise InputError(f"{P} is not a puncture of {curve}")
        elif not curve.contains(P):
            raise InputError(f"{P} is not a point of {curve}")


# -- divisor of a function -------------------------------------------------

def _x_candidates(curve: Curve, polys: Iterable[Poly]) -> list[Fraction]:
    xs: set[Fraction] = set()
    for p in polys:
        roots, rest = rational_roots(p)
        if rest:
            raise NonRationalSupportError(rest[0][0])
        xs.update(r for r, _ in roots)
    return sorted(xs)


def divisor_of(curve: Curve, g: Function) -> Divisor:
    """Divisor of zeros and poles of ``g`` on X (punctures excluded)."""
    if g.curve != curve:
        raise CurveMismatchError(f"{g} does not live on {curve}")
    if g.is_zero():
        raise DomainError("the zero function has no divisor")
    terms = []
    if not curve.is_elliptic:
        for x0 in _x_candidates(curve, [g.p, g.d]):
            if x0 in curve.punctures:
                continue
            terms.append((Point((x0,)), g.p.ord_at(x0) - g.d.ord_at(x0)))
        return Divisor(terms)
    for x0 in _x_candidates(curve, [g.norm_numerator(), g.d]):
        pts = curve.points_over(x0)
        if not pts:
            raise NonRationalSupportError(Poly((-x0, 1)), "divisor")
        for P in pts:
            terms.append((P, valuation(curve, g, P)))
    return Divisor(terms)


def completion_divisor_of(curve: Curve, g: Function) -> CompletionDivisor:
    """Divisor of ``g`` on the completion, punctures included."""
    D = divisor_of(curve, g)
    extra = [(P, valuation(curve, g, P)) for P in curve.puncture_points]
    return CompletionDivisor(list(D.items()) + extra)


# -- elliptic group law ----------------------------------------------------

O = INFINITY


def _require_elliptic(curve: Curve) -> None:
    if not curve.is_elliptic:
        raise CurveMismatchError("the group law needs an elliptic curve")


def ell_neg(curve: Curve, P):
    _require_elliptic(curve)
    return P if P == O else Point((P.x, -P.y))


def ell_add(curve: Curve, P, Q):
    """Chord-tangent addition with identity the point at infinity."""
    _require_elliptic(curve)
    for R in (P, Q):
        if R != O and not curve.contains(R):
            raise InputError(f"{R} is not on {curve}")
    if P == O:
        return Q
    if Q == O:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return O
        lam = (3 * P.x**2 + curve.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point((x3, y3))


def ell_mul(curve: Curve, n: int, P):
    if n < 0:
        return ell_mul(curve, -n, ell_neg(curve, P))
    out, base = O, P
    while n:
        if n & 1:
            out = ell_add(curve, out, base)
        base = ell_add(curve, base, base)
        n >>= 1
    return out


def group_sum(curve: Curve, D: Divisor):
    """``sum [n_P] P`` in E(Q)."""
    acc = O
    for P, n in D.items():
        acc = ell_add(curve, acc, ell_mul(curve, n, P))
    return acc


# -- principality ----------------------------------------------------------

@dataclass(frozen=True)
class PrincipalityCertificate:
    verdict: str
    witness: Function | None = None
    obstruction: object = None

    @property
    def is_principal(self) -> bool:
        return self.verdict == PRINCIPAL


def _chord(curve: Curve, P, Q) -> Function:
    """Function with completion divisor (P) + (Q) - (P+Q) - (O)."""
    if P == O or Q == O:
        return curve.one
    x = curve.x
    if P.x == Q.x and (P.y != Q.y or P.y == 0):
        return x - P.x
    R = ell_add(curve, P, Q)
    if P == Q:
        lam = (3 * P.x**2 + curve.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    line = curve.y - P.y - lam * (x - P.x)
    return line / (x - R.x)


def _vertical(curve: Curve, R) -> Function:
    return curve.one if R == O else curve.x - R.x


def miller(curve: Curve, n: int, P) -> tuple[Function, object]:
    """``(f, nP)`` with completion divisor of f equal to n(P) - (nP) - (n-1)(O)."""
    if n < 0:
        f, R = miller(curve, -n, P)
        return 1 / (f * _vertical(curve, R)), ell_neg(curve, R)
    if n == 0:
        return curve.one, O
    f, R = curve.one, P
    for bit in bin(n)[3:]:
        f = f * f * _chord(curve, R, R)
        R = ell_add(curve, R, R)
        if bit == "1":
            f = f * _chord(curve, R, P)
            R = ell_add(curve, R, P)
    return f, R


def function_with_divisor(curve: Curve, D: Divisor, *, check: bool = True) -> Function:
    """A normalised function whose divisor on X is ``D``."""
    check_divisor(curve, D)
    if not curve.is_elliptic:
        g = curve.one
        for P, n in D.items():
            g = g * (curve.t - P.x) ** n
        return g
    F, R = curve.one, O
    for P, n in D.items():
        f, Q = miller(curve, n, P)
        F = F * f * _chord(curve, R, Q)
        R = ell_add(curve, R, Q)
    if R != O:
        raise NotPrincipalError(D, R)
    F = F.normalized()
    if check and divisor_of(curve, F) != D:
        raise AssertionError(f"witness {F} does not realise {D}")
    return F


def is_principal(curve: Curve, D: Divisor) -> PrincipalityCertificate:
    check_divisor(curve, D)
    if not curve.is_elliptic:
        return PrincipalityCertificate(PRINCIPAL, function_with_divisor(curve, D))
    s = group_sum(curve, D)
    if s != O:
        return PrincipalityCertificate(NOT_PRINCIPAL, obstruction=s)
    return PrincipalityCertificate(PRINCIPAL, function_with_divisor(curve, D))
