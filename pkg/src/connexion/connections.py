"""Line bundles with flat connection as classes ``(D, w)`` with ``res w = D``.

Two pairs are equal when ``D1 - D2 = div f`` and ``w1 - w2 = dlog f + dlog u``
for a unit ``u`` of O(X); both witnesses are returned by :func:`compare`.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curve import Curve, Function, units
from .differentials import Differential, dlog, is_regular_on_X, res_map, residue
from .divisors import Divisor, divisor_of, is_principal
from .errors import CurveMismatchError, DomainError, InputError, NotRegularError


@dataclass(frozen=True)
class ConnectionClass:
    curve: Curve
    divisor: Divisor
    form: Differential

    def to_json(self) -> dict:
        return {"divisor": str(self.divisor), "form": str(self.form)}

    def __str__(self) -> str:
        return f"{self.divisor}; {self.form}"


def make_class(curve: Curve, w: Differential) -> ConnectionClass:
    return ConnectionClass(curve, res_map(curve, w), w)


def class_from_pair(curve: Curve, D: Divisor, w: Differential) -> ConnectionClass:
    """Validated class from an explicit ``(D, w)`` pair."""
    R = res_map(curve, w)
    if R != D:
        raise InputError(f"residue divisor of the form is {R}, not {D}")
    return ConnectionClass(curve, D, w)


def _same(c1: ConnectionClass, c2: ConnectionClass) -> Curve:
    if c1.curve != c2.curve:
        raise CurveMismatchError("classes on different curves")
    return c1.curve


def tensor(c1: ConnectionClass, c2: ConnectionClass) -> ConnectionClass:
    C = _same(c1, c2)
    return ConnectionClass(C, c1.divisor + c2.divisor, c1.form + c2.form)


def dual(c: ConnectionClass) -> ConnectionClass:
    return ConnectionClass(c.curve, -c.divisor, -c.form)


def gauge(c: ConnectionClass, f: Function) -> ConnectionClass:
    """``(D + div f, w + dlog f)``."""
    if f.is_zero():
        raise DomainError("gauge by the zero function")
    C = c.curve
    return ConnectionClass(C, c.divisor + divisor_of(C, f), c.form + dlog(C, f))


def embed_regular(curve: Curve, eta: Differential) -> ConnectionClass:
    if not is_regular_on_X(curve, eta):
        raise NotRegularError(f"{eta} has a pole on X")
    return ConnectionClass(curve, Divisor(), eta)


@dataclass(frozen=True)
class Comparison:
    """Outcome of :func:`compare`; witnesses are set when the classes agree."""

    equal: bool
    witness: Function | None = None
    unit: Function | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.equal

    def describe(self) -> str:
        if not self.equal:
            return f"not equal ({self.reason})"
        notes = []
        if self.witness is not None and self.witness != 1:
            notes.append(f"witness: {self.witness}")
        if self.unit is not None and self.unit != 1:
            notes.append(f"unit witness: {self.unit}")
        return "equal" + (f" ({'; '.join(notes)})" if notes else "")


def compare(c1: ConnectionClass, c2: ConnectionClass) -> Comparison:
    C = _same(c1, c2)
    cert = is_principal(C, c1.divisor - c2.divisor)
    if not cert.is_principal:
        return Comparison(False, reason=f"divisor difference not principal, group-law sum {cert.obstruction}")
    f = cert.witness
    eta = c1.form - c2.form - dlog(C, f)
    if eta.is_zero():
        return Comparison(True, f, C.one)
    gens = units(C).generators
    if not gens:
        return Comparison(False, reason=f"forms differ by {eta}, which is not dlog of a unit")
    # On a line dlog of prod (t - a_i)^k_i has residue k_i at a_i, so the
    # exponents are read off from the puncture residues and then checked.
    u = C.one
    for P, g in zip(C.puncture_points, gens):
        k = residue(C, eta, P)
        if k.denominator != 1:
            return Comparison(False, reason=f"residue {k} at puncture {P} is not an integer")
        u = u * g ** int(k)
    if eta == dlog(C, u):
        return Comparison(True, f, u)
    return Comparison(False, reason=f"forms differ by {eta}, which is not dlog of a unit")


def equals(c1: ConnectionClass, c2: ConnectionClass) -> bool:
    return compare(c1, c2).equal


@dataclass(frozen=True)
class PicClass:
    """The class of a divisor in Pic X; equality via principality of the difference."""

    curve: Curve
    divisor: Divisor

    def __add__(self, other: "PicClass") -> "PicClass":
        if other.curve != self.curve:
            raise CurveMismatchError("classes on different curves")
        return PicClass(self.curve, self.divisor + other.divisor)

    def __neg__(self) -> "PicClass":
        return PicClass(self.curve, -self.divisor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PicClass):
            return NotImplemented
        if other.curve != self.curve:
            return False
        return is_principal(self.curve, self.divisor - other.divisor).is_principal

    def __hash__(self) -> int:
        return hash(self.curve)

    def is_trivial(self) -> bool:
        return is_principal(self.curve, self.divisor).is_principal


def project(c: ConnectionClass) -> PicClass:
    return PicClass(c.curve, c.divisor)


def regular_representative(c: ConnectionClass) -> Differential:
    """For a class over a principal divisor: ``w - dlog f``, a form regular on X."""
    cert = is_principal(c.curve, c.divisor)
    if not cert.is_principal:
        raise DomainError(f"{c.divisor} is not principal")
    return c.form - dlog(c.curve, cert.witness)
