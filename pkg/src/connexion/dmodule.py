"""Differential operators ``sum g_i ∂^i`` on the function field and the map phi_w.

``∂`` is the distinguished derivation.  Because ``∂`` freely generates the
derivations of O(X), an operator maps O(X) into an invertible module I exactly
when all of its left coefficients lie in I; :func:`preserves` relies on this.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .curve import Curve, Function
from .differentials import Differential, pairing
from .divisors import Divisor
from .errors import CurveMismatchError, InputError
from .ideals import FractionalIdeal, ideal_of_divisor, membership


class DiffOperator:
    __slots__ = ("curve", "coeffs")

    def __init__(self, curve: Curve, coeffs):
        cs = list(coeffs)
        for g in cs:
            if g.curve != curve:
                raise CurveMismatchError(f"coefficient {g} does not live on {curve}")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.curve = curve
        self.coeffs = tuple(cs)

    @classmethod
    def multiplication(cls, g: Function) -> "DiffOperator":
        return cls(g.curve, [g])

    @classmethod
    def partial(cls, curve: Curve, power: int = 1) -> "DiffOperator":
        return cls(curve, [curve.zero] * power + [curve.one])

    @property
    def order(self) -> int:
        """Order; the zero operator has order -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Function:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.curve.zero

    def _check(self, other: "DiffOperator") -> None:
        if other.curve != self.curve:
            raise CurveMismatchError("operators on different curves")

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOperator(self.curve, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(self.curve, [-g for g in self.coeffs])

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, k) -> "DiffOperator":
        """Left multiplication by a scalar or function."""
        return DiffOperator(self.curve, [k * g for g in self.coeffs])

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        """Composition: ``(g ∂^i)(h ∂^j) = g sum_k C(i,k) ∂^k(h) ∂^(i-k+j)``."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return DiffOperator(self.curve, [])
        out = [self.curve.zero] * (self.order + other.order + 1)
        for j, h in enumerate(other.coeffs):
            if h.is_zero():
                continue
            derivs = [h]
            for _ in range(self.order):
                derivs.append(derivs[-1].derivative())
            for i, g in enumerate(self.coeffs):
                if g.is_zero():
                    continue
                for k in range(i + 1):
                    if not derivs[k].is_zero():
                        out[i - k + j] = out[i - k + j] + g * derivs[k] * comb(i, k)
        return DiffOperator(self.curve, out)

    def power(self, n: int) -> "DiffOperator":
        out = DiffOperator.multiplication(self.curve.one)
        for _ in range(n):
            out = out @ self
        return out

    def apply(self, g: Function) -> Function:
        """``θ.g``: the operator acting on a function."""
        acc, dg = self.curve.zero, g
        for i, c in enumerate(self.coeffs):
            if i:
                dg = dg.derivative()
            acc = acc + c * dg
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.curve == other.curve and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        from .textio import format_operator

        return format_operator(self)

    def __repr__(self) -> str:
        return f"DiffOperator({self})"


def op_add(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return a + b


def op_compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return a @ b


def phi(curve: Curve, w: Differential, theta: DiffOperator) -> DiffOperator:
    """Image of ``theta`` under the K-algebra map with ``∂ -> ∂ + <w, ∂>``."""
    if theta.curve != curve or w.curve != curve:
        raise CurveMismatchError("phi across curves")
    shifted = DiffOperator(curve, [pairing(curve, w), curve.one])
    out = DiffOperator(curve, [])
    power = DiffOperator.multiplication(curve.one)
    for i, g in enumerate(theta.coeffs):
        if i:
            power = power @ shifted
        if not g.is_zero():
            out = out + power.scale(g)
    return out


def preserves(curve: Curve, theta: DiffOperator, I: FractionalIdeal) -> bool:
    """Whether ``theta(I) ⊆ I``.

    For a generator g of I, ``theta(f g) = (theta ∘ g)(f)`` for f in O(X), and
    ``theta ∘ g`` maps O(X) into I iff each of its left coefficients lies in I.
    """
    if theta.curve != curve or I.curve != curve:
        raise CurveMismatchError("preserves across curves")
    for g in I.generators:
        comp = theta @ DiffOperator.multiplication(g)
        if not all(membership(curve, c, I) for c in comp.coeffs):
            return False
    return True


@dataclass(frozen=True)
class OperatorCheck:
    """Result of :func:`verify_connection_operator`; truthy when all checks pass."""

    ok: bool
    order: int
    checked: int
    failures: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.ok


def verify_connection_operator(curve: Curve, w: Differential, D: Divisor, n: int = 2) -> OperatorCheck:
    """Check that phi_w carries D(X) into D(I_D) and phi_-w carries D(I_D) into D(X).

    Both directions are checked on generators up to order ``n``: ring
    generators and ``∂^i`` forwards, ``g ∂^i h`` with ``g`` in I_D and ``h`` in
    I_-D backwards.
    """
    if n < 1:
        raise InputError("order bound must be at least 1")
    I = ideal_of_divisor(curve, D)
    J = ideal_of_divisor(curve, -D)
    O = ideal_of_divisor(curve, Divisor())
    failures = []
    checked = 0
    forward = [(str(g), DiffOperator.multiplication(g)) for g in curve.ring_generators()]
    forward += [(f"d^{i}", DiffOperator.partial(curve, i)) for i in range(1, n + 1)]
    for name, theta in forward:
        checked += 1
        if not preserves(curve, phi(curve, w, theta), I):
            failures.append(f"phi({name}) does not preserve I_D")
    minus = -w
    for g in I.generators:
        for h in J.generators:
            for i in range(n + 1):
                theta = DiffOperator(curve, [curve.zero] * i + [g]) @ DiffOperator.multiplication(h)
                checked += 1
                if not preserves(curve, phi(curve, minus, theta), O):
                    failures.append(f"phi^-1(({g})*d^{i}*({h})) does not preserve O(X)")
    return OperatorCheck(not failures, n, checked, tuple(failures))
