"""Fractional ideals ``I_D = {f : v_P(f) >= -D(P) for all P on X}`` and Bezout systems.

On a line every ``I_D`` is principal.  On an elliptic curve ``I_D`` is written
as ``h^-1 * J`` with ``h`` a polynomial in ``x`` and ``J`` an integral ideal
given by two generators: a polynomial in ``x`` and one element with exactly
prescribed valuations, found by a linear solve over the monomials of O(X).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .curve import Curve, Function, Point
from .differentials import Differential, d
from .divisors import Divisor, check_divisor
from .errors import CurveMismatchError, NotUnitIdealError, SolverError
from .linalg import nullspace, solve
from .local import _expand_raw, valuation
from .polys import ONE, ZERO, Poly

_MAX_WEIGHT = 64


@dataclass(frozen=True)
class FractionalIdeal:
    curve: Curve
    divisor: Divisor
    generators: tuple[Function, ...]

    def is_unit_ideal(self) -> bool:
        return self.divisor.is_zero()

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class BezoutSystem:
    alphas: tuple[Function, ...]
    betas: tuple[Function, ...]

    def total(self) -> Function:
        return sum((a * b for a, b in zip(self.alphas, self.betas)), self.alphas[0] * 0)

    def __str__(self) -> str:
        return " + ".join(f"({a})*({b})" for a, b in zip(self.alphas, self.betas))


def ramification(curve: Curve, P: Point) -> int:
    """Valuation of ``x - x0`` at P."""
    return 2 if curve.is_elliptic and P.y == 0 else 1


def monomials(curve: Curve, max_weight: int) -> list[Function]:
    """Basis ``x^i`` (weight 2i) and ``x^i y`` (weight 2i + 3) of O(X), by weight."""
    out = []
    for w in range(max_weight + 1):
        if w % 2 == 0:
            out.append(curve.function(Poly.monomial(w // 2)))
        elif w >= 3:
            out.append(curve.function(ZERO, Poly.monomial((w - 3) // 2)))
    return out


def _fibre_points(curve: Curve, D: Divisor) -> list[Point]:
    """All points of X sharing an x-coordinate with a point of supp D."""
    xs = sorted({P.x for P in D.support})
    return [Q for x0 in xs for Q in curve.points_over(x0)]


def membership(curve: Curve, g: Function, I: FractionalIdeal) -> bool:
    if g.curve != curve or I.curve != curve:
        raise CurveMismatchError("membership across curves")
    if g.is_zero():
        return True
    D = I.divisor
    fibre = _fibre_points(curve, D)
    # Clear any poles above the fibres, then g must be regular elsewhere.
    u = curve.one
    for x0 in sorted({P.x for P in fibre}):
        u = u * (curve.x - x0) ** (g.d.degree + 1 + max(abs(n) for _, n in D.items()))
    if not (g * u).in_ring():
        return False
    return all(valuation(curve, g, Q) >= -D[Q] for Q in fibre)


def _valuation_rows(curve: Curve, basis: list[Function], Q: Point, upto: int) -> list[list[Fraction]]:
    """Rows ``[coeff of z^k in b]`` for ``k < upto`` over the basis elements."""
    rows = [[Fraction(0)] * len(basis) for _ in range(max(upto, 0))]
    for j, b in enumerate(basis):
        s = _expand_raw(b, Q, abs_prec=upto)
        for k in range(upto):
            rows[k][j] = s.coeff(k)
    return rows


def _exact_element(curve: Curve, E: Divisor, targets: list[Point], fibre: list[Point]) -> Function:
    """An element b of O with v_Q(b) >= E(Q) on the fibre and == E(Q) on targets."""
    deg = sum(n for _, n in E.items())
    for W in count(deg + 2):
        if W > _MAX_WEIGHT:
            raise SolverError(f"no generator found for the ideal of {E} up to weight {_MAX_WEIGHT}")
        basis = monomials(curve, W)
        rows = []
        for Q in fibre:
            rows.extend(_valuation_rows(curve, basis, Q, E[Q]))
        kernel = nullspace(rows, len(basis)) if rows else [
            [Fraction(int(i == j)) for i in range(len(basis))] for j in range(len(basis))
        ]
        if not kernel:
            continue
        # basis vectors first, then deterministic combinations along a moment curve
        candidates = list(kernel) + [
            [sum(Fraction(k) ** i * v[c] for i, v in enumerate(kernel)) for c in range(len(basis))]
            for k in range(2, 2 + 2 * len(kernel))
        ]
        for vec in candidates:
            b = sum((c * m for c, m in zip(vec, basis) if c), curve.zero)
            if b.is_zero():
                continue
            if all(valuation(curve, b, Q) == E[Q] for Q in targets):
                return b


def _line_ideal(curve: Curve, D: Divisor) -> FractionalIdeal:
    g = curve.one
    for P, n in D.items():
        g = g * (curve.t - P.x) ** (-n)
    return FractionalIdeal(curve, D, (g,))


def ideal_of_divisor(curve: Curve, D: Divisor) -> FractionalIdeal:
    check_divisor(curve, D)
    if D.is_zero():
        return FractionalIdeal(curve, D, (curve.one,))
    if not curve.is_elliptic:
        return _line_ideal(curve, D)
    x = curve.x
    # h clears the positive part: v_P(h) >= D(P) wherever D(P) > 0.
    hx: dict[Fraction, int] = {}
    for P, n in D.items():
        if n > 0:
            hx[P.x] = max(hx.get(P.x, 0), -(-n // ramification(curve, P)))
    h = curve.one
    for x0, m in sorted(hx.items()):
        h = h * (x - x0) ** m
    fibre = _fibre_points(curve, D)
    E = Divisor([(Q, valuation(curve, h, Q) - D[Q]) for Q in fibre])
    # first generator: a polynomial in x with v >= E on the fibre
    ex: dict[Fraction, int] = {}
    for Q, e in E.items():
        ex[Q.x] = max(ex.get(Q.x, 0), -(-e // ramification(curve, Q)))
    hE = curve.one
    for x0, m in sorted(ex.items()):
        hE = hE * (x - x0) ** m
    targets = [Q for Q in fibre if valuation(curve, hE, Q) > E[Q]]
    if not targets:
        gens = (hE / h,)
    else:
        b = _exact_element(curve, E, targets, fibre)
        gens = (hE / h, b / h)
    return FractionalIdeal(curve, D, gens)


def ideal_mul(curve: Curve, I: FractionalIdeal, J: FractionalIdeal) -> FractionalIdeal:
    if I.curve != curve or J.curve != curve:
        raise CurveMismatchError("ideals on different curves")
    return ideal_of_divisor(curve, I.divisor + J.divisor)


def ideal_inverse(curve: Curve, I: FractionalIdeal) -> FractionalIdeal:
    if I.curve != curve:
        raise CurveMismatchError("ideal on a different curve")
    return ideal_of_divisor(curve, -I.divisor)


def generators_generate(curve: Curve, I: FractionalIdeal) -> bool:
    """Check that the generators lie in I and that I * I^-1 contains 1."""
    if not all(membership(curve, g, I) for g in I.generators):
        return False
    J = ideal_inverse(curve, I)
    B = bezout(curve, I, J)
    return B.total() == 1


# -- Bezout systems ----------------------------------------------------------

def _ring_coords(curve: Curve, g: Function, n: int) -> list[Fraction]:
    """Coefficients of ``g = p + q y`` in O(X) as ``[p_0..p_{n-1}, q_0..q_{n-1}]``."""
    if not g.d.is_one():
        raise ValueError(f"{g} is not in the coordinate ring")
    return [g.p.coeff(k) for k in range(n)] + [g.q.coeff(k) for k in range(n)]


def bezout(curve: Curve, I: FractionalIdeal, J: FractionalIdeal) -> BezoutSystem:
    """``alpha_i in I``, ``beta_i in J`` with ``sum alpha_i beta_i = 1``.

    The ``beta_i`` are the generators of J in order; ``alpha_j = sum_i c_ij g_i``
    with ring coefficients ``c_ij`` from the basic solution of the linear
    system, columns ordered by generator pair and then monomial weight.
    """
    if I.curve != curve or J.curve != curve:
        raise CurveMismatchError("ideals on different curves")
    if not (I.divisor + J.divisor).is_zero():
        raise NotUnitIdealError(f"I_D * I_E is the unit ideal only when D + E = 0 (got {I.divisor + J.divisor})")
    if len(I.generators) == 1 and len(J.generators) == 1:
        g, h = I.generators[0], J.generators[0]
        # g h is a unit of O(X), so its inverse is a ring element
        return BezoutSystem((g / (g * h),), (h,))
    pairs = [(i, j) for i in range(len(I.generators)) for j in range(len(J.generators))]
    prods = [I.generators[i] * J.generators[j] for i, j in pairs]
    L = ONE
    for p in prods:
        L = L * p.d // _gcd(L, p.d)
    Lf = curve.function(L)
    scaled = [p * Lf for p in prods]
    for W in range(0, _MAX_WEIGHT + 1):
        mons = monomials(curve, W)
        cols = [s * m for s in scaled for m in mons]
        n = max([c.p.degree for c in cols] + [c.q.degree for c in cols] + [L.degree]) + 1
        A = [_ring_coords(curve, c, n) for c in cols]
        rhs = _ring_coords(curve, Lf, n)
        sol = solve([list(r) for r in zip(*A)], rhs)
        if sol is None:
            continue
        alphas = [curve.zero for _ in J.generators]
        for k, (i, j) in enumerate(pairs):
            c = sum((sol[k * len(mons) + m] * mons[m] for m in range(len(mons))), curve.zero)
            alphas[j] = alphas[j] + c * I.generators[i]
        keep = [j for j in range(len(J.generators)) if not alphas[j].is_zero()]
        B = BezoutSystem(tuple(alphas[j] for j in keep), tuple(J.generators[j] for j in keep))
        if B.total() != 1:
            raise AssertionError("Bezout solve produced a wrong combination")
        return B
    raise SolverError(f"no Bezout combination up to weight {_MAX_WEIGHT}")


def _gcd(a: Poly, b: Poly) -> Poly:
    from .polys import gcd

    return gcd(a, b)


def form_from_bezout(curve: Curve, B: BezoutSystem) -> Differential:
    """``sum alpha_i d(beta_i)``."""
    w = Differential(curve, curve.zero)
    for a, b in zip(B.alphas, B.betas):
        w = w + d(curve, b) * a
    return w


def connection_data(curve: Curve, D: Divisor, *, permutation=None) -> tuple[Differential, BezoutSystem]:
    """The form ``sum alpha_i d beta_i`` for ``I_D``, and the Bezout system used.

    ``permutation`` reorders the generators of ``I_D`` before the solve.
    """
    I = ideal_of_divisor(curve, D)
    if permutation is not None:
        I = FractionalIdeal(curve, D, tuple(I.generators[k] for k in permutation))
    J = ideal_of_divisor(curve, -D)
    B = bezout(curve, I, J)
    return form_from_bezout(curve, B), B


def connection_form(curve: Curve, D: Divisor) -> Differential:
    return connection_data(curve, D)[0]


def min_valuation(curve: Curve, I: FractionalIdeal, Q: Point) -> int | float:
    return min((valuation(curve, g, Q) for g in I.generators), default=math.inf)
