"""Bundled curve instances and seeded random generators of test objects.

Random functions are products of factors whose zeros and poles are rational
points (on E1: x, x - 1, x + 1, y and translates of lines through known
points; on lines: linear factors), so their divisors are always defined over Q.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .curve import Curve, Function, Point
from .differentials import Differential, dlog
from .divisors import Divisor, ell_mul, ell_neg

E1 = Curve.elliptic(-1, 0)
E2 = Curve.elliptic(0, -2)
L1 = Curve.punctured_line([0])
L2 = Curve.punctured_line([0, 1])

INSTANCES = {"E1": E1, "E2": E2, "L1": L1, "L2": L2}


def known_points(curve: Curve, count: int = 6) -> list[Point]:
    """Some rational points of X, deterministic."""
    if not curve.is_elliptic:
        pts, a = [], Fraction(-3)
        while len(pts) < count:
            if a not in curve.punctures:
                pts.append(Point((a,)))
            a += 1
        return pts
    if curve == E1:
        return [Point((0, 0)), Point((1, 0)), Point((-1, 0))]
    if curve == E2:
        P = Point((3, 5))
        out = []
        for k in range(1, count // 2 + 1):
            Q = ell_mul(curve, k, P)
            out += [Q, ell_neg(curve, Q)]
        return out[:count]
    # generic: search small x for rational points
    out = []
    for num in range(-20, 21):
        for den in (1, 2, 4):
            pts = curve.points_over(Fraction(num, den))
            out.extend(p for p in pts if p not in out)
            if len(out) >= count:
                return out
    return out


def _line_factor(curve: Curve, P: Point, Q: Point) -> Function:
    """A function vanishing at P and Q (a chord, a tangent, or a vertical line)."""
    x = curve.x
    if P == Q and P.y != 0:
        lam = (3 * P.x**2 + curve.a) / (2 * P.y)
    elif P.x == Q.x:
        return x - P.x
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    return curve.y - P.y - lam * (x - P.x)


def factors(curve: Curve) -> list[Function]:
    """Building blocks with rational zeros and poles."""
    pts = known_points(curve)
    if not curve.is_elliptic:
        return [curve.t - P.x for P in pts] + [curve.t - a for a in curve.punctures]
    out = [curve.x - P.x for P in pts]
    if curve == E1:
        out.append(curve.y)
    else:
        out += [_line_factor(curve, pts[0], pts[2]), _line_factor(curve, pts[0], pts[0])]
    return out


def random_function(curve: Curve, rng: random.Random, max_degree: int = 4) -> Function:
    """Nonzero ``c * prod f_i^{e_i}`` with numerator and denominator of bounded size."""
    fs = factors(curve)
    g = curve.const(Fraction(rng.choice([1, -1, 2, 3, -5]), rng.choice([1, 1, 2, 3])))
    num = rng.randint(0, max_degree)
    den = rng.randint(0, max_degree)
    for _ in range(num):
        g = g * rng.choice(fs)
    for _ in range(den):
        g = g / rng.choice(fs)
    return g


def random_divisor(curve: Curve, rng: random.Random, support=None, max_points: int = 3, max_coeff: int = 3) -> Divisor:
    pts = list(support) if support is not None else known_points(curve)
    k = rng.randint(0, min(max_points, len(pts)))
    chosen = rng.sample(pts, k)
    return Divisor([(P, rng.choice([n for n in range(-max_coeff, max_coeff + 1) if n])) for P in chosen])


def random_regular_form(curve: Curve, rng: random.Random) -> Differential:
    """``h * (canonical form)`` with h a random element of O(X)."""
    from .differentials import canonical_form

    if curve.is_elliptic:
        h = curve.function([rng.randint(-3, 3) for _ in range(3)], [rng.randint(-2, 2) for _ in range(2)])
    else:
        h = curve.function([rng.randint(-3, 3) for _ in range(3)])
        for a in curve.punctures:
            h = h + Fraction(rng.randint(-2, 2)) / (curve.t - a) ** rng.randint(1, 2)
    return canonical_form(curve) * h


def random_third_kind_form(curve: Curve, rng: random.Random) -> Differential:
    """``dlog g + c * w_P + regular``: simple poles with rational residues."""
    from .splitting import third_kind_basis

    w = dlog(curve, random_function(curve, rng)) + random_regular_form(curve, rng)
    P = rng.choice(known_points(curve))
    return w + third_kind_basis(curve, P) * rng.randint(-3, 3)


def random_operator(curve: Curve, rng: random.Random, order: int = 2):
    from .dmodule import DiffOperator

    coeffs = []
    for _ in range(order + 1):
        if rng.random() < 0.5:
            coeffs.append(curve.const(rng.randint(-2, 2)))
        else:
            coeffs.append(random_function(curve, rng, max_degree=2))
    return DiffOperator(curve, coeffs)
