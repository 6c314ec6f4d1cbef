"""Periods of 1-forms, the pure-imaginary normalisation, and unit-circle characters.

Cycles are ellipses (circles included) in the x-plane, traversed once or
twice, with ``y = sqrt(f(x))`` continued along the path by nearest-sign
tracking.  Integration is the composite trapezoid rule in the angle, which
converges geometrically for these periodic analytic integrands; the node count
is doubled until successive estimates agree to the requested tolerance.

Elliptic generator cycles: with roots ``e0, e1, e2`` of f sorted by (real,
imag), A encircles ``[e0, e1]`` and B encircles ``[e1, e2]``.  Orientations are
fixed so that ``Re Ω_A > 0`` (or ``Im Ω_A > 0`` when that real part vanishes)
and ``Im(Ω_B / Ω_A) > 0``, where Ω are the periods of ``dx/y``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .curve import Curve, Point, Puncture
from .differentials import Differential, canonical_form
from .errors import ClearanceError, CurveMismatchError, DomainError, InputError, QuadratureError
from .polys import factor

DEFAULT_TOL = 1e-9
_MIN_NODES = 64
_MAX_NODES = 1 << 20


@dataclass(frozen=True)
class Cycle:
    """A closed path ``x(s) = center + rot (a cos s + i b sin s)``.

    ``turns`` full turns (two around a ramified point), ``direction`` +1 for
    counterclockwise in s; ``y_start`` fixes the sheet at ``s = 0``.
    """

    name: str
    center: complex
    a: float
    b: float
    rot: complex = 1
    turns: int = 1
    direction: int = 1
    y_start: complex | None = None
    anchor: str = ""

    def reversed(self) -> "Cycle":
        return replace(self, direction=-self.direction)

    def samples(self, n: int) -> tuple[np.ndarray, np.ndarray, float]:
        """Points ``x_k``, derivatives ``dx/ds`` and the step ``ds`` for n nodes."""
        s = self.direction * 2 * math.pi * self.turns * np.arange(n + 1) / n
        x = self.center + self.rot * (self.a * np.cos(s) + 1j * self.b * np.sin(s))
        dx = self.rot * (-self.a * np.sin(s) + 1j * self.b * np.cos(s))
        return x, dx, self.direction * 2 * math.pi * self.turns / n

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "turns": self.turns, "direction": self.direction}


@dataclass(frozen=True)
class PeriodData:
    values: dict
    errors: dict
    nodes: dict
    tol: float

    def __getitem__(self, name: str) -> complex:
        return self.values[name]

    def to_json(self) -> dict:
        return {
            "tol": self.tol,
            "periods": [
                {"cycle": k, "value": complex_json(v), "error": self.errors[k], "nodes": self.nodes[k]}
                for k, v in self.values.items()
            ],
        }


def complex_json(v: complex) -> dict:
    return {"re": float(v.real), "im": float(v.imag)}


# -- numerical evaluation ----------------------------------------------------

def _float_poly(p) -> np.ndarray:
    return np.array(p.float_coeffs() or [0.0], dtype=complex)


def _branch(curve: Curve, x: np.ndarray, y_start: complex | None) -> np.ndarray:
    """Continuous branch of ``sqrt(f(x))`` along consecutive samples."""
    s = np.sqrt(np.polyval(_float_poly(curve.f), x))
    flips = np.abs(s[1:] - s[:-1]) > np.abs(s[1:] + s[:-1])
    sign = np.concatenate([[1.0], np.cumprod(np.where(flips, -1.0, 1.0))])
    y = s * sign
    if y_start is not None and abs(y[0] - y_start) > abs(y[0] + y_start):
        y = -y
    return y


def _integrate_once(curve: Curve, w: Differential, cyc: Cycle, n: int) -> complex:
    x, dx, ds = cyc.samples(n)
    g = w.coeff
    num = np.polyval(_float_poly(g.p), x)
    if curve.is_elliptic:
        y = _branch(curve, x, cyc.y_start)
        if abs(y[-1] - y[0]) > 1e-6 * max(1.0, abs(y[0])):
            raise QuadratureError(f"branch of y did not close along {cyc.name}")
        if g.q:
            num = num + np.polyval(_float_poly(g.q), x) * y
    vals = num / np.polyval(_float_poly(g.d), x) * dx
    return complex(np.sum(vals[:-1]) * ds)


def integrate(curve: Curve, w: Differential, cyc: Cycle, tol: float = DEFAULT_TOL) -> tuple[complex, float, int]:
    """``(value, error estimate, nodes)`` for the integral of w over the cycle."""
    if tol <= 0:
        raise InputError("tolerance must be positive")
    n = _MIN_NODES
    prev = _integrate_once(curve, w, cyc, n)
    while n < _MAX_NODES:
        n *= 2
        cur = _integrate_once(curve, w, cyc, n)
        err = abs(cur - prev)
        # geometric convergence: the halved-step difference bounds the error
        if err < tol / 4 and n >= 4 * _MIN_NODES:
            return cur, err, n
        prev = cur
    raise QuadratureError(f"quadrature along {cyc.name} did not reach tolerance {tol}")


# -- cycles ------------------------------------------------------------------

def cubic_roots(curve: Curve) -> list[complex]:
    r = np.roots(curve.f.float_coeffs())
    return sorted((complex(v) for v in r), key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def pole_abscissae(curve: Curve, w: Differential) -> list[complex]:
    """x (or t) coordinates of the finite poles of the coefficient of w."""
    # root the exact irreducible factors: repeated roots of the raw
    # denominator would split into numerically close clusters
    out = []
    for fac, _ in factor(w.coeff.d):
        out += [complex(v) for v in np.roots(fac.float_coeffs())]
    return out


def _ellipse_points(center, rot, a, b, n=720):
    s = np.linspace(0, 2 * math.pi, n, endpoint=False)
    return center + rot * (a * np.cos(s) + 1j * b * np.sin(s))


def _clearance(pts: np.ndarray, obstacles) -> float:
    if not len(obstacles):
        return math.inf
    return float(min(np.min(np.abs(pts - o)) for o in obstacles))


def _branch_cycle(name: str, e0: complex, e1: complex, others, anchor: str) -> tuple[Cycle, float]:
    """Confocal ellipse around ``[e0, e1]`` maximising the distance to obstacles."""
    h = abs(e1 - e0) / 2
    center, rot = (e0 + e1) / 2, (e1 - e0) / abs(e1 - e0)
    best = None
    for k in range(1, 200):
        b = h * 0.02 * k
        a = math.hypot(b, h)
        pts = _ellipse_points(center, rot, a, b)
        # the third root must stay outside: |p - e0| + |p - e1| > 2a
        if any(abs(o - e0) + abs(o - e1) <= 2 * a for o in others[:1]):
            break
        c = min(_clearance(pts, [e0, e1]), _clearance(pts, others))
        if best is None or c > best[0] + 1e-12:
            best = (c, a, b)
    if best is None:
        raise ClearanceError(f"no ellipse separates {e0}, {e1} from the other obstacles")
    c, a, b = best
    return Cycle(name, center, a, b, rot, anchor=anchor), c


def branch_cycles(curve: Curve, avoid=()) -> tuple[Cycle, Cycle]:
    """Oriented generator cycles (A, B), avoiding the x-values in ``avoid``."""
    if not curve.is_elliptic:
        raise CurveMismatchError("branch cycles exist on elliptic curves only")
    e = cubic_roots(curve)
    scale = max(abs(e[0] - e[1]), abs(e[1] - e[2]), abs(e[0] - e[2]))
    A, cA = _branch_cycle("A", e[0], e[1], [e[2], *avoid], "roots 0,1")
    B, cB = _branch_cycle("B", e[1], e[2], [e[0], *avoid], "roots 1,2")
    if min(cA, cB) < 1e-6 * scale:
        raise ClearanceError("generator cycles pass too close to a pole or branch point")
    dxy = canonical_form(curve)
    wa = integrate(curve, dxy, A, 1e-6)[0]
    if wa.real < 0 or (abs(wa.real) < 1e-9 * abs(wa) and wa.imag < 0):
        A, wa = A.reversed(), -wa
    wb = integrate(curve, dxy, B, 1e-6)[0]
    if (wb / wa).imag < 0:
        B = B.reversed()
    return A, B


def loop_cycle(curve: Curve, P, w: Differential | None = None) -> Cycle:
    """Small positively oriented loop around a point of X or a puncture."""
    obstacles = []
    if curve.is_elliptic:
        obstacles += cubic_roots(curve)
    else:
        obstacles += [complex(a) for a in curve.punctures]
    if w is not None:
        obstacles += pole_abscissae(curve, w)
    if isinstance(P, Puncture) and P.is_infinity:
        R = 4 * max([abs(o) for o in obstacles] + [1.0])
        turns = 2 if curve.is_elliptic else 1
        y0 = None
        if curve.is_elliptic:
            y0 = cmath.sqrt(complex(float(R**3) + float(curve.a) * R + float(curve.b)))
        return Cycle(f"loop{P}", 0j, R, R, 1, turns, -1, y0, anchor=str(P))
    x0 = complex(float(P.x if isinstance(P, Point) else P.at))
    others = [o for o in obstacles if abs(o - x0) > 1e-12]
    dist = min([abs(o - x0) for o in others] + [1.0])
    r = 0.1 * dist
    turns, y0 = 1, None
    if curve.is_elliptic:
        if P.y == 0:
            turns = 2
        else:
            y0 = complex(float(P.y))
    return Cycle(f"loop{P}", x0, r, r, 1, turns, 1, y0, anchor=str(P))


def _check_clearance(curve: Curve, w: Differential, cyc: Cycle) -> None:
    poles = pole_abscissae(curve, w)
    pts = _ellipse_points(cyc.center, cyc.rot, cyc.a, cyc.b)
    scale = max(cyc.a, cyc.b)
    if poles and _clearance(pts, poles) < 1e-6 * scale:
        raise ClearanceError(f"cycle {cyc.name} passes through a pole of the form")


# -- public operations -------------------------------------------------------

def holomorphic_periods(curve: Curve, tol: float = DEFAULT_TOL) -> PeriodData:
    A, B = branch_cycles(curve)
    return third_kind_periods(curve, canonical_form(curve), [A, B], tol)


def third_kind_periods(curve: Curve, w: Differential, cycles=None, tol: float = DEFAULT_TOL) -> PeriodData:
    if w.curve != curve:
        raise CurveMismatchError(f"{w} does not live on {curve}")
    if cycles is None:
        if not curve.is_elliptic:
            raise InputError("a punctured line needs explicit loop cycles")
        cycles = branch_cycles(curve, pole_abscissae(curve, w))
    values, errors, nodes = {}, {}, {}
    for cyc in cycles:
        _check_clearance(curve, w, cyc)
        v, e, n = integrate(curve, w, cyc, tol)
        values[cyc.name], errors[cyc.name], nodes[cyc.name] = v, e, n
    return PeriodData(values, errors, nodes, tol)


@dataclass(frozen=True)
class NormalizedForm:
    """``form - c * (canonical form)``: exact part plus numeric regular correction."""

    curve: Curve
    form: Differential
    c: complex
    cycles: tuple = ()
    periods: dict = field(default_factory=dict)
    condition: float = 1.0

    def period(self, cycle: Cycle, tol: float = DEFAULT_TOL) -> complex:
        v, _, _ = integrate(self.curve, self.form, cycle, tol)
        if self.c and self.curve.is_elliptic:
            v -= self.c * integrate(self.curve, canonical_form(self.curve), cycle, tol)[0]
        return v

    def to_json(self) -> dict:
        return {
            "form": str(self.form),
            "c": complex_json(self.c),
            "condition": self.condition,
            "periods": {k: complex_json(v) for k, v in self.periods.items()},
        }


def normalize_imaginary(curve: Curve, w: Differential, tol: float = DEFAULT_TOL) -> NormalizedForm:
    """Subtract ``c dx/y`` so that every period has zero real part."""
    if not curve.is_elliptic:
        return NormalizedForm(curve, w, 0j)
    A, B = branch_cycles(curve, pole_abscissae(curve, w))
    pi = third_kind_periods(curve, w, [A, B], tol / 10)
    om = third_kind_periods(curve, canonical_form(curve), [A, B], tol / 10)
    PA, PB, OA, OB = pi["A"], pi["B"], om["A"], om["B"]
    # Re(P - c O) = 0 with c = cr + i ci:  cr Re O - ci Im O = Re P
    M = np.array([[OA.real, -OA.imag], [OB.real, -OB.imag]])
    cond = float(np.linalg.cond(M))
    if not math.isfinite(cond) or cond > 1e12:
        raise DomainError(f"period system is singular (condition number {cond:.3g})")
    cr, ci = np.linalg.solve(M, np.array([PA.real, PB.real]))
    c = complex(cr, ci)
    periods = {"A": PA - c * OA, "B": PB - c * OB}
    return NormalizedForm(curve, w, c, (A, B), periods, cond)


def unit_character(curve: Curve, w, cycle: Cycle, tol: float = DEFAULT_TOL) -> complex:
    """``exp`` of the period of w (a Differential or NormalizedForm) over the cycle."""
    if isinstance(w, NormalizedForm):
        return cmath.exp(w.period(cycle, tol))
    return cmath.exp(integrate(curve, w, cycle, tol)[0])


def polar_decompose(v: complex) -> tuple[float, float]:
    """``(lam, theta)`` with ``v = exp(lam + i theta)`` and ``theta`` in [0, 2 pi)."""
    if v == 0:
        raise DomainError("polar decomposition of zero")
    lam = math.log(abs(v))
    theta = cmath.phase(v) % (2 * math.pi)
    if theta >= 2 * math.pi:
        theta = 0.0
    return lam, theta
