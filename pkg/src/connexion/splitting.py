"""An explicit splitting ``s: Div_S -> third-kind forms`` over a finite support S.

``Z^S`` is given a rational basis made of generators of the relation lattice
(vectors whose divisor is principal) and unit vectors completing them.  ``s``
sends a lattice vector to ``dlog`` of its witness and a complement vector
``e_P`` to a form with a single simple pole of residue 1 on X at P; any other
divisor is written in rational coordinates in that basis.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curve import Curve, Function, Point
from .differentials import Differential, dlog, res_map
from .divisors import (
    O,
    CompletionDivisor,
    Divisor,
    check_divisor,
    ell_add,
    ell_mul,
    ell_neg,
    function_with_divisor,
)
from .errors import DomainError, InputError, SolverError
from .linalg import hnf, rank, solve
from .local import form_expansion

COMPLETE = "complete"
BOUNDED = "bounded-search-only"
DEFAULT_BOUND = 16
_MAZUR_MAX = 12
_MAX_ANSATZ_WEIGHT = 24


@dataclass(frozen=True)
class RelationLattice:
    basis: tuple[tuple[int, ...], ...]
    verdict: str
    bound: int

    @property
    def complete(self) -> bool:
        return self.verdict == COMPLETE


def torsion_order(curve: Curve, P: Point) -> int | None:
    """Order of P in E(Q), or None when P has infinite order."""
    R = P
    for n in range(1, _MAZUR_MAX + 1):
        if R == O:
            return n
        R = ell_add(curve, R, P)
    return None


def _sum(curve: Curve, multiples: list[dict], v: Sequence[int]):
    acc = O
    for mult, k in zip(multiples, v):
        if k:
            acc = ell_add(curve, acc, mult[k])
    return acc


def _multiples(curve: Curve, P: Point, lo: int, hi: int) -> dict:
    out = {0: O}
    R = O
    for k in range(1, hi + 1):
        R = ell_add(curve, R, P)
        out[k] = R
    R = O
    negP = ell_neg(curve, P)
    for k in range(1, -lo + 1):
        R = ell_add(curve, R, negP)
        out[-k] = R
    return out


def _minors_gcd(basis: list[list[int]]) -> int:
    """gcd of the maximal minors: the index of the lattice in its saturation."""
    from math import gcd

    r = len(basis)
    n = len(basis[0])
    g = 0
    for cols in itertools.combinations(range(n), r):
        sub = [[Fraction(row[c]) for c in cols] for row in basis]
        g = gcd(g, int(abs(_det(sub))))
    return g


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _saturate(curve: Curve, S: Sequence[Point], basis: list[list[int]]) -> list[list[int]]:
    """Add every vector of the rational span that is itself a relation."""
    while basis:
        idx = _minors_gcd(basis)
        grew = False
        for p in _prime_factors(idx):
            for cs in itertools.product(range(p), repeat=len(basis)):
                if not any(cs):
                    continue
                v = [sum(c * b[i] for c, b in zip(cs, basis)) for i in range(len(S))]
                if all(x % p == 0 for x in v):
                    w = [x // p for x in v]
                    if _group_sum(curve, S, w) == O:
                        basis = hnf(basis + [w])
                        grew = True
                        break
            if grew:
                break
        if not grew:
            return basis
    return basis


def _group_sum(curve: Curve, S: Sequence[Point], v: Sequence[int]):
    acc = O
    for P, k in zip(S, v):
        acc = ell_add(curve, acc, ell_mul(curve, k, P))
    return acc


def _check_support(curve: Curve, S: Sequence[Point]) -> None:
    if not S:
        raise InputError("support set must be nonempty")
    if len(set(S)) != len(S):
        raise InputError("support points must be distinct")
    for P in S:
        curve.check_point(P)


def relation_lattice(curve: Curve, S: Sequence[Point], bound: int = DEFAULT_BOUND) -> RelationLattice:
    """Basis (row HNF) of ``{v in Z^S : sum v_i P_i is principal}``."""
    _check_support(curve, S)
    if bound < 1:
        raise InputError("search bound must be at least 1")
    n = len(S)
    if not curve.is_elliptic:
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return RelationLattice(eye, COMPLETE, bound)
    orders = [torsion_order(curve, P) for P in S]
    rows: list[list[int]] = []
    ranges = []
    for i, m in enumerate(orders):
        if m is not None:
            rows.append([m if j == i else 0 for j in range(n)])
            ranges.append(range(0, m))
        else:
            ranges.append(range(-bound, bound + 1))
    mults = [
        _multiples(curve, P, r.start, r.stop - 1) for P, r in zip(S, ranges)
    ]
    for v in itertools.product(*ranges):
        if any(v) and _sum(curve, mults, v) == O:
            rows.append(list(v))
            rows = hnf(rows)
    basis = hnf(rows) if rows else []
    basis = _saturate(curve, S, basis)
    verdict = COMPLETE if all(m is not None for m in orders) else BOUNDED
    return RelationLattice(tuple(tuple(r) for r in basis), verdict, bound)


# -- third-kind basis forms --------------------------------------------------

def third_kind_basis(curve: Curve, P: Point) -> Differential:
    """A form with residue 1 at P, regular elsewhere on X, poles allowed at punctures.

    On a line this is ``dt/(t - a)``.  On an elliptic curve the ansatz
    ``(sum c_m m) / (x - x0) * dx/y`` over monomials m of O(X) is solved for
    the principal-part conditions at the points above x0; the basic solution
    (free coefficients zero) of the smallest working ansatz is returned.
    """
    curve.check_point(P)
    if not curve.is_elliptic:
        return Differential(curve, 1 / (curve.t - P.x))
    from .ideals import monomials

    x0 = P.x
    conj = curve.conjugate(P)
    denom = (curve.x - x0) * curve.y
    for W in range(0, _MAX_ANSATZ_WEIGHT + 1):
        mons = monomials(curve, W)
        exps = {Q: [form_expansion(curve, m / denom, Q, 0) for m in mons] for Q in {P, conj}}
        lo = min(s.val for ss in exps.values() for s in ss)
        rows, rhs = [], []
        for Q, ss in exps.items():
            top = -1 if Q == P else 0
            for k in range(min(lo, -1), top):
                rows.append([s.coeff(k) for s in ss])
                rhs.append(Fraction(0))
        rows.append([s.coeff(-1) for s in exps[P]])
        rhs.append(Fraction(1))
        sol = solve(rows, rhs)
        if sol is None:
            continue
        num = sum((c * m for c, m in zip(sol, mons) if c), curve.zero)
        w = Differential(curve, num / denom)
        if res_map(curve, w) != Divisor.point(P):
            raise AssertionError(f"third-kind ansatz at {P} produced residues {res_map(curve, w)}")
        return w
    raise SolverError(f"no third-kind form with a simple pole at {P} up to weight {_MAX_ANSATZ_WEIGHT}")


# -- the splitting -----------------------------------------------------------

@dataclass(frozen=True)
class SplittingContext:
    curve: Curve
    support: tuple[Point, ...]
    lattice: RelationLattice
    witnesses: tuple[Function, ...]
    complement: tuple[tuple[int, ...], ...]
    complement_forms: tuple[Differential, ...]

    @property
    def bound(self) -> int:
        return self.lattice.bound

    def basis(self) -> list[tuple[int, ...]]:
        return list(self.lattice.basis) + list(self.complement)

    def images(self) -> list[Differential]:
        return [dlog(self.curve, f) for f in self.witnesses] + list(self.complement_forms)

    def to_json(self) -> dict:
        return {
            "curve": self.curve.spec(),
            "support": [str(P) for P in self.support],
            "bound": self.lattice.bound,
            "verdict": self.lattice.verdict,
            "lattice": [
                {"vector": list(v), "witness": str(f)} for v, f in zip(self.lattice.basis, self.witnesses)
            ],
            "complement": [
                {"vector": list(v), "form": str(w)} for v, w in zip(self.complement, self.complement_forms)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "SplittingContext":
        from .curve import make_curve
        from .textio import parse_form, parse_function, parse_point

        C = make_curve(data["curve"])
        S = tuple(parse_point(C, s) for s in data["support"])
        lat = RelationLattice(
            tuple(tuple(e["vector"]) for e in data["lattice"]), data["verdict"], int(data["bound"])
        )
        wit = tuple(parse_function(C, e["witness"]) for e in data["lattice"])
        comp = tuple(tuple(e["vector"]) for e in data["complement"])
        forms = tuple(parse_form(C, e["form"]) for e in data["complement"])
        ctx = cls(C, S, lat, wit, comp, forms)
        ctx.validate()
        return ctx

    def validate(self) -> None:
        """Re-check the stored invariants exactly."""
        C, S = self.curve, self.support
        for v, f in zip(self.lattice.basis, self.witnesses):
            from .divisors import divisor_of

            if divisor_of(C, f) != Divisor.from_vector(S, v):
                raise DomainError(f"witness {f} does not realise {list(v)}")
        for v, w in zip(self.complement, self.complement_forms):
            if res_map(C, w) != Divisor.from_vector(S, v):
                raise DomainError(f"complement form {w} does not have residue divisor {list(v)}")
        if rank(self.basis()) != len(S) or len(self.basis()) != len(S):
            raise DomainError("stored vectors are not a basis of Q^S")


def build_splitting(curve: Curve, S: Sequence[Point], bound: int = DEFAULT_BOUND) -> SplittingContext:
    S = tuple(S)
    lat = relation_lattice(curve, S, bound)
    witnesses = tuple(function_with_divisor(curve, Divisor.from_vector(S, v)) for v in lat.basis)
    rows = [list(v) for v in lat.basis]
    comp, forms = [], []
    for i, P in enumerate(S):
        e = [int(i == j) for j in range(len(S))]
        if rank(rows + [e]) > len(rows):
            rows.append(e)
            comp.append(tuple(e))
            forms.append(third_kind_basis(curve, P))
    return SplittingContext(curve, S, lat, witnesses, tuple(comp), tuple(forms))


def coordinates(ctx: SplittingContext, D: Divisor) -> list[Fraction]:
    v = D.vector(ctx.support)
    basis = ctx.basis()
    cols = [list(r) for r in zip(*basis)] if basis else []
    q = solve(cols, v)
    if q is None:
        raise AssertionError("stored basis does not span Q^S")
    return q


def split(ctx: SplittingContext, D: Divisor) -> Differential:
    """``s(D)``: the form with residue divisor D determined by the stored basis."""
    check_divisor(ctx.curve, D)
    q = coordinates(ctx, D)
    out = Differential(ctx.curve, ctx.curve.zero)
    for c, w in zip(q, ctx.images()):
        if c:
            out = out + w * c
    return out


def extend_divisor(curve: Curve, D: Divisor) -> CompletionDivisor:
    """Degree-zero extension: ``-deg D`` at the distinguished puncture."""
    check_divisor(curve, D)
    return CompletionDivisor(list(D.items()) + [(curve.distinguished_puncture, -D.degree)])
