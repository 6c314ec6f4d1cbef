from __future__ import annotations

import itertools
from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from connexion.linalg import hnf, nullspace, rank, solve
from connexion.polys import Poly, factor, rational_roots, rational_sqrt
from connexion.series import Laurent, sqrt_one_plus

small = st.integers(-5, 5)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4)
)


@given(matrices)
def test_rank_and_nullspace_match_sympy(m):
    M = sympy.Matrix(m)
    assert rank(m) == M.rank()
    ker = nullspace(m)
    assert len(ker) == len(M.nullspace())
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(matrices, st.data())
def test_solve_is_a_solution(m, data):
    b = data.draw(st.lists(small, min_size=len(m), max_size=len(m)))
    v = solve(m, b)
    consistent = sympy.Matrix(m).rank() == sympy.Matrix(m).row_join(sympy.Matrix(b)).rank()
    assert (v is not None) == consistent
    if v is not None:
        assert [sum(a * x for a, x in zip(row, v)) for row in m] == b


def _in_row_span(v, basis):
    """Integer membership of v in the lattice of independent rows (sympy solve)."""
    if not basis:
        return not any(v)
    sol, params = sympy.Matrix(basis).T.gauss_jordan_solve(sympy.Matrix(v))
    assert not params
    return all(x.is_integer for x in sol)


def _minors_gcd(rows):
    r = sympy.Matrix(rows).rank()
    M = sympy.Matrix(rows)
    g = 0
    for ri in itertools.combinations(range(M.rows), r):
        for ci in itertools.combinations(range(M.cols), r):
            g = sympy.gcd(g, M.extract(list(ri), list(ci)).det())
    return abs(g)


@given(matrices)
def test_hnf_spans_the_same_lattice(m):
    h = hnf(m)
    nonzero = [r for r in m if any(r)]
    assert len(h) == (sympy.Matrix(m).rank() if nonzero else 0)
    # L(m) is inside L(h); equal index then forces equality
    assert all(_in_row_span(row, h) for row in nonzero)
    if h:
        assert _minors_gcd(h) == _minors_gcd(nonzero)
    # echelon shape with reduced entries above the pivots
    pivots = [next(j for j, x in enumerate(r) if x) for r in h]
    assert pivots == sorted(set(pivots))
    for i, (r, p) in enumerate(zip(h, pivots)):
        assert r[p] > 0
        assert all(0 <= h[k][p] < r[p] for k in range(i))


@given(matrices)
def test_hnf_is_canonical(m):
    assert hnf(m + m[::-1]) == hnf(m)
    assert hnf(hnf(m)) == hnf(m)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5))
def test_rational_roots(roots):
    p = Poly.from_roots([Fraction(r, 2) for r in roots]) * Poly((1, 0, 1))
    found, rest = rational_roots(p)
    assert sorted((r, m) for r, m in found) == sorted(
        (Fraction(r, 2), roots.count(r)) for r in set(roots)
    )
    assert [f for f, _ in rest] == [Poly((1, 0, 1))]


def test_factor_and_sqrt():
    p = Poly((-1, 0, 1)) * Poly((-2, 0, 1))
    assert sorted(str(f.c) for f, _ in factor(p)) == sorted(
        str(f.c) for f in (Poly((-2, 0, 1)), Poly((-1, 1)), Poly((1, 1)))
    )
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None


@given(st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5)), min_size=1, max_size=6))
def test_series_inverse_and_sqrt(cs):
    prec = 8
    s = Laurent(1, cs, prec)
    if s.is_zero():
        return
    one = s * s.inverse()
    assert one.coeff(0) == 1 and all(one.coeff(k) == 0 for k in range(1, one.prec))
    r = sqrt_one_plus(s)
    sq = r * r
    assert sq.coeff(0) == 1
    assert all(sq.coeff(k) == s.coeff(k) for k in range(1, prec))
