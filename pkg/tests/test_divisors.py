from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FAST, divisors, functions
from connexion.curve import INFINITY, Point
from connexion.divisors import (
    O,
    Divisor,
    completion_divisor_of,
    divisor_of,
    ell_add,
    ell_mul,
    ell_neg,
    function_with_divisor,
    is_principal,
)
from connexion.errors import CurveMismatchError, InputError, NonRationalSupportError, NotPrincipalError
from connexion.local import valuation
from connexion.samples import E1, E2, L1, known_points

P00, P10, Pm10 = Point((0, 0)), Point((1, 0)), Point((-1, 0))


def test_divisor_of_examples():
    assert divisor_of(E1, E1.x) == Divisor([(P00, 2)])
    assert divisor_of(E1, E1.y) == Divisor([(P00, 1), (P10, 1), (Pm10, 1)])
    assert divisor_of(L1, L1.t) == Divisor()


def test_divisor_of_matches_valuations():
    # the divisor is read from norms; valuations come from local series
    g = E1.y**3 / (E1.x - 1) ** 2
    D = divisor_of(E1, g)
    for P in known_points(E1):
        assert D[P] == valuation(E1, g, P)


def test_non_rational_support_reported():
    with pytest.raises(NonRationalSupportError):
        divisor_of(E1, E1.x - 2)
    with pytest.raises(NonRationalSupportError):
        divisor_of(L1, L1.t**2 + 1)


def test_divisor_arithmetic_and_zero():
    D = Divisor([(P00, 2), (P10, -1)])
    assert D - D == 0
    assert (D + D)[P00] == 4
    assert D.degree == 1
    assert D.positive_part() == Divisor([(P00, 2)])
    assert Divisor([(P00, 0)]).is_zero()


def test_group_law_examples():
    assert ell_add(E1, P00, P10) == Pm10
    assert ell_add(E1, P00, O) == P00
    assert ell_add(E2, Point((3, 5)), Point((3, -5))) == O


def test_group_law_rejected_on_line():
    with pytest.raises(CurveMismatchError):
        ell_add(L1, Point((1,)), Point((2,)))


def test_two_torsion_table_is_klein_four():
    # brute-force table: every element has order 2 and the sum of two
    # distinct nonzero elements is the third
    G = [O, P00, P10, Pm10]
    for A, B in itertools.product(G, G):
        C = ell_add(E1, A, B)
        assert C in G
        if A == B:
            assert C == O
        elif O in (A, B):
            assert C == (B if A == O else A)
        else:
            assert C not in (O, A, B)


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_group_law_on_multiples(i, j, k):
    P = Point((3, 5))
    mi, mj, mk = (ell_mul(E2, n, P) for n in (i, j, k))
    assert ell_add(E2, mi, mj) == ell_mul(E2, i + j, P)
    assert ell_add(E2, ell_add(E2, mi, mj), mk) == ell_add(E2, mi, ell_add(E2, mj, mk))
    assert ell_add(E2, mi, ell_neg(E2, mi)) == O


def test_principality_examples():
    cert = is_principal(E1, Divisor([(P00, 2)]))
    assert cert.is_principal and cert.witness == E1.x
    cert = is_principal(E1, Divisor([(P00, 1)]))
    assert not cert.is_principal and cert.obstruction == P00
    cert = is_principal(E1, Divisor([(P00, 1), (P10, 1), (Pm10, 1)]))
    assert cert.is_principal and cert.witness == E1.y


def test_function_with_divisor_examples():
    assert function_with_divisor(E1, Divisor([(P00, 2)])) == E1.x
    assert function_with_divisor(E1, Divisor([(P00, 1), (P10, 1), (Pm10, 1)])) == E1.y
    D = Divisor([(Point((2,)), 1), (Point((5,)), 2)])
    assert function_with_divisor(L1, D) == (L1.t - 2) * (L1.t - 5) ** 2
    with pytest.raises(NotPrincipalError):
        function_with_divisor(E1, Divisor([(P00, 1)]))


def test_witness_on_e2_relation():
    P = Point((3, 5))
    Q = ell_mul(E2, 2, P)
    D = Divisor([(P, 2), (Q, -1)])
    f = function_with_divisor(E2, D)
    assert divisor_of(E2, f) == D


def test_puncture_in_divisor_rejected():
    from connexion.divisors import check_divisor

    with pytest.raises(InputError):
        check_divisor(L1, Divisor([(Point((0,)), 1)]))


# -- properties --------------------------------------------------------------

@st.composite
def _curve_pair(draw):
    C = draw(st.sampled_from(list(FAST.values())))
    return C, draw(functions(C)), draw(functions(C))


@given(_curve_pair())
def test_divisor_of_is_a_homomorphism(data):
    C, g, h = data
    assert divisor_of(C, g * h) == divisor_of(C, g) + divisor_of(C, h)
    assert divisor_of(C, 1 / g) == -divisor_of(C, g)


@given(_curve_pair())
def test_completion_degree_is_zero(data):
    C, g, _ = data
    assert completion_divisor_of(C, g).degree == 0


@given(st.sampled_from([E1, E2, L1]).flatmap(lambda C: st.tuples(st.just(C), divisors(C))))
def test_witness_realises_principal_divisor(data):
    C, D = data
    cert = is_principal(C, D)
    if cert.is_principal:
        assert divisor_of(C, cert.witness) == D
        assert divisor_of(C, function_with_divisor(C, D)) == D


@given(st.sampled_from([E1, E2]).flatmap(lambda C: st.tuples(st.just(C), divisors(C), divisors(C))))
def test_principality_is_a_subgroup(data):
    C, D1, D2 = data
    c1, c2 = is_principal(C, D1), is_principal(C, D2)
    if c1.is_principal and c2.is_principal:
        c12 = is_principal(C, D1 + D2)
        assert c12.is_principal
        assert divisor_of(C, c1.witness * c2.witness) == D1 + D2


def test_line_divisors_always_principal():
    D = Divisor([(Point((Fraction(1, 2),)), 3), (Point((-2,)), -1)])
    assert is_principal(L1, D).witness == (L1.t - Fraction(1, 2)) ** 3 / (L1.t + 2)


def test_completion_divisor_includes_punctures():
    D = completion_divisor_of(L1, L1.t - 1)
    assert D[INFINITY] == -1 and D.restrict() == Divisor([(Point((1,)), 1)])
