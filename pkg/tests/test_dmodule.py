from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import divisors, functions, ring_elements
from connexion.curve import Point
from connexion.differentials import Differential, canonical_form, dlog, res_map
from connexion.divisors import Divisor
from connexion.dmodule import DiffOperator, op_add, op_compose, phi, preserves, verify_connection_operator
from connexion.ideals import connection_data, connection_form, ideal_of_divisor
from connexion.samples import E1, E2, L1, L2, known_points

P00 = Point((0, 0))
D00 = Divisor([(P00, 1)])


def mult(g):
    return DiffOperator.multiplication(g)


def d(curve, k=1):
    return DiffOperator.partial(curve, k)


def test_leibniz_examples():
    t = L1.t
    assert d(L1) @ mult(t) == DiffOperator(L1, [L1.one, t])
    assert d(E1) @ mult(E1.x) == DiffOperator(E1, [E1.y, E1.x])
    assert d(L1, 2) @ mult(t) == DiffOperator(L1, [L1.zero, L1.const(2), t])


def test_apply_and_compose_agree():
    a = DiffOperator(E1, [E1.x, E1.y, E1.one])
    b = DiffOperator(E1, [E1.one, E1.x])
    g = E1.y / E1.x
    assert op_compose(a, b).apply(g) == a.apply(b.apply(g))
    assert op_add(a, b).apply(g) == a.apply(g) + b.apply(g)


def test_phi_examples():
    assert phi(L1, Differential(L1, L1.one), d(L1)) == DiffOperator(L1, [L1.one, L1.one])
    assert phi(E1, dlog(E1, E1.x), d(E1)) == DiffOperator(E1, [E1.y / E1.x, E1.one])


def test_preserves_examples():
    I = ideal_of_divisor(E1, D00)
    O = ideal_of_divisor(E1, Divisor())
    assert preserves(E1, mult(E1.x), I)
    assert preserves(E1, d(E1), O)
    assert not preserves(E1, d(E1), I)
    assert d(E1).apply(E1.y / E1.x) == (E1.x**2 + 1) / (2 * E1.x)


def test_preserves_checks_every_coefficient():
    # the operator d^2 sends (t) into (t) only at order 0; its left
    # coefficients are not all in (t)
    I = ideal_of_divisor(L1.__class__.punctured_line([]), Divisor([(Point((0,)), -1)]))
    C = I.curve
    assert not preserves(C, d(C, 2), I)
    assert preserves(C, mult(C.t) @ d(C, 2), I)


def test_verify_connection_operator_examples():
    w = connection_form(E1, D00)
    for n in (1, 2, 3):
        assert verify_connection_operator(E1, w, D00, n)
    assert phi(E1, w, d(E1)).apply(E1.one) == (E1.y / E1.x) * (1 - 3 * E1.x**2) / 2 + E1.x * E1.y
    bad = verify_connection_operator(E1, Differential(E1, E1.zero), D00, 1)
    assert not bad and bad.failures
    assert verify_connection_operator(E1, canonical_form(E1) * E1.x, Divisor(), 2)


def test_phi_of_derivation_is_bezout_sum():
    w, B = connection_data(E1, D00)
    rhs = DiffOperator(E1, [])
    for alpha, beta in zip(B.alphas, B.betas):
        rhs = rhs + mult(alpha) @ d(E1) @ mult(beta)
    assert phi(E1, w, d(E1)) == rhs


@st.composite
def _operator(draw, curve, order=2):
    coeffs = [draw(st.one_of(ring_elements(curve), functions(curve, 2))) for _ in range(order + 1)]
    return DiffOperator(curve, coeffs)


@st.composite
def _form(draw, curve):
    D = draw(divisors(curve, known_points(curve)[:2], max_coeff=2))
    return connection_form(curve, D) + canonical_form(curve) * draw(ring_elements(curve))


curve_ops = st.sampled_from([E1, L1, L2]).flatmap(
    lambda C: st.tuples(st.just(C), _form(C), _form(C), _operator(C), _operator(C))
)


@given(curve_ops)
def test_phi_is_multiplicative(data):
    C, w, _, a, b = data
    assert phi(C, w, a @ b) == phi(C, w, a) @ phi(C, w, b)


@given(curve_ops)
def test_phi_is_an_additive_action(data):
    C, w1, w2, a, _ = data
    assert phi(C, w1, phi(C, w2, a)) == phi(C, w1 + w2, a)
    assert phi(C, -w1, phi(C, w1, a)) == a


@given(st.sampled_from([E1, L1]).flatmap(
    lambda C: st.tuples(st.just(C), _form(C), _operator(C, 3))
))
def test_phi_inverse_order_three(data):
    C, w, a = data
    assert phi(C, -w, phi(C, w, a)) == a


@given(st.sampled_from([E1, L1, L2]).flatmap(
    lambda C: st.tuples(st.just(C), divisors(C, known_points(C)[:2], max_coeff=2))
))
def test_connection_form_passes_operator_check(data):
    C, D = data
    w = connection_form(C, D)
    assert verify_connection_operator(C, w, D, 3)


@given(st.sampled_from([E1, L1]).flatmap(
    lambda C: st.tuples(st.just(C), _form(C), divisors(C, known_points(C)[:2], max_coeff=2))
))
def test_operator_check_implies_residues(data):
    C, w, D = data
    if verify_connection_operator(C, w, D, 1):
        assert res_map(C, w) == D


def test_operator_check_rejects_bad_order():
    from connexion.errors import InputError

    with pytest.raises(InputError):
        verify_connection_operator(E1, connection_form(E1, D00), D00, 0)


def test_operator_arithmetic():
    a = DiffOperator(E1, [E1.x, E1.one])
    assert (a - a).is_zero()
    assert a.scale(Fraction(1, 2)) + a.scale(Fraction(1, 2)) == a
    assert d(E1).power(3) == d(E1, 3)
    assert a.order == 1 and DiffOperator(E1, []).order == -1
