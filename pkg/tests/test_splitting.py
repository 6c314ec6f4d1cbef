from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import divisors
from connexion.connections import PicClass, make_class, project
from connexion.curve import INFINITY, Point, Puncture
from connexion.differentials import Differential, dlog, res_map, residue
from connexion.divisors import Divisor, group_sum, is_principal
from connexion.errors import DomainError
from connexion.linalg import hnf
from connexion.samples import E1, E2, L1, L2
from connexion.splitting import (
    BOUNDED,
    COMPLETE,
    SplittingContext,
    build_splitting,
    extend_divisor,
    relation_lattice,
    split,
    third_kind_basis,
    torsion_order,
)

P00, P10, Pm10 = Point((0, 0)), Point((1, 0)), Point((-1, 0))
a, b = Fraction(2), Fraction(-3)
Pa, Pb = Point((a,)), Point((b,))
E2P = Point((3, 5))


def brute_force_kernel(curve, S, box):
    """All relation vectors with entries in ``range(box)`` plus the ``box * e_i``."""
    vecs = [v for v in itertools.product(range(box), repeat=len(S)) if any(v)]
    rels = [list(v) for v in vecs if is_principal(curve, Divisor.from_vector(S, v)).is_principal]
    rels += [[box * int(i == j) for j in range(len(S))] for i in range(len(S))]
    return hnf(rels)


# -- relation lattice ----------------------------------------------------------

def test_lattice_examples():
    lat = relation_lattice(E1, [P00, P10])
    assert lat.basis == ((2, 0), (0, 2)) and lat.complete
    lat = relation_lattice(L1, [Pa, Pb])
    assert lat.basis == ((1, 0), (0, 1)) and lat.verdict == COMPLETE
    lat = relation_lattice(E2, [E2P], bound=12)
    assert lat.basis == () and lat.verdict == BOUNDED == "bounded-search-only"


def test_three_torsion_points_match_brute_force():
    S = [P00, P10, Pm10]
    assert [list(v) for v in relation_lattice(E1, S).basis] == brute_force_kernel(E1, S, 2)


def test_torsion_orders():
    assert torsion_order(E1, P00) == 2
    assert torsion_order(E2, E2P) is None


def test_e2_relation_among_multiples():
    from connexion.divisors import ell_mul

    Q = ell_mul(E2, 2, E2P)
    lat = relation_lattice(E2, [E2P, Q], bound=4)
    assert lat.verdict == BOUNDED
    assert hnf([list(v) for v in lat.basis]) == hnf([[2, -1]])
    assert group_sum(E2, Divisor.from_vector([E2P, Q], lat.basis[0])) == INFINITY


# -- third-kind forms ----------------------------------------------------------

def test_third_kind_examples():
    assert third_kind_basis(L1, Pa) == dlog(L1, L1.t - a)
    w = third_kind_basis(E2, E2P)
    x, y = E2.x, E2.y
    assert w == Differential(E2, (y + 5) / (2 * (x - 3)) / y)
    assert (residue(E2, w, E2P), residue(E2, w, Point((3, -5))), residue(E2, w, INFINITY)) == (1, 0, -1)
    assert res_map(E1, third_kind_basis(E1, P10)) == Divisor([(P10, 1)])


@pytest.mark.parametrize("curve", [E1, E2, L2])
def test_third_kind_basis_has_unit_residue(curve):
    from connexion.samples import known_points

    for P in known_points(curve)[:4]:
        assert res_map(curve, third_kind_basis(curve, P)) == Divisor([(P, 1)])


# -- splitting -----------------------------------------------------------------

def test_build_splitting_examples():
    ctx = build_splitting(E1, [P00])
    assert ctx.lattice.basis == ((2,),) and ctx.witnesses == (E1.x,) and ctx.complement == ()
    ctx = build_splitting(L1, [Pa])
    assert ctx.lattice.basis == ((1,),) and ctx.witnesses == (L1.t - a,) and ctx.complement == ()
    ctx = build_splitting(E2, [E2P], bound=12)
    assert ctx.lattice.basis == () and ctx.complement == ((1,),)
    assert ctx.complement_forms == (third_kind_basis(E2, E2P),)


def test_split_examples():
    ctx = build_splitting(E1, [P00])
    half = split(ctx, Divisor([(P00, 1)]))
    assert half == Differential(E1, 1 / (2 * E1.x))
    assert residue(E1, half, P00) == 1
    assert split(ctx, Divisor([(P00, 2)])) == dlog(E1, E1.x)
    ctx = build_splitting(L1, [Pa])
    assert split(ctx, Divisor([(Pa, 3)])) == dlog(L1, (L1.t - a) ** 3)


def test_extend_divisor_examples():
    D = extend_divisor(E1, Divisor([(P00, 1)]))
    assert D[P00] == 1 and D[INFINITY] == -1 and D.degree == 0
    zero = Puncture(Fraction(0))
    D = extend_divisor(L1, Divisor([(Pa, 1)]))
    assert D[zero] == -1 and D[INFINITY] == 0
    D = extend_divisor(L1, Divisor([(Pa, 1), (Pb, 1)]))
    assert D[zero] == -2 and D.degree == 0


def test_context_round_trip():
    ctx = build_splitting(E1, [P00, P10, Pm10])
    again = SplittingContext.from_json(json.loads(ctx.dumps()))
    assert again.basis() == ctx.basis() and again.images() == ctx.images()


def test_tampered_context_rejected():
    data = build_splitting(E1, [P00]).to_json()
    data["lattice"][0]["witness"] = "x + 1"
    with pytest.raises(DomainError):
        SplittingContext.from_json(data)


CONTEXTS = {
    "E1": build_splitting(E1, [P00, P10]),
    "L1": build_splitting(L1, [Pa, Pb]),
    "L2": build_splitting(L2, [Pa, Pb]),
    "E2": build_splitting(E2, [E2P, Point((3, -5))], bound=6),
}


ctx_and_pair = st.sampled_from(list(CONTEXTS.values())).flatmap(
    lambda c: st.tuples(
        st.just(c),
        divisors(c.curve, c.support, max_coeff=5),
        divisors(c.curve, c.support, max_coeff=5),
    )
)


@given(ctx_and_pair)
def test_split_is_a_section(data):
    ctx, D, _ = data
    w = split(ctx, D)
    # residues land in the integers even with fractional coordinates
    assert res_map(ctx.curve, w) == D


@given(ctx_and_pair)
def test_split_is_additive(data):
    ctx, D1, D2 = data
    assert split(ctx, D1 + D2) == split(ctx, D1) + split(ctx, D2)


@given(ctx_and_pair)
def test_split_descends_to_pic(data):
    ctx, D, _ = data
    assert project(make_class(ctx.curve, split(ctx, D))) == PicClass(ctx.curve, D)


@given(ctx_and_pair)
def test_extension_has_degree_zero(data):
    ctx, D, _ = data
    assert extend_divisor(ctx.curve, D).degree == 0


@pytest.mark.parametrize("name", list(CONTEXTS))
def test_split_is_identity_on_lattice(name):
    ctx = CONTEXTS[name]
    for v, f in zip(ctx.lattice.basis, ctx.witnesses):
        assert split(ctx, Divisor.from_vector(ctx.support, v)) == dlog(ctx.curve, f)


@given(st.lists(st.sampled_from([a, b]), min_size=1, max_size=5), st.integers(1, 3))
def test_line_split_of_principal_is_dlog(roots, k):
    ctx = CONTEXTS["L1"]
    g = L1.const(k)
    for r in roots:
        g = g * (L1.t - r)
    D = Divisor([(Point((r,)), roots.count(r)) for r in set(roots)])
    diff = split(ctx, D) - dlog(L1, g)
    assert diff.is_zero()
