from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from connexion.divisors import Divisor
from connexion.samples import E1, E2, L1, L2, factors, known_points

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

CURVES = {"E1": E1, "E2": E2, "L1": L1, "L2": L2}
FAST = {"E1": E1, "L1": L1, "L2": L2}

nonzero_rationals = st.builds(
    Fraction,
    st.integers(-6, 6).filter(bool),
    st.integers(1, 4),
)


@st.composite
def functions(draw, curve, max_degree: int = 4):
    """Nonzero ``c * prod f_i / prod g_j`` over factors with rational divisors."""
    fs = factors(curve)
    idx = st.integers(0, len(fs) - 1)
    g = curve.const(draw(nonzero_rationals))
    for i in draw(st.lists(idx, max_size=max_degree)):
        g = g * fs[i]
    for i in draw(st.lists(idx, max_size=max_degree)):
        g = g / fs[i]
    return g


@st.composite
def ring_elements(draw, curve):
    coef = st.integers(-3, 3)
    if curve.is_elliptic:
        return curve.function(draw(st.lists(coef, max_size=3)), draw(st.lists(coef, max_size=2)))
    h = curve.function(draw(st.lists(coef, max_size=3)))
    for a in curve.punctures:
        h = h + Fraction(draw(coef)) / (curve.t - a) ** draw(st.integers(1, 2))
    return h


@st.composite
def divisors(draw, curve, support=None, max_coeff: int = 3, max_points: int = 3):
    pts = list(support) if support is not None else known_points(curve)
    chosen = draw(st.lists(st.sampled_from(pts), unique=True, max_size=min(max_points, len(pts))))
    coeffs = st.integers(-max_coeff, max_coeff).filter(bool)
    return Divisor([(P, draw(coeffs)) for P in chosen])


def points(curve):
    return st.sampled_from(known_points(curve))
