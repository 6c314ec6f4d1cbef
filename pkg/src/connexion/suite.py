"""Invariant suites over the bundled curves, used by ``connexion verify-suite``.

Each suite returns a list of violations (empty when it passes) and may add
warnings.  ``mutations`` deliberately break one convention so the runner can
be seen to catch it.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from . import samples
from .connections import compare, embed_regular, gauge, make_class, project, tensor
from .curve import Curve, distinguished_derivation, units
from .differentials import (
    canonical_form,
    dlog,
    is_regular_on_X,
    pairing,
    poles_on_X,
    res_map,
    residue,
    total_residue_completion,
)
from .divisors import (
    O,
    Divisor,
    completion_divisor_of,
    divisor_of,
    ell_add,
    function_with_divisor,
    is_principal,
)
from .dmodule import DiffOperator, phi, verify_connection_operator
from .ideals import connection_data, ideal_of_divisor, membership
from .local import local_expansion, valuation
from .splitting import build_splitting, extend_divisor, relation_lattice, split
from .textio import format_divisor, format_form, format_function, parse_divisor, parse_form, parse_function

MUTATIONS = ("infinity-residue-sign",)


@dataclass
class Context:
    curves: dict
    seed: int
    bound: int
    mutations: frozenset
    warnings: list = field(default_factory=list)

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")


def _each(ctx: Context, fn: Callable[[str, Curve], list]) -> list:
    out = []
    for name, C in ctx.curves.items():
        out += [f"{name}: {v}" for v in fn(name, C)]
    return out


def suite_valuations(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("val" + name), []
        pts = samples.known_points(C)[:3]
        for _ in range(6):
            g, h = samples.random_function(C, rng, 2), samples.random_function(C, rng, 2)
            for P in pts:
                vg, vh = valuation(C, g, P), valuation(C, h, P)
                if valuation(C, g * h, P) != vg + vh:
                    bad.append(f"v(gh) != v(g)+v(h) at {P} for {g}, {h}")
                if not (g + h).is_zero() and valuation(C, g + h, P) < min(vg, vh):
                    bad.append(f"v(g+h) < min at {P} for {g}, {h}")
                s = local_expansion(C, g, P, 4)
                if s.val != vg:
                    bad.append(f"leading exponent {s.val} != valuation {vg} at {P}")
        return bad

    return _each(ctx, run)


def suite_units_and_derivation(ctx: Context) -> list:
    def run(name, C):
        bad = []
        for u in units(C).generators:
            if not divisor_of(C, u).is_zero():
                bad.append(f"unit {u} has nonzero divisor")
        if pairing(C, canonical_form(C), distinguished_derivation(C)) != 1:
            bad.append("canonical form does not pair to 1 with the derivation")
        return bad

    return _each(ctx, run)


def suite_divisors(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("div" + name), []
        for _ in range(6):
            g, h = samples.random_function(C, rng, 3), samples.random_function(C, rng, 3)
            if divisor_of(C, g * h) != divisor_of(C, g) + divisor_of(C, h):
                bad.append(f"div(gh) != div g + div h for {g}, {h}")
            if divisor_of(C, 1 / g) != -divisor_of(C, g):
                bad.append(f"div(1/g) != -div g for {g}")
            if completion_divisor_of(C, g).degree != 0:
                bad.append(f"completed divisor of {g} has nonzero degree")
            D = divisor_of(C, g)
            cert = is_principal(C, D)
            if not cert.is_principal or divisor_of(C, cert.witness) != D:
                bad.append(f"principal divisor {D} not certified")
        return bad

    return _each(ctx, run)


def suite_group_law(ctx: Context) -> list:
    from .curve import Point

    C = samples.E1
    T = [O, Point((0, 0)), Point((1, 0)), Point((-1, 0))]
    # Z/2 x Z/2 with O=(0,0), (0,0)=(1,0), (1,0)=(0,1), (-1,0)=(1,1)
    label = {T[0]: (0, 0), T[1]: (1, 0), T[2]: (0, 1), T[3]: (1, 1)}
    bad = []
    for P in T:
        for Q in T:
            want = tuple((a + b) % 2 for a, b in zip(label[P], label[Q]))
            if label.get(ell_add(C, P, Q)) != want:
                bad.append(f"E1: {P} + {Q} = {ell_add(C, P, Q)}")
    return bad


def suite_residues(ctx: Context) -> list:
    sign = -1 if "infinity-residue-sign" in ctx.mutations else 1

    def run(name, C):
        rng, bad = ctx.rng("res" + name), []
        for _ in range(6):
            g = samples.random_function(C, rng)
            if res_map(C, dlog(C, g)) != divisor_of(C, g):
                bad.append(f"res(dlog g) != div g for {g}")
            w = samples.random_third_kind_form(C, rng)
            tot = total_residue_completion(C, w, infinity_sign=sign)
            if tot != 0:
                bad.append(f"total_residue_completion({w}) = {tot}")
        return bad

    return _each(ctx, run)


def suite_kernel(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("ker" + name), []
        S = samples.known_points(C)[:2]
        sp = build_splitting(C, S, ctx.bound)
        for _ in range(4):
            D = samples.random_divisor(C, rng, S, 2, 3)
            w = split(sp, D) + samples.random_regular_form(C, rng)
            R = res_map(C, w)
            if R != D:
                bad.append(f"res(split(D) + regular) = {R}, expected {D}")
            if R.is_zero() != is_regular_on_X(C, w):
                bad.append(f"kernel law fails for {w}")
        return bad

    return _each(ctx, run)


def suite_connections(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("conn" + name), []
        for _ in range(3):
            D = samples.random_divisor(C, rng, max_points=2, max_coeff=2)
            w, B = connection_data(C, D)
            if B.total() != 1:
                bad.append(f"Bezout system for {D} does not sum to 1")
            if res_map(C, w) != D:
                bad.append(f"res(connection_form({D})) = {res_map(C, w)}")
            chk = verify_connection_operator(C, w, D, 1)
            if not chk:
                bad.append(f"connection operator check failed for {D}: {chk.failures}")
            I = ideal_of_divisor(C, D)
            if not all(membership(C, g, I) for g in I.generators):
                bad.append(f"generators of I_{D} are not members")
            c = make_class(C, w)
            f = samples.random_function(C, rng, 2)
            if not compare(c, gauge(c, f)):
                bad.append(f"class not equal to its gauge by {f}")
            c2 = make_class(C, samples.random_third_kind_form(C, rng))
            if project(tensor(c, c2)) != project(c) + project(c2):
                bad.append("projection is not additive")
        if not project(embed_regular(C, canonical_form(C))).is_trivial():
            bad.append("embedded regular class projects nontrivially")
        return bad

    return _each(ctx, run)


def suite_operators(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("op" + name), []
        w = samples.random_third_kind_form(C, rng)
        for _ in range(3):
            a, b = samples.random_operator(C, rng, 2), samples.random_operator(C, rng, 2)
            if phi(C, w, a @ b) != phi(C, w, a) @ phi(C, w, b):
                bad.append("phi is not multiplicative")
            if phi(C, -w, phi(C, w, a)) != a:
                bad.append("phi(-w) does not invert phi(w)")
        return bad

    return _each(ctx, run)


def suite_splitting(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("split" + name), []
        S = samples.known_points(C)[:2]
        sp = build_splitting(C, S, ctx.bound)
        if not sp.lattice.complete:
            ctx.warnings.append(f"{name}: relation lattice over {len(S)} points is bounded-search-only (bound {ctx.bound})")
        for _ in range(4):
            D1 = samples.random_divisor(C, rng, S, 2, 5)
            D2 = samples.random_divisor(C, rng, S, 2, 5)
            if res_map(C, split(sp, D1)) != D1:
                bad.append(f"res(split({D1})) != {D1}")
            if split(sp, D1 + D2) != split(sp, D1) + split(sp, D2):
                bad.append(f"split not additive on {D1}, {D2}")
            if extend_divisor(C, D1).degree != 0:
                bad.append(f"extension of {D1} has nonzero degree")
        for v, f in zip(sp.lattice.basis, sp.witnesses):
            if split(sp, Divisor.from_vector(S, v)) != dlog(C, f):
                bad.append(f"split of lattice vector {v} is not dlog of its witness")
        return bad

    return _each(ctx, run)


def suite_relation_lattice(ctx: Context) -> list:
    bad = []
    E1, E2 = samples.E1, samples.E2
    pts = samples.known_points(E1)
    lat = relation_lattice(E1, pts, ctx.bound)
    from itertools import product

    from .linalg import hnf

    brute = [list(v) for v in product(range(-2, 3), repeat=3) if is_principal(E1, Divisor.from_vector(pts, v)).is_principal]
    if hnf(brute) != [list(r) for r in lat.basis]:
        bad.append(f"E1 torsion lattice {lat.basis} != brute force {hnf(brute)}")
    lat2 = relation_lattice(E2, samples.known_points(E2)[:1], ctx.bound)
    if not lat2.complete:
        ctx.warnings.append(f"E2: relation lattice is bounded-search-only (bound {ctx.bound})")
    for v in lat2.basis:
        if not is_principal(E2, Divisor.from_vector(samples.known_points(E2)[:1], v)).is_principal:
            bad.append(f"E2 lattice vector {v} is not a relation")
    return bad


def suite_periods(ctx: Context) -> list:
    from .periods import loop_cycle, normalize_imaginary, third_kind_periods, unit_character

    bad = []
    rng = ctx.rng("periods")
    for name, C in ctx.curves.items():
        w = samples.random_third_kind_form(C, rng)
        for P in poles_on_X(C, w)[:2]:
            v = third_kind_periods(C, w, [loop_cycle(C, P, w)], 1e-9)
            got = next(iter(v.values.values()))
            want = 2j * math.pi * float(residue(C, w, P))
            if abs(got - want) > 1e-7:
                bad.append(f"{name}: loop period {got} at {P} != {want}")
    C = samples.E1
    N = normalize_imaginary(C, dlog(C, C.x), 1e-10)
    for cyc in N.cycles:
        if abs(N.period(cyc).real) > 1e-8 or abs(abs(unit_character(C, N, cyc)) - 1) > 1e-8:
            bad.append(f"E1: normalized dlog x has a non-imaginary period on {cyc.name}")
    return bad


def suite_roundtrip(ctx: Context) -> list:
    def run(name, C):
        rng, bad = ctx.rng("rt" + name), []
        for _ in range(4):
            g = samples.random_function(C, rng)
            if parse_function(C, format_function(g)) != g:
                bad.append(f"function round trip failed for {g}")
            w = samples.random_third_kind_form(C, rng)
            if parse_form(C, format_form(w)) != w:
                bad.append(f"form round trip failed for {w}")
            D = samples.random_divisor(C, rng)
            if parse_divisor(C, format_divisor(D)) != D:
                bad.append(f"divisor round trip failed for {D}")
        return bad

    return _each(ctx, run)


SUITES = {
    "valuations": suite_valuations,
    "units_and_derivation": suite_units_and_derivation,
    "divisors": suite_divisors,
    "group_law": suite_group_law,
    "total_residue_completion": suite_residues,
    "kernel_law": suite_kernel,
    "connections": suite_connections,
    "operators": suite_operators,
    "splitting": suite_splitting,
    "relation_lattice": suite_relation_lattice,
    "periods": suite_periods,
    "round_trip": suite_roundtrip,
}


def run_suites(*, seed: int = 0, bound: int = 16, mutations=(), only=None, instances=None) -> dict:
    unknown = set(mutations) - set(MUTATIONS)
    if unknown:
        raise ValueError(f"unknown mutations {sorted(unknown)}")
    curves = {k: samples.INSTANCES[k] for k in (instances or samples.INSTANCES)}
    ctx = Context(curves, seed, bound, frozenset(mutations))
    results = []
    for name, fn in SUITES.items():
        if only and name not in only:
            continue
        try:
            violations = fn(ctx)
        except Exception as exc:  # a crash is a violation, reported with its type
            violations = [f"{type(exc).__name__}: {exc}"]
        results.append({"suite": name, "passed": not violations, "violations": violations})
    violations = [f"{r['suite']}: {v}" for r in results for v in r["violations"]]
    return {
        "suite": "all",
        "passed": not violations,
        "violations": violations,
        "warnings": sorted(set(ctx.warnings)),
        "results": results,
    }
