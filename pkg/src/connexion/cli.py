"""Command line front end: ``connexion <verb> --curve SPEC ...``.

Exit status: 0 on success, 1 when a well-formed request has no mathematical
answer (or a verification fails), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, InputError

DEFAULT_BOUND = 16
DEFAULT_ORDER = 2
DEFAULT_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _curve_arg(p):
    p.add_argument("--curve", required=True, help="curve spec: JSON file path or inline JSON")
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="connexion", description="Exact computations with flat line bundles on affine curves.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("residue", help="residue of a form at a point")
    _curve_arg(p)
    p.add_argument("--form", required=True)
    p.add_argument("--point", required=True, help="e.g. (0,0), or [inf] for a puncture")

    p = sub.add_parser("divisor-of", help="divisor of a function on X")
    _curve_arg(p)
    p.add_argument("--function", required=True)
    p.add_argument("--completion", action="store_true", help="include punctures")

    p = sub.add_parser("principal", help="principality test with witness")
    _curve_arg(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--require-witness", action="store_true", help="exit 1 when the divisor is not principal")

    p = sub.add_parser("connect", help="connection form sum alpha_i d beta_i for a divisor")
    _curve_arg(p)
    p.add_argument("--divisor", required=True)

    p = sub.add_parser("verify-connection", help="check phi_w maps D(X) onto D(I_D) on generators")
    _curve_arg(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--form", help="defaults to the connection form of the divisor")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)

    p = sub.add_parser("class-equal", help="equality of classes given as 'divisor; form'")
    _curve_arg(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("split", help="the splitting s(D) over a finite support")
    _curve_arg(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--support", help="points separated by ';' (default: support of the divisor)")
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--context", help="load a saved splitting context (JSON)")
    p.add_argument("--save-context", help="write the splitting context used (JSON)")

    p = sub.add_parser("extend", help="degree-zero extension of a divisor to the completion")
    _curve_arg(p)
    p.add_argument("--divisor", required=True)

    p = sub.add_parser("periods", help="periods of a form (default dx/y) over cycles")
    _curve_arg(p)
    p.add_argument("--form")
    p.add_argument("--loop", action="append", default=[], help="add a small loop around this point")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("normalize", help="subtract c dx/y so all periods are imaginary")
    _curve_arg(p)
    p.add_argument("--form", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("character", help="exp of a period, with its polar decomposition")
    _curve_arg(p)
    p.add_argument("--form", required=True)
    p.add_argument("--cycle", required=True, help="A, B, or a point to loop around")
    p.add_argument("--normalize", action="store_true", help="normalise the form first")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("verify-suite", help="run the invariant suites on the bundled curves")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    p.add_argument("--mutate", action="append", default=[], help="inject a known-wrong convention")
    p.add_argument("--only", action="append", help="run only the named suite (repeatable)")
    p.add_argument("--instances", help="comma-separated subset of E1,E2,L1,L2")
    return parser


def _emit(args, text: str, data) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_residue(args, C):
    from .differentials import residue
    from .textio import parse_form, parse_point

    r = residue(C, parse_form(C, args.form), parse_point(C, args.point, allow_puncture=True))
    _emit(args, str(r), {"residue": str(r)})
    return 0


def _cmd_divisor_of(args, C):
    from .divisors import completion_divisor_of, divisor_of
    from .textio import parse_function

    g = parse_function(C, args.function)
    D = completion_divisor_of(C, g) if args.completion else divisor_of(C, g)
    _emit(args, str(D), {"divisor": str(D)})
    return 0


def _cmd_principal(args, C):
    from .divisors import is_principal
    from .textio import parse_divisor

    cert = is_principal(C, parse_divisor(C, args.divisor))
    if cert.is_principal:
        _emit(args, f"principal; witness: {cert.witness}", {"verdict": cert.verdict, "witness": str(cert.witness)})
        return 0
    _emit(args, f"not principal; obstruction: {cert.obstruction}", {"verdict": cert.verdict, "obstruction": str(cert.obstruction)})
    if args.require_witness:
        print(f"error: {args.divisor} is not principal (group-law sum {cert.obstruction})", file=sys.stderr)
        return 1
    return 0


def _cmd_connect(args, C):
    from .differentials import res_map
    from .ideals import connection_data
    from .textio import parse_divisor

    D = parse_divisor(C, args.divisor)
    w, B = connection_data(C, D)
    R = res_map(C, w)
    alphas = [str(a) for a in B.alphas]
    betas = [str(b) for b in B.betas]
    text = "\n".join(
        [f"form: {w}", f"residue divisor: {R}", "bezout alpha: " + "; ".join(alphas), "bezout beta: " + "; ".join(betas)]
    )
    _emit(args, text, {"form": str(w), "residue_divisor": str(R), "alpha": alphas, "beta": betas})
    return 0


def _cmd_verify_connection(args, C):
    from .dmodule import verify_connection_operator
    from .ideals import connection_form
    from .textio import parse_divisor, parse_form

    D = parse_divisor(C, args.divisor)
    w = parse_form(C, args.form) if args.form else connection_form(C, D)
    if args.order < 1:
        raise InputError("--order must be at least 1")
    chk = verify_connection_operator(C, w, D, args.order)
    head = f"{'ok' if chk.ok else 'FAILED'} (order bound {chk.order}, {chk.checked} generators checked)"
    _emit(args, "\n".join([head, *chk.failures]), {"ok": chk.ok, "order": chk.order, "checked": chk.checked, "failures": list(chk.failures)})
    return 0 if chk.ok else 1


def _cmd_class_equal(args, C):
    from .connections import class_from_pair, compare
    from .textio import parse_class_pair

    c1 = class_from_pair(C, *parse_class_pair(C, args.a))
    c2 = class_from_pair(C, *parse_class_pair(C, args.b))
    res = compare(c1, c2)
    data = {"equal": res.equal, "witness": str(res.witness) if res.witness else None, "unit": str(res.unit) if res.unit else None}
    _emit(args, res.describe(), data)
    return 0


def _cmd_split(args, C):
    from .splitting import SplittingContext, build_splitting, split
    from .textio import parse_divisor, parse_point

    D = parse_divisor(C, args.divisor)
    if args.context:
        try:
            with open(args.context, encoding="utf-8") as fh:
                ctx = SplittingContext.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError) as exc:
            raise InputError(f"cannot load context {args.context}: {exc}") from exc
        if ctx.curve != C:
            raise InputError("saved context is for a different curve")
    else:
        if args.support:
            S = [parse_point(C, s) for s in args.support.split(";") if s.strip()]
        else:
            S = list(D.support)
        if not S:
            raise InputError("empty support: give --support or a nonzero divisor")
        ctx = build_splitting(C, S, args.bound)
    w = split(ctx, D)
    if args.save_context:
        with open(args.save_context, "w", encoding="utf-8") as fh:
            fh.write(ctx.dumps())
    lines = [str(w)]
    if not ctx.lattice.complete:
        lines.append(f"warning: relation lattice is {ctx.lattice.verdict} (bound {ctx.bound})")
    _emit(args, "\n".join(lines), {"form": str(w), "lattice_verdict": ctx.lattice.verdict, "context": ctx.to_json()})
    return 0


def _cmd_extend(args, C):
    from .splitting import extend_divisor
    from .textio import parse_divisor

    E = extend_divisor(C, parse_divisor(C, args.divisor))
    _emit(args, str(E), {"divisor": str(E)})
    return 0


def _cycles(C, names, w):
    from .periods import branch_cycles, loop_cycle, pole_abscissae
    from .textio import parse_point

    out = []
    branch = None
    for name in names:
        if name in ("A", "B"):
            if branch is None:
                branch = branch_cycles(C, pole_abscissae(C, w))
            out.append(branch[0] if name == "A" else branch[1])
        else:
            out.append(loop_cycle(C, parse_point(C, name, allow_puncture=True), w))
    return out


def _cmd_periods(args, C):
    from .differentials import canonical_form
    from .periods import third_kind_periods
    from .textio import parse_form

    w = parse_form(C, args.form) if args.form else canonical_form(C)
    names = (["A", "B"] if C.is_elliptic else []) + args.loop
    if not names:
        raise InputError("a punctured line has no generator cycles; pass --loop POINT")
    pd = third_kind_periods(C, w, _cycles(C, names, w), args.tol)
    text = "\n".join(f"{k}: {v.real:.15g} {v.imag:+.15g}i  (error {pd.errors[k]:.2g})" for k, v in pd.values.items())
    _emit(args, text, pd.to_json())
    return 0


def _cmd_normalize(args, C):
    from .periods import normalize_imaginary
    from .textio import parse_form

    N = normalize_imaginary(C, parse_form(C, args.form), args.tol)
    text = f"c = {N.c.real:.15g} {N.c.imag:+.15g}i\nform: {N.form} - c * dx/y" if C.is_elliptic else "c = 0 (genus 0: already normalized)"
    for k, v in N.periods.items():
        text += f"\n{k}: {v.real:.3g} {v.imag:+.15g}i"
    _emit(args, text, N.to_json())
    return 0


def _cmd_character(args, C):
    from .periods import complex_json, normalize_imaginary, polar_decompose, unit_character
    from .textio import parse_form

    w = parse_form(C, args.form)
    target = normalize_imaginary(C, w, args.tol) if args.normalize else w
    cyc = _cycles(C, [args.cycle], w)[0]
    v = unit_character(C, target, cyc, args.tol)
    lam, theta = polar_decompose(v)
    text = f"value: {v.real:.15g} {v.imag:+.15g}i\nmodulus: {abs(v):.15g}\npolar: lambda = {lam:.15g}, theta = {theta:.15g}"
    _emit(args, text, {"value": complex_json(v), "modulus": abs(v), "lambda": lam, "theta": theta})
    return 0


def _cmd_verify_suite(args):
    from .suite import MUTATIONS, SUITES, run_suites

    bad = set(args.mutate) - set(MUTATIONS)
    if bad:
        raise InputError(f"unknown mutation(s) {sorted(bad)}; known: {', '.join(MUTATIONS)}")
    if args.only and set(args.only) - set(SUITES):
        raise InputError(f"unknown suite(s) {sorted(set(args.only) - set(SUITES))}")
    instances = args.instances.split(",") if args.instances else None
    if instances:
        from .samples import INSTANCES

        if set(instances) - set(INSTANCES):
            raise InputError(f"unknown instance(s) {sorted(set(instances) - set(INSTANCES))}")
    if args.bound < 1:
        raise InputError("--bound must be at least 1")
    report = run_suites(seed=args.seed, bound=args.bound, mutations=args.mutate, only=args.only, instances=instances)
    print(json.dumps(report, indent=2))
    return 0 if report["passed"] else 1


COMMANDS = {
    "residue": _cmd_residue,
    "divisor-of": _cmd_divisor_of,
    "principal": _cmd_principal,
    "connect": _cmd_connect,
    "verify-connection": _cmd_verify_connection,
    "class-equal": _cmd_class_equal,
    "split": _cmd_split,
    "extend": _cmd_extend,
    "periods": _cmd_periods,
    "normalize": _cmd_normalize,
    "character": _cmd_character,
}


def run(argv=None) -> int:
    from .textio import load_curve

    try:
        args = build_parser().parse_args(argv)
        if args.verb == "verify-suite":
            return _cmd_verify_suite(args)
        C = load_curve(args.curve)
        return COMMANDS[args.verb](args, C)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
