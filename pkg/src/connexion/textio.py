"""Text formats for curves, points, functions, forms, operators and divisors.

Expressions use ``+ - * /``, parentheses, integer literals and ``^`` (or
``**``) for integer powers.  Variables are ``t`` on a line and ``x, y`` on an
elliptic curve; forms additionally use ``dt`` or ``dx, dy``; operators use
``∂`` or its ASCII alias ``d``.  Every printed object re-parses to an equal
value.
"""
from __future__ import annotations

import ast
import json
import os
import re
from fractions import Fraction

from .curve import Curve, Function, Point, Puncture, as_fraction, make_curve
from .errors import CurveMismatchError, InputError
from .polys import format_poly


# -- curves and points -------------------------------------------------------

def load_curve(source: str) -> Curve:
    """Curve from a JSON file path or an inline JSON document."""
    text = source
    if not source.lstrip().startswith("{"):
        if not os.path.exists(source):
            raise InputError(f"curve file not found: {source}")
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"curve spec is not valid JSON: {exc}") from exc
    return make_curve(spec)


def dump_curve(curve: Curve) -> str:
    return json.dumps(curve.spec())


def parse_point(curve: Curve, text: str, *, allow_puncture: bool = False):
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        if not allow_puncture:
            raise InputError(f"{s} is a puncture, not a point of X")
        body = s[1:-1].strip()
        P = Puncture(None) if body in ("inf", "infinity", "oo") else Puncture(as_fraction(body))
        if not curve.is_puncture(P):
            raise InputError(f"{s} is not a puncture of {curve}")
        return P
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    coords = tuple(as_fraction(c) for c in s.split(","))
    P = Point(coords)
    if curve.is_elliptic and len(coords) != 2 or not curve.is_elliptic and len(coords) != 1:
        raise InputError(f"wrong number of coordinates in {text!r}")
    if not curve.contains(P):
        if allow_puncture and not curve.is_elliptic and coords[0] in curve.punctures:
            return Puncture(coords[0])
        raise InputError(f"{text.strip()} is not a point of {curve}")
    return P


def format_point(P) -> str:
    return str(P)


# -- expression evaluation ---------------------------------------------------

class _Form:
    """Intermediate value while parsing: ``coeff * dx`` (or ``* dt``)."""

    __slots__ = ("coeff",)

    def __init__(self, coeff: Function):
        self.coeff = coeff


def _prepare(text: str) -> ast.AST:
    src = text.replace("^", "**").replace("∂", "d").replace("−", "-")
    try:
        return ast.parse(src.strip(), mode="eval").body
    except SyntaxError as exc:
        raise InputError(f"cannot parse expression {text!r}") from exc


def _int_exponent(node) -> int:
    neg = False
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        neg = isinstance(node.op, ast.USub)
        node = node.operand
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return -node.value if neg else node.value
    raise InputError("exponents must be integer literals")


class _Evaluator:
    def __init__(self, curve: Curve, symbols: dict):
        self.curve = curve
        self.symbols = symbols

    def __call__(self, node):
        curve = self.curve
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int) and not isinstance(node.value, bool):
                return curve.const(node.value)
            raise InputError(f"unsupported literal {node.value!r}; use integers and '/'")
        if isinstance(node, ast.Name):
            if node.id not in self.symbols:
                raise InputError(f"unknown symbol {node.id!r}")
            return self.symbols[node.id]()
        if isinstance(node, ast.UnaryOp):
            v = self(node.operand)
            if isinstance(node.op, ast.USub):
                return self.scale(v, -1)
            if isinstance(node.op, ast.UAdd):
                return v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                return self.power(self(node.left), _int_exponent(node.right))
            a, b = self(node.left), self(node.right)
            if isinstance(node.op, ast.Add):
                return self.add(a, b)
            if isinstance(node.op, ast.Sub):
                return self.add(a, self.scale(b, -1))
            if isinstance(node.op, ast.Mult):
                return self.mul(a, b)
            if isinstance(node.op, ast.Div):
                return self.div(a, b)
        raise InputError(f"unsupported syntax in expression: {ast.dump(node)[:60]}")

    # Plain function arithmetic; subclasses widen these.
    def scale(self, v, k):
        return v * k

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if isinstance(b, Function):
            if b.is_zero():
                raise InputError("division by zero in expression")
            return a / b
        raise InputError("can only divide by functions")

    def power(self, a, n):
        if isinstance(a, Function):
            if n < 0 and a.is_zero():
                raise InputError("negative power of zero")
            return a**n
        raise InputError("only functions can be raised to powers")


def _function_symbols(curve: Curve) -> dict:
    if curve.is_elliptic:
        return {"x": lambda: curve.x, "y": lambda: curve.y}
    return {"t": lambda: curve.t}


def parse_function(curve: Curve, text: str) -> Function:
    v = _Evaluator(curve, _function_symbols(curve))(_prepare(text))
    if not isinstance(v, Function):
        raise InputError(f"{text!r} is not a function")
    return v


def format_function(g: Function) -> str:
    var = g.curve.var
    if g.is_zero():
        return "0"
    num = format_poly(g.p, var) if g.p else ""
    if g.q:
        if g.q.is_const():
            c = g.q.c[0]
            yterm = "y" if c == 1 else "-y" if c == -1 else f"{c}*y"
        else:
            yterm = f"({format_poly(g.q, var)})*y"
        if not num:
            num = yterm
        elif yterm.startswith("-"):
            num = f"{num} - {yterm[1:]}"
        else:
            num = f"{num} + {yterm}"
    if g.d.is_one():
        return num
    den = format_poly(g.d, var)
    if g.q.is_zero() and g.p.is_const() and g.p.c[0].denominator != 1:
        # 1/(2*x) reads better than 1/2/x
        c = g.p.c[0]
        return f"{c.numerator}/({c.denominator}*{den if ' ' not in den else f'({den})'})"
    if " " in num:
        num = f"({num})"
    if " " in den:
        den = f"({den})"
    return f"{num}/{den}"


# -- forms -------------------------------------------------------------------

class _FormEvaluator(_Evaluator):
    def scale(self, v, k):
        return _Form(v.coeff * k) if isinstance(v, _Form) else v * k

    def add(self, a, b):
        fa, fb = isinstance(a, _Form), isinstance(b, _Form)
        if fa and fb:
            return _Form(a.coeff + b.coeff)
        if not fa and not fb:
            return a + b
        other = b if fa else a
        if other.is_zero():
            return a if fa else b
        raise InputError("cannot add a function to a 1-form")

    def mul(self, a, b):
        fa, fb = isinstance(a, _Form), isinstance(b, _Form)
        if fa and fb:
            raise InputError("product of two 1-forms is not a 1-form")
        if fa:
            return _Form(a.coeff * b)
        if fb:
            return _Form(b.coeff * a)
        return a * b

    def div(self, a, b):
        if isinstance(b, _Form):
            raise InputError("cannot divide by a 1-form")
        if b.is_zero():
            raise InputError("division by zero in expression")
        if isinstance(a, _Form):
            return _Form(a.coeff / b)
        return a / b


def parse_form(curve: Curve, text: str):
    """Parse ``"<expr> * dx"``-style text into a Differential."""
    from .differentials import Differential

    syms = _function_symbols(curve)
    if curve.is_elliptic:
        syms["dx"] = lambda: _Form(curve.one)
        # dy = f'(x) / (2y) dx
        syms["dy"] = lambda: _Form(curve.function(curve.f.deriv()) / (2 * curve.y))
    else:
        syms["dt"] = lambda: _Form(curve.one)
    v = _FormEvaluator(curve, syms)(_prepare(text))
    if isinstance(v, Function):
        if v.is_zero():
            return Differential(curve, curve.zero)
        raise InputError(f"{text!r} is a function, not a 1-form (multiply by d{curve.var})")
    return Differential(curve, v.coeff)


def format_form(w) -> str:
    if w.coeff.is_zero():
        return "0"
    s = format_function(w.coeff)
    if " " in s:
        s = f"({s})"
    return f"{s} * d{w.curve.var}"


# -- operators ---------------------------------------------------------------

class _OperatorEvaluator(_Evaluator):
    def _op(self, v):
        from .dmodule import DiffOperator

        return v if isinstance(v, DiffOperator) else DiffOperator.multiplication(v)

    def scale(self, v, k):
        return v * k if isinstance(v, Function) else self._op(v).scale(k)

    def add(self, a, b):
        if isinstance(a, Function) and isinstance(b, Function):
            return a + b
        return self._op(a) + self._op(b)

    def mul(self, a, b):
        if isinstance(a, Function) and isinstance(b, Function):
            return a * b
        return self._op(a) @ self._op(b)

    def div(self, a, b):
        if not isinstance(b, Function):
            raise InputError("cannot divide by an operator")
        if isinstance(a, Function):
            return super().div(a, b)
        raise InputError("write coefficients on the left of ∂")

    def power(self, a, n):
        if isinstance(a, Function):
            return super().power(a, n)
        if n < 0:
            raise InputError("negative power of an operator")
        return self._op(a).power(n)


def parse_operator(curve: Curve, text: str):
    from .dmodule import DiffOperator

    syms = _function_symbols(curve)
    syms["d"] = lambda: DiffOperator.partial(curve)
    v = _OperatorEvaluator(curve, syms)(_prepare(text))
    return v if isinstance(v, DiffOperator) else DiffOperator.multiplication(v)


def format_operator(op) -> str:
    parts = []
    for i in range(op.order, -1, -1):
        g = op.coeff(i)
        if g.is_zero():
            continue
        if i == 0:
            parts.append(format_function(g))
            continue
        mono = "d" if i == 1 else f"d^{i}"
        s = format_function(g)
        if s == "1":
            parts.append(mono)
        elif s == "-1":
            parts.append(f"-{mono}")
        else:
            parts.append(f"({s})*{mono}")
    return " + ".join(parts) if parts else "0"


# -- divisors ----------------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(\([^()]*\)|\[[^\[\]]*\])\s*")


def parse_divisor(curve: Curve, text: str, *, completion: bool = False):
    from .divisors import CompletionDivisor, Divisor

    s = text.strip()
    cls = CompletionDivisor if completion else Divisor
    if s in ("", "0"):
        return cls()
    terms, pos = [], 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse divisor {text!r} near {s[pos:]!r}")
        if m.group(1) is None and terms:
            raise InputError(f"missing '+' or '-' between divisor terms in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        n = int(m.group(2)) if m.group(2) else 1
        P = parse_point(curve, m.group(3), allow_puncture=completion)
        terms.append((P, sign * n))
        pos = m.end()
    return cls(terms)


def format_divisor(D) -> str:
    terms = list(D.items())
    if not terms:
        return "0"
    out = ""
    for i, (P, n) in enumerate(terms):
        body = f"{abs(n)}*{P}"
        if i == 0:
            out = body if n > 0 else f"-{body}"
        else:
            out += f" {'+' if n > 0 else '-'} {body}"
    return out


# -- connection classes ------------------------------------------------------

def parse_class_pair(curve: Curve, text: str):
    """``"<divisor>; <form>"`` as (Divisor, Differential)."""
    if ";" not in text:
        raise InputError(f"class input must look like 'divisor; form', got {text!r}")
    dtext, ftext = text.split(";", 1)
    return parse_divisor(curve, dtext), parse_form(curve, ftext)


def check_same_curve(*objs) -> Curve:
    curves = {o.curve for o in objs}
    if len(curves) != 1:
        raise CurveMismatchError("objects live on different curves")
    return curves.pop()


def as_rational_string(v: Fraction) -> str:
    return str(Fraction(v))
