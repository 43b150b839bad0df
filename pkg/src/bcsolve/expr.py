"""Expression trees, the modelling language, and natural interval evaluation.

Grammar (equalities only)::

    problem    := (decl | constraint)* ;
    decl       := "var" IDENT "in" "[" BOUND "," BOUND "]" ";" ;
    constraint := expr "=" expr ";" ;
    expr       := term (("+"|"-") term)* ;
    term       := factor (("*"|"/") factor)* ;
    factor     := atom ("^" INTEGER)? ;
    atom       := NUMBER | IDENT | ("exp"|"cos"|"sqrt") "(" expr ")"
                | "(" expr ")" | "-" factor ;

``BOUND`` is a NUMBER with an optional sign, or ``inf``. ``#`` starts a
comment running to the end of the line.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Union

from . import interval as ia
from .box import Box
from .interval import Interval, enclose_decimal

UNARY_OPS = ("neg", "exp", "cos", "sqrt")
BINARY_OPS = ("add", "sub", "mul", "div")
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/"}
_FUNCS = ("exp", "cos", "sqrt")
_KEYWORDS = {"var", "in", "inf", *_FUNCS}


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """Literal constant; ``value`` encloses the decimal ``text``."""

    value: Interval
    text: str

    @classmethod
    def of(cls, text: str | int | float) -> Const:
        text = text if isinstance(text, str) else repr(text)
        value = enclose_decimal(text)
        if value.lo < 0:
            raise ValueError("constants are unsigned; wrap in Unary('neg', ...)")
        return cls(value, text)


@dataclass(frozen=True)
class Unary:
    op: str
    child: Expr


@dataclass(frozen=True)
class Binary:
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class PowInt:
    child: Expr
    n: int


Expr = Union[Var, Const, Unary, Binary, PowInt]


@dataclass(frozen=True)
class Constraint:
    """``lhs = rhs``."""

    lhs: Expr
    rhs: Expr

    @property
    def scope(self) -> tuple[str, ...]:
        """Variable names in order of first occurrence."""
        return tuple(dict.fromkeys(_var_names(self.lhs) + _var_names(self.rhs)))

    def __str__(self):
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


@dataclass(frozen=True)
class Problem:
    variables: tuple[str, ...]
    domains: Box
    constraints: tuple[Constraint, ...] = field(default=())

    def __post_init__(self):
        known = set(self.variables)
        for c in self.constraints:
            missing = [v for v in c.scope if v not in known]
            if missing:
                raise ValueError(f"undeclared variable(s) {missing} in {c}")
            if not c.scope:
                raise ValueError(f"constraint without variables: {c}")
        if set(self.domains) != known:
            raise ValueError("domains must cover exactly the declared variables")


# -- helpers for building trees in code ---------------------------------------

def var(name: str) -> Var:
    return Var(name)


def num(x: str | int | float) -> Expr:
    """Literal; negative numbers become a negated constant."""
    text = x if isinstance(x, str) else repr(x)
    if text.startswith("-"):
        return Unary("neg", Const.of(text[1:]))
    return Const.of(text)


def add(a: Expr, b: Expr) -> Binary:
    return Binary("add", a, b)


def sub(a: Expr, b: Expr) -> Binary:
    return Binary("sub", a, b)


def mul(a: Expr, b: Expr) -> Binary:
    return Binary("mul", a, b)


def div(a: Expr, b: Expr) -> Binary:
    return Binary("div", a, b)


def neg(a: Expr) -> Unary:
    return Unary("neg", a)


def exp(a: Expr) -> Unary:
    return Unary("exp", a)


def cos(a: Expr) -> Unary:
    return Unary("cos", a)


def sqrt(a: Expr) -> Unary:
    return Unary("sqrt", a)


def power(a: Expr, n: int) -> Expr:
    return a if n == 1 else PowInt(a, n)


def sum_of(terms: list[Expr]) -> Expr:
    out = terms[0]
    for t in terms[1:]:
        out = Binary("add", out, t)
    return out


# -- traversal -------------------------------------------------------------------

def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, (Unary, PowInt)):
        return (e.child,)
    return ()


def iter_nodes(e: Expr) -> Iterator[Expr]:
    stack = [e]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def _var_names(e: Expr) -> list[str]:
    return [n.name for n in iter_nodes(e) if isinstance(n, Var)]


def has_vars(e: Expr) -> bool:
    return any(isinstance(n, Var) for n in iter_nodes(e))


def node_count(e: Expr | Constraint) -> int:
    """Tree size; a constraint counts both sides plus its ``=`` node."""
    if isinstance(e, Constraint):
        return node_count(e.lhs) + node_count(e.rhs) + 1
    return sum(1 for _ in iter_nodes(e))


def occurrences(c: Constraint) -> dict[str, int]:
    return dict(Counter(_var_names(c.lhs) + _var_names(c.rhs)))


def is_admissible(c: Constraint) -> bool:
    """True iff no variable occurs more than once."""
    return all(k == 1 for k in occurrences(c).values())


# -- evaluation ------------------------------------------------------------------

def evaluate(e: Expr, d: Box | dict) -> Interval:
    """Natural interval extension of ``e`` over the box ``d``."""
    if isinstance(e, Var):
        return d[e.name]
    if isinstance(e, Const):
        return e.value
    if isinstance(e, PowInt):
        return ia.pow_int(evaluate(e.child, d), e.n)
    if isinstance(e, Unary):
        x = evaluate(e.child, d)
        return _UNARY_FN[e.op](x)
    left = evaluate(e.left, d)
    right = evaluate(e.right, d)
    return _BINARY_FN[e.op](left, right)


_UNARY_FN = {"neg": ia.neg, "exp": ia.exp, "cos": ia.cos, "sqrt": ia.sqrt}
_BINARY_FN = {"add": ia.add, "sub": ia.sub, "mul": ia.mul, "div": ia.div}


def evaluate_point(e: Expr, point: dict[str, float]) -> float:
    """Plain float evaluation, constants at their midpoints (for tests)."""
    import math

    if isinstance(e, Var):
        return point[e.name]
    if isinstance(e, Const):
        try:
            return float(e.text)
        except ValueError:
            return ia.midpoint(e.value)
    if isinstance(e, PowInt):
        return evaluate_point(e.child, point) ** e.n
    if isinstance(e, Unary):
        x = evaluate_point(e.child, point)
        return {"neg": lambda v: -v, "exp": math.exp, "cos": math.cos,
                "sqrt": math.sqrt}[e.op](x)
    a = evaluate_point(e.left, point)
    b = evaluate_point(e.right, point)
    if e.op == "add":
        return a + b
    if e.op == "sub":
        return a - b
    if e.op == "mul":
        return a * b
    return a / b


def fold_constants(e: Expr) -> Expr:
    """Replace variable-free subtrees by a single constant enclosure."""
    if isinstance(e, (Var, Const)):
        return e
    if not has_vars(e):
        value = evaluate(e, {})
        text = repr(value.lo) if value.lo == value.hi else str(value)
        return Const(value, text)
    if isinstance(e, PowInt):
        return PowInt(fold_constants(e.child), e.n)
    if isinstance(e, Unary):
        return Unary(e.op, fold_constants(e.child))
    return Binary(e.op, fold_constants(e.left), fold_constants(e.right))


def fold_problem(p: Problem) -> Problem:
    cons = tuple(Constraint(fold_constants(c.lhs), fold_constants(c.rhs))
                 for c in p.constraints)
    return Problem(p.variables, p.domains, cons)


# -- printing --------------------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, Binary):
        return 1 if e.op in ("add", "sub") else 2
    if isinstance(e, Unary) and e.op == "neg":
        return 3
    if isinstance(e, PowInt):
        return 4
    return 5


def to_text(e: Expr) -> str:
    """Render ``e`` so that ``parse`` rebuilds the identical tree."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return e.text
    if isinstance(e, PowInt):
        return f"{_wrap(e.child, _prec(e.child) < 5)}^{e.n}"
    if isinstance(e, Unary):
        if e.op == "neg":
            return "-" + _wrap(e.child, _prec(e.child) < 4)
        return f"{e.op}({to_text(e.child)})"
    level = _prec(e)
    left = _wrap(e.left, _prec(e.left) < level)
    right = _wrap(e.right, _prec(e.right) <= level)
    return f"{left} {_SYMBOL[e.op]} {right}"


def _wrap(e: Expr, parens: bool) -> str:
    s = to_text(e)
    return f"({s})" if parens else s


def _fmt_bound(x: float) -> str:
    if x == float("inf"):
        return "inf"
    if x == float("-inf"):
        return "-inf"
    return repr(x)


def problem_to_text(p: Problem) -> str:
    lines = [f"var {v} in [{_fmt_bound(p.domains[v].lo)},{_fmt_bound(p.domains[v].hi)}];"
             for v in p.variables]
    lines += [f"{c};" for c in p.constraints]
    return "\n".join(lines) + "\n"


# -- parsing ---------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<rel><=|>=|!=|<|>)
  | (?P<punct>[\[\],;=+\-*/^()])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "rel":
            raise ParseError(f"only equations are supported, found {m.group()!r}", line, col)
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.uses: list[tuple[str, _Tok]] = []

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        return ParseError(f"{msg}, found {found!r}", tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("punct", "ident") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> _Tok:
        tok = self.tok
        if not self.accept(text):
            raise self.error(f"expected {text!r}")
        return tok

    def problem(self) -> Problem:
        names: list[str] = []
        domains: dict[str, Interval] = {}
        cons: list[Constraint] = []
        while self.tok.kind != "eof":
            if self.tok.kind == "ident" and self.tok.text == "var":
                tok, dom = self.decl()
                if tok.text in domains:
                    raise ParseError(f"variable {tok.text!r} declared twice", tok.line, tok.col)
                names.append(tok.text)
                domains[tok.text] = dom
            else:
                start = self.tok
                c = self.constraint()
                if not c.scope:
                    raise ParseError("constraint has no variables", start.line, start.col)
                cons.append(c)
        for name, tok in self.uses:
            if name not in domains:
                raise ParseError(f"undeclared variable {name!r}", tok.line, tok.col)
        return Problem(tuple(names), Box(domains), tuple(cons))

    def decl(self) -> tuple[_Tok, Interval]:
        self.expect("var")
        tok = self.tok
        if tok.kind != "ident" or tok.text in _KEYWORDS:
            raise self.error("expected a variable name")
        self.i += 1
        self.expect("in")
        self.expect("[")
        lo = self.bound()[0]
        self.expect(",")
        hi = self.bound()[1]
        self.expect("]")
        self.expect(";")
        if lo > hi or lo == float("inf") or hi == float("-inf"):
            raise ParseError(f"empty domain for {tok.text!r}", tok.line, tok.col)
        return tok, Interval(lo, hi)

    def bound(self) -> tuple[float, float]:
        """Outward enclosure (lo, hi) of a signed decimal or infinity."""
        negative = self.accept("-")
        if not negative:
            self.accept("+")
        tok = self.tok
        if tok.kind == "ident" and tok.text == "inf":
            self.i += 1
            x = float("-inf") if negative else float("inf")
            return x, x
        if tok.kind != "num":
            raise self.error("expected a number")
        self.i += 1
        iv = enclose_decimal(tok.text)
        return (-iv.hi, -iv.lo) if negative else (iv.lo, iv.hi)

    def constraint(self) -> Constraint:
        lhs = self.expr()
        self.expect("=")
        rhs = self.expr()
        self.expect(";")
        return Constraint(lhs, rhs)

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.accept("+"):
                e = Binary("add", e, self.term())
            elif self.accept("-"):
                e = Binary("sub", e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            if self.accept("*"):
                e = Binary("mul", e, self.factor())
            elif self.accept("/"):
                e = Binary("div", e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        e = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind == "punct" and tok.text == "-":
                raise self.error("negative exponent")
            if tok.kind != "num":
                raise self.error("expected an integer exponent")
            if not tok.text.isdigit():
                raise self.error("non-integer exponent")
            n = int(tok.text)
            if n < 1:
                raise self.error("exponent must be at least 1")
            self.i += 1
            e = power(e, n)
        return e

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Const(enclose_decimal(tok.text), tok.text)
        if tok.kind == "ident":
            if tok.text in _FUNCS:
                self.i += 1
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Unary(tok.text, e)
            if tok.text in _KEYWORDS:
                raise self.error("unexpected keyword")
            self.i += 1
            self.uses.append((tok.text, tok))
            return Var(tok.text)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("-"):
            return Unary("neg", self.factor())
        raise self.error("expected an expression")


def parse(text: str) -> Problem:
    """Parse a model; raises :class:`ParseError` with line and column."""
    return _Parser(text).problem()


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        raise p.error("trailing input")
    return e
