"""Expression parser, printers, and evaluators for the CLI surface.

Grammar (whitespace-insensitive, standard precedence):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-'] INT]
    atom   := RATIONAL | INT | VAR | NAME '(' args ')' | '(' expr ')'

An integer literal immediately followed by '/' and another integer is a
rational literal (p/r), unless the second integer starts an exponent
(so 3/4^2 still parses as 3/(4^2)).  Call arguments may be separated by
',' or ';' interchangeably; the canonical printer uses ';' to group the
3phi2 parameter blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import Rational, RationalFunction, rational, SYMBOLIC_VARS
from .errors import ConstraintViolation, ParseError
from .fine import Phi32Spec, andrews_bell_F, fine_N, phi32, r1N
from .qkernel import qbinom, qpoch
from .series import TruncatedQSeries, qpoch_inf, series_from_ratfunc

VAR_NAMES = ("q", "a", "b", "t")

# function name -> (min arity, max arity); the final slot(s) of each are
# integer-typed, checked at evaluation time.
CALLS = {
    "poch": (2, 3),
    "pochinf": (1, 1),
    "qbinom": (2, 3),
    "fine": (1, 1),
    "abfine": (1, 1),
    "r1n": (1, 1),
    "phi32": (7, 7),
}


@dataclass(frozen=True)
class Num:
    value: Rational


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


Expr = Union[Num, Var, Neg, Bin, Pow, Call]


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_SYMBOLS = "+-*/^(),;"


def _tokenize(text: str) -> list[tuple]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead: int = 0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok[0] != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[0]}", tok[2], (kind,))
        return self.next()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ParseError(f"unexpected {tok[0]}", tok[2], ("EOF",))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            left = Bin(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            left = Bin(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek()[0] == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[0] == "^":
            self.next()
            sign = 1
            if self.peek()[0] == "-":
                self.next()
                sign = -1
            tok = self.expect("INT")
            return Pow(base, sign * tok[1])
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        kind = tok[0]
        if kind == "INT":
            self.next()
            # rational literal p/r, unless the r starts an exponentiation
            if (self.peek()[0] == "/" and self.peek(1)[0] == "INT"
                    and self.peek(2)[0] != "^"):
                self.next()
                den = self.next()[1]
                if den == 0:
                    raise ParseError("zero denominator in rational literal", tok[2])
                return Num(rational(tok[1], den))
            return Num(rational(tok[1]))
        if kind == "NAME":
            self.next()
            name = tok[1]
            if self.peek()[0] == "(":
                return self.call(name, tok[2])
            if name in VAR_NAMES:
                return Var(name)
            raise ParseError(f"unknown variable {name!r}", tok[2], VAR_NAMES)
        if kind == "(":
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {kind}", tok[2], ("INT", "NAME", "("))

    def call(self, name: str, offset: int) -> Expr:
        if name not in CALLS:
            raise ParseError(f"unknown function {name!r}", offset, tuple(sorted(CALLS)))
        self.expect("(")
        args = []
        if self.peek()[0] != ")":
            args.append(self.expr())
            while self.peek()[0] in (",", ";"):
                self.next()
                args.append(self.expr())
        self.expect(")")
        lo, hi = CALLS[name]
        if not (lo <= len(args) <= hi):
            raise ParseError(
                f"{name} takes {lo}" + (f"..{hi}" if hi != lo else "") +
                f" arguments, got {len(args)}", offset)
        return Call(name, tuple(args))


def parse(text: str) -> Expr:
    """Parse CLI expression text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printers
# ---------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _fmt_num(v: Rational) -> str:
    return str(v)


def print_expr(e: Expr) -> str:
    """Canonical text form; parse(print_expr(e)) reproduces the AST."""
    return _print(e, 0)


def _print(e: Expr, parent_prec: int) -> str:
    if isinstance(e, Num):
        text, prec = _fmt_num(e.value), _PREC_ATOM
        if "/" in text:
            prec = _PREC_MUL  # keeps literals unambiguous under powers
    elif isinstance(e, Var):
        text, prec = e.name, _PREC_ATOM
    elif isinstance(e, Neg):
        text, prec = "-" + _print(e.arg, _PREC_UNARY), _PREC_UNARY
    elif isinstance(e, Pow):
        exp = str(e.exp) if e.exp >= 0 else f"-{-e.exp}"
        text, prec = f"{_print(e.base, _PREC_ATOM)}^{exp}", _PREC_POW
    elif isinstance(e, Bin):
        if e.op in "+-":
            prec = _PREC_ADD
            text = f"{_print(e.left, prec)} {e.op} {_print(e.right, prec + 1)}"
        else:
            prec = _PREC_MUL
            text = f"{_print(e.left, prec)}{e.op}{_print(e.right, prec + 1)}"
    elif isinstance(e, Call):
        if e.func == "phi32":
            u = ", ".join(_print(x, 0) for x in e.args[:3])
            l = ", ".join(_print(x, 0) for x in e.args[3:5])
            text = f"phi32({u}; {l}; {_print(e.args[5], 0)}; {_print(e.args[6], 0)})"
        else:
            text = f"{e.func}({', '.join(_print(x, 0) for x in e.args)})"
        prec = _PREC_ATOM
    else:
        raise TypeError(f"not an expression node: {e!r}")
    if prec < parent_prec:
        return f"({text})"
    return text


def latex_expr(e: Expr) -> str:
    """LaTeX form mirroring standard q-series notation."""
    if isinstance(e, Num):
        v = e.value
        if v.denominator == 1:
            return str(v)
        sign = "-" if v < 0 else ""
        return f"{sign}\\tfrac{{{abs(v.numerator)}}}{{{v.denominator}}}"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return "-" + latex_expr(e.arg)
    if isinstance(e, Pow):
        return f"{{{latex_expr(e.base)}}}^{{{e.exp}}}"
    if isinstance(e, Bin):
        if e.op == "/":
            return f"\\frac{{{latex_expr(e.left)}}}{{{latex_expr(e.right)}}}"
        if e.op == "*":
            return f"{latex_expr(e.left)} {latex_expr(e.right)}"
        right = latex_expr(e.right)
        if e.op == "-" and isinstance(e.right, Bin) and e.right.op in "+-":
            right = f"\\left({right}\\right)"
        return f"{latex_expr(e.left)} {e.op} {right}"
    if isinstance(e, Call):
        args = e.args
        if e.func == "poch":
            base = "q" if len(args) == 2 else f"q^{{{latex_expr(args[2])}}}"
            return f"\\left({latex_expr(args[0])};{base}\\right)_{{{latex_expr(args[1])}}}"
        if e.func == "pochinf":
            return f"\\left({latex_expr(args[0])};q\\right)_{{\\infty}}"
        if e.func == "qbinom":
            base = "q" if len(args) == 2 else f"q^{{{latex_expr(args[2])}}}"
            return (f"\\begin{{bmatrix}}{latex_expr(args[0])}\\\\{latex_expr(args[1])}"
                    f"\\end{{bmatrix}}_{{{base}}}")
        if e.func == "fine":
            return f"F_{{{latex_expr(args[0])}}}(a,b;t)"
        if e.func == "abfine":
            return f"F(a,b,t,{latex_expr(args[0])})"
        if e.func == "r1n":
            return f"R_{{1,{latex_expr(args[0])}}}(a,b,t)"
        if e.func == "phi32":
            u = ",".join(latex_expr(x) for x in args[:3])
            l = ",".join(latex_expr(x) for x in args[3:5])
            return (f"{{}}_{{3}}\\phi_{{2}}\\left[\\begin{{matrix}}{u}\\\\{l}"
                    f"\\end{{matrix}};q,{latex_expr(args[5])}\\right]_{{{latex_expr(args[6])}}}")
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Evaluators
# ---------------------------------------------------------------------------


def _int_arg(e: Expr, what: str) -> int:
    neg = False
    while isinstance(e, Neg):
        neg = not neg
        e = e.arg
    if isinstance(e, Num) and e.value.denominator == 1:
        v = int(e.value)
        return -v if neg else v
    raise ConstraintViolation(f"{what} must be an integer literal")


def eval_expr(e: Expr) -> RationalFunction:
    """Exact rational-function value of an AST."""
    if isinstance(e, Num):
        return RationalFunction.const(e.value)
    if isinstance(e, Var):
        return SYMBOLIC_VARS[e.name]
    if isinstance(e, Neg):
        return -eval_expr(e.arg)
    if isinstance(e, Pow):
        return eval_expr(e.base) ** e.exp
    if isinstance(e, Bin):
        left, right = eval_expr(e.left), eval_expr(e.right)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        return left / right
    if isinstance(e, Call):
        args = e.args
        if e.func == "poch":
            m = _int_arg(args[2], "poch base exponent") if len(args) == 3 else 1
            return qpoch(eval_expr(args[0]), _int_arg(args[1], "poch length"), m)
        if e.func == "pochinf":
            raise ConstraintViolation(
                "pochinf is a series object; evaluate it with the series command")
        if e.func == "qbinom":
            m = _int_arg(args[2], "qbinom base exponent") if len(args) == 3 else 1
            return RationalFunction(qbinom(_int_arg(args[0], "qbinom N"),
                                           _int_arg(args[1], "qbinom n"), m))
        if e.func == "fine":
            return fine_N(_int_arg(args[0], "fine order"))
        if e.func == "abfine":
            return andrews_bell_F(_int_arg(args[0], "abfine order"))
        if e.func == "r1n":
            return r1N(_int_arg(args[0], "r1n order"))
        if e.func == "phi32":
            spec = Phi32Spec(
                tuple(eval_expr(x) for x in args[:3]),
                tuple(eval_expr(x) for x in args[3:5]),
                eval_expr(args[5]), _int_arg(args[6], "phi32 term count"))
            return phi32(spec)
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr_series(e: Expr, D: int) -> TruncatedQSeries:
    """Evaluate an AST in truncated q-series arithmetic to order D."""
    if isinstance(e, Neg):
        return -eval_expr_series(e.arg, D)
    if isinstance(e, Pow):
        base = eval_expr_series(e.base, D)
        n = e.exp
        if n < 0:
            base = base.inverse()
            n = -n
        out = TruncatedQSeries.const(1, D)
        for _ in range(n):
            out = out * base
        return out
    if isinstance(e, Bin):
        left, right = eval_expr_series(e.left, D), eval_expr_series(e.right, D)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        return left / right
    if isinstance(e, Call) and e.func == "pochinf":
        return qpoch_inf(eval_expr(e.args[0]), D)
    return series_from_ratfunc(eval_expr(e), D)
