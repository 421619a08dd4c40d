"""Expression grammar, printers, and evaluators."""

import pytest

from qfine.algebra import RationalFunction, a, b, q, rational, t
from qfine.errors import ConstraintViolation, ParseError
from qfine.fine import andrews_bell_F, fine_N, r1N
from qfine.parser import (Bin, Call, Neg, Num, Pow, Var, eval_expr,
                          eval_expr_series, latex_expr, parse, print_expr)
from qfine.qkernel import qpoch
from qfine.series import fine_series, series_from_ratfunc


def test_call_over_division_shape():
    ast = parse("poch(a*q, 3)/poch(b*q, 3)")
    assert ast == Bin("/", Call("poch", (Bin("*", Var("a"), Var("q")), Num(rational(3)))),
                      Call("poch", (Bin("*", Var("b"), Var("q")), Num(rational(3)))))


def test_fine_call_shape():
    assert parse("fine(4)") == Call("fine", (Num(rational(4)),))


def test_unbalanced_paren_offset():
    text = "((1-a"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.offset == len(text)
    assert ")" in err.value.expected


def test_unknown_character_offset():
    with pytest.raises(ParseError) as err:
        parse("1 + $")
    assert err.value.offset == 4


def test_whitespace_insensitivity():
    assert parse("1+a*q^2") == parse(" 1 + a * q ^ 2 ")


def test_rational_literal_folding():
    assert parse("1/2") == Num(rational(1, 2))
    assert parse("1 / 2") == Num(rational(1, 2))
    # but an exponent on the denominator keeps division semantics
    ast = parse("3/4^2")
    assert ast == Bin("/", Num(rational(3)), Pow(Num(rational(4)), 2))
    assert eval_expr(ast) == rational(3, 16)


def test_precedence_pow_over_unary_minus():
    assert parse("-a^2") == Neg(Pow(Var("a"), 2))
    assert eval_expr(parse("-a^2")) == -(a * a)


def test_negative_exponent():
    assert eval_expr(parse("q^-2")) == 1 / (q * q)


def test_left_associativity():
    ast = parse("1 - a - b")
    assert ast == Bin("-", Bin("-", Num(rational(1)), Var("a")), Var("b"))
    assert eval_expr(parse("8/4/2")) == 1


_CORPUS = [
    "1", "q", "a", "b", "t", "1/2", "-3", "-1/7",
    "1 + q", "1 - q - q^2", "a*q + b*t", "a - b - t", "q^3", "q^-1", "t^12",
    "-a", "-(a + b)", "-a^2", "(1 + q)*(1 - q)", "a*(b + t)",
    "1/(1 - t)", "(1 - a*q)/(1 - b*q)", "q/(t - q)", "2/3*a",
    "poch(a, 2)", "poch(a*q, 3)", "poch(q, 4, 2)", "poch(t/q, 1)",
    "pochinf(q)", "pochinf(a*q)",
    "qbinom(4, 2)", "qbinom(6, 3, 2)",
    "fine(0)", "fine(3)", "abfine(2)", "r1n(1)",
    "phi32(a, b, t; a*q, b*q; q; 3)",
    "phi32(q^-2, q, a*q; b*q, q^-1/t; q; 2)",
    "fine(1) - (1 + (1 - q)*(1 - a*q)*t/((1 - b*q)*(1 - t)))",
    "poch(a*q, 2)/poch(b*q, 2) + r1n(2)",
    "1 + 2*q + 3*q^2 + 4*q^3", "(a + b)^3", "(1/2)*q", "t*(1 - 1/2*q)",
    "qbinom(3, 1)*poch(q, 1) - fine(1)*abfine(1)",
    "-(fine(2) - abfine(2))", "pochinf(t)*q - 1",
    "phi32(1, 1, 1; a, b; 1/2; 0)", "poch(a, 0)", "qbinom(0, 0)",
    "a^2*b^3*t^4*q^5", "(((q)))", "1 - (a - b)",
]


@pytest.mark.parametrize("text", _CORPUS)
def test_roundtrip_corpus(text):
    ast = parse(text)
    printed = print_expr(ast)
    assert parse(printed) == ast


def test_eval_fine_zero():
    assert eval_expr(parse("fine(0)")).is_one


def test_eval_poch():
    assert eval_expr(parse("poch(a*q, 2)")) == qpoch(a * q, 2)


def test_eval_fine_one_difference():
    expr = "fine(1) - (1 + (1-q)*(1-a*q)*t/((1-b*q)*(1-t)))"
    assert eval_expr(parse(expr)).is_zero


def test_eval_builders_delegate():
    assert eval_expr(parse("abfine(2)")) == andrews_bell_F(2)
    assert eval_expr(parse("r1n(2)")) == r1N(2)
    assert eval_expr(parse("fine(3)")) == fine_N(3)


def test_eval_phi32_matches_fine():
    expr = "phi32(q^-3, q, a*q; b*q, q^-2/t; q; 3)"
    assert eval_expr(parse(expr)) == fine_N(3)


def test_int_argument_validation():
    with pytest.raises(ConstraintViolation):
        eval_expr(parse("fine(1/2)"))
    with pytest.raises(ConstraintViolation):
        eval_expr(parse("poch(a, t)"))


def test_pochinf_not_rational():
    with pytest.raises(ConstraintViolation):
        eval_expr(parse("pochinf(q)"))


def test_arity_errors():
    with pytest.raises(ParseError):
        parse("poch(a)")
    with pytest.raises(ParseError):
        parse("fine(1, 2)")
    with pytest.raises(ParseError):
        parse("nosuch(1)")


def test_eval_series_mixed():
    s = eval_expr_series(parse("pochinf(q) * fine(2)"), 4)
    from qfine.series import qpoch_inf
    assert s == qpoch_inf(q, 4) * series_from_ratfunc(fine_N(2), 4)


def test_eval_series_division_and_pow():
    s = eval_expr_series(parse("1/(1 - t*q)^2"), 3)
    for k in range(4):
        assert s.coefficient(k) == (k + 1) * t ** k


def test_latex_printer():
    assert latex_expr(parse("poch(a*q, 3)")) == "\\left(a q;q\\right)_{3}"
    assert latex_expr(parse("qbinom(4, 2)")) == "\\begin{bmatrix}4\\\\2\\end{bmatrix}_{q}"
    assert latex_expr(parse("fine(4)")) == "F_{4}(a,b;t)"
    assert latex_expr(parse("pochinf(b*q)")) == "\\left(b q;q\\right)_{\\infty}"
    assert "\\phi" in latex_expr(parse("phi32(a, b, t; a*q, b*q; q; 3)"))
    assert latex_expr(parse("1/2")) == "\\tfrac{1}{2}"


def test_print_expr_canonical_examples():
    assert print_expr(parse("a*q+1")) == "a*q + 1"
    assert print_expr(parse("-(a+b)*q")) == "-(a + b)*q"
    assert print_expr(parse("(1/2)^2")) == "(1/2)^2"
