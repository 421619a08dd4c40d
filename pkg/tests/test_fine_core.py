"""Constructors for the named finite series objects."""

import pytest

from qfine.algebra import RationalFunction, a, b, q, rational, substitute, t
from qfine.errors import IdenticallyZeroDenominator
from qfine.fine import (Phi32Spec, andrews_bell_F, fine_N, fine_args,
                        partial_fraction_rhs, phi32, r1N, rogers_fine_finite_rhs)
from qfine.qkernel import qpoch

ZERO = RationalFunction.const(0)


def test_fine_first_orders():
    assert fine_N(0).is_one
    assert fine_N(1) == 1 + (1 - q) * (1 - a * q) * t / ((1 - b * q) * (1 - t))


def test_fine_golden_canonical_form():
    assert str(fine_N(1)) == ("(1 - q*t - b*q + b*q*t - a*q*t + a*q^2*t)"
                              "/(1 - t - b*q + b*q*t)")


def test_fine_b_one_specialization():
    for N in range(7):
        assert substitute(fine_N(N), "b", 1) == qpoch(a * t * q, N) / qpoch(t, N)


def test_fine_at_t_zero():
    for N in range(11):
        assert substitute(fine_N(N), "t", 0).is_one


def test_fine_denominator_divides_poch_product():
    for N in range(9):
        product = (qpoch(b * q, N) * qpoch(t, N)).as_polynomial()
        quotient = RationalFunction(product) / RationalFunction(fine_N(N).den)
        assert quotient.is_polynomial()


def test_fine_numeric_context_matches_symbolic():
    pt = {"q": rational(1, 2), "a": rational(2, 3), "b": rational(-1, 5), "t": rational(3, 7)}
    for N in range(6):
        assert fine_N(N, pt) == fine_N(N).eval(pt)


def test_fine_args_substitution_routes():
    for N in range(5):
        shifted = fine_args(N, a * q, b * q, t * q)
        manual = substitute(substitute(substitute(fine_N(N), "a", a * q), "b", b * q), "t", t * q)
        assert shifted == manual


def test_andrews_bell_small():
    assert andrews_bell_F(0).is_one
    assert andrews_bell_F(1) == 1 + (1 - a * q) * t / (1 - b * q)


def test_fine_and_andrews_bell_differ():
    # same leading structure, different functions for N >= 1
    assert fine_N(2) != andrews_bell_F(2)
    assert substitute(fine_N(2), "t", 0) == substitute(andrews_bell_F(2), "t", 0)


def test_r1n_needs_positive_order():
    with pytest.raises(ValueError):
        r1N(0)


def test_r1n_closed_form():
    # the printed remainder telescopes: R_{1,N} = -t^{N+1} (aq)_{N+1} / ((1-t)(bq)_N)
    for N in range(1, 7):
        closed = -t ** (N + 1) * qpoch(a * q, N + 1) / ((1 - t) * qpoch(b * q, N))
        assert r1N(N) == closed


def test_r1n_golden_canonical_form():
    assert str(r1N(2)) == (
        "(t^3 - a*q*t^3 - a*q^2*t^3 - a*q^3*t^3 + a^2*q^3*t^3 + a^2*q^4*t^3 "
        "+ a^2*q^5*t^3 - a^3*q^6*t^3)"
        "/(-1 + t + b*q - b*q*t + b*q^2 - b*q^2*t - b^2*q^3 + b^2*q^3*t)")


def test_r1n_rearrangement_of_functional_equation():
    # remainder defined by the (aq, bq, tq; N-1) form of the truncated
    # functional equation
    for N in range(1, 5):
        w = (1 - a * q) * (b - a * t * q) * t * q / ((1 - b * q) * (1 - t))
        shifted = andrews_bell_F(N - 1)
        shifted = substitute(substitute(substitute(shifted, "a", a * q), "b", b * q), "t", t * q)
        rearranged = andrews_bell_F(N) - (1 - a * t * q) / (1 - t) - w * shifted
        assert r1N(N) == rearranged


def test_phi32_m_zero():
    spec = Phi32Spec((a, b, t), (a * q, b * q), q, 0)
    assert phi32(spec).is_one


def test_phi32_equals_fine():
    for N in range(7):
        spec = Phi32Spec((q ** (-N), q, a * q), (b * q, q ** (1 - N) / t), q, N)
        assert phi32(spec) == fine_N(N)


def test_phi32_termination_beyond_N():
    N = 4
    base = Phi32Spec((q ** (-N), q, a * q), (b * q, q ** (1 - N) / t), q, N)
    extended = Phi32Spec(base.upper, base.lower, base.z, N + 3)
    assert phi32(extended) == phi32(base)


def test_phi32_zero_denominator_reported():
    # a lower parameter equal to 1 kills (l)_n from n = 1 on
    spec = Phi32Spec((a, b, t), (RationalFunction.const(1), b * q), q, 2)
    with pytest.raises(IdenticallyZeroDenominator):
        phi32(spec)


def test_phi32_arity_validation():
    with pytest.raises(ValueError):
        Phi32Spec((a, b), (a, b), q, 1)


def test_partial_fraction_matches_fine():
    for N in range(7):
        assert partial_fraction_rhs(N) == fine_N(N)


def test_partial_fraction_survives_a_zero():
    for N in range(5):
        lhs = substitute(fine_N(N), "a", 0)
        rhs = fine_args(N, ZERO, b, t)
        assert lhs == rhs
        assert substitute(partial_fraction_rhs(N), "a", 0) == lhs


def test_rogers_fine_matches_fine():
    for N in range(7):
        assert rogers_fine_finite_rhs(N) == fine_N(N)


def test_rogers_fine_reciprocal_convention_at_zero():
    # (atq^2)_{-1} = 1/(1 - atq) makes the N = 0 case collapse to 1
    assert rogers_fine_finite_rhs(0).is_one


def test_rogers_fine_b_to_t_and_a_eq_b():
    for N in (1, 2, 3):
        lhs = substitute(fine_N(N), "b", t)
        rhs = substitute(rogers_fine_finite_rhs(N), "b", t)
        assert lhs == rhs
        lhs2 = substitute(fine_N(N), "b", a)
        rhs2 = substitute(rogers_fine_finite_rhs(N), "b", a)
        assert lhs2 == rhs2
