"""Truncated q-series arithmetic and the limit suite."""

import random

import pytest

from qfine.algebra import RationalFunction, a, b, q, rational, t
from qfine.errors import ConstraintViolation, NegativeQDegree, NonInvertibleAtQZero
from qfine.fine import andrews_bell_F, fine_N, rogers_fine_finite_rhs
from qfine.series import (TruncatedQSeries, fine_series, fine_series_args,
                          limit_ids, qpoch_inf, series_from_ratfunc,
                          stabilization_check, verify_limit)

ONE = RationalFunction.const(1)
ZERO = RationalFunction.const(0)


def _series(coeffs):
    return TruncatedQSeries(len(coeffs) - 1, [RationalFunction.const(c) if isinstance(c, int)
                                              else c for c in coeffs])


def test_constant_expansion():
    s = series_from_ratfunc(1 / (1 - t), 3)
    assert s.coefficient(0) == 1 / (1 - t)
    assert all(s.coefficient(k).is_zero for k in (1, 2, 3))


def test_geometric_expansion():
    s = series_from_ratfunc(1 / (1 - t * q), 4)
    for k in range(5):
        assert s.coefficient(k) == t ** k


def test_noninvertible_at_q_zero():
    with pytest.raises(NonInvertibleAtQZero):
        series_from_ratfunc(1 / q, 3)
    with pytest.raises(NonInvertibleAtQZero):
        series_from_ratfunc((1 + t) / (q - q * q), 2)


def test_qpoch_inf_examples():
    s = qpoch_inf(q, 2)
    assert [s.coefficient(k) for k in range(3)] == [ONE, -ONE, -ONE]
    s = qpoch_inf(a * q, 1)
    assert s.coefficient(0).is_one and s.coefficient(1) == -a
    s = qpoch_inf(t, 0)
    assert s.coefficient(0) == 1 - t


def test_qpoch_inf_rejects_negative_degree():
    with pytest.raises(NegativeQDegree):
        qpoch_inf(a / q, 3)


def test_qpoch_inf_telescoping():
    for A in (q, a * q, b * t * q ** 2):
        lhs = qpoch_inf(A * q, 6) * series_from_ratfunc(1 - A, 6)
        assert lhs == qpoch_inf(A, 6)


def test_series_ring_laws():
    rng = random.Random(17)

    def rand_series(order=5):
        return TruncatedQSeries(order, [
            RationalFunction.const(rational(rng.randint(-5, 5), rng.randint(1, 4)))
            * (t ** rng.randint(0, 2)) for _ in range(order + 1)])

    for _ in range(25):
        x, y, z = rand_series(), rand_series(), rand_series()
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x


def test_series_inverse_and_division():
    s = series_from_ratfunc((1 - a * q) / (1 - t * q), 5)
    assert s * s.inverse() == TruncatedQSeries.const(1, 5)
    with pytest.raises(NonInvertibleAtQZero):
        _series([0, 1, 1]).inverse()


def test_truncation_coherence():
    f = (1 - a * q) * (1 + b * q ** 2) / ((1 - t * q) * (1 - b * q))
    for op in range(3):
        full = series_from_ratfunc(f, 8)
        assert full.truncate(4) == series_from_ratfunc(f, 4)
    g = fine_series(6)
    assert g.truncate(3) == fine_series(3)
    p = qpoch_inf(a * q, 7)
    assert p.truncate(2) == qpoch_inf(a * q, 2)


def test_fine_series_leading_coefficient():
    s = fine_series(4)
    assert s.coefficient(0) == 1 / (1 - t)


def test_fine_series_b_one_specialization():
    # at b = 1: F(a, 1; t) = (atq)_inf / (t)_inf
    D = 6
    s = fine_series(D)
    expected = qpoch_inf(a * t * q, D) / qpoch_inf(t, D)
    specialized = TruncatedQSeries(D, [c.substitute("b", 1) for c in s.coeffs])
    assert specialized == expected


def test_fine_series_at_t_zero():
    D = 5
    s = fine_series(D)
    at0 = TruncatedQSeries(D, [c.substitute("t", 0) for c in s.coeffs])
    assert at0 == TruncatedQSeries.const(1, D)


def test_oracle_triangle_rogers_fine_route():
    # two independent routes to the limiting function: the partial-fraction
    # series against the q-expansion of the finite Rogers-Fine side
    for D in (3, 5, 6):
        finite = rogers_fine_finite_rhs(D + 1)
        assert series_from_ratfunc(finite, D) == fine_series(D)


def test_fine_vs_truncated_sum_window():
    # the q-binomially weighted sum matches the limit exactly through
    # order N - 1; the plain truncated sum instead misses every
    # coefficient by terms of t-valuation >= N + 1 - k at q^k
    for N in (2, 4, 6):
        assert series_from_ratfunc(fine_N(N), N - 1) == fine_series(N - 1)
        diff = series_from_ratfunc(andrews_bell_F(N), N - 1) - fine_series(N - 1)
        for k in range(N):
            c = diff.coefficient(k)
            if not c.is_zero:
                t_val = min(m[3] for m in c.num.terms)
                assert t_val >= N + 1 - k, (N, k, c)


def test_stabilization_window_is_exactly_n_minus_one():
    # measured window: exact agreement for D <= N - 1, first deviation
    # always at the q^N coefficient
    for N in (1, 2, 3, 5):
        assert stabilization_check(N, N - 1)
        assert not stabilization_check(N, N)


@pytest.mark.parametrize("limit_id", limit_ids())
def test_limits_order_six(limit_id):
    assert verify_limit(limit_id, 6).outcome == "pass"


def test_limit_order_one_trivial():
    assert verify_limit("L41", 1).outcome == "pass"


def test_limit_validation():
    with pytest.raises(ConstraintViolation):
        verify_limit("L41", 0)
    with pytest.raises(ConstraintViolation):
        verify_limit("NOPE", 4)


def test_fine_series_args_exchange_law():
    # F(a, b; t) = (1-b)/(1-t) F(at/b, t; b) at the series level
    D = 5
    lhs = fine_series(D)
    rhs = series_from_ratfunc((1 - b) / (1 - t), D) * fine_series_args(a * t / b, t, b, D)
    assert lhs == rhs


def test_stabilization_small():
    assert stabilization_check(8, 4)
    assert stabilization_check(10, 8)
    assert stabilization_check(1, 0)
    with pytest.raises(ConstraintViolation):
        stabilization_check(3, 4)  # callable window stops at D = N


def test_series_str_roundtrippable_shape():
    s = series_from_ratfunc(1 / (1 - t * q), 2)
    assert str(s) == "(1) + (t)*q + (t^2)*q^2 + O(q^3)"
