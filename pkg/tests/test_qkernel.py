"""q-Pochhammer, Gaussian binomials, and the elementary shift identities."""

import random

import pytest

from qfine.algebra import Polynomial, RationalFunction, a, b, q, rational, t
from qfine.errors import IdenticallyZeroDenominator
from qfine.qkernel import check_elem_shift, check_gr11, poch_cleared, qbinom, qpoch


def test_qpoch_empty_product():
    assert qpoch(a, 0).is_one
    assert qpoch(a * q, 0, 3).is_one


def test_qpoch_definition_unrolled():
    assert qpoch(a * q, 2) == (1 - a * q) * (1 - a * q ** 2)


def test_qpoch_mixed_base_pattern():
    m, r = 2, 3
    expected = (1 - q ** r) * (1 - q ** (m + r)) * (1 - q ** (2 * m + r))
    assert qpoch(q ** r, 3, m) == expected


def test_qpoch_numeric():
    half = rational(1, 2)
    assert qpoch(half, 2, qv=rational(1, 3)) == rational(1, 2) * rational(5, 6)


@pytest.mark.parametrize("n", range(13))
def test_qpoch_recurrence(n):
    assert qpoch(a, n + 1) == qpoch(a, n) * (1 - a * q ** n)


def test_qbinom_small():
    assert RationalFunction(qbinom(2, 1)) == 1 + q
    assert RationalFunction(qbinom(4, 2)) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4
    for N in range(7):
        assert qbinom(N, 0) == Polynomial.one()
    assert qbinom(3, 5).is_zero
    assert qbinom(3, -1).is_zero


def test_qbinom_pascal_oracle():
    # independent construction through the q-Pascal recurrence
    table = {(0, 0): Polynomial.one()}
    for N in range(1, 11):
        for n in range(N + 1):
            left = table.get((N - 1, n - 1), Polynomial.zero())
            right = table.get((N - 1, n), Polynomial.zero())
            table[(N, n)] = left + P(q) ** n * right if n else right
    for (N, n), expected in table.items():
        assert qbinom(N, n) == expected


def P(rf):
    return rf.as_polynomial()


def test_qbinom_symmetry_degree_positivity():
    for N in range(11):
        for n in range(N + 1):
            p = qbinom(N, n)
            assert p == qbinom(N, N - n)
            assert p.degree("q") == n * (N - n)
            assert all(c > 0 for c in p.terms.values())


def test_qbinom_mixed_base():
    # [N, n]_{q^m} is the base-q binomial with q -> q^m
    for N in range(5):
        for n in range(N + 1):
            base = qbinom(N, n)
            shifted, _ = base.subst_var("q", P(q ** 3), Polynomial.one())
            assert qbinom(N, n, 3) == shifted


def test_elem_shift_trivial():
    assert check_elem_shift(0, 0, a)


def test_elem_shift_examples():
    assert check_elem_shift(3, 2, b)
    assert check_elem_shift(5, 5, t)


def test_gr11_trivial():
    assert check_gr11(a, b, 4, 0)


def test_gr11_proof_specializations():
    assert check_gr11(t, q, 4, 2)   # used with b -> q, a -> t
    assert check_gr11(b, q, 5, 3)   # used with b -> q, a -> b


def test_elem_and_gr11_full_grid():
    rng = random.Random(31)
    monomials = [a, b, t, a * b]
    for _ in range(3):
        e = [rng.randint(0, 2) for _ in range(3)]
        monomials.append(a ** e[0] * b ** e[1] * t ** e[2] * q ** rng.randint(0, 2) + 0)
    for N in range(9):
        for n in range(N + 1):
            for c in monomials:
                if c.is_one:
                    continue
                assert check_elem_shift(N, n, c)
    pairs = [(a, b), (t, q), (b, q), (a * b, t), (t, a)]
    for N in range(9):
        for n in range(N + 1):
            for x, y in pairs:
                assert check_gr11(x, y, N, n)


def test_gr11_degenerate_substitution():
    # a_sub = 1/q makes (a)_N vanish at the k = 1 factor
    with pytest.raises(IdenticallyZeroDenominator):
        check_gr11(1 / q, b, 3, 1)


def test_poch_cleared_at_zero():
    # prod (a - b q^k) at a = 0 collapses to (-b)^n q^{n(n-1)/2}
    for n in range(6):
        value = poch_cleared(RationalFunction.const(0), b, n)
        assert value == (-b) ** n * q ** (n * (n - 1) // 2)
