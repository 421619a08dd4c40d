"""q-Pochhammer symbols, Gaussian binomial coefficients, and the two
elementary parameter-shift identities the transformation proofs lean on.

Everything here is generic over the value domain: arguments may be
RationalFunction atoms (symbolic verification) or exact rationals
(sampled verification).  `qv` is the value standing for q.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import Polynomial, RationalFunction, q
from .errors import IdenticallyZeroDenominator, InternalError


def triangle(n: int) -> int:
    """n-th triangular number n(n+1)/2; exponent arithmetic stays in ints."""
    return n * (n + 1) // 2


def qpoch(A, n: int, m: int = 1, qv=q):
    """(A; q^m)_n = prod_{k=0}^{n-1} (1 - A q^{mk}); empty product at n = 0."""
    if n < 0:
        raise ValueError("q-Pochhammer length must be nonnegative")
    if m < 1:
        raise ValueError("base exponent must be a positive integer")
    result = A ** 0
    if n == 0:
        return result
    step = qv ** m
    cur = A
    for _ in range(n):
        result = result * (1 - cur)
        cur = cur * step
    return result


def poch_cleared(x, y, n: int, qv=q):
    """prod_{k=0}^{n-1} (x - y q^k): the denominator-free form of
    (y/x; q)_n x^n, so x = 0 and y = 0 are substitutions, not limits."""
    result = (qv ** 0)
    cur = y
    for _ in range(n):
        result = result * (x - cur)
        cur = cur * qv
    return result


@lru_cache(maxsize=None)
def _qbinom_symbolic(N: int, n: int, m: int) -> Polynomial:
    qm = q ** m
    rf = qpoch(qm, N, m) / (qpoch(qm, n, m) * qpoch(qm, N - n, m))
    if not rf.is_polynomial():
        raise InternalError(f"qbinom({N}, {n}, {m}) did not reduce to a polynomial")
    return rf.as_polynomial()


def qbinom(N: int, n: int, m: int = 1) -> Polynomial:
    """Gaussian binomial [N, n] in base q^m; zero outside 0 <= n <= N."""
    if N < 0:
        raise ValueError("qbinom needs N >= 0")
    if n < 0 or n > N:
        return Polynomial.zero()
    return _qbinom_symbolic(N, n, m)


def qbinom_in(N: int, n: int, m: int = 1, qv=q):
    """Gaussian binomial evaluated in an arbitrary value domain."""
    if qv is q:
        return RationalFunction(qbinom(N, n, m))
    if n < 0 or n > N:
        return qv * 0
    qm = qv ** m
    return qpoch(qm, N, m, qv=qv) / (qpoch(qm, n, m, qv=qv) * qpoch(qm, N - n, m, qv=qv))


def check_elem_shift(N: int, n: int, c) -> bool:
    """Verify (q^{-N}/c)_n = (-1)^n (c q^{N-n+1})_n q^{n(n-1)/2} / (c^n q^{Nn})
    by exact normalization of both sides."""
    if not (0 <= n <= N):
        raise ValueError("need 0 <= n <= N")
    lhs = qpoch(q ** (-N) / c, n)
    rhs = ((-1) ** n) * qpoch(c * q ** (N - n + 1), n) * q ** triangle(n - 1) / (c ** n * q ** (N * n))
    return lhs == rhs


def check_gr11(a_sub, b_sub, N: int, n: int) -> bool:
    """Verify (b)_N (a)_{N-n} a^n / ((a)_N (b)_{N-n} b^n) = (q^{1-N}/b)_n / (q^{1-N}/a)_n
    for the given parameter substitutions."""
    if not (0 <= n <= N):
        raise ValueError("need 0 <= n <= N")
    den_left = qpoch(a_sub, N) * qpoch(b_sub, N - n) * b_sub ** n
    den_right = qpoch(q ** (1 - N) / a_sub, n)
    if getattr(den_left, "is_zero", den_left == 0) or getattr(den_right, "is_zero", den_right == 0):
        raise IdenticallyZeroDenominator(
            f"degenerate substitution (a={a_sub}, b={b_sub}, N={N}, n={n})")
    lhs = qpoch(b_sub, N) * qpoch(a_sub, N - n) * a_sub ** n / den_left
    rhs = qpoch(q ** (1 - N) / b_sub, n) / den_right
    return lhs == rhs
