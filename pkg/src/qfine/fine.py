"""Constructors for the named finite series objects: the q-binomially
weighted finite Fine function, the plain truncated Fine sum and its
first-order remainder, terminating 3phi2 series, the finite
partial-fraction form, and the finite Rogers-Fine form.

Builders take a value context mapping 'q', 'a', 'b', 't' to elements of
any exact field (RationalFunction atoms by default, exact rationals for
point sampling).  Sums fold left in index order so canonical results are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .algebra import RationalFunction, SYMBOLIC_VARS, compose_monomial, q, a, b, t
from .errors import IdenticallyZeroDenominator
from .qkernel import poch_cleared, qbinom_in, qpoch

Values = Mapping[str, object]


def _ctx(ctx: Values | None) -> Values:
    return SYMBOLIC_VARS if ctx is None else ctx


def _is_zero(x) -> bool:
    return x.is_zero if isinstance(x, RationalFunction) else x == 0


def fine_N(N: int, ctx: Values | None = None):
    """The finite Fine function F_N(a, b; t).

    Sum over n of [N, n] (aq)_n (t)_{N-n} (q)_n t^n / ((bq)_n (t)_N); the
    (t)_{N-n} / (t)_N ratio cancels structurally, so the canonical
    denominator divides (bq)_N (t)_N.
    """
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    if ctx is None or ctx is SYMBOLIC_VARS:
        return _fine_symbolic(N)
    v = ctx
    return _fine_generic(N, v["q"], v["a"], v["b"], v["t"])


@lru_cache(maxsize=None)
def _fine_symbolic(N: int) -> RationalFunction:
    return _fine_generic(N, q, a, b, t)


def _fine_generic(N, qv, av, bv, tv):
    total = qv * 0
    tN = qpoch(tv, N, qv=qv)
    for n in range(N + 1):
        num = (qbinom_in(N, n, qv=qv) * qpoch(av * qv, n, qv=qv)
               * qpoch(tv, N - n, qv=qv) * qpoch(qv, n, qv=qv) * tv ** n)
        total = total + num / (qpoch(bv * qv, n, qv=qv) * tN)
    return total


def fine_args(N: int, A, B, T, ctx: Values | None = None):
    """F_N(A, B; T) for shifted or specialized arguments.

    Symbolically this composes the cached F_N with the argument values in
    one simultaneous substitution (all catalog shifts are monomial
    ratios); in a numeric context it evaluates the defining sum directly.
    """
    if ctx is None or all(isinstance(x, RationalFunction) for x in (ctx["q"], A, B, T)):
        qv = q if ctx is None else ctx["q"]
        try:
            return compose_monomial(fine_N(N), {"q": qv, "a": A, "b": B, "t": T})
        except ValueError:
            pass
    v = _ctx(ctx)
    return _fine_generic(N, v["q"], A, B, T)


def andrews_bell_F(N: int, ctx: Values | None = None):
    """The plain truncated Fine sum: sum_{n=0}^{N} (aq)_n t^n / (bq)_n."""
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    if ctx is None or ctx is SYMBOLIC_VARS:
        return _ab_symbolic(N)
    v = ctx
    return _ab_generic(N, v["q"], v["a"], v["b"], v["t"])


@lru_cache(maxsize=None)
def _ab_symbolic(N: int) -> RationalFunction:
    return _ab_generic(N, q, a, b, t)


def _ab_generic(N, qv, av, bv, tv):
    total = qv * 0
    for n in range(N + 1):
        total = total + qpoch(av * qv, n, qv=qv) * tv ** n / qpoch(bv * qv, n, qv=qv)
    return total


def ab_args(N: int, A, B, T, ctx: Values | None = None):
    """Truncated Fine sum with substituted arguments (see fine_args)."""
    if ctx is None or all(isinstance(x, RationalFunction) for x in (ctx["q"], A, B, T)):
        qv = q if ctx is None else ctx["q"]
        try:
            return compose_monomial(andrews_bell_F(N), {"q": qv, "a": A, "b": B, "t": T})
        except ValueError:
            pass
    v = _ctx(ctx)
    return _ab_generic(N, v["q"], A, B, T)


def r1N(N: int, ctx: Values | None = None):
    """First-order remainder of the truncated Fine sum:

    sum_{j=0}^{N} (aq)_j t^j / (bq)_j * (1 - (b - atq) q^j / (1 - t))
    + (b - 1)/(1 - t).
    """
    if N < 1:
        raise ValueError("remainder needs N >= 1")
    v = _ctx(ctx)
    qv, av, bv, tv = v["q"], v["a"], v["b"], v["t"]
    shift = (bv - av * tv * qv) / (1 - tv)
    total = qv * 0
    for j in range(N + 1):
        term = (qpoch(av * qv, j, qv=qv) * tv ** j / qpoch(bv * qv, j, qv=qv)
                * (1 - shift * qv ** j))
        total = total + term
    return total + (bv - 1) / (1 - tv)


@dataclass(frozen=True)
class Phi32Spec:
    """A terminating-style 3phi2 summed to an explicit term count M,
    regardless of whether an upper parameter forces earlier termination."""

    upper: tuple
    lower: tuple
    z: object
    term_count: int

    def __post_init__(self):
        if len(self.upper) != 3 or len(self.lower) != 2:
            raise ValueError("3phi2 takes three upper and two lower parameters")
        if self.term_count < 0:
            raise ValueError("term count must be nonnegative")


def phi32(spec: Phi32Spec, ctx: Values | None = None):
    """sum_{n=0}^{M} (u1)_n (u2)_n (u3)_n z^n / ((q)_n (l1)_n (l2)_n)."""
    v = _ctx(ctx)
    qv = v["q"]
    u1, u2, u3 = spec.upper
    l1, l2 = spec.lower
    total = qv * 0
    for n in range(spec.term_count + 1):
        den = qpoch(qv, n, qv=qv) * qpoch(l1, n, qv=qv) * qpoch(l2, n, qv=qv)
        if _is_zero(den):
            raise IdenticallyZeroDenominator(f"3phi2 denominator vanishes at n={n}")
        num = (qpoch(u1, n, qv=qv) * qpoch(u2, n, qv=qv) * qpoch(u3, n, qv=qv)
               * spec.z ** n)
        total = total + num / den
    return total


def partial_fraction_rhs(N: int, ctx: Values | None = None):
    """Right side of the finite partial-fraction decomposition:

    (1 - tq^N) (aq)_N / (bq)_N
        * sum [N, n] (b/a)_n (aq)_{N-n} (aq)^n / ((aq)_N (1 - tq^n)),

    with (b/a)_n (aq)^n carried in the cleared form
    q^n prod_{k<n} (a - bq^k) so a = 0 is a plain substitution.
    """
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    v = _ctx(ctx)
    qv, av, bv, tv = v["q"], v["a"], v["b"], v["t"]
    aqN = qpoch(av * qv, N, qv=qv)
    total = qv * 0
    for n in range(N + 1):
        num = (qbinom_in(N, n, qv=qv) * poch_cleared(av, bv, n, qv=qv) * qv ** n
               * qpoch(av * qv, N - n, qv=qv))
        total = total + num / (aqN * (1 - tv * qv ** n))
    return (1 - tv * qv ** N) * aqN / qpoch(bv * qv, N, qv=qv) * total


def rogers_fine_finite_rhs(N: int, ctx: Values | None = None):
    """Right side of the finite Rogers-Fine identity:

    (1 - tq^N) sum [N, n] (aq)_n (q)_n (atq/b)_n (atq^2)_{N-1}
                 (tb)^n q^{n^2} (1 - atq^{2n+1})
               / ((bq)_n (t)_{n+1} (atq^2)_{N+n}),

    with (atq/b)_n (tb)^n cleared to t^n prod_{k=1}^{n} (b - atq^k).
    At N = 0 the (atq^2)_{-1} factor uses the reciprocal convention
    (A)_{-1} = 1/(1 - A/q), which makes the identity hold there too.
    """
    if N < 0:
        raise ValueError("truncation order must be nonnegative")
    v = _ctx(ctx)
    qv, av, bv, tv = v["q"], v["a"], v["b"], v["t"]
    atq2 = av * tv * qv ** 2
    if N >= 1:
        head = qpoch(atq2, N - 1, qv=qv)
    else:
        head = 1 / (1 - av * tv * qv)
    total = qv * 0
    for n in range(N + 1):
        num = (qbinom_in(N, n, qv=qv) * qpoch(av * qv, n, qv=qv) * qpoch(qv, n, qv=qv)
               * tv ** n * poch_cleared(bv, av * tv * qv, n, qv=qv) * head
               * qv ** (n * n) * (1 - av * tv * qv ** (2 * n + 1)))
        den = (qpoch(bv * qv, n, qv=qv) * qpoch(tv, n + 1, qv=qv)
               * qpoch(atq2, N + n, qv=qv))
        total = total + num / den
    return (1 - tv * qv ** N) * total
