"""Exact arithmetic in Q(q, a, b, t): multivariate polynomials and
canonically normalized rational functions.

The variable universe is fixed at (q, a, b, t).  A monomial is a 4-tuple of
nonnegative exponents in that order; the term order is graded lexicographic
with q > a > b > t.  Coefficients are arbitrary-precision rationals (gmpy2
when available, fractions.Fraction otherwise).

Canonical form of a rational function: gcd(num, den) is a unit, den has
integer coefficients with content 1, and the leading coefficient of den is
positive.  Equal values therefore have bit-identical representations, so
zero-testing and equality are structural.

Negative powers are never stored; q^{-N} and friends enter as genuine
rational functions (1 / q^N) through substitution.

Values are immutable after construction and every operation is a pure
function, so everything here is safe to use concurrently.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping, Union

from .errors import DivisionByZero, InternalError, PoleError, IdenticallyZeroDenominator

try:
    from gmpy2 import mpq as _mpq, mpz as _mpz, gcd as _igcd

    def _ilcm(x, y):
        return x // _igcd(x, y) * y

    Rational = type(_mpq(0))
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _mpq
    from math import gcd as _igcd, lcm as _ilcm

    _mpz = int
    Rational = _mpq

VARS = ("q", "a", "b", "t")
NVARS = 4
_VAR_INDEX = {name: i for i, name in enumerate(VARS)}
_ZERO_MON = (0, 0, 0, 0)

# Display order for monomials is alphabetical (a, b, q, t), matching the
# conventional way these products are written; the *term* order stays
# graded-lex with q > a > b > t.
_DISPLAY_ORDER = (1, 2, 0, 3)

Scalar = Union[int, Rational]


def rational(p: int, r: int = 1) -> Rational:
    """Exact rational p/r."""
    return _mpq(p, r)


def _grlex_key(mon):
    return (sum(mon), mon)


def _madd(m1, m2):
    return (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3])


class Polynomial:
    """Sparse multivariate polynomial over Q in (q, a, b, t).

    terms maps exponent 4-tuples to nonzero rational coefficients; the
    zero polynomial is the empty map.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, Rational] | None = None):
        cleaned = {}
        if terms:
            for mon, c in terms.items():
                c = _mpq(c)
                if c != 0:
                    cleaned[mon] = c
        self.terms = cleaned
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return _P_ZERO

    @staticmethod
    def one() -> "Polynomial":
        return _P_ONE

    @staticmethod
    def const(c: Scalar) -> "Polynomial":
        c = _mpq(c)
        if c == 0:
            return _P_ZERO
        p = Polynomial.__new__(Polynomial)
        p.terms = {_ZERO_MON: c}
        p._hash = None
        return p

    @staticmethod
    def var(name: str, power: int = 1) -> "Polynomial":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}")
        if power < 0:
            raise ValueError("polynomial variables take nonnegative powers")
        if power == 0:
            return _P_ONE
        mon = [0, 0, 0, 0]
        mon[_VAR_INDEX[name]] = power
        p = Polynomial.__new__(Polynomial)
        p.terms = {tuple(mon): _mpq(1)}
        p._hash = None
        return p

    @staticmethod
    def _raw(terms: dict) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.terms = terms
        p._hash = None
        return p

    # -- predicates and views ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {_ZERO_MON: 1}

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_MON in self.terms)

    def const_value(self) -> Rational:
        if not self.terms:
            return _mpq(0)
        if not self.is_const():
            raise ValueError("not a constant polynomial")
        return self.terms[_ZERO_MON]

    def degree(self, name: str) -> int:
        """Largest exponent of the named variable (0 for the zero poly)."""
        vi = _VAR_INDEX[name]
        return max((m[vi] for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> Rational:
        return self.terms[self.leading_monomial()]

    def variables(self) -> tuple[str, ...]:
        present = [False] * NVARS
        for m in self.terms:
            for i in range(NVARS):
                if m[i]:
                    present[i] = True
        return tuple(VARS[i] for i in range(NVARS) if present[i])

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return Polynomial._raw(_mul_dicts(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power; use RationalFunction")
        result = _P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items())))
        return self._hash

    # -- scaling, content, division ------------------------------------------

    def scaled(self, c: Scalar) -> "Polynomial":
        c = _mpq(c)
        if c == 0:
            return _P_ZERO
        return Polynomial._raw({m: v * c for m, v in self.terms.items()})

    def content(self) -> Rational:
        """Positive rational content: gcd of numerators over lcm of
        denominators.  Content of the zero polynomial is 0."""
        if not self.terms:
            return _mpq(0)
        num_gcd = _mpz(0)
        den_lcm = _mpz(1)
        for c in self.terms.values():
            num_gcd = _igcd(num_gcd, _mpz(c.numerator))
            den_lcm = _ilcm(den_lcm, _mpz(c.denominator))
        return _mpq(num_gcd, den_lcm)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self.scaled(1 / lc)

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent vector (the common monomial factor)."""
        it = iter(self.terms)
        m = list(next(it))
        for mon in it:
            for i in range(NVARS):
                if mon[i] < m[i]:
                    m[i] = mon[i]
        return tuple(m)

    def shift_down(self, shift: tuple) -> "Polynomial":
        """Divide by the monomial with the given exponent vector (must divide)."""
        if shift == _ZERO_MON:
            return self
        out = {}
        for m, c in self.terms.items():
            out[(m[0] - shift[0], m[1] - shift[1], m[2] - shift[2], m[3] - shift[3])] = c
        return Polynomial._raw(out)

    def divexact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact division; raises InternalError when a remainder is left."""
        if divisor.is_zero:
            raise DivisionByZero("polynomial division by zero")
        quot = _div_exact_field(self.terms, divisor.terms)
        if quot is None:
            raise InternalError("polynomial division left a remainder")
        return Polynomial._raw(quot)

    # -- evaluation, substitution, q-stratification ----------------------------

    def eval(self, point: Mapping[str, Scalar]) -> Rational:
        """Exact value at a full assignment of the four variables."""
        vals = [_mpq(point[name]) for name in VARS]
        caches: list[dict[int, Rational]] = [{0: _mpq(1), 1: vals[i]} for i in range(NVARS)]

        def power(i, e):
            c = caches[i]
            r = c.get(e)
            if r is None:
                r = c[e // 2] if e // 2 in c else power(i, e // 2)
                r = r * power(i, e - e // 2)
                c[e] = r
            return r

        total = _mpq(0)
        for m, coeff in self.terms.items():
            term = coeff
            for i in range(NVARS):
                if m[i]:
                    term = term * power(i, m[i])
            total += term
        return total

    def subst_var(self, name: str, num: "Polynomial", den: "Polynomial"):
        """Replace one variable by num/den; returns (numerator, denominator)
        as polynomials with denominator den**max_exponent."""
        vi = _VAR_INDEX[name]
        d_max = max((m[vi] for m in self.terms), default=0)
        if d_max == 0:
            return self, _P_ONE
        by_exp: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = m[vi]
            m2 = m[:vi] + (0,) + m[vi + 1:]
            by_exp.setdefault(e, {})[m2] = c
        num_pows = [_P_ONE]
        den_pows = [_P_ONE]
        for _ in range(d_max):
            num_pows.append(num_pows[-1] * num)
            den_pows.append(den_pows[-1] * den)
        acc = _P_ZERO
        for e, terms in by_exp.items():
            piece = Polynomial._raw(terms) * num_pows[e]
            if not den.is_one:
                piece = piece * den_pows[d_max - e]
            acc = acc + piece
        return acc, den_pows[d_max]

    def q_coefficients(self) -> dict[int, "Polynomial"]:
        """Stratify by the power of q: k -> polynomial in (a, b, t)."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            out.setdefault(m[0], {})[(0,) + m[1:]] = c
        return {k: Polynomial._raw(d) for k, d in out.items()}

    def q_degree(self) -> int:
        return self.degree("q")

    def q_valuation(self) -> int:
        """Smallest power of q present (0 for the zero polynomial)."""
        return min((m[0] for m in self.terms), default=0)

    # -- printing -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mon in sorted(self.terms, key=_grlex_key):
            c = self.terms[mon]
            factors = []
            for vi in _DISPLAY_ORDER:
                e = mon[vi]
                if e == 1:
                    factors.append(VARS[vi])
                elif e > 1:
                    factors.append(f"{VARS[vi]}^{e}")
            body = "*".join(factors)
            neg = c < 0
            mag = -c if neg else c
            if not body:
                text = _fmt_rat(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{_fmt_rat(mag)}*{body}"
            if not parts:
                parts.append(f"-{text}" if neg else text)
            else:
                parts.append(f"- {text}" if neg else f"+ {text}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def _fmt_rat(c: Rational) -> str:
    return str(c)


def _coerce_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Rational)):
        return Polynomial.const(x)
    return NotImplemented


def _mul_dicts(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for m1, c1 in a.items():
        e0, e1, e2, e3 = m1
        for m2, c2 in b.items():
            m = (e0 + m2[0], e1 + m2[1], e2 + m2[2], e3 + m2[3])
            v = get(m)
            if v is None:
                out[m] = c1 * c2
            else:
                v = v + c1 * c2
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
    return out


def _heap_key(m):
    return (-m[0] - m[1] - m[2] - m[3], -m[0], -m[1], -m[2], -m[3])


def _mon_of_key(k):
    return (-k[1], -k[2], -k[3], -k[4])


def _div_exact(f: dict, g: dict, integer: bool):
    """Quotient dict of f / g, or None when not exactly divisible.

    Terms are consumed in descending graded-lex order through a lazy heap;
    stale entries (monomials already cancelled) are skipped on pop.  With
    integer=True coefficient divisibility is enforced as well.
    """
    if not f:
        return {}
    g_lead = max(g, key=_grlex_key)
    g_lc = g[g_lead]
    g_rest = [(gm, gc) for gm, gc in g.items() if gm != g_lead]
    rem = dict(f)
    heap = [_heap_key(m) for m in rem]
    heapq.heapify(heap)
    quot: dict = {}
    push = heapq.heappush
    pop = heapq.heappop
    while heap:
        m = _mon_of_key(pop(heap))
        c = rem.pop(m, None)
        if c is None:
            continue
        dm = (m[0] - g_lead[0], m[1] - g_lead[1], m[2] - g_lead[2], m[3] - g_lead[3])
        if dm[0] < 0 or dm[1] < 0 or dm[2] < 0 or dm[3] < 0:
            return None
        if integer:
            qc, r = divmod(c, g_lc)
            if r:
                return None
        else:
            qc = c / g_lc
        quot[dm] = qc
        for gm, gc in g_rest:
            mm = _madd(dm, gm)
            v = rem.get(mm)
            if v is None:
                rem[mm] = -qc * gc
                push(heap, _heap_key(mm))
            else:
                v = v - qc * gc
                if v == 0:
                    del rem[mm]
                else:
                    rem[mm] = v
    return quot if not rem else None


def _div_exact_field(f: dict, g: dict):
    return _div_exact(f, g, integer=False)


# ---------------------------------------------------------------------------
# Integer GCD machinery (GCDHEU with a subresultant-free primitive-PRS
# fallback).  All functions below work on dicts with int coefficients.
# ---------------------------------------------------------------------------

_HEU_TRIES = 6


def _int_sqrt(n):
    from math import isqrt

    return _mpz(isqrt(int(n)))


def _to_int_poly(p: Polynomial):
    """Clear denominators and content: returns (content, primitive int dict)
    with positive leading coefficient preserved from the input sign."""
    c = p.content()
    if c == 0:
        return _mpq(0), {}
    prim = {m: _mpz(v / c) for m, v in p.terms.items()}
    return c, prim


def _int_content(d: dict):
    g = _mpz(0)
    for v in d.values():
        g = _igcd(g, v)
        if g == 1:
            break
    return g


def _int_primitive(d: dict) -> dict:
    g = _int_content(d)
    if g in (0, 1):
        return dict(d)
    return {m: v // g for m, v in d.items()}


def _present_vars(f: dict, g: dict):
    present = [False] * NVARS
    for d in (f, g):
        for m in d:
            for i in range(NVARS):
                if m[i]:
                    present[i] = True
    return [i for i in range(NVARS) if present[i]]


def _max_degrees(d: dict):
    degs = [0] * NVARS
    for m in d:
        for i in range(NVARS):
            if m[i] > degs[i]:
                degs[i] = m[i]
    return degs


def _eval_var(d: dict, vi: int, x) -> dict:
    out: dict = {}
    powers = {0: _mpz(1)}

    def pw(e):
        r = powers.get(e)
        if r is None:
            r = x ** e
            powers[e] = r
        return r

    for m, c in d.items():
        m2 = m[:vi] + (0,) + m[vi + 1:]
        v = out.get(m2, 0) + c * pw(m[vi])
        if v == 0:
            out.pop(m2, None)
        else:
            out[m2] = v
    return out


def _interpolate_var(h: dict, vi: int, x) -> dict:
    """Lift the x-adic expansion of h back into variable vi.

    Residues are balanced (centered around 0) so negative coefficients
    survive the lift.
    """
    out: dict = {}
    cur = dict(h)
    half = x // 2
    i = 0
    while cur:
        nxt: dict = {}
        for m, c in cur.items():
            r = c % x
            if r > half:
                r -= x
            if r:
                out[m[:vi] + (i,) + m[vi + 1:]] = r
            c2 = (c - r) // x
            if c2:
                nxt[m] = c2
        cur = nxt
        i += 1
    return out


def _div_exact_int(f: dict, g: dict):
    """Exact division over Z, or None."""
    return _div_exact(f, g, integer=True)


def _pick_var(f: dict, g: dict, candidates):
    """Variable of smallest joint degree; prefers eliminating a, b, t before q
    so the final univariate stage is in q."""
    df, dg = _max_degrees(f), _max_degrees(g)
    return min(candidates, key=lambda i: (max(df[i], dg[i]), -i))


def _heugcd(f: dict, g: dict):
    """Heuristic GCD of int dicts (GCDHEU); None on (rare) failure.

    Evaluates one variable at a large integer, recurses, lifts the integer
    result x-adically, and certifies the candidate by exact trial division.
    The evaluated images keep their integer content: it carries part of the
    gcd down the recursion.
    """
    candidates = _present_vars(f, g)
    if not candidates:
        return {_ZERO_MON: _igcd(f[_ZERO_MON], g[_ZERO_MON])}
    common = _igcd(_int_content(f), _int_content(g))
    if common != 1:
        f = {m: v // common for m, v in f.items()}
        g = {m: v // common for m, v in g.items()}
    vi = _pick_var(f, g, candidates)

    f_norm = max(abs(c) for c in f.values())
    g_norm = max(abs(c) for c in g.values())
    B = 2 * min(f_norm, g_norm) + 29
    x = max(min(B, 99 * _int_sqrt(B)), 2 * min(f_norm, g_norm) + 4)
    for _ in range(_HEU_TRIES):
        ff = _eval_var(f, vi, x)
        gg = _eval_var(g, vi, x)
        if ff and gg:
            sub = _heugcd(ff, gg)
            if sub is not None:
                h = _int_primitive(_interpolate_var(sub, vi, x))
                if h and _div_exact_int(f, h) is not None and _div_exact_int(g, h) is not None:
                    if common != 1:
                        h = {m: v * common for m, v in h.items()}
                    return h
        x = 73794 * x * _int_sqrt(_int_sqrt(x)) // 27011
    return None


def _univar_list(d: dict, vi: int) -> dict[int, dict]:
    out: dict[int, dict] = {}
    for m, c in d.items():
        out.setdefault(m[vi], {})[m[:vi] + (0,) + m[vi + 1:]] = c
    return out


def _from_univar(coeffs: dict[int, dict], vi: int) -> dict:
    out: dict = {}
    for e, d in coeffs.items():
        for m, c in d.items():
            out[m[:vi] + (e,) + m[vi + 1:]] = c
    return out


def _poly_coeff_gcd(coeffs: Iterable[dict]):
    g: dict = {}
    for d in coeffs:
        if not g:
            g = dict(d)
            continue
        g = _gcd_int(g, d)
        if g == {_ZERO_MON: 1}:
            break
    return g


def _prs_gcd(f: dict, g: dict):
    """Primitive pseudo-remainder sequence GCD (deterministic fallback)."""
    candidates = _present_vars(f, g)
    if not candidates:
        return {_ZERO_MON: _igcd(f[_ZERO_MON], g[_ZERO_MON])}
    vi = _pick_var(f, g, candidates)
    F = _univar_list(f, vi)
    G = _univar_list(g, vi)
    cf = _poly_coeff_gcd(F.values())
    cg = _poly_coeff_gcd(G.values())
    cont = _gcd_int(cf, cg)
    fbar = {e: _div_exact_int(d, cf) for e, d in F.items()}
    gbar = {e: _div_exact_int(d, cg) for e, d in G.items()}

    def primitive_u(u: dict[int, dict]):
        if not u:
            return u
        c = _poly_coeff_gcd(u.values())
        return {e: _div_exact_int(d, c) for e, d in u.items()}

    def prem(u: dict[int, dict], v: dict[int, dict]):
        """Pseudo remainder of u by v in the main variable."""
        du, dv = max(u), max(v)
        lv = v[dv]
        r = {e: dict(d) for e, d in u.items()}
        while r and max(r) >= dv:
            dr = max(r)
            lr = r[dr]
            new_r: dict[int, dict] = {}
            for e, d in r.items():
                if e == dr:
                    continue
                new_r[e] = _mul_dicts_int(d, lv)
            for e, d in v.items():
                if e == dv:
                    continue
                shift = dr - dv + e
                prod = _mul_dicts_int(d, lr)
                acc = new_r.get(shift, {})
                for m, c in prod.items():
                    vv = acc.get(m, 0) - c
                    if vv == 0:
                        acc.pop(m, None)
                    else:
                        acc[m] = vv
                if acc:
                    new_r[shift] = acc
                else:
                    new_r.pop(shift, None)
            r = {e: d for e, d in new_r.items() if d}
        return r

    u, v = fbar, gbar
    if max(u) < max(v):
        u, v = v, u
    while v:
        r = prem(u, v)
        u, v = v, primitive_u(r)
    result = _mul_dicts_int(_from_univar(u, vi), cont)
    return _int_primitive(result)


def _mul_dicts_int(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _madd(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
    return out


# Modular coprimality certificate.  For each variable shared by f and g we
# project both to univariate polynomials mod a word-size prime (random
# residues for the other variables, top degree required to survive) and take
# a univariate gcd.  A common factor of positive degree in that variable
# would survive the projection, so an empty intersection of shared-variable
# degrees certifies gcd = 1.  One-sided: False only means "inconclusive".

_CERT_P = (1 << 61) - 1  # Mersenne prime


def _umod_gcd_degree(u: list, v: list) -> int:
    p = _CERT_P
    while u and u[-1] == 0:
        u.pop()
    while v and v[-1] == 0:
        v.pop()
    while v:
        dv = len(v) - 1
        inv = pow(v[-1], p - 2, p)
        while len(u) - 1 >= dv:
            c = u[-1] * inv % p
            off = len(u) - 1 - dv
            for i in range(dv + 1):
                u[off + i] = (u[off + i] - c * v[i]) % p
            while u and u[-1] == 0:
                u.pop()
        u, v = v, u
    return len(u) - 1


def _project_univar(d: dict, vi: int, degv: int, residues: dict):
    p = _CERT_P
    out = [0] * (degv + 1)
    pows = {j: {0: 1} for j in residues}

    def pw(j, e):
        cache = pows[j]
        r = cache.get(e)
        if r is None:
            r = pow(residues[j], e, p)
            cache[e] = r
        return r

    for m, c in d.items():
        w = int(c % p)
        for j in residues:
            e = m[j]
            if e:
                w = w * pw(j, e) % p
        out[m[vi]] = (out[m[vi]] + w) % p
    if out[degv] == 0:
        return None
    return out


def _coprime_certificate(f: dict, g: dict) -> bool:
    df, dg = _max_degrees(f), _max_degrees(g)
    shared = [i for i in range(NVARS) if df[i] and dg[i]]
    if not shared:
        return True  # contents are stripped, so the gcd is constant
    state = 0x9E3779B9
    for vi in shared:
        settled = False
        for _ in range(3):
            residues = {}
            for j in range(NVARS):
                if j == vi:
                    continue
                state = (1103515245 * state + 12345) % (1 << 62)
                residues[j] = state % (_CERT_P - 3) + 2
            pf = _project_univar(f, vi, df[vi], residues)
            pg = _project_univar(g, vi, dg[vi], residues)
            if pf is None or pg is None:
                continue
            if _umod_gcd_degree(pf, pg) >= 1:
                return False
            settled = True
            break
        if not settled:
            return False
    return True


def _gcd_int(f: dict, g: dict) -> dict:
    """GCD of int dicts (primitive result, positive graded-lex leading coeff)."""
    if not f:
        return _positive_lead(_int_primitive(g)) if g else {}
    if not g:
        return _positive_lead(_int_primitive(f))
    cf = _int_content(f)
    cg = _int_content(g)
    fp = {m: v // cf for m, v in f.items()}
    gp = {m: v // cg for m, v in g.items()}
    c = _igcd(cf, cg)
    if fp == gp:
        h = dict(fp)
    elif len(fp) + len(gp) > 80 and _coprime_certificate(fp, gp):
        h = {_ZERO_MON: _mpz(1)}
    else:
        h = _heugcd(fp, gp)
        if h is None:
            h = _prs_gcd(fp, gp)
    if c != 1:
        h = {m: v * c for m, v in h.items()}
    return _positive_lead(h)


def _positive_lead(d: dict) -> dict:
    if not d:
        return d
    if d[max(d, key=_grlex_key)] < 0:
        return {m: -c for m, c in d.items()}
    return d


def _gcd_poly_core(p: Polynomial, r: Polynomial) -> Polynomial:
    """GCD over Q, returned with integer content-1 coefficients and
    positive leading coefficient (monomial factors included)."""
    if p.is_zero and r.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero:
        return Polynomial._raw(_positive_lead(_to_int_poly(r)[1]))
    if r.is_zero:
        return Polynomial._raw(_positive_lead(_to_int_poly(p)[1]))
    sp = p.min_exponents()
    sr = r.min_exponents()
    shift = tuple(min(x, y) for x, y in zip(sp, sr))
    pp = p.shift_down(sp)
    rr = r.shift_down(sr)
    _, fi = _to_int_poly(pp)
    _, gi = _to_int_poly(rr)
    h = _gcd_int(fi, gi)
    if shift != _ZERO_MON:
        h = {_madd(m, shift): c for m, c in h.items()}
    return Polynomial._raw({m: _mpq(c) for m, c in h.items()})


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Canonically normalized quotient of two polynomials."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _coerce_poly(num)
        den = _P_ONE if den is None else _coerce_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("cannot build a rational function from these operands")
        self.num, self.den = _normalize(num, den)
        self._hash = None

    @staticmethod
    def _trusted(num: Polynomial, den: Polynomial) -> "RationalFunction":
        """Wrap already-canonical parts without re-normalizing."""
        f = RationalFunction.__new__(RationalFunction)
        f.num, f.den = num, den
        f._hash = None
        return f

    @staticmethod
    def const(c: Scalar) -> "RationalFunction":
        return RationalFunction._trusted(Polynomial.const(c), _P_ONE)

    @staticmethod
    def var(name: str) -> "RationalFunction":
        return RationalFunction._trusted(Polynomial.var(name), _P_ONE)

    # -- predicates -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    def is_polynomial(self) -> bool:
        return self.den.is_one

    def as_polynomial(self) -> Polynomial:
        if not self.den.is_one:
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def q_valuation(self) -> int:
        """Order of vanishing in q (num valuation minus den valuation)."""
        if self.is_zero:
            raise ValueError("zero has no q-valuation")
        return self.num.q_valuation() - self.den.q_valuation()

    # -- field operations ------------------------------------------------------

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        g = _gcd_poly_core(self.den, other.den)
        if g.is_const():
            d1, d2 = self.den, other.den
            num = self.num * d2 + other.num * d1
            return RationalFunction(num, d1 * d2)
        c1 = self.den.divexact(g)
        c2 = other.den.divexact(g)
        num = self.num * c2 + other.num * c1
        return RationalFunction(num, self.den * c2)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._trusted(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _RF_ZERO
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by the zero rational function")
        if self.is_zero:
            return _RF_ZERO
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n == 0:
            return _RF_ONE
        if n < 0:
            if self.is_zero:
                raise DivisionByZero("zero to a negative power")
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction._trusted(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- substitution and evaluation -------------------------------------------

    def substitute(self, name: str, value) -> "RationalFunction":
        """Exact composition f(..., name <- value, ...)."""
        value = _coerce_rf(value)
        if value is NotImplemented:
            raise TypeError("substitution value must be rational-function-like")
        if value.num == Polynomial.var(name) and value.den.is_one:
            return self
        n1, d1 = self.num.subst_var(name, value.num, value.den)
        n2, d2 = self.den.subst_var(name, value.num, value.den)
        if n2.is_zero:
            raise IdenticallyZeroDenominator(
                f"substituting {name} <- {value} annihilates the denominator")
        # f = (n1/d1) / (n2/d2); d1 and d2 are powers of value.den.
        return RationalFunction(n1 * d2, d1 * n2)

    def eval(self, point: Mapping[str, Scalar]) -> Rational:
        dv = self.den.eval(point)
        if dv == 0:
            raise PoleError(f"denominator vanishes at {dict(point)}")
        return self.num.eval(point) / dv

    def __str__(self):
        if self.den.is_one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction._trusted(*_normalize(x, _P_ONE))
    if isinstance(x, (int, Rational)):
        return RationalFunction.const(x)
    return NotImplemented


def _normalize(num: Polynomial, den: Polynomial):
    if den.is_zero:
        raise DivisionByZero("zero denominator")
    if num.is_zero:
        return _P_ZERO, _P_ONE
    if not den.is_const():
        sn = num.min_exponents()
        sd = den.min_exponents()
        shift = tuple(min(x, y) for x, y in zip(sn, sd))
        if shift != _ZERO_MON:
            num = num.shift_down(shift)
            den = den.shift_down(shift)
        if not den.is_const():
            g = _gcd_poly_core(num, den)
            if not g.is_const():
                num = num.divexact(g)
                den = den.divexact(g)
    # Scale: den gets content 1 (integer coefficients) and a positive
    # leading coefficient under the graded-lex order.
    c = den.content()
    if den.leading_coeff() < 0:
        c = -c
    if c != 1:
        num = num.scaled(1 / c)
        den = den.scaled(1 / c)
    return num, den


_P_ZERO = Polynomial.__new__(Polynomial)
_P_ZERO.terms = {}
_P_ZERO._hash = None
_P_ONE = Polynomial.__new__(Polynomial)
_P_ONE.terms = {_ZERO_MON: _mpq(1)}
_P_ONE._hash = None

_RF_ZERO = RationalFunction._trusted(_P_ZERO, _P_ONE)
_RF_ONE = RationalFunction._trusted(_P_ONE, _P_ONE)

#: Symbolic atoms; the default variable context for all series builders.
q = RationalFunction.var("q")
a = RationalFunction.var("a")
b = RationalFunction.var("b")
t = RationalFunction.var("t")

SYMBOLIC_VARS: Mapping[str, RationalFunction] = {"q": q, "a": a, "b": b, "t": t}


# ---------------------------------------------------------------------------
# Operation surface (thin wrappers over the classes above)
# ---------------------------------------------------------------------------

_POLY_OPS = {
    "add": lambda p, r: p + r,
    "sub": lambda p, r: p - r,
    "mul": lambda p, r: p * r,
}

_RAT_OPS = {
    "add": lambda f, g: f + g,
    "sub": lambda f, g: f - g,
    "mul": lambda f, g: f * g,
    "div": lambda f, g: f / g,
}


def poly_arith(p: Polynomial, r: Polynomial, op: str) -> Polynomial:
    """Exact polynomial add / sub / mul."""
    return _POLY_OPS[op](p, r)


def poly_gcd(p: Polynomial, r: Polynomial) -> Polynomial:
    """GCD normalized to leading coefficient 1 (graded-lex leading term)."""
    return _gcd_poly_core(p, r).monic()


def rat_arith(f: RationalFunction, g: RationalFunction, op: str) -> RationalFunction:
    """Exact rational-function add / sub / mul / div."""
    return _RAT_OPS[op](f, g)


def substitute(f: RationalFunction, name: str, value) -> RationalFunction:
    """Replace a variable by a rational function, exactly."""
    return f.substitute(name, value)


def compose_monomial(f: RationalFunction, values: Mapping[str, "RationalFunction"]) -> RationalFunction:
    """Simultaneous substitution of all four variables at once.

    Each value must be zero or a ratio of monomials (covers every argument
    shift in the catalog: a*q, t*q, 1/t, b/t, constants, 0).  Simultaneity
    avoids the capture problems of chained single-variable substitution.
    """
    specs = []
    for name in VARS:
        v = _coerce_rf(values.get(name, RationalFunction.var(name)))
        if v is NotImplemented:
            raise TypeError(f"bad substitution value for {name}")
        if v.is_zero:
            specs.append(None)
            continue
        if len(v.num.terms) != 1 or len(v.den.terms) != 1:
            raise ValueError(f"value for {name} is not a ratio of monomials: {v}")
        (nm, nc), = v.num.terms.items()
        (dm, dc), = v.den.terms.items()
        exps = tuple(nm[i] - dm[i] for i in range(NVARS))
        specs.append((nc / dc, exps))

    def transform(p: Polynomial) -> dict:
        out: dict = {}
        for mon, c in p.terms.items():
            coeff = c
            exps = [0, 0, 0, 0]
            dead = False
            for i in range(NVARS):
                e = mon[i]
                if not e:
                    continue
                spec = specs[i]
                if spec is None:
                    dead = True
                    break
                vc, vexps = spec
                coeff = coeff * vc ** e
                for j in range(NVARS):
                    exps[j] += e * vexps[j]
            if dead:
                continue
            key = tuple(exps)
            acc = out.get(key)
            if acc is None:
                out[key] = coeff
            else:
                acc = acc + coeff
                if acc == 0:
                    del out[key]
                else:
                    out[key] = acc
        return out

    num_t = transform(f.num)
    den_t = transform(f.den)
    if not den_t:
        raise IdenticallyZeroDenominator("composition annihilates the denominator")
    # Clear negative exponents by one common monomial on both sides.
    mins = [0, 0, 0, 0]
    for d in (num_t, den_t):
        for mon in d:
            for i in range(NVARS):
                if mon[i] < mins[i]:
                    mins[i] = mon[i]
    if any(mins):
        shift = tuple(-m for m in mins)
        num_t = {_madd(mon, shift): c for mon, c in num_t.items()}
        den_t = {_madd(mon, shift): c for mon, c in den_t.items()}
    return RationalFunction(Polynomial._raw(num_t), Polynomial._raw(den_t))


def eval_at(f: RationalFunction, point: Mapping[str, Scalar]) -> Rational:
    """Exact rational value of f at a full variable assignment."""
    return f.eval(point)
