"""The identity catalog: every finite identity as a pair of side builders
over concrete integer parameters, plus symbolic and exact-sampled
verification drivers.

Each entry builds its sides exactly as displayed in the source
literature.  Where exact verification shows a printed display to be
false (a handful are), the entry carries an erratum-candidate flag and a
corrected form obtained by replaying the derivation chain; both forms
are verified and reported, and the corrected one decides pass/fail.

Builders are generic over the value context: RationalFunction atoms for
symbolic verification, exact rationals for sampled verification.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass
from typing import Callable, Mapping

from .algebra import RationalFunction, SYMBOLIC_VARS, rational, t as t_atom
from .errors import (ConstraintViolation, DivisionByZero, Exhausted,
                     IdenticallyZeroDenominator, PoleError)
from .fine import (Phi32Spec, ab_args, andrews_bell_F, fine_N, fine_args,
                   partial_fraction_rhs, phi32, r1N, rogers_fine_finite_rhs)
from .qkernel import poch_cleared, qbinom_in, qpoch, triangle
from .report import VerificationReport, digest

Values = Mapping[str, object]
Builder = Callable[[Values, Mapping], object]


@dataclass(frozen=True)
class Identity:
    """A catalog record: printed side builders, parameter ranges,
    structural exclusions for sampling, and an optional corrected form."""

    id: str
    title: str
    source: str
    lhs: Builder
    rhs: Builder
    n_min: int = 0
    extra_params: tuple = ()          # (name, lo, hi) ranges or (name, choices)
    corrected_lhs: Builder | None = None
    corrected_rhs: Builder | None = None
    corrected_n_min: int | None = None
    note: str = ""
    exclusions: tuple = ()            # (description, point -> bool violated)
    t_symbolic: bool = False          # sampled mode keeps t as a symbol

    @property
    def erratum_candidate(self) -> bool:
        return self.corrected_rhs is not None

    def forms(self) -> tuple[str, ...]:
        return ("printed", "corrected") if self.erratum_candidate else ("printed",)

    def form_n_min(self, form: str) -> int:
        if form == "corrected" and self.corrected_n_min is not None:
            return self.corrected_n_min
        return self.n_min

    def report_id(self, form: str) -> str:
        if not self.erratum_candidate:
            return self.id
        return f"{self.id}.{form}"

    def sides(self, form: str) -> tuple[Builder, Builder]:
        if form == "printed":
            return self.lhs, self.rhs
        if form == "corrected" and self.erratum_candidate:
            return self.corrected_lhs or self.lhs, self.corrected_rhs
        raise ConstraintViolation(f"{self.id} has no {form} form")


def _v(ctx):
    return ctx["q"], ctx["a"], ctx["b"], ctx["t"]


def _c_slot(name: str, ctx):
    qv, av, bv, tv = _v(ctx)
    if name == "atq":
        return av * tv * qv
    if name == "bt":
        return bv * tv
    raise ConstraintViolation(f"unknown c-slot instantiation {name!r}")


# --- shared right-hand-side fragments -------------------------------------

def _w_factor(ctx):
    qv, av, bv, tv = _v(ctx)
    return (1 - av * qv) * (bv - av * tv * qv) * tv * qv / ((1 - bv * qv) * (1 - tv))


def _ab1_rhs(ctx, p, shifted: bool):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    if shifted:
        tail = ab_args(N - 1, av * qv, bv * qv, tv * qv, ctx)
    else:
        tail = andrews_bell_F(N, ctx)
    return (1 - av * tv * qv) / (1 - tv) + _w_factor(ctx) * tail + r1N(N, ctx)


def _hn1_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = (qpoch(qv ** (-N), n, qv=qv) * qpoch(av * tv * qv / bv, n, qv=qv)
               * qpoch(qv, n, qv=qv) * qv ** n)
        den = (qpoch(tv * qv, n, qv=qv) * qpoch(qv ** (1 - N) / bv, n, qv=qv)
               * qpoch(qv, n, qv=qv))
        total = total + num / den
    pref = (1 - tv * qv ** N) * (1 - bv) / ((1 - bv * qv ** N) * (1 - tv))
    return pref * total


def _hn2_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = (qbinom_in(N, n, qv=qv) * poch_cleared(av, bv, n, qv=qv) * tv ** n
               * qpoch(qv, n, qv=qv) * qv ** triangle(n))
        den = qpoch(bv * qv, n, qv=qv) * qpoch(tv * qv, n, qv=qv)
        total = total + ((-1) ** n) * num / den
    return (1 - tv * qv ** N) / (1 - tv) * total


def _b0_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = (qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv)
               * (av * tv) ** n * qv ** triangle(n))
        total = total + ((-1) ** n) * num / qpoch(tv * qv, n, qv=qv)
    return (1 - tv * qv ** N) / (1 - tv) * total


def _a0_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv) * (bv * tv) ** n * qv ** (n * n)
        den = qpoch(bv * qv, n, qv=qv) * qpoch(tv * qv, n, qv=qv)
        total = total + num / den
    return (1 - tv * qv ** N) * total


def _theta_sum(ctx, N):
    qv, av, bv, tv = _v(ctx)
    total = qv * 0
    for n in range(1, N + 1):
        den = qv ** 0
        for j in range(1, n + 1):
            den = den * (1 - tv * qv ** j) * (1 - qv ** j / tv)
        total = total + qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv) * qv ** (n * n) / den
    return total


def _bt_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv) * tv ** (2 * n) * qv ** (n * n)
        total = total + num / qpoch(tv * qv, n, qv=qv) ** 2
    return (1 - tv * qv ** N) * total


def _mb_lhs(ctx, p):
    qv = ctx["q"]
    N, m, r = p["N"], p["m"], p["r"]
    qr = qv ** r
    total = qv * 0
    for n in range(N + 1):
        num = (qbinom_in(N, n, m, qv=qv) * qpoch(qv ** m, n, m, qv=qv)
               * qpoch(qr, N - n, m, qv=qv) * qv ** (r * n))
        den = qpoch(qr, N, m, qv=qv) * qpoch(qr, n + 1, m, qv=qv)
        total = total + num / den
    return total


def _mb_rhs(ctx, p, corrected: bool):
    qv = ctx["q"]
    N, m, r = p["N"], p["m"], p["r"]
    qr = qv ** r
    total = qv * 0
    for n in range(N + 1):
        num = (qbinom_in(N, n, m, qv=qv) * qpoch(qv ** m, n, m, qv=qv)
               * qv ** (m * n * n + 2 * r * n))
        total = total + num / qpoch(qr, n + 1, m, qv=qv) ** 2
    pref = 1 - qv ** (m * N + r) if corrected else 1 - qv ** (N + r)
    return pref * total


def _he1_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    atq = av * tv * qv
    for n in range(N + 1):
        num = qpoch(bv, n, qv=qv) * qpoch(tv, n, qv=qv) * qv ** n
        total = total + num / (qpoch(atq, n, qv=qv) * qpoch(qv, n, qv=qv))
    pref = (qpoch(atq, N, qv=qv) * qpoch(qv, N, qv=qv)
            / (qpoch(tv, N, qv=qv) * qpoch(bv * qv, N, qv=qv)))
    return pref * total


def _fa_sum(ctx, N):
    qv, av, bv, tv = _v(ctx)
    total = qv * 0
    for n in range(N + 1):
        num = qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv) * bv ** n * qv ** (n * n)
        total = total + num / (qpoch(bv * qv, n, qv=qv) * qpoch(qv, n, qv=qv))
    return total


def _fb0_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = qpoch(tv, n, qv=qv) * qv ** n
        total = total + num / (qpoch(bv * qv, n, qv=qv) * qpoch(qv, n, qv=qv))
    pref = qpoch(bv * qv, N, qv=qv) * qpoch(qv, N, qv=qv) / qpoch(tv, N, qv=qv)
    return pref * total


def _fb0b_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        num = qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv) * (-bv) ** n * qv ** triangle(n)
        total = total + num / qpoch(tv * qv, n, qv=qv)
    return (1 - tv * qv ** N) / (1 - tv) * total


def _cmp_lhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    total = qv * 0
    for n in range(p["N"] + 1):
        total = total + qv ** n / (qpoch(bv * qv, n, qv=qv) * qpoch(qv, n, qv=qv))
    return total


def _cmp_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        total = total + (qbinom_in(N, n, qv=qv) * qpoch(qv, n, qv=qv)
                         * (-bv) ** n * qv ** triangle(n))
    return total / (qpoch(bv * qv, N, qv=qv) * qpoch(qv, N, qv=qv))


def _cmp2_lhs(ctx, p):
    qv = ctx["q"]
    total = qv * 0
    for n in range(p["N"] + 1):
        total = total + qv ** (2 * n) / qpoch(qv, 2 * n, qv=qv)
    return total


def _cmp2_rhs(ctx, p):
    qv = ctx["q"]
    N = p["N"]
    total = qv * 0
    for n in range(N + 1):
        total = total + ((-1) ** n) * (qbinom_in(N, n, 2, qv=qv)
                                       * qpoch(qv ** 2, n, 2, qv=qv) * qv ** (n * n))
    return total / qpoch(qv, 2 * N, qv=qv)


def _a0h_sum(ctx, N, binv):
    qv, av, bv, tv = _v(ctx)
    total = qv * 0
    first = 1 / tv if binv else bv
    for n in range(N + 1):
        num = qpoch(first, n, qv=qv) * qpoch(tv, n, qv=qv) * qv ** n
        total = total + num / qpoch(qv, n, qv=qv)
    return total


# --- section-3 transformation sides ----------------------------------------

def _t31_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av * qv, bv * qv, tv, ctx)
    return 1 + tv * (1 - av * qv) * (1 - qv ** (N + 1)) / ((1 - bv * qv) * (1 - tv * qv ** N)) * tail


def _t32_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av, bv, tv * qv, ctx)
    return ((1 - bv) * (1 - tv * qv ** (N + 1)) / ((1 - tv) * (1 - bv * qv ** (N + 1)))
            + (1 - qv ** (N + 1)) * (bv - av * tv * qv)
            / ((1 - bv * qv ** (N + 1)) * (1 - tv)) * tail)


def _t33_rhs(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av, bv * qv, tv * qv, ctx)
    return ((1 - tv * qv ** (N + 1)) / (1 - tv)
            + (1 - qv ** (N + 1)) * (bv - av) * tv * qv
            / ((1 - bv * qv) * (1 - tv)) * tail)


def _c34_rhs(ctx, p, level_shift: int):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N + level_shift, av, bv * qv, tv, ctx)
    return ((1 - tv * qv ** (N + 1)) / (1 - tv)
            - (bv - av) * (1 - tv * qv ** (N + 1)) * tv / ((1 - tv) * (bv - av * tv))
            + (bv - av) * (1 - bv * qv ** (N + 2)) * tv
            / ((1 - bv * qv) * (bv - av * tv)) * tail)


def _c35_rhs_printed(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av * qv, bv, tv, ctx)
    return (1 - bv * (1 - av * qv) * (1 - qv ** (N + 1)) * (1 - tv * qv ** (N + 1))
            / ((1 - tv * qv ** N) * (1 - bv * qv ** (N + 2)) * (bv - av * qv))
            + (1 - av * qv) * (1 - qv ** (N + 1)) * (bv - av * qv * tv)
            / ((1 - tv * qv ** N) * (bv - av * qv) * (1 - bv * qv ** (N + 2))) * tail)


def _c35_rhs_corrected(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av * qv, bv, tv, ctx)
    return (1 - bv * (1 - av * qv) * (1 - qv ** (N + 1))
            / ((1 - bv * qv ** (N + 1)) * (bv - av * qv))
            + (1 - av * qv) * (1 - qv ** (N + 1)) * (bv - av * qv * tv)
            / ((1 - tv * qv ** N) * (bv - av * qv) * (1 - bv * qv ** (N + 1))) * tail)


def _t36_rhs_printed(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av * qv, bv, tv * qv, ctx)
    mid = (tv - (bv - av * qv * tv) / (bv - av * qv)
           + (bv - av * qv * tv) * (1 - bv) / ((bv - av * qv) * (1 - bv * qv ** (N + 1))))
    return (1 + (1 - av * qv) * (1 - qv ** (N + 1)) * (1 - tv * qv ** (N + 1))
            / ((1 - tv * qv ** N) * (1 - bv * qv ** (N + 2)) * (1 - tv)) * mid
            + (1 - av * qv) * (1 - qv ** (N + 1)) ** 2 * (bv - av * qv * tv) * (bv - av * tv * qv ** 2)
            / ((1 - tv * qv ** N) * (bv - av * qv) * (1 - bv * qv ** (N + 2))
               * (1 - bv * qv ** (N + 1)) * (1 - tv)) * tail)


def _t36_rhs_corrected(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N - 1, av * qv, bv, tv * qv, ctx)
    g = (1 - av * qv) * (1 - qv ** (N + 1)) / ((bv - av * qv) * (1 - bv * qv ** (N + 1)))
    return (1 - bv * g
            + g * (bv - av * qv * tv) * (1 - bv) / ((1 - tv) * (1 - bv * qv ** N))
            + g * (1 - qv ** N) * (bv - av * qv * tv) * (bv - av * tv * qv ** 2)
            / ((1 - tv * qv ** N) * (1 - bv * qv ** N) * (1 - tv)) * tail)


def _t37_rhs_printed(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N, av * qv, bv * qv, tv * qv, ctx)
    return (1 + (1 - av * qv) * (1 - qv ** (N + 1)) * (1 - tv * qv ** (N + 1)) * tv
            / ((1 - tv * qv ** N) * (1 - bv * qv ** (N + 2)) * (1 - tv))
            + (1 - av * qv) * (1 - qv ** (N + 1)) ** 2 * (bv - av * tv * qv) * tv * qv
            / ((1 - bv * qv) * (1 - tv * qv ** N) * (1 - bv * qv ** (N + 2)) * (1 - tv)) * tail)


def _t37_rhs_corrected(ctx, p):
    qv, av, bv, tv = _v(ctx)
    N = p["N"]
    tail = fine_args(N - 1, av * qv, bv * qv, tv * qv, ctx)
    return (1 + tv * (1 - av * qv) * (1 - qv ** (N + 1)) / ((1 - tv) * (1 - bv * qv ** (N + 1)))
            + tv * qv * (1 - av * qv) * (1 - qv ** (N + 1)) * (1 - qv ** N) * (bv - av * tv * qv)
            / ((1 - bv * qv) * (1 - tv * qv ** N) * (1 - bv * qv ** (N + 1)) * (1 - tv)) * tail)


# --- catalog ----------------------------------------------------------------

def _fine_lhs(ctx, p):
    return fine_N(p["N"], ctx)


def _fine_lhs_up(ctx, p):
    return fine_N(p["N"] + 1, ctx)


def _build_catalog() -> tuple[Identity, ...]:
    e = []
    add = e.append

    add(Identity(
        "AB1", "truncated functional equation with first-order remainder",
        "Andrews-Bell, Lemma 2.1",
        lhs=lambda v, p: andrews_bell_F(p["N"], v),
        rhs=lambda v, p: _ab1_rhs(v, p, shifted=False),
        corrected_rhs=lambda v, p: _ab1_rhs(v, p, shifted=True),
        n_min=1,
        note=("printed display repeats F(a,b,t,N) on the right; the remainder "
              "formula matches the variant whose right side is F(aq,bq,tq,N-1)"),
    ))
    add(Identity(
        "PF1", "partial-fraction decomposition of the finite Fine function",
        "finite form of Fine (16.3)",
        lhs=_fine_lhs, rhs=lambda v, p: partial_fraction_rhs(p["N"], v),
    ))
    add(Identity(
        "RF1", "finite Rogers-Fine identity",
        "finite form of the Rogers-Fine identity",
        lhs=_fine_lhs, rhs=lambda v, p: rogers_fine_finite_rhs(p["N"], v),
        n_min=1,
        note=("asserted for N >= 1; at N = 0 the (atq^2)_{N-1} factor needs the "
              "reciprocal convention (A)_{-1} = 1/(1 - A/q), under which it holds too"),
    ))
    add(Identity(
        "BR1", "3phi2 representation of the finite Fine function",
        "terminating 3phi2 bridge",
        lhs=lambda v, p: phi32(Phi32Spec(
            (v["q"] ** (-p["N"]), v["q"], v["a"] * v["q"]),
            (v["b"] * v["q"], v["q"] ** (1 - p["N"]) / v["t"]),
            v["q"], p["N"]), v),
        rhs=_fine_lhs,
    ))
    add(Identity(
        "AC3", "3phi2 transformation law",
        "Andrews, finite Heine transformation, Corollary 3",
        lhs=lambda v, p: _ac3_lhs(v, _c_slot(p["c"], v), p["N"]),
        rhs=lambda v, p: _ac3_rhs(v, _c_slot(p["c"], v), p["N"]),
        extra_params=(("c", ("atq", "bt")),),
    ))
    add(Identity(
        "HN1", "Heine-transformed series for the finite Fine function",
        "via Andrews' finite Heine transformation",
        lhs=_fine_lhs, rhs=_hn1_rhs,
    ))
    add(Identity(
        "AL1", "3phi2 transformation with argument btq^N",
        "Andrews, finite Heine transformation, Lemma 1",
        lhs=lambda v, p: _al1_lhs(v, _c_slot(p["c"], v), p["N"]),
        rhs=lambda v, p: _al1_rhs(v, _c_slot(p["c"], v), p["N"]),
        extra_params=(("c", ("atq", "bt")),),
        note=("the printed prefactor subscript is a free index n; read as N, "
              "the reading its later specializations rely on"),
    ))
    add(Identity(
        "HN2", "alternating q-binomial series for the finite Fine function",
        "finite form of Fine (6.3), q-binomial shape",
        lhs=_fine_lhs, rhs=_hn2_rhs,
    ))
    add(Identity(
        "B0", "b = 0 evaluation", "finite form of Fine (6.1)",
        lhs=lambda v, p: fine_args(p["N"], v["a"], v["q"] * 0, v["t"], v),
        rhs=_b0_rhs,
    ))
    add(Identity(
        "A0", "a = 0 evaluation", "finite form of Fine (12.3)",
        lhs=lambda v, p: (1 - v["t"]) * fine_args(p["N"], v["q"] * 0, v["b"], v["t"], v),
        rhs=_a0_rhs,
    ))
    add(Identity(
        "TH", "theta form at b = 1/t", "finite form of Fine (12.32)",
        lhs=lambda v, p: (1 - v["t"]) * fine_args(p["N"], v["q"] * 0, 1 / v["t"], v["t"], v),
        rhs=lambda v, p: (1 - v["t"] * v["q"] ** p["N"]) + _theta_sum(v, p["N"]),
        corrected_rhs=lambda v, p: (1 - v["t"] * v["q"] ** p["N"]) * (1 + _theta_sum(v, p["N"])),
        note="printed display omits the (1 - tq^N) factor on the n >= 1 sum",
    ))
    add(Identity(
        "BT", "b = t evaluation", "finite form of Fine (12.33)",
        lhs=lambda v, p: (1 - v["t"]) * fine_args(p["N"], v["q"] * 0, v["t"], v["t"], v),
        rhs=_bt_rhs,
    ))
    add(Identity(
        "MB", "mixed-base form at q -> q^m, t -> q^r", "finite form of Fine (12.331)",
        lhs=_mb_lhs,
        rhs=lambda v, p: _mb_rhs(v, p, corrected=False),
        corrected_rhs=lambda v, p: _mb_rhs(v, p, corrected=True),
        extra_params=(("m", 1, 3), ("r", 1, 3)),
        note="printed prefactor (1 - q^{N+r}) drops the base exponent; it is (1 - q^{mN+r})",
    ))
    add(Identity(
        "HE1", "Heine-type representation", "finite Heine transformation specialization",
        lhs=_fine_lhs, rhs=_he1_rhs,
    ))
    add(Identity(
        "B1", "evaluation at b = 1", "q-binomial theorem specialization",
        lhs=lambda v, p: fine_args(p["N"], v["a"], v["q"] ** 0, v["t"], v),
        rhs=lambda v, p: (qpoch(v["a"] * v["t"] * v["q"], p["N"], qv=v["q"])
                          / qpoch(v["t"], p["N"], qv=v["q"])),
    ))
    add(Identity(
        "T1L", "t -> 1 limit of (1 - t) F_N", "finite form of Fine (6.31)",
        lhs=lambda v, p: ((1 - v["t"]) * fine_N(p["N"], v)).substitute("t", 1),
        rhs=lambda v, p: ((1 - v["q"] ** p["N"])
                          * qpoch(v["a"] * v["q"], p["N"], qv=v["q"])
                          / qpoch(v["b"] * v["q"], p["N"], qv=v["q"])),
        t_symbolic=True,
    ))
    add(Identity(
        "FA12_31", "reciprocal of (bq)_N as a q-binomial sum", "finite form of Fine (12.31)",
        lhs=lambda v, p: 1 / qpoch(v["b"] * v["q"], p["N"], qv=v["q"]),
        rhs=lambda v, p: (1 - v["q"] ** p["N"]) * _fa_sum(v, p["N"]),
        corrected_rhs=lambda v, p: _fa_sum(v, p["N"]),
        note="printed right side carries a spurious (1 - q^N) prefactor",
    ))
    add(Identity(
        "FB0", "F_N(b/t, 0; t) as a unilateral sum", "finite form of Fine (7.3)",
        lhs=lambda v, p: fine_args(p["N"], v["b"] / v["t"], v["q"] * 0, v["t"], v),
        rhs=_fb0_rhs,
    ))
    add(Identity(
        "FB0b", "F_N(b/t, 0; t) as an alternating sum", "companion to Fine (7.3)",
        lhs=lambda v, p: fine_args(p["N"], v["b"] / v["t"], v["q"] * 0, v["t"], v),
        rhs=_fb0b_rhs,
    ))
    add(Identity(
        "CMP", "comparison identity from the t -> 0 limits", "finite form of Fine (7.32)",
        lhs=_cmp_lhs, rhs=_cmp_rhs,
    ))
    add(Identity(
        "CMP2", "base q^2 comparison identity", "finite form of Fine (7.323)",
        lhs=_cmp2_lhs, rhs=_cmp2_rhs,
    ))
    add(Identity(
        "A0H", "a = 0 case of the Heine-type representation", "finite form of Fine (11.3)",
        lhs=lambda v, p: (qpoch(v["t"], p["N"], qv=v["q"])
                          * qpoch(v["b"] * v["q"], p["N"], qv=v["q"])
                          / qpoch(v["q"], p["N"], qv=v["q"])
                          * fine_args(p["N"], v["q"] * 0, v["b"], v["t"], v)),
        rhs=lambda v, p: _a0h_sum(v, p["N"], binv=False),
    ))
    add(Identity(
        "BTI", "b = 1/t case of the Heine-type representation", "finite form of Fine (11.4)",
        lhs=lambda v, p: (qpoch(v["t"], p["N"], qv=v["q"])
                          * qpoch(v["q"] / v["t"], p["N"], qv=v["q"])
                          / qpoch(v["q"], p["N"], qv=v["q"])
                          * fine_args(p["N"], v["q"] * 0, 1 / v["t"], v["t"], v)),
        rhs=lambda v, p: _a0h_sum(v, p["N"], binv=True),
    ))

    shift_note = ("derivation proves the display with the left side at truncation "
                  "order N+1; as printed (same order on both sides) it fails for every N")
    add(Identity(
        "T31", "shift (a, b) -> (aq, bq)", "finite form of Fine (2.2)",
        lhs=_fine_lhs, rhs=_t31_rhs,
        corrected_lhs=_fine_lhs_up, corrected_rhs=_t31_rhs,
        note=shift_note,
    ))
    add(Identity(
        "T32", "advance t -> tq", "seed transformation in t",
        lhs=_fine_lhs, rhs=_t32_rhs,
        corrected_lhs=_fine_lhs_up, corrected_rhs=_t32_rhs,
        note=shift_note,
    ))
    add(Identity(
        "T33", "shift (b, t) -> (bq, tq)", "finite form of Fine (4.3)",
        lhs=_fine_lhs, rhs=_t33_rhs,
        corrected_lhs=_fine_lhs_up, corrected_rhs=_t33_rhs,
        note=shift_note,
    ))
    add(Identity(
        "C34", "advance b -> bq", "finite form of Fine (4.4)",
        lhs=_fine_lhs, rhs=lambda v, p: _c34_rhs(v, p, 0),
        corrected_lhs=_fine_lhs_up, corrected_rhs=lambda v, p: _c34_rhs(v, p, 1),
        note=("both Fine-function orders sit one below the displayed coefficients; "
              "raising both sides to order N+1 restores the identity"),
        exclusions=(("b = a*t", lambda pt: pt["b"] == pt["a"] * pt["t"]),),
    ))
    add(Identity(
        "C35", "advance a -> aq", "finite form of Fine (4.5)",
        lhs=_fine_lhs, rhs=_c35_rhs_printed,
        corrected_lhs=_fine_lhs_up, corrected_rhs=_c35_rhs_corrected,
        note=("printed form composes two misprinted displays; replaying the chain "
              "gives the (1 - bq^{N+1}) coefficients with the left side at order N+1"),
        exclusions=(("b = a*q", lambda pt: pt["b"] == pt["a"] * pt["q"]),),
    ))
    add(Identity(
        "T36", "shift (a, t) -> (aq, tq)", "finite form of Fine (4.6)",
        lhs=_fine_lhs, rhs=_t36_rhs_printed,
        corrected_lhs=_fine_lhs_up, corrected_rhs=_t36_rhs_corrected,
        corrected_n_min=1,
        note=("replayed chain relates order N+1 to order N-1 with mixed "
              "(1 - q^{N+1})(1 - q^N) factors, not the printed square"),
        exclusions=(("b = a*q", lambda pt: pt["b"] == pt["a"] * pt["q"]),),
    ))
    add(Identity(
        "T37", "shift (a, b, t) -> (aq, bq, tq)", "finite form of Fine (4.1)",
        lhs=_fine_lhs, rhs=_t37_rhs_printed,
        corrected_lhs=_fine_lhs_up, corrected_rhs=_t37_rhs_corrected,
        corrected_n_min=1,
        note=("replayed chain relates order N+1 to order N-1 with mixed "
              "(1 - q^{N+1})(1 - q^N) factors, not the printed square"),
    ))
    return tuple(sorted(e, key=lambda x: x.id))


def _ac3_lhs(ctx, cval, N):
    qv, av, bv, tv = _v(ctx)
    return phi32(Phi32Spec(
        (qv ** (-N), av * bv * tv / cval, bv),
        (bv * tv, bv * qv ** (1 - N) / cval),
        qv, N), ctx)


def _ac3_rhs(ctx, cval, N):
    qv, av, bv, tv = _v(ctx)
    pref = (qpoch(cval, N, qv=qv) * qpoch(tv, N, qv=qv)
            / (qpoch(cval / bv, N, qv=qv) * qpoch(bv * tv, N, qv=qv)))
    return pref * phi32(Phi32Spec(
        (qv ** (-N), av, bv), (cval, qv ** (1 - N) / tv), qv, N), ctx)


def _al1_lhs(ctx, cval, N):
    qv, av, bv, tv = _v(ctx)
    return phi32(Phi32Spec(
        (qv ** (-N), av, bv), (cval, qv ** (1 - N) / tv), qv, N), ctx)


def _al1_rhs(ctx, cval, N):
    qv, av, bv, tv = _v(ctx)
    pref = qpoch(av * tv, N, qv=qv) / qpoch(tv, N, qv=qv)
    return pref * phi32(Phi32Spec(
        (qv ** (-N), cval / bv, av), (cval, av * tv), bv * tv * qv ** N, N), ctx)


_CATALOG: tuple[Identity, ...] | None = None


def catalog() -> list[Identity]:
    """All catalog entries, in stable id order."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return list(_CATALOG)


def catalog_by_id() -> dict[str, Identity]:
    return {entry.id: entry for entry in catalog()}


# ---------------------------------------------------------------------------
# Verification drivers
# ---------------------------------------------------------------------------


def _check_params(entry: Identity, params: Mapping, form: str) -> None:
    N = params.get("N")
    if N is None or N < entry.form_n_min(form):
        raise ConstraintViolation(
            f"{entry.id} ({form}) needs N >= {entry.form_n_min(form)}, got {N}")
    for spec in entry.extra_params:
        name = spec[0]
        if name not in params:
            raise ConstraintViolation(f"{entry.id} needs parameter {name}")
        value = params[name]
        if len(spec) == 3:
            lo, hi = spec[1], spec[2]
            if not (lo <= value <= hi):
                raise ConstraintViolation(f"{entry.id}: {name}={value} outside [{lo}, {hi}]")
        else:
            if value not in spec[1]:
                raise ConstraintViolation(f"{entry.id}: {name}={value} not in {spec[1]}")


def _diff_witness(diff) -> tuple[str, str]:
    text = str(diff)
    head = text if len(text) <= 200 else text[:200] + "..."
    return head, digest(text)


def verify_symbolic(entry: Identity, params: Mapping, form: str = "printed") -> VerificationReport:
    """Build both sides exactly and test the canonical difference for zero."""
    _check_params(entry, params, form)
    lhs_b, rhs_b = entry.sides(form)
    start = time.perf_counter()
    lhs = lhs_b(SYMBOLIC_VARS, params)
    rhs = rhs_b(SYMBOLIC_VARS, params)
    diff = lhs - rhs
    millis = int((time.perf_counter() - start) * 1000)
    if diff.is_zero:
        return VerificationReport(entry.report_id(form), "symbolic", dict(params),
                                  "pass", millis=millis)
    head, dig = _diff_witness(diff)
    return VerificationReport(entry.report_id(form), "symbolic", dict(params),
                              "fail", witness=head, witness_digest=dig, millis=millis)


_POLE_ERRORS = (PoleError, ZeroDivisionError, IdenticallyZeroDenominator, DivisionByZero)


def _draw_point(rng: random.Random) -> dict:
    point = {}
    for name in ("q", "a", "b", "t"):
        while True:
            num = rng.randint(1, 64) * rng.choice((-1, 1))
            den = rng.randint(1, 64)
            value = rational(num, den)
            if name == "q" and abs(value) == 1:
                continue
            point[name] = value
            break
    return point


def _point_rng(seed: int, entry_id: str, form: str, params: Mapping, pt_index: int) -> random.Random:
    key = f"{seed}|{entry_id}|{form}|{sorted(params.items())}|{pt_index}"
    material = hashlib.sha256(key.encode()).digest()
    return random.Random(int.from_bytes(material[:8], "big"))


def verify_sampled(entry: Identity, params: Mapping, point: Mapping | None = None,
                   redraw_budget: int = 25, form: str = "printed",
                   seed: int = 1, pt_index: int = 0) -> VerificationReport:
    """Exact evaluation of both sides at a rational point, redrawing on
    poles or structural exclusions up to redraw_budget."""
    _check_params(entry, params, form)
    lhs_b, rhs_b = entry.sides(form)
    rng = _point_rng(seed, entry.id, form, params, pt_index)
    start = time.perf_counter()
    attempts = 0
    skip_reason = None
    while True:
        if point is None:
            point = _draw_point(rng)
        violated = next((desc for desc, pred in entry.exclusions if pred(point)), None)
        if violated is None:
            if entry.t_symbolic:
                ctx = {"q": RationalFunction.const(point["q"]),
                       "a": RationalFunction.const(point["a"]),
                       "b": RationalFunction.const(point["b"]),
                       "t": t_atom}
            else:
                ctx = dict(point)
            try:
                lhs = lhs_b(ctx, params)
                rhs = rhs_b(ctx, params)
            except _POLE_ERRORS as exc:
                skip_reason = f"pole: {exc}"
            else:
                millis = int((time.perf_counter() - start) * 1000)
                outcome = "pass" if lhs == rhs else "fail"
                report_params = dict(params) | {"pt": pt_index}
                if outcome == "pass":
                    return VerificationReport(entry.report_id(form), "sampled",
                                              report_params, "pass", millis=millis)
                head, dig = _diff_witness(lhs - rhs)
                return VerificationReport(entry.report_id(form), "sampled", report_params,
                                          "fail", witness=head, witness_digest=dig,
                                          millis=millis)
        else:
            skip_reason = f"structural exclusion: {violated}"
        point = None
        attempts += 1
        if attempts > redraw_budget:
            if redraw_budget > 0:
                raise Exhausted(f"{entry.id}: no admissible point in {redraw_budget} redraws")
            millis = int((time.perf_counter() - start) * 1000)
            return VerificationReport(entry.report_id(form), "sampled",
                                      dict(params) | {"pt": pt_index}, "skipped",
                                      witness=skip_reason, millis=millis)


def _param_grid(entry: Identity, n_max: int):
    combos = [{"N": N} for N in range(n_max + 1)]
    for spec in entry.extra_params:
        name = spec[0]
        if len(spec) == 3:
            values = range(spec[1], spec[2] + 1)
        else:
            values = spec[1]
        combos = [c | {name: val} for c in combos for val in values]
    return combos


def verify_entry(entry: Identity, n_max: int, mode: str = "symbolic", seed: int = 1,
                 points: int = 5, threads: int = 1) -> list[VerificationReport]:
    """All reports for one catalog entry over its grid up to n_max.

    Out-of-range parameter rows appear as skipped reports; erratum
    candidates contribute one row per form.  Builders are pure, so grid
    cells are independent; `threads` is validated and accepted, but
    execution stays serial (pure-Python exact arithmetic gains nothing
    from in-process threads) and report order is deterministic.
    """
    if n_max < 0:
        raise ConstraintViolation("n_max must be nonnegative")
    if mode not in ("symbolic", "sampled"):
        raise ConstraintViolation(f"unknown mode {mode!r}")
    if threads < 1:
        raise ConstraintViolation("threads must be a positive integer")
    reports: list[VerificationReport] = []
    for params in _param_grid(entry, n_max):
        for form in entry.forms():
            if params["N"] < entry.form_n_min(form):
                base = dict(params)
                reason = f"N below declared range (N >= {entry.form_n_min(form)})"
                if mode == "sampled":
                    for pt in range(points):
                        reports.append(VerificationReport(
                            entry.report_id(form), mode, base | {"pt": pt},
                            "skipped", witness=reason))
                else:
                    reports.append(VerificationReport(
                        entry.report_id(form), mode, base, "skipped", witness=reason))
                continue
            if mode == "symbolic":
                reports.append(verify_symbolic(entry, params, form))
            else:
                for pt in range(points):
                    reports.append(verify_sampled(entry, params, form=form,
                                                  seed=seed, pt_index=pt))
    reports.sort(key=_report_order)
    return reports


def verify_all(n_max: int, mode: str = "symbolic", seed: int = 1,
               points: int = 5, threads: int = 1) -> list[VerificationReport]:
    """Run the whole catalog over its parameter grid up to n_max."""
    reports: list[VerificationReport] = []
    for entry in catalog():
        reports.extend(verify_entry(entry, n_max, mode, seed, points, threads))
    reports.sort(key=_report_order)
    return reports


def _report_order(r: VerificationReport):
    p = r.params
    return (r.identity_id, p.get("N", 0), p.get("m", 0), p.get("r", 0),
            str(p.get("c", "")), p.get("pt", -1))


def run_passed(reports: list[VerificationReport]) -> bool:
    """Overall verdict: failures of '.printed' rows of erratum candidates
    are documented discrepancies, not verification failures."""
    return not any(r.outcome == "fail" and not r.identity_id.endswith(".printed")
                   for r in reports)


def perturbed(entry: Identity) -> Identity:
    """Copy of an entry with every right side multiplied by (1 + q);
    used to prove the harness cannot pass vacuously."""
    def wrap(builder):
        return lambda v, p: builder(v, p) * (1 + v["q"])

    return Identity(
        id=entry.id + "!perturbed", title=entry.title, source=entry.source,
        lhs=entry.lhs, rhs=wrap(entry.rhs), n_min=entry.n_min,
        extra_params=entry.extra_params,
        corrected_lhs=entry.corrected_lhs,
        corrected_rhs=wrap(entry.corrected_rhs) if entry.corrected_rhs else None,
        corrected_n_min=entry.corrected_n_min,
        note=entry.note, exclusions=entry.exclusions, t_symbolic=entry.t_symbolic,
    )
