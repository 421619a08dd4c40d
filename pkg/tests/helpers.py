"""Shared generators for randomized algebra tests (seeded, reproducible)."""

import random

from qfine.algebra import Polynomial, RationalFunction, rational


def random_polynomial(rng: random.Random, max_terms: int = 5, max_exp: int = 3,
                      coeff_bound: int = 9) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mon = tuple(rng.randint(0, max_exp) for _ in range(4))
        terms[mon] = rational(rng.randint(-coeff_bound, coeff_bound))
    return Polynomial(terms)


def random_nonzero_polynomial(rng: random.Random, **kw) -> Polynomial:
    while True:
        p = random_polynomial(rng, **kw)
        if not p.is_zero:
            return p


def random_ratfunc(rng: random.Random) -> RationalFunction:
    return RationalFunction(random_polynomial(rng), random_nonzero_polynomial(rng))


def random_point(rng: random.Random, bound: int = 9) -> dict:
    point = {}
    for name in ("q", "a", "b", "t"):
        point[name] = rational(rng.randint(-bound, bound), rng.randint(1, bound))
    return point
