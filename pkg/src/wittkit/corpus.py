"""Deterministic test corpora: monomials plus seeded sparse random inputs."""

from __future__ import annotations

import random
from typing import List

from .algebra import Params, Poly, iter_total_at_most
from .ratfun import RatFun


def monomial_corpus(params: Params, max_deg: int) -> List[Poly]:
    """All monomials of total degree <= max_deg in X1..Xe, ascending order."""
    e, p = params.e, params.p
    return [Poly.block_monomial(e, p, "X", i, 1)
            for i in iter_total_at_most(e, max_deg)]


def random_poly(params: Params, rng: random.Random, max_deg: int,
                max_terms: int = 4, nonzero: bool = False) -> Poly:
    e, p = params.e, params.p
    monos = iter_total_at_most(e, max_deg)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(monos)
        key = tuple(m) + (0,) * (2 * e)
        terms[key] = terms.get(key, 0) + rng.randrange(1, p)
    f = Poly(e, p, terms)
    if nonzero and f.is_zero():
        return Poly.block_monomial(e, p, "X", monos[1] if len(monos) > 1 else monos[0], 1)
    return f


def random_ratfun(params: Params, rng: random.Random, max_deg: int = 3,
                  max_terms: int = 3) -> RatFun:
    """Random fraction whose denominator has constant term 1."""
    e, p = params.e, params.p
    num = random_poly(params, rng, max_deg, max_terms, nonzero=True)
    monos = [m for m in iter_total_at_most(e, max_deg) if sum(m) >= 1]
    den_terms = {(0,) * (3 * e): 1}
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(monos)
        key = tuple(m) + (0,) * (2 * e)
        den_terms[key] = (den_terms.get(key, 0) + rng.randrange(1, p)) % p
    den_terms = {k: v for k, v in den_terms.items() if v}
    den = Poly(e, p, den_terms)
    return RatFun(num, den)


def standard_corpus(params: Params, deg_bound: int, seed: int,
                    extra: int = 4) -> List[Poly]:
    """Monomials of degree <= deg_bound plus `extra` seeded sparse polys."""
    rng = random.Random(seed)
    out = monomial_corpus(params, deg_bound)
    for _ in range(extra):
        out.append(random_poly(params, rng, deg_bound, max_terms=4, nonzero=True))
    return out
