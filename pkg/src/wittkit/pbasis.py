"""p-power decompositions and the derivation route they define.

Over F_p(X1..Xe) the coordinates form a p-basis: every x decomposes
uniquely as sum_i alpha_i^(p^n) X^i with i ranging over [0, p^n)^e.  For a
polynomial the decomposition is exponent bookkeeping (split every exponent
as p^n*q + r; Frobenius fixes the scalars); for x = f/g decompose
f*g^(p^n - 1) and divide every piece by g.

Given the decomposition, a component value on x can be *defined* through
the table of component values on monomials:

    D_j(x) = sum_i alpha_i^(p^n) * delta_j^i(X),   delta_j^i = D_j(X^i),

valid whenever n >= max(j), because D_k kills p^n-th powers for the
0 < k <= (n..n) that a product rule would otherwise contribute.  The
verifier checks this route against the independent rational extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import (Params, Poly, check_multiindex, grlex_key, iter_box,
                      iter_total_at_most)
from .errors import AlgebraError
from .hsd import HSDerivation, canonical_witt_derivation, delta_poly
from .linalg import kernel_basis
from .ratfun import RatFun


def decompose_poly(f: Poly, n: int) -> Dict[tuple, Poly]:
    """f = sum_i h_i^(p^n) X^i with i in [0, p^n)^e; nonzero pieces only."""
    if n < 0:
        raise AlgebraError(f"decomposition level must be >= 0, got {n}")
    p, e = f.modulus, f.e
    if p is None:
        raise AlgebraError("decomposition requires F_p coefficients")
    for m in f.terms:
        if any(m[e:]):
            raise AlgebraError("decomposition input must live in F_p[X1..Xe]")
    q = p ** n
    width = 3 * e
    buckets: Dict[tuple, dict] = {}
    for m, c in f.terms.items():
        quot = [0] * width
        rem = [0] * e
        for t in range(e):
            quot[t], rem[t] = divmod(m[t], q)
        key = tuple(rem)
        buckets.setdefault(key, {})[tuple(quot)] = c
    return {i: Poly(e, p, t, _trusted=True) for i, t in buckets.items()}


def p_power_decompose(x: RatFun, n: int) -> Dict[tuple, RatFun]:
    """x = sum_i alpha_i^(p^n) X^i over F_p(X); nonzero pieces only."""
    p = x.modulus
    if x.is_polynomial():
        return {i: RatFun.from_poly(h) for i, h in decompose_poly(x.num, n).items()}
    g = x.den
    h = x.num * g ** (p ** n - 1)
    return {i: RatFun(piece, g) for i, piece in decompose_poly(h, n).items()}


def recompose(pieces: Dict[tuple, RatFun], e: int, p: int, n: int) -> RatFun:
    """Inverse of p_power_decompose (used by the roundtrip checks)."""
    total = RatFun.const(e, p, 0)
    q = p ** n
    for i, alpha in pieces.items():
        i = check_multiindex(i, e)
        if any(v >= q for v in i):
            raise AlgebraError(f"index {i} out of range for level {n}")
        mono = RatFun.from_poly(Poly.block_monomial(e, p, "X", i, 1))
        total = total + alpha ** q * mono
    return total


def derivation_via_pbasis(params: Params, x: RatFun, j: tuple, n: int,
                          D: Optional[HSDerivation] = None) -> RatFun:
    """The defining-axiom route to D_j(x), at decomposition level n.

    Requires n >= max(j); the delta table comes from the canonical Witt
    derivation unless another derivation is supplied.
    """
    j = check_multiindex(j, params.e)
    if n < max(j, default=0):
        raise AlgebraError(
            f"decomposition level n={n} is below max(j)={max(j)}; the "
            "defining-axiom route needs n >= max(j)")
    if D is None:
        D = canonical_witt_derivation(params)
    e, p = params.e, params.p
    q = p ** n
    # Assemble over the common denominator den^q so the whole sum costs a
    # single normalization instead of one per decomposition piece.
    if x.is_polynomial():
        pieces = decompose_poly(x.num, n)
        den = None
    else:
        pieces = decompose_poly(x.num * x.den ** (q - 1), n)
        den = x.den ** q
    total = Poly.zero(e, p)
    for i, h in pieces.items():
        delta = D._mono_components(i).get(j)
        if delta is None or delta.is_zero():
            continue
        total = total + h ** q * delta
    if den is None:
        return RatFun.from_poly(total)
    return RatFun(total, den)


def p_independence_check(candidates: List[Poly], degbound: int) -> Tuple[bool, Optional[dict]]:
    """Decide p-independence of b_1..b_e up to a degree bound.

    Searches for polynomials x_i of degree <= degbound, not all zero, with
    sum over i in [0,p)^e of x_i^p * b^i = 0.  Returns (True, None) when
    none exists at this bound, else (False, witness) where witness maps the
    exponent vector i to the cofactor x_i.
    """
    if not candidates:
        raise AlgebraError("need at least one candidate")
    e = candidates[0].e
    p = candidates[0].modulus
    if p is None:
        raise AlgebraError("p-independence is checked over F_p")
    if len(candidates) > 3 * e:
        raise AlgebraError("more candidates than available variables")
    for b in candidates:
        if b.modulus != p or b.e != e:
            raise AlgebraError("candidate domain mismatch")
    r = len(candidates)
    monos = iter_total_at_most(e, degbound)
    width = 3 * e
    # column (i, m): the polynomial X^(p*m) * prod_k b_k^(i_k)
    cols = []
    col_keys = []
    powers = {}
    for i in iter_box((p - 1,) * r):
        prod = Poly.const(e, p, 1)
        for k, ik in enumerate(i):
            if ik:
                if (k, ik) not in powers:
                    powers[(k, ik)] = candidates[k] ** ik
                prod = prod * powers[(k, ik)]
        for m in monos:
            mono = [0] * width
            mono[:e] = [p * v for v in m]
            shifted = Poly.monomial(e, p, tuple(mono), 1) * prod
            cols.append(shifted)
            col_keys.append((i, m))
    row_monos = sorted({mm for c in cols for mm in c.terms}, key=grlex_key)
    row_index = {mm: idx for idx, mm in enumerate(row_monos)}
    matrix = [[0] * len(cols) for _ in row_monos]
    for cidx, c in enumerate(cols):
        for mm, v in c.terms.items():
            matrix[row_index[mm]][cidx] = v
    kernel = kernel_basis(matrix, p, ncols=len(cols))
    if not kernel:
        return True, None
    vec = kernel[0]
    witness: Dict[tuple, Poly] = {}
    for cidx, coeff in enumerate(vec):
        if coeff:
            i, m = col_keys[cidx]
            mono = [0] * width
            mono[:e] = list(m)
            term = Poly.monomial(e, p, tuple(mono), coeff)
            witness[i] = witness.get(i, Poly.zero(e, p)) + term
    return False, witness


def dependence_witness_value(candidates: List[Poly], witness: dict) -> Poly:
    """Evaluate sum_i x_i^p * b^i for a dependence witness (should be 0)."""
    e = candidates[0].e
    p = candidates[0].modulus
    total = Poly.zero(e, p)
    for i, x in witness.items():
        prod = x ** p
        for k, ik in enumerate(i):
            if ik:
                prod = prod * candidates[k] ** ik
        total = total + prod
    return total


@dataclass
class PBasisContext:
    """The coordinates as p-basis, with its consistency checks run once.

    Construction verifies that the coordinate family is p-independent up to
    the degree bound and that the stored monomial component table agrees
    with fresh component computations on a small box.
    """

    params: Params
    degbound: int = 4
    derivation: HSDerivation = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.derivation = canonical_witt_derivation(self.params)
        e, p = self.params.e, self.params.p
        coords = [Poly.variable(f"X{k}", e, p) for k in range(1, e + 1)]
        independent, witness = p_independence_check(coords, self.degbound)
        if not independent:
            raise AlgebraError(f"coordinates fail p-independence: {witness}")
        box = (min(p, 2),) * e
        for i in iter_box(box):
            img = Poly.const(e, p, 1)
            for k, ik in enumerate(i):
                if ik:
                    img = img * self.derivation.images[k] ** ik
            for j in iter_box(box):
                # fresh extraction, bypassing the memoized component tables
                if img.coefficient_of("Y", j) != delta_poly(self.params, i, j):
                    raise AlgebraError(f"component table mismatch at i={i}, j={j}")

    def derive(self, x: RatFun, j: tuple, n: int) -> RatFun:
        return derivation_via_pbasis(self.params, x, j, n, self.derivation)
