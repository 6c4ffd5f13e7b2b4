"""Polynomial formal group laws over F_p and their iterativity constants.

A law is a vector F = (F_1..F_e) in F_p[X1..Xe, Y1..Ye] with F(X, 0) = X,
F(0, Y) = Y.  The built-in kinds are the coordinatewise additive law, the
one-dimensional multiplicative law X + Y + XY, and the length-e Witt vector
addition law.  All three are polynomial, so every computation here is exact.

The iterativity constants of a law are the structure constants that turn a
compatible one-parameter system of higher derivations into a composition
table: alpha_{i,j}(l) is the coefficient of X^i Y^j in F_1^l_1 * ... *
F_e^l_e.  Because every component has zero constant term, F^l has order at
least |l|, which is what makes the |l| <= |i|+|j| cutoff complete; that
order property is enforced at construction rather than assumed.
"""

from __future__ import annotations

import threading
from typing import Dict, Tuple

from .algebra import Params, Poly, iter_total_at_most, mi_add
from .errors import AlgebraError, InvariantViolation
from .witt import witt_addition_law

LAW_KINDS = ("additive", "multiplicative", "witt")
_KIND_ALIASES = {"ga": "additive", "gm": "multiplicative", "witt": "witt",
                 "additive": "additive", "multiplicative": "multiplicative"}


class FormalGroupLaw:
    """An e-tuple of law components plus memoized power/constant tables."""

    def __init__(self, params: Params, kind: str, components: Tuple[Poly, ...]):
        self.params = params
        self.kind = kind
        self.components = tuple(components)
        if len(self.components) != params.e:
            raise AlgebraError("law must have exactly e components")
        for f in self.components:
            if f.min_degree() < 1 and not f.is_zero():
                raise InvariantViolation(
                    "law component with a nonzero constant term; the "
                    "finiteness cutoff for iterativity constants would fail")
        self._powers: Dict[tuple, Poly] = {}
        self._tables: Dict[tuple, dict] = {}
        self._lock = threading.Lock()

    def law_power(self, l: tuple) -> Poly:
        """F_1^l_1 * ... * F_e^l_e, memoized."""
        l = tuple(l)
        with self._lock:
            hit = self._powers.get(l)
        if hit is not None:
            return hit
        acc = Poly.const(self.params.e, self.params.p, 1)
        for f, k in zip(self.components, l):
            if k:
                acc = acc * (f ** k)
        with self._lock:
            self._powers[l] = acc
        return acc


def make_fgl(kind: str, params: Params) -> FormalGroupLaw:
    canon = _KIND_ALIASES.get(kind)
    if canon is None:
        raise AlgebraError(f"unknown law kind {kind!r}; expected one of "
                           f"ga/additive, gm/multiplicative, witt")
    p, e = params.p, params.e
    if canon == "additive":
        comps = tuple(Poly.variable(f"X{k}", e, p) + Poly.variable(f"Y{k}", e, p)
                      for k in range(1, e + 1))
    elif canon == "multiplicative":
        if e != 1:
            raise AlgebraError("the multiplicative law is one-dimensional (e=1)")
        x, y = Poly.variable("X1", 1, p), Poly.variable("Y1", 1, p)
        comps = (x + y + x * y,)
    else:
        comps = witt_addition_law(params).reduced
    return FormalGroupLaw(params, canon, comps)


def fgl_axiom_check(F: FormalGroupLaw) -> dict:
    """Unit, commutativity and associativity verdicts, each exact."""
    e, p = F.params.e, F.params.p
    zeros_y = {f"Y{k}": Poly.zero(e, p) for k in range(1, e + 1)}
    zeros_x = {f"X{k}": Poly.zero(e, p) for k in range(1, e + 1)}
    unit = all(
        f.substitute(zeros_y) == Poly.variable(f"X{k + 1}", e, p)
        and f.substitute(zeros_x) == Poly.variable(f"Y{k + 1}", e, p)
        for k, f in enumerate(F.components))
    swap = {}
    for k in range(1, e + 1):
        swap[f"X{k}"] = Poly.variable(f"Y{k}", e, p)
        swap[f"Y{k}"] = Poly.variable(f"X{k}", e, p)
    commutative = all(f.substitute(swap) == f for f in F.components)
    inner_xy = {f"X{k + 1}": F.components[k] for k in range(e)}
    inner_yz = {f"Y{k + 1}": F.components[k].rename({"X": "Y", "Y": "Z"})
                for k in range(e)}
    rename_z = {f"Y{k}": Poly.variable(f"Z{k}", e, p) for k in range(1, e + 1)}
    associative = all(
        f.substitute(rename_z).substitute(inner_xy)
        == f.substitute(inner_yz)
        for f in F.components)
    return {"unit": unit, "commutative": commutative, "associative": associative}


def mult_by_n(F: FormalGroupLaw, n: int) -> Tuple[Poly, ...]:
    """[n]_F by the recursion [1] = X, [n+1] = F(X, [n]); exact."""
    if n < 1:
        raise AlgebraError(f"mult_by_n requires n >= 1, got {n}")
    e, p = F.params.e, F.params.p
    cur = tuple(Poly.variable(f"X{k}", e, p) for k in range(1, e + 1))
    for _ in range(n - 1):
        images = {f"Y{k + 1}": cur[k] for k in range(e)}
        cur = tuple(f.substitute(images) for f in F.components)
    return cur


def iterativity_constants(F: FormalGroupLaw, i: tuple, j: tuple) -> dict:
    """Nonzero alpha_{i,j}(l) for all |l| <= |i|+|j|, memoized per (i,j)."""
    i, j = tuple(i), tuple(j)
    key = (i, j)
    with F._lock:
        hit = F._tables.get(key)
    if hit is not None:
        return dict(hit)
    e = F.params.e
    target = [0] * (3 * e)
    target[:e] = list(i)
    target[e:2 * e] = list(j)
    target = tuple(target)
    table = {}
    for l in iter_total_at_most(e, sum(i) + sum(j)):
        c = F.law_power(l).coeff_of_exponents(target)
        if c:
            table[l] = c
    with F._lock:
        F._tables[key] = table
    return dict(table)


def additive_constants_oracle(p: int, i: tuple, j: tuple) -> dict:
    """Closed form for the coordinatewise additive law: products of binomials."""
    from math import comb
    val = 1
    for a, b in zip(i, j):
        val = (val * comb(a + b, a)) % p
    l = mi_add(i, j)
    return {l: val} if val else {}
