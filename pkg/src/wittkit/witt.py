"""Truncated Witt vector addition laws, exactly.

The m-th ghost polynomial is W_m = sum_{i=0..m} p^i * X_{i+1}^(p^(m-i)).
The integral addition-law components S_1..S_e are produced by the standard
recursion: S_{m+1} is determined over Z by requiring
W_m(S_1..S_{m+1}) = W_m(X) + W_m(Y), and the division by p^m in that step
must be exact; we assert exactness coefficient by coefficient and then
re-verify the ghost identity by direct substitution, so a generation bug
cannot slip through silently.  Reducing mod p gives the group law H.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Tuple

from .algebra import Params, Poly
from .errors import AlgebraError, InvariantViolation

_LAW_CACHE: dict = {}
_LAW_LOCK = threading.Lock()


def witt_polynomial(m: int, params: Params) -> Poly:
    """Ghost component W_m over Z in X_1..X_{m+1} (requires m < e)."""
    if m < 0:
        raise AlgebraError(f"witt polynomial index must be >= 0, got {m}")
    if m >= params.e:
        raise AlgebraError(
            f"witt polynomial W_{m} needs {m + 1} coordinates but e={params.e}")
    p, e = params.p, params.e
    acc = Poly.zero(e, None)
    for i in range(m + 1):
        x = Poly.variable(f"X{i + 1}", e, None)
        acc = acc + (x ** (p ** (m - i))).scale(p ** i)
    return acc


@dataclass(frozen=True)
class WittLawSet:
    """Integral components S_1..S_e and their mod-p reductions H_1..H_e."""

    params: Params
    integral: Tuple[Poly, ...]
    reduced: Tuple[Poly, ...]


def _ghost_check(params: Params, components: Tuple[Poly, ...]) -> None:
    """W_m(S_1..S_{m+1}) must equal W_m(X) + W_m(Y) over Z, for every m < e."""
    for m in range(params.e):
        wm = witt_polynomial(m, params)
        images = {f"X{k + 1}": components[k] for k in range(m + 1)}
        lhs = wm.substitute(images)
        rhs = wm + wm.rename({"X": "Y"})
        if lhs != rhs:
            raise InvariantViolation(
                f"ghost identity failed at level {m} for p={params.p}, e={params.e}")


def witt_addition_law(params: Params) -> WittLawSet:
    """The addition law of length-e Witt vectors (cached per params)."""
    key = (params.p, params.e)
    with _LAW_LOCK:
        hit = _LAW_CACHE.get(key)
    if hit is not None:
        return hit
    p, e = params.p, params.e
    components = []
    for m in range(e):
        wm = witt_polynomial(m, params)
        acc = wm + wm.rename({"X": "Y"})
        for i in range(m):
            acc = acc - (components[i] ** (p ** (m - i))).scale(p ** i)
        components.append(acc.divexact_scalar(p ** m))
    integral = tuple(components)
    _ghost_check(params, integral)
    law = WittLawSet(params=params, integral=integral,
                     reduced=tuple(s.reduce_mod(p) for s in integral))
    with _LAW_LOCK:
        _LAW_CACHE[key] = law
    return law


def witt_vector_vars(params: Params, n: int = None) -> Tuple[Poly, ...]:
    """The coordinate vector (X1..Xn) over F_p, n defaulting to e."""
    n = params.e if n is None else n
    return tuple(Poly.variable(f"X{k + 1}", params.e, params.p) for k in range(n))


def witt_endomorphism(kind: str, vec: Tuple[Poly, ...], params: Params) -> Tuple[Poly, ...]:
    """Componentwise Frobenius "fr", shift-in "ve", last-drop "re".

    These act on symbolic vectors of polynomials; ve prepends a zero and re
    drops the last entry, so lengths change accordingly.
    """
    vec = tuple(vec)
    if kind == "fr":
        return tuple(f ** params.p for f in vec)
    if kind == "ve":
        return (Poly.zero(params.e, vec[0].modulus if vec else params.p),) + vec
    if kind == "re":
        if not vec:
            raise AlgebraError("re of an empty vector")
        return vec[:-1]
    raise AlgebraError(f"unknown endomorphism {kind!r}; expected fr, ve or re")


def mult_by_p_endo(params: Params) -> Tuple[Poly, ...]:
    """fr(ve(re(X1..Xe))): the endomorphism route to multiplication by p."""
    vec = witt_vector_vars(params)
    return witt_endomorphism("fr", witt_endomorphism(
        "ve", witt_endomorphism("re", vec, params), params), params)
