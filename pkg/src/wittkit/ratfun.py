"""Rational functions over F_p(X1..Xe) and the polynomial gcd they need.

RatFun values are always stored normalized: gcd(num, den) = 1 and the
denominator is monic with respect to the canonical term order, so equality
is plain representational equality.  The gcd is the classic content /
primitive-part recursion with a primitive pseudo-remainder sequence; inputs
here are small (at most 4 variables, modest degrees), which this handles
comfortably without pulling in a CAS.
"""

from __future__ import annotations

from typing import Optional

from .algebra import Poly, grlex_key
from .errors import AlgebraError


# ---------------------------------------------------------------------------
# exact division and gcd over F_p[X...]
# ---------------------------------------------------------------------------

def _mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def poly_divexact(f: Poly, d: Poly) -> Poly:
    """Return f/d, raising AlgebraError when d does not divide f."""
    if d.is_zero():
        raise AlgebraError("division by the zero polynomial")
    f._check_compat(d)
    p = f.modulus
    if p is None:
        raise AlgebraError("poly_divexact is implemented for F_p polynomials")
    if f.is_zero():
        return f
    dm, dc = d.leading()
    dc_inv = pow(dc, -1, p)
    rem = dict(f.terms)
    quo = {}
    while rem:
        m = max(rem, key=grlex_key)
        c = rem[m]
        if not _mono_divides(dm, m):
            raise AlgebraError("polynomial division is not exact")
        qm = tuple(x - y for x, y in zip(m, dm))
        qc = (c * dc_inv) % p
        quo[qm] = qc
        for m2, c2 in d.terms.items():
            key = tuple(x + y for x, y in zip(qm, m2))
            v = (rem.get(key, 0) - qc * c2) % p
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return Poly(f.e, p, quo, _trusted=True)


def poly_divides(d: Poly, f: Poly) -> bool:
    try:
        poly_divexact(f, d)
        return True
    except AlgebraError:
        return False


def _used_positions(f: Poly) -> set:
    used = set()
    for m in f.terms:
        for pos, v in enumerate(m):
            if v:
                used.add(pos)
    return used


def _monic(f: Poly) -> Poly:
    if f.is_zero():
        return f
    _, c = f.leading()
    if c == 1:
        return f
    return f.scale(pow(c, -1, f.modulus))


def _deg_in(f: Poly, pos: int) -> int:
    if f.is_zero():
        return -1
    return max(m[pos] for m in f.terms)


def _coeffs_in(f: Poly, pos: int) -> dict:
    """f viewed in the variable at pos: exponent -> coefficient Poly."""
    buckets: dict = {}
    for m, c in f.terms.items():
        k = m[pos]
        key = m[:pos] + (0,) + m[pos + 1:]
        buckets.setdefault(k, {})[key] = c
    return {k: Poly(f.e, f.modulus, t, _trusted=True) for k, t in buckets.items()}


def _var_power(f: Poly, pos: int, k: int) -> Poly:
    mono = [0] * (3 * f.e)
    mono[pos] = k
    return Poly(f.e, f.modulus, {tuple(mono): 1}, _trusted=True)


def _content(f: Poly, pos: int) -> Poly:
    g = Poly.zero(f.e, f.modulus)
    for coeff in _coeffs_in(f, pos).values():
        g = poly_gcd(g, coeff)
        if g.is_constant() and not g.is_zero():
            break
    return g


def _primitive(f: Poly, pos: int) -> Poly:
    cont = _content(f, pos)
    if cont.is_zero() or (cont.is_constant() and cont.constant_coeff() == 1):
        return f
    return poly_divexact(f, cont)


def _prem(a: Poly, b: Poly, pos: int) -> Poly:
    """Pseudo-remainder of a by b in the variable at pos."""
    n = _deg_in(b, pos)
    by = _coeffs_in(b, pos)
    lb = by[n]
    r = a
    while not r.is_zero():
        d = _deg_in(r, pos)
        if d < n:
            break
        lr = _coeffs_in(r, pos)[d]
        r = lb * r - lr * _var_power(b, pos, d - n) * b
    return r


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd over F_p[X...]; gcd(0, 0) = 0."""
    if f.is_zero():
        return _monic(g)
    if g.is_zero():
        return _monic(f)
    f._check_compat(g)
    if f.modulus is None:
        raise AlgebraError("poly_gcd is implemented for F_p polynomials")
    if f.is_constant() or g.is_constant():
        return Poly.const(f.e, f.modulus, 1)
    shared = _used_positions(f) | _used_positions(g)
    # main variable: smallest combined degree keeps the remainder chain short
    pos = min(shared, key=lambda q: (max(_deg_in(f, q), 0) + max(_deg_in(g, q), 0), q))
    cf, cg = _content(f, pos), _content(g, pos)
    c = poly_gcd(cf, cg)
    a = f if cf.is_constant() else poly_divexact(f, cf)
    b = g if cg.is_constant() else poly_divexact(g, cg)
    if a.is_constant() or b.is_constant():
        return _monic(c)
    if _deg_in(a, pos) < _deg_in(b, pos):
        a, b = b, a
    while True:
        r = _prem(a, b, pos)
        if r.is_zero():
            result = _primitive(b, pos)
            break
        if _deg_in(r, pos) == 0:
            result = Poly.const(f.e, f.modulus, 1)
            break
        a, b = b, _primitive(r, pos)
    return _monic(c * result)


# ---------------------------------------------------------------------------
# RatFun
# ---------------------------------------------------------------------------

class RatFun:
    """A normalized fraction of F_p polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None, _trusted: bool = False):
        if num.modulus is None:
            raise AlgebraError("RatFun requires F_p coefficients")
        if den is None:
            den = Poly.const(num.e, num.modulus, 1)
        num._check_compat(den)
        if den.is_zero():
            raise AlgebraError("zero denominator")
        if not _trusted:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: Poly) -> "RatFun":
        return cls(f, None, _trusted=True)

    @classmethod
    def const(cls, e: int, p: int, c: int) -> "RatFun":
        return cls(Poly.const(e, p, c), None, _trusted=True)

    @property
    def e(self) -> int:
        return self.num.e

    @property
    def modulus(self) -> int:
        return self.num.modulus

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant() and self.den.constant_coeff() == 1

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise AlgebraError(f"{self!r} is not a polynomial")
        return self.num

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        if isinstance(other, int):
            return RatFun.const(self.e, self.modulus, other)
        raise AlgebraError(f"cannot combine RatFun with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return RatFun.const(self.e, self.modulus, 0)
        # cross-cancel so the final gcds stay trivial
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = self.num if g1.is_constant() else poly_divexact(self.num, g1)
        d2 = o.den if g1.is_constant() else poly_divexact(o.den, g1)
        n2 = o.num if g2.is_constant() else poly_divexact(o.num, g2)
        d1 = self.den if g2.is_constant() else poly_divexact(self.den, g2)
        num, den = n1 * n2, d1 * d2
        _, dc = den.leading()
        if dc != 1:
            inv = pow(dc, -1, self.modulus)
            num, den = num.scale(inv), den.scale(inv)
        return RatFun(num, den, _trusted=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise AlgebraError("inverse of zero")
        num, den = self.den, self.num
        _, c = den.leading()
        if c != 1:
            inv = pow(c, -1, self.modulus)
            num, den = num.scale(inv), den.scale(inv)
        return RatFun(num, den, _trusted=True)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if not isinstance(n, int):
            raise AlgebraError(f"pow requires an integer exponent, got {n!r}")
        if n == 0:
            return RatFun.const(self.e, self.modulus, 1)
        if n < 0:
            return self.inverse() ** (-n)
        # normalized input stays normalized under powering
        return RatFun(self.num ** n, self.den ** n, _trusted=True)

    def text(self) -> str:
        if self.is_polynomial():
            return self.num.text()

        def wrap(f: Poly) -> str:
            t = f.text()
            return f"({t})" if len(f.terms) > 1 else t

        return f"{wrap(self.num)}/{wrap(self.den)}"

    def __repr__(self) -> str:
        return f"RatFun[F{self.modulus},e={self.e}]({self.text()})"

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Poly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))


def _normalize(num: Poly, den: Poly) -> tuple:
    if num.is_zero():
        return num, Poly.const(num.e, num.modulus, 1)
    g = poly_gcd(num, den)
    if not (g.is_constant() and g.constant_coeff() == 1):
        num, den = poly_divexact(num, g), poly_divexact(den, g)
    _, c = den.leading()
    if c != 1:
        inv = pow(c, -1, num.modulus)
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def ratfun_normalize(num: Poly, den: Poly) -> RatFun:
    """Public construction: reduce to lowest terms with a monic denominator."""
    return RatFun(num, den)
