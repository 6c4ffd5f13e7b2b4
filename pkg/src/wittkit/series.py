"""Truncated power series in a designated variable block.

Two flavours cover everything the package needs:

* TruncSeries: a Poly body truncated at a total-degree bound in the series
  block (Y by default).  Arithmetic propagates the minimum bound.  Its
  inverse requires the series-constant term to be a unit scalar.
* RationalSeries: coefficients are RatFun values indexed by series-block
  multi-indices.  This is the form needed to divide by a series whose
  constant term is a nonzero polynomial, e.g. when a derivation is extended
  from F_p[X] to F_p(X).
"""

from __future__ import annotations

from typing import Mapping, Union

from .algebra import Poly, check_multiindex, grlex_key, iter_total_at_most, mi_sub
from .errors import AlgebraError
from .ratfun import RatFun


class TruncSeries:
    """Polynomial body plus a truncation bound in the series block."""

    __slots__ = ("body", "bound", "block")

    def __init__(self, body: Poly, bound: int, block: str = "Y"):
        if bound < 0:
            raise AlgebraError(f"truncation bound must be >= 0, got {bound}")
        self.body = body.truncate_block(block, bound)
        self.bound = bound
        self.block = block

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.block != self.block:
                raise AlgebraError("series block mismatch")
            return other
        if isinstance(other, (Poly, int)):
            body = other if isinstance(other, Poly) else \
                Poly.const(self.body.e, self.body.modulus, other)
            return TruncSeries(body, self.bound, self.block)
        raise AlgebraError(f"cannot combine TruncSeries with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        return TruncSeries(self.body + o.body, min(self.bound, o.bound), self.block)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(-self.body, self.bound, self.block)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return TruncSeries(self.body * o.body, min(self.bound, o.bound), self.block)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        if not isinstance(n, int) or n < 0:
            raise AlgebraError(f"pow requires a natural exponent, got {n!r}")
        return TruncSeries(self.body ** n, self.bound, self.block)

    def constant_term(self) -> Poly:
        return self.body.coefficient_of(self.block, (0,) * self.body.e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.block == other.block and self.bound == other.bound
                and self.body == other.body)

    def __hash__(self) -> int:
        return hash((self.body, self.bound, self.block))

    def text(self) -> str:
        return f"{self.body.text()} + O({self.block}^{self.bound + 1})"

    def __repr__(self) -> str:
        return f"TruncSeries({self.text()})"


def series_inverse(f: TruncSeries, bound: int = None) -> TruncSeries:
    """Multiplicative inverse when the series-constant term is a unit scalar.

    For a nonzero non-scalar constant term the inverse has rational-function
    coefficients; use RationalSeries.inverse for that.
    """
    d = f.bound if bound is None else min(bound, f.bound)
    c0 = f.constant_term()
    if c0.is_zero():
        raise AlgebraError("series inverse: zero constant term")
    if not c0.is_constant():
        raise AlgebraError(
            "series inverse with a non-scalar constant term needs rational "
            "coefficients; use RationalSeries.inverse")
    e, p = f.body.e, f.body.modulus
    if p is None:
        raise AlgebraError("series inverse is implemented over F_p")
    c = c0.constant_coeff()
    cinv = pow(c, -1, p)
    # f = c(1 - u) with u of positive series order; 1/f = c^-1 sum u^k
    u = (Poly.const(e, p, 1) - f.body.scale(cinv)).truncate_block(f.block, d)
    acc = Poly.const(e, p, 1)
    powu = Poly.const(e, p, 1)
    for _ in range(d):
        powu = (powu * u).truncate_block(f.block, d)
        if powu.is_zero():
            break
        acc = acc + powu
    return TruncSeries(acc.scale(cinv), d, f.block)


def substitute_series(f: Poly, images: Mapping[str, Union[Poly, TruncSeries]],
                      block: str = "Y") -> Union[Poly, TruncSeries]:
    """Substitution that tolerates truncated images.

    With only Poly images this is exact and returns a Poly; any TruncSeries
    image truncates the result at the minimum bound, which is sound because
    truncation at the output bound commutes with ring operations.
    """
    bounds = [img.bound for img in images.values() if isinstance(img, TruncSeries)]
    plain = {name: (img.body if isinstance(img, TruncSeries) else img)
             for name, img in images.items()}
    result = f.substitute(plain)
    if not bounds:
        return result
    return TruncSeries(result, min(bounds), block)


class RationalSeries:
    """Series in the Y block with RatFun coefficients, truncated by |j|."""

    __slots__ = ("e", "p", "coeffs", "bound")

    def __init__(self, e: int, p: int, coeffs: Mapping[tuple, RatFun], bound: int):
        if bound < 0:
            raise AlgebraError(f"truncation bound must be >= 0, got {bound}")
        self.e = e
        self.p = p
        self.bound = bound
        self.coeffs = {}
        for j, v in coeffs.items():
            j = check_multiindex(j, e)
            if sum(j) <= bound and not v.is_zero():
                self.coeffs[j] = v

    @classmethod
    def from_poly(cls, f: Poly, bound: int) -> "RationalSeries":
        """Expand an element of F_p[X,Y] in the Y block."""
        parts = {j: RatFun.from_poly(c) for j, c in f.by_block("Y").items()}
        return cls(f.e, f.modulus, parts, bound)

    def coefficient(self, j: tuple) -> RatFun:
        j = check_multiindex(j, self.e)
        if sum(j) > self.bound:
            raise AlgebraError(
                f"coefficient at {j} is beyond the truncation bound {self.bound}")
        return self.coeffs.get(j, RatFun.const(self.e, self.p, 0))

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            raise AlgebraError("RationalSeries can only be added to RationalSeries")
        bound = min(self.bound, other.bound)
        out = dict(self.coeffs)
        for j, v in other.coeffs.items():
            out[j] = out[j] + v if j in out else v
        return RationalSeries(self.e, self.p, out, bound)

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        if not isinstance(other, RationalSeries):
            raise AlgebraError("RationalSeries can only be multiplied by RationalSeries")
        bound = min(self.bound, other.bound)
        out: dict = {}
        for j1, v1 in self.coeffs.items():
            for j2, v2 in other.coeffs.items():
                j = tuple(a + b for a, b in zip(j1, j2))
                if sum(j) > bound:
                    continue
                prod = v1 * v2
                out[j] = out[j] + prod if j in out else prod
        return RationalSeries(self.e, self.p, out, bound)

    def scale(self, c: RatFun) -> "RationalSeries":
        return RationalSeries(self.e, self.p,
                              {j: v * c for j, v in self.coeffs.items()}, self.bound)

    def inverse(self) -> "RationalSeries":
        """Inverse; the constant coefficient must be nonzero."""
        zero_j = (0,) * self.e
        u0 = self.coeffs.get(zero_j)
        if u0 is None or u0.is_zero():
            raise AlgebraError("series inverse: zero constant term")
        u0_inv = u0.inverse()
        inv: dict = {zero_j: u0_inv}
        for j in iter_total_at_most(self.e, self.bound):
            if j == zero_j:
                continue
            acc = None
            for k, uk in self.coeffs.items():
                if k == zero_j or not all(a <= b for a, b in zip(k, j)):
                    continue
                term = uk * inv[mi_sub(j, k)]
                acc = term if acc is None else acc + term
            if acc is None:
                inv[j] = RatFun.const(self.e, self.p, 0)
            else:
                inv[j] = -(u0_inv * acc)
        return RationalSeries(self.e, self.p, inv, self.bound)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (self.e, self.p, self.bound) == (other.e, other.p, other.bound) \
            and self.coeffs == other.coeffs

    def text(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for j in sorted(self.coeffs, key=grlex_key):
                mono = "*".join(f"Y{t + 1}" + (f"^{v}" if v > 1 else "")
                                for t, v in enumerate(j) if v)
                coeff = self.coeffs[j].text()
                if not mono:
                    parts.append(coeff)
                else:
                    coeff = f"({coeff})" if (" " in coeff or "/" in coeff) else coeff
                    parts.append(f"{coeff}*{mono}" if coeff != "1" else mono)
            body = " + ".join(parts)
        return f"{body} + O(Y^{self.bound + 1})"

    def __repr__(self) -> str:
        return f"RationalSeries({self.text()})"
