"""Iterative higher derivations attached to a polynomial group law.

A higher derivation D on F_p[X1..Xe] is encoded by the images D(X_k), which
are polynomials in F_p[X, Y] whose Y->0 specialization returns X_k; D(f) is
then the ring-homomorphic extension, and the component D_j(f) is the
Y^j-coefficient of D(f).  The canonical derivation of a group law F sends
X_k to F_k(X, Y); for the Witt law this is the derivation whose component
identities the verifier exercises.

Components of monomials are memoized on the derivation object, which makes
the repeated operator compositions in the verification suites cheap: every
application is a linear combination of cached tables.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from .algebra import Params, Poly, check_multiindex, iter_box
from .errors import AlgebraError
from .fgl import FormalGroupLaw, mult_by_n
from .ratfun import RatFun
from .series import RationalSeries
from .witt import witt_addition_law

_CANONICAL_CACHE: dict = {}
_CANONICAL_LOCK = threading.Lock()


class HSDerivation:
    """A higher derivation given by variable images G_k = D(X_k)."""

    def __init__(self, params: Params, images: Tuple[Poly, ...], name: str = ""):
        self.params = params
        self.images = tuple(images)
        self.name = name
        if len(self.images) != params.e:
            raise AlgebraError("need exactly e variable images")
        zero_y = {f"Y{k}": Poly.zero(params.e, params.p)
                  for k in range(1, params.e + 1)}
        for k, g in enumerate(self.images):
            if g.modulus != params.p or g.e != params.e:
                raise AlgebraError("image domain mismatch")
            if g.substitute(zero_y) != Poly.variable(f"X{k + 1}", params.e, params.p):
                raise AlgebraError(
                    f"image of X{k + 1} does not specialize to X{k + 1} at Y=0; "
                    "not a higher derivation")
        self._image_pow: Dict[int, Dict[int, Poly]] = {k: {} for k in range(params.e)}
        self._mono: Dict[tuple, dict] = {}
        self._lock = threading.Lock()

    # -- raw application ----------------------------------------------------

    def _check_input(self, f: Poly) -> None:
        if f.modulus != self.params.p or f.e != self.params.e:
            raise AlgebraError("input polynomial domain mismatch")
        e = self.params.e
        for m in f.terms:
            if any(m[e:]):
                raise AlgebraError("derivation input must live in F_p[X1..Xe]")

    def _image_power(self, k: int, n: int) -> Poly:
        cache = self._image_pow[k]
        with self._lock:
            hit = cache.get(n)
        if hit is not None:
            return hit
        val = self.images[k] ** n
        with self._lock:
            cache[n] = val
        return val

    def _mono_components(self, xmono: tuple) -> dict:
        """Y-expansion of D(X^m) for an X-block exponent tuple m."""
        with self._lock:
            hit = self._mono.get(xmono)
        if hit is not None:
            return hit
        e, p = self.params.e, self.params.p
        acc = Poly.const(e, p, 1)
        for k, n in enumerate(xmono):
            if n:
                acc = acc * self._image_power(k, n)
        table = acc.by_block("Y")
        with self._lock:
            self._mono[xmono] = table
        return table

    def apply(self, f: Poly) -> Poly:
        """D(f) in F_p[X, Y]: substitute every X_k by its image."""
        self._check_input(f)
        e, p = self.params.e, self.params.p
        out = Poly.zero(e, p)
        for m, c in f.terms.items():
            for j, coeff in self._mono_components(m[:e]).items():
                out = out + Poly.block_monomial(e, p, "Y", j, 1) * coeff.scale(c)
        return out

    def component(self, j: tuple, f: Poly) -> Poly:
        """D_j(f): the Y^j coefficient of D(f), an element of F_p[X]."""
        j = check_multiindex(j, self.params.e)
        self._check_input(f)
        e, p = self.params.e, self.params.p
        out = Poly.zero(e, p)
        for m, c in f.terms.items():
            piece = self._mono_components(m[:e]).get(j)
            if piece is not None:
                out = out + piece.scale(c)
        return out

    def component_power(self, j: tuple, f: Poly, times: int) -> Poly:
        """D_j applied `times` times in a row."""
        for _ in range(times):
            f = self.component(j, f)
            if f.is_zero():
                break
        return f

    def hs_row(self, f: Poly) -> dict:
        """All nonzero components at once: j -> D_j(f)."""
        self._check_input(f)
        e = self.params.e
        out: dict = {}
        for m, c in f.terms.items():
            for j, piece in self._mono_components(m[:e]).items():
                cur = out.get(j)
                add = piece.scale(c)
                out[j] = add if cur is None else cur + add
        return {j: v for j, v in out.items() if not v.is_zero()}


def canonical_witt_derivation(params: Params) -> HSDerivation:
    """The derivation X_k -> H_k(X, Y) of the Witt addition law (cached)."""
    key = (params.p, params.e)
    with _CANONICAL_LOCK:
        hit = _CANONICAL_CACHE.get(key)
    if hit is not None:
        return hit
    law = witt_addition_law(params)
    d = HSDerivation(params, law.reduced, name="witt")
    with _CANONICAL_LOCK:
        _CANONICAL_CACHE[key] = d
    return d


def canonical_law_derivation(F: FormalGroupLaw) -> HSDerivation:
    """The tautological derivation X_k -> F_k(X, Y) of any built-in law."""
    return HSDerivation(F.params, F.components, name=F.kind)


# ---------------------------------------------------------------------------
# operator expressions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperatorExpr:
    """F_p-linear combination of composites of components.

    terms = ((coeff, factors), ...) where factors = ((j, repeat), ...) and
    the rightmost factor acts first, matching function composition.
    """

    terms: tuple

    @classmethod
    def composite(cls, factors: Iterable, coeff: int = 1) -> "OperatorExpr":
        norm = []
        for f in factors:
            if isinstance(f, tuple) and len(f) == 2 and isinstance(f[1], int) \
                    and not isinstance(f[0], int):
                j, rep = f
            elif isinstance(f, tuple) and f and all(isinstance(v, int) for v in f):
                j, rep = f, 1
            else:
                j, rep = f
            norm.append((tuple(j), rep))
        return cls(terms=((coeff, tuple(norm)),))

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls(terms=((1, ()),))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(terms=self.terms + other.terms)

    def scale(self, c: int) -> "OperatorExpr":
        return OperatorExpr(terms=tuple((c * k, f) for k, f in self.terms))

    def text(self) -> str:
        parts = []
        for coeff, factors in self.terms:
            bits = [f"D({','.join(map(str, j))})" + (f"^{r}" if r != 1 else "")
                    for j, r in factors]
            body = "*".join(bits) if bits else "1"
            parts.append(body if coeff == 1 else f"{coeff}*{body}")
        return " + ".join(parts) if parts else "0"


_OP_TOKEN = re.compile(r"\s*(D\(\s*\d+(?:\s*,\s*\d+)*\s*\)|\d+|\^|\*|\+|-)")


def parse_operator(text: str, params: Params) -> OperatorExpr:
    """Parse e.g. "D(1,0)^2" or "D(2,0) + 3*D(0,1)*D(1,0)^2"."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _OP_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise AlgebraError(f"cannot parse operator near {text[pos:pos + 12]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise AlgebraError("empty operator expression")

    terms = []
    idx = 0

    def parse_term():
        nonlocal idx
        coeff = 1
        factors = []
        expect_factor = True
        while idx < len(tokens):
            tok = tokens[idx]
            if tok in ("+", "-"):
                break
            if tok == "*":
                idx += 1
                expect_factor = True
                continue
            if tok == "^":
                raise AlgebraError("dangling '^' in operator expression")
            if tok.isdigit():
                coeff = (coeff * int(tok)) % params.p
                idx += 1
                expect_factor = False
                continue
            j = check_multiindex(
                tuple(int(s) for s in tok[2:-1].split(",")), params.e)
            idx += 1
            rep = 1
            if idx < len(tokens) and tokens[idx] == "^":
                idx += 1
                if idx >= len(tokens) or not tokens[idx].isdigit():
                    raise AlgebraError("'^' must be followed by a natural number")
                rep = int(tokens[idx])
                idx += 1
            factors.append((j, rep))
            expect_factor = False
        if expect_factor:
            raise AlgebraError("empty or dangling term in operator expression")
        return coeff, tuple(factors)

    sign = 1
    if tokens[0] in ("+", "-"):
        sign = -1 if tokens[0] == "-" else 1
        idx = 1
    coeff, factors = parse_term()
    terms.append(((sign * coeff) % params.p, factors))
    while idx < len(tokens):
        tok = tokens[idx]
        if tok not in ("+", "-"):
            raise AlgebraError(f"expected + or - between terms, got {tok!r}")
        sign = -1 if tok == "-" else 1
        idx += 1
        coeff, factors = parse_term()
        terms.append(((sign * coeff) % params.p, factors))
    return OperatorExpr(terms=tuple(terms))


def operator_eval(D: HSDerivation, expr: OperatorExpr, f: Poly) -> Poly:
    """Evaluate a linear combination of component composites on f."""
    e, p = D.params.e, D.params.p
    total = Poly.zero(e, p)
    for coeff, factors in expr.terms:
        cur = f
        for j, rep in reversed(factors):
            cur = D.component_power(tuple(j), cur, rep)
            if cur.is_zero():
                break
        total = total + cur.scale(coeff)
    return total


# ---------------------------------------------------------------------------
# the p-power twist
# ---------------------------------------------------------------------------

def twist_images(F: FormalGroupLaw) -> Tuple[Poly, ...]:
    """The substitution targets for the twisted expansion.

    Componentwise: take [p]_F, move it to the Y block, and pull the p-th
    root out of every exponent (all exponents of [p]_F are divisible by p).
    """
    out = []
    for comp in mult_by_n(F, F.params.p):
        out.append(comp.rename({"X": "Y"}).frobenius_root())
    return tuple(out)


def twisted_series(D: HSDerivation, f: Poly, F: FormalGroupLaw) -> Poly:
    """Substitute the rooted [p]_F components into the Y block of D(f).

    The result repackages the expansion of f under the p-fold composites of
    the components of D, assuming D is iterative for F (the caller checks or
    asserts that; the verifier compares this against the direct route).
    """
    u = D.apply(f)
    images = {f"Y{k + 1}": img for k, img in enumerate(twist_images(F))}
    return u.substitute(images)


def direct_p_power_series(D: HSDerivation, f: Poly) -> Poly:
    """sum_j D_j^(p)(f) * Y^j over every j where D_j(f) is nonzero."""
    e, p = D.params.e, D.params.p
    u = D.apply(f)
    out = Poly.zero(e, p)
    for j in u.by_block("Y"):
        val = D.component_power(j, f, p)
        if not val.is_zero():
            out = out + Poly.block_monomial(e, p, "Y", j, 1) * val
    return out


def iterativity_diagram_gap(D: HSDerivation, F: FormalGroupLaw, f: Poly) -> tuple:
    """Both sides of the iterativity square for one input.

    Left: expand D(f) in Y, apply D to each coefficient with the new series
    variables in the Z block.  Right: substitute F(Y, Z) into the Y block of
    D(f).  Equality for all f is what "D is F-iterative" means.
    """
    e, p = D.params.e, D.params.p
    u = D.apply(f)
    lhs = Poly.zero(e, p)
    for j, coeff in u.by_block("Y").items():
        lhs = lhs + Poly.block_monomial(e, p, "Y", j, 1) * \
            D.apply(coeff).rename({"Y": "Z"})
    images = {f"Y{k + 1}": F.components[k].rename({"X": "Y", "Y": "Z"})
              for k in range(e)}
    rhs = u.substitute(images)
    return lhs, rhs


# ---------------------------------------------------------------------------
# delta tables and the rational extension
# ---------------------------------------------------------------------------

def delta_poly(params: Params, i: tuple, j: tuple) -> Poly:
    """delta_j^i = D_j(X^i) for the canonical Witt derivation."""
    d = canonical_witt_derivation(params)
    i = check_multiindex(i, params.e)
    j = check_multiindex(j, params.e)
    piece = d._mono_components(i).get(j)
    return piece if piece is not None else Poly.zero(params.e, params.p)


def delta_table(params: Params, max_i: tuple, max_j: tuple) -> dict:
    """(i, j) -> delta_j^i for i <= max_i, j <= max_j componentwise.

    Zero values are omitted, like every other sparse table in the package.
    """
    max_i = check_multiindex(max_i, params.e)
    max_j = check_multiindex(max_j, params.e)
    out = {}
    for i in iter_box(max_i):
        for j in iter_box(max_j):
            val = delta_poly(params, i, j)
            if not val.is_zero():
                out[(i, j)] = val
    return out


def extend_to_rational(D: HSDerivation, x: RatFun, ybound: int) -> RationalSeries:
    """Expansion of D on a rational function: D(f) * D(g)^-1, truncated.

    The coefficient of Y^j is the canonical value of D_j on f/g in F_p(X).
    """
    if ybound < 0:
        raise AlgebraError("ybound must be >= 0")
    num_series = RationalSeries.from_poly(D.apply(x.num), ybound)
    if x.is_polynomial():
        return num_series
    den_series = RationalSeries.from_poly(D.apply(x.den), ybound)
    return num_series * den_series.inverse()
