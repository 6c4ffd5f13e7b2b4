"""Exact sparse polynomials over F_p and Z in up to three blocks of variables.

Everything downstream (group laws, derivations, verification suites) reduces
to arithmetic in F_p[X1..Xe, Y1..Ye, Z1..Ze] or its Z-coefficient analogue.
A monomial is a flat exponent tuple of length 3e, X block first, then Y,
then Z; coefficients are plain Python ints, reduced into [0, p) when the
domain is F_p and arbitrary precision when it is Z.

The canonical term order is descending graded lexicographic with the X block
before Y before Z.  All rendering walks terms in that order, so every
textual or JSON serialization of equal polynomials is byte-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .errors import AlgebraError, InvariantViolation

BLOCKS = ("X", "Y", "Z")

# Caps keep accidental huge inputs out of the exact kernels; both are
# adjustable per Params instance.
DEFAULT_MAX_P = 17
DEFAULT_MAX_E = 4

MultiIndex = tuple  # length-e tuple of naturals; helpers below validate


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Params:
    """A (prime, length) pair fixing the ambient truncated-Witt setting."""

    p: int
    e: int
    max_p: int = field(default=DEFAULT_MAX_P, compare=False, repr=False)
    max_e: int = field(default=DEFAULT_MAX_E, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise AlgebraError(f"p must be prime, got {self.p!r}")
        if self.p > self.max_p:
            raise AlgebraError(f"p={self.p} exceeds the cap {self.max_p}")
        if not isinstance(self.e, int) or not (1 <= self.e <= self.max_e):
            raise AlgebraError(f"e must satisfy 1 <= e <= {self.max_e}, got {self.e!r}")


def check_multiindex(i: Iterable[int], e: int) -> tuple:
    t = tuple(i)
    if len(t) != e:
        raise AlgebraError(f"multi-index {t} has length {len(t)}, expected {e}")
    if any((not isinstance(v, int)) or v < 0 for v in t):
        raise AlgebraError(f"multi-index {t} must consist of naturals")
    return t


def mi_total(i: tuple) -> int:
    return sum(i)


def mi_add(i: tuple, j: tuple) -> tuple:
    return tuple(a + b for a, b in zip(i, j))


def mi_sub(i: tuple, j: tuple) -> tuple:
    return tuple(a - b for a, b in zip(i, j))


def mi_leq(i: tuple, j: tuple) -> bool:
    return all(a <= b for a, b in zip(i, j))


def grlex_key(m: tuple) -> tuple:
    return (sum(m), m)


def iter_total_at_most(e: int, bound: int) -> list:
    """All multi-indices of length e with total degree <= bound, ascending."""
    out = [t for t in itertools.product(range(bound + 1), repeat=e) if sum(t) <= bound]
    out.sort(key=grlex_key)
    return out


def iter_box(bounds: tuple) -> list:
    """All multi-indices i with i <= bounds componentwise, ascending grlex."""
    out = list(itertools.product(*(range(b + 1) for b in bounds)))
    out.sort(key=grlex_key)
    return out


def var_position(name: str, e: int) -> int:
    """Flat exponent position of a variable name such as "X1" or "Z3"."""
    if len(name) < 2 or name[0] not in BLOCKS:
        raise AlgebraError(f"unknown variable {name!r}")
    try:
        k = int(name[1:])
    except ValueError:
        raise AlgebraError(f"unknown variable {name!r}") from None
    if not (1 <= k <= e):
        raise AlgebraError(f"variable {name!r} out of range for e={e}")
    return BLOCKS.index(name[0]) * e + (k - 1)


def position_name(pos: int, e: int) -> str:
    return f"{BLOCKS[pos // e]}{pos % e + 1}"


def _reduce_terms(terms: Mapping[tuple, int], modulus: Optional[int]) -> dict:
    out = {}
    for m, c in terms.items():
        if modulus is not None:
            c %= modulus
        if c:
            out[m] = c
    return out


class Poly:
    """Immutable sparse polynomial; do not mutate `terms` after creation."""

    __slots__ = ("e", "modulus", "terms", "_hash")

    def __init__(self, e: int, modulus: Optional[int], terms: Mapping[tuple, int] = None,
                 _trusted: bool = False):
        if modulus is not None and not is_prime(modulus):
            raise AlgebraError(f"coefficient modulus must be prime or None, got {modulus}")
        self.e = e
        self.modulus = modulus
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = dict(terms)
        else:
            width = 3 * e
            for m in terms:
                if len(m) != width or any((not isinstance(v, int)) or v < 0 for v in m):
                    raise AlgebraError(f"bad exponent tuple {m} for e={e}")
            self.terms = _reduce_terms(terms, modulus)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, e: int, modulus: Optional[int]) -> "Poly":
        return cls(e, modulus, {}, _trusted=True)

    @classmethod
    def const(cls, e: int, modulus: Optional[int], c: int) -> "Poly":
        if modulus is not None:
            c %= modulus
        if not c:
            return cls.zero(e, modulus)
        return cls(e, modulus, {(0,) * (3 * e): c}, _trusted=True)

    @classmethod
    def variable(cls, name: str, e: int, modulus: Optional[int]) -> "Poly":
        pos = var_position(name, e)
        m = [0] * (3 * e)
        m[pos] = 1
        return cls(e, modulus, {tuple(m): 1}, _trusted=True)

    @classmethod
    def monomial(cls, e: int, modulus: Optional[int], exps: tuple, c: int = 1) -> "Poly":
        return cls(e, modulus, {tuple(exps): c})

    @classmethod
    def block_monomial(cls, e: int, modulus: Optional[int], block: str, j: tuple,
                       c: int = 1) -> "Poly":
        """c * (block variables)^j, e.g. block="Y", j=(1,0) -> c*Y1."""
        j = check_multiindex(j, e)
        off = BLOCKS.index(block) * e
        m = [0] * (3 * e)
        for t, v in enumerate(j):
            m[off + t] = v
        return cls(e, modulus, {tuple(m): c})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * (3 * self.e), 0)

    def coeff_of_exponents(self, exps: tuple) -> int:
        return self.terms.get(tuple(exps), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def min_degree(self) -> int:
        """Order (minimal total degree of a term); -1 for zero."""
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def block_degree(self, block: str) -> int:
        if not self.terms:
            return -1
        off = BLOCKS.index(block) * self.e
        return max(sum(m[off:off + self.e]) for m in self.terms)

    def variables(self) -> set:
        used = set()
        for m in self.terms:
            for pos, v in enumerate(m):
                if v:
                    used.add(position_name(pos, self.e))
        return used

    def sorted_terms(self) -> list:
        """(monomial, coeff) pairs in descending graded-lex order."""
        return [(m, self.terms[m]) for m in
                sorted(self.terms, key=grlex_key, reverse=True)]

    def leading(self) -> tuple:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    # -- arithmetic --------------------------------------------------------

    def _check_compat(self, other: "Poly") -> None:
        if self.e != other.e or self.modulus != other.modulus:
            raise AlgebraError(
                f"coefficient domain mismatch: (e={self.e}, mod={self.modulus}) "
                f"vs (e={other.e}, mod={other.modulus})")

    def _coerce(self, other: Union["Poly", int]) -> "Poly":
        if isinstance(other, Poly):
            self._check_compat(other)
            return other
        if isinstance(other, int):
            return Poly.const(self.e, self.modulus, other)
        raise AlgebraError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        mod = self.modulus
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if mod is not None:
                v %= mod
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.e, mod, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        mod = self.modulus
        if mod is None:
            return Poly(self.e, None, {m: -c for m, c in self.terms.items()}, _trusted=True)
        return Poly(self.e, mod, {m: mod - c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.e, self.modulus)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        mod = self.modulus
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if mod is not None:
                    v %= mod
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.e, mod, out, _trusted=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        mod = self.modulus
        if mod is not None:
            c %= mod
        if c == 0:
            return Poly.zero(self.e, mod)
        if c == 1:
            return self
        out = {}
        for m, v in self.terms.items():
            w = v * c
            if mod is not None:
                w %= mod
            if w:
                out[m] = w
        return Poly(self.e, mod, out, _trusted=True)

    def _frobenius_scale(self, t: int) -> "Poly":
        """self**(p**t) over F_p via the Frobenius endomorphism."""
        q = self.modulus ** t
        return Poly(self.e, self.modulus,
                    {tuple(v * q for v in m): c for m, c in self.terms.items()},
                    _trusted=True)

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise AlgebraError(f"pow requires a natural exponent, got {n!r}")
        if n == 0:
            return Poly.const(self.e, self.modulus, 1)
        if n == 1:
            return self
        if self.modulus is not None:
            # base-p split: f^n = prod_t Frob^t(f^digit_t), each digit < p
            p = self.modulus
            result = None
            base = self
            t = 0
            while n:
                n, d = divmod(n, p)
                if d:
                    piece = base
                    for _ in range(d - 1):
                        piece = piece * base
                    piece = piece._frobenius_scale(t)
                    result = piece if result is None else result * piece
                t += 1
            return result
        result = Poly.const(self.e, None, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def substitute(self, images: Mapping[str, "Poly"], strict: bool = False) -> "Poly":
        """Simultaneously replace variables by polynomials.

        Keys are variable names ("X1", "Y2", ...); unmapped variables map to
        themselves unless strict is set, in which case an unmapped variable
        actually occurring in self raises.
        """
        pos_images = {}
        for name, img in images.items():
            pos = var_position(name, self.e)
            if not isinstance(img, Poly):
                raise AlgebraError(f"image of {name} must be Poly, got {type(img).__name__}")
            self._check_compat(img)
            pos_images[pos] = img
        if strict:
            for m in self.terms:
                for pos, v in enumerate(m):
                    if v and pos not in pos_images:
                        raise AlgebraError(
                            f"strict substitution: no image for {position_name(pos, self.e)}")
        # power cache per mapped position
        powers: dict = {pos: {} for pos in pos_images}
        width = 3 * self.e
        result = Poly.zero(self.e, self.modulus)
        for m, c in self.terms.items():
            residual = [0] * width
            factors = []
            for pos, v in enumerate(m):
                if not v:
                    continue
                if pos in pos_images:
                    cache = powers[pos]
                    if v not in cache:
                        cache[v] = pos_images[pos] ** v
                    factors.append(cache[v])
                else:
                    residual[pos] = v
            term = Poly(self.e, self.modulus, {tuple(residual): c}, _trusted=True)
            for f in factors:
                term = term * f
            result = result + term
        return result

    def rename(self, block_map: Mapping[str, str]) -> "Poly":
        """Simultaneous block rename, e.g. {"X": "Y", "Y": "Z"}."""
        images = {}
        for src, dst in block_map.items():
            if src not in BLOCKS or dst not in BLOCKS:
                raise AlgebraError(f"unknown block in rename: {src!r}->{dst!r}")
            for k in range(1, self.e + 1):
                images[f"{src}{k}"] = Poly.variable(f"{dst}{k}", self.e, self.modulus)
        return self.substitute(images)

    def coefficient_of(self, block: str, j: tuple) -> "Poly":
        """The polynomial multiplying (block variables)^j, block zeroed out."""
        j = check_multiindex(j, self.e)
        if block not in BLOCKS:
            raise AlgebraError(f"unknown block {block!r}")
        off = BLOCKS.index(block) * self.e
        out = {}
        for m, c in self.terms.items():
            if tuple(m[off:off + self.e]) == j:
                key = m[:off] + (0,) * self.e + m[off + self.e:]
                out[key] = out.get(key, 0) + c
        return Poly(self.e, self.modulus, out, _trusted=True)

    def by_block(self, block: str) -> dict:
        """Full decomposition: j -> coefficient polynomial (block zeroed)."""
        if block not in BLOCKS:
            raise AlgebraError(f"unknown block {block!r}")
        off = BLOCKS.index(block) * self.e
        buckets: dict = {}
        for m, c in self.terms.items():
            j = tuple(m[off:off + self.e])
            key = m[:off] + (0,) * self.e + m[off + self.e:]
            buckets.setdefault(j, {})[key] = c
        return {j: Poly(self.e, self.modulus, t, _trusted=True)
                for j, t in buckets.items()}

    def truncate_block(self, block: str, bound: int) -> "Poly":
        """Drop terms whose block-degree exceeds bound."""
        off = BLOCKS.index(block) * self.e
        out = {m: c for m, c in self.terms.items()
               if sum(m[off:off + self.e]) <= bound}
        return Poly(self.e, self.modulus, out, _trusted=True)

    def frobenius_root(self) -> "Poly":
        """Inverse of f -> f^p over F_p: divide every exponent by p."""
        p = self.modulus
        if p is None:
            raise AlgebraError("frobenius_root requires an F_p polynomial")
        out = {}
        for m, c in self.terms.items():
            if any(v % p for v in m):
                raise AlgebraError(
                    f"exponent tuple {m} not divisible by p={p}; no p-th root")
            out[tuple(v // p for v in m)] = c
        return Poly(self.e, p, out, _trusted=True)

    def divexact_scalar(self, k: int) -> "Poly":
        """Divide every coefficient by k, which must divide exactly (Z only)."""
        if self.modulus is not None:
            raise AlgebraError("divexact_scalar applies to Z-coefficient polynomials")
        out = {}
        for m, c in self.terms.items():
            q, r = divmod(c, k)
            if r:
                raise InvariantViolation(
                    f"inexact division: coefficient {c} not divisible by {k}")
            out[m] = q
        return Poly(self.e, None, out, _trusted=True)

    def reduce_mod(self, p: int) -> "Poly":
        if self.modulus is not None:
            raise AlgebraError("reduce_mod applies to Z-coefficient polynomials")
        return Poly(self.e, p, self.terms)

    # -- rendering ---------------------------------------------------------

    def _term_text(self, m: tuple, c: int, lead: bool) -> str:
        factors = []
        for pos, v in enumerate(m):
            if v == 1:
                factors.append(position_name(pos, self.e))
            elif v > 1:
                factors.append(f"{position_name(pos, self.e)}^{v}")
        mag = abs(c) if self.modulus is None else c
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if self.modulus is None and c < 0:
            return ("-" if lead else "- ") + body
        return body if lead else "+ " + body

    def text(self) -> str:
        """Canonical textual rendering (deterministic)."""
        if not self.terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            parts.append(self._term_text(m, c, lead=(idx == 0)))
        return " ".join(parts)

    def __repr__(self) -> str:
        dom = "Z" if self.modulus is None else f"F{self.modulus}"
        return f"Poly[{dom},e={self.e}]({self.text()})"

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == Poly.const(self.e, self.modulus, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.e == other.e and self.modulus == other.modulus
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.e, self.modulus, frozenset(self.terms.items())))
        return self._hash


def poly_vars(params: Params, modulus: Optional[int] = "default") -> dict:
    """Convenience: name -> variable Poly for all 3e variables."""
    mod = params.p if modulus == "default" else modulus
    out = {}
    for b in BLOCKS:
        for k in range(1, params.e + 1):
            out[f"{b}{k}"] = Poly.variable(f"{b}{k}", params.e, mod)
    return out
