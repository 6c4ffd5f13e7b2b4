"""Parsing and JSON forms for polynomials, rational functions, multi-indices.

The textual polynomial grammar accepted here is a superset of what the
package emits: +, -, *, /, ^, parentheses, integer literals and variables
X1..Xe / Y1..Ye / Z1..Ze, evaluated exactly over F_p (or Z when modulus is
None, in which case / is rejected).  The JSON term form is
{"coeff": c, "exponents": {"X": [...], "Y": [...], "Z": [...]}} with the
term list in canonical order.
"""

from __future__ import annotations

import re
from typing import Optional

from .algebra import BLOCKS, Poly, check_multiindex
from .errors import AlgebraError
from .ratfun import RatFun

_TOKEN = re.compile(r"\s*(\d+|[XYZ]\d+|\*\*|[-+*/^()])")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise AlgebraError(f"cannot parse {text[pos:pos + 12]!r}")
            break
        tok = m.group(1)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    """Recursive descent over + - * / ^ ( ) int var, into RatFun."""

    def __init__(self, tokens: list, e: int, p: int):
        self.toks = tokens
        self.i = 0
        self.e = e
        self.p = p

    def peek(self) -> Optional[str]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise AlgebraError("unexpected end of expression")
        self.i += 1
        return tok

    def parse(self) -> RatFun:
        v = self.expr()
        if self.peek() is not None:
            raise AlgebraError(f"trailing input at {self.peek()!r}")
        return v

    def expr(self) -> RatFun:
        if self.peek() == "-":
            self.take()
            v = -self.term()
        else:
            if self.peek() == "+":
                self.take()
            v = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                v = v + self.term()
            else:
                v = v - self.term()
        return v

    def term(self) -> RatFun:
        v = self.factor()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                v = v * self.factor()
            else:
                if self.p is None:
                    raise AlgebraError("division is not available over Z input")
                v = v / self.factor()
        return v

    def factor(self) -> RatFun:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        v = self.atom()
        if self.peek() == "^":
            self.take()
            n = self.take()
            if not n.isdigit():
                raise AlgebraError(f"exponent must be a natural number, got {n!r}")
            v = v ** int(n)
        return v

    def atom(self) -> RatFun:
        tok = self.take()
        if tok == "(":
            v = self.expr()
            if self.take() != ")":
                raise AlgebraError("unbalanced parentheses")
            return v
        if tok.isdigit():
            return RatFun.const(self.e, self.p, int(tok))
        if tok[0] in BLOCKS:
            return RatFun.from_poly(Poly.variable(tok, self.e, self.p))
        raise AlgebraError(f"unexpected token {tok!r}")


def parse_ratfun(text: str, e: int, p: int) -> RatFun:
    if p is None:
        raise AlgebraError("rational input requires an F_p modulus")
    return _Parser(_tokenize(text), e, p).parse()


def parse_poly(text: str, e: int, modulus: Optional[int]) -> Poly:
    if modulus is None:
        # evaluate over a throwaway F_p? no: run the same parser over Z
        return _parse_poly_z(text, e)
    rf = parse_ratfun(text, e, modulus)
    if not rf.is_polynomial():
        raise AlgebraError(f"{text!r} is not a polynomial")
    return rf.as_poly()


class _ZParser(_Parser):
    def atom(self):
        tok = self.take()
        if tok == "(":
            v = self.expr()
            if self.take() != ")":
                raise AlgebraError("unbalanced parentheses")
            return v
        if tok.isdigit():
            return Poly.const(self.e, None, int(tok))
        if tok[0] in BLOCKS:
            return Poly.variable(tok, self.e, None)
        raise AlgebraError(f"unexpected token {tok!r}")


def _parse_poly_z(text: str, e: int) -> Poly:
    return _ZParser(_tokenize(text), e, None).parse()


def parse_multiindex(text: str, e: int) -> tuple:
    """Accepts "(1,0)", "1,0" or a single scalar "2" (broadcast to length e)."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    parts = [s.strip() for s in t.split(",") if s.strip() != ""]
    if not parts:
        raise AlgebraError(f"empty multi-index {text!r}")
    try:
        vals = [int(s) for s in parts]
    except ValueError:
        raise AlgebraError(f"bad multi-index {text!r}") from None
    if len(vals) == 1 and e > 1:
        vals = vals * e
    return check_multiindex(vals, e)


def format_multiindex(i: tuple) -> str:
    return "(" + ",".join(str(v) for v in i) + ")"


def multiindex_key(i: tuple) -> str:
    """JSON-map key form: "1,0"."""
    return ",".join(str(v) for v in i)


def poly_to_json(f: Poly) -> list:
    out = []
    for m, c in f.sorted_terms():
        exps = {b: list(m[k * f.e:(k + 1) * f.e]) for k, b in enumerate(BLOCKS)}
        out.append({"coeff": c, "exponents": exps})
    return out


def poly_from_json(data: list, e: int, modulus: Optional[int]) -> Poly:
    terms: dict = {}
    for item in data:
        exps = item["exponents"]
        key = []
        for b in BLOCKS:
            block = exps.get(b, [0] * e)
            if len(block) != e:
                raise AlgebraError(f"exponent block {b} has wrong length")
            key.extend(int(v) for v in block)
        key = tuple(key)
        terms[key] = terms.get(key, 0) + int(item["coeff"])
    return Poly(e, modulus, terms)


def ratfun_to_json(r: RatFun) -> dict:
    return {"text": r.text(), "num": poly_to_json(r.num), "den": poly_to_json(r.den)}


def ratfun_from_json(data: dict, e: int, p: int) -> RatFun:
    return RatFun(poly_from_json(data["num"], e, p),
                  poly_from_json(data["den"], e, p))
