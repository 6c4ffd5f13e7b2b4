"""Decomposition over p-th powers and the defining-axiom derivation route."""

import random

import pytest

from wittkit.algebra import Params, Poly
from wittkit.corpus import random_ratfun
from wittkit.errors import AlgebraError
from wittkit.hsd import canonical_witt_derivation, extend_to_rational
from wittkit.pbasis import (PBasisContext, decompose_poly,
                            dependence_witness_value, derivation_via_pbasis,
                            p_independence_check, p_power_decompose,
                            recompose)
from wittkit.ratfun import RatFun
from wittkit.textio import parse_poly, parse_ratfun

P22 = Params(2, 2)


def P(s, e=2, p=2):
    return parse_poly(s, e, p)


def R(s, e=2, p=2):
    return parse_ratfun(s, e, p)


class TestDecomposePoly:
    def test_single_monomial(self):
        # X1^3 = (X1)^2 * X1
        assert decompose_poly(P("X1^3"), 1) == {(1, 0): P("X1")}

    def test_mixed_polynomial(self):
        f = P("X1^3 + X1^2*X2^2 + X2")
        assert decompose_poly(f, 1) == {
            (1, 0): P("X1"),
            (0, 0): P("X1*X2"),
            (0, 1): P("1"),
        }

    def test_level_zero_is_identity(self):
        f = P("X1^3 + X2 + 1")
        assert decompose_poly(f, 0) == {(0, 0): f}

    def test_zero_has_no_pieces(self):
        assert decompose_poly(Poly.zero(2, 2), 2) == {}

    def test_odd_characteristic(self):
        assert decompose_poly(P("X1^4", p=3), 1) == {(1, 0): P("X1", p=3)}
        assert decompose_poly(P("X1^2*X2^5", p=3), 1) == {(2, 2): P("X2", p=3)}

    def test_rejects_negative_level(self):
        with pytest.raises(AlgebraError):
            decompose_poly(P("X1"), -1)

    def test_rejects_integer_coefficients(self):
        f = Poly.variable("X1", 2, None)
        with pytest.raises(AlgebraError):
            decompose_poly(f, 1)

    def test_rejects_carry_variables(self):
        f = Poly.variable("Y1", 2, 2)
        with pytest.raises(AlgebraError):
            decompose_poly(f, 1)


class TestRoundtrip:
    def test_polynomial_pieces_recompose(self):
        f = P("X1^3 + X1^2*X2^2 + X2")
        x = RatFun.from_poly(f)
        for n in range(3):
            pieces = p_power_decompose(x, n)
            assert recompose(pieces, 2, 2, n) == x

    def test_rational_pieces(self):
        x = R("1/X1")
        assert p_power_decompose(x, 1) == {(1, 0): R("1/X1")}
        x = R("X1^3/(X1 + 1)")
        assert p_power_decompose(x, 1) == {
            (0, 0): R("X1^2/(X1 + 1)"),
            (1, 0): R("X1/(X1 + 1)"),
        }

    def test_random_rationals_roundtrip(self):
        rng = random.Random(7)
        for _ in range(6):
            x = random_ratfun(P22, rng)
            for n in range(3):
                assert recompose(p_power_decompose(x, n), 2, 2, n) == x

    def test_recompose_rejects_out_of_range_index(self):
        pieces = {(2, 0): RatFun.const(2, 2, 1)}
        with pytest.raises(AlgebraError):
            recompose(pieces, 2, 2, 1)


class TestDerivationRoute:
    def test_polynomial_example(self):
        got = derivation_via_pbasis(P22, R("X1^3"), (1, 0), 1)
        assert got == R("X1^2")

    def test_inverse_coordinate(self):
        got = derivation_via_pbasis(P22, R("1/X1"), (1, 0), 1)
        assert got == R("1/X1^2")

    def test_level_below_index_is_rejected(self):
        with pytest.raises(AlgebraError):
            derivation_via_pbasis(P22, R("X1"), (2, 0), 1)

    def test_agrees_with_series_extension(self):
        D = canonical_witt_derivation(P22)
        samples = [R("X1*X2"), R("1/(X1 + 1)"), R("X1^3/(X1 + 1)")]
        js = [(1, 0), (0, 1), (1, 1), (2, 0)]
        for x in samples:
            s = extend_to_rational(D, x, 3)
            for j in js:
                got = derivation_via_pbasis(P22, x, j, 2)
                assert got == s.coefficient(j), (x.text(), j)

    def test_level_stability(self):
        x = R("X2/(X1 + 1)")
        for j in [(1, 0), (1, 1)]:
            base = derivation_via_pbasis(P22, x, j, max(j))
            for n in range(max(j), 4):
                assert derivation_via_pbasis(P22, x, j, n) == base

    def test_zero_index_is_identity(self):
        x = R("X1/(X2 + 1)")
        assert derivation_via_pbasis(P22, x, (0, 0), 2) == x


class TestIndependence:
    def test_coordinates_are_independent(self):
        coords = [P("X1"), P("X2")]
        ok, witness = p_independence_check(coords, 2)
        assert ok and witness is None

    def test_square_gives_dependence(self):
        cands = [P("X1"), P("X1^2")]
        ok, witness = p_independence_check(cands, 2)
        assert not ok
        assert witness
        assert dependence_witness_value(cands, witness).is_zero()
        assert any(not x.is_zero() for x in witness.values())

    def test_rejects_empty_family(self):
        with pytest.raises(AlgebraError):
            p_independence_check([], 2)

    def test_rejects_oversized_family(self):
        cands = [P("X1")] * 7
        with pytest.raises(AlgebraError):
            p_independence_check(cands, 1)

    def test_rejects_mixed_domains(self):
        with pytest.raises(AlgebraError):
            p_independence_check([P("X1"), P("X1", p=3)], 1)


class TestContext:
    def test_construction_and_derive(self):
        ctx = PBasisContext(P22, degbound=2)
        x = R("X1^3/(X1 + 1)")
        j = (1, 0)
        assert ctx.derive(x, j, 2) == derivation_via_pbasis(P22, x, j, 2)

    def test_small_odd_characteristic(self):
        ctx = PBasisContext(Params(3, 1), degbound=2)
        got = ctx.derive(R("X1^4", e=1, p=3), (1,), 1)
        assert got == R("X1^3", e=1, p=3)
