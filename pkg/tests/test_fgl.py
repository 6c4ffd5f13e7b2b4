"""Formal group law wrappers and iterativity constants tables."""

import math

import pytest

from wittkit.algebra import Params, iter_total_at_most
from wittkit.errors import AlgebraError, InvariantViolation
from wittkit.fgl import (FormalGroupLaw, additive_constants_oracle,
                         fgl_axiom_check, iterativity_constants, make_fgl,
                         mult_by_n)
from wittkit.textio import parse_poly


def test_law_kinds():
    params = Params(2, 2)
    add = make_fgl("additive", params)
    assert [c.text() for c in add.components] == ["X1 + Y1", "X2 + Y2"]
    witt = make_fgl("witt", params)
    assert witt.components[1] == parse_poly("X2 + Y2 + X1*Y1", 2, 2)
    gm = make_fgl("multiplicative", Params(3, 1))
    assert gm.components[0] == parse_poly("X1 + Y1 + X1*Y1", 1, 3)


def test_kind_aliases():
    assert make_fgl("ga", Params(2, 1)).kind == "additive"
    assert make_fgl("gm", Params(2, 1)).kind == "multiplicative"
    with pytest.raises(AlgebraError):
        make_fgl("lubin-tate", Params(2, 1))


def test_multiplicative_needs_length_one():
    with pytest.raises(AlgebraError):
        make_fgl("multiplicative", Params(2, 2))


def test_components_must_vanish_at_zero():
    params = Params(2, 2)
    bad = (parse_poly("X1 + Y1 + 1", 2, 2), parse_poly("X2 + Y2", 2, 2))
    with pytest.raises(InvariantViolation):
        FormalGroupLaw(params, "witt", bad)


def test_axioms_hold_for_all_kinds():
    for kind, params in [("witt", Params(2, 2)), ("witt", Params(3, 2)),
                         ("additive", Params(5, 2)),
                         ("multiplicative", Params(3, 1))]:
        F = make_fgl(kind, params)
        assert fgl_axiom_check(F) == {"unit": True, "commutative": True,
                                      "associative": True}


def test_axiom_check_catches_broken_law():
    params = Params(2, 2)
    good = make_fgl("witt", params)
    comps = (good.components[0],
             good.components[1] + parse_poly("X1*Y2", 2, 2))
    broken = FormalGroupLaw(params, "witt", comps)
    result = fgl_axiom_check(broken)
    assert not result["commutative"]


class TestMultByN:
    def test_one_is_identity(self):
        F = make_fgl("witt", Params(2, 2))
        assert [c.text() for c in mult_by_n(F, 1)] == ["X1", "X2"]

    def test_additive_is_scalar(self):
        F = make_fgl("additive", Params(5, 2))
        got = mult_by_n(F, 3)
        assert [c.text() for c in got] == ["3*X1", "3*X2"]
        assert all(c.is_zero() for c in mult_by_n(F, 5))

    def test_multiplicative_is_binomial(self):
        # [n](X) = (1+X)^n - 1 for the multiplicative law.
        F = make_fgl("multiplicative", Params(3, 1))
        x = parse_poly("X1", 1, 3)
        for n in range(1, 7):
            expected = (x + 1) ** n - 1
            assert mult_by_n(F, n)[0] == expected

    def test_addition_of_iterates(self):
        F = make_fgl("witt", Params(2, 2))
        for n, m in [(1, 1), (1, 2), (2, 3)]:
            lhs = mult_by_n(F, n + m)
            xn = mult_by_n(F, n)
            ym = mult_by_n(F, m)
            images = {}
            for k in range(2):
                images[f"X{k + 1}"] = xn[k]
                images[f"Y{k + 1}"] = ym[k]
            rhs = tuple(c.substitute(images) for c in F.components)
            assert lhs == rhs

    def test_rejects_nonpositive(self):
        F = make_fgl("witt", Params(2, 2))
        with pytest.raises(AlgebraError):
            mult_by_n(F, 0)


class TestIterativityConstants:
    def test_witt_2_2_frozen(self):
        F = make_fgl("witt", Params(2, 2))
        assert iterativity_constants(F, (1, 0), (1, 0)) == {(0, 1): 1}

    def test_zero_index_is_identity_row(self):
        F = make_fgl("witt", Params(2, 2))
        assert iterativity_constants(F, (0, 0), (0, 0)) == {(0, 0): 1}
        assert iterativity_constants(F, (2, 1), (0, 0)) == {(2, 1): 1}

    def test_additive_matches_binomial_oracle(self):
        F = make_fgl("additive", Params(3, 2))
        for i in iter_total_at_most(2, 3):
            for j in iter_total_at_most(2, 3 - sum(i)):
                got = iterativity_constants(F, i, j)
                assert got == additive_constants_oracle(3, i, j)

    def test_oracle_values(self):
        # coefficient at l = i + j is the product of binomials mod p
        assert additive_constants_oracle(5, (1, 0), (2, 0)) == \
            {(3, 0): math.comb(3, 1) % 5}
        assert additive_constants_oracle(2, (1, 0), (1, 0)) == {}
        assert additive_constants_oracle(3, (1, 1), (1, 1)) == {(2, 2): 4 % 3}

    def test_symmetry(self):
        F = make_fgl("witt", Params(3, 2))
        for i, j in [((1, 0), (0, 1)), ((2, 0), (1, 1)), ((1, 1), (1, 0))]:
            assert iterativity_constants(F, i, j) == \
                iterativity_constants(F, j, i)

    def test_support_respects_cutoff(self):
        F = make_fgl("witt", Params(2, 2))
        for i, j in [((1, 0), (1, 1)), ((2, 0), (0, 2))]:
            table = iterativity_constants(F, i, j)
            for l in table:
                assert 1 <= sum(l) <= sum(i) + sum(j)


def test_min_degree_cutoff_enforced():
    # A putative law component with a degree-0 term breaks the finiteness
    # argument behind the constants table, so construction must refuse it.
    params = Params(2, 2)
    with pytest.raises(InvariantViolation):
        FormalGroupLaw(params, "witt",
                       (parse_poly("X1 + Y1", 2, 2), parse_poly("1", 2, 2)))
