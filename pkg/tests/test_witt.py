"""Addition laws of truncated Witt vectors, generated and cross-checked."""

import pytest

from wittkit.algebra import Params, Poly
from wittkit.errors import AlgebraError
from wittkit.textio import parse_poly
from wittkit.witt import (mult_by_p_endo, witt_addition_law,
                          witt_endomorphism, witt_polynomial,
                          witt_vector_vars)


def test_ghost_polynomials():
    params = Params(3, 3)
    assert witt_polynomial(0, params) == parse_poly("X1", 3, None)
    assert witt_polynomial(1, params) == parse_poly("X1^3 + 3*X2", 3, None)
    assert witt_polynomial(2, params) == \
        parse_poly("X1^9 + 3*X2^3 + 9*X3", 3, None)


def test_ghost_polynomial_bounds():
    params = Params(2, 2)
    with pytest.raises(AlgebraError):
        witt_polynomial(2, params)
    with pytest.raises(AlgebraError):
        witt_polynomial(-1, params)


def test_law_2_2_frozen():
    law = witt_addition_law(Params(2, 2))
    assert law.reduced[0] == parse_poly("X1 + Y1", 2, 2)
    assert law.reduced[1] == parse_poly("X2 + Y2 + X1*Y1", 2, 2)
    assert law.integral[0] == parse_poly("X1 + Y1", 2, None)
    assert law.integral[1] == parse_poly("X2 + Y2 - X1*Y1", 2, None)


def test_law_3_2_frozen():
    law = witt_addition_law(Params(3, 2))
    assert law.reduced[1] == \
        parse_poly("X2 + Y2 + 2*X1^2*Y1 + 2*X1*Y1^2", 2, 3)


def test_ghost_identity_by_substitution():
    # Independent re-check of the generated law, at a size not frozen above.
    params = Params(2, 3)
    law = witt_addition_law(params)
    for m in range(3):
        w = witt_polynomial(m, params)
        images = {f"X{k + 1}": law.integral[k] for k in range(m + 1)}
        assert w.substitute(images) == w + w.rename({"X": "Y"})


def test_first_component_is_always_plain_sum():
    for p, e in [(2, 1), (3, 2), (5, 3)]:
        law = witt_addition_law(Params(p, e))
        assert law.reduced[0] == parse_poly("X1 + Y1", e, p)


def test_triangularity():
    law = witt_addition_law(Params(3, 2))
    carry = law.reduced[1] - parse_poly("X2 + Y2", 2, 3)
    assert carry.variables() <= {"X1", "Y1"}


class TestEndomorphisms:
    def test_frobenius(self):
        params = Params(2, 2)
        vec = witt_vector_vars(params)
        fr = witt_endomorphism("fr", vec, params)
        assert [f.text() for f in fr] == ["X1^2", "X2^2"]

    def test_shift_and_drop(self):
        params = Params(2, 2)
        vec = witt_vector_vars(params)
        ve = witt_endomorphism("ve", vec, params)
        assert len(ve) == 3 and ve[0].is_zero() and ve[1] == vec[0]
        re = witt_endomorphism("re", vec, params)
        assert re == vec[:-1]

    def test_unknown_kind(self):
        params = Params(2, 2)
        with pytest.raises(AlgebraError):
            witt_endomorphism("tw", witt_vector_vars(params), params)

    def test_mult_by_p_frozen(self):
        got = mult_by_p_endo(Params(2, 2))
        assert [f.text() for f in got] == ["0", "X1^2"]

    def test_mult_by_p_shape(self):
        for p, e in [(3, 2), (2, 3), (5, 2)]:
            got = mult_by_p_endo(Params(p, e))
            assert got[0].is_zero()
            for k in range(1, e):
                assert got[k] == Poly.variable(f"X{k}", e, p) ** p


def test_law_cache_returns_same_object():
    a = witt_addition_law(Params(2, 2))
    b = witt_addition_law(Params(2, 2))
    assert a is b
