"""The check-suite layer: report shapes, frozen witnesses, determinism."""

import pytest

from wittkit.algebra import Params
from wittkit.errors import AlgebraError
from wittkit.verifier import (SUITE_ORDER, CheckReport, VerifyOptions,
                              composite_coefficient, kernel_strictness,
                              max_nilpotence_witness, padic_digits,
                              run_suite, suite_names)

P22 = Params(2, 2)
FAST = VerifyOptions(deg_bound=4, order_bound=4, n=2, samples=4)


def ids(reports):
    return [r.check_id for r in reports]


class TestReportShape:
    def test_ok_property(self):
        assert CheckReport("x", {}, "pass").ok
        assert CheckReport("x", {}, "witness-found").ok
        assert not CheckReport("x", {}, "fail").ok

    def test_params_carry_p_and_e(self):
        for r in run_suite("witt-law", P22, FAST):
            assert r.params["p"] == 2 and r.params["e"] == 2
            assert r.wall_ms >= 0


class TestSuiteContents:
    def test_witt_law(self):
        reports = run_suite("witt-law", P22, FAST)
        assert ids(reports) == [
            "witt-law.ghost", "witt-law.reduced-triangular", "witt-law.unit",
            "witt-law.commutative", "witt-law.associative",
            "witt-law.mult-by-p"]
        assert all(r.ok for r in reports)

    def test_iterativity(self):
        reports = run_suite("iterativity", P22, FAST)
        assert ids(reports) == [
            "iterativity.additive-binomial", "iterativity.w1-matches-additive",
            "iterativity.defining-property", "iterativity.symmetry"]
        assert all(r.ok for r in reports)

    def test_lemma_we_iter(self):
        reports = run_suite("lemma-we-iter", P22, FAST)
        assert ids(reports) == [
            "lemma-we-iter.nilpotence", "lemma-we-iter.component-shift",
            "lemma-we-iter.factorization", "lemma-we-iter.splitting"]
        assert all(r.ok for r in reports)

    def test_fact_2_25(self):
        reports = run_suite("fact-2-25", P22, FAST)
        assert ids(reports) == ["fact-2-25.witt", "fact-2-25.additive"]
        assert all(r.ok for r in reports)

    def test_h_schemes(self):
        reports = run_suite("h-schemes", P22, FAST)
        assert ids(reports) == ["h-schemes.H%d" % k
                                for k in (1, 2, 3, 4, 5, 6, 8)]
        assert all(r.ok for r in reports)

    def test_h5_and_h6(self):
        assert ids(run_suite("h5", P22, FAST)) == ["h5.witness"]
        reports = run_suite("h6", P22, FAST)
        assert ids(reports) == ["h6.kernel", "h6.component-powers",
                                "h6.component-witness"]
        assert all(r.ok for r in reports)

    def test_mw_counterexample(self):
        reports = run_suite("mw-counterexample", P22, FAST)
        assert ids(reports) == [
            "mw-counterexample.coefficient", "mw-counterexample.search",
            "mw-counterexample.discrepancy-identity",
            "mw-counterexample.nilpotence"]
        assert all(r.ok for r in reports)

    def test_pbasis(self):
        reports = run_suite("pbasis", P22, FAST)
        assert ids(reports) == [
            "pbasis.roundtrip", "pbasis.route-equivalence",
            "pbasis.n-stability", "pbasis.p-independence",
            "pbasis.basis-conditions", "pbasis.linearity"]
        assert all(r.ok for r in reports)

    def test_all_concatenates_in_order(self):
        reports = run_suite("all", P22, FAST)
        assert len(reports) == 37
        prefixes = []
        for r in reports:
            head = r.check_id.split(".")[0]
            if not prefixes or prefixes[-1] != head:
                prefixes.append(head)
        # the re-wrapped H5/H6 reports live inside h-schemes, so the prefix
        # stream has no interleaving beyond that
        assert prefixes == ["witt-law", "iterativity", "lemma-we-iter",
                            "fact-2-25", "h-schemes", "h5", "h6",
                            "mw-counterexample", "pbasis"]
        assert prefixes == SUITE_ORDER


class TestFrozenWitnesses:
    def test_mw_search_finds_the_product_monomial(self):
        reports = run_suite("mw-counterexample", P22, FAST)
        search = reports[1]
        assert search.verdict == "witness-found"
        assert search.witness == {"x": "X1*X2", "delta": "X1", "searched": 5}

    def test_h5_witness_values(self):
        r = max_nilpotence_witness(P22)
        assert r.verdict == "witness-found"
        assert r.witness == {"input": "X1*X2", "value": "1", "power": 3}
        r = max_nilpotence_witness(Params(3, 1))
        assert r.witness == {"input": "X1^2", "value": "2", "power": 2}

    def test_kernel_strictness_passes(self):
        r = kernel_strictness(P22, FAST)
        assert r.verdict == "pass"


class TestCoefficients:
    def test_small_values_are_one(self):
        for n in (1, 2, 3, 4):
            assert composite_coefficient(n, 2) == 1

    def test_always_a_unit(self):
        for p in (2, 3, 5):
            for n in range(1, 13):
                c = composite_coefficient(n, p)
                assert 1 <= c < p

    def test_known_odd_value(self):
        # 5 = 12 in base 3: ratio (3!)^1 * (1!)^2 / 5! = 6/120 = 1/20,
        # and 1/20 = 1/2 = 2 mod 3
        assert composite_coefficient(5, 3) == 2

    def test_digits(self):
        assert padic_digits(0, 2) == []
        assert padic_digits(11, 2) == [1, 1, 0, 1]
        assert padic_digits(11, 3) == [2, 0, 1]


class TestRunSuite:
    def test_unknown_suite_is_rejected(self):
        with pytest.raises(AlgebraError):
            run_suite("laws-of-motion", P22, FAST)

    def test_suite_names(self):
        assert suite_names() == ["all"] + SUITE_ORDER

    def test_determinism(self):
        a = run_suite("mw-counterexample", P22, FAST)
        b = run_suite("mw-counterexample", P22, FAST)
        strip = lambda rs: [(r.check_id, r.params, r.verdict, r.witness)
                            for r in rs]
        assert strip(a) == strip(b)

    def test_default_options_used_when_omitted(self):
        reports = run_suite("h5", P22)
        assert len(reports) == 1 and reports[0].ok
