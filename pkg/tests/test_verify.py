import random
from fractions import Fraction as F

import pytest

from fhdet import exact_core as ec
from fhdet.errors import ConfigError, DenominatorZero
from fhdet.fh_symbol import Params
from fhdet.verify import (
    SuiteConfig,
    VerifyOutcome,
    all_passed,
    check_closed_vs_product,
    check_cross_layer,
    check_d_closed_form,
    check_entry_equivalence,
    check_m_product,
    check_proof2_recursion,
    check_rank_drop,
    check_recurrence,
    check_row_op_identity,
    check_sign_irrelevance,
    check_symmetry_exact,
    check_symmetry_float,
    dense_product_sweep,
    run_suite,
    sample_rational,
    sample_rational_between,
    sample_real_params,
)


def _ok(outcome: VerifyOutcome):
    assert outcome.passed, outcome.first_failure
    assert outcome.first_failure is None


class TestOutcome:
    def test_failure_detail_iff_failures(self):
        o = VerifyOutcome("x")
        o.record(True)
        assert o.passed and o.first_failure is None
        o.record(False, alpha=F(1, 2), n=3)
        o.record(False, alpha=F(1, 3), n=4)
        assert o.failures == 2 and o.samples == 3
        assert o.first_failure == {"alpha": "1/2", "n": "3"}

    def test_absorb(self):
        a, b = VerifyOutcome("a"), VerifyOutcome("b")
        a.record(True)
        b.record(False, why="no")
        b.resamples = 4
        a.absorb(b)
        assert (a.samples, a.failures, a.resamples) == (2, 1, 4)
        assert a.first_failure == {"why": "no"}


class TestRowOp:
    @pytest.mark.parametrize("a,b,n", [(1, 1, 4), (0, F(1, 2), 3), (F(-7, 3), F(5, 4), 6)])
    def test_examples(self, a, b, n):
        _ok(check_row_op_identity(a, b, n))

    def test_order_one_is_vacuous(self):
        o = check_row_op_identity(F(2, 3), F(1, 5), 1)
        assert o.samples == 0 and o.passed

    def test_alpha_minus_one_is_excluded(self):
        with pytest.raises(DenominatorZero):
            check_row_op_identity(-1, F(1, 3), 4)


class TestRankDrop:
    @pytest.mark.parametrize("b,k,n", [(F(1, 3), 1, 5), (F(2, 7), 3, 4), (F(1, 2), 2, 6)])
    def test_examples(self, b, k, n):
        _ok(check_rank_drop(b, k, n))
        m = ec.build_m_matrix(-b - k, b, n)
        assert ec.rational_rank(m) <= k
        assert ec.bareiss_det(m) == 0

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            check_rank_drop(F(1, 3), 5, 5)


class TestProof2:
    def test_zero_zero(self):
        _ok(check_proof2_recursion(0, 0, 2))
        assert ec.bareiss_det(ec.build_d_matrix(F(0), F(0), 2)) == 1

    def test_one_one(self):
        _ok(check_proof2_recursion(1, 1, 3))

    def test_factor_vanishes(self):
        _ok(check_proof2_recursion(F(-1, 3), F(-2, 3), 2))
        assert ec.bareiss_det(ec.build_d_matrix(F(-1, 3), F(-2, 3), 2)) == 0

    def test_needs_order_two(self):
        with pytest.raises(ValueError):
            check_proof2_recursion(1, 1, 1)

    def test_closed_form(self):
        r = random.Random(4)
        for n in range(1, 9):
            _ok(check_d_closed_form(sample_rational(r), sample_rational(r), n))


class TestProduct:
    def test_triangular(self):
        _ok(check_m_product(0, F(5, 3), 6))
        assert ec.bareiss_det(ec.build_m_matrix(F(0), F(5, 3), 6)) == 1

    def test_two_by_two(self):
        _ok(check_m_product(1, 1, 2))
        assert ec.m_product_formula(F(1), F(1), 2) == F(3, 4)

    def test_next_to_a_zero(self):
        b = F(3, 7)
        _ok(check_m_product(-b - 2 + F(1, 1000), b, 5))

    def test_dense_sweep(self):
        o = dense_product_sweep()
        _ok(o)
        # alpha = t/17 lands on an excluded integer only at t = -17 .. -85
        assert o.resamples == 3 * 5
        assert o.samples == 3 * 401 - o.resamples


class TestCrossLayer:
    def test_trivial(self):
        _ok(check_cross_layer(0, 0, 8))

    def test_tridiagonal(self):
        _ok(check_cross_layer(1, 1, 10))

    def test_mixed(self):
        _ok(check_cross_layer(F(3, 4), F(1, 2), 6))

    def test_float_only_above_sixteen(self):
        _ok(check_cross_layer(F(3, 4), F(1, 2), 40))


class TestFloatChecks:
    def test_entry_equivalence(self):
        _ok(check_entry_equivalence(F(3, 5), F(-1, 4), 8))

    def test_symmetry_exact(self):
        _ok(check_symmetry_exact(F(2, 9), F(7, 3), 7))

    def test_float_checks(self):
        r = random.Random(8)
        for n in (1, 5, 33):
            p = sample_real_params(r, n)
            _ok(check_closed_vs_product(p, n))
            _ok(check_symmetry_float(p, n))
            _ok(check_sign_irrelevance(p, n))
        _ok(check_recurrence(Params(0.25, 1.5), 64))


class TestSampling:
    def test_rational_bounds(self):
        r = random.Random(0)
        for _ in range(500):
            q = sample_rational(r)
            assert q.denominator <= 16 and abs(q) <= 64
            x = sample_rational_between(r, -0.9, 3.0)
            assert -0.9 < x < 3.0 and x.denominator <= 16

    def test_real_params_keep_clear(self):
        r = random.Random(1)
        for _ in range(200):
            p = sample_real_params(r, 10)
            for k in range(1, 10):
                for v in (p.alpha + k, p.beta + k, p.alpha + p.beta + k):
                    assert abs(v) >= 1e-3


class TestSuite:
    small = SuiteConfig.from_limits(nmax_exact=5, nmax_float=8, samples=3)

    def test_deterministic(self):
        a = run_suite(7, self.small)
        b = run_suite(7, self.small)
        assert [o.to_dict() for o in a] == [o.to_dict() for o in b]
        assert all_passed(a)

    def test_seed_changes_samples_not_verdict(self):
        assert all_passed(run_suite(8, self.small))

    def test_vacuous_order_one(self):
        cfg = SuiteConfig(n_exact=(1,), n_float=(1,), samples=5)
        outcomes = run_suite(7, cfg)
        assert all_passed(outcomes)
        by_name = {o.check_name: o for o in outcomes}
        assert by_name["rank_drop"].samples == 0
        assert "m_product_dense" not in by_name

    @pytest.mark.parametrize("cfg", [
        SuiteConfig(n_exact=()),
        SuiteConfig(n_float=()),
        SuiteConfig(n_exact=(0, 1)),
        SuiteConfig(samples=0),
    ])
    def test_bad_config(self, cfg):
        with pytest.raises(ConfigError):
            run_suite(1, cfg)

    def test_exhausted_resampling_counts_as_failure(self):
        from fhdet.verify import _attempt

        def always_bad():
            raise DenominatorZero("x", hyperplane="alpha+1=0")

        o = VerifyOutcome("t")
        _attempt(o, always_bad, 5, "here")
        assert o.resamples == 5 and o.failures == 1
