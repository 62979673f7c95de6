"""
闭式均方误差测试
"""
import math

import pytest

from src.logic.bernoulli import event_probability, iter_events, realize
from src.logic.enumeration_oracle import exact_mse
from src.logic.estimators import iter_detection_vectors
from src.logic.mse_closed_form import (
    ClosedFormMse,
    mse,
    msgospa,
    msgospa_general_alpha,
    msospa,
    msospa_all_or_nothing,
    msospa_identical_r,
    msuospa,
    msuospa_identical_r,
    square_error_given_event,
)
from src.models.estimate import MetricKind
from src.models.metric_config import BaseDistance, MetricConfig
from src.models.multi_bernoulli import MultiBernoulli
from src.utils.exceptions import DimensionMismatchError, SeparationError, ValidationError
from tests.conftest import random_mb


class TestExamples:
    """两个分量相距很远时的手算结果"""

    @pytest.mark.parametrize("r, e_hat, expected", [
        ((0.4, 0.4), (1, 1), 0.6),
        ((0.4, 0.4), (1, 0), 0.68),
        ((0.4, 0.4), (0, 0), 0.64),
        ((0.4, 0.9), (0, 1), 0.28),
        ((0.4, 0.3), (0, 0), 0.58),
    ])
    def test_msospa(self, r, e_hat, expected):
        assert msospa(MultiBernoulli.on_line(list(r)), e_hat, 1.0) == pytest.approx(expected)

    def test_msgospa_is_separable(self):
        mb = MultiBernoulli.on_line([0.4, 0.9])
        # c^2/2 * (0.4 + 0.1)
        assert msgospa(mb, (0, 1), 1.0) == pytest.approx(0.25)

    def test_msuospa(self):
        mb = MultiBernoulli.on_line([0.4, 0.4])
        # E[max(n, 1)] = 0.36 + 0.48 + 0.32 = 1.16, minus r_1
        assert msuospa(mb, (1, 0), 1.0) == pytest.approx(0.76)

    def test_scales_with_c_squared(self):
        mb = MultiBernoulli.on_line([0.3, 0.8], 50.0)
        for kind in MetricKind:
            small = mse(kind, mb, (0, 1), 1.0, alpha=0.7).value
            large = mse(kind, mb, (0, 1), 3.0, alpha=0.7).value
            assert large == pytest.approx(9.0 * small)

    def test_general_alpha_one_equals_uospa(self, rng):
        for _ in range(30):
            mb = random_mb(rng)
            for e_hat in iter_detection_vectors(len(mb)):
                assert msgospa_general_alpha(mb, e_hat, 1.0, 1.0) == pytest.approx(
                    msuospa(mb, e_hat, 1.0), abs=1e-12
                )

    def test_general_alpha_two_equals_gospa2(self, rng):
        for _ in range(30):
            mb = random_mb(rng)
            for e_hat in iter_detection_vectors(len(mb)):
                assert msgospa_general_alpha(mb, e_hat, 1.0, 2.0) == pytest.approx(
                    msgospa(mb, e_hat, 1.0), abs=1e-12
                )

    def test_msgospa_is_sum_of_single_components(self, rng):
        for _ in range(100):
            mb = random_mb(rng, 8)
            e_hat = tuple(int(v) for v in rng.integers(0, 2, size=len(mb)))
            parts = [
                msgospa(MultiBernoulli((component,)), (e_i,), 1.5)
                for component, e_i in zip(mb.components, e_hat)
            ]
            assert msgospa(mb, e_hat, 1.5) == pytest.approx(math.fsum(parts), abs=1e-12)

    def test_bounds(self, rng):
        for _ in range(100):
            mb = random_mb(rng)
            c = float(rng.uniform(0.5, 3.0))
            for e_hat in iter_detection_vectors(len(mb)):
                assert 0.0 <= msospa(mb, e_hat, c) <= c ** 2 + 1e-12
                assert 0.0 <= msgospa(mb, e_hat, c) <= c ** 2 / 2 * len(mb) + 1e-12

    def test_degenerate_components(self):
        mb = MultiBernoulli.on_line([0.0, 1.0])
        assert msgospa(mb, (0, 1), 1.0) == 0.0
        assert msuospa(mb, (0, 1), 1.0) == pytest.approx(0.0, abs=1e-15)
        assert msospa(mb, (0, 1), 1.0) == pytest.approx(0.0, abs=1e-15)


class TestContracts:

    def test_requires_separation(self):
        mb = MultiBernoulli.on_line([0.5, 0.5], 1.0)
        with pytest.raises(SeparationError):
            msospa(mb, (1, 1), 1.0)

    def test_requires_order_two(self):
        with pytest.raises(ValidationError):
            ClosedFormMse(MultiBernoulli.on_line([0.5]), 1.0, p=1)

    @pytest.mark.parametrize("kind", list(MetricKind))
    def test_dispatcher_requires_order_two(self, kind):
        with pytest.raises(ValidationError):
            mse(kind, MultiBernoulli.on_line([0.5, 0.5]), (1, 1), 1.0, alpha=1.0, p=3)

    def test_separation_uses_configured_base_distance(self):
        mb = MultiBernoulli.from_arrays([0.4, 0.4], [[0.0, 0.0], [0.8, 0.8]])
        assert mse(MetricKind.OSPA, mb, (1, 0), 1.0).value == pytest.approx(0.68)
        chebyshev = MetricConfig(base_distance=BaseDistance.CHEBYSHEV)
        with pytest.raises(SeparationError):
            mse(MetricKind.OSPA, mb, (1, 0), 1.0, metric_cfg=chebyshev)
        with pytest.raises(SeparationError):
            ClosedFormMse(mb, 1.0, metric_cfg=chebyshev)

    def test_wrong_vector_length(self):
        with pytest.raises(DimensionMismatchError):
            msgospa(MultiBernoulli.on_line([0.5, 0.5]), (1,), 1.0)

    def test_general_alpha_range(self):
        with pytest.raises(ValidationError):
            msgospa_general_alpha(MultiBernoulli.on_line([0.5]), (1,), 1.0, 2.5)

    def test_report_alpha(self):
        mb = MultiBernoulli.on_line([0.5])
        assert mse(MetricKind.GOSPA2, mb, (1,), 1.0).alpha == 2.0
        assert mse(MetricKind.UOSPA, mb, (1,), 1.0).alpha == 1.0
        assert mse(MetricKind.OSPA, mb, (1,), 1.0).alpha is None
        assert mse(MetricKind.GOSPA_GENERAL_ALPHA, mb, (1,), 1.0, 0.5).alpha == 0.5

    def test_unknown_metric_kind(self):
        with pytest.raises(ValidationError):
            square_error_given_event("wasserstein", (1,), (1,), 1.0)


class TestAgainstEnumeration:
    """闭式结果与穷举事件、直接计算集合距离的结果一致"""

    def test_detection_vectors(self, rng):
        # N <= 6 时比较全部检测向量, 更大的 N 抽取部分检测向量
        for _ in range(200):
            mb = random_mb(rng, 10)
            alpha = float(rng.uniform(0.1, 2.0))
            cfg = MetricConfig(p=2.0, c=1.0, alpha=alpha)
            calc = ClosedFormMse(mb, 1.0)
            events = list(iter_events(len(mb)))
            if len(mb) <= 6:
                vectors = list(iter_detection_vectors(len(mb)))
            else:
                vectors = [tuple(int(v) for v in rng.integers(0, 2, size=len(mb))) for _ in range(2)]
            for e_hat in vectors:
                estimate = realize(mb, e_hat)
                for kind in MetricKind:
                    closed = calc.value(kind, e_hat, alpha)
                    by_events = math.fsum(
                        event_probability(mb, e) * square_error_given_event(kind, e, e_hat, 1.0, alpha)
                        for e in events
                    )
                    assert closed == pytest.approx(by_events, abs=1e-9)
                    assert closed == pytest.approx(exact_mse(mb, estimate, kind, cfg).mean, abs=1e-9)


class TestIdenticalProbabilities:

    @pytest.mark.parametrize("n, r", [(1, 0.3), (4, 0.2), (7, 0.8), (9, 0.55)])
    def test_matches_general_formula(self, n, r):
        mb = MultiBernoulli.on_line([r] * n)
        for n_hat in range(n + 1):
            e_hat = tuple([1] * n_hat + [0] * (n - n_hat))
            assert msuospa_identical_r(n, r, n_hat, 1.0) == pytest.approx(msuospa(mb, e_hat, 1.0), abs=1e-12)
            assert msospa_identical_r(n, r, n_hat, 1.0) == pytest.approx(msospa(mb, e_hat, 1.0), abs=1e-12)

    def test_all_or_nothing(self):
        n, r, c = 6, 0.3, 2.0
        none, everything = msospa_all_or_nothing(n, r, c)
        assert none == pytest.approx(msospa_identical_r(n, r, 0, c), abs=1e-12)
        assert everything == pytest.approx(msospa_identical_r(n, r, n, c), abs=1e-12)
        assert everything == pytest.approx(c ** 2 * (1 - r))

    def test_n_hat_out_of_range(self):
        with pytest.raises(ValidationError):
            msuospa_identical_r(3, 0.5, 4, 1.0)
