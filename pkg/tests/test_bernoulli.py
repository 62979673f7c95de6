"""
多伯努利事件空间与采样测试
"""
import math

import numpy as np
import pytest

from src.logic.bernoulli import (
    cardinality_distribution,
    event_probability,
    iter_events,
    leave_one_out_cardinality,
    realize,
    sample,
    sample_events,
    validate_separation,
)
from src.models.metric_config import BaseDistance, MetricConfig
from src.models.multi_bernoulli import MultiBernoulli, to_binary_vector
from src.utils.exceptions import DimensionMismatchError, ValidationError


class TestEvents:

    def test_event_probability(self):
        mb = MultiBernoulli.on_line([0.4, 0.9])
        assert event_probability(mb, (1, 0)) == pytest.approx(0.04)
        assert event_probability(mb, (0, 1)) == pytest.approx(0.54)

    def test_event_probabilities_sum_to_one(self, rng):
        mb = MultiBernoulli.on_line(rng.uniform(size=5).tolist())
        total = math.fsum(event_probability(mb, e) for e in iter_events(5))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_realize_keeps_component_order(self):
        mb = MultiBernoulli.on_line([0.1, 0.2, 0.3])
        assert realize(mb, (1, 0, 1)).to_list() == [[0.0], [20.0]]

    def test_wrong_length(self):
        mb = MultiBernoulli.on_line([0.1, 0.2])
        with pytest.raises(DimensionMismatchError):
            event_probability(mb, (1, 0, 1))

    def test_non_binary(self):
        with pytest.raises(ValidationError):
            to_binary_vector((0, 2))

    def test_invalid_probability(self):
        with pytest.raises(ValidationError):
            MultiBernoulli.on_line([1.2])


class TestCardinality:

    def test_two_components(self):
        rho = cardinality_distribution(MultiBernoulli.on_line([0.4, 0.4]))
        assert rho == pytest.approx([0.36, 0.48, 0.16])

    def test_matches_event_sum(self, rng):
        probs = rng.uniform(size=6).tolist()
        mb = MultiBernoulli.on_line(probs)
        expected = np.zeros(7)
        for e in iter_events(6):
            expected[sum(e)] += event_probability(mb, e)
        assert cardinality_distribution(mb) == pytest.approx(expected, abs=1e-12)

    def test_leave_one_out(self):
        mb = MultiBernoulli.on_line([0.4, 0.9, 0.2])
        rho_minus = leave_one_out_cardinality(mb, 1)
        assert rho_minus == pytest.approx(cardinality_distribution(mb.without(1)))
        assert len(rho_minus) == 3

    def test_leave_one_out_index_out_of_range(self):
        with pytest.raises(ValidationError):
            leave_one_out_cardinality(MultiBernoulli.on_line([0.5]), 1)


class TestSampling:

    def test_same_seed_same_events(self):
        mb = MultiBernoulli.on_line([0.3, 0.5, 0.7])
        assert np.array_equal(sample_events(mb, 50, 7), sample_events(mb, 50, 7))
        assert sample(mb, 3) == sample(mb, 3)

    def test_degenerate_probabilities(self):
        mb = MultiBernoulli.on_line([0.0, 1.0])
        events = sample_events(mb, 100, 0)
        assert events[:, 0].sum() == 0
        assert events[:, 1].sum() == 100

    def test_empirical_frequency(self):
        mb = MultiBernoulli.on_line([0.25])
        events = sample_events(mb, 20000, 1)
        assert events.mean() == pytest.approx(0.25, abs=0.02)

    def test_cardinality_histogram_matches_pmf(self, rng):
        n_samples = 100_000
        for seed in range(5):
            mb = MultiBernoulli.on_line(rng.uniform(size=int(rng.integers(1, 8))).tolist())
            pmf = cardinality_distribution(mb)
            counts = np.bincount(sample_events(mb, n_samples, seed).sum(axis=1), minlength=len(pmf))
            frequencies = counts / n_samples
            std_err = np.sqrt(pmf * (1.0 - pmf) / n_samples)
            assert np.all(np.abs(frequencies - pmf) <= 4.0 * std_err + 1e-12)


class TestSeparation:

    def test_separated(self):
        assert validate_separation(MultiBernoulli.on_line([0.5, 0.5], 10.0), 1.0).separated

    def test_distance_equal_to_cutoff_is_violation(self):
        report = validate_separation(MultiBernoulli.on_line([0.5, 0.5, 0.5], 1.0), 1.0)
        assert not report.separated
        assert report.violations == ((0, 1), (1, 2))

    def test_uses_configured_base_distance(self):
        mb = MultiBernoulli.from_arrays([0.4, 0.4], [[0.0, 0.0], [0.8, 0.8]])
        assert validate_separation(mb, 1.0).separated
        assert validate_separation(mb, 1.0, MetricConfig(base_distance=BaseDistance.MANHATTAN)).separated
        chebyshev = validate_separation(mb, 1.0, MetricConfig(base_distance=BaseDistance.CHEBYSHEV))
        assert chebyshev.violations == ((0, 1),)
