import numpy as np
import pytest

from witnesspy.geometry import BlochConfig
from witnesspy.norms import SolverConfig, lk_branch_bound
from witnesspy.simulation import gg_matrix, one_bit_bound_holds, sample_protocol, simulate_gg


def _random_pairs(seed: int, count: int):
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((count, 2, 3))
    draws /= np.linalg.norm(draws, axis=2, keepdims=True)
    return [(pair[0], pair[1]) for pair in draws]


class TestSimulateGG:
    def test_aligned_pair_always_agrees(self):
        report = simulate_gg([0, 0, 1], [0, 0, 1], 50_000, seed=1)
        assert report.e_coarse == 1.0
        assert report.e_detected == 1.0

    def test_orthogonal_pair(self):
        report = simulate_gg([1, 0, 0], [0, 0, 1], 200_000, seed=2)
        assert report.detect_rate == pytest.approx(0.5, abs=0.01)
        assert report.e_detected == pytest.approx(0.0, abs=0.015)
        assert report.e_coarse == pytest.approx(0.5, abs=0.015)

    def test_random_pairs_small(self):
        for a, b in _random_pairs(seed=3, count=5):
            report = simulate_gg(a, b, 200_000, seed=4)
            dot = float(a @ b)
            assert abs(report.e_coarse - (dot + 1.0) / 2.0) < 0.015
            assert abs(report.e_detected - dot) < 0.02
            assert 0.49 <= report.detect_rate <= 0.51

    def test_same_seed_same_report(self):
        first = simulate_gg([1, 0, 0], [0, 1, 0], 30_000, seed=9, chunk_size=4096)
        second = simulate_gg([1, 0, 0], [0, 1, 0], 30_000, seed=9, chunk_size=4096)
        assert first == second

    def test_worker_count_does_not_change_result(self):
        serial = simulate_gg([0, 0, 1], [0.6, 0, 0.8], 40_000, seed=5, chunk_size=8192, workers=1)
        pooled = simulate_gg([0, 0, 1], [0.6, 0, 0.8], 40_000, seed=5, chunk_size=8192, workers=2)
        assert serial == pooled

    def test_standard_errors(self):
        report = simulate_gg([1, 0, 0], [0, 0, 1], 10_000, seed=6)
        assert 0 < report.detect_rate_err < 0.01
        assert set(report.to_dict()) >= {"n_samples", "detect_rate", "e_detected", "e_coarse"}

    def test_rejects_non_unit_vectors(self):
        with pytest.raises(ValueError):
            simulate_gg([0, 0, 2], [0, 0, 1], 10)

    def test_rejects_empty_run(self):
        with pytest.raises(ValueError):
            simulate_gg([0, 0, 1], [0, 0, 1], 0)


class TestProtocolSample:
    def test_single_round(self):
        sample = sample_protocol([0, 0, 1], [1, 0, 0], np.random.default_rng(0))
        assert sample.c in (-1, 1)
        assert sample.b in (-1, 0, 1)
        assert sample.coarse in (-1, 1)
        assert abs(float(np.linalg.norm(sample.lam)) - 1.0) < 1e-12

    def test_aligned_round_agrees(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            assert sample_protocol([0, 0, 1], [0, 0, 1], rng).coarse == 1


class TestGGMatrix:
    def test_aligned_one_by_one(self):
        cfg = BlochConfig(a_vectors=[[0, 0, 1]], b_vectors=[[0, 0, 1]])
        assert gg_matrix(cfg, 5_000, seed=0).tolist() == [[1.0]]

    def test_chsh_configuration(self, chsh, chsh_vectors):
        a, b = chsh_vectors
        cfg = BlochConfig(a_vectors=a, b_vectors=b)
        samples = 100_000
        estimates = gg_matrix(cfg, samples, seed=7)
        expected = (a @ b.T + 1.0) / 2.0
        # coarse outcomes are +-1, so the standard error is at most 1/sqrt(samples)
        assert np.all(np.abs(estimates.entries - expected) < 4.0 / np.sqrt(samples))

    def test_one_bit_bound_holds(self, chsh, chsh_vectors):
        a, b = chsh_vectors
        samples = 20_000
        estimates = gg_matrix(BlochConfig(a_vectors=a, b_vectors=b), samples, seed=8)
        l2 = lk_branch_bound(chsh, 2, SolverConfig(threads=1)).value
        assert one_bit_bound_holds(chsh, estimates, l2, samples)


@pytest.mark.slow
def test_twenty_random_pairs_at_full_scale():
    rates = []
    for index, (a, b) in enumerate(_random_pairs(seed=1, count=20)):
        report = simulate_gg(a, b, 1_000_000, seed=index)
        dot = float(a @ b)
        assert abs(report.e_coarse - (dot + 1.0) / 2.0) < 0.005
        assert abs(report.e_detected - dot) < 0.01
        rates.append(report.detect_rate)
    assert 0.497 <= min(rates) and max(rates) <= 0.503
