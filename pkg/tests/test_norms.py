from math import comb

import numpy as np
import pytest

from witnesspy.core import WitnessMatrix, gen_family, make_doubled
from witnesspy.errors import SizeCapError
from witnesspy.norms import (
    BranchBoundSolver,
    GroupAssignment,
    SolverConfig,
    canonical_prefixes,
    cut_norm_bruteforce,
    lk_branch_bound,
    lk_bruteforce,
    lk_suffix_table,
    local_bound_bruteforce,
    local_bound_witness,
)

from .conftest import random_corpus, random_matrix

SERIAL = SolverConfig(threads=1)


def _vstack(a: WitnessMatrix, b: WitnessMatrix) -> WitnessMatrix:
    return WitnessMatrix(np.vstack([a.entries, b.entries]))


class TestGoldenValues:
    def test_local_bound_chsh(self, chsh):
        assert local_bound_bruteforce(chsh) == 2

    def test_local_bound_m4(self, m4):
        assert local_bound_bruteforce(m4) == 12

    def test_local_bound_doubled(self, doubled_chsh):
        assert local_bound_bruteforce(doubled_chsh) == 4

    def test_l2_chsh(self, chsh):
        assert lk_bruteforce(chsh, 2) == 4
        assert lk_branch_bound(chsh, 2, SERIAL).value == 4

    def test_l2_with_extra_row(self):
        matrix = WitnessMatrix.from_rows([[1, 1], [1, -1], [-1, 0]])
        assert lk_bruteforce(matrix, 2) == 3
        assert lk_branch_bound(matrix, 2, SERIAL).value == 3

    def test_l2_doubled(self, doubled_chsh):
        assert lk_branch_bound(doubled_chsh, 2, SERIAL).value == 4

    def test_l3_chsh(self, chsh):
        assert lk_branch_bound(chsh, 3, SERIAL).value == 4

    def test_lk_m4(self, m4):
        assert lk_bruteforce(m4, 4) == 32

    def test_cut_norm(self, chsh, m4):
        assert cut_norm_bruteforce(chsh) == 2
        assert cut_norm_bruteforce(m4) == 8
        assert cut_norm_bruteforce(WitnessMatrix.from_rows([[-1, -2], [-3, -4]])) == 0

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_family_formulas(self, k):
        matrix = gen_family(k)
        assert local_bound_bruteforce(matrix) == k * comb(k - 1, (k - 1) // 2)
        assert lk_bruteforce(matrix, k) == k * 2 ** (k - 1)
        assert lk_branch_bound(matrix, k, SERIAL).value == k * 2 ** (k - 1)


class TestLocalBoundWitness:
    def test_witness_attains_value(self, corpus):
        for matrix in corpus[:50]:
            value, a, b = local_bound_witness(matrix)
            assert int(a @ matrix.entries @ b) == value
            assert set(np.unique(a)) <= {-1, 1}

    def test_uses_smaller_side(self):
        matrix = WitnessMatrix(np.ones((40, 3), dtype=np.int64))
        assert local_bound_bruteforce(matrix) == 120

    def test_cap(self):
        with pytest.raises(SizeCapError):
            local_bound_bruteforce(WitnessMatrix(np.ones((31, 31), dtype=np.int64)))


class TestBruteforceCaps:
    def test_lk_cap(self):
        with pytest.raises(SizeCapError):
            lk_bruteforce(WitnessMatrix(np.ones((27, 1), dtype=np.int64)), 2)

    def test_cut_cap(self):
        with pytest.raises(SizeCapError):
            cut_norm_bruteforce(WitnessMatrix(np.ones((14, 14), dtype=np.int64)))


class TestGroupAssignment:
    def test_canonical_relabel(self):
        assert GroupAssignment.canonical([2, 2, 1], 2).groups == (1, 1, 2)
        assert GroupAssignment.canonical([3, 1, 3, 2], 3).groups == (1, 2, 1, 3)

    def test_rejects_non_canonical(self):
        with pytest.raises(ValueError):
            GroupAssignment(k=2, groups=(2, 1))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            GroupAssignment(k=2, groups=(1, 2, 3))

    def test_evaluate(self):
        matrix = WitnessMatrix.from_rows([[1, 1], [1, -1], [-1, 0]])
        assert GroupAssignment(k=2, groups=(1, 2, 2)).evaluate(matrix) == 3
        assert str(GroupAssignment(k=2, groups=(1, 2, 2))) == "1 2 2"

    def test_canonical_prefixes(self):
        assert canonical_prefixes(3, 2) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1)]
        assert canonical_prefixes(0, 3) == [()]
        # Stirling-type count: canonical words of length 4 over 3 letters
        assert len(canonical_prefixes(4, 3)) == 14


class TestBranchBound:
    def test_oracle_equivalence(self, corpus):
        mismatches = []
        for index, matrix in enumerate(corpus):
            if lk_branch_bound(matrix, 2, SERIAL).value != lk_bruteforce(matrix, 2):
                mismatches.append((index, 2))
            if matrix.n <= 8 and lk_branch_bound(matrix, 3, SERIAL).value != lk_bruteforce(matrix, 3):
                mismatches.append((index, 3))
        assert mismatches == []

    def test_witness_attains_value(self, corpus):
        for matrix in corpus[:60]:
            result = lk_branch_bound(matrix, 2, SERIAL)
            assert not result.guess_dominated
            assert result.witness.evaluate(matrix) == result.value
            assert result.witness.n == matrix.n

    def test_zero_matrix(self):
        result = lk_branch_bound(WitnessMatrix(np.zeros((3, 4), dtype=np.int64)), 2, SERIAL)
        assert result.value == 0
        assert result.witness.evaluate(WitnessMatrix(np.zeros((3, 4), dtype=np.int64))) == 0

    def test_guess_dominated(self, corpus):
        for matrix in corpus[:10]:
            exact = lk_bruteforce(matrix, 2)
            result = lk_branch_bound(matrix, 2, SolverConfig(threads=1, guess=exact + 1))
            assert result.value == exact + 1
            assert result.guess_dominated
            assert result.witness is None

    def test_exact_guess_is_attained(self, corpus):
        for matrix in corpus[:10]:
            exact = lk_bruteforce(matrix, 2)
            result = lk_branch_bound(matrix, 2, SolverConfig(threads=1, guess=exact))
            assert result.value == exact
            assert not result.guess_dominated

    @pytest.mark.parametrize("skip_fraction", [0.0, 0.5, 1.0])
    def test_skip_fraction_does_not_change_value(self, corpus, skip_fraction):
        config = SolverConfig(threads=1, skip_fraction=skip_fraction)
        for matrix in corpus[:20]:
            assert lk_branch_bound(matrix, 2, config).value == lk_bruteforce(matrix, 2)

    def test_without_warm_start(self, corpus):
        config = SolverConfig(threads=1, warm_start=False)
        for matrix in corpus[:20]:
            assert lk_branch_bound(matrix, 2, config).value == lk_bruteforce(matrix, 2)

    def test_rejects_bad_k(self, chsh):
        with pytest.raises(ValueError):
            BranchBoundSolver(chsh, 0)

    def test_parallel_matches_serial(self):
        rng = np.random.default_rng(7)
        for _ in range(3):
            matrix = random_matrix(rng, 13, 9)
            serial = lk_branch_bound(matrix, 2, SERIAL)
            parallel = lk_branch_bound(matrix, 2, SolverConfig(threads=2, parallel_depth=3))
            assert serial.value == parallel.value == lk_bruteforce(matrix, 2)
            assert serial.witness == parallel.witness


class TestSuffixTable:
    def test_chsh(self, chsh):
        assert lk_suffix_table(chsh, 2, SERIAL) == [4, 2]

    def test_single_row(self):
        row = WitnessMatrix.from_rows([[3, -4, 0, 2]])
        for k in (1, 2, 3):
            assert lk_suffix_table(row, k, SERIAL) == [9]

    def test_m4_last_entry(self, m4):
        assert lk_suffix_table(m4, 2, SERIAL)[-1] == 8

    def test_matches_bruteforce(self, corpus):
        for matrix in corpus[:20]:
            table = lk_suffix_table(matrix, 2, SERIAL)
            expected = [lk_bruteforce(WitnessMatrix(matrix.entries[i:]), 2) for i in range(matrix.n)]
            assert table == expected


class TestNormProperties:
    def test_monotone_chain(self, corpus):
        for matrix in corpus:
            local = local_bound_bruteforce(matrix)
            l2 = lk_bruteforce(matrix, 2)
            assert local <= l2 <= 2 * local
            if matrix.n <= 8:
                l3 = lk_bruteforce(matrix, 3)
                assert l2 <= l3 <= 3 * local

    @pytest.mark.parametrize("t", [-3, -2, -1, 0, 1, 2, 3])
    def test_homogeneity(self, corpus, t):
        for matrix in corpus[:25]:
            scaled = WitnessMatrix(t * matrix.entries)
            assert lk_bruteforce(scaled, 2) == abs(t) * lk_bruteforce(matrix, 2)

    def test_triangle_inequality(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n, m = (int(v) for v in rng.integers(1, 9, size=2))
            a, b = random_matrix(rng, n, m), random_matrix(rng, n, m)
            total = WitnessMatrix(a.entries + b.entries)
            assert lk_bruteforce(total, 2) <= lk_bruteforce(a, 2) + lk_bruteforce(b, 2)

    def test_concatenation_subadditive(self):
        rng = np.random.default_rng(12)
        for _ in range(50):
            m = int(rng.integers(1, 8))
            a = random_matrix(rng, int(rng.integers(1, 6)), m)
            b = random_matrix(rng, int(rng.integers(1, 6)), m)
            assert lk_bruteforce(_vstack(a, b), 2) <= lk_bruteforce(a, 2) + lk_bruteforce(b, 2)

    def test_doubling_identity(self):
        for matrix in random_corpus(seed=5, count=40, max_side=6):
            assert lk_bruteforce(make_doubled(matrix), 2) == 2 * local_bound_bruteforce(matrix)

    def test_cut_norm_sandwich(self, corpus):
        for matrix in corpus:
            if matrix.n + matrix.m > 20:
                continue
            cut = cut_norm_bruteforce(matrix)
            two_sided = max(cut, cut_norm_bruteforce(WitnessMatrix(-matrix.entries)))
            l2 = lk_bruteforce(matrix, 2)
            assert cut <= l2 <= 8 * two_sided


@pytest.mark.slow
class TestBranchBoundAtScale:
    def test_determinism_across_threads_and_depth(self):
        rng = np.random.default_rng(2024)
        configs = [
            SolverConfig(threads=threads, parallel_depth=depth)
            for threads in sorted({1, 2, max(2, SolverConfig().threads)})
            for depth in (0, 3, 6)
        ]
        for _ in range(20):
            matrix = random_matrix(rng, 20, 20)
            values = {lk_branch_bound(matrix, 2, config).value for config in configs}
            assert len(values) == 1

    def test_forty_by_forty_sign_matrix(self):
        rng = np.random.default_rng(40)
        matrix = WitnessMatrix(rng.choice(np.array([-1, 1], dtype=np.int64), size=(40, 40)))
        result = lk_branch_bound(matrix, 2, SolverConfig(threads=8))
        assert result.witness.evaluate(matrix) == result.value
