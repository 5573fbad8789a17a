import numpy as np
import pytest

from witnesspy.core import MatrixIO, RealMatrix, WitnessMatrix, gen_family, integerize, load_matrix, make_doubled, sum_S
from witnesspy.errors import MatrixOverflowError, MatrixParseError, SizeCapError, WitnessError

from .conftest import random_corpus

M4_ROWS = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, -1, 1, -1, 1, -1, 1, -1],
]


class TestLoadMatrix:
    def test_chsh(self, write_text):
        path = write_text("chsh.txt", "2 2\n1 1\n1 -1\n")
        assert load_matrix(path).tolist() == [[1, 1], [1, -1]]

    def test_m4_with_header(self, write_text):
        body = "\n".join(" ".join(str(v) for v in row) for row in M4_ROWS)
        path = write_text("m4.txt", f"4 8\n{body}\n")
        assert load_matrix(path) == gen_family(4)

    def test_crlf_line_endings(self, write_text):
        path = write_text("crlf.txt", "2 2\r\n1 1\r\n1 -1\r\n")
        assert load_matrix(path).tolist() == [[1, 1], [1, -1]]

    def test_short_row_is_parse_error(self, write_text):
        path = write_text("bad.txt", "2 2\n1 1\n1\n")
        with pytest.raises(MatrixParseError):
            load_matrix(path)

    def test_missing_row(self, write_text):
        path = write_text("bad.txt", "3 2\n1 1\n1 -1\n")
        with pytest.raises(MatrixParseError):
            load_matrix(path)

    def test_non_integer_entry(self, write_text):
        path = write_text("bad.txt", "1 2\n1 0.5\n")
        with pytest.raises(MatrixParseError):
            load_matrix(path)

    def test_bad_header(self, write_text):
        path = write_text("bad.txt", "2\n1 1\n")
        with pytest.raises(MatrixParseError):
            load_matrix(path)

    def test_headerless_with_shape(self, write_text):
        path = write_text("grid.txt", "1 2 3\n4 5 6\n")
        assert MatrixIO.load_matrix(path, shape=(2, 3)).tolist() == [[1, 2, 3], [4, 5, 6]]

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_matrix(tmp_path / "absent.txt")

    def test_parse_error_is_value_error(self):
        assert issubclass(MatrixParseError, ValueError)
        assert issubclass(MatrixParseError, WitnessError)

    def test_entry_out_of_int64_range(self, write_text):
        path = write_text("big.txt", f"1 1\n{2 ** 63}\n")
        with pytest.raises(MatrixOverflowError):
            load_matrix(path)


class TestWitnessMatrix:
    def test_norm_bound_overflow(self):
        with pytest.raises(MatrixOverflowError):
            WitnessMatrix.from_rows([[2 ** 62, 0], [0, 0]])

    def test_entries_are_read_only(self, chsh):
        with pytest.raises(ValueError):
            chsh.entries[0, 0] = 5

    def test_rejects_float_entries(self):
        with pytest.raises(ValueError):
            WitnessMatrix(np.array([[0.5]]))

    def test_ragged_rows(self):
        with pytest.raises(MatrixParseError):
            WitnessMatrix.from_rows([[1, 2], [3]])

    def test_sum_s(self, chsh, m4):
        assert sum_S(chsh) == 2
        assert m4.sum_S() == 8

    def test_manhattan_and_max(self, m4):
        assert m4.manhattan() == 32
        assert m4.max_abs() == 1

    def test_as_real(self, chsh):
        real = chsh.as_real()
        assert isinstance(real, RealMatrix)
        assert real.tolist() == [[1.0, 1.0], [1.0, -1.0]]


class TestSaveMatrix:
    def test_save_is_reloadable_byte_for_byte(self, tmp_path, m4):
        first = tmp_path / "first.txt"
        second = tmp_path / "second.txt"
        MatrixIO.save_matrix(m4, first)
        MatrixIO.save_matrix(load_matrix(first), second)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text(encoding="utf-8").startswith("4 8\n")

    def test_real_matrix_round_trip(self, tmp_path):
        real = RealMatrix.from_rows([[0.1, -2.5], [1e-17, 3.0]])
        path = tmp_path / "real.txt"
        MatrixIO.save_matrix(real, path)
        assert MatrixIO.load_real_matrix(path) == real

    def test_real_matrix_rejects_nan(self, write_text):
        path = write_text("nan.txt", "1 1\nnan\n")
        with pytest.raises(MatrixParseError):
            MatrixIO.load_real_matrix(path)


class TestConstructions:
    def test_make_doubled_chsh(self, chsh):
        assert make_doubled(chsh).tolist() == [[1, 1], [1, -1], [-1, -1], [-1, 1]]

    def test_make_doubled_zero(self):
        assert make_doubled(WitnessMatrix.from_rows([[0]])).tolist() == [[0], [0]]

    def test_doubling_twice_repeats_signed_rows(self):
        for matrix in random_corpus(seed=8, count=30, max_side=6):
            twice = make_doubled(make_doubled(matrix))
            assert twice.shape == (4 * matrix.n, matrix.m)
            expected = sorted(2 * (matrix.tolist() + (-matrix.entries).tolist()))
            assert sorted(twice.tolist()) == expected

    def test_doubled_sum_is_zero(self):
        for matrix in random_corpus(seed=9, count=30):
            assert sum_S(make_doubled(matrix)) == 0

    def test_family_small(self):
        assert gen_family(1).tolist() == [[1]]
        assert gen_family(2).tolist() == [[1, 1], [1, -1]]

    def test_family_four(self):
        assert gen_family(4).tolist() == M4_ROWS

    def test_family_rows_orthogonal(self):
        entries = gen_family(6).entries
        gram = entries @ entries.T
        assert np.array_equal(gram, 32 * np.eye(6, dtype=np.int64))

    @pytest.mark.parametrize("k", [0, 21])
    def test_family_cap(self, k):
        with pytest.raises(SizeCapError):
            gen_family(k)

    def test_integerize_truncates(self):
        assert integerize(RealMatrix.from_rows([[0.4377, -1.2]]), 1000).tolist() == [[437, -1200]]

    def test_integerize_toward_zero(self):
        assert integerize(RealMatrix.from_rows([[-0.0009]]), 1000).tolist() == [[0]]

    @pytest.mark.parametrize("scale", [1, 7, 1000, 10_000])
    def test_integerize_within_one_of_scaled(self, scale):
        rng = np.random.default_rng(scale)
        real = RealMatrix(rng.uniform(-5.0, 5.0, size=(6, 9)))
        witness = integerize(real, scale)
        assert np.all(np.abs(witness.entries - scale * real.entries) < 1.0)

    def test_integerize_bad_scale(self):
        with pytest.raises(ValueError):
            integerize(RealMatrix.from_rows([[1.0]]), 0)

    def test_integerize_overflow(self):
        with pytest.raises(MatrixOverflowError):
            integerize(RealMatrix.from_rows([[1e300]]), 1000)
