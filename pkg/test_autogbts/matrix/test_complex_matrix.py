from os import path

import numpy as np
import pytest

import autogbts as ag
from autogbts import exc


class TestComplexMatrix:
    def test__entries_are_copied_and_read_only(self):

        entries = np.array([[1.0, 2.0], [3.0, 4.0]])

        matrix = ag.ComplexMatrix(entries)

        entries[0, 0] = 100.0

        assert matrix[0, 0] == 1.0
        assert matrix.n == 2
        assert matrix.shape == (2, 2)
        assert matrix.array.dtype == np.complex128

        with pytest.raises(ValueError):
            matrix.array[0, 0] = 5.0

    def test__empty_input_gives_0x0_matrix(self):

        matrix = ag.ComplexMatrix([])

        assert matrix.n == 0
        assert matrix.shape == (0, 0)

    def test__non_square_input__raises_exception(self):

        with pytest.raises(exc.MatrixException):
            ag.ComplexMatrix(np.ones((2, 3)))

        with pytest.raises(exc.MatrixException):
            ag.ComplexMatrix(np.ones(3))

    def test__zeros_and_identity(self):

        assert (np.asarray(ag.ComplexMatrix.zeros(3)) == np.zeros((3, 3))).all()
        assert (np.asarray(ag.ComplexMatrix.identity(2)) == np.eye(2)).all()

    def test__symmetry_within_tolerance(self):

        matrix = ag.ComplexMatrix([[1.0, 2.0 + 1.0e-12], [2.0, 1.0]])

        assert matrix.is_symmetric(sym_tol=1.0e-10)
        assert not matrix.is_symmetric(sym_tol=1.0e-14)
        assert matrix.max_asymmetry() == pytest.approx(1.0e-12, 1.0e-3)

        matrix.check_symmetric()

        with pytest.raises(exc.MatrixException):
            ag.ComplexMatrix([[1.0, 2.0], [3.0, 1.0]]).check_symmetric()

    def test__text__imaginary_parts_omitted_when_zero(self):

        matrix = ag.ComplexMatrix([[1.0, 2.5 - 1.0j], [0.0, -3.0]])

        assert matrix.text == "2\n1 2.5,-1\n0 -3\n"

    def test__from_text__reads_format(self):

        matrix = ag.ComplexMatrix.from_text("2\n1 2.5,-1\n0,0.5   -3\n")

        assert matrix[0, 1] == 2.5 - 1.0j
        assert matrix[1, 0] == 0.5j
        assert matrix[1, 1] == -3.0

        assert ag.ComplexMatrix.from_text("0\n").n == 0

    def test__from_text__exact_at_17_significant_digits(self):

        entries = np.random.default_rng(1).standard_normal((4, 4)) * (1.0 + 1.0j) / 3.0

        matrix = ag.ComplexMatrix(entries)

        assert (np.asarray(ag.ComplexMatrix.from_text(matrix.text)) == entries).all()

    def test__from_text__malformed__raises_exception(self):

        with pytest.raises(exc.FormatException):
            ag.ComplexMatrix.from_text("")

        with pytest.raises(exc.FormatException):
            ag.ComplexMatrix.from_text("two\n1 2\n3 4\n")

        with pytest.raises(exc.FormatException):
            ag.ComplexMatrix.from_text("2\n1 2\n")

        with pytest.raises(exc.FormatException):
            ag.ComplexMatrix.from_text("2\n1 2 3\n4 5\n")

        with pytest.raises(exc.FormatException):
            ag.ComplexMatrix.from_text("1\n1,2,3\n")

        with pytest.raises(exc.FormatException):
            ag.ComplexMatrix.from_text("1\nx\n")

    def test__output_to_file_and_read_back(self, chain_matrix, tmp_path):

        file_path = path.join(str(tmp_path), "matrices", "chain.txt")

        ag.write_matrix(chain_matrix, file_path=file_path)

        matrix = ag.read_matrix(file_path=file_path)

        assert (np.asarray(matrix) == np.asarray(chain_matrix)).all()

        with pytest.raises(FileExistsError):
            ag.write_matrix(chain_matrix, file_path=file_path)

        ag.write_matrix(chain_matrix, file_path=file_path, overwrite=True)


class TestRepetitionVector:
    def test__properties(self):

        reps = ag.RepetitionVector([2, 0, 3])

        assert len(reps) == 3
        assert reps.total == 5
        assert reps.maximum == 3
        assert reps.factorial == 12
        assert reps.support == [1, 3]
        assert reps.compacted == ag.RepetitionVector([2, 3])
        assert not reps.is_ones
        assert ag.RepetitionVector.ones(4).is_ones
        assert reps == (2, 0, 3)

    def test__negative_or_fractional_counts__raises_exception(self):

        with pytest.raises(exc.MatrixException):
            ag.RepetitionVector([1, -1])

        with pytest.raises(exc.MatrixException):
            ag.RepetitionVector([1.5])


class TestPermutation:
    def test__identity_and_inverse(self):

        permutation = ag.Permutation([3, 1, 2])

        assert permutation.size == 3
        assert list(permutation.indexes) == [2, 0, 1]
        assert permutation.inverse == ag.Permutation([2, 3, 1])
        assert ag.Permutation.identity(3) == (1, 2, 3)

    def test__not_bijective__raises_exception(self):

        with pytest.raises(exc.MatrixException):
            ag.Permutation([1, 1, 2])

        with pytest.raises(exc.MatrixException):
            ag.Permutation([0, 1])
