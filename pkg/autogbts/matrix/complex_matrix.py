import math
import os
from os import path
from typing import Iterable, List, Sequence, Union

import numpy as np

from autogbts import exc
from autogbts.conf import setting


class ComplexMatrix:
    def __init__(self, entries: Union[np.ndarray, Sequence[Sequence[complex]]]):
        """
        A dense square matrix of complex scalars, the carrier of every matrix in the library (unitaries,
        covariance matrices, `Q`, adjacency matrices and extended adjacency matrices).

        The entries are copied on construction and the underlying array is read-only.

        Parameters
        ----------
        entries
            The n x n entries of the matrix, as a 2D array or list of lists. An empty input gives the 0 x 0 matrix.
        """
        array = np.array(entries, dtype=np.complex128)

        if array.size == 0:
            array = np.zeros((0, 0), dtype=np.complex128)

        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise exc.MatrixException(
                f"A ComplexMatrix must be square, but entries of shape {array.shape} were input."
            )

        array.setflags(write=False)

        self._array = array

    @classmethod
    def zeros(cls, n: int) -> "ComplexMatrix":
        return cls(np.zeros((n, n), dtype=np.complex128))

    @classmethod
    def identity(cls, n: int) -> "ComplexMatrix":
        return cls(np.eye(n, dtype=np.complex128))

    @property
    def array(self) -> np.ndarray:
        return self._array

    @property
    def n(self) -> int:
        return self._array.shape[0]

    @property
    def shape(self):
        return self._array.shape

    @property
    def diagonal(self) -> np.ndarray:
        return np.array(np.diagonal(self._array))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._array
        return self._array.astype(dtype)

    def __getitem__(self, item):
        return self._array[item]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"ComplexMatrix(n={self.n})"

    def max_asymmetry(self) -> float:
        if self.n == 0:
            return 0.0
        return float(np.max(np.abs(self._array - self._array.T)))

    def is_symmetric(self, sym_tol: float = None) -> bool:
        """
        Returns `True` if max_ij |A_ij - A_ji| <= sym_tol.

        Parameters
        ----------
        sym_tol
            The absolute symmetry tolerance, defaulting to the `[matrix] sym_tol` config value.
        """
        if sym_tol is None:
            sym_tol = setting("matrix", "sym_tol", 1.0e-10)

        return self.max_asymmetry() <= sym_tol

    def check_symmetric(self, sym_tol: float = None):
        if not self.is_symmetric(sym_tol=sym_tol):
            raise exc.MatrixException(
                f"The matrix must be symmetric, but max |A_ij - A_ji| = {self.max_asymmetry():.3e}."
            )

    @property
    def text(self) -> str:
        """
        The matrix in the plain text format: the first line is `n` and the next n lines each hold n whitespace
        separated entries written `re[,im]`, where the imaginary part is omitted when it is zero.

        Entries are written with 17 significant digits, so reading the text back reproduces the matrix exactly.
        """
        lines = [str(self.n)]

        for row in self._array:
            lines.append(" ".join(entry_text_from(value=value) for value in row))

        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ComplexMatrix":
        lines = [line.strip() for line in text.splitlines() if line.strip() != ""]

        if len(lines) == 0:
            raise exc.FormatException("A matrix file must start with its dimension n.")

        try:
            n = int(lines[0])
        except ValueError:
            raise exc.FormatException(
                f"The first line of a matrix file must be an integer, not '{lines[0]}'."
            )

        if n < 0 or len(lines) != n + 1:
            raise exc.FormatException(
                f"A matrix file of dimension {n} must have {n} rows, but {len(lines) - 1} were found."
            )

        entries = np.zeros((n, n), dtype=np.complex128)

        for row_index, line in enumerate(lines[1:]):

            values = line.split()

            if len(values) != n:
                raise exc.FormatException(
                    f"Row {row_index + 1} of the matrix file has {len(values)} entries, expected {n}."
                )

            for column_index, value in enumerate(values):
                entries[row_index, column_index] = entry_from_text(text=value)

        return cls(entries)

    @classmethod
    def from_file(cls, file_path: str) -> "ComplexMatrix":
        with open(file_path) as infile:
            return cls.from_text(infile.read())

    def output_to_file(self, file_path: str, overwrite: bool = False):

        file_dir = os.path.split(file_path)[0]

        if file_dir and not path.exists(file_dir):
            os.makedirs(file_dir)

        if not overwrite and path.exists(file_path):
            raise FileExistsError(
                "The file ",
                file_path,
                " already exists. Set overwrite=True to overwrite this file",
            )

        with open(file_path, "w", newline="\n") as f:
            f.write(self.text)


def entry_text_from(value: complex) -> str:
    if value.imag == 0.0:
        return f"{value.real:.17g}"
    return f"{value.real:.17g},{value.imag:.17g}"


def entry_from_text(text: str) -> complex:

    parts = text.split(",")

    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass

    raise exc.FormatException(f"'{text}' is not a matrix entry of the form re[,im].")


class RepetitionVector:
    def __init__(self, counts: Iterable[int]):
        """
        The number of times every index of a base matrix is repeated, where an entry of 0 deletes the index.

        Parameters
        ----------
        counts
            One non-negative integer per index of the base matrix.
        """
        counts = tuple(counts)

        for count in counts:
            if int(count) != count or count < 0:
                raise exc.MatrixException(
                    f"Repetition counts must be non-negative integers, but {count} was input."
                )

        self.counts = tuple(int(count) for count in counts)

    @classmethod
    def ones(cls, n: int) -> "RepetitionVector":
        return cls([1] * n)

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, item):
        return self.counts[item]

    def __eq__(self, other):
        if isinstance(other, RepetitionVector):
            return self.counts == other.counts
        return self.counts == tuple(other)

    def __hash__(self):
        return hash(self.counts)

    def __repr__(self):
        return f"RepetitionVector({list(self.counts)})"

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.int64)

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def maximum(self) -> int:
        return max(self.counts, default=0)

    @property
    def factorial(self) -> int:
        """
        s! = s_1! s_2! ... s_n!
        """
        return math.prod(math.factorial(count) for count in self.counts)

    @property
    def is_ones(self) -> bool:
        return all(count == 1 for count in self.counts)

    @property
    def support(self) -> List[int]:
        """
        The 1-based indexes whose count is non-zero.
        """
        return [index + 1 for index, count in enumerate(self.counts) if count > 0]

    @property
    def compacted(self) -> "RepetitionVector":
        return RepetitionVector([count for count in self.counts if count > 0])


class Permutation:
    def __init__(self, mapping: Iterable[int]):
        """
        A bijection on {1, ..., n}, stored as the sequence of old indexes read in the new order: entry a of the
        mapping is the old index placed at new position a.

        Parameters
        ----------
        mapping
            The 1-based index sequence.
        """
        mapping = tuple(int(index) for index in mapping)

        if sorted(mapping) != list(range(1, len(mapping) + 1)):
            raise exc.MatrixException(
                f"A permutation must contain every index 1..{len(mapping)} exactly once, got {list(mapping)}."
            )

        self.mapping = mapping

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    def __len__(self):
        return len(self.mapping)

    def __iter__(self):
        return iter(self.mapping)

    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.mapping == other.mapping
        return self.mapping == tuple(other)

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"Permutation({list(self.mapping)})"

    @property
    def size(self) -> int:
        return len(self.mapping)

    @property
    def indexes(self) -> np.ndarray:
        """
        The mapping as 0-based array indexes.
        """
        return np.asarray(self.mapping, dtype=np.int64) - 1

    @property
    def inverse(self) -> "Permutation":
        inverse = [0] * self.size
        for new_position, old_index in enumerate(self.mapping):
            inverse[old_index - 1] = new_position + 1
        return Permutation(inverse)


def read_matrix(file_path: str) -> ComplexMatrix:
    return ComplexMatrix.from_file(file_path=file_path)


def write_matrix(matrix: ComplexMatrix, file_path: str, overwrite: bool = False):
    matrix.output_to_file(file_path=file_path, overwrite=overwrite)
