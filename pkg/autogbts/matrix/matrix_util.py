from typing import Sequence, Union

import numpy as np

from autogbts import exc
from autogbts.conf import setting
from autogbts.matrix.complex_matrix import ComplexMatrix, Permutation, RepetitionVector


def bandwidth(matrix: ComplexMatrix, tol: float = None) -> int:
    """
    Returns the smallest w such that |A_ij| <= tol whenever |i - j| > w.

    Adjacency matrices built numerically carry ~1e-15 noise outside their band, so entries are compared against a
    tolerance rather than exactly against zero.

    Parameters
    ----------
    matrix
        The square matrix whose bandwidth is measured.
    tol
        The absolute tolerance below which an entry counts as zero, defaulting to `[matrix] bandwidth_tol`.
    """
    if tol is None:
        tol = setting("matrix", "bandwidth_tol", 1.0e-12)

    array = np.asarray(matrix)

    if array.shape[0] == 0:
        return 0

    rows, columns = np.nonzero(np.abs(array) > tol)

    if len(rows) == 0:
        return 0

    return int(np.max(np.abs(rows - columns)))


def block_bandwidth(matrix: ComplexMatrix, tol: float = None) -> int:
    """
    For a 2k x 2k matrix of the block form

        ( B   C  )
        ( C^T B* )

    returns the larger of the bandwidths of the blocks B and C.
    """
    array = np.asarray(matrix)

    if array.shape[0] % 2 != 0:
        raise exc.MatrixException(
            f"A block matrix must have even dimension, not {array.shape[0]}."
        )

    k = array.shape[0] // 2

    return max(
        bandwidth(ComplexMatrix(array[:k, :k]), tol=tol),
        bandwidth(ComplexMatrix(array[:k, k:]), tol=tol),
    )


def interleave_perm(k: int) -> Permutation:
    """
    Returns the permutation on 2k indexes which places the index pairs (j, k + j) at adjacent positions
    (2j - 1, 2j), so that the new order reads the old indexes 1, k + 1, 2, k + 2, ..., k, 2k.

    Applied to a block matrix whose blocks have bandwidth w, it gives a banded matrix of bandwidth at most 2w + 1.
    """
    mapping = []

    for j in range(1, k + 1):
        mapping.extend([j, k + j])

    return Permutation(mapping)


def permute(matrix: ComplexMatrix, permutation: Permutation) -> ComplexMatrix:
    """
    Returns P^T A P, the simultaneous reordering of rows and columns where new position a holds old index
    `permutation.mapping[a]`.
    """
    if matrix.n != permutation.size:
        raise exc.MatrixException(
            f"Cannot permute a matrix of dimension {matrix.n} with a permutation of size {permutation.size}."
        )

    indexes = permutation.indexes

    return ComplexMatrix(np.asarray(matrix)[np.ix_(indexes, indexes)])


def repetition_vector_from(
    reps: Union[RepetitionVector, Sequence[int]]
) -> RepetitionVector:
    if isinstance(reps, RepetitionVector):
        return reps
    return RepetitionVector(reps)


def repeat_pattern(
    matrix: ComplexMatrix, reps: Union[RepetitionVector, Sequence[int]]
) -> ComplexMatrix:
    """
    Returns A_s, of dimension s_1 + ... + s_n, where index i of A appears s_i times (and is deleted if s_i = 0).

    The rows and columns are repeated together, so a symmetric input gives a symmetric output.
    """
    reps = repetition_vector_from(reps)

    if len(reps) != matrix.n:
        raise exc.MatrixException(
            f"The repetition vector has length {len(reps)} but the matrix has dimension {matrix.n}."
        )

    indexes = np.repeat(np.arange(matrix.n), reps.array)

    return ComplexMatrix(np.asarray(matrix)[np.ix_(indexes, indexes)])


def fdiag(matrix: ComplexMatrix, values: Sequence[complex]) -> ComplexMatrix:
    """
    Returns a copy of the matrix whose diagonal is replaced by `values`, leaving off-diagonal entries untouched.
    """
    values = np.asarray(values, dtype=np.complex128).reshape(-1)

    if len(values) != matrix.n:
        raise exc.MatrixException(
            f"Cannot fill the diagonal of a matrix of dimension {matrix.n} with {len(values)} values."
        )

    array = np.array(matrix, dtype=np.complex128)
    np.fill_diagonal(array, values)

    return ComplexMatrix(array)


def extract_principal(matrix: ComplexMatrix, indexes: Sequence[int]) -> ComplexMatrix:
    """
    Returns the principal submatrix of A on the strictly increasing 1-based `indexes`.
    """
    indexes = [int(index) for index in indexes]

    for index in indexes:
        if index < 1 or index > matrix.n:
            raise exc.MatrixException(
                f"Index {index} is out of range for a matrix of dimension {matrix.n}."
            )

    if any(second <= first for first, second in zip(indexes, indexes[1:])):
        raise exc.MatrixException(
            f"Principal submatrix indexes must be strictly increasing, got {indexes}."
        )

    zero_based = np.asarray(indexes, dtype=np.int64) - 1

    return ComplexMatrix(np.asarray(matrix)[np.ix_(zero_based, zero_based)])
