import logging
from typing import Iterator, Sequence

import numpy as np

from autogbts import decorator_util
from autogbts import exc
from autogbts.matrix.complex_matrix import ComplexMatrix
from autogbts.matrix import matrix_util

logger = logging.getLogger(__name__)


class SubhafnianTableBanded:
    def __init__(self, start: int, stop: int, values: np.ndarray):
        """
        The dynamic programming table H_t of the banded loop hafnian after column t has been added.

        The table is indexed by the subsets D of the window X_t = {start, ..., stop} (1-based, stop = t), encoded as
        bit masks where bit j marks index start + j. Its entry for D is the loop hafnian of the principal submatrix
        on D together with every index before the window, {1, ..., start - 1}, which are all matched at this point.

        Parameters
        ----------
        start
            The 1-based first index of the window.
        stop
            The 1-based last index of the window, equal to t.
        values
            The 2^(stop - start + 1) subhafnians, indexed by bit mask.
        """
        self.start = start
        self.stop = stop
        self.values = values

    @property
    def window(self) -> range:
        return range(self.start, self.stop + 1)

    @property
    def completed(self) -> range:
        """
        The indexes {1, ..., start - 1} before the window, which every subset of the table contains.
        """
        return range(1, self.start)

    @property
    def size(self) -> int:
        return len(self.values)

    def mask_from(self, subset: Sequence[int]) -> int:

        mask = 0

        for index in subset:
            if index not in self.window:
                raise exc.HafnianException(
                    f"Index {index} is outside the table window {self.start}..{self.stop}."
                )
            mask |= 1 << (index - self.start)

        return mask

    def value_of(self, subset: Sequence[int]) -> complex:
        return complex(self.values[self.mask_from(subset=subset)])

    def subsets(self) -> Iterator[tuple]:
        for mask in range(self.size):
            yield tuple(
                index
                for position, index in enumerate(self.window)
                if mask & (1 << position)
            )


def declared_bandwidth_from(matrix: ComplexMatrix, w: int, tol: float = None) -> int:
    """
    Checks a declared bandwidth against the measured one and clips it to n - 1, beyond which a larger window
    changes nothing but the table size.
    """
    if w < 0:
        raise exc.HafnianException(f"The bandwidth must be non-negative, not {w}.")

    measured = matrix_util.bandwidth(matrix, tol=tol)

    if w < measured:
        raise exc.HafnianException(
            f"The declared bandwidth {w} is smaller than the measured bandwidth {measured}."
        )

    return min(w, max(matrix.n - 1, 0))


def lhaf_banded(
    matrix: ComplexMatrix, w: int, sym_tol: float = None, tol: float = None
) -> complex:
    """
    Returns the loop hafnian of a symmetric matrix of bandwidth at most w in O(n w 4^w) operations.

    The dynamic program adds one column t at a time and keeps the subhafnians of every subset of the sliding
    window {t - 2w, ..., t}, all earlier indexes being matched already. A subset containing t is extended by
    matching t with itself or with an index i of the subset within distance w:

        H_t(D) = sum_{i in D} A_it H_{t-1}(D \\ {i, t})

    and the loop hafnian is the entry of the final table for the full window.

    Parameters
    ----------
    matrix
        The symmetric banded matrix.
    w
        The declared bandwidth, which must not be below the bandwidth measured at tolerance `tol`.
    sym_tol
        The symmetry tolerance, defaulting to `[matrix] sym_tol`.
    tol
        The tolerance of the bandwidth measurement, defaulting to `[matrix] bandwidth_tol`.
    """
    matrix.check_symmetric(sym_tol=sym_tol)

    w = declared_bandwidth_from(matrix=matrix, w=w, tol=tol)

    logger.debug("Banded loop hafnian of dimension %d with bandwidth %d.", matrix.n, w)

    return complex(lhaf_banded_from(array=np.array(matrix, dtype=np.complex128), w=w))


def banded_tables(
    matrix: ComplexMatrix, w: int, sym_tol: float = None, tol: float = None
) -> Iterator[SubhafnianTableBanded]:
    """
    Yields every intermediate table H_1, ..., H_n of the banded loop hafnian dynamic program.
    """
    matrix.check_symmetric(sym_tol=sym_tol)

    w = declared_bandwidth_from(matrix=matrix, w=w, tol=tol)

    if matrix.n == 0:
        return

    array = np.array(matrix, dtype=np.complex128)

    table = banded_initial_table_from(array=array)

    yield SubhafnianTableBanded(start=1, stop=1, values=table)

    for t in range(1, matrix.n):
        table = banded_table_step_from(array=array, t=t, w=w, table=table)
        yield SubhafnianTableBanded(
            start=max(t - 2 * w, 0) + 1, stop=t + 1, values=table
        )


@decorator_util.jit()
def banded_initial_table_from(array):
    table = np.zeros(2, dtype=np.complex128)
    table[0] = 1.0
    table[1] = array[0, 0]
    return table


@decorator_util.jit()
def banded_table_step_from(array, t, w, table):
    """
    Returns H_t from H_{t-1} for the 0-based column t >= 1.

    Bit j of a mask marks index start + j of the window. When the window slides by one, the index leaving it must
    already be matched, so a mask of the new window maps to the old mask shifted up by one with bit 0 set.
    """
    start_previous = max(t - 1 - 2 * w, 0)
    start = max(t - 2 * w, 0)
    shift = start - start_previous

    width = t - start + 1
    top = 1 << (width - 1)
    lower = max(t - w, start)

    new_table = np.zeros(2 ** width, dtype=np.complex128)

    for mask in range(top):
        new_table[mask] = table[(mask << shift) | shift]

    for mask in range(top):

        value = array[t, t] * table[(mask << shift) | shift]

        for i in range(lower, t):
            bit = 1 << (i - start)
            if mask & bit:
                value += array[i, t] * table[((mask ^ bit) << shift) | shift]

        new_table[mask | top] = value

    return new_table


@decorator_util.jit()
def lhaf_banded_from(array, w):

    n = array.shape[0]

    if n == 0:
        return 1.0 + 0.0j

    table = banded_initial_table_from(array)

    for t in range(1, n):
        table = banded_table_step_from(array, t, w, table)

    return table[table.shape[0] - 1]
