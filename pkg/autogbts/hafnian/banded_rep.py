import logging
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft

from autogbts import exc
from autogbts.conf import setting
from autogbts.hafnian import brute
from autogbts.hafnian.banded import declared_bandwidth_from
from autogbts.matrix.complex_matrix import ComplexMatrix, RepetitionVector
from autogbts.matrix import matrix_util

logger = logging.getLogger(__name__)


class SubhafnianTableRep:
    def __init__(
        self, start: int, stop: int, bounds: Sequence[int], values: np.ndarray
    ):
        """
        The dynamic programming table H_t of the banded loop hafnian with repeated rows and columns.

        The table is indexed by multi-indices d over the window {start, ..., stop} (1-based) with d <= bounds
        entrywise, stored as an array of shape (bounds_i + 1, ...) with one axis per window index. Its entry for d
        is the scaled subhafnian

            lhaf(A_e) / e!

        where e equals d on the window and the full repetition count s_i on every index i < start.

        Parameters
        ----------
        start
            The 1-based first index of the window.
        stop
            The 1-based last index of the window.
        bounds
            The repetition counts s_i of the window indexes.
        values
            The scaled subhafnians.
        """
        self.start = start
        self.stop = stop
        self.bounds = tuple(int(bound) for bound in bounds)
        self.values = np.asarray(values, dtype=np.complex128)

        if self.values.shape != self.shape:
            raise exc.HafnianException(
                f"A table over bounds {self.bounds} must have shape {self.shape}, not {self.values.shape}."
            )

    @classmethod
    def delta(cls, start: int, stop: int, bounds: Sequence[int]) -> "SubhafnianTableRep":
        """
        The convolution identity: 1 at the zero multi-index and 0 elsewhere.
        """
        values = np.zeros(tuple(int(bound) + 1 for bound in bounds), dtype=np.complex128)
        values[(0,) * len(values.shape)] = 1.0
        return cls(start=start, stop=stop, bounds=bounds, values=values)

    @property
    def window(self) -> range:
        return range(self.start, self.stop + 1)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(bound + 1 for bound in self.bounds)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def value_of(self, d: Sequence[int]) -> complex:
        d = tuple(int(count) for count in d)

        if len(d) != len(self.bounds) or any(
            count < 0 or count > bound for count, bound in zip(d, self.bounds)
        ):
            raise exc.HafnianException(
                f"The multi-index {list(d)} is outside the table bounds {list(self.bounds)}."
            )

        return complex(self.values[d])

    def same_window_as(self, other: "SubhafnianTableRep") -> bool:
        return (
            self.start == other.start
            and self.stop == other.stop
            and self.bounds == other.bounds
        )


def convolve(
    first: SubhafnianTableRep, second: SubhafnianTableRep, method: Optional[str] = None
) -> SubhafnianTableRep:
    """
    Returns the convolution H(d) = sum_{d' + d'' = d} H'(d') H''(d'') of two tables over the same window, keeping
    only the multi-indices d <= s.

    Parameters
    ----------
    first
        The table H'.
    second
        The table H''.
    method
        `direct` sums the products entry by entry, `fft` multiplies the transforms after zero-padding every axis to
        2 s_i + 2 so no product wraps around. By default the direct sum is used when the table has at most
        `[hafnian] direct_convolution_max_size` entries.
    """
    if not first.same_window_as(second):
        raise exc.HafnianException(
            f"Cannot convolve a table over window {first.start}..{first.stop} with bounds {list(first.bounds)} "
            f"with a table over window {second.start}..{second.stop} with bounds {list(second.bounds)}."
        )

    if method is None:
        max_size = setting("hafnian", "direct_convolution_max_size", 4096)
        method = "direct" if first.size <= max_size else "fft"

    if method == "direct":
        values = direct_convolution_from(first=first.values, second=second.values)
    elif method == "fft":
        values = fft_convolution_from(first=first.values, second=second.values)
    else:
        raise exc.HafnianException(
            f"The convolution method must be direct or fft, not {method}."
        )

    return SubhafnianTableRep(
        start=first.start, stop=first.stop, bounds=first.bounds, values=values
    )


def direct_convolution_from(first: np.ndarray, second: np.ndarray) -> np.ndarray:

    shape = first.shape
    values = np.zeros(shape, dtype=np.complex128)

    for offset in zip(*np.nonzero(first)):

        target = tuple(slice(start, length) for start, length in zip(offset, shape))
        source = tuple(slice(0, length - start) for start, length in zip(offset, shape))

        values[target] += first[offset] * second[source]

    return values


def fft_convolution_from(first: np.ndarray, second: np.ndarray) -> np.ndarray:

    shape = first.shape

    if len(shape) == 0:
        return first * second

    padded = tuple(2 * length for length in shape)
    axes = tuple(range(len(shape)))

    values = fft.ifftn(
        fft.fftn(first, s=padded, axes=axes) * fft.fftn(second, s=padded, axes=axes),
        axes=axes,
    )

    return np.ascontiguousarray(values[tuple(slice(0, length) for length in shape)])


def g_table_from(
    array: np.ndarray,
    loops: np.ndarray,
    counts: Sequence[int],
    t: int,
    start: int,
    w: int,
) -> np.ndarray:
    """
    Returns G_t over the window {start, ..., t} (0-based), the weights of every way of saturating index t:

        G_t(d) = U_sigma(A_tt, g_t) prod_{i in Y_t} A_it^{d_i} / d_i!,    sigma = d_t - sum_{i in Y_t} d_i >= 0,

    where Y_t are the window indexes within distance w of t, d vanishes outside Y_t and t, and U_k(a, g) = T_k / k!
    weighs the sigma copies of t matched among themselves, a loop by g_t and a pair of copies by A_tt.
    """
    lower = max(t - w, start)

    grid = np.ones((), dtype=np.complex128)
    degree = np.zeros((), dtype=np.int64)

    for i in range(lower, t):
        powers = power_table_from(value=array[i, t], k_max=counts[i])
        grid = np.multiply.outer(grid, powers)
        degree = np.add.outer(degree, np.arange(counts[i] + 1))

    scaled = brute.scaled_t_poly_table(k_max=counts[t], a=array[t, t], loop=loops[t])

    local = np.zeros(grid.shape + (counts[t] + 1,), dtype=np.complex128)

    for d_t in range(counts[t] + 1):
        sigma = d_t - degree
        local[..., d_t] = np.where(
            sigma >= 0, grid * scaled[np.clip(sigma, 0, None)], 0.0
        )

    values = np.zeros(
        tuple(counts[index] + 1 for index in range(start, t + 1)), dtype=np.complex128
    )
    values[(0,) * (lower - start) + (Ellipsis,)] = local

    return values


def power_table_from(value: complex, k_max: int) -> np.ndarray:
    """
    Returns [value^0 / 0!, ..., value^k_max / k_max!].
    """
    table = np.ones(k_max + 1, dtype=np.complex128)

    for k in range(1, k_max + 1):
        table[k] = table[k - 1] * value / k

    return table


def rep_steps_from(
    array: np.ndarray, loops: np.ndarray, counts: Sequence[int], w: int
) -> Iterator[SubhafnianTableRep]:
    """
    Runs the dynamic program over a matrix whose repetition counts are all positive, yielding H_t for every t.

    When the window slides past an index, the index is already saturated since all its neighbours lie before t,
    so the table is restricted to its slice at the full count.
    """
    n = array.shape[0]

    start = 0
    values = np.ones((), dtype=np.complex128)

    for t in range(n):

        new_start = max(t - 2 * w, 0)

        if new_start > start:
            values = values[counts[start]]
            start = new_start

        shifted = np.zeros(values.shape + (counts[t] + 1,), dtype=np.complex128)
        shifted[..., 0] = values

        bounds = counts[start : t + 1]

        previous = SubhafnianTableRep(
            start=start + 1, stop=t + 1, bounds=bounds, values=shifted
        )
        g_table = SubhafnianTableRep(
            start=start + 1,
            stop=t + 1,
            bounds=bounds,
            values=g_table_from(
                array=array, loops=loops, counts=counts, t=t, start=start, w=w
            ),
        )

        table = convolve(first=g_table, second=previous)

        values = table.values

        yield table


def compacted_from(
    matrix: ComplexMatrix,
    reps: Union[RepetitionVector, Sequence[int]],
    loops: Optional[Sequence[complex]] = None,
) -> Tuple[ComplexMatrix, RepetitionVector, np.ndarray]:
    """
    Deletes the indexes whose repetition count is zero, from the matrix and from its loop weights (the diagonal of
    the matrix when none are input).
    """
    reps = matrix_util.repetition_vector_from(reps)

    if len(reps) != matrix.n:
        raise exc.MatrixException(
            f"The repetition vector has length {len(reps)} but the matrix has dimension {matrix.n}."
        )

    if loops is None:
        loops = matrix.diagonal

    loops = np.asarray(loops, dtype=np.complex128).reshape(-1)

    if len(loops) != matrix.n:
        raise exc.MatrixException(
            f"The matrix has dimension {matrix.n} but {len(loops)} loop weights were input."
        )

    support = reps.support

    return (
        matrix_util.extract_principal(matrix, support),
        reps.compacted,
        loops[np.asarray(support, dtype=np.int64) - 1] if support else loops[:0],
    )


def lhaf_banded_rep(
    matrix: ComplexMatrix,
    w: int,
    reps: Union[RepetitionVector, Sequence[int]],
    loops: Optional[Sequence[complex]] = None,
    sym_tol: float = None,
    tol: float = None,
) -> complex:
    """
    Returns the loop hafnian of A_s, the banded matrix A with index i repeated s_i times, without forming A_s.

    The dynamic program runs over the indexes of A rather than those of A_s, keeping a table of scaled
    subhafnians over the bounded multi-indices of the sliding window. Adding index t multiplies by the weights
    of its loops, its self pairings and its edges to the w previous indexes, combined by a convolution, and the
    loop hafnian is s! H_n(s).

    Indexes with s_i = 0 are deleted first.

    Parameters
    ----------
    matrix
        The symmetric banded matrix A.
    w
        The declared bandwidth of A.
    reps
        The repetition counts s.
    loops
        The loop weights g, one per index of A. Every copy of index i carries the loop g_i while two copies of i
        are paired with weight A_ii, so the result is lhaf(fdiag(A_s, g_s)). Defaults to the diagonal of A, which
        gives lhaf(A_s).
    """
    matrix.check_symmetric(sym_tol=sym_tol)

    declared_bandwidth_from(matrix=matrix, w=w, tol=tol)

    compacted, reps, loops = compacted_from(matrix=matrix, reps=reps, loops=loops)

    if compacted.n == 0:
        return 1.0 + 0.0j

    w = min(w, compacted.n - 1)

    logger.debug(
        "Banded loop hafnian with repetitions of dimension %d, bandwidth %d and %d photons.",
        compacted.n,
        w,
        reps.total,
    )

    table = None

    for table in rep_steps_from(
        array=np.array(compacted, dtype=np.complex128),
        loops=loops,
        counts=reps.counts,
        w=w,
    ):
        pass

    return complex(reps.factorial * table.value_of(table.bounds))


def rep_tables(
    matrix: ComplexMatrix,
    w: int,
    reps: Union[RepetitionVector, Sequence[int]],
    loops: Optional[Sequence[complex]] = None,
    sym_tol: float = None,
    tol: float = None,
) -> Iterator[SubhafnianTableRep]:
    """
    Yields every intermediate table of the repetition dynamic program, whose windows index the matrix after the
    indexes with zero count are deleted.
    """
    matrix.check_symmetric(sym_tol=sym_tol)

    declared_bandwidth_from(matrix=matrix, w=w, tol=tol)

    compacted, reps, loops = compacted_from(matrix=matrix, reps=reps, loops=loops)

    if compacted.n == 0:
        return

    yield from rep_steps_from(
        array=np.array(compacted, dtype=np.complex128),
        loops=loops,
        counts=reps.counts,
        w=min(w, compacted.n - 1),
    )
