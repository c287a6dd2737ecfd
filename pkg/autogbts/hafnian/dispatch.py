import logging
from typing import Optional, Sequence, Union

import numpy as np

from autogbts import exc
from autogbts.conf import setting
from autogbts.hafnian.banded import lhaf_banded
from autogbts.hafnian.banded_rep import lhaf_banded_rep
from autogbts.hafnian.brute import lhaf_brute
from autogbts.matrix.complex_matrix import ComplexMatrix, RepetitionVector
from autogbts.matrix import matrix_util

logger = logging.getLogger(__name__)

ENGINES = ("auto", "brute", "banded", "banded-rep")


def lhaf_auto(
    matrix: ComplexMatrix,
    reps: Optional[Union[RepetitionVector, Sequence[int]]] = None,
    engine: str = "auto",
    w: Optional[int] = None,
    loops: Optional[Sequence[complex]] = None,
    sym_tol: float = None,
    tol: float = None,
) -> complex:
    """
    Returns the loop hafnian of A_s (of A if no repetitions are input) with the chosen engine, with the diagonal
    of A_s replaced by the repeated loop weights g_s when `loops` is input.

    With `engine="auto"` matrices whose expanded dimension is at most `[hafnian] auto_brute_max_dim` use the
    brute force enumeration, matrices without repetitions use the banded engine and all others use the banded
    engine with repetitions. The bandwidth is measured when it is not declared.

    Parameters
    ----------
    matrix
        The symmetric matrix A.
    reps
        The repetition counts s, one per index of A.
    engine
        One of `auto`, `brute`, `banded` and `banded-rep`.
    w
        The declared bandwidth, measured at tolerance `tol` if omitted.
    loops
        The loop weights g, one per index of A. Two copies of a repeated index i stay paired with weight A_ii.
    """
    if engine not in ENGINES:
        raise exc.HafnianException(
            f"The engine must be one of {', '.join(ENGINES)}, not {engine}."
        )

    if reps is not None:
        reps = matrix_util.repetition_vector_from(reps)
        if len(reps) != matrix.n:
            raise exc.MatrixException(
                f"The repetition vector has length {len(reps)} but the matrix has dimension {matrix.n}."
            )

    repeated = reps is not None and not reps.is_ones
    expanded_dim = reps.total if reps is not None else matrix.n

    if engine == "auto":
        if expanded_dim <= setting("hafnian", "auto_brute_max_dim", 14):
            engine = "brute"
        elif repeated:
            engine = "banded-rep"
        else:
            engine = "banded"

    logger.debug(
        "Loop hafnian of expanded dimension %d dispatched to the %s engine.",
        expanded_dim,
        engine,
    )

    if engine == "banded-rep":

        if reps is None:
            reps = RepetitionVector.ones(matrix.n)

        if w is None:
            w = matrix_util.bandwidth(matrix, tol=tol)

        return lhaf_banded_rep(
            matrix=matrix, w=w, reps=reps, loops=loops, sym_tol=sym_tol, tol=tol
        )

    if loops is not None:
        loops = np.asarray(loops, dtype=np.complex128).reshape(-1)
        if len(loops) != matrix.n:
            raise exc.MatrixException(
                f"The matrix has dimension {matrix.n} but {len(loops)} loop weights were input."
            )

    if repeated:
        matrix = matrix_util.repeat_pattern(matrix=matrix, reps=reps)
        w = None
        if loops is not None:
            loops = np.repeat(loops, reps.array)

    if loops is not None:
        matrix = matrix_util.fdiag(matrix=matrix, values=loops)

    if engine == "brute":
        return lhaf_brute(matrix=matrix, sym_tol=sym_tol)

    if w is None:
        w = matrix_util.bandwidth(matrix, tol=tol)

    return lhaf_banded(matrix=matrix, w=w, sym_tol=sym_tol, tol=tol)
