import numpy as np

from autogbts import decorator_util
from autogbts import exc
from autogbts.conf import setting
from autogbts.matrix.complex_matrix import ComplexMatrix


def telephone(k: int) -> int:
    """
    Returns the k-th telephone number T_k(1), the number of perfect matchings (loops allowed) of the complete graph
    on k vertices, via the recursion T_k = T_{k-1} + (k - 1) T_{k-2}.

    Values are guarded at k <= `[hafnian] telephone_max_k` (30 by default), beyond which they no longer fit in
    64-bit arithmetic.
    """
    max_k = setting("hafnian", "telephone_max_k", 30)

    if k < 0:
        raise exc.HafnianException(f"Telephone numbers are defined for k >= 0, not {k}.")

    if k > max_k:
        raise exc.HafnianException(
            f"The telephone number of k={k} exceeds the overflow guard k <= {max_k}."
        )

    previous, current = 1, 1

    for index in range(2, k + 1):
        previous, current = current, current + (index - 1) * previous

    return current


def t_poly(k: int, a: complex, loop: complex = None) -> complex:
    """
    Returns T_k(a), the loop hafnian of the k x k matrix with every entry equal to a, using

        T_0 = 1, T_1 = g, T_k = g T_{k-1} + (k - 1) a T_{k-2},

    where the loop weight g on the diagonal defaults to a.
    """
    if k < 0:
        raise exc.HafnianException(f"T_k(a) is defined for k >= 0, not {k}.")

    a = complex(a)
    loop = a if loop is None else complex(loop)

    previous, current = complex(1.0), loop

    if k == 0:
        return previous

    for index in range(2, k + 1):
        previous, current = current, loop * current + (index - 1) * a * previous

    return current


def scaled_t_poly(k: int, a: complex, loop: complex = None) -> complex:
    """
    Returns T_k(a) / k!, computed with the recursion U_k = (g U_{k-1} + a U_{k-2}) / k which never forms the
    factorial explicitly.
    """
    return complex(scaled_t_poly_table(k_max=k, a=a, loop=loop)[k])


def scaled_t_poly_table(k_max: int, a: complex, loop: complex = None) -> np.ndarray:
    """
    Returns the array [T_0 / 0!, ..., T_{k_max} / k_max!] of the k x k matrices with off-diagonal entries a and
    diagonal entries `loop` (a by default).
    """
    loop = a if loop is None else loop

    table = np.zeros(k_max + 1, dtype=np.complex128)
    table[0] = 1.0

    if k_max >= 1:
        table[1] = loop

    for k in range(2, k_max + 1):
        table[k] = (loop * table[k - 1] + a * table[k - 2]) / k

    return table


def lhaf_brute(matrix: ComplexMatrix, sym_tol: float = None) -> complex:
    """
    Returns the loop hafnian of a symmetric matrix by enumerating every perfect matching (loops allowed) of its
    weighted graph, pairing the lowest unmatched vertex either with itself or with a later unmatched vertex.

    The cost is the telephone number of n, so the engine is an oracle for small matrices and is guarded at
    n <= `[hafnian] brute_max_dim`.

    Parameters
    ----------
    matrix
        The symmetric matrix whose loop hafnian is computed.
    sym_tol
        The symmetry tolerance, defaulting to `[matrix] sym_tol`.
    """
    max_dim = setting("hafnian", "brute_max_dim", 16)

    if matrix.n > max_dim:
        raise exc.HafnianException(
            f"The brute force loop hafnian is guarded at dimension {max_dim}, but a matrix of dimension "
            f"{matrix.n} was input."
        )

    matrix.check_symmetric(sym_tol=sym_tol)

    return complex(lhaf_matchings_from(array=np.array(matrix, dtype=np.complex128)))


@decorator_util.jit()
def lhaf_matchings_from(array):
    """
    Sum over perfect matchings with loops of the products of the matched edge weights, enumerated depth first.

    At every depth the lowest unmatched vertex is paired in turn with itself and with every later unmatched
    vertex; a zero edge weight ends that branch since all its matchings contribute zero.
    """
    n = array.shape[0]

    if n == 0:
        return 1.0 + 0.0j

    matched = np.zeros(n, dtype=np.bool_)
    lowest = np.zeros(n + 1, dtype=np.int64)
    partner = np.full(n + 1, -1, dtype=np.int64)
    weight = np.ones(n + 1, dtype=np.complex128)

    total = 0.0 + 0.0j
    depth = 0

    while depth >= 0:

        i = lowest[depth]
        j = partner[depth]

        if j >= 0:
            matched[i] = False
            matched[j] = False
            j += 1
        else:
            j = i

        while j < n and (matched[j] or abs(array[i, j]) == 0.0):
            j += 1

        if j >= n:
            partner[depth] = -1
            depth -= 1
            continue

        partner[depth] = j
        matched[i] = True
        matched[j] = True
        weight[depth + 1] = weight[depth] * array[i, j]

        k = i + 1

        while k < n and matched[k]:
            k += 1

        if k >= n:
            total += weight[depth + 1]
        else:
            depth += 1
            lowest[depth] = k
            partner[depth] = -1

    return total
