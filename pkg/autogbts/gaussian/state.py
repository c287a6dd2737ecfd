import logging
from functools import cached_property
from typing import Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from autogbts import exc
from autogbts.conf import setting
from autogbts.gaussian.circuit import CircuitSpec, build_unitary
from autogbts.hafnian.dispatch import lhaf_auto
from autogbts.matrix.complex_matrix import ComplexMatrix, RepetitionVector
from autogbts.matrix import matrix_util

logger = logging.getLogger(__name__)


class GaussianState:
    def __init__(self, alpha: np.ndarray, sigma: Union[ComplexMatrix, np.ndarray]):
        """
        A Gaussian state of M modes, described by its mean vector and covariance matrix in the ladder operator
        ordering (a_1^dagger, ..., a_M^dagger, a_1, ..., a_M), the ordering in which the adjacency matrix has blocks
        B = U diag(lambda) U^T and the single mode squeezed vacuum has B = tanh r exp(i phi).

        Parameters
        ----------
        alpha
            The 2M mean values, whose second half is the complex conjugate of the first.
        sigma
            The 2M x 2M covariance matrix.
        """
        alpha = np.array(alpha, dtype=np.complex128).reshape(-1)

        if not isinstance(sigma, ComplexMatrix):
            sigma = ComplexMatrix(sigma)

        if len(alpha) % 2 != 0 or sigma.n != len(alpha):
            raise exc.MatrixException(
                f"A Gaussian state needs a mean vector of even length 2M and a 2M x 2M covariance matrix, not "
                f"lengths {len(alpha)} and {sigma.n}."
            )

        alpha.setflags(write=False)

        self.alpha = alpha
        self.sigma = sigma

    @property
    def modes(self) -> int:
        return len(self.alpha) // 2

    @property
    def q(self) -> ComplexMatrix:
        """
        Q = sigma + I / 2, the covariance matrix of the Husimi function.
        """
        return ComplexMatrix(np.asarray(self.sigma) + 0.5 * np.eye(2 * self.modes))

    def __repr__(self):
        return f"GaussianState(modes={self.modes})"


def moments_from(circuit: CircuitSpec) -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns the per-mode moments n_i = eta sinh^2 r_i and m_i = eta sinh(2 r_i) exp(i phi_i) / 2 of the lossy
    squeezed inputs, before the circuit mixes them.
    """
    n = circuit.eta * np.sinh(circuit.r) ** 2
    m = 0.5 * circuit.eta * np.sinh(2.0 * circuit.r) * np.exp(1j * circuit.phi_sq)
    return n, m


def prepare_state(circuit: CircuitSpec) -> GaussianState:
    """
    Returns the Gaussian state at the output of the circuit.

    Uniform loss commutes with the passive circuit, so it is applied to the inputs. The input covariance T has
    diagonal blocks diag(n_i + 1/2), lower off-diagonal block diag(m_i) and upper off-diagonal block diag(m_i^*),
    and the output covariance is sigma = V T V^dagger with V = diag(U^*, U), so its first half transforms as the
    creation operators and its second half as the annihilation operators. The mean vector follows the same
    ordering, alpha = sqrt(eta) ((U beta)^*, U beta), where U beta are the output means of a_1, ..., a_M.
    """
    unitary = np.asarray(build_unitary(circuit=circuit))

    n, m = moments_from(circuit=circuit)

    modes = circuit.modes

    t_matrix = np.zeros((2 * modes, 2 * modes), dtype=np.complex128)
    t_matrix[:modes, :modes] = np.diag(n + 0.5)
    t_matrix[modes:, modes:] = np.diag(n + 0.5)
    t_matrix[modes:, :modes] = np.diag(m)
    t_matrix[:modes, modes:] = np.diag(np.conj(m))

    v_matrix = linalg.block_diag(np.conj(unitary), unitary)

    sigma = v_matrix @ t_matrix @ v_matrix.conj().T

    beta = np.sqrt(circuit.eta) * circuit.beta

    mean = unitary @ beta

    alpha = np.concatenate([np.conj(mean), mean])

    return GaussianState(alpha=alpha, sigma=sigma)


def reduce(state: GaussianState, k: int) -> GaussianState:
    """
    Returns the state of the first k modes, tracing out the rest by deleting the rows and columns j and M + j of
    every other mode j.
    """
    if isinstance(k, bool) or int(k) != k or k < 1 or k > state.modes:
        raise exc.MatrixException(
            f"A state of {state.modes} modes can be reduced to 1..{state.modes} modes, not {k}."
        )

    indexes = np.concatenate(
        [np.arange(k), state.modes + np.arange(k)]
    )

    return GaussianState(
        alpha=state.alpha[indexes],
        sigma=np.asarray(state.sigma)[np.ix_(indexes, indexes)],
    )


class AdjacencyData:
    def __init__(
        self,
        q: ComplexMatrix,
        a: ComplexMatrix,
        gamma: np.ndarray,
        prefactor: float,
    ):
        """
        Everything the photon pattern probabilities of a Gaussian state are computed from,

            p(s) = prefactor lhaf(fdiag(A_s, gamma_s)) / s!

        Parameters
        ----------
        q
            The matrix Q = sigma + I / 2.
        a
            The symmetric adjacency matrix A = X (I - Q^-1), with X the block swap.
        gamma
            The loop weights gamma = (alpha^dagger Q^-1)^T.
        prefactor
            The vacuum probability exp(-alpha^dagger Q^-1 alpha / 2) / sqrt(det Q).
        """
        self.q = q
        self.a = a
        self.gamma = gamma
        self.prefactor = prefactor

    @property
    def modes(self) -> int:
        return self.a.n // 2

    @property
    def b_block(self) -> ComplexMatrix:
        return ComplexMatrix(self.a[: self.modes, : self.modes])

    @property
    def c_block(self) -> ComplexMatrix:
        return ComplexMatrix(self.a[: self.modes, self.modes :])

    @cached_property
    def interleaved(self) -> ComplexMatrix:
        """
        A with the index pairs (j, M + j) made adjacent, which turns a block banded A of block bandwidth w into a
        banded matrix of bandwidth at most 2w + 1.

        The diagonal of A is kept: it weighs the pairings between two copies of a repeated index, while the loops
        of every copy carry gamma.
        """
        return matrix_util.permute(self.a, matrix_util.interleave_perm(self.modes))

    @cached_property
    def interleaved_gamma(self) -> np.ndarray:
        return self.gamma[matrix_util.interleave_perm(self.modes).indexes]

    def extended(self, counts: Sequence[int]) -> ComplexMatrix:
        """
        The extended adjacency matrix fdiag(A_s, gamma_s) of the photon pattern s.
        """
        counts = self.counts_from(counts=counts)

        reps = RepetitionVector(counts + counts)

        return matrix_util.fdiag(
            matrix_util.repeat_pattern(self.a, reps),
            np.repeat(self.gamma, reps.array),
        )

    def counts_from(self, counts: Sequence[int]) -> list:

        counts = list(RepetitionVector(counts))

        if len(counts) != self.modes:
            raise exc.MatrixException(
                f"A photon pattern of a {self.modes} mode state must have {self.modes} counts, not {len(counts)}."
            )

        return counts

    def lhaf(self, counts: Sequence[int], engine: str = "auto") -> complex:
        """
        The loop hafnian of the extended adjacency matrix fdiag(A_s, gamma_s) of the pattern, evaluated on the
        interleaved matrix with the repetition counts (s_1, s_1, s_2, s_2, ...) and the interleaved loop weights.
        """
        counts = self.counts_from(counts=counts)

        reps = RepetitionVector(np.repeat(counts, 2))

        return lhaf_auto(
            matrix=self.interleaved, reps=reps, engine=engine, loops=self.interleaved_gamma
        )

    def prob(self, counts: Sequence[int], engine: str = "auto") -> float:
        """
        The probability of detecting the photon pattern, p(s) = prefactor lhaf(A~_s) / s!.

        The value must be real within `[gaussian] imag_tol` and may fall below zero by at most
        `[sampler] negative_tol`, in which case it is rounded to zero.
        """
        counts = self.counts_from(counts=counts)

        value = (
            self.prefactor
            * self.lhaf(counts=counts, engine=engine)
            / RepetitionVector(counts).factorial
        )

        return probability_from(value=value, counts=counts)


def probability_from(value: complex, counts: Sequence[int]) -> float:

    imag_tol = setting("gaussian", "imag_tol", 1.0e-8)
    negative_tol = setting("sampler", "negative_tol", 1.0e-8)

    if abs(value.imag) > imag_tol:
        raise exc.NumericalException(
            f"The probability of pattern {list(counts)} has imaginary part {value.imag:.3e}."
        )

    probability = value.real

    if probability < -negative_tol:
        raise exc.NumericalException(
            f"The probability of pattern {list(counts)} is negative, {probability:.3e}."
        )

    return min(max(probability, 0.0), 1.0)


def adjacency(state: GaussianState) -> AdjacencyData:
    """
    Returns Q, A, gamma and the prefactor of a Gaussian state.

    Q is factorized once with partial pivoting and every quantity is obtained by solves rather than an explicit
    inverse of Q. A state whose Q is not positive definite is unphysical.
    """
    q = np.asarray(state.q)
    size = q.shape[0]

    try:
        linalg.cholesky(0.5 * (q + q.conj().T), lower=True)
    except linalg.LinAlgError:
        raise exc.UnphysicalStateException(
            "The matrix Q = sigma + I/2 of the state is not positive definite."
        )

    lu, piv = linalg.lu_factor(q)

    q_inv = linalg.lu_solve((lu, piv), np.eye(size, dtype=np.complex128))

    swap = np.roll(np.eye(size), size // 2, axis=1)

    a = swap @ (np.eye(size) - q_inv)

    solved = linalg.lu_solve((lu, piv), state.alpha)

    gamma = np.conj(solved)

    sign = np.prod(np.where(piv != np.arange(size), -1.0, 1.0))
    det_q = sign * np.prod(np.diag(lu))

    if det_q.real <= 0.0:
        raise exc.UnphysicalStateException(
            f"The determinant of Q must be positive, not {det_q.real:.3e}."
        )

    exponent = -0.5 * np.vdot(state.alpha, solved).real

    prefactor = float(np.exp(exponent) / np.sqrt(det_q.real))

    logger.debug("Adjacency data of a %d mode state, prefactor %.6e.", size // 2, prefactor)

    return AdjacencyData(
        q=ComplexMatrix(q), a=ComplexMatrix(a), gamma=gamma, prefactor=prefactor
    )


def bc_blocks(circuit: CircuitSpec) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """
    Returns the blocks B = U diag(lambda) U^T and C = U diag(mu) U^dagger of the adjacency matrix of the circuit's
    output state, built directly from the input moments with

        lambda_i = m_i / ((1 + n_i)^2 - |m_i|^2),    mu_i = 1 - (1 + n_i) / ((1 + n_i)^2 - |m_i|^2).

    This path never inverts Q, so it independently validates `adjacency`.
    """
    unitary = np.asarray(build_unitary(circuit=circuit))

    n, m = moments_from(circuit=circuit)

    denominator = (1.0 + n) ** 2 - np.abs(m) ** 2

    lambdas = m / denominator
    mus = 1.0 - (1.0 + n) / denominator

    b = unitary @ np.diag(lambdas) @ unitary.T
    c = unitary @ np.diag(mus) @ unitary.conj().T

    return ComplexMatrix(b), ComplexMatrix(c)


def extended_adjacency(
    state: Union[GaussianState, AdjacencyData], counts: Sequence[int]
) -> ComplexMatrix:
    """
    Returns the extended adjacency matrix fdiag(A_s, gamma_s), where the index pair (j, M + j) of A is repeated
    s_j times and the diagonal is replaced by the correspondingly repeated gamma.
    """
    if isinstance(state, GaussianState):
        state = adjacency(state=state)

    return state.extended(counts=counts)


def prob(
    state: Union[GaussianState, AdjacencyData],
    counts: Sequence[int],
    engine: str = "auto",
) -> float:
    """
    Returns the probability of detecting the photon pattern `counts` on a Gaussian state.

    Parameters
    ----------
    state
        The Gaussian state, or its precomputed adjacency data.
    counts
        The photon count of every mode.
    engine
        The loop hafnian engine, one of `auto`, `brute`, `banded` and `banded-rep`.
    """
    if isinstance(state, GaussianState):
        state = adjacency(state=state)

    return state.prob(counts=counts, engine=engine)
