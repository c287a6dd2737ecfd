import numpy as np

import autogbts as ag


def make_chain_matrix(a=2.0, b=3.0, c=5.0, d=7.0, e=11.0, f=13.0):
    """
    The 5 x 5 matrix of bandwidth 1 whose loop hafnian is a c e + a d f (292 for the default entries).
    """
    return ag.ComplexMatrix(
        [
            [0.0, a, 0.0, 0.0, 0.0],
            [a, 0.0, b, 0.0, 0.0],
            [0.0, b, c, d, 0.0],
            [0.0, 0.0, d, 0.0, e],
            [0.0, 0.0, 0.0, e, f],
        ]
    )


def make_all_ones_matrix(k=4):
    return ag.ComplexMatrix(np.ones((k, k)))


def make_random_symmetric(n, w, seed=0):
    """
    A random complex symmetric n x n matrix of bandwidth w, with entries of order one.
    """
    rng = np.random.default_rng(seed)

    array = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    array = 0.5 * (array + array.T)

    rows, columns = np.indices((n, n))
    array[np.abs(rows - columns) > w] = 0.0

    return ag.ComplexMatrix(array)


def make_random_block_banded(k, w, seed=0):
    """
    A random complex symmetric 2k x 2k matrix (B, C; C^T, B^*) whose blocks have bandwidth w.
    """
    rng = np.random.default_rng(seed)

    rows, columns = np.indices((k, k))
    outside = np.abs(rows - columns) > w

    b = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    b = 0.5 * (b + b.T)
    b[outside] = 0.0

    c = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    c[outside] = 0.0

    return ag.ComplexMatrix(np.block([[b, c], [c.T, np.conj(b)]]))


def make_single_mode_circuit(r=0.5, phase=0.0, eta=1.0, beta=0.0):
    return ag.CircuitSpec(modes=1, r=[r], phi_sq=[phase], beta=[beta], eta=eta)


def make_coherent_circuit(beta=0.8 + 0.3j):
    return ag.CircuitSpec(modes=1, beta=[beta])


def make_beamsplitter_circuit(r=0.5, eta=1.0):
    """
    Two equally squeezed modes mixed by one 50:50 beamsplitter.
    """
    return ag.CircuitSpec(
        modes=2,
        r=[r, r],
        eta=eta,
        layers=[[ag.Beamsplitter(mode=1, theta=0.25 * np.pi)]],
    )


def make_product_circuit(r_first=0.4, r_second=0.7):
    """
    Two squeezed modes without gates between them.
    """
    return ag.CircuitSpec(modes=2, r=[r_first, r_second], phi_sq=[0.3, 1.1])


def make_vacuum_circuit(modes=3, depth=2):
    return ag.CircuitSpec.random(modes=modes, depth=depth, seed=1, r_min=0.0, r_max=0.0)


def make_lossy_circuit(modes=6, depth=2, seed=3):
    return ag.CircuitSpec.random(
        modes=modes, depth=depth, seed=seed, r_min=0.2, r_max=0.5, eta=0.7, displacement=0.3
    )
