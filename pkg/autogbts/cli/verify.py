import logging
import math
from typing import Iterator, List

import numpy as np

import autogbts as ag
from autogbts import exc
from autogbts.mock import fixtures

logger = logging.getLogger(__name__)

SUITES = ("lemmas", "oracles", "all")


class Check:
    def __init__(self, name: str, passed: bool, measured: str):
        """
        The outcome of one verification check and the quantities it measured.
        """
        self.name = name
        self.passed = bool(passed)
        self.measured = measured

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.measured}"


def circuit_corpus(seed: int, size: int = 100) -> Iterator[ag.CircuitSpec]:
    """
    Seeded lossy brickwork circuits of 2 to 32 modes and 1 to 6 layers.
    """
    rng = np.random.default_rng(seed)

    for _ in range(size):
        yield ag.CircuitSpec.random(
            modes=int(rng.integers(2, 33)),
            depth=int(rng.integers(1, 7)),
            seed=int(rng.integers(2 ** 32)),
            eta=float(rng.uniform(0.5, 1.0)),
        )


def unitary_bandwidth_check(seed: int) -> Check:

    excess = []
    widths = []

    for circuit in circuit_corpus(seed=seed):
        width = ag.bandwidth(ag.build_unitary(circuit), tol=1.0e-12)
        widths.append(width)
        excess.append(width - circuit.depth)

    return Check(
        name="unitary bandwidth <= D",
        passed=max(excess) <= 0,
        measured=f"max bandwidth(U) - D = {max(excess)}, max bandwidth(U) = {max(widths)}, "
        f"violations = {sum(value > 0 for value in excess)}",
    )


def adjacency_bandwidth_check(seed: int) -> Check:

    violations = 0
    beyond_tight = 0
    cases = 0
    max_ratio = 0.0

    for circuit in circuit_corpus(seed=seed):

        state = ag.prepare_state(circuit)

        for k in range(1, circuit.modes + 1):

            data = ag.adjacency(ag.reduce(state, k))
            width = ag.block_bandwidth(data.a, tol=1.0e-10)

            cases += 1
            violations += width > 4 * circuit.depth
            beyond_tight += width > 2 * circuit.depth
            max_ratio = max(max_ratio, width / circuit.depth)

    return Check(
        name="block bandwidth of A(k) <= 4D",
        passed=violations == 0,
        measured=f"max w / D = {max_ratio:.3f} over {cases} reduced states, violations = {violations}, "
        f"cases above 2D = {beyond_tight}",
    )


def interleave_check(seed: int) -> Check:

    rng = np.random.default_rng(seed)

    violations = 0
    cases = 0

    for k in range(1, 7):
        for w in range(k):
            for _ in range(5):

                matrix = fixtures.make_random_block_banded(
                    k=k, w=w, seed=int(rng.integers(2 ** 32))
                )
                measured = ag.block_bandwidth(matrix)
                permuted = ag.permute(matrix, ag.interleave_perm(k))

                cases += 1
                violations += ag.bandwidth(permuted) > 2 * measured + 1

    return Check(
        name="interleaved bandwidth <= 2w + 1",
        passed=violations == 0,
        measured=f"{cases} block banded matrices, violations = {violations}",
    )


def extended_bandwidth_check(seed: int, c: int = 2) -> Check:

    rng = np.random.default_rng(seed)

    violations = 0
    above_composed = 0
    cases = 0

    for circuit in list(circuit_corpus(seed=seed))[:20]:

        data = ag.adjacency(ag.prepare_state(circuit))
        width = ag.block_bandwidth(data.a, tol=1.0e-10)

        counts = rng.integers(0, c + 1, size=circuit.modes)
        reps = ag.RepetitionVector(np.repeat(counts, 2))

        extended = ag.repeat_pattern(data.interleaved, reps)
        extended_width = ag.bandwidth(extended, tol=1.0e-10)

        cases += 1
        violations += extended_width > c * (2 * width + 2) - 1
        above_composed += extended_width > 8 * circuit.depth * c

    return Check(
        name="extended bandwidth <= c (2w + 2) - 1",
        passed=violations == 0,
        measured=f"{cases} patterns with c = {c}, violations = {violations}, cases above 8Dc = {above_composed}",
    )


def banded_oracle_check(seed: int, size: int = 200) -> Check:

    rng = np.random.default_rng(seed)

    max_error = 0.0
    evaluations = 0

    for _ in range(size):

        n = int(rng.integers(1, 13))
        matrix = fixtures.make_random_symmetric(
            n=n, w=int(rng.integers(0, n)), seed=int(rng.integers(2 ** 32))
        )

        expected = ag.lhaf_brute(matrix)

        for w in range(ag.bandwidth(matrix), n):
            value = ag.lhaf_banded(matrix, w=w)
            max_error = max(max_error, abs(value - expected) / (1.0 + abs(expected)))
            evaluations += 1

    return Check(
        name="banded engine against brute force",
        passed=max_error <= 1.0e-10,
        measured=f"max relative error = {max_error:.3e} over {evaluations} evaluations",
    )


def rep_oracle_check(seed: int, size: int = 60) -> Check:

    rng = np.random.default_rng(seed)

    max_error = 0.0

    for _ in range(size):

        n = int(rng.integers(1, 7))
        w = int(rng.integers(0, min(n, 3)))
        matrix = fixtures.make_random_symmetric(n=n, w=w, seed=int(rng.integers(2 ** 32)))

        counts = rng.integers(0, 4, size=n)

        while counts.sum() > 12:
            counts[int(np.argmax(counts))] -= 1

        expected = ag.lhaf_brute(ag.repeat_pattern(matrix, counts))
        value = ag.lhaf_banded_rep(matrix, w=w, reps=counts)

        max_error = max(max_error, abs(value - expected) / (1.0 + abs(expected)))

    return Check(
        name="repetition engine against brute force",
        passed=max_error <= 1.0e-9,
        measured=f"max relative error = {max_error:.3e} over {size} matrices",
    )


def pattern_oracle_check(seed: int, size: int = 20) -> Check:
    """
    The loop hafnians of photon patterns of small displaced lossy circuits, evaluated on the interleaved matrix
    with loop weights, against brute force on the extended adjacency matrix.
    """
    rng = np.random.default_rng(seed)

    max_error = 0.0

    for _ in range(size):

        circuit = ag.CircuitSpec.random(
            modes=int(rng.integers(2, 5)),
            depth=int(rng.integers(1, 3)),
            seed=int(rng.integers(2 ** 32)),
            eta=float(rng.uniform(0.5, 1.0)),
            displacement=0.5,
        )

        data = ag.adjacency(ag.prepare_state(circuit))

        counts = rng.integers(0, 3, size=circuit.modes)

        while counts.sum() > 6:
            counts[int(np.argmax(counts))] -= 1

        expected = ag.lhaf_brute(data.extended(counts))

        for engine in ("banded", "banded-rep"):
            value = data.lhaf(counts, engine=engine)
            max_error = max(max_error, abs(value - expected) / (1.0 + abs(expected)))

    return Check(
        name="photon pattern loop hafnians against the extended matrix",
        passed=max_error <= 1.0e-9,
        measured=f"max relative error = {max_error:.3e} over {size} circuits",
    )


def telephone_check() -> Check:

    mismatches = [
        k
        for k in range(11)
        if ag.lhaf_brute(fixtures.make_all_ones_matrix(k=k)) != ag.telephone(k)
    ]
    mismatches += [k for k in range(13) if ag.t_poly(k, 1.0) != ag.telephone(k)]

    return Check(
        name="telephone numbers",
        passed=len(mismatches) == 0,
        measured=f"T_4 = {ag.telephone(4)}, mismatches at k = {mismatches}",
    )


def chain_matrix_check() -> Check:

    matrix = fixtures.make_chain_matrix()

    values = {
        "brute": ag.lhaf_brute(matrix),
        "banded": ag.lhaf_banded(matrix, w=1),
        "banded-rep": ag.lhaf_banded_rep(matrix, w=1, reps=[1] * 5),
    }

    return Check(
        name="five vertex chain matrix",
        passed=all(abs(value - 292.0) <= 1.0e-12 for value in values.values()),
        measured=", ".join(f"{engine} = {value.real:.15g}" for engine, value in values.items()),
    )


def single_mode_check() -> Check:

    max_error = 0.0

    for r in (0.2, 0.5, 1.0):

        data = ag.adjacency(ag.prepare_state(fixtures.make_single_mode_circuit(r=r)))

        max_error = max(
            max_error,
            abs(data.prob([0]) - 1.0 / np.cosh(r)),
            abs(data.prob([2]) - np.tanh(r) ** 2 / (2.0 * np.cosh(r))),
            *(data.prob([odd]) for odd in (1, 3, 5)),
        )

    for beta in (0.5, 1.0 + 0.5j, 1.5j):

        data = ag.adjacency(ag.prepare_state(fixtures.make_coherent_circuit(beta=beta)))
        mean = abs(beta) ** 2

        for n in range(7):
            poisson = np.exp(-mean) * mean ** n / math.factorial(n)
            max_error = max(max_error, abs(data.prob([n]) - poisson))

    return Check(
        name="single mode analytic probabilities",
        passed=max_error <= 1.0e-10,
        measured=f"max absolute error = {max_error:.3e}",
    )


def run_suite(suite: str = "all", seed: int = 0) -> List[Check]:
    """
    Runs the structural bandwidth checks (`lemmas`), the oracle checks of the engines and probabilities
    (`oracles`) or both (`all`).
    """
    if suite not in SUITES:
        raise exc.FormatException(
            f"The suite must be one of {', '.join(SUITES)}, not {suite}."
        )

    checks = []

    if suite in ("lemmas", "all"):
        checks += [
            unitary_bandwidth_check(seed=seed),
            adjacency_bandwidth_check(seed=seed),
            interleave_check(seed=seed),
            extended_bandwidth_check(seed=seed),
        ]

    if suite in ("oracles", "all"):
        checks += [
            telephone_check(),
            chain_matrix_check(),
            banded_oracle_check(seed=seed),
            rep_oracle_check(seed=seed),
            pattern_oracle_check(seed=seed),
            single_mode_check(),
        ]

    for check in checks:
        logger.info(check.line)

    return checks
