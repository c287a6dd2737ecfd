import functools
import logging
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from autogbts import exc
from autogbts.conf import setting
from autogbts.gaussian.circuit import CircuitSpec
from autogbts.gaussian.state import AdjacencyData, GaussianState, adjacency, prepare_state, reduce
from autogbts.sampler.pattern import OVERFLOW, PhotonPattern, box_patterns
from autogbts.sampler.settings import SamplerConfig

logger = logging.getLogger(__name__)


def random_stream(seed: int, index: int) -> np.random.Generator:
    """
    The random stream of sample `index`: a Philox generator keyed by the seed whose counter starts at
    index * 2^192, so every sample index owns a disjoint block of the counter space.
    """
    return np.random.Generator(np.random.Philox(key=seed, counter=int(index) << 192))


def conditional_dist(
    state: Union[GaussianState, AdjacencyData],
    prefix: Sequence[int],
    prior_prob: float,
    config: SamplerConfig,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns the distribution of the count of mode k given the counts `prefix` of modes 1, ..., k - 1, over the
    c + 2 outcomes (0, ..., c, >), together with the marginals p(prefix, x) of x = 0, ..., c.

        q(x) = p(prefix, x) / p(prefix),    q(>) = 1 - sum_x q(x)

    Parameters
    ----------
    state
        The state reduced to its first k modes, or its adjacency data.
    prefix
        The counts of the first k - 1 modes.
    prior_prob
        The marginal probability p(prefix) of the prefix, carried from the previous step.
    config
        The detector resolution and hafnian engine.
    """
    if prior_prob <= 0.0:
        raise exc.NumericalException(
            f"The prefix {list(prefix)} must have positive probability, not {prior_prob:.3e}."
        )

    if isinstance(state, GaussianState):
        state = adjacency(state=state)

    prefix = list(prefix)

    marginals = np.array(
        [
            state.prob(counts=prefix + [x], engine=config.engine)
            for x in range(config.c + 1)
        ]
    )

    table = np.zeros(config.c + 2)
    table[:-1] = marginals / prior_prob

    overflow = 1.0 - np.sum(table[:-1])

    if overflow < -setting("sampler", "negative_tol", 1.0e-8):
        raise exc.NumericalException(
            f"The conditional probabilities after prefix {prefix} sum to {1.0 - overflow:.12f} > 1."
        )

    if overflow < 0.0:
        logger.warning(
            "Conditional overflow mass %.3e after prefix %s rounded to zero.", overflow, prefix
        )
        overflow = 0.0

    table[-1] = overflow
    table /= np.sum(table)

    return table, marginals


def outcome_from(table: np.ndarray, uniform: float) -> int:
    """
    Inverse CDF draw of an outcome index for a uniform variate in (0, 1], where outcome x is drawn when
    cdf(x - 1) < u <= cdf(x) so ties at a boundary resolve to the lower outcome.
    """
    cdf = np.cumsum(table)
    cdf /= cdf[-1]

    index = int(np.searchsorted(cdf, uniform, side="left"))

    return min(index, len(table) - 1)


class Sampler:
    def __init__(
        self,
        circuit: CircuitSpec,
        config: SamplerConfig,
        max_cached_conditionals: Optional[int] = None,
    ):
        """
        Exact threshold sampling of a circuit's output state by the chain rule: the count of every mode is drawn
        from its distribution conditioned on the counts already drawn, and the sample ends with the overflow event
        as soon as a detector is overloaded.

        The reduced states and their adjacency data are built once per number of modes k. Conditional tables are
        cached by prefix when `[sampler] reuse_conditionals` is on, so repeated prefixes cost no further hafnians.
        The cache keeps the most recently used tables only, at most `max_cached_conditionals` of them.

        Parameters
        ----------
        circuit
            The circuit whose output is sampled.
        config
            The detector resolution, seed and hafnian engine.
        max_cached_conditionals
            The size of the prefix cache, `[sampler] max_cached_conditionals` by default.
        """
        self.circuit = circuit
        self.config = config

        self.state = prepare_state(circuit=circuit)

        self.reuse_conditionals = setting("sampler", "reuse_conditionals", True)

        self._adjacencies: Dict[int, AdjacencyData] = {}

        if max_cached_conditionals is None:
            max_cached_conditionals = setting("sampler", "max_cached_conditionals", 100000)

        self._cached_conditional = functools.lru_cache(maxsize=max_cached_conditionals)(
            self.conditional_from
        )

        self.samples = 0
        self.hafnian_calls = 0
        self.vacuum_calls = 0
        self.last_calls = 0
        self.max_calls = 0

    @property
    def modes(self) -> int:
        return self.circuit.modes

    @property
    def counters(self) -> Dict[str, int]:
        """
        Hafnian evaluations per conditional table: c for the outcomes x = 1, ..., c, counted in `hafnian_calls`
        and bounded by M c per sample, and one for x = 0, counted in `vacuum_calls`. A sample without cache hits
        therefore evaluates M (c + 1) loop hafnians in total.
        """
        return {
            "samples": self.samples,
            "hafnian_calls": self.hafnian_calls,
            "vacuum_calls": self.vacuum_calls,
            "max_calls_per_sample": self.max_calls,
        }

    def adjacency_of(self, k: int) -> AdjacencyData:

        if k not in self._adjacencies:
            self._adjacencies[k] = adjacency(state=reduce(state=self.state, k=k))

        return self._adjacencies[k]

    def conditional_from(
        self, prefix: Tuple[int, ...], prior_prob: float
    ) -> Tuple[np.ndarray, np.ndarray]:

        result = conditional_dist(
            state=self.adjacency_of(k=len(prefix) + 1),
            prefix=prefix,
            prior_prob=prior_prob,
            config=self.config,
        )

        self.hafnian_calls += self.config.c
        self.vacuum_calls += 1
        self.last_calls += self.config.c

        return result

    def conditional_of(
        self, prefix: Tuple[int, ...], prior_prob: float
    ) -> Tuple[np.ndarray, np.ndarray]:

        if self.reuse_conditionals:
            return self._cached_conditional(prefix, prior_prob)

        return self.conditional_from(prefix=prefix, prior_prob=prior_prob)

    @property
    def cache_info(self):
        return self._cached_conditional.cache_info()

    def sample_from(self, stream: np.random.Generator) -> PhotonPattern:
        """
        Draws one pattern using the uniforms of `stream`, one per mode.
        """
        self.last_calls = 0

        prefix = ()
        prior_prob = 1.0

        pattern = None

        for _ in range(self.modes):

            table, marginals = self.conditional_of(prefix=prefix, prior_prob=prior_prob)

            outcome = outcome_from(table=table, uniform=1.0 - stream.random())

            if outcome == self.config.c + 1:
                pattern = OVERFLOW
                break

            prefix = prefix + (outcome,)
            prior_prob = marginals[outcome]

        if pattern is None:
            pattern = PhotonPattern(prefix)

        self.samples += 1
        self.max_calls = max(self.max_calls, self.last_calls)

        return pattern

    def sample(self, index: int) -> PhotonPattern:
        return self.sample_from(stream=random_stream(seed=self.config.seed, index=index))

    def batch(self, indexes: Sequence[int]) -> List[PhotonPattern]:
        return [self.sample(index=index) for index in indexes]


def gbts_sample(
    circuit: CircuitSpec, config: SamplerConfig, stream: np.random.Generator
) -> PhotonPattern:
    """
    Draws one threshold sample of the circuit's output state from `stream`.
    """
    return Sampler(circuit=circuit, config=config).sample_from(stream=stream)


def sample_chunk_from(
    circuit: CircuitSpec, config: SamplerConfig, start: int, stop: int
) -> Tuple[List[PhotonPattern], Dict[str, int]]:

    sampler = Sampler(circuit=circuit, config=config)

    return sampler.batch(indexes=range(start, stop)), sampler.counters


def batch_sample_with_counters(
    circuit: CircuitSpec,
    config: SamplerConfig,
    total_samples: int,
    n_cores: Optional[int] = None,
) -> Tuple[List[PhotonPattern], Dict[str, int]]:
    """
    Draws the samples of indexes 0, ..., N - 1, split into contiguous chunks over `n_cores` processes, and returns
    them in index order with the summed call counters.
    """
    if isinstance(total_samples, bool) or int(total_samples) != total_samples or total_samples < 1:
        raise exc.SamplerException(
            f"The number of samples must be a positive integer, not {total_samples}."
        )

    if n_cores is None:
        n_cores = setting("analysis", "n_cores", 1)

    n_cores = max(1, min(int(n_cores), total_samples))

    bounds = np.linspace(0, total_samples, n_cores + 1).astype(int)

    chunks = [
        (circuit, config, int(start), int(stop))
        for start, stop in zip(bounds[:-1], bounds[1:])
    ]

    if n_cores == 1:
        results = [sample_chunk_from(*chunk) for chunk in chunks]
    else:
        with Pool(processes=n_cores) as pool:
            results = pool.starmap(sample_chunk_from, chunks)

    samples = [pattern for patterns, _ in results for pattern in patterns]

    counters = {
        "samples": sum(counter["samples"] for _, counter in results),
        "hafnian_calls": sum(counter["hafnian_calls"] for _, counter in results),
        "vacuum_calls": sum(counter["vacuum_calls"] for _, counter in results),
        "max_calls_per_sample": max(
            counter["max_calls_per_sample"] for _, counter in results
        ),
    }

    overflow = sum(1 for pattern in samples if pattern.is_overflow)

    logger.info(
        "Drew %d samples of a %d mode circuit on %d process(es), %d overflow events, %d hafnian calls.",
        total_samples,
        circuit.modes,
        n_cores,
        overflow,
        counters["hafnian_calls"],
    )

    return samples, counters


def batch_sample(
    circuit: CircuitSpec,
    config: SamplerConfig,
    total_samples: int,
    n_cores: Optional[int] = None,
) -> List[PhotonPattern]:
    """
    Draws N independent threshold samples, sample i using the stream `random_stream(seed, i)`, so the output does
    not depend on the number of processes.
    """
    return batch_sample_with_counters(
        circuit=circuit, config=config, total_samples=total_samples, n_cores=n_cores
    )[0]


def gbts_distribution(circuit: CircuitSpec, config: SamplerConfig) -> Dict[PhotonPattern, float]:
    """
    Returns the exact threshold sampling distribution: the probability of every pattern of the box [0, c]^M and
    of the overflow event, whose mass is the remainder clamped at zero.
    """
    data = adjacency(state=prepare_state(circuit=circuit))

    distribution = {
        pattern: data.prob(counts=pattern.counts, engine=config.engine)
        for pattern in box_patterns(modes=circuit.modes, c=config.c)
    }

    distribution[OVERFLOW] = max(1.0 - sum(distribution.values()), 0.0)

    return distribution
