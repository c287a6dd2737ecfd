from autogbts import exc
from autogbts.hafnian.dispatch import ENGINES


class SamplerConfig:
    def __init__(self, c: int, seed: int = 0, engine: str = "auto"):
        """
        The settings of the threshold sampler.

        Parameters
        ----------
        c
            The resolution of the photon number resolving detectors, above which a detector is overloaded.
        seed
            The unsigned 64-bit seed from which the random stream of every sample index is derived.
        engine
            The loop hafnian engine, one of `auto`, `brute`, `banded` and `banded-rep`.
        """
        if isinstance(c, bool) or int(c) != c or c < 1:
            raise exc.SamplerException(f"The detector resolution c must be at least 1, not {c}.")

        if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < 2 ** 64:
            raise exc.SamplerException(
                f"The seed must be an unsigned 64-bit integer, not {seed}."
            )

        if engine not in ENGINES:
            raise exc.SamplerException(
                f"The engine must be one of {', '.join(ENGINES)}, not {engine}."
            )

        self.c = int(c)
        self.seed = int(seed)
        self.engine = engine

    def __repr__(self):
        return f"SamplerConfig(c={self.c}, seed={self.seed}, engine={self.engine})"
