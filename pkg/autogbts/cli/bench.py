import csv
import logging
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

import autogbts as ag
from autogbts import exc
from autogbts.conf import setting
from autogbts.hafnian.banded import lhaf_banded_from
from autogbts.mock import fixtures

logger = logging.getLogger(__name__)

HEADER = ("parameter", "value", "median_seconds", "engine_calls")

KERNEL_DEFAULTS = {
    "banded": {"n": 400, "w": 3, "seed": 0},
    "banded-rep": {"n": 40, "w": 2, "c": 3, "seed": 0},
    "sampler": {"M": 8, "D": 2, "c": 2, "seed": 0},
}


def parse_sweep(text: str) -> Tuple[str, List[int]]:
    """
    Parses a sweep `name=start:stop:step` (stop inclusive, step 1 if omitted) or `name=v1,v2,...`.
    """
    try:
        name, values = text.split("=")
        name = name.strip()

        if ":" in values:
            parts = [int(part) for part in values.split(":")]
            if len(parts) == 2:
                parts.append(1)
            start, stop, step = parts
            if step < 1 or stop < start:
                raise ValueError
            sweep = list(range(start, stop + 1, step))
        else:
            sweep = [int(value) for value in values.split(",")]

    except ValueError:
        raise exc.FormatException(
            f"The sweep '{text}' must read name=start:stop:step or name=v1,v2,..."
        )

    if len(name) == 0 or len(sweep) == 0:
        raise exc.FormatException(f"The sweep '{text}' names no parameter or values.")

    return name, sweep


def parse_set(texts: Optional[Sequence[str]]) -> Dict[str, int]:

    fixed = {}

    for text in texts or []:
        try:
            name, value = text.split("=")
            fixed[name.strip()] = int(value)
        except ValueError:
            raise exc.FormatException(f"The fixed parameter '{text}' must read name=value.")

    return fixed


def banded_run_from(params: Dict[str, int]) -> Callable[[], int]:
    """
    The banded kernel on a random matrix, validated once so the timing covers the dynamic program only.
    """
    matrix = fixtures.make_random_symmetric(n=params["n"], w=params["w"], seed=params["seed"])
    matrix.check_symmetric()

    array = np.array(matrix, dtype=np.complex128)
    w = params["w"]

    def run() -> int:
        lhaf_banded_from(array, w)
        return 1

    return run


def banded_rep_run_from(params: Dict[str, int]) -> Callable[[], int]:

    matrix = fixtures.make_random_symmetric(n=params["n"], w=params["w"], seed=params["seed"])
    counts = np.random.default_rng(params["seed"]).integers(1, params["c"] + 1, size=params["n"])

    def run() -> int:
        ag.lhaf_banded_rep(matrix, w=params["w"], reps=counts)
        return 1

    return run


def sampler_run_from(params: Dict[str, int]) -> Callable[[], int]:
    """
    One sample of a weakly squeezed brickwork circuit, with the hafnian calls of outcomes x >= 1 as the count.
    """
    circuit = ag.CircuitSpec.random(
        modes=params["M"], depth=params["D"], seed=params["seed"], r_min=0.05, r_max=0.15
    )
    config = ag.SamplerConfig(c=params["c"], seed=params["seed"])

    def run() -> int:
        sampler = ag.Sampler(circuit=circuit, config=config)
        sampler.sample(index=0)
        return sampler.counters["hafnian_calls"]

    return run


RUNS = {
    "banded": banded_run_from,
    "banded-rep": banded_rep_run_from,
    "sampler": sampler_run_from,
}


def time_run(
    run: Callable[[], int], repetitions: int, warmup: int
) -> Tuple[float, int]:
    """
    The median wall clock time of `repetitions` runs after `warmup` untimed runs, and the call count of the last.
    """
    for _ in range(warmup):
        run()

    timings = []
    calls = 0

    for _ in range(repetitions):
        start = time.perf_counter()
        calls = run()
        timings.append(time.perf_counter() - start)

    return float(np.median(timings)), calls


def bench(
    kernel: str,
    sweep: str,
    fixed: Optional[Sequence[str]] = None,
    out: Optional[TextIO] = None,
) -> List[Tuple[str, int, float, int]]:
    """
    Times a kernel over a sweep of one parameter and writes the CSV rows
    `parameter,value,median_seconds,engine_calls`.

    Parameters
    ----------
    kernel
        One of `banded`, `banded-rep` and `sampler`.
    sweep
        The varying parameter and its values, e.g. `n=500:2000:500`.
    fixed
        Further parameters held fixed, e.g. `["w=3"]`.
    out
        The stream the CSV is written to, stdout by default.
    """
    if kernel not in RUNS:
        raise exc.FormatException(
            f"The kernel must be one of {', '.join(RUNS)}, not {kernel}."
        )

    name, values = parse_sweep(sweep)
    params = dict(KERNEL_DEFAULTS[kernel])

    for key, value in [(name, None)] + list(parse_set(fixed).items()):
        if key not in params:
            raise exc.FormatException(
                f"The {kernel} kernel has parameters {', '.join(params)}, not {key}."
            )
        if value is not None:
            params[key] = value

    repetitions = setting("bench", "repetitions", 5)
    warmup = setting("bench", "warmup", 1)

    writer = csv.writer(out or sys.stdout, lineterminator="\n")
    writer.writerow(HEADER)

    rows = []

    for value in values:

        params[name] = value

        median, calls = time_run(
            run=RUNS[kernel](params), repetitions=repetitions, warmup=warmup
        )

        logger.info("%s kernel at %s=%d: median %.6e s.", kernel, name, value, median)

        row = (name, value, median, calls)
        writer.writerow((name, value, f"{median:.15g}", calls))
        rows.append(row)

    return rows
