import io

import pytest

from autogbts import exc
from autogbts.cli import bench


class TestParseSweep:
    def test__range_is_inclusive(self):

        assert bench.parse_sweep("n=500:2000:500") == ("n", [500, 1000, 1500, 2000])
        assert bench.parse_sweep("w=1:3") == ("w", [1, 2, 3])

    def test__list(self):

        assert bench.parse_sweep(" c = 1,2,4") == ("c", [1, 2, 4])

    def test__malformed__raises_exception(self):

        for text in ("n", "n=1:2:0", "n=5:1", "n=a,b", "=1,2", "n=1=2"):
            with pytest.raises(exc.FormatException):
                bench.parse_sweep(text)


class TestParseSet:
    def test__fixed_parameters(self):

        assert bench.parse_set(None) == {}
        assert bench.parse_set(["w=3", "seed=2"]) == {"w": 3, "seed": 2}

        with pytest.raises(exc.FormatException):
            bench.parse_set(["w"])


class TestBench:
    def test__rows_and_csv(self):

        out = io.StringIO()

        rows = bench.bench(kernel="banded", sweep="n=8,16", fixed=["w=2"], out=out)

        lines = out.getvalue().splitlines()

        assert lines[0] == ",".join(bench.HEADER)
        assert [row[:2] for row in rows] == [("n", 8), ("n", 16)]
        assert all(row[2] >= 0.0 and row[3] == 1 for row in rows)
        assert len(lines) == 3

    def test__repetition_kernel(self):

        rows = bench.bench(kernel="banded-rep", sweep="c=1,2", fixed=["n=6", "w=1"], out=io.StringIO())

        assert [row[1] for row in rows] == [1, 2]

    def test__sampler_kernel_counts_hafnian_calls(self):

        rows = bench.bench(kernel="sampler", sweep="M=2,3", fixed=["D=1", "c=2"], out=io.StringIO())

        for (_, modes, _, calls) in rows:
            assert 0 < calls <= modes * 2

    def test__invalid_kernel_or_parameter__raises_exception(self):

        with pytest.raises(exc.FormatException):
            bench.bench(kernel="ryser", sweep="n=1")

        with pytest.raises(exc.FormatException):
            bench.bench(kernel="banded", sweep="n=4", fixed=["c=2"])


class TestScaling:
    def test__banded_kernel_is_linear_in_dimension(self):

        timings = {}

        for n in (1000, 2000):
            run = bench.banded_run_from({"n": n, "w": 3, "seed": 0})
            timings[n], _ = bench.time_run(run=run, repetitions=7, warmup=2)

        assert 1.5 <= timings[2000] / timings[1000] <= 2.5

    def test__banded_kernel_grows_at_most_4_to_the_bandwidth(self):

        timings = {}

        for w in range(2, 7):
            run = bench.banded_run_from({"n": 400, "w": w, "seed": 0})
            timings[w], _ = bench.time_run(run=run, repetitions=7, warmup=2)

        for w in range(2, 6):
            assert timings[w + 1] / timings[w] <= 5.0
