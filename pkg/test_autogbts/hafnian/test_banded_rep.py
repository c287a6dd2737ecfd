import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import autogbts as ag
from autogbts import exc
from autogbts.hafnian import banded_rep
from autogbts.mock import fixtures


class TestLhafBandedRep:
    def test__unit_repetitions_agree_with_banded(self, chain_matrix):

        assert ag.lhaf_banded_rep(chain_matrix, w=1, reps=[1] * 5) == pytest.approx(292.0, 1.0e-12)

        matrix = fixtures.make_random_symmetric(n=10, w=2, seed=5)

        assert ag.lhaf_banded_rep(matrix, w=2, reps=ag.RepetitionVector.ones(10)) == pytest.approx(
            ag.lhaf_banded(matrix, w=2), rel=1.0e-10
        )

    def test__doubled_edge(self):

        x = 0.7 + 0.2j
        matrix = ag.ComplexMatrix([[0.0, x], [x, 0.0]])

        assert ag.lhaf_banded_rep(matrix, w=1, reps=[2, 2]) == pytest.approx(2.0 * x ** 2, 1.0e-12)
        assert ag.lhaf_banded_rep(matrix, w=1, reps=[2, 1]) == 0.0

    def test__single_index_gives_t_poly(self):

        a = 0.4 - 0.3j

        for k in range(8):
            assert ag.lhaf_banded_rep(ag.ComplexMatrix([[a]]), w=0, reps=[k]) == pytest.approx(
                ag.t_poly(k, a), rel=1.0e-12, abs=1.0e-15
            )

    def test__loop_weights_replace_the_repeated_diagonal(self):

        matrix = fixtures.make_random_symmetric(n=5, w=1, seed=4)
        loops = np.array([0.3 + 0.1j, -0.2j, 0.5, 0.1 - 0.4j, -0.3])

        for counts in ([2, 0, 1, 3, 1], [1, 2, 2, 1, 0], [3, 1, 0, 0, 2]):

            extended = ag.fdiag(ag.repeat_pattern(matrix, counts), np.repeat(loops, counts))

            assert ag.lhaf_banded_rep(matrix, w=1, reps=counts, loops=loops) == pytest.approx(
                ag.lhaf_brute(extended), rel=1.0e-10
            )

    def test__single_index_with_loop_weight(self):

        a = 0.4 - 0.3j
        g = 0.9 + 0.2j

        for k in range(6):
            assert ag.lhaf_banded_rep(
                ag.ComplexMatrix([[a]]), w=0, reps=[k], loops=[g]
            ) == pytest.approx(ag.t_poly(k, a, loop=g), rel=1.0e-12, abs=1.0e-15)

    def test__all_zero_repetitions_give_1(self, chain_matrix):

        assert ag.lhaf_banded_rep(chain_matrix, w=1, reps=[0] * 5) == 1.0

    def test__zero_counts_delete_indexes(self, chain_matrix):

        value = ag.lhaf_banded_rep(chain_matrix, w=1, reps=[1, 0, 2, 0, 1])
        expected = ag.lhaf_brute(ag.repeat_pattern(chain_matrix, [1, 0, 2, 0, 1]))

        assert value == pytest.approx(expected, rel=1.0e-12)

    def test__length_mismatch__raises_exception(self, chain_matrix):

        with pytest.raises(exc.MatrixException):
            ag.lhaf_banded_rep(chain_matrix, w=1, reps=[1, 1])

        with pytest.raises(exc.MatrixException):
            ag.lhaf_banded_rep(chain_matrix, w=1, reps=[1] * 5, loops=[1.0, 2.0])

    def test__declared_bandwidth_below_measured__raises_exception(self, chain_matrix):

        with pytest.raises(exc.HafnianException):
            ag.lhaf_banded_rep(chain_matrix, w=0, reps=[2] * 5)

    @settings(max_examples=40, deadline=None)
    @given(data=st.data(), n=st.integers(min_value=1, max_value=5), w=st.integers(min_value=0, max_value=2))
    def test__agrees_with_brute_force_on_repeated_matrix(self, data, n, w):

        matrix = fixtures.make_random_symmetric(n=n, w=w, seed=n + 7 * w)
        counts = data.draw(
            st.lists(st.integers(min_value=0, max_value=3), min_size=n, max_size=n).filter(
                lambda counts: sum(counts) <= 12
            )
        )

        expected = ag.lhaf_brute(ag.repeat_pattern(matrix, counts))
        value = ag.lhaf_banded_rep(matrix, w=w, reps=counts)

        assert abs(value - expected) <= 1.0e-9 * (1.0 + abs(expected))


class TestConvolve:
    def test__delta_is_the_identity(self):

        values = np.random.default_rng(1).standard_normal((3, 2, 4)) + 0.0j
        table = ag.SubhafnianTableRep(start=2, stop=4, bounds=(2, 1, 3), values=values)
        delta = ag.SubhafnianTableRep.delta(start=2, stop=4, bounds=(2, 1, 3))

        assert ag.convolve(table, delta).values == pytest.approx(values, 1.0e-14)
        assert ag.convolve(delta, table, method="fft").values == pytest.approx(values, abs=1.0e-12)

    def test__one_dimensional_truncated_product(self):

        first = ag.SubhafnianTableRep(start=1, stop=1, bounds=(2,), values=[1.0, 1.0, 0.0])

        assert list(ag.convolve(first, first).values) == [1.0, 2.0, 1.0]

        first = ag.SubhafnianTableRep(start=1, stop=1, bounds=(2,), values=[1.0, 1.0, 1.0])

        assert list(ag.convolve(first, first).values) == [1.0, 2.0, 3.0]

    def test__fft_agrees_with_direct(self):

        rng = np.random.default_rng(3)
        bounds = (3, 2, 4)

        first, second = (
            ag.SubhafnianTableRep(
                start=1,
                stop=3,
                bounds=bounds,
                values=rng.standard_normal((4, 3, 5)) + 1j * rng.standard_normal((4, 3, 5)),
            )
            for _ in range(2)
        )

        direct = ag.convolve(first, second, method="direct")
        fft = ag.convolve(first, second, method="fft")

        assert fft.values == pytest.approx(direct.values, abs=1.0e-12)

    def test__window_mismatch__raises_exception(self):

        first = ag.SubhafnianTableRep.delta(start=1, stop=2, bounds=(1, 1))
        second = ag.SubhafnianTableRep.delta(start=2, stop=3, bounds=(1, 1))

        with pytest.raises(exc.HafnianException):
            ag.convolve(first, second)

        with pytest.raises(exc.HafnianException):
            ag.convolve(first, first, method="matrix")

    def test__shape_mismatch__raises_exception(self):

        with pytest.raises(exc.HafnianException):
            ag.SubhafnianTableRep(start=1, stop=1, bounds=(2,), values=[1.0, 0.0])


class TestGTable:
    def test__isolated_index_gives_scaled_t_poly(self):

        array = np.array([[0.5 + 0.0j]])

        values = banded_rep.g_table_from(
            array=array, loops=np.diagonal(array), counts=(4,), t=0, start=0, w=0
        )

        for k in range(5):
            assert values[k] == pytest.approx(ag.t_poly(k, 0.5) / math.factorial(k), 1.0e-12)

    def test__loops_and_self_pairings_weighted_apart(self):

        array = np.array([[0.5 + 0.0j]])
        loops = np.array([0.2 - 0.1j])

        values = banded_rep.g_table_from(array=array, loops=loops, counts=(4,), t=0, start=0, w=0)

        assert values[1] == pytest.approx(0.2 - 0.1j, 1.0e-12)
        assert values[2] == pytest.approx(((0.2 - 0.1j) ** 2 + 0.5) / 2.0, 1.0e-12)

        for k in range(5):
            assert values[k] == pytest.approx(
                ag.t_poly(k, 0.5, loop=0.2 - 0.1j) / math.factorial(k), 1.0e-12
            )

    def test__edge_weights_only_below_the_saturated_count(self):

        x = 2.0
        array = np.array([[0.0, x], [x, 0.0]], dtype=np.complex128)

        values = banded_rep.g_table_from(
            array=array, loops=np.diagonal(array), counts=(2, 2), t=1, start=0, w=1
        )

        assert values.shape == (3, 3)
        assert values[0, 0] == 1.0
        assert values[1, 1] == x
        assert values[2, 2] == pytest.approx(x ** 2 / 2.0, 1.0e-12)
        assert values[1, 0] == 0.0
        assert values[0, 1] == 0.0


class TestRepTables:
    def test__every_entry_is_a_scaled_subhafnian(self):

        matrix = fixtures.make_random_symmetric(n=5, w=1, seed=2)
        counts = [2, 1, 3, 2, 1]

        for table in ag.rep_tables(matrix, w=1, reps=counts):

            before = [counts[index - 1] for index in range(1, table.start)]

            for d in np.ndindex(*table.shape):

                e = before + list(d) + [0] * (5 - table.stop)
                expected = ag.lhaf_brute(ag.repeat_pattern(matrix, e)) / math.prod(
                    math.factorial(count) for count in e
                )

                assert table.value_of(d) == pytest.approx(expected, rel=1.0e-10, abs=1.0e-12)

    def test__windows_slide_over_the_compacted_indexes(self, chain_matrix):

        tables = list(ag.rep_tables(chain_matrix, w=1, reps=[1, 0, 2, 2, 1]))

        assert len(tables) == 4
        assert tables[-1].window == range(2, 5)
        assert tables[-1].bounds == (2, 2, 1)

    def test__value_outside_bounds__raises_exception(self):

        table = ag.SubhafnianTableRep.delta(start=1, stop=1, bounds=(2,))

        with pytest.raises(exc.HafnianException):
            table.value_of([3])
