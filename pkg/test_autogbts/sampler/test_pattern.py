import pytest

import autogbts as ag
from autogbts import exc


class TestPhotonPattern:
    def test__counts_and_text(self):

        pattern = ag.PhotonPattern([0, 2, 1])

        assert pattern.counts == (0, 2, 1)
        assert pattern.total == 3
        assert pattern.text == "0 2 1"
        assert not pattern.is_overflow
        assert pattern.within(2)
        assert not pattern.within(1)

    def test__overflow_event(self):

        assert ag.OVERFLOW.is_overflow
        assert ag.OVERFLOW.text == "#"
        assert ag.OVERFLOW == ag.PhotonPattern.overflow()
        assert ag.OVERFLOW.within(0)

        with pytest.raises(exc.SamplerException):
            ag.OVERFLOW.counts

    def test__equality_and_hash(self):

        assert ag.PhotonPattern([1, 0]) == ag.PhotonPattern((1, 0))
        assert ag.PhotonPattern([1, 0]) != ag.PhotonPattern([0, 1])
        assert ag.PhotonPattern([1, 0]) != ag.OVERFLOW
        assert len({ag.PhotonPattern([1, 0]), ag.PhotonPattern([1, 0]), ag.OVERFLOW}) == 2

    def test__sorted_lexicographically_with_overflow_last(self):

        patterns = [ag.OVERFLOW, ag.PhotonPattern([1, 0]), ag.PhotonPattern([0, 2])]

        assert sorted(patterns) == [ag.PhotonPattern([0, 2]), ag.PhotonPattern([1, 0]), ag.OVERFLOW]

    def test__negative_or_fractional_counts__raise_exception(self):

        with pytest.raises(exc.FormatException):
            ag.PhotonPattern([1, -1])

        with pytest.raises(exc.FormatException):
            ag.PhotonPattern([0.5])


class TestParsePattern:
    def test__parse_and_format(self):

        assert ag.parse_pattern("0 2 1") == ag.PhotonPattern([0, 2, 1])
        assert ag.parse_pattern(" 3,0 ") == ag.PhotonPattern([3, 0])
        assert ag.parse_pattern("#") == ag.OVERFLOW
        assert ag.format_pattern(ag.parse_pattern("1 1")) == "1 1"

    def test__checks_modes_and_resolution(self):

        assert ag.parse_pattern("1 2", modes=2, c=2) == ag.PhotonPattern([1, 2])

        with pytest.raises(exc.FormatException):
            ag.parse_pattern("1 2", modes=3)

        with pytest.raises(exc.FormatException):
            ag.parse_pattern("1 3", modes=2, c=2)

        with pytest.raises(exc.FormatException):
            ag.parse_pattern("1 x")


class TestDistributions:
    def test__box_patterns(self):

        patterns = list(ag.box_patterns(modes=2, c=2))

        assert len(patterns) == 9
        assert patterns[0] == ag.PhotonPattern([0, 0])
        assert patterns[1] == ag.PhotonPattern([0, 1])
        assert patterns[-1] == ag.PhotonPattern([2, 2])

    def test__frequency_table(self):

        samples = [ag.OVERFLOW, ag.PhotonPattern([1]), ag.PhotonPattern([0]), ag.PhotonPattern([1])]

        table = ag.frequency_table(samples)

        assert list(table) == [ag.PhotonPattern([0]), ag.PhotonPattern([1]), ag.OVERFLOW]
        assert table[ag.PhotonPattern([1])] == 0.5
        assert table[ag.OVERFLOW] == 0.25
        assert ag.frequency_table([]) == {}

    def test__total_variation_distance(self):

        first = {ag.PhotonPattern([0]): 0.5, ag.PhotonPattern([1]): 0.5}
        second = {ag.PhotonPattern([0]): 0.25, ag.OVERFLOW: 0.75}

        assert ag.total_variation_distance(first, first) == 0.0
        assert ag.total_variation_distance(first, second) == pytest.approx(0.75, 1.0e-12)
        assert ag.total_variation_distance(second, first) == pytest.approx(0.75, 1.0e-12)
