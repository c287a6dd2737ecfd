import itertools
from collections import Counter
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from autogbts import exc

OVERFLOW_TEXT = "#"


class PhotonPattern:
    def __init__(self, counts: Optional[Sequence[int]]):
        """
        The outcome of a threshold sample: the photon count of every mode, or the overflow event `#` when at least
        one detector is overloaded (input `counts=None`).

        Parameters
        ----------
        counts
            The non-negative photon count of every mode, or `None` for the overflow event.
        """
        if counts is not None:

            counts = tuple(counts)

            for count in counts:
                if isinstance(count, bool) or int(count) != count or count < 0:
                    raise exc.FormatException(
                        f"Photon counts must be non-negative integers, but {count} was input."
                    )

            counts = tuple(int(count) for count in counts)

        self._counts = counts

    @classmethod
    def overflow(cls) -> "PhotonPattern":
        return cls(counts=None)

    @property
    def is_overflow(self) -> bool:
        return self._counts is None

    @property
    def counts(self) -> Tuple[int, ...]:
        if self._counts is None:
            raise exc.SamplerException("The overflow event carries no photon counts.")
        return self._counts

    @property
    def total(self) -> int:
        return sum(self.counts)

    def within(self, c: int) -> bool:
        return self.is_overflow or all(count <= c for count in self._counts)

    @property
    def text(self) -> str:
        """
        The sample output format: space separated counts, or `#` for the overflow event.
        """
        if self.is_overflow:
            return OVERFLOW_TEXT
        return " ".join(str(count) for count in self._counts)

    @classmethod
    def from_text(
        cls, text: str, modes: Optional[int] = None, c: Optional[int] = None
    ) -> "PhotonPattern":

        text = text.strip()

        if text == OVERFLOW_TEXT:
            return cls.overflow()

        values = text.replace(",", " ").split()

        try:
            counts = [int(value) for value in values]
        except ValueError:
            raise exc.FormatException(f"'{text}' is not a photon pattern.")

        pattern = cls(counts)

        if modes is not None and len(counts) != modes:
            raise exc.FormatException(
                f"The pattern '{text}' has {len(counts)} counts, but the circuit has {modes} modes."
            )

        if c is not None and not pattern.within(c):
            raise exc.FormatException(
                f"The pattern '{text}' has a count above the detector resolution {c}."
            )

        return pattern

    def __eq__(self, other):
        if not isinstance(other, PhotonPattern):
            return False
        return self._counts == other._counts

    def __hash__(self):
        return hash(self._counts)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __repr__(self):
        return f"PhotonPattern({self.text})"


OVERFLOW = PhotonPattern.overflow()


def sort_key(pattern: PhotonPattern):
    if pattern.is_overflow:
        return 1, ()
    return 0, pattern.counts


def format_pattern(pattern: PhotonPattern) -> str:
    return pattern.text


def parse_pattern(
    text: str, modes: Optional[int] = None, c: Optional[int] = None
) -> PhotonPattern:
    return PhotonPattern.from_text(text=text, modes=modes, c=c)


def box_patterns(modes: int, c: int) -> Iterator[PhotonPattern]:
    """
    Every pattern of [0, c]^M in lexicographic order.
    """
    for counts in itertools.product(range(c + 1), repeat=modes):
        yield PhotonPattern(counts)


def frequency_table(samples: Iterable[PhotonPattern]) -> Dict[PhotonPattern, float]:
    """
    The empirical distribution of a list of samples.
    """
    counter = Counter(samples)
    total = sum(counter.values())

    if total == 0:
        return {}

    return {pattern: count / total for pattern, count in sorted(counter.items())}


def total_variation_distance(
    first: Mapping[PhotonPattern, float], second: Mapping[PhotonPattern, float]
) -> float:
    """
    Half the l1 distance between two distributions over patterns, missing patterns having probability 0.
    """
    patterns = set(first) | set(second)

    return 0.5 * sum(
        abs(first.get(pattern, 0.0) - second.get(pattern, 0.0)) for pattern in patterns
    )
