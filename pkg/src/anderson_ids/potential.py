"""Bernoulli potential sampling and run-length (gap) statistics.

A realization of the potential is a 0/1 array over sites ``1 .. L``.  The
geometry that controls the low-energy spectrum is the sequence of gaps
``Y_1, Y_2, ...``: the runs of empty sites between consecutive occupied ones.
Under the Bernoulli(p) measure the gaps are i.i.d. geometric,
``P(Y = k) = (1-p)^k p`` for ``k >= 0``, and the position of the n-th
occupied site is ``L_n = n + Y_1 + ... + Y_n``.

Randomness comes from the counter-based Philox generator keyed by
``(master, stream)``, so realizations are reproducible and independent
streams can be drawn in any order.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Seed:
    """Key for the Philox stream: ``master`` selects the experiment,
    ``stream`` the independent substream (one per repetition)."""

    master: int
    stream: int = 0

    def __post_init__(self):
        for name, value in (("master", self.master), ("stream", self.stream)):
            if not isinstance(value, int):
                raise ValueError(f"{name} must be an int, got {value!r}")
            if not 0 <= value < 2 ** 64:
                raise ValueError(f"{name} must fit in uint64, got {value}")

    def with_stream(self, stream: int) -> "Seed":
        return Seed(self.master, stream)


def generator(seed: Seed) -> np.random.Generator:
    key = np.array([seed.master, seed.stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class PotentialRealization:
    """A finite 0/1 potential over sites ``1 .. length``."""

    p: float
    values: np.ndarray

    def __post_init__(self):
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must lie strictly between 0 and 1, got {self.p}")
        values = np.ascontiguousarray(self.values, dtype=np.uint8)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a nonempty 1d array")
        if values.size and int(values.max(initial=0)) > 1:
            raise ValueError("values must contain only 0 and 1")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def length(self) -> int:
        return int(self.values.size)


def sample_potential(p: float, length: int, seed: Seed) -> PotentialRealization:
    """Draw an i.i.d. Bernoulli(p) potential over ``length`` sites."""
    if not (isinstance(length, int) and length >= 1):
        raise ValueError(f"length must be a positive integer, got {length!r}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    rng = generator(seed)
    values = (rng.random(length) < p).astype(np.uint8)
    return PotentialRealization(p=p, values=values)


@dataclass(frozen=True)
class GapStatistics:
    """Run-length decomposition of a realization.

    ``gaps[i]`` is the number of empty sites before the (i+1)-th occupied
    site, ``ones_positions`` are the 1-indexed positions of occupied sites
    (so ``ones_positions[i] = (i+1) + gaps[0] + ... + gaps[i]``), and
    ``trailing_zeros`` counts empty sites after the last occupied one.
    """

    gaps: np.ndarray
    ones_positions: np.ndarray
    y_max: int
    trailing_zeros: int

    def __post_init__(self):
        gaps = np.ascontiguousarray(self.gaps, dtype=np.int64)
        ones = np.ascontiguousarray(self.ones_positions, dtype=np.int64)
        if gaps.shape != ones.shape or gaps.ndim != 1:
            raise ValueError("gaps and ones_positions must be 1d of equal length")
        if self.trailing_zeros < 0:
            raise ValueError("trailing_zeros must be nonnegative")
        gaps.setflags(write=False)
        ones.setflags(write=False)
        object.__setattr__(self, "gaps", gaps)
        object.__setattr__(self, "ones_positions", ones)

    @property
    def n(self) -> int:
        """Number of occupied sites."""
        return int(self.gaps.size)

    @property
    def last_one_position(self) -> int:
        """Position ``L_n`` of the final occupied site, 0 when there is none."""
        if self.gaps.size == 0:
            return 0
        return int(self.ones_positions[-1])

    @property
    def total_length(self) -> int:
        return self.last_one_position + self.trailing_zeros


def gap_statistics(realization: PotentialRealization) -> GapStatistics:
    """Decompose a realization into its gap sequence."""
    ones = np.flatnonzero(realization.values) + 1
    if ones.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return GapStatistics(gaps=empty, ones_positions=empty.copy(),
                             y_max=0, trailing_zeros=realization.length)
    gaps = np.diff(ones, prepend=0) - 1
    return GapStatistics(gaps=gaps.astype(np.int64),
                         ones_positions=ones.astype(np.int64),
                         y_max=int(gaps.max()),
                         trailing_zeros=realization.length - int(ones[-1]))


def reconstruct_potential(stats: GapStatistics, p: float) -> PotentialRealization:
    """Inverse of :func:`gap_statistics`."""
    length = stats.total_length
    if length == 0:
        raise ValueError("cannot reconstruct an empty realization")
    values = np.zeros(length, dtype=np.uint8)
    if stats.n:
        values[stats.ones_positions - 1] = 1
    return PotentialRealization(p=p, values=values)


def sample_gaps(p: float, n: int, seed: Seed) -> GapStatistics:
    """Draw ``n`` i.i.d. geometric gaps directly, without storing the chain.

    Uses inversion: ``Y = floor(ln(U) / ln(1-p))`` with ``U`` uniform on
    (0, 1] has ``P(Y = k) = (1-p)^k p``.  The implied realization occupies
    sites up to ``L_n`` with no trailing zeros.
    """
    if not (isinstance(n, int) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must lie strictly between 0 and 1, got {p}")
    rng = generator(seed)
    u = 1.0 - rng.random(n)
    gaps = np.floor(np.log(u) / math.log(1.0 - p)).astype(np.int64)
    ones = np.cumsum(gaps + 1)
    return GapStatistics(gaps=gaps, ones_positions=ones,
                         y_max=int(gaps.max()), trailing_zeros=0)


def ybar_ratio(p: float, n: int, seed: Seed) -> float:
    """Ratio of the largest of ``n`` gaps to its ``ln(n) / |ln(1-p)|`` limit.

    The maximum gap grows like ``ln(n) / |ln(1-p)|`` almost surely, so this
    ratio tends to 1.
    """
    if not (isinstance(n, int) and n >= 2):
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    stats = sample_gaps(p, n, seed)
    return stats.y_max * abs(math.log(1.0 - p)) / math.log(n)
