"""Hamming distance, radius-(m-1) balls, and center finding.

A set of words lies in a ball of radius m-1 around a center exactly when
every word agrees with the center in at least one coordinate; the guessing
constructions use such centers as joint guesses for whole vertex parts.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from .errors import ParameterError

Word = tuple[int, ...]


def lex_rank(word, q: int) -> int:
    """Rank of a word in lexicographic order (first coordinate most
    significant); used to index strategy tables and colorings."""
    r = 0
    for c in word:
        r = r * q + c
    return r


def lex_unrank(rank: int, length: int, q: int) -> Word:
    digits = [0] * length
    for i in range(length - 1, -1, -1):
        rank, digits[i] = divmod(rank, q)
    return tuple(digits)


def hamming_distance(x, y) -> int:
    if len(x) != len(y):
        raise ParameterError("words have different lengths")
    return sum(a != b for a, b in zip(x, y))


@dataclass(frozen=True)
class BallCertificate:
    center: Word
    radius: int
    members: tuple[Word, ...]

    def validate(self) -> bool:
        return all(hamming_distance(w, self.center) <= self.radius for w in self.members)


TRIVIAL = "trivial"
PROBABILISTIC = "probabilistic"
EXHAUSTIVE = "exhaustive"


def find_center(
    vectors,
    q: int,
    mode: str = TRIVIAL,
    m: int | None = None,
    seed: int = 0,
    max_attempts: int | None = None,
) -> BallCertificate | None:
    """Find a center whose radius-(m-1) ball contains all given words.

    trivial:        diagonal center (coordinate i taken from word i, padded
                    with 0); always works for at most m words.
    probabilistic:  uniform random candidates until one fits, up to a retry
                    cap (default 64 * ceil(e^(m/q))); such a center exists
                    whenever there are at most e^(m/q) words.  Returns None
                    when the cap runs out.
    exhaustive:     scans all q^m candidates, returns the lexicographically
                    smallest valid one, or None if no center exists.
    """
    vectors = [tuple(w) for w in vectors]
    if m is None:
        if not vectors:
            raise ParameterError("empty vector set needs an explicit word length")
        m = len(vectors[0])
    for w in vectors:
        if len(w) != m:
            raise ParameterError("words have different lengths")
        if any(not 0 <= c < q for c in w):
            raise ParameterError("word entry out of color range")
    radius = m - 1

    def fits(center) -> bool:
        return all(hamming_distance(w, center) <= radius for w in vectors)

    if mode == TRIVIAL:
        if len(vectors) > m:
            raise ParameterError(f"diagonal center needs at most {m} words, got {len(vectors)}")
        center = tuple(vectors[i][i] if i < len(vectors) else 0 for i in range(m))
        return BallCertificate(center, radius, tuple(vectors))

    if mode == PROBABILISTIC:
        rng = random.Random(seed)
        if max_attempts is None:
            max_attempts = 64 * math.ceil(math.exp(m / q))
        for _ in range(max_attempts):
            center = tuple(rng.randrange(q) for _ in range(m))
            if fits(center):
                return BallCertificate(center, radius, tuple(vectors))
        return None

    if mode == EXHAUSTIVE:
        for center in itertools.product(range(q), repeat=m):
            if fits(center):
                return BallCertificate(center, radius, tuple(vectors))
        return None

    raise ParameterError(f"unknown center-finding mode {mode!r}")
