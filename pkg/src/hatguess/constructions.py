"""Constructive winning strategies for specific graph families.

Everything here is deterministic given its inputs: randomness only enters
through explicitly seeded helpers (random saturated matrices, probabilistic
center search).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ParameterError
from .graphs import complete_graph, complete_multipartite, directed_cycle_blowup
from .hamming import EXHAUSTIVE, PROBABILISTIC, TRIVIAL, find_center
from .linear import LinearStrategy
from .saturated import SaturatedMatrix, coloring_to_column
from .strategies import Coloring, TableStrategy


def complete_graph_strategy(n: int) -> TableStrategy:
    """Sum rule on the complete graph at q = n: vertex i bets the total of
    all n colors is i mod n.  Exactly one vertex is right every time."""
    if n < 1:
        raise ParameterError("need n >= 1")
    g = complete_graph(n)
    return TableStrategy.from_function(g, n, lambda v, view: (v - sum(view)) % n)


def watched_width(m: SaturatedMatrix) -> int:
    """Number of watched vertices whose colorings index m's columns."""
    width = 0
    cols = 1
    while cols < m.l:
        cols *= m.q
        width += 1
    if cols != m.l:
        raise ParameterError(f"column count {m.l} is not a power of {m.q}")
    return width


def defeated_set(m: SaturatedMatrix, y) -> list[Coloring]:
    """Colorings x of the watched part on which every row's guess misses y:
    row i's guess is the matrix entry in column x."""
    if len(y) != m.n:
        raise ParameterError("y must assign one color per matrix row")
    width = watched_width(m)
    out = []
    for x in itertools.product(range(m.q), repeat=width):
        col = coloring_to_column(x, m.q)
        if all(m.rows[i][col] != y[i] for i in range(m.n)):
            out.append(x)
    return out


def bipartite_from_saturated(m: int, n: int, q: int, mat: SaturatedMatrix) -> TableStrategy:
    """Winning strategy for K_{m,n} from an n x q^m (m+1)-saturated matrix.

    The size-n part guesses matrix entries in the column indexed by the
    left coloring; saturation caps the left colorings that defeat the whole
    right part at m, so each left vertex can guess the coordinate of a
    diagonal center covering them all.
    """
    if mat.q != q or mat.n != n or mat.t != m + 1 or mat.l != q**m:
        raise ParameterError(
            f"need an {n} x {q}^{m} matrix over {q} colors with t = {m + 1}"
        )
    ok, viol = _recheck(mat)
    if not ok:
        raise ParameterError(f"matrix fails saturation re-check at columns {viol}")
    g = complete_multipartite([m, n])
    centers = {}
    for y in itertools.product(range(q), repeat=n):
        bad = defeated_set(mat, y)
        if len(bad) > m:
            raise AssertionError(f"saturation bound broken: {len(bad)} > {m} colorings defeat {y}")
        centers[y] = find_center(bad, q, TRIVIAL, m=m).center

    def fn(v, view):
        if v < m:
            return centers[view][v]
        return mat.rows[v - m][coloring_to_column(view, q)]

    return TableStrategy.from_function(g, q, fn)


def _recheck(mat: SaturatedMatrix):
    from .saturated import is_t_saturated

    return is_t_saturated(mat.rows, mat.q, mat.t)


@dataclass(frozen=True)
class PartialColoringSet:
    """Deduplicated, sorted colorings over some vertex range, with suffix
    lookup: suffix(y) lists the prefixes x with (x, y) in the set."""

    q: int
    members: tuple[Coloring, ...]

    def __post_init__(self):
        if self.members:
            width = len(self.members[0])
            for w in self.members:
                if len(w) != width:
                    raise ParameterError("colorings have different lengths")
                if any(not 0 <= c < self.q for c in w):
                    raise ParameterError("color out of range")

    @classmethod
    def normalize(cls, q: int, colorings) -> "PartialColoringSet":
        return cls(q, tuple(sorted(set(tuple(c) for c in colorings))))

    def __len__(self) -> int:
        return len(self.members)

    def suffix(self, y) -> tuple[Coloring, ...]:
        y = tuple(y)
        k = len(y)
        return tuple(w[:-k] for w in self.members if w[-k:] == y)


def multipartite_partial(m: int, r: int, q: int, colorings) -> TableStrategy:
    """Strategy on the r-partite graph with equal parts of size m that is
    correct on every coloring of the given set (at most m^r of them).

    Recursive: the last part guesses a diagonal center of the at most m
    "heavy" last-part colorings (those compatible with more than m^(r-1)
    prefixes); on a light last-part coloring the remaining parts recurse on
    the compatible prefixes.
    """
    if m < 1 or r < 1:
        raise ParameterError("need m >= 1 and r >= 1")
    cset = (
        colorings
        if isinstance(colorings, PartialColoringSet)
        else PartialColoringSet.normalize(q, colorings)
    )
    if cset.members and len(cset.members[0]) != r * m:
        raise ParameterError(f"colorings must have length r*m = {r * m}")
    if len(cset) > m**r:
        raise ParameterError(f"at most m^r = {m**r} colorings supported, got {len(cset)}")
    g = complete_multipartite([m] * r)

    if r == 1:
        center = find_center(cset.members, q, TRIVIAL, m=m).center
        return TableStrategy.from_function(g, q, lambda v, view: center[v])

    heavy = sorted(
        {w[-m:] for w in cset.members if len(cset.suffix(w[-m:])) > m ** (r - 1)}
    )
    if len(heavy) > m:
        raise AssertionError(f"more than {m} heavy last-part colorings")
    a = find_center(heavy, q, TRIVIAL, m=m).center

    recs: dict[Coloring, TableStrategy] = {}
    for y in itertools.product(range(q), repeat=m):
        if y in heavy:
            continue
        sub = cset.suffix(y)
        if sub:
            recs[y] = multipartite_partial(m, r - 1, q, sub)

    last = (r - 1) * m

    def fn(v, view):
        if v >= last:
            return a[v - last]
        y = view[-m:]
        rec = recs.get(y)
        return rec.guess(v, view[:-m]) if rec is not None else 0

    return TableStrategy.from_function(g, q, fn)


def multipartite_strategy(
    m: int, r: int, n: int, q: int, mat: SaturatedMatrix
) -> TableStrategy:
    """Winning strategy for the r-partite graph with r-1 parts of size m
    and one part of size n, from an n x q^((r-1)m) t-saturated matrix with
    t <= m^(r-1).

    The big part guesses from the matrix; at most t-1 colorings of the
    small parts survive it, few enough for the partial-coloring strategy.
    """
    if r < 2:
        raise ParameterError("need r >= 2")
    if mat.t > m ** (r - 1):
        raise ParameterError(f"need t <= m^(r-1) = {m ** (r - 1)}, got t = {mat.t}")
    if mat.q != q or mat.n != n or mat.l != q ** ((r - 1) * m):
        raise ParameterError(f"need an {n} x {q}^{(r - 1) * m} matrix over {q} colors")
    g = complete_multipartite([m] * (r - 1) + [n])
    last = (r - 1) * m

    recs: dict[Coloring, TableStrategy] = {}
    for y in itertools.product(range(q), repeat=n):
        bad = defeated_set(mat, y)
        if len(bad) > mat.t - 1:
            raise AssertionError(
                f"saturation bound broken: {len(bad)} >= t = {mat.t} colorings defeat {y}"
            )
        recs[y] = multipartite_partial(m, r - 1, q, bad)

    def fn(v, view):
        if v >= last:
            return mat.rows[v - last][coloring_to_column(view, q)]
        y = view[last - m :]
        return recs[y].guess(v, view[: last - m])

    return TableStrategy.from_function(g, q, fn)


def directed_cycle_strategy(
    sizes, q: int, matrices, seed: int = 0
) -> TableStrategy:
    """Winning strategy for the blown-up directed cycle.

    Part i < r-1 guesses from its saturated matrix as a function of the
    part it sees; the last part chases the chain of defeating sets (fewer
    than the product of the saturation levels) and guesses a Hamming
    center of the union, found probabilistically with an exhaustive
    fallback.
    """
    sizes = list(sizes)
    matrices = list(matrices)
    r = len(sizes)
    if len(matrices) != r - 1:
        raise ParameterError(f"need {r - 1} matrices for {r} parts")
    for i, mat in enumerate(matrices):
        if mat.q != q or mat.n != sizes[i] or mat.l != q ** sizes[i + 1]:
            raise ParameterError(
                f"matrix {i} must be {sizes[i]} x {q}^{sizes[i + 1]} over {q} colors"
            )
    t_product = math.prod(mat.t for mat in matrices)
    if t_product > math.exp(sizes[-1] / q):
        raise ParameterError(
            f"saturation product {t_product} exceeds e^(n_r/q) = {math.exp(sizes[-1] / q):.3f}"
        )
    g = directed_cycle_blowup(sizes)
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)

    centers = {}
    for x1 in itertools.product(range(q), repeat=sizes[0]):
        layer = [x1]
        for mat in matrices:
            layer = sorted({w for y in layer for w in defeated_set(mat, y)})
        if len(layer) >= t_product:
            raise AssertionError(
                f"defeating chain has {len(layer)} colorings, expected fewer than {t_product}"
            )
        if not layer:
            centers[x1] = (0,) * sizes[-1]
            continue
        cert = find_center(layer, q, PROBABILISTIC, m=sizes[-1], seed=seed)
        if cert is None:
            cert = find_center(layer, q, EXHAUSTIVE, m=sizes[-1])
        if cert is None:
            raise AssertionError("no Hamming center exists for the defeating chain")
        centers[x1] = cert.center

    def fn(v, view):
        part = next(i for i in range(r) if starts[i] <= v < starts[i + 1])
        if part < r - 1:
            return matrices[part].rows[v - starts[part]][coloring_to_column(view, q)]
        return centers[view][v - starts[part]]

    return TableStrategy.from_function(g, q, fn)


def c4_linear_strategy() -> LinearStrategy:
    """The known affine strategy winning on the 4-cycle with 3 colors:
    rows 3 and 4 are the sum and difference of rows 1 and 2, so whenever
    both miss, either the sum or the difference of their residues hits."""
    A = (
        (1, 1, 0, 1),
        (2, 1, 1, 0),
        (0, 2, 1, 1),
        (2, 0, 2, 1),
    )
    return LinearStrategy(3, A, (0, 0, 0, 0))
