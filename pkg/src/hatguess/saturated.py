"""t-saturated matrices (perfect hash families).

An n x l matrix over q colors is t-saturated when every choice of t
columns has some row whose restriction to those columns hits all q colors.
Guessing strategies index the columns by colorings of a watched vertex
part; a saturated guess matrix caps how many colorings can defeat the part
simultaneously.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from . import core
from ._io import atomic_write_text
from .errors import FormatError, ParameterError, WorkBudgetError

DEFAULT_CHECK_BUDGET = 10**9
DEFAULT_SEARCH_NODES = 200_000_000


def coloring_to_column(coloring, q: int) -> int:
    """Column index of a watched coloring: vertex 0 least significant."""
    c = 0
    for digit in reversed(coloring):
        c = c * q + digit
    return c


def column_to_coloring(column: int, length: int, q: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        column, d = divmod(column, q)
        out.append(d)
    return tuple(out)


def is_t_saturated(
    rows, q: int, t: int, budget: int = DEFAULT_CHECK_BUDGET
) -> tuple[bool, tuple[int, ...] | None]:
    """Brute-force saturation check.

    Returns (True, None) or (False, first violating column set in
    lexicographic order).  Work is about C(l, t) * n * t elementary checks;
    refuses beyond the budget.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        raise ParameterError("matrix needs at least one row")
    l = len(rows[0])
    if any(len(r) != l for r in rows):
        raise ParameterError("ragged matrix")
    if any(not 0 <= e < q for r in rows for e in r):
        raise ParameterError("entry out of color range")
    if t > l:
        raise ParameterError(f"t={t} exceeds the column count {l}")
    if t < 1:
        raise ParameterError("need t >= 1")
    if math.comb(l, t) * len(rows) * t > budget:
        raise WorkBudgetError(
            f"C({l},{t}) * {len(rows)} * {t} checks exceed the budget {budget}"
        )
    flat = [e for r in rows for e in r]
    violation = core.kernels.saturated_violation(len(rows), l, q, t, flat)
    return (violation is None), violation


@dataclass(frozen=True)
class SaturatedMatrix:
    """A verified t-saturated matrix; construction re-checks saturation."""

    n: int
    l: int
    q: int
    t: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.t < self.q:
            raise ParameterError(f"t-saturated matrices need t >= q (got t={self.t}, q={self.q})")
        if len(self.rows) != self.n or any(len(r) != self.l for r in self.rows):
            raise ParameterError("matrix shape mismatch")
        ok, viol = is_t_saturated(self.rows, self.q, self.t)
        if not ok:
            raise ParameterError(f"matrix is not {self.t}-saturated: columns {viol} fail")

    def entry(self, row: int, col: int) -> int:
        return self.rows[row][col]


def all_columns_matrix(m: int, q: int, t: int) -> SaturatedMatrix:
    """The m x q^m matrix whose column c holds the digits of c (vertex 0
    least significant): every coloring of m watched vertices appears as its
    own column.  Verified t-saturated on construction."""
    l = q**m
    rows = tuple(
        tuple(column_to_coloring(c, m, q)[r] for c in range(l)) for r in range(m)
    )
    return SaturatedMatrix(m, l, q, t, rows)


def random_saturated(
    n: int,
    l: int,
    q: int,
    t: int,
    seed: int,
    retries: int = 16,
    budget: int = DEFAULT_CHECK_BUDGET,
) -> SaturatedMatrix | None:
    """Randomized alteration construction.

    Samples an n x 2l uniform matrix, deletes one column from every bad
    t-subset (highest-index column of each still-intact bad subset, in
    lexicographic subset order), and keeps the first l survivors when
    enough remain.  Retries with seed+1, seed+2, ... up to ``retries``
    times; returns None when every attempt falls short.  Deterministic
    given (parameters, seed).
    """
    if t < q:
        raise ParameterError(f"need t >= q (got t={t}, q={q})")
    if t > l:
        raise ParameterError(f"t={t} exceeds the requested column count {l}")
    if math.comb(2 * l, t) * n * t > budget:
        raise WorkBudgetError("bad-subset scan over the doubled matrix exceeds the budget")
    full = (1 << q) - 1
    for attempt in range(retries):
        rng = random.Random(seed + attempt)
        wide = [[rng.randrange(q) for _ in range(2 * l)] for _ in range(n)]
        alive = [True] * (2 * l)
        for subset in itertools.combinations(range(2 * l), t):
            if not all(alive[c] for c in subset):
                continue
            for row in wide:
                mask = 0
                for c in subset:
                    mask |= 1 << row[c]
                if mask == full:
                    break
            else:
                alive[subset[-1]] = False
        survivors = [c for c in range(2 * l) if alive[c]]
        if len(survivors) < l:
            continue
        keep = survivors[:l]
        rows = tuple(tuple(row[c] for c in keep) for row in wide)
        return SaturatedMatrix(n, l, q, t, rows)
    return None


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "none" | "timeout"
    matrix: SaturatedMatrix | None
    nodes: int


def _min_rows_bound(l: int, q: int, t: int) -> int:
    """Counting lower bound on the row count, valid for t == q: one row
    covers at most max(prod of part sizes) of the C(l, q) column subsets."""
    if t != q:
        return 1
    base, extra = divmod(l, q)
    per_row = (base + 1) ** extra * base ** (q - extra)
    if per_row == 0:
        return 1
    return max(1, math.ceil(math.comb(l, q) / per_row))


def search_saturated(
    n_max: int, l: int, q: int, t: int, node_budget: int = DEFAULT_SEARCH_NODES
) -> SearchResult:
    """Exhaustive search for a t-saturated matrix with the fewest rows.

    Tries row counts upward (from a counting lower bound when t == q);
    within a row count, backtracks over column values in nondecreasing
    order with the first column pinned to zeros.  Returns the first matrix
    found (minimal row count), "none" if no n <= n_max works, or "timeout"
    when the node budget runs out.
    """
    if t < q:
        raise ParameterError(f"need t >= q (got t={t}, q={q})")
    if t > l:
        raise ParameterError(f"t={t} exceeds the column count {l}")
    if n_max < 1:
        raise ParameterError("need n_max >= 1")
    total_nodes = 0
    for n in range(_min_rows_bound(l, q, t), n_max + 1):
        status, flat, nodes = core.kernels.search_saturated_matrix(
            n, l, q, t, node_budget - total_nodes
        )
        total_nodes += nodes
        if status == core.ABORTED:
            return SearchResult("timeout", None, total_nodes)
        if status == core.FOUND:
            rows = tuple(tuple(flat[r * l : (r + 1) * l]) for r in range(n))
            return SearchResult("found", SaturatedMatrix(n, l, q, t, rows), total_nodes)
    return SearchResult("none", None, total_nodes)


# --- text format -------------------------------------------------------------
#
# satmat v1 <n> <l> <q> <t>
# then n lines of l space-separated entries.


def format_matrix(m: SaturatedMatrix) -> str:
    lines = [f"satmat v1 {m.n} {m.l} {m.q} {m.t}"]
    lines.extend(" ".join(str(e) for e in row) for row in m.rows)
    return "\n".join(lines) + "\n"


def save_matrix(path: str, m: SaturatedMatrix) -> None:
    atomic_write_text(path, format_matrix(m))


def parse_matrix(text: str) -> SaturatedMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix file")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "satmat" or head[1] != "v1":
        raise FormatError("missing 'satmat v1' header")
    try:
        n, l, q, t = (int(x) for x in head[2:])
    except ValueError as exc:
        raise FormatError("bad header numbers") from exc
    if len(lines) != n + 1:
        raise FormatError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            row = tuple(int(x) for x in ln.split())
        except ValueError as exc:
            raise FormatError(f"bad matrix row {ln!r}") from exc
        if len(row) != l:
            raise FormatError(f"expected {l} entries per row")
        rows.append(row)
    try:
        return SaturatedMatrix(n, l, q, t, tuple(rows))
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def load_matrix(path: str) -> SaturatedMatrix:
    with open(path, encoding="utf-8") as handle:
        return parse_matrix(handle.read())
