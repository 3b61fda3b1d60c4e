"""Table strategies and exhaustive win verification.

A table strategy assigns every vertex a total lookup table from the colors
of its visible neighbors (ascending vertex order) to a guess.  A strategy
wins when every one of the q^n colorings has at least one vertex whose
guess equals its own color; verification enumerates them all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import core
from ._io import atomic_write_text
from .errors import FormatError, NotReducibleError, ParameterError, StrategyMismatchError
from .graphs import UNDIRECTED, SightGraph, induced_subgraph
from .hamming import lex_rank, lex_unrank

Coloring = tuple[int, ...]

DEFAULT_COLORING_BUDGET = 10**9


@dataclass(frozen=True)
class TableStrategy:
    """q, per-vertex neighbor lists, and per-vertex flat guess tables.

    Table v has q^deg(v) entries indexed by the lexicographic rank of the
    view tuple; ``guess`` does the tuple-to-rank translation.
    """

    q: int
    neighbors: tuple[tuple[int, ...], ...]
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.q < 1:
            raise ParameterError("need q >= 1")
        if len(self.tables) != len(self.neighbors):
            raise ParameterError("one table per vertex required")
        for v, tab in enumerate(self.tables):
            if len(tab) != self.q ** len(self.neighbors[v]):
                raise ParameterError(f"table of vertex {v} is not total")
            if any(not 0 <= g < self.q for g in tab):
                raise ParameterError(f"guess out of range in table of vertex {v}")

    @property
    def n(self) -> int:
        return len(self.neighbors)

    def guess(self, v: int, view) -> int:
        return self.tables[v][lex_rank(view, self.q)]

    def guess_on(self, coloring, v: int) -> int:
        """Guess of v under a full coloring."""
        return self.tables[v][lex_rank([coloring[u] for u in self.neighbors[v]], self.q)]

    def matches(self, g: SightGraph) -> bool:
        return self.neighbors == g.sees

    @classmethod
    def from_function(cls, g: SightGraph, q: int, fn) -> "TableStrategy":
        """Tabulate fn(v, view_tuple) -> guess over all views."""
        tables = []
        for v in range(g.n):
            d = len(g.sees[v])
            tables.append(
                tuple(fn(v, lex_unrank(r, d, q)) for r in range(q**d))
            )
        return cls(q, g.sees, tuple(tables))


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "wins" | "loses" | "timeout"
    witness: Coloring | None = None

    @property
    def wins(self) -> bool:
        return self.outcome == "wins"


def _check_match(g: SightGraph, s: TableStrategy, q: int) -> None:
    if s.q != q:
        raise ParameterError(f"strategy is for q={s.q}, asked about q={q}")
    if not s.matches(g):
        raise StrategyMismatchError("strategy tables do not fit the graph's neighborhoods")


def verify_wins(
    g: SightGraph,
    s: TableStrategy,
    q: int,
    budget: int = DEFAULT_COLORING_BUDGET,
    workers: int = 1,
) -> Verdict:
    """Enumerate all q^n colorings; wins iff someone is right on each one.

    On a loss the lexicographically smallest defeating coloring is the
    witness.  Refuses (timeout verdict) when q^n exceeds the budget.
    """
    _check_match(g, s, q)
    total = q**g.n
    if total > budget:
        return Verdict("timeout")
    if workers > 1:
        rank = _parallel_first_bad(g, s, q, workers)
    else:
        rank = core.kernels.first_bad_coloring(g.n, q, g.sees, s.tables, 0, total)
    if rank < 0:
        return Verdict("wins")
    return Verdict("loses", lex_unrank(rank, g.n, q))


def _first_bad_range(args):
    n, q, neighbors, tables, start, stop = args
    return core.kernels.first_bad_coloring(n, q, neighbors, tables, start, stop)


def _parallel_first_bad(g: SightGraph, s: TableStrategy, q: int, workers: int) -> int:
    import multiprocessing

    total = q**g.n
    step = -(-total // workers)
    chunks = [
        (g.n, q, g.sees, s.tables, lo, min(lo + step, total))
        for lo in range(0, total, step)
    ]
    with multiprocessing.Pool(workers) as pool:
        results = pool.map(_first_bad_range, chunks)
    hits = [r for r in results if r >= 0]
    return min(hits) if hits else -1


def find_all_bad_colorings(
    g: SightGraph, s: TableStrategy, q: int, budget: int = DEFAULT_COLORING_BUDGET
) -> list[Coloring]:
    """Every coloring on which all vertices guess wrong, lexicographic."""
    _check_match(g, s, q)
    total = q**g.n
    if total > budget:
        raise ParameterError(f"q^n = {total} exceeds the coloring budget {budget}")
    ranks = core.kernels.bad_colorings(g.n, q, g.sees, s.tables, 0, total)
    return [lex_unrank(r, g.n, q) for r in ranks]


def correct_count_range(g: SightGraph, s: TableStrategy, q: int) -> tuple[int, int]:
    """(min, max) number of simultaneously correct vertices over all colorings."""
    _check_match(g, s, q)
    return core.kernels.correct_count_range(g.n, q, g.sees, s.tables)


def lift_strategy(
    h: SightGraph, s_h: TableStrategy, g: SightGraph, embedding
) -> TableStrategy:
    """Transport a strategy along a subgraph embedding.

    embedding[u] is the g-vertex playing the role of h-vertex u; embedded
    vertices play s_h ignoring extra visible colors, everyone else guesses
    the constant 0.  A winning s_h lifts to a winning strategy on g.
    """
    embedding = list(embedding)
    if len(embedding) != h.n or len(set(embedding)) != h.n:
        raise ParameterError("embedding must be injective and cover every h vertex")
    for w in embedding:
        if not 0 <= w < g.n:
            raise ParameterError(f"embedded vertex {w} out of range")
    for u in range(h.n):
        for z in h.sees[u]:
            if embedding[z] not in g.sees[embedding[u]]:
                raise ParameterError(
                    f"embedding breaks visibility {u}->{z}: not an edge map into g"
                )
    q = s_h.q
    role = {w: u for u, w in enumerate(embedding)}

    def fn(w, view):
        u = role.get(w)
        if u is None:
            return 0
        pos = {nb: i for i, nb in enumerate(g.sees[w])}
        inner = tuple(view[pos[embedding[z]]] for z in h.sees[u])
        return s_h.guess(u, inner)

    return TableStrategy.from_function(g, q, fn)


def tree_reduction(g: SightGraph, s: TableStrategy, v1: int, q: int) -> TableStrategy:
    """Drop a degree-1 vertex from a winning strategy (q >= 3).

    Let v2 be v1's unique neighbor.  v2's new table is read off the
    colorings of g minus v1 on which all vertices other than v1, v2 guess
    wrong: each such coloring forces v2's guess on the view it induces
    (conflicting forced guesses mean s did not win: NotReducibleError).
    Views never forced get guess 0.  All other tables are kept.
    """
    _check_match(g, s, q)
    if g.mode != UNDIRECTED:
        raise ParameterError("pendant reduction applies to undirected graphs")
    if q < 3:
        raise ParameterError("pendant reduction needs q >= 3")
    if g.degree(v1) != 1:
        raise ParameterError(f"vertex {v1} does not have degree 1")
    v2 = g.sees[v1][0]
    rest = [v for v in range(g.n) if v != v1]
    sub, old_ids = induced_subgraph(g, rest)
    new_id = {old: i for i, old in enumerate(old_ids)}
    nv2 = new_id[v2]
    others = [v for v in rest if v != v2]

    forced: dict[int, int] = {}
    d2 = len(sub.sees[nv2])
    coloring = [0] * g.n
    for r in range(q ** sub.n):
        partial = lex_unrank(r, sub.n, q)
        for i, old in enumerate(old_ids):
            coloring[old] = partial[i]
        # v1's color never matters below: no remaining vertex sees it
        if any(s.guess_on(coloring, v) == coloring[v] for v in others):
            continue
        view_rank = lex_rank([partial[u] for u in sub.sees[nv2]], q)
        a2 = partial[nv2]
        if forced.setdefault(view_rank, a2) != a2:
            raise NotReducibleError(
                "conflicting forced guesses: the input strategy does not win"
            )

    tables = []
    for i, old in enumerate(old_ids):
        if i == nv2:
            tables.append(tuple(forced.get(r, 0) for r in range(q**d2)))
        else:
            tables.append(s.tables[old])
    return TableStrategy(q, sub.sees, tuple(tables))


def random_table_strategy(g: SightGraph, q: int, rng) -> TableStrategy:
    """Uniformly random total tables; used by the adversary experiments."""
    tables = tuple(
        tuple(rng.randrange(q) for _ in range(q ** len(g.sees[v]))) for v in range(g.n)
    )
    return TableStrategy(q, g.sees, tables)


# --- hatstrat-v1 JSON (kind "table") ----------------------------------------


def _view_key(view) -> str:
    return ",".join(str(c) for c in view)


def format_table_strategy(s: TableStrategy) -> str:
    vertices = []
    for v in range(s.n):
        d = len(s.neighbors[v])
        table = {
            _view_key(lex_unrank(r, d, s.q)): s.tables[v][r] for r in range(s.q**d)
        }
        vertices.append({"id": v, "neighbors": list(s.neighbors[v]), "table": table})
    doc = {"format": "hatstrat-v1", "kind": "table", "q": s.q, "vertices": vertices}
    return json.dumps(doc, indent=1) + "\n"


def save_table_strategy(path: str, s: TableStrategy) -> None:
    atomic_write_text(path, format_table_strategy(s))


def parse_table_strategy(doc: dict) -> TableStrategy:
    if doc.get("format") != "hatstrat-v1" or doc.get("kind") != "table":
        raise FormatError("not a hatstrat-v1 table strategy")
    q = doc.get("q")
    if not isinstance(q, int) or q < 1:
        raise FormatError("bad q")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list):
        raise FormatError("missing vertices")
    by_id = {}
    for entry in vertices:
        by_id[entry["id"]] = entry
    n = len(vertices)
    if sorted(by_id) != list(range(n)):
        raise FormatError("vertex ids must be 0..n-1")
    neighbors = []
    tables = []
    for v in range(n):
        entry = by_id[v]
        nbrs = tuple(entry["neighbors"])
        d = len(nbrs)
        raw = entry["table"]
        if len(raw) != q**d:
            raise FormatError(f"table of vertex {v} is not total")
        flat = [0] * (q**d)
        for key, guess in raw.items():
            view = tuple(int(c) for c in key.split(",")) if key else ()
            if len(view) != d or any(not 0 <= c < q for c in view):
                raise FormatError(f"bad view key {key!r} for vertex {v}")
            flat[lex_rank(view, q)] = guess
        neighbors.append(nbrs)
        tables.append(tuple(flat))
    try:
        return TableStrategy(q, tuple(neighbors), tuple(tables))
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def load_table_strategy(path: str) -> TableStrategy:
    with open(path, encoding="utf-8") as handle:
        return parse_table_strategy(json.load(handle))
