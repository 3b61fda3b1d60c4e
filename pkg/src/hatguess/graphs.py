"""Sight graphs: who sees whose hat.

A sight graph stores, for every vertex v, the ascending list ``sees[v]`` of
vertices whose hat colors v can observe.  Undirected graphs are stored as
symmetric visibility so that all strategy code can consume ``sees`` without
caring about the mode.  Vertices are 0-indexed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError, ParameterError, UnsupportedModeError
from ._io import atomic_write_text

UNDIRECTED = "undirected"
DIRECTED = "directed"


@dataclass(frozen=True)
class SightGraph:
    n: int
    mode: str
    sees: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.mode not in (UNDIRECTED, DIRECTED):
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.n < 1:
            raise ParameterError("need at least one vertex")
        if len(self.sees) != self.n:
            raise ParameterError("sees list length differs from vertex count")
        for v, nbrs in enumerate(self.sees):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise ParameterError(f"vertex {u} out of range in sees[{v}]")
                if u == v:
                    raise ParameterError(f"self-loop at vertex {v}")
            if any(a >= b for a, b in zip(nbrs, nbrs[1:])):
                raise ParameterError(f"sees[{v}] not strictly increasing")
        if self.mode == UNDIRECTED:
            for v, nbrs in enumerate(self.sees):
                for u in nbrs:
                    if v not in self.sees[u]:
                        raise ParameterError(f"asymmetric edge {v}->{u} in undirected graph")

    def degree(self, v: int) -> int:
        return len(self.sees[v])

    def max_degree(self) -> int:
        return max((len(nbrs) for nbrs in self.sees), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """Edge list: one (u, v) pair with u < v per undirected edge, or
        every u->v visibility pair in directed mode."""
        if self.mode == UNDIRECTED:
            return [(v, u) for v in range(self.n) for u in self.sees[v] if v < u]
        return [(v, u) for v in range(self.n) for u in self.sees[v]]


def _from_adjacency(n: int, mode: str, adj: dict[int, set[int]]) -> SightGraph:
    return SightGraph(n, mode, tuple(tuple(sorted(adj.get(v, ()))) for v in range(n)))


def from_edges(mode: str, n: int, edge_list) -> SightGraph:
    """Build a graph from explicit edges; in directed mode (u, v) means
    "u sees v", in undirected mode visibility is made symmetric."""
    adj: dict[int, set[int]] = {}
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterError(f"edge ({u},{v}) out of range")
        if u == v:
            raise ParameterError(f"self-loop ({u},{v})")
        adj.setdefault(u, set()).add(v)
        if mode == UNDIRECTED:
            adj.setdefault(v, set()).add(u)
    return _from_adjacency(n, mode, adj)


def complete_graph(n: int) -> SightGraph:
    if n < 1:
        raise ParameterError("complete graph needs n >= 1")
    return SightGraph(n, UNDIRECTED, tuple(tuple(u for u in range(n) if u != v) for v in range(n)))


def path_graph(n: int) -> SightGraph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return from_edges(UNDIRECTED, n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SightGraph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return from_edges(UNDIRECTED, n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(k: int) -> SightGraph:
    """Star with center 0 and k leaves 1..k."""
    if k < 1:
        raise ParameterError("star needs at least one leaf")
    return from_edges(UNDIRECTED, k + 1, [(0, i) for i in range(1, k + 1)])


def complete_multipartite(sizes) -> SightGraph:
    """Parts occupy consecutive vertex ranges; edges join distinct parts."""
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ParameterError("part sizes must be >= 1")
    n = sum(sizes)
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    sees = tuple(
        tuple(u for u in range(n) if part[u] != part[v]) for v in range(n)
    )
    return SightGraph(n, UNDIRECTED, sees)


def directed_cycle_blowup(sizes) -> SightGraph:
    """Blow-up of the directed r-cycle: every vertex of part i sees all of
    part i+1 (cyclically).  Needs r >= 3 parts."""
    sizes = list(sizes)
    if len(sizes) < 3:
        raise ParameterError("directed cycle blow-up needs at least 3 parts")
    if any(s < 1 for s in sizes):
        raise ParameterError("part sizes must be >= 1")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]
    r = len(sizes)
    sees = []
    for i in range(r):
        nxt = (i + 1) % r
        target = tuple(range(starts[nxt], starts[nxt + 1]))
        sees.extend([target] * sizes[i])
    return SightGraph(n, DIRECTED, tuple(sees))


def cycle_minus_edge(n: int) -> SightGraph:
    """The n-cycle viewed as 2n directed visibility edges, with 0 -> n-1
    deleted: vertex 0 sees only vertex 1, everyone else sees both cyclic
    neighbors."""
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    edges = []
    for i in range(n):
        for j in (i - 1, i + 1):
            edges.append((i, j % n))
    edges.remove((0, n - 1))
    return from_edges(DIRECTED, n, edges)


GENERATORS = {
    "complete": complete_graph,
    "path": path_graph,
    "cycle": cycle_graph,
    "star": star_graph,
    "multipartite": complete_multipartite,
    "dicycle": directed_cycle_blowup,
    "cycle-minus-edge": cycle_minus_edge,
}


@dataclass(frozen=True)
class GraphSpec:
    """Tagged generator description, e.g. kind="cycle", args=(5,)."""
    kind: str
    args: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in GENERATORS and self.kind != "from_edges":
            raise ParameterError(f"unknown generator {self.kind!r}")


def build_graph(spec: GraphSpec) -> SightGraph:
    if spec.kind == "from_edges":
        mode, n, edges = spec.args
        return from_edges(mode, n, edges)
    if spec.kind in ("multipartite", "dicycle"):
        return GENERATORS[spec.kind](spec.args)
    return GENERATORS[spec.kind](*spec.args)


def parse_graph_spec(text: str) -> GraphSpec:
    """Parse "kind:arg,arg" strings such as "cycle:5" or "dicycle:3,3,3"."""
    kind, _, rest = text.partition(":")
    if kind == "from_edges":
        raise ParameterError("from_edges specs must come from a graph file")
    if kind not in GENERATORS:
        raise ParameterError(f"unknown generator {kind!r}")
    try:
        args = tuple(int(a) for a in rest.split(",") if a != "")
    except ValueError as exc:
        raise ParameterError(f"bad generator arguments {rest!r}") from exc
    if not args:
        raise ParameterError("generator needs at least one integer argument")
    return GraphSpec(kind, args)


def degeneracy(g: SightGraph) -> tuple[int, list[int]]:
    """Exact degeneracy and a witness ordering.

    Peels a minimum-degree vertex repeatedly (bucket queue, linear time);
    the ordering is the reverse of the removal order, so every vertex has
    at most d neighbors earlier in the ordering.
    """
    if g.mode != UNDIRECTED:
        raise UnsupportedModeError("degeneracy is defined for undirected graphs")
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    maxdeg = max(deg, default=0)
    buckets: list[list[int]] = [[] for _ in range(maxdeg + 1)]
    for v in range(n):
        buckets[deg[v]].append(v)
    pos = 0  # lowest possibly-nonempty bucket
    removed = [False] * n
    order_removed = []
    d = 0
    while len(order_removed) < n:
        while not buckets[pos]:
            pos += 1
        v = buckets[pos].pop()
        if removed[v] or deg[v] != pos:
            continue  # stale entry; the fresh one sits in a lower bucket
        removed[v] = True
        d = max(d, deg[v])
        order_removed.append(v)
        for u in g.sees[v]:
            if not removed[u]:
                deg[u] -= 1
                buckets[deg[u]].append(u)
                if deg[u] < pos:
                    pos = deg[u]
    return d, order_removed[::-1]


def induced_subgraph(g: SightGraph, vertices) -> tuple[SightGraph, list[int]]:
    """Subgraph induced on a vertex set, plus the relabeling map: entry i of
    the returned list is the original id of new vertex i."""
    keep = sorted(set(vertices))
    if not keep:
        raise ParameterError("induced subgraph needs at least one vertex")
    for v in keep:
        if not 0 <= v < g.n:
            raise ParameterError(f"vertex {v} out of range")
    new_id = {old: i for i, old in enumerate(keep)}
    sees = tuple(
        tuple(new_id[u] for u in g.sees[old] if u in new_id) for old in keep
    )
    return SightGraph(len(keep), g.mode, sees), keep


# --- text format -----------------------------------------------------------
#
# hatgraph v1
# mode undirected|directed
# n <count>
# e <u> <v>        (one per edge; "u sees v" in directed mode)
# "#" starts a comment line.


def format_graph(g: SightGraph) -> str:
    lines = ["hatgraph v1", f"mode {g.mode}", f"n {g.n}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def save_graph(path: str, g: SightGraph) -> None:
    atomic_write_text(path, format_graph(g))


def parse_graph(text: str) -> SightGraph:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines or lines[0] != "hatgraph v1":
        raise FormatError("missing 'hatgraph v1' header")
    if len(lines) < 3:
        raise FormatError("truncated graph file")
    if not lines[1].startswith("mode "):
        raise FormatError("expected 'mode' on line 2")
    mode = lines[1][5:]
    if mode not in (UNDIRECTED, DIRECTED):
        raise FormatError(f"unknown mode {mode!r}")
    if not lines[2].startswith("n "):
        raise FormatError("expected 'n' on line 3")
    try:
        n = int(lines[2][2:])
    except ValueError as exc:
        raise FormatError("bad vertex count") from exc
    edges = []
    seen = set()
    for ln in lines[3:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "e":
            raise FormatError(f"unrecognized line {ln!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise FormatError(f"bad edge line {ln!r}") from exc
        key = (u, v) if mode == DIRECTED else (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {ln!r}")
        seen.add(key)
        edges.append((u, v))
    try:
        return from_edges(mode, n, edges)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def load_graph(path: str) -> SightGraph:
    with open(path, encoding="utf-8") as handle:
        return parse_graph(handle.read())
