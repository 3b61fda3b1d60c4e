"""Affine guessing strategies over finite fields.

An affine strategy is a pair (A, b): vertex i guesses the color x_i
solving <A_i, x> = b_i, where A has unit diagonal and support only on
visibility edges.  This module provides GF(p^k) arithmetic, verification,
an exhaustive decision procedure for affine solvability, a defeating
adversary for the one-edge-deleted cycle, and a brute-force minimum-rank
oracle.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import core
from ._io import atomic_write_text
from .errors import FormatError, ParameterError, StrategyMismatchError
from .graphs import UNDIRECTED, SightGraph
from .hamming import lex_unrank
from .strategies import Coloring, TableStrategy, Verdict

# Pinned irreducible polynomials (coefficient tuples, constant term first)
# for reproducible element encodings; other prime powers fall back to the
# lexicographically smallest monic irreducible.
IRREDUCIBLE = {
    4: (1, 1, 1),  # t^2 + t + 1 over GF(2)
    8: (1, 1, 0, 1),  # t^3 + t + 1 over GF(2)
    9: (1, 0, 1),  # t^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),  # t^4 + t + 1 over GF(2)
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ParameterError("field order must be at least 2")
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise ParameterError(f"{q} is not a prime power")
            return p, k
    raise ParameterError(f"{q} is not a prime power")


def _poly_mul_mod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce by the monic modulus
    deg = len(modulus) - 1
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(deg):
                out[i - deg + j] = (out[i - deg + j] - c * modulus[j]) % p
    return out[:deg] + [0] * max(0, deg - len(out))


def _poly_divisible(poly, div, p):
    rem = list(poly)
    dd = len(div) - 1
    inv_lead = pow(div[-1], p - 2, p) if p > 2 else div[-1]
    while len(rem) - 1 >= dd:
        if rem[-1]:
            factor = rem[-1] * inv_lead % p
            shift = len(rem) - 1 - dd
            for j in range(len(div)):
                rem[shift + j] = (rem[shift + j] - factor * div[j]) % p
        rem.pop()
    return not any(rem)


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for low in range(p**k):
        digits = []
        m = low
        for _ in range(k):
            m, d = divmod(m, p)
            digits.append(d)
        poly = tuple(digits) + (1,)
        reducible = False
        for ddeg in range(1, k // 2 + 1):
            for dlow in range(p**ddeg):
                dd = []
                mm = dlow
                for _ in range(ddeg):
                    mm, d = divmod(mm, p)
                    dd.append(d)
                if _poly_divisible(poly, dd + [1], p):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return poly
    raise AssertionError("no irreducible polynomial found")  # unreachable


class GF:
    """Arithmetic in GF(p^k) with elements encoded as 0..q-1 via base-p
    coefficient vectors (constant term least significant)."""

    def __init__(self, q: int):
        p, k = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.k = k
        if k == 1:
            self.modulus = None
        else:
            self.modulus = IRREDUCIBLE.get(q) or _smallest_irreducible(p, k)
        self._build_tables()

    def _decode(self, e: int) -> list[int]:
        digits = []
        for _ in range(self.k):
            e, d = divmod(e, self.p)
            digits.append(d)
        return digits

    def _encode(self, digits) -> int:
        e = 0
        for d in reversed(list(digits)):
            e = e * self.p + d
        return e

    def _build_tables(self):
        q, p = self.q, self.p
        if self.k == 1:
            self.add_table = [(a + b) % p for a in range(q) for b in range(q)]
            self.mul_table = [(a * b) % p for a in range(q) for b in range(q)]
        else:
            add = []
            mul = []
            polys = [self._decode(e) for e in range(q)]
            for a in range(q):
                for b in range(q):
                    add.append(
                        self._encode((x + y) % p for x, y in zip(polys[a], polys[b]))
                    )
                    mul.append(
                        self._encode(_poly_mul_mod(polys[a], polys[b], self.modulus, p))
                    )
            self.add_table = add
            self.mul_table = mul
        self.neg_table = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add_table[a * q + b] == 0:
                    self.neg_table[a] = b
                    break
        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a * q + b] == 1:
                    self.inv_table[a] = b
                    break

    def add(self, a: int, b: int) -> int:
        return self.add_table[a * self.q + b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a * self.q + self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a * self.q + b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ParameterError("zero has no inverse")
        return self.inv_table[a]

    def dot(self, u, v) -> int:
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    def __repr__(self):
        return f"GF({self.q})"


@dataclass(frozen=True)
class LinearStrategy:
    """(A, b) over GF(q): vertex i guesses the solution of <A_i, x> = b_i.

    Shape: unit diagonal, zero entries off the closed neighborhoods.
    """

    q: int
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self):
        n = len(self.b)
        if len(self.A) != n or any(len(row) != n for row in self.A):
            raise ParameterError("A must be square and match b's length")
        if any(not 0 <= e < self.q for row in self.A for e in row):
            raise ParameterError("matrix entry out of field range")
        if any(not 0 <= e < self.q for e in self.b):
            raise ParameterError("b entry out of field range")
        for i in range(n):
            if self.A[i][i] != 1:
                raise ParameterError(f"diagonal entry A[{i}][{i}] must be 1")

    @property
    def n(self) -> int:
        return len(self.b)

    def check_shape(self, g: SightGraph) -> None:
        if g.n != self.n:
            raise StrategyMismatchError("strategy size differs from the graph")
        for i in range(self.n):
            allowed = set(g.sees[i])
            for j in range(self.n):
                if i != j and self.A[i][j] != 0 and j not in allowed:
                    raise StrategyMismatchError(
                        f"A[{i}][{j}] is nonzero but {i} cannot see {j}"
                    )


def linear_verify(g: SightGraph, s: LinearStrategy, field: GF | None = None) -> Verdict:
    """Exhaustive check over GF(q)^n; loses with the lexicographically
    smallest coloring on which every row misses its target."""
    s.check_shape(g)
    field = field or GF(s.q)
    if field.q != s.q:
        raise ParameterError("field order differs from the strategy's q")
    n, q = s.n, s.q
    rows = [[(j, s.A[i][j]) for j in range(n) if s.A[i][j] != 0] for i in range(n)]
    for x in itertools.product(range(q), repeat=n):
        for i in range(n):
            acc = 0
            for j, a in rows[i]:
                acc = field.add(acc, field.mul(a, x[j]))
            if acc == s.b[i]:
                break
        else:
            return Verdict("loses", x)
    return Verdict("wins")


def to_table(g: SightGraph, s: LinearStrategy, field: GF | None = None) -> TableStrategy:
    """Expand (A, b) into lookup tables: vertex i guesses
    b_i - sum_j A_ij x_j over its view."""
    s.check_shape(g)
    field = field or GF(s.q)

    def fn(v, view):
        acc = s.b[v]
        for u, c in zip(g.sees[v], view):
            acc = field.sub(acc, field.mul(s.A[v][u], c))
        return acc

    return TableStrategy.from_function(g, s.q, fn)


@dataclass(frozen=True)
class LinearDecision:
    status: str  # "solvable" | "unsolvable" | "timeout"
    witness: LinearStrategy | None
    ops: int


def decide_linear_solvable(
    g: SightGraph,
    field: GF | int,
    op_budget: int = 10**9,
    time_budget: float | None = None,
) -> LinearDecision:
    """Exhaustively decide affine solvability over the given field.

    Enumerates every admissible A (free entries row-major, increasing
    encoding); for each A accumulates the set of b vectors defeated by
    some coloring and reports the first (A, smallest b) left undefeated.
    One op is one (A, coloring) pair; exceeding the budget or deadline
    yields a timeout, never a verdict.
    """
    if isinstance(field, int):
        field = GF(field)
    q = field.q
    status, vals, b_rank, ops = core.kernels.linear_decide(
        g.n,
        q,
        g.sees,
        field.add_table,
        field.mul_table,
        op_budget,
        time_budget if time_budget is not None else 0,
    )
    if status == core.ABORTED:
        return LinearDecision("timeout", None, ops)
    if status == core.EXHAUSTED:
        return LinearDecision("unsolvable", None, ops)
    A = [[0] * g.n for _ in range(g.n)]
    for i in range(g.n):
        A[i][i] = 1
    idx = 0
    for i in range(g.n):
        for j in g.sees[i]:
            A[i][j] = vals[idx]
            idx += 1
    witness = LinearStrategy(q, tuple(tuple(row) for row in A), lex_unrank(b_rank, g.n, q))
    return LinearDecision("solvable", witness, ops)


def cycle_minus_edge_adversary(n: int, s: TableStrategy, q: int = 3) -> Coloring:
    """Defeating coloring against arbitrary tables on the n-cycle with the
    directed edge 0 -> n-1 deleted (3 colors only).

    Colors are picked left to right: x_0 so that at most one color guesses
    it, then each x_i keeping vertex i-1 wrong while itself staying hard to
    guess, and finally x_{n-1} dodging vertex n-1's already-determined
    guess.  The result provably defeats every vertex and is re-validated.
    """
    if q != 3:
        raise ParameterError("the chain argument is specific to 3 colors")
    if n < 3:
        raise ParameterError("need n >= 3")
    if s.q != 3 or s.n != n:
        raise StrategyMismatchError("strategy does not fit the deleted-edge cycle")

    def hard_to_guess(i, view_of):
        # colors v such that at most one color c makes vertex i guess v,
        # where c fills the varying coordinate of i's view
        counts = [0, 0, 0]
        for c in range(3):
            counts[s.guess(i, view_of(c))] += 1
        return [v for v in range(3) if counts[v] <= 1]

    x = [0] * n
    x[0] = min(hard_to_guess(0, lambda c: (c,)))
    for i in range(1, n - 1):
        prev_view = (lambda c: (c,)) if i == 1 else (lambda c: (x[i - 2], c))
        keeps_prev_wrong = [c for c in range(3) if s.guess(i - 1, prev_view(c)) != x[i - 1]]
        a = hard_to_guess(i, lambda c: (x[i - 1], c))
        x[i] = min(set(a) & set(keeps_prev_wrong))
    keeps_prev_wrong = [
        c for c in range(3) if s.guess(n - 2, (x[n - 3], c)) != x[n - 2]
    ]
    last_guess = s.guess(n - 1, (x[0], x[n - 2]))  # sees vertices 0 and n-2
    x[n - 1] = min(c for c in keeps_prev_wrong if c != last_guess)

    coloring = tuple(x)
    for v in range(n):
        if s.guess_on(coloring, v) == coloring[v]:
            raise AssertionError("adversary produced a non-defeating coloring")
    return coloring


def matrix_rank(rows, field: GF) -> int:
    """Row-echelon rank over the field."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = field.inv(mat[rank][col])
        mat[rank] = [field.mul(inv, e) for e in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                factor = mat[r][col]
                mat[r] = [
                    field.sub(e, field.mul(factor, p)) for e, p in zip(mat[r], mat[rank])
                ]
        rank += 1
    return rank


@dataclass(frozen=True)
class MinRankResult:
    status: str  # "done" | "timeout"
    value: int | None
    ops: int


def min_rank_bruteforce(
    g: SightGraph, field: GF | int, op_budget: int = 10**8
) -> MinRankResult:
    """Minimum rank over the given field among matrices with nonzero
    diagonal and zeros exactly off the closed neighborhoods (both entries
    of an edge vary independently).  An upper bound for the any-field
    minimum rank.  Enumeration size (q-1)^n * q^(2|E|)."""
    if isinstance(field, int):
        field = GF(field)
    if g.mode != UNDIRECTED:
        raise ParameterError("minimum rank is defined for undirected graphs")
    q = field.q
    n = g.n
    positions = [(i, j) for i in range(n) for j in g.sees[i]]
    total = (q - 1) ** n * q ** len(positions)
    if total > op_budget:
        return MinRankResult("timeout", None, 0)
    best = n + 1
    ops = 0
    mat = [[0] * n for _ in range(n)]
    for diag in itertools.product(range(1, q), repeat=n):
        for i in range(n):
            mat[i][i] = diag[i]
        for off in itertools.product(range(q), repeat=len(positions)):
            ops += 1
            for (i, j), e in zip(positions, off):
                mat[i][j] = e
            best = min(best, matrix_rank(mat, field))
            if best == 1:
                return MinRankResult("done", 1, ops)
    return MinRankResult("done", best, ops)


# --- hatstrat-v1 JSON (kind "linear") ----------------------------------------


def format_linear_strategy(s: LinearStrategy) -> str:
    doc = {
        "format": "hatstrat-v1",
        "kind": "linear",
        "q": s.q,
        "A": [list(row) for row in s.A],
        "b": list(s.b),
    }
    return json.dumps(doc, indent=1) + "\n"


def save_linear_strategy(path: str, s: LinearStrategy) -> None:
    atomic_write_text(path, format_linear_strategy(s))


def parse_linear_strategy(doc: dict) -> LinearStrategy:
    if doc.get("format") != "hatstrat-v1" or doc.get("kind") != "linear":
        raise FormatError("not a hatstrat-v1 linear strategy")
    try:
        q = doc["q"]
        A = tuple(tuple(row) for row in doc["A"])
        b = tuple(doc["b"])
    except (KeyError, TypeError) as exc:
        raise FormatError("missing or malformed fields") from exc
    try:
        return LinearStrategy(q, A, b)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc


def load_linear_strategy(path: str) -> LinearStrategy:
    with open(path, encoding="utf-8") as handle:
        return parse_linear_strategy(json.load(handle))
