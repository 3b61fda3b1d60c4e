"""Pure-Python fallback for the hot enumeration kernels.

Semantics (enumeration order, tie-breaks, node/op accounting) match the
compiled backend in ``_kernels`` exactly; the two are interchangeable and
cross-checked by the test suite.  Status codes shared by both backends:
0 = exhausted/none, 1 = found/solvable, 2 = budget or deadline hit.
"""

from __future__ import annotations

import time

BACKEND = "python"

FOUND = 1
EXHAUSTED = 0
ABORTED = 2


def _decode(rank: int, n: int, q: int, out: list[int]) -> None:
    for i in range(n - 1, -1, -1):
        rank, out[i] = divmod(rank, q)


def first_bad_coloring(n, q, neighbors, tables, start, stop):
    """Rank of the first coloring in [start, stop) on which every vertex
    guesses wrong, or -1."""
    x = [0] * n
    for rank in range(start, stop):
        _decode(rank, n, q, x)
        for v in range(n):
            view = 0
            for u in neighbors[v]:
                view = view * q + x[u]
            if tables[v][view] == x[v]:
                break
        else:
            return rank
    return -1


def bad_colorings(n, q, neighbors, tables, start, stop):
    """All ranks in [start, stop) of colorings defeating every vertex."""
    out = []
    x = [0] * n
    for rank in range(start, stop):
        _decode(rank, n, q, x)
        for v in range(n):
            view = 0
            for u in neighbors[v]:
                view = view * q + x[u]
            if tables[v][view] == x[v]:
                break
        else:
            out.append(rank)
    return out


def correct_count_range(n, q, neighbors, tables):
    """(min, max) over all colorings of the number of correct vertices."""
    lo, hi = n + 1, -1
    x = [0] * n
    for rank in range(q**n):
        _decode(rank, n, q, x)
        correct = 0
        for v in range(n):
            view = 0
            for u in neighbors[v]:
                view = view * q + x[u]
            if tables[v][view] == x[v]:
                correct += 1
        lo = min(lo, correct)
        hi = max(hi, correct)
    return lo, hi


def _cover_update(cover, base, strides, q, delta):
    """Add delta to every coloring of a cell's class; returns how many
    crossed the covered/uncovered boundary."""
    boundary = 1 if delta > 0 else 0
    crossed = 0
    f = len(strides)
    if f == 0:
        cover[base] += delta
        return 1 if cover[base] == boundary else 0
    digits = [0] * f
    idx = base
    while True:
        cover[idx] += delta
        if cover[idx] == boundary:
            crossed += 1
        k = f - 1
        while k >= 0:
            if digits[k] + 1 < q:
                digits[k] += 1
                idx += strides[k]
                break
            digits[k] = 0
            idx -= (q - 1) * strides[k]
            k -= 1
        if k < 0:
            return crossed


def solve_tables(n, q, neighbors, node_budget, time_budget):
    """Backtracking search for a winning table strategy.

    Branches on the uncovered coloring with the fewest unassigned table
    cells (ties broken lexicographically): some vertex must guess it, so
    try, in ascending vertex order, every vertex whose relevant cell is
    still free.  Cover counts (not bits) support exact undo; an uncovered
    coloring with zero free cells, or total remaining cell capacity below
    the uncovered count, prunes the subtree.

    Returns (status, per-vertex flat tables or None, nodes explored).
    """
    N = q**n
    pows = [q ** (n - 1 - i) for i in range(n)]
    nbr = [list(nb) for nb in neighbors]
    free_strides = [
        [pows[u] for u in range(n) if u != v and u not in set(nbr[v])]
        for v in range(n)
    ]
    capv = [q ** (n - 1 - len(nbr[v])) for v in range(n)]
    tabs = [[-1] * (q ** len(nbr[v])) for v in range(n)]
    cover = [0] * N
    options = [n] * N  # unassigned cells per coloring
    state = {"nodes": 0, "uncovered": N, "cap": n * q ** (n - 1)}
    deadline = time.monotonic() + time_budget if time_budget else None

    def _options_update(base, strides, delta):
        f = len(strides)
        if f == 0:
            options[base] += delta
            return
        digits = [0] * f
        idx = base
        while True:
            options[idx] += delta
            k = f - 1
            while k >= 0:
                if digits[k] + 1 < q:
                    digits[k] += 1
                    idx += strides[k]
                    break
                digits[k] = 0
                idx -= (q - 1) * strides[k]
                k -= 1
            if k < 0:
                return

    def _assign(v, x, delta):
        # one cell of v fixed: colorings in its view class either get
        # covered (own color matches) or lose a free cell
        base0 = 0
        for u in nbr[v]:
            base0 += x[u] * pows[u]
        newly = 0
        for g in range(q):
            base = base0 + g * pows[v]
            if g == x[v]:
                newly = _cover_update(cover, base, free_strides[v], q, delta)
            else:
                _options_update(base, free_strides[v], -delta)
        return newly

    def dfs():
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            return ABORTED
        if deadline is not None and state["nodes"] % 1024 == 0 and time.monotonic() > deadline:
            return ABORTED
        if state["cap"] < state["uncovered"]:
            return EXHAUSTED
        best, r = n + 1, -1
        for rank in range(N):
            if cover[rank] == 0 and options[rank] < best:
                best, r = options[rank], rank
                if best == 0:
                    break
        if r == -1:
            return FOUND
        if best == 0:
            return EXHAUSTED  # uncovered coloring nobody can still guess
        x = [0] * n
        _decode(r, n, q, x)
        for v in range(n):
            view = 0
            for u in nbr[v]:
                view = view * q + x[u]
            if tabs[v][view] != -1:
                continue  # already assigned, and it must mismatch x
            tabs[v][view] = x[v]
            newly = _assign(v, x, +1)
            state["uncovered"] -= newly
            state["cap"] -= capv[v]
            res = dfs()
            if res != EXHAUSTED:
                return res
            _assign(v, x, -1)
            state["uncovered"] += newly
            state["cap"] += capv[v]
            tabs[v][view] = -1
        return EXHAUSTED

    status = dfs()
    if status == FOUND:
        out = [[g if g != -1 else 0 for g in tab] for tab in tabs]
        return FOUND, out, state["nodes"]
    return status, None, state["nodes"]


def linear_decide(n, q, neighbors, add, mul, op_budget, time_budget):
    """Search for an affine strategy (A, b) that wins on every coloring.

    A's free entries (row-major over edge positions) run through all q^F
    values; for each A the set of b vectors defeated by some coloring is
    accumulated, and the first A leaving a gap yields the witness with the
    smallest such b.  One op = one (A, coloring) pair.

    Returns (status, free entry values or None, b rank or -1, ops).
    """
    N = q**n
    free = [(i, j) for i in range(n) for j in neighbors[i]]
    nfree = len(free)
    A = [[0] * n for _ in range(n)]
    vals = [0] * nfree
    stamps = [0] * N  # stamped bitset: avoids clearing per A
    stamp = 0
    ops = 0
    deadline = time.monotonic() + time_budget if time_budget else None
    x = [0] * n
    z = [0] * n
    while True:
        stamp += 1
        count = 0
        for xr in range(N):
            ops += 1
            if ops > op_budget:
                return ABORTED, None, -1, ops
            if deadline is not None and ops % 4096 == 0 and time.monotonic() > deadline:
                return ABORTED, None, -1, ops
            _decode(xr, n, q, x)
            for i in range(n):
                zi = x[i]
                for j in neighbors[i]:
                    zi = add[zi * q + mul[A[i][j] * q + x[j]]]
                z[i] = zi
            # mark every b with b_i != z_i for all i
            d = [0] * n
            while True:
                br = 0
                for i in range(n):
                    di = d[i]
                    br = br * q + (di + 1 if di >= z[i] else di)
                if stamps[br] != stamp:
                    stamps[br] = stamp
                    count += 1
                k = n - 1
                while k >= 0:
                    if d[k] + 1 < q - 1:
                        d[k] += 1
                        break
                    d[k] = 0
                    k -= 1
                if k < 0:
                    break
            if count == N:
                break
        if count < N:
            for br in range(N):
                if stamps[br] != stamp:
                    return FOUND, list(vals), br, ops
        # advance A (last free entry fastest)
        k = nfree - 1
        while k >= 0:
            if vals[k] + 1 < q:
                vals[k] += 1
                A[free[k][0]][free[k][1]] = vals[k]
                break
            vals[k] = 0
            A[free[k][0]][free[k][1]] = 0
            k -= 1
        if k < 0:
            return EXHAUSTED, None, -1, ops


def saturated_violation(nrows, ncols, q, t, entries):
    """First t-subset of columns (lexicographic) without a row mapping onto
    all q colors, or None if the matrix is t-saturated.

    ``entries`` is row-major flat.
    """
    full = (1 << q) - 1
    cols = list(range(t))
    while True:
        ok = False
        for r in range(nrows):
            row = r * ncols
            mask = 0
            for c in cols:
                mask |= 1 << entries[row + c]
            if mask == full:
                ok = True
                break
        if not ok:
            return tuple(cols)
        # next combination
        i = t - 1
        while i >= 0 and cols[i] == ncols - t + i:
            i -= 1
        if i < 0:
            return None
        cols[i] += 1
        for j in range(i + 1, t):
            cols[j] = cols[j - 1] + 1


def search_saturated_matrix(nrows, ncols, q, t, node_budget):
    """Backtracking search for an nrows x ncols t-saturated matrix.

    Column values are enumerated as base-q integers in nondecreasing order
    (column permutations preserve saturation), the first column is pinned
    to all zeros (per-row color relabeling), and every completed t-subset
    is checked as soon as its largest column is placed.  One node = one
    candidate value tried.

    Returns (status, row-major entries or None, nodes).
    """
    space = q**nrows
    full = (1 << q) - 1
    colv = [0] * ncols  # chosen column values
    digits = [[0] * nrows for _ in range(ncols)]  # decoded, row 0 most significant
    strict = 1 if t == q else 0  # duplicate columns can never be rainbow at t == q
    nodes = 0

    def decode_into(value, out):
        for r in range(nrows - 1, -1, -1):
            value, out[r] = divmod(value, q)

    def subset_ok(j):
        # every t-subset {s..., j} with s from the first j columns
        if j + 1 < t:
            return True
        sub = list(range(t - 1))
        while True:
            good = False
            for r in range(nrows):
                mask = 1 << digits[j][r]
                for c in sub:
                    mask |= 1 << digits[c][r]
                if mask == full:
                    good = True
                    break
            if not good:
                return False
            i = t - 2
            while i >= 0 and sub[i] == j - t + 1 + i:
                i -= 1
            if i < 0:
                return True
            sub[i] += 1
            for k in range(i + 1, t - 1):
                sub[k] = sub[k - 1] + 1

    j = 1  # column 0 stays all-zero
    candidate = [0] * (ncols + 1)
    candidate[1] = strict
    while True:
        if j == ncols:
            flat = []
            for r in range(nrows):
                flat.extend(digits[c][r] for c in range(ncols))
            return FOUND, flat, nodes
        placed = False
        for value in range(candidate[j], space):
            nodes += 1
            if nodes > node_budget:
                return ABORTED, None, nodes
            colv[j] = value
            decode_into(value, digits[j])
            if subset_ok(j):
                candidate[j] = value  # resume point on backtrack
                candidate[j + 1] = value + strict
                j += 1
                placed = True
                break
        if placed:
            continue
        # exhausted values for column j: backtrack
        j -= 1
        if j < 1:
            return EXHAUSTED, None, nodes
        candidate[j] = colv[j] + 1
