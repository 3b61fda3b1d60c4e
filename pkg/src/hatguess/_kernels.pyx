# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Exact behavioral twin of ``_pykernels`` (same enumeration orders,
tie-breaks, and node/op accounting); see that module for the reference
semantics.  Status codes: 0 exhausted/none, 1 found/solvable, 2 aborted.
"""

from libc.stdlib cimport calloc, free, malloc

from time import monotonic

BACKEND = "c"

FOUND = 1
EXHAUSTED = 0
ABORTED = 2

DEF MAXVERTS = 64


cdef void* _xmalloc(size_t nbytes) except NULL:
    cdef void* p = malloc(nbytes)
    if p == NULL:
        raise MemoryError()
    return p


cdef void* _xcalloc(size_t count, size_t size) except NULL:
    cdef void* p = calloc(count, size)
    if p == NULL:
        raise MemoryError()
    return p


cdef struct Flat:
    int n
    int* off      # n + 1
    int* dat


cdef Flat _flatten(object lists) except *:
    cdef Flat f
    cdef int total = 0
    cdef int i = 0, j
    f.n = len(lists)
    f.off = <int*>_xmalloc((f.n + 1) * sizeof(int))
    for item in lists:
        total += len(item)
    f.dat = <int*>_xmalloc(max(total, 1) * sizeof(int))
    f.off[0] = 0
    for i, item in enumerate(lists):
        j = f.off[i]
        for e in item:
            f.dat[j] = e
            j += 1
        f.off[i + 1] = j
    return f


cdef void _free_flat(Flat* f):
    free(f.off)
    free(f.dat)


def first_bad_coloring(int n, int q, object neighbors, object tables,
                       long long start, long long stop):
    cdef Flat nbr = _flatten(neighbors)
    cdef Flat tab = _flatten(tables)
    cdef long long rank, rr, view
    cdef int x[MAXVERTS]
    cdef int i, v, u
    cdef long long result = -1
    if n > MAXVERTS:
        _free_flat(&nbr); _free_flat(&tab)
        raise ValueError("too many vertices for the compiled kernel")
    try:
        for rank in range(start, stop):
            rr = rank
            for i in range(n - 1, -1, -1):
                x[i] = rr % q
                rr //= q
            for v in range(n):
                view = 0
                for i in range(nbr.off[v], nbr.off[v + 1]):
                    view = view * q + x[nbr.dat[i]]
                if tab.dat[tab.off[v] + view] == x[v]:
                    break
            else:
                result = rank
                break
        return result
    finally:
        _free_flat(&nbr)
        _free_flat(&tab)


def bad_colorings(int n, int q, object neighbors, object tables,
                  long long start, long long stop):
    cdef Flat nbr = _flatten(neighbors)
    cdef Flat tab = _flatten(tables)
    cdef long long rank, rr, view
    cdef int x[MAXVERTS]
    cdef int i, v
    out = []
    if n > MAXVERTS:
        _free_flat(&nbr); _free_flat(&tab)
        raise ValueError("too many vertices for the compiled kernel")
    try:
        for rank in range(start, stop):
            rr = rank
            for i in range(n - 1, -1, -1):
                x[i] = rr % q
                rr //= q
            for v in range(n):
                view = 0
                for i in range(nbr.off[v], nbr.off[v + 1]):
                    view = view * q + x[nbr.dat[i]]
                if tab.dat[tab.off[v] + view] == x[v]:
                    break
            else:
                out.append(rank)
        return out
    finally:
        _free_flat(&nbr)
        _free_flat(&tab)


def correct_count_range(int n, int q, object neighbors, object tables):
    cdef Flat nbr = _flatten(neighbors)
    cdef Flat tab = _flatten(tables)
    cdef long long rank, rr, view, total = 1
    cdef int x[MAXVERTS]
    cdef int i, v, correct
    cdef int lo = n + 1, hi = -1
    if n > MAXVERTS:
        _free_flat(&nbr); _free_flat(&tab)
        raise ValueError("too many vertices for the compiled kernel")
    for i in range(n):
        total *= q
    try:
        for rank in range(total):
            rr = rank
            for i in range(n - 1, -1, -1):
                x[i] = rr % q
                rr //= q
            correct = 0
            for v in range(n):
                view = 0
                for i in range(nbr.off[v], nbr.off[v + 1]):
                    view = view * q + x[nbr.dat[i]]
                if tab.dat[tab.off[v] + view] == x[v]:
                    correct += 1
            if correct < lo:
                lo = correct
            if correct > hi:
                hi = correct
        return lo, hi
    finally:
        _free_flat(&nbr)
        _free_flat(&tab)


# --- solvability search -------------------------------------------------------

cdef struct SolveCtx:
    int n
    int q
    long long N
    long long* pows       # q^(n-1-i)
    Flat nbr
    long long* fs         # free-position strides, per vertex
    int* fs_off
    long long* capv       # colorings per cell class
    int* tabs
    long long* tab_off
    int* cover
    int* options          # unassigned cells per coloring
    long long uncovered
    long long cap
    long long nodes
    long long node_budget
    double deadline       # 0.0 = none


cdef long long _cover_update(SolveCtx* c, long long base, int v, int delta):
    cdef long long crossed = 0, idx = base
    cdef int boundary = 1 if delta > 0 else 0
    cdef int f = c.fs_off[v + 1] - c.fs_off[v]
    cdef long long* strides = c.fs + c.fs_off[v]
    cdef int digits[MAXVERTS]
    cdef int k
    for k in range(f):
        digits[k] = 0
    while True:
        c.cover[idx] += delta
        if c.cover[idx] == boundary:
            crossed += 1
        k = f - 1
        while k >= 0:
            if digits[k] + 1 < c.q:
                digits[k] += 1
                idx += strides[k]
                break
            digits[k] = 0
            idx -= (c.q - 1) * strides[k]
            k -= 1
        if k < 0:
            break
    return crossed


cdef void _options_update(SolveCtx* c, long long base, int v, int delta):
    cdef long long idx = base
    cdef int f = c.fs_off[v + 1] - c.fs_off[v]
    cdef long long* strides = c.fs + c.fs_off[v]
    cdef int digits[MAXVERTS]
    cdef int k
    for k in range(f):
        digits[k] = 0
    while True:
        c.options[idx] += delta
        k = f - 1
        while k >= 0:
            if digits[k] + 1 < c.q:
                digits[k] += 1
                idx += strides[k]
                break
            digits[k] = 0
            idx -= (c.q - 1) * strides[k]
            k -= 1
        if k < 0:
            break


cdef long long _assign(SolveCtx* c, int* x, int v, int delta):
    # one cell of v fixed: colorings in its view class either get covered
    # (own color matches) or lose a free cell
    cdef long long base0 = 0, newly = 0
    cdef int i, g
    for i in range(c.nbr.off[v], c.nbr.off[v + 1]):
        base0 += x[c.nbr.dat[i]] * c.pows[c.nbr.dat[i]]
    for g in range(c.q):
        if g == x[v]:
            newly = _cover_update(c, base0 + g * c.pows[v], v, delta)
        else:
            _options_update(c, base0 + g * c.pows[v], v, -delta)
    return newly


cdef int _dfs(SolveCtx* c):
    cdef long long r, rr, rank, view, newly
    cdef int v, i, res, best
    cdef int x[MAXVERTS]
    c.nodes += 1
    if c.nodes > c.node_budget:
        return ABORTED
    if c.deadline != 0.0 and c.nodes % 1024 == 0 and monotonic() > c.deadline:
        return ABORTED
    if c.cap < c.uncovered:
        return EXHAUSTED
    best = c.n + 1
    r = -1
    for rank in range(c.N):
        if c.cover[rank] == 0 and c.options[rank] < best:
            best = c.options[rank]
            r = rank
            if best == 0:
                break
    if r == -1:
        return FOUND
    if best == 0:
        return EXHAUSTED  # uncovered coloring nobody can still guess
    rr = r
    for i in range(c.n - 1, -1, -1):
        x[i] = rr % c.q
        rr //= c.q
    for v in range(c.n):
        view = 0
        for i in range(c.nbr.off[v], c.nbr.off[v + 1]):
            view = view * c.q + x[c.nbr.dat[i]]
        if c.tabs[c.tab_off[v] + view] != -1:
            continue
        c.tabs[c.tab_off[v] + view] = x[v]
        newly = _assign(c, x, v, 1)
        c.uncovered -= newly
        c.cap -= c.capv[v]
        res = _dfs(c)
        if res != EXHAUSTED:
            return res
        _assign(c, x, v, -1)
        c.uncovered += newly
        c.cap += c.capv[v]
        c.tabs[c.tab_off[v] + view] = -1
    return EXHAUSTED


def solve_tables(int n, int q, object neighbors, long long node_budget,
                 double time_budget):
    cdef SolveCtx c
    cdef int v, u, i, status
    cdef long long j, cells = 0
    cdef bint seen[MAXVERTS]
    if n > MAXVERTS:
        raise ValueError("too many vertices for the compiled kernel")
    c.n = n
    c.q = q
    c.N = 1
    for v in range(n):
        c.N *= q
    c.nbr = _flatten(neighbors)
    c.pows = <long long*>_xmalloc(n * sizeof(long long))
    for v in range(n):
        c.pows[n - 1 - v] = 1 if v == 0 else c.pows[n - v] * q
    c.fs_off = <int*>_xmalloc((n + 1) * sizeof(int))
    c.fs = <long long*>_xmalloc(max(n * n, 1) * sizeof(long long))
    c.fs_off[0] = 0
    for v in range(n):
        for u in range(n):
            seen[u] = 0
        seen[v] = 1
        for i in range(c.nbr.off[v], c.nbr.off[v + 1]):
            seen[c.nbr.dat[i]] = 1
        j = c.fs_off[v]
        for u in range(n):
            if not seen[u]:
                c.fs[j] = c.pows[u]
                j += 1
        c.fs_off[v + 1] = j
    c.capv = <long long*>_xmalloc(n * sizeof(long long))
    c.tab_off = <long long*>_xmalloc((n + 1) * sizeof(long long))
    c.tab_off[0] = 0
    c.cap = 0
    for v in range(n):
        c.capv[v] = 1
        for i in range(c.fs_off[v + 1] - c.fs_off[v]):
            c.capv[v] *= q
        cells = 1
        for i in range(c.nbr.off[v + 1] - c.nbr.off[v]):
            cells *= q
        c.tab_off[v + 1] = c.tab_off[v] + cells
        c.cap += cells * c.capv[v]
    c.tabs = <int*>_xmalloc(c.tab_off[n] * sizeof(int))
    for j in range(c.tab_off[n]):
        c.tabs[j] = -1
    c.cover = <int*>_xcalloc(c.N, sizeof(int))
    c.options = <int*>_xmalloc(c.N * sizeof(int))
    for j in range(c.N):
        c.options[j] = n
    c.uncovered = c.N
    c.nodes = 0
    c.node_budget = node_budget
    c.deadline = monotonic() + time_budget if time_budget else 0.0
    try:
        status = _dfs(&c)
        if status == FOUND:
            out = []
            for v in range(n):
                out.append(
                    [c.tabs[j] if c.tabs[j] != -1 else 0
                     for j in range(c.tab_off[v], c.tab_off[v + 1])]
                )
            return FOUND, out, c.nodes
        return status, None, c.nodes
    finally:
        _free_flat(&c.nbr)
        free(c.pows)
        free(c.fs)
        free(c.fs_off)
        free(c.capv)
        free(c.tabs)
        free(c.tab_off)
        free(c.cover)
        free(c.options)


# --- affine solvability -------------------------------------------------------

def linear_decide(int n, int q, object neighbors, object add, object mul,
                  long long op_budget, double time_budget):
    cdef Flat nbr = _flatten(neighbors)
    cdef int nfree = nbr.off[n], i, j, k, di
    cdef int* fi = <int*>_xmalloc(max(nfree, 1) * sizeof(int))
    cdef int* fj = <int*>_xmalloc(max(nfree, 1) * sizeof(int))
    cdef int* vals = <int*>_xmalloc(max(nfree, 1) * sizeof(int))
    cdef int* A = <int*>_xmalloc(n * n * sizeof(int))
    cdef int* addt = <int*>_xmalloc(q * q * sizeof(int))
    cdef int* mult = <int*>_xmalloc(q * q * sizeof(int))
    cdef long long N = 1, ops = 0, stamp = 0, xr, br, count
    cdef long long* stamps
    cdef int x[MAXVERTS]
    cdef int z[MAXVERTS]
    cdef int d[MAXVERTS]
    cdef long long rr
    cdef double deadline = monotonic() + time_budget if time_budget else 0.0
    cdef int v
    if n > MAXVERTS:
        _free_flat(&nbr); free(fi); free(fj); free(vals); free(A); free(addt); free(mult)
        raise ValueError("too many vertices for the compiled kernel")
    for i in range(n):
        N *= q
    for i in range(q * q):
        addt[i] = add[i]
        mult[i] = mul[i]
    k = 0
    for i in range(n):
        for j in range(nbr.off[i], nbr.off[i + 1]):
            fi[k] = i
            fj[k] = nbr.dat[j]
            k += 1
    for i in range(n * n):
        A[i] = 0
    for i in range(nfree):
        vals[i] = 0
    stamps = <long long*>_xcalloc(N, sizeof(long long))
    try:
        while True:
            stamp += 1
            count = 0
            for xr in range(N):
                ops += 1
                if ops > op_budget:
                    return ABORTED, None, -1, ops
                if deadline != 0.0 and ops % 4096 == 0 and monotonic() > deadline:
                    return ABORTED, None, -1, ops
                rr = xr
                for i in range(n - 1, -1, -1):
                    x[i] = rr % q
                    rr //= q
                for i in range(n):
                    v = x[i]
                    for j in range(nbr.off[i], nbr.off[i + 1]):
                        v = addt[v * q + mult[A[i * n + nbr.dat[j]] * q + x[nbr.dat[j]]]]
                    z[i] = v
                for i in range(n):
                    d[i] = 0
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
                        return FOUND, [vals[i] for i in range(nfree)], br, ops
            k = nfree - 1
            while k >= 0:
                if vals[k] + 1 < q:
                    vals[k] += 1
                    A[fi[k] * n + fj[k]] = vals[k]
                    break
                vals[k] = 0
                A[fi[k] * n + fj[k]] = 0
                k -= 1
            if k < 0:
                return EXHAUSTED, None, -1, ops
    finally:
        _free_flat(&nbr)
        free(fi)
        free(fj)
        free(vals)
        free(A)
        free(addt)
        free(mult)
        free(stamps)


# --- saturated matrices -------------------------------------------------------

def saturated_violation(int nrows, int ncols, int q, int t, object entries):
    cdef int* ent = <int*>_xmalloc(max(nrows * ncols, 1) * sizeof(int))
    cdef int cols[MAXVERTS]
    cdef int full = (1 << q) - 1
    cdef int i, r, mask
    cdef bint ok
    if t > MAXVERTS or q > 30:
        free(ent)
        raise ValueError("t or q too large for the compiled kernel")
    for i, e in enumerate(entries):
        ent[i] = e
    for i in range(t):
        cols[i] = i
    try:
        while True:
            ok = 0
            for r in range(nrows):
                mask = 0
                for i in range(t):
                    mask |= 1 << ent[r * ncols + cols[i]]
                if mask == full:
                    ok = 1
                    break
            if not ok:
                return tuple([cols[i] for i in range(t)])
            i = t - 1
            while i >= 0 and cols[i] == ncols - t + i:
                i -= 1
            if i < 0:
                return None
            cols[i] += 1
            for r in range(i + 1, t):
                cols[r] = cols[r - 1] + 1
    finally:
        free(ent)


def search_saturated_matrix(int nrows, int ncols, int q, int t,
                            long long node_budget):
    cdef long long space = 1, nodes = 0, value
    cdef int full = (1 << q) - 1
    cdef int strict = 1 if t == q else 0
    cdef long long* colv = <long long*>_xmalloc(ncols * sizeof(long long))
    cdef long long* candidate = <long long*>_xmalloc((ncols + 1) * sizeof(long long))
    cdef int* digits = <int*>_xmalloc(ncols * nrows * sizeof(int))
    cdef int sub[MAXVERTS]
    cdef int i, r, j, mask
    cdef long long vv
    cdef bint good, placed, fail
    if nrows > 62 or t > MAXVERTS or q > 30:
        free(colv); free(candidate); free(digits)
        raise ValueError("dimensions too large for the compiled kernel")
    for i in range(nrows):
        space *= q
    for i in range(nrows):
        digits[0 * nrows + i] = 0  # column 0 pinned to all zeros
    colv[0] = 0
    j = 1
    candidate[1] = strict
    try:
        while True:
            if j == ncols:
                flat = []
                for r in range(nrows):
                    for i in range(ncols):
                        flat.append(digits[i * nrows + r])
                return FOUND, flat, nodes
            placed = 0
            value = candidate[j]
            while value < space:
                nodes += 1
                if nodes > node_budget:
                    return ABORTED, None, nodes
                colv[j] = value
                vv = value
                for r in range(nrows - 1, -1, -1):
                    digits[j * nrows + r] = vv % q
                    vv //= q
                # every t-subset completed by column j must have an onto row
                fail = 0
                if j + 1 >= t:
                    for i in range(t - 1):
                        sub[i] = i
                    while True:
                        good = 0
                        for r in range(nrows):
                            mask = 1 << digits[j * nrows + r]
                            for i in range(t - 1):
                                mask |= 1 << digits[sub[i] * nrows + r]
                            if mask == full:
                                good = 1
                                break
                        if not good:
                            fail = 1
                            break
                        i = t - 2
                        while i >= 0 and sub[i] == j - t + 1 + i:
                            i -= 1
                        if i < 0:
                            break
                        sub[i] += 1
                        for r in range(i + 1, t - 1):
                            sub[r] = sub[r - 1] + 1
                if not fail:
                    candidate[j] = value
                    candidate[j + 1] = value + strict
                    j += 1
                    placed = 1
                    break
                value += 1
            if placed:
                continue
            j -= 1
            if j < 1:
                return EXHAUSTED, None, nodes
            candidate[j] = colv[j] + 1
    finally:
        free(colv)
        free(candidate)
        free(digits)
