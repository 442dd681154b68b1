# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for exact arithmetic mod a prime q.

Same API as rampss._gfkernels_py; see that module for the contracts.
Entries are int64; q < 2**31 keeps every intermediate product in range.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


cdef long long c_inv_mod(long long a, long long q):
    cdef long long r0 = q, r1 = a % q, s0 = 0, s1 = 1, t, tmp
    while r1:
        t = r0 / r1
        tmp = r0 - t * r1
        r0 = r1
        r1 = tmp
        tmp = s0 - t * s1
        s0 = s1
        s1 = tmp
    s0 %= q
    if s0 < 0:
        s0 += q
    return s0


def inv_mod(a, q):
    """Inverse of a mod q via the extended Euclidean algorithm."""
    a = a % q
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return c_inv_mod(a, q)


cdef long long* _load(object rows, int k, int nc) except NULL:
    cdef long long* m = <long long*> malloc(k * nc * sizeof(long long))
    if m == NULL:
        raise MemoryError()
    cdef int i, j
    cdef object row
    for i in range(k):
        row = rows[i]
        for j in range(nc):
            m[i * nc + j] = row[j]
    return m


cdef int _eliminate(long long* m, int k, int nc, long long q, int* pivots, bint reduce_up):
    """In-place elimination; returns the rank and fills pivots[0..rank)."""
    cdef int rank = 0, c, i, j, pr
    cdef long long inv, f
    for c in range(nc):
        pr = -1
        for i in range(rank, k):
            if m[i * nc + c] % q:
                pr = i
                break
        if pr < 0:
            continue
        if pr != rank:
            for j in range(nc):
                f = m[rank * nc + j]
                m[rank * nc + j] = m[pr * nc + j]
                m[pr * nc + j] = f
        inv = c_inv_mod(m[rank * nc + c] % q, q)
        for j in range(nc):
            m[rank * nc + j] = (m[rank * nc + j] % q) * inv % q
        for i in range(k):
            if i == rank:
                continue
            if not reduce_up and i < rank:
                continue
            f = m[i * nc + c] % q
            if f:
                for j in range(nc):
                    m[i * nc + j] = ((m[i * nc + j] - f * m[rank * nc + j]) % q + q) % q
        pivots[rank] = c
        rank += 1
        if rank == k:
            break
    return rank


def rref_mod(q, rows):
    """Reduced row echelon form mod q -> (nonzero rows, pivot columns)."""
    cdef int k = len(rows)
    if k == 0:
        return [], []
    cdef int nc = len(rows[0])
    cdef long long qq = q
    cdef long long* m = _load(rows, k, nc)
    cdef int* pivots = <int*> malloc(k * sizeof(int))
    if pivots == NULL:
        free(m)
        raise MemoryError()
    cdef int rank, i, j
    try:
        for i in range(k * nc):
            m[i] = ((m[i] % qq) + qq) % qq
        rank = _eliminate(m, k, nc, qq, pivots, True)
        out = [[m[i * nc + j] for j in range(nc)] for i in range(rank)]
        piv = [pivots[i] for i in range(rank)]
        return out, piv
    finally:
        free(m)
        free(pivots)


def rank_mod(q, rows):
    """Rank of the matrix mod q."""
    cdef int k = len(rows)
    if k == 0:
        return 0
    cdef int nc = len(rows[0])
    cdef long long qq = q
    cdef long long* m = _load(rows, k, nc)
    cdef int* pivots = <int*> malloc(k * sizeof(int))
    if pivots == NULL:
        free(m)
        raise MemoryError()
    cdef int rank, i
    try:
        for i in range(k * nc):
            m[i] = ((m[i] % qq) + qq) % qq
        rank = _eliminate(m, k, nc, qq, pivots, False)
        return rank
    finally:
        free(m)
        free(pivots)


def mul_mod(q, a, b):
    """Matrix product a @ b mod q."""
    cdef int ra = len(a)
    if ra == 0:
        return []
    cdef int inner = len(a[0])
    if inner == 0 or len(b) == 0:
        return [[0] * (len(b[0]) if len(b) else 0) for _ in range(ra)]
    cdef int cb = len(b[0])
    cdef long long qq = q
    cdef long long* ma = _load(a, ra, inner)
    cdef long long* mb = _load(b, inner, cb)
    cdef long long acc
    cdef int i, j, t
    try:
        out = []
        for i in range(ra):
            row = []
            for j in range(cb):
                acc = 0
                for t in range(inner):
                    acc = (acc + (ma[i * inner + t] % qq) * (mb[t * cb + j] % qq)) % qq
                row.append((acc + qq) % qq)
            out.append(row)
        return out
    finally:
        free(ma)
        free(mb)


cdef struct SweepCtx:
    long long q
    int n
    int k
    long long* cols     # column-major: cols[j*k + i]
    long long* basis    # up to k echelon vectors of length k
    long long* tmp      # scratch vector of length k
    int* pivots
    unsigned char* out


cdef void _sweep(SweepCtx* ctx, int d, size_t mask, int bcount) noexcept:
    cdef int i, piv, b, k = ctx.k
    cdef long long c, inv, q = ctx.q
    cdef long long* vec
    cdef long long* bvec
    if d == ctx.n:
        ctx.out[mask] = <unsigned char> bcount
        return
    _sweep(ctx, d + 1, mask, bcount)
    vec = ctx.tmp
    for i in range(k):
        vec[i] = ctx.cols[d * k + i]
    for b in range(bcount):
        c = vec[ctx.pivots[b]]
        if c:
            bvec = ctx.basis + b * k
            for i in range(k):
                vec[i] = ((vec[i] - c * bvec[i]) % q + q) % q
    piv = -1
    for i in range(k):
        if vec[i]:
            piv = i
            break
    if piv < 0:
        _sweep(ctx, d + 1, mask | (<size_t>1 << d), bcount)
    else:
        inv = c_inv_mod(vec[piv], q)
        bvec = ctx.basis + bcount * k
        for i in range(k):
            bvec[i] = vec[i] * inv % q
        ctx.pivots[bcount] = piv
        _sweep(ctx, d + 1, mask | (<size_t>1 << d), bcount + 1)


def rank_sweep(q, rows, int n):
    """Rank of every column submatrix, indexed by column bitmask."""
    cdef int k = len(rows)
    out = bytearray(1 << n)
    if k == 0 or n == 0:
        return out
    cdef SweepCtx ctx
    ctx.q = q
    ctx.n = n
    ctx.k = k
    ctx.cols = <long long*> malloc(n * k * sizeof(long long))
    ctx.basis = <long long*> malloc(k * k * sizeof(long long))
    ctx.tmp = <long long*> malloc(k * sizeof(long long))
    ctx.pivots = <int*> malloc(k * sizeof(int))
    if ctx.cols == NULL or ctx.basis == NULL or ctx.tmp == NULL or ctx.pivots == NULL:
        free(ctx.cols); free(ctx.basis); free(ctx.tmp); free(ctx.pivots)
        raise MemoryError()
    cdef unsigned char[::1] view = out
    ctx.out = &view[0]
    cdef int i, j
    cdef object row
    try:
        for i in range(k):
            row = rows[i]
            for j in range(n):
                ctx.cols[j * k + i] = ((<long long> row[j]) % ctx.q + ctx.q) % ctx.q
        _sweep(&ctx, 0, 0, 0)
        return out
    finally:
        free(ctx.cols)
        free(ctx.basis)
        free(ctx.tmp)
        free(ctx.pivots)


def min_weight_mod(q, rows):
    """Minimum Hamming weight over the nonzero span of the given rows."""
    cdef int k = len(rows)
    if k == 0:
        return None
    cdef int n = len(rows[0])
    cdef long long qq = q
    cdef long long* m = _load(rows, k, n)
    cdef long long* word = <long long*> malloc(n * sizeof(long long))
    cdef long long* coeff = <long long*> malloc(k * sizeof(long long))
    if word == NULL or coeff == NULL:
        free(m); free(word); free(coeff)
        raise MemoryError()
    cdef int best = n + 1, w, i, j
    cdef long long steps, step
    try:
        for i in range(k * n):
            m[i] = ((m[i] % qq) + qq) % qq
        for j in range(n):
            word[j] = 0
        for i in range(k):
            coeff[i] = 0
        steps = 1
        for i in range(k):
            steps *= qq
        steps -= 1
        for step in range(steps):
            i = 0
            while True:
                for j in range(n):
                    word[j] = (word[j] + m[i * n + j]) % qq
                coeff[i] += 1
                if coeff[i] < qq:
                    break
                coeff[i] = 0
                i += 1
            w = 0
            for j in range(n):
                if word[j]:
                    w += 1
            if w and w < best:
                best = w
                if best == 1:
                    break
        return best
    finally:
        free(m)
        free(word)
        free(coeff)
