"""Pure-Python kernels for exact arithmetic mod a prime q.

This is the fallback backend; rampss._gfkernels (Cython) implements the same
functions.  All matrices are sequences of equal-length rows of ints, reduced
here to [0, q).  Products of two residues fit in 64 bits for q < 2**31, which
the compiled backend relies on; the same bound is enforced at field
construction time.
"""

BACKEND = "python"


def inv_mod(a, q):
    """Inverse of a mod q via the extended Euclidean algorithm."""
    a %= q
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    r0, r1 = q, a
    s0, s1 = 0, 1
    while r1:
        t = r0 // r1
        r0, r1 = r1, r0 - t * r1
        s0, s1 = s1, s0 - t * s1
    return s0 % q


def rref_mod(q, rows):
    """Reduced row echelon form mod q.

    Returns (reduced nonzero rows, pivot column list).  Pivot columns are
    strictly increasing and each pivot entry is 1 with zeros elsewhere in its
    column, so the output is the canonical basis of the row space.
    """
    work = [[x % q for x in row] for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(work)):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = inv_mod(work[r][c], q)
        if inv != 1:
            work[r] = [(x * inv) % q for x in work[r]]
        row_r = work[r]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                wi = work[i]
                work[i] = [(wi[j] - f * row_r[j]) % q for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank_mod(q, rows):
    """Rank of the matrix mod q (plain elimination, no normalization)."""
    work = [[x % q for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        pr = None
        for i in range(rank, len(work)):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[rank], work[pr] = work[pr], work[rank]
        inv = inv_mod(work[rank][c], q)
        row_r = work[rank]
        if inv != 1:
            row_r = [(x * inv) % q for x in row_r]
            work[rank] = row_r
        for i in range(rank + 1, len(work)):
            if work[i][c]:
                f = work[i][c]
                wi = work[i]
                work[i] = [(wi[j] - f * row_r[j]) % q for j in range(ncols)]
        rank += 1
        if rank == len(work):
            break
    return rank


def mul_mod(q, a, b):
    """Matrix product a @ b mod q."""
    if not a:
        return []
    inner = len(a[0])
    if inner == 0 or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    ncols = len(b[0])
    bt = list(zip(*b))
    return [
        [sum(ra[i] * col[i] for i in range(inner)) % q for col in bt]
        for ra in a
    ]


def rank_sweep(q, rows, n):
    """Rank of every column submatrix.

    rows is a k x n matrix; the result is a bytearray of length 2**n where
    entry [mask] is the rank of the submatrix formed by the columns whose bit
    is set in mask.  Computed by depth-first search over columns with an
    incrementally maintained echelon basis of the column span, so the work per
    subset is O(k^2) rather than a full elimination.
    """
    k = len(rows)
    out = bytearray(1 << n)
    if k == 0 or n == 0:
        return out
    cols = [[rows[i][j] % q for i in range(k)] for j in range(n)]
    basis = []  # list of (pivot index, vector) in echelon order
    krange = range(k)

    def descend(d, mask):
        if d == n:
            out[mask] = len(basis)
            return
        descend(d + 1, mask)
        vec = list(cols[d])
        for p, bvec in basis:
            c = vec[p]
            if c:
                for i in krange:
                    vec[i] = (vec[i] - c * bvec[i]) % q
        piv = -1
        for i in krange:
            if vec[i]:
                piv = i
                break
        if piv < 0:
            descend(d + 1, mask | (1 << d))
        else:
            inv = inv_mod(vec[piv], q)
            if inv != 1:
                vec = [(x * inv) % q for x in vec]
            basis.append((piv, vec))
            descend(d + 1, mask | (1 << d))
            basis.pop()

    descend(0, 0)
    return out


def min_weight_mod(q, rows):
    """Minimum Hamming weight over the nonzero span of the given rows.

    Enumerates all q**k coefficient vectors with a base-q odometer, updating
    the current word by one row per step.  Returns None for an empty row list.
    """
    k = len(rows)
    if k == 0:
        return None
    n = len(rows[0])
    rows = [[x % q for x in row] for row in rows]
    coeff = [0] * k
    word = [0] * n
    best = n + 1
    nrange = range(n)
    steps = q**k - 1
    for _ in range(steps):
        i = 0
        while True:
            ri = rows[i]
            for j in nrange:
                word[j] = (word[j] + ri[j]) % q
            coeff[i] += 1
            if coeff[i] < q:
                break
            coeff[i] = 0
            i += 1
        w = sum(1 for x in word if x)
        # w == 0 can only happen for dependent input rows; the zero word
        # does not count.
        if w and w < best:
            best = w
            if best == 1:
                break
    return best
