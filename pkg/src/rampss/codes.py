"""Linear codes over prime fields: duals, shortenings, projections, supports,
and the exhaustive relative-weight oracle.

Shortened and projected codes keep the full ambient length with zeroed
coordinates, so index bookkeeping never shifts between a code and any derived
code.
"""

import itertools

from . import kernels
from .errors import DEFAULT_BUDGET, ValidationError, check_budget
from .gf import Matrix, Subspace


class IndexSet:
    """A sorted, duplicate-free subset of the coordinate positions [0, n)."""

    __slots__ = ("n", "members")

    def __init__(self, n, members):
        members = tuple(sorted(set(members)))
        if members and not (0 <= members[0] and members[-1] < n):
            raise ValidationError(f"indices out of range for length {n}")
        self.n = n
        self.members = members

    @classmethod
    def empty(cls, n):
        return cls(n, ())

    @classmethod
    def full(cls, n):
        return cls(n, range(n))

    @classmethod
    def from_mask(cls, n, mask):
        return cls(n, [i for i in range(n) if mask >> i & 1])

    @property
    def mask(self):
        m = 0
        for i in self.members:
            m |= 1 << i
        return m

    def complement(self):
        other = set(range(self.n)) - set(self.members)
        return IndexSet(self.n, other)

    def union(self, other):
        return IndexSet(self.n, set(self.members) | set(other.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, i):
        return i in self.members

    def __eq__(self, other):
        return (
            isinstance(other, IndexSet)
            and self.n == other.n
            and self.members == other.members
        )

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        return f"IndexSet({self.n}, {list(self.members)})"


class LinearCode:
    """A linear code given by the canonical RREF basis of its row space."""

    __slots__ = ("field", "n", "gen")

    def __init__(self, field, n, gen):
        if gen.ambient_dim != n or gen.field != field:
            raise ValidationError("generator subspace does not match the code length")
        self.field = field
        self.n = n
        self.gen = gen

    @classmethod
    def from_rows(cls, field, n, rows):
        return cls(field, n, Subspace(field, n, rows))

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, Subspace.zero(field, n))

    @classmethod
    def full(cls, field, n):
        return cls(field, n, Subspace.full(field, n))

    @property
    def dim(self):
        return self.gen.dim

    def generator_rows(self):
        return self.gen.basis.entries

    def iter_words(self):
        """All q**dim codewords (use only at oracle scale)."""
        q = self.field.q
        rows = self.generator_rows()
        if not rows:
            yield (0,) * self.n
            return
        for coeffs in itertools.product(range(q), repeat=len(rows)):
            word = [0] * self.n
            for c, row in zip(coeffs, rows):
                if c:
                    for j in range(self.n):
                        word[j] = (word[j] + c * row[j]) % q
            yield tuple(word)

    def contains(self, word):
        return self.gen.contains(word)

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and self.field == other.field
            and self.n == other.n
            and self.gen == other.gen
        )

    def __hash__(self):
        return hash((self.field, self.n, self.gen))

    def __repr__(self):
        return f"LinearCode[{self.n}, {self.dim}] over GF({self.field.q})"


def dual(c):
    """The orthogonal complement {x : x . w = 0 for all w in c}."""
    from .gf import left_kernel

    gt = Matrix(c.field, c.generator_rows(), cols=c.n).transpose()
    ker = left_kernel(gt)
    return LinearCode(c.field, c.n, ker)


def _vanishing_on(c, positions):
    """Subcode of words that are zero on the given positions (full length)."""
    from .gf import left_kernel

    rows = c.generator_rows()
    if not rows:
        return LinearCode.zero(c.field, c.n)
    cols = tuple(positions)
    sub = Matrix(c.field, [[r[j] for j in cols] for r in rows], cols=len(cols))
    ker = left_kernel(sub)
    full_rows = kernels.mul_mod(c.field.q, ker.basis.entries, rows)
    return LinearCode.from_rows(c.field, c.n, full_rows)


def shortened(c, a):
    """The subcode C_A of words vanishing outside A, at full ambient length."""
    if a.n != c.n:
        raise ValidationError("index set length mismatch")
    return _vanishing_on(c, a.complement())


def projected(c, a):
    """The projection P_A(C): coordinates outside A zeroed, full length."""
    if a.n != c.n:
        raise ValidationError("index set length mismatch")
    inside = set(a.members)
    rows = [
        [x if j in inside else 0 for j, x in enumerate(row)]
        for row in c.generator_rows()
    ]
    return LinearCode.from_rows(c.field, c.n, rows)


def support(c):
    """Indices where some codeword is nonzero (union over the basis rows)."""
    idx = set()
    for row in c.generator_rows():
        for j, x in enumerate(row):
            if x:
                idx.add(j)
    return IndexSet(c.n, idx)


class NestedCodePair:
    """Nested codes c2 <= c1 of codimension ell >= 1 over one field."""

    __slots__ = ("c1", "c2", "ell")

    def __init__(self, c1, c2):
        if c1.field != c2.field or c1.n != c2.n:
            raise ValidationError("codes must share field and length")
        ell = c1.dim - c2.dim
        if ell < 1:
            raise ValidationError("codimension must be at least 1")
        stacked = list(c1.generator_rows()) + list(c2.generator_rows())
        if kernels.rank_mod(c1.field.q, stacked) != c1.dim:
            raise ValidationError("inner code is not contained in the outer code")
        self.c1 = c1
        self.c2 = c2
        self.ell = ell

    @property
    def field(self):
        return self.c1.field

    @property
    def n(self):
        return self.c1.n

    def dual_pair(self):
        """The nested pair (c2^perp, c1^perp), again of codimension ell."""
        return NestedCodePair(dual(self.c2), dual(self.c1))

    def __repr__(self):
        return (
            f"NestedCodePair[{self.n}; {self.c1.dim}/{self.c2.dim}]"
            f" over GF({self.field.q})"
        )


def _shortening_gap_by_mask(pair, budget):
    """dim (c1)_B - dim (c2)_B for every index set B, indexed by bitmask.

    Uses rank-nullity on the complement columns: dim C_B = dim C - rank of
    the generator columns outside B.
    """
    n = pair.n
    check_budget(1 << n, budget)
    q = pair.field.q
    r1 = kernels.rank_sweep(q, pair.c1.generator_rows(), n)
    r2 = kernels.rank_sweep(q, pair.c2.generator_rows(), n)
    ell = pair.ell
    fullmask = (1 << n) - 1
    return [ell - r1[fullmask ^ b] + r2[fullmask ^ b] for b in range(1 << n)]


def rghw_all_exhaustive(pair, budget=DEFAULT_BUDGET):
    """All relative generalized Hamming weights M_1..M_ell of the pair.

    M_t is the least #B such that dim (c1)_B - dim (c2)_B >= t.  Subsets are
    enumerated via a full rank sweep when 2**n fits the budget, otherwise in
    increasing size with the budget counting subset evaluations.
    """
    n, ell = pair.n, pair.ell
    if budget is None or (1 << n) <= budget:
        gap = _shortening_gap_by_mask(pair, budget)
        best = [None] * (ell + 1)
        for mask, g in enumerate(gap):
            size = mask.bit_count()
            for t in range(1, g + 1):
                if best[t] is None or size < best[t]:
                    best[t] = size
        return tuple(best[1:])
    return tuple(rghw_exhaustive(pair, t, budget) for t in range(1, ell + 1))


def rghw_exhaustive(pair, t, budget=DEFAULT_BUDGET):
    """M_t of the pair: smallest support size of a dimension-t subspace of c1
    meeting c2 trivially, via the index-set characterization."""
    if not (1 <= t <= pair.ell):
        raise ValidationError(f"level must be in 1..{pair.ell}")
    n = pair.n
    if budget is None or (1 << n) <= budget:
        gap = _shortening_gap_by_mask(pair, budget)
        best = None
        for mask, g in enumerate(gap):
            if g >= t:
                size = mask.bit_count()
                if best is None or size < best:
                    best = size
        return best
    q = pair.field.q
    g1 = pair.c1.generator_rows()
    g2 = pair.c2.generator_rows()
    k1, k2 = pair.c1.dim, pair.c2.dim
    used = 0
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            used += 1
            check_budget(used, budget)
            outside = [j for j in range(n) if j not in combo]
            d1 = k1 - kernels.rank_mod(q, [[r[j] for j in outside] for r in g1])
            d2 = k2 - kernels.rank_mod(q, [[r[j] for j in outside] for r in g2])
            if d1 - d2 >= t:
                return size
    raise ValidationError("no subset reaches the requested level")


def min_distance_exhaustive(c, budget=DEFAULT_BUDGET):
    """Minimum Hamming weight over the nonzero codewords."""
    if c.dim == 0:
        raise ValidationError("the zero code has no minimum distance")
    check_budget(c.field.q**c.dim - 1, budget, "codeword evaluations")
    return kernels.min_weight_mod(c.field.q, c.generator_rows())
