"""Ramp secret sharing from a nested code pair.

A scheme is the pair plus an ordered basis whose first k2 rows span the inner
code and whose remaining ell rows extend it to the outer code.  A secret
(s_1..s_ell) is dealt as a_1 b_1 + ... + a_k2 b_k2 + s_1 b_{k2+1} + ... +
s_ell b_k1 with uniformly random a; coordinate i of the result is the share
of participant i.

Information is measured in q-bits: a coalition holding i q-bits confines the
secret to a coset of dimension ell - i.  `uncertainty` computes that coset
dimension from projection ranks, `info_dim` from explicitly constructed
shortened codes; their agreement on every subset is a tested identity, not an
implementation shortcut.
"""

import itertools
import random
from dataclasses import dataclass

from . import kernels
from .codes import IndexSet, NestedCodePair, shortened
from .errors import (
    DEFAULT_BUDGET,
    NonRealizableSharesError,
    ValidationError,
    check_budget,
)
from .gf import Matrix, Subspace, solve_affine

EXACT = "exact"
LOWER_BOUND = "lower-bound"
UPPER_BOUND = "upper-bound"


class RampScheme:
    """A nested pair plus the ordered dealing basis."""

    __slots__ = ("pair", "basis")

    def __init__(self, pair, basis):
        if basis.field != pair.field or basis.cols != pair.n:
            raise ValidationError("basis shape does not match the pair")
        if basis.rows != pair.c1.dim:
            raise ValidationError("basis must have dim(c1) rows")
        k2 = pair.c2.dim
        inner = Subspace(pair.field, pair.n, basis.entries[:k2])
        if inner != pair.c2.gen:
            raise ValidationError("first rows must be a basis of the inner code")
        outer = Subspace(pair.field, pair.n, basis.entries)
        if outer != pair.c1.gen:
            raise ValidationError("rows must be a basis of the outer code")
        self.pair = pair
        self.basis = basis

    @classmethod
    def from_pair(cls, pair, extension_rows=None):
        """Build a scheme from the pair, extending the inner basis.

        With extension_rows=None the extension is completed greedily from the
        outer code's canonical basis; otherwise the given rows are used (they
        must extend the inner code to the outer one).
        """
        field = pair.field
        rows = [list(r) for r in pair.c2.generator_rows()]
        if extension_rows is None:
            for cand in pair.c1.generator_rows():
                if kernels.rank_mod(field.q, rows + [list(cand)]) > len(rows):
                    rows.append(list(cand))
        else:
            rows.extend(list(r) for r in extension_rows)
        return cls(pair, Matrix(field, rows, cols=pair.n))

    @property
    def field(self):
        return self.pair.field

    @property
    def n(self):
        return self.pair.n

    @property
    def ell(self):
        return self.pair.ell

    @property
    def k1(self):
        return self.pair.c1.dim

    @property
    def k2(self):
        return self.pair.c2.dim

    def __repr__(self):
        return (
            f"RampScheme(n={self.n}, ell={self.ell}, q={self.field.q},"
            f" k2={self.k2})"
        )


def _draw_mod(rng, q):
    # uniform int in [0, q) by rejection on the minimal bit width
    bits = max(1, (q - 1).bit_length())
    while True:
        x = rng.getrandbits(bits)
        if x < q:
            return x


def deal(scheme, secret, seed):
    """Share vector for the secret under the seeded deterministic generator."""
    rng = random.Random(seed)
    randomness = tuple(_draw_mod(rng, scheme.field.q) for _ in range(scheme.k2))
    return deal_with_randomness(scheme, secret, randomness)


def deal_with_randomness(scheme, secret, randomness):
    """Share vector with explicit randomness coefficients (length k2)."""
    if len(secret) != scheme.ell:
        raise ValidationError(f"secret must have length {scheme.ell}")
    if len(randomness) != scheme.k2:
        raise ValidationError(f"randomness must have length {scheme.k2}")
    coeffs = tuple(randomness) + tuple(secret)
    return scheme.basis.vec_mul(coeffs)


@dataclass(frozen=True)
class ShareBundle:
    """Share values held by a coalition, aligned with its index set."""

    indices: IndexSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.indices):
            raise ValidationError("share count must match the index set")


def bundle_from_vector(scheme, vector, indices):
    return ShareBundle(indices, tuple(vector[i] for i in indices))


class SecretCoset:
    """The coset p + V of secrets consistent with a coalition's shares."""

    __slots__ = ("field", "particular", "directions")

    def __init__(self, field, particular, directions):
        self.field = field
        self.directions = directions
        # canonical representative, so equal cosets compare equal
        self.particular = directions.reduce(particular)

    @property
    def dim(self):
        return self.directions.dim

    @property
    def size(self):
        return self.field.q**self.dim

    def contains(self, secret):
        return self.directions.reduce(secret) == self.particular

    def iter_elements(self):
        q = self.field.q
        rows = self.directions.basis.entries
        ell = self.directions.ambient_dim
        for coeffs in itertools.product(range(q), repeat=len(rows)):
            vec = list(self.particular)
            for c, row in zip(coeffs, rows):
                if c:
                    for j in range(ell):
                        vec[j] = (vec[j] + c * row[j]) % q
            yield tuple(vec)

    def __eq__(self, other):
        return (
            isinstance(other, SecretCoset)
            and self.field == other.field
            and self.particular == other.particular
            and self.directions == other.directions
        )

    def __hash__(self):
        return hash((self.field, self.particular, self.directions))

    def __repr__(self):
        return f"SecretCoset(dim={self.dim}, particular={self.particular})"


def uncertainty(scheme, a):
    """Coset dimension left to a coalition, from projection ranks:
    ell - dim P_A(C1) + dim P_A(C2)."""
    if a.n != scheme.n:
        raise ValidationError("index set length mismatch")
    q = scheme.field.q
    cols = list(a.members)
    p1 = kernels.rank_mod(q, [[r[j] for j in cols] for r in scheme.pair.c1.generator_rows()])
    p2 = kernels.rank_mod(q, [[r[j] for j in cols] for r in scheme.pair.c2.generator_rows()])
    return scheme.ell - p1 + p2


def info_dim(scheme, a):
    """Coset dimension from shortened codes on the complement:
    dim (C1)_{A^c} - dim (C2)_{A^c}."""
    if a.n != scheme.n:
        raise ValidationError("index set length mismatch")
    outside = a.complement()
    d1 = shortened(scheme.pair.c1, outside).dim
    d2 = shortened(scheme.pair.c2, outside).dim
    return d1 - d2


def qbits_held(scheme, a):
    """q-bits of information the coalition holds: ell - uncertainty."""
    return scheme.ell - uncertainty(scheme, a)


def reconstruct(scheme, shares):
    """The coset of all secrets consistent with the given shares.

    Solves m @ G' = values for the dealt coefficient vector m, then projects
    the solution set onto the secret coordinates.  Raises
    NonRealizableSharesError when no codeword matches the shares.
    """
    a = shares.indices
    if a.n != scheme.n:
        raise ValidationError("index set length mismatch")
    field = scheme.field
    sub = scheme.basis.column_submatrix(a.members)
    sol = solve_affine(sub, shares.values)
    if sol is None:
        raise NonRealizableSharesError(
            "shares are not realizable by any codeword of the outer code"
        )
    particular, kernel = sol
    k2, ell = scheme.k2, scheme.ell
    directions = Subspace(
        field, ell, [row[k2:] for row in kernel.basis.entries]
    )
    return SecretCoset(field, particular[k2:], directions)


@dataclass(frozen=True)
class AccessProfile:
    """Privacy numbers t_1..t_ell and reconstruction numbers r_1..r_ell.

    Each entry carries its provenance: "exact", "lower-bound" (the true value
    is >= the stored one) or "upper-bound".
    """

    t: tuple
    r: tuple
    t_provenance: tuple
    r_provenance: tuple

    def __post_init__(self):
        ell = len(self.t)
        if not (len(self.r) == len(self.t_provenance) == len(self.r_provenance) == ell):
            raise ValidationError("profile sequences must share one length")
        if any(self.t[i] > self.t[i + 1] for i in range(ell - 1)):
            raise ValidationError("privacy numbers must be non-decreasing")
        if any(self.r[i] > self.r[i + 1] for i in range(ell - 1)):
            raise ValidationError("reconstruction numbers must be non-decreasing")
        if any(self.t[i] >= self.r[i] for i in range(ell)):
            raise ValidationError("each t_m must be below r_m")

    @property
    def ell(self):
        return len(self.t)


def information_by_subset(scheme, budget=DEFAULT_BUDGET):
    """q-bits held by every coalition, indexed by coordinate bitmask."""
    n = scheme.n
    check_budget(1 << n, budget)
    q = scheme.field.q
    r1 = kernels.rank_sweep(q, scheme.pair.c1.generator_rows(), n)
    r2 = kernels.rank_sweep(q, scheme.pair.c2.generator_rows(), n)
    return [r1[m] - r2[m] for m in range(1 << n)]


def access_profile_exhaustive(scheme, budget=DEFAULT_BUDGET):
    """Exact profile by scanning all 2**n coalitions."""
    n, ell = scheme.n, scheme.ell
    info = information_by_subset(scheme, budget)
    fmin = [ell] * (n + 1)
    fmax = [0] * (n + 1)
    for mask, f in enumerate(info):
        s = mask.bit_count()
        if f < fmin[s]:
            fmin[s] = f
        if f > fmax[s]:
            fmax[s] = f
    t = []
    r = []
    for m in range(1, ell + 1):
        t.append(min(s for s in range(n + 1) if fmax[s] >= m) - 1)
        r.append(max(s for s in range(n + 1) if fmin[s] < m) + 1)
    return AccessProfile(tuple(t), tuple(r), (EXACT,) * ell, (EXACT,) * ell)


def access_partition(scheme, budget=DEFAULT_BUDGET):
    """The coalitions grouped by exact q-bits held: entry i lists the sets
    holding exactly i q-bits."""
    n, ell = scheme.n, scheme.ell
    info = information_by_subset(scheme, budget)
    groups = [[] for _ in range(ell + 1)]
    for mask, f in enumerate(info):
        groups[f].append(IndexSet.from_mask(n, mask))
    return groups


def _check_weights(weights, ell, n):
    weights = tuple(weights)
    if len(weights) != ell:
        raise ValidationError(f"expected {ell} weights, got {len(weights)}")
    if any(w2 <= w1 for w1, w2 in zip(weights, weights[1:])):
        raise ValidationError("weights must be strictly increasing")
    if weights[0] < 1 or weights[-1] > n:
        raise ValidationError("weights must lie in [1, n]")
    return weights


def profile_from_rghw(
    n,
    ell,
    primary_weights,
    dual_weights,
    primary_provenance=EXACT,
    dual_provenance=EXACT,
):
    """Profile from relative weights: t_m = Mdual_m - 1 and
    r_m = n - Mprimary_{ell-m+1} + 1.

    Provenance propagates: an exact weight gives an exact entry; a
    lower-bound primary weight gives an upper bound on r, and a lower-bound
    dual weight a lower bound on t.
    """
    primary = _check_weights(primary_weights, ell, n)
    dweights = _check_weights(dual_weights, ell, n)
    t = tuple(w - 1 for w in dweights)
    r = tuple(n - primary[ell - m] + 1 for m in range(1, ell + 1))
    t_prov = EXACT if dual_provenance == EXACT else LOWER_BOUND
    r_prov = EXACT if primary_provenance == EXACT else UPPER_BOUND
    return AccessProfile(t, r, (t_prov,) * ell, (r_prov,) * ell)


@dataclass(frozen=True)
class NonQualifyingCheck:
    """Outcome of checking that a coalition cannot reach a given level."""

    ok: bool
    level: int
    subset_size: int
    coset_dim: int
    qbits: int
    maximum: object = None  # True/False when the relevant weight is known

    def __str__(self):
        verdict = "non-qualifying" if self.ok else "QUALIFIES"
        extra = ""
        if self.maximum is not None:
            extra = ", maximum" if self.maximum else ", not maximum"
        return (
            f"level {self.level}: size {self.subset_size} holds {self.qbits}"
            f" q-bit(s) -> {verdict}{extra}"
        )


def verify_non_qualifying(scheme, a, u, max_weight=None):
    """Check that coalition `a` holds fewer than `u` q-bits.

    When max_weight (the relative weight M_{ell-u+1} of the pair) is known,
    the certificate also records whether the set has the maximum possible
    size n - max_weight for a non-u-qualifying set.
    """
    if not (1 <= u <= scheme.ell):
        raise ValidationError(f"level must be in 1..{scheme.ell}")
    coset_dim = info_dim(scheme, a)
    held = scheme.ell - coset_dim
    ok = held < u
    maximum = None
    if max_weight is not None:
        maximum = ok and len(a) == scheme.n - max_weight
    return NonQualifyingCheck(
        ok=ok,
        level=u,
        subset_size=len(a),
        coset_dim=coset_dim,
        qbits=held,
        maximum=maximum,
    )


def brute_force_secret_set(scheme, shares, budget=DEFAULT_BUDGET):
    """All secrets some dealing of which matches the given shares.

    Oracle-grade: enumerates every (secret, randomness) pair, q**k1 dealings.
    """
    q = scheme.field.q
    check_budget(q**scheme.k1, budget, "dealings")
    idx = list(shares.indices.members)
    want = tuple(shares.values)
    found = set()
    for secret in itertools.product(range(q), repeat=scheme.ell):
        for rand in itertools.product(range(q), repeat=scheme.k2):
            vec = deal_with_randomness(scheme, secret, rand)
            if tuple(vec[i] for i in idx) == want:
                found.add(secret)
                break
    return found
