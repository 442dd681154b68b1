"""Monomial-Cartesian machinery: exponent boxes, monomial orders, evaluation
codes, divisibility counts, relative-weight bounds, and witness polynomials.

Monomials are exponent tuples (i_1, ..., i_m) inside the box
Delta(s_1..s_m) = {0 <= i_v < s_v}.  Two counting functions drive everything:

    d_value(M)      = prod(s_t - i_t)   -- box monomials divisible by M
    dperp_value(M)  = prod(i_t + 1)     -- box monomials dividing M

and their set versions d_set / dperp_set counting the union over a monomial
set K.  Minimizing d_set(K) over fixed-size K drawn from an order-determined
candidate window yields a lower bound on the relative generalized Hamming
weights of nested evaluation codes; minimizing dperp_set bounds the weights
of the dual pair.  Witness polynomials (products of per-axis root prefixes)
turn the primary bound into an exact value: their evaluation has exactly
d_value(leading monomial) nonzeros.
"""

import itertools
from dataclasses import dataclass

from . import kernels
from .codes import IndexSet, LinearCode
from .errors import DEFAULT_BUDGET, ValidationError, check_budget


@dataclass(frozen=True)
class Axis:
    """An ordered tuple of distinct evaluation points from one field.

    The enumeration order is semantic: window constructions index into it.
    """

    field: object
    points: tuple

    def __post_init__(self):
        pts = tuple(self.field.element(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        if len(set(pts)) != len(pts):
            raise ValidationError("axis points must be distinct")
        if not 1 <= len(pts) <= self.field.q:
            raise ValidationError("axis size must be in [1, q]")

    @property
    def size(self):
        return len(self.points)


class PointSet:
    """A Cartesian product of axes.

    Point i is the i-th element of itertools.product over the axes, i.e. the
    last axis varies fastest; `index_of` maps per-axis positions to i.
    """

    __slots__ = ("axes", "field", "dims", "n", "_points")

    def __init__(self, axes):
        axes = tuple(axes)
        if not axes:
            raise ValidationError("at least one axis required")
        field = axes[0].field
        if any(ax.field != field for ax in axes):
            raise ValidationError("axes must share one field")
        self.axes = axes
        self.field = field
        self.dims = tuple(ax.size for ax in axes)
        n = 1
        for s in self.dims:
            n *= s
        self.n = n
        self._points = tuple(itertools.product(*(ax.points for ax in axes)))

    @property
    def m(self):
        return len(self.axes)

    def points(self):
        return self._points

    def index_of(self, positions):
        """Flat point index from per-axis positions."""
        idx = 0
        for pos, size in zip(positions, self.dims):
            if not 0 <= pos < size:
                raise ValidationError("axis position out of range")
            idx = idx * size + pos
        return idx

    def product_index_set(self, windows):
        """IndexSet of all points whose axis positions lie in the windows."""
        members = [self.index_of(pos) for pos in itertools.product(*windows)]
        return IndexSet(self.n, members)


class MonomialOrder:
    """A monomial order: graded-lex or lex, with a variable priority.

    `priority` lists variable indices from most significant to least for the
    lexicographic comparison.  graded_lex(m) breaks degree ties by reading
    exponents from the last variable down, so among equal degrees a monomial
    with more weight on early variables comes first; lex(m) compares the
    first variable's exponent first.
    """

    __slots__ = ("kind", "priority")

    GRADED_LEX = "graded-lex"
    LEX = "lex"

    def __init__(self, kind, priority):
        if kind not in (self.GRADED_LEX, self.LEX):
            raise ValidationError(f"unknown order kind {kind!r}")
        priority = tuple(priority)
        if sorted(priority) != list(range(len(priority))):
            raise ValidationError("priority must be a permutation of the variables")
        self.kind = kind
        self.priority = priority

    @classmethod
    def graded_lex(cls, m, priority=None):
        if priority is None:
            priority = tuple(range(m - 1, -1, -1))
        return cls(cls.GRADED_LEX, priority)

    @classmethod
    def lex(cls, m, priority=None):
        if priority is None:
            priority = tuple(range(m))
        return cls(cls.LEX, priority)

    @property
    def m(self):
        return len(self.priority)

    def key(self, mono):
        lexkey = tuple(mono[v] for v in self.priority)
        if self.kind == self.GRADED_LEX:
            return (sum(mono), lexkey)
        return lexkey

    def precedes(self, a, b):
        return self.key(a) < self.key(b)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.priority == other.priority
        )

    def __hash__(self):
        return hash((self.kind, self.priority))

    def __repr__(self):
        return f"MonomialOrder({self.kind}, priority={self.priority})"


def delta_box(dims):
    """All exponent tuples of the box, in product order."""
    return list(itertools.product(*(range(s) for s in dims)))


def in_box(mono, dims):
    return len(mono) == len(dims) and all(0 <= e < s for e, s in zip(mono, dims))


def enumerate_delta(dims, order):
    """The box monomials sorted ascending by the order."""
    if order.m != len(dims):
        raise ValidationError("order arity does not match the box")
    return sorted(delta_box(dims), key=order.key)


def divides(a, b):
    """Whether monomial a divides monomial b (componentwise <=)."""
    return all(x <= y for x, y in zip(a, b))


def minimal_elements(monos):
    monos = list(monos)
    return [
        m
        for m in monos
        if not any(other != m and divides(other, m) for other in monos)
    ]


def maximal_elements(monos):
    monos = list(monos)
    return [
        m
        for m in monos
        if not any(other != m and divides(m, other) for other in monos)
    ]


def d_value(mono, dims):
    """Count of box monomials divisible by mono: prod(s_t - i_t)."""
    out = 1
    for e, s in zip(mono, dims):
        out *= s - e
    return out


def dperp_value(mono, dims):
    """Count of box monomials dividing mono: prod(i_t + 1)."""
    out = 1
    for e in mono:
        out *= e + 1
    return out


def d_set_scan(monos, dims):
    """Direct scan of the box for monomials divisible by some member."""
    monos = list(monos)
    return sum(
        1 for cand in delta_box(dims) if any(divides(m, cand) for m in monos)
    )


def dperp_set_scan(monos, dims):
    monos = list(monos)
    return sum(
        1 for cand in delta_box(dims) if any(divides(cand, m) for m in monos)
    )


def d_set_inclexcl(monos, dims):
    """d_set via inclusion-exclusion over the minimal elements."""
    mins = minimal_elements(monos)
    total = 0
    k = len(mins)
    for mask in range(1, 1 << k):
        lcm = None
        bits = 0
        for i in range(k):
            if mask >> i & 1:
                bits += 1
                lcm = mins[i] if lcm is None else tuple(map(max, lcm, mins[i]))
        if in_box(lcm, dims):
            total += (1 if bits % 2 else -1) * d_value(lcm, dims)
    return total


def dperp_set_inclexcl(monos, dims):
    """dperp_set via inclusion-exclusion over the maximal elements."""
    maxs = maximal_elements(monos)
    total = 0
    k = len(maxs)
    for mask in range(1, 1 << k):
        gcd = None
        bits = 0
        for i in range(k):
            if mask >> i & 1:
                bits += 1
                gcd = maxs[i] if gcd is None else tuple(map(min, gcd, maxs[i]))
        total += (1 if bits % 2 else -1) * dperp_value(gcd, dims)
    return total


def d_set(monos, dims):
    monos = list(monos)
    if not monos:
        raise ValidationError("d_set of an empty set is undefined")
    if any(not in_box(m, dims) for m in monos):
        raise ValidationError("monomial outside the box")
    if len(minimal_elements(monos)) <= 16:
        return d_set_inclexcl(monos, dims)
    return d_set_scan(monos, dims)


def dperp_set(monos, dims):
    monos = list(monos)
    if not monos:
        raise ValidationError("dperp_set of an empty set is undefined")
    if any(not in_box(m, dims) for m in monos):
        raise ValidationError("monomial outside the box")
    if len(maximal_elements(monos)) <= 16:
        return dperp_set_inclexcl(monos, dims)
    return dperp_set_scan(monos, dims)


def evaluate_monomial(ps, mono):
    """Evaluation vector of the monomial at every point of the set."""
    q = ps.field.q
    return tuple(
        _eval_power_product(pt, mono, q) for pt in ps.points()
    )


def _eval_power_product(point, mono, q):
    out = 1
    for x, e in zip(point, mono):
        if e:
            out = out * pow(x, e, q) % q
    return out


def evaluate_code(ps, monomials):
    """The evaluation code spanned by ev(M) for M in the set.

    The restricted evaluation map is injective on the box span, so the code
    dimension equals the number of distinct monomials.
    """
    monos = sorted(set(tuple(m) for m in monomials))
    for m in monos:
        if not in_box(m, ps.dims):
            raise ValidationError(f"exponent {m} outside the box {ps.dims}")
    rows = [evaluate_monomial(ps, m) for m in monos]
    code = LinearCode.from_rows(ps.field, ps.n, rows)
    assert code.dim == len(monos), "evaluation unexpectedly dropped rank"
    return code


def separated_layers(l1, l2, order):
    """Whether every monomial of l1 \\ l2 exceeds every monomial of l2.

    When true, coset-dimension searches over polynomial spans may restrict
    leading monomials to l1 \\ l2; the two-variable and codimension-one
    constructions satisfy it, generic box-window constructions do not.
    """
    l1 = set(map(tuple, l1))
    l2 = set(map(tuple, l2))
    window = l1 - l2
    if not l2 or not window:
        return True
    top2 = max(map(order.key, l2))
    bot1 = min(map(order.key, window))
    return top2 < bot1


@dataclass(frozen=True)
class RghwBound:
    """A certified optimum of the candidate-family minimization."""

    kind: str  # "primary" or "dual"
    level: int
    value: int
    certificate: tuple  # the minimizing monomial set, size == level

    def __str__(self):
        return f"M_{self.level} {self.kind} bound {self.value} via {self.certificate}"


def _position_masks(cands, dims, dual):
    """Bitmask over box positions of each candidate's cone (or divisor set)."""
    box = delta_box(dims)
    pos = {m: i for i, m in enumerate(box)}
    masks = []
    for c in cands:
        mask = 0
        for cell in box:
            if (divides(c, cell) if not dual else divides(cell, c)):
                mask |= 1 << pos[cell]
        masks.append(mask)
    return masks


def _minimize_union(cands, dims, v, budget, dual=False):
    """min over K within cands, #K = v, of the union measure.

    Only divisibility antichains need enumeration: any K has the same measure
    as its minimal (resp. maximal) elements, and can be refilled to size v
    from the candidates its antichain already covers.  Branches whose union
    is already no better than the best found are cut, which is sound because
    the measure grows monotonically as elements are added.
    """
    cands = list(cands)
    if v > len(cands):
        raise ValidationError("candidate family smaller than the requested size")
    masks = _position_masks(cands, dims, dual)
    # low singleton measure first makes the monotone pruning bite early
    order_idx = sorted(range(len(cands)), key=lambda i: (masks[i].bit_count(), cands[i]))
    cands = [cands[i] for i in order_idx]
    masks = [masks[i] for i in order_idx]
    k = len(cands)
    comparable = [
        [
            divides(cands[i], cands[j]) or divides(cands[j], cands[i])
            for j in range(k)
        ]
        for i in range(k)
    ]
    best = None
    best_cert = None
    used = 0
    chosen = []
    _chosen_idx = []

    def coverage_count(union_mask):
        return sum(1 for mk in masks if mk & union_mask == mk)

    def fill(union_mask):
        out = list(chosen)
        for i in range(k):
            if len(out) == v:
                break
            ci = cands[i]
            if ci not in out and masks[i] & union_mask == masks[i]:
                out.append(ci)
        return tuple(sorted(out))

    def descend(start, union_mask):
        nonlocal best, best_cert, used
        for i in range(start, k):
            if any(comparable[i][j] for j in _chosen_idx):
                continue
            new_mask = union_mask | masks[i]
            measure = new_mask.bit_count()
            used += 1
            check_budget(used, budget, "candidate evaluations")
            if best is not None and measure >= best:
                continue
            chosen.append(cands[i])
            _chosen_idx.append(i)
            if coverage_count(new_mask) >= v:
                best = measure
                best_cert = fill(new_mask)
            if len(chosen) < v:
                descend(i + 1, new_mask)
            chosen.pop()
            _chosen_idx.pop()

    descend(0, 0)
    if best is None:
        raise ValidationError("no candidate set of the requested size exists")
    return best, best_cert


def _minimize_union_unpruned(cands, dims, v, budget, dual=False):
    """Reference minimization over every size-v subset (validation only)."""
    cands = list(cands)
    measure = dperp_set if dual else d_set
    best = None
    best_cert = None
    used = 0
    for combo in itertools.combinations(cands, v):
        used += 1
        check_budget(used, budget, "candidate evaluations")
        val = measure(combo, dims)
        if best is None or val < best:
            best = val
            best_cert = tuple(sorted(combo))
    if best is None:
        raise ValidationError("no candidate set of the requested size exists")
    return best, best_cert


def min_d_over_subsets(cands, dims, v, budget=DEFAULT_BUDGET, unpruned=False):
    """(min d_set(K), minimizing K) over K within cands of size exactly v."""
    minimize = _minimize_union_unpruned if unpruned else _minimize_union
    return minimize(list(cands), dims, v, budget, dual=False)


def min_dperp_over_subsets(cands, dims, v, budget=DEFAULT_BUDGET, unpruned=False):
    """(min dperp_set(K), minimizing K) over K within cands of size v."""
    minimize = _minimize_union_unpruned if unpruned else _minimize_union
    return minimize(list(cands), dims, v, budget, dual=True)


def _window_sets(dims, l1, l2, order):
    enum = enumerate_delta(dims, order)
    l1 = set(map(tuple, l1))
    l2 = set(map(tuple, l2))
    if not l2 < l1:
        raise ValidationError("inner monomial set must be a proper subset")
    for m in l1:
        if not in_box(m, dims):
            raise ValidationError(f"exponent {m} outside the box {dims}")
    return enum, l1, l2


def bound_rghw_primary(dims, l1, l2, order, v, budget=DEFAULT_BUDGET, unpruned=False):
    """Certified lower bound for the v-th relative weight of the nested
    evaluation codes: the exact minimum of d_set over the candidate family
    {N >= first window monomial} intersected with l1."""
    enum, l1, l2 = _window_sets(dims, l1, l2, order)
    ell = len(l1) - len(l2)
    if not 1 <= v <= ell:
        raise ValidationError(f"level must be in 1..{ell}")
    u = next(i for i, mono in enumerate(enum) if mono in l1 and mono not in l2)
    cands = [mono for mono in enum[u:] if mono in l1]
    minimize = _minimize_union_unpruned if unpruned else _minimize_union
    value, cert = minimize(cands, dims, v, budget, dual=False)
    return RghwBound("primary", v, value, cert)


def bound_rghw_dual(dims, l1, l2, order, v, budget=DEFAULT_BUDGET, unpruned=False):
    """Certified lower bound for the v-th relative weight of the dual pair:
    the exact minimum of dperp_set over {N <= last l1 monomial} minus l2."""
    enum, l1, l2 = _window_sets(dims, l1, l2, order)
    ell = len(l1) - len(l2)
    if not 1 <= v <= ell:
        raise ValidationError(f"level must be in 1..{ell}")
    u_perp = max(i for i, mono in enumerate(enum) if mono in l1)
    cands = [mono for mono in enum[: u_perp + 1] if mono not in l2]
    minimize = _minimize_union_unpruned if unpruned else _minimize_union
    value, cert = minimize(cands, dims, v, budget, dual=True)
    return RghwBound("dual", v, value, cert)


class WitnessPoly:
    """A product of per-axis root prefixes, expanded to coefficient form.

    With prefix lengths (i_1..i_m) the polynomial is
    prod_t prod_{w<=i_t} (X_t - beta_w^{(t)}); its support is contained in
    the divisor closure of the leading monomial X_1^{i_1}..X_m^{i_m}, and its
    evaluation vanishes everywhere except on the product of the per-axis
    suffix windows, d_value(lm) points in total.
    """

    __slots__ = ("field", "prefixes", "coeffs")

    def __init__(self, field, prefixes, coeffs):
        self.field = field
        self.prefixes = tuple(prefixes)
        self.coeffs = dict(coeffs)

    @property
    def leading_monomial(self):
        return self.prefixes

    def support(self):
        return sorted(self.coeffs)

    def evaluate(self, ps):
        """Evaluation vector over the point set, from the expanded form."""
        q = ps.field.q
        out = []
        for pt in ps.points():
            acc = 0
            for mono, coeff in self.coeffs.items():
                acc = (acc + coeff * _eval_power_product(pt, mono, q)) % q
            out.append(acc)
        return tuple(out)

    def nonroot_windows(self, ps):
        """Per-axis position windows of the predicted non-roots."""
        return tuple(
            tuple(range(pref, size))
            for pref, size in zip(self.prefixes, ps.dims)
        )

    def nonroot_index_set(self, ps):
        return ps.product_index_set(self.nonroot_windows(ps))

    def __repr__(self):
        return f"WitnessPoly(prefixes={self.prefixes}, {len(self.coeffs)} terms)"


def _expand_prefix(axis, count, q):
    """Coefficients of prod_{w<count}(X - beta_w) by convolution."""
    coeffs = [1]
    for w in range(count):
        b = axis.points[w]
        coeffs = [0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] = (coeffs[i] - b * coeffs[i + 1]) % q
    return coeffs


def witness_poly(prefixes, ps):
    """The witness polynomial with the given per-axis root-prefix lengths."""
    prefixes = tuple(prefixes)
    if len(prefixes) != ps.m:
        raise ValidationError("one prefix length per axis required")
    if any(not 0 <= p <= s for p, s in zip(prefixes, ps.dims)):
        raise ValidationError("prefix lengths must be within the axis sizes")
    q = ps.field.q
    per_axis = [
        _expand_prefix(ax, pref, q) for ax, pref in zip(ps.axes, prefixes)
    ]
    coeffs = {}
    for mono in itertools.product(*(range(len(c)) for c in per_axis)):
        val = 1
        for e, c in zip(mono, per_axis):
            val = val * c[e] % q
        if val:
            coeffs[mono] = val
    return WitnessPoly(ps.field, prefixes, coeffs)


@dataclass(frozen=True)
class SharpnessCertificate:
    """Executable proof that the primary bound value is attained.

    The span of the witnesses for the certificate monomials sits inside the
    outer code, meets the inner code trivially, has full dimension, and its
    support size equals the bound, so the relative weight is exact.
    """

    ok: bool
    value: int
    checks: dict

    def __bool__(self):
        return self.ok


def certify_rghw_sharpness(ps, l1, l2, monos):
    """Build witnesses for the monomials and verify they realize d_set."""
    dims = ps.dims
    l1 = set(map(tuple, l1))
    l2 = set(map(tuple, l2))
    monos = [tuple(m) for m in monos]
    checks = {}
    checks["distinct_leading_monomials"] = len(set(monos)) == len(monos)
    checks["leading_in_window"] = all(m in l1 and m not in l2 for m in monos)
    witnesses = [witness_poly(m, ps) for m in monos]
    checks["support_in_outer_set"] = all(
        set(w.coeffs) <= l1 for w in witnesses
    )
    rows = [w.evaluate(ps) for w in witnesses]
    q = ps.field.q
    checks["independent"] = kernels.rank_mod(q, rows) == len(monos)
    inner_rows = [evaluate_monomial(ps, m) for m in sorted(l2)]
    checks["trivial_inner_intersection"] = (
        kernels.rank_mod(q, inner_rows + rows)
        == kernels.rank_mod(q, inner_rows) + len(monos)
    )
    supp = set()
    for row in rows:
        supp.update(j for j, x in enumerate(row) if x)
    expected = d_set(monos, dims)
    checks["support_matches_count"] = len(supp) == expected
    return SharpnessCertificate(all(checks.values()), expected, checks)


def grid_values(dims, which):
    """Value grid(s) for the box, organized like a printed table.

    For one axis: a single row over increasing exponent.  For two axes: rows
    from the highest second exponent down to zero, columns over the first
    exponent.  For three or more: one two-axis grid per tail-exponent slab,
    slabs in ascending product order of the remaining exponents.
    Returns a list of (tail_exponents, rows) pairs; tail_exponents is () for
    m <= 2.
    """
    if which == "d":
        value = d_value
    elif which == "dperp":
        value = dperp_value
    else:
        raise ValidationError("which must be 'd' or 'dperp'")
    if any(s < 1 for s in dims):
        raise ValidationError("box dimensions must be positive")
    if len(dims) == 1:
        rows = [[value((i,), dims) for i in range(dims[0])]]
        return [((), rows)]
    s1, s2 = dims[0], dims[1]
    tails = (
        [()]
        if len(dims) == 2
        else list(itertools.product(*(range(s) for s in dims[2:])))
    )
    out = []
    for tail in tails:
        rows = [
            [value((i1, i2) + tail, dims) for i1 in range(s1)]
            for i2 in range(s2 - 1, -1, -1)
        ]
        out.append((tail, rows))
    return out


def format_grid(dims, which):
    """Plain-text grid: one line per row, values separated by single spaces."""
    parts = []
    for tail, rows in grid_values(dims, which):
        if tail:
            parts.append("slab " + ",".join(str(e) for e in tail) + ":")
        parts.extend(" ".join(str(v) for v in row) for row in rows)
    return "\n".join(parts)
