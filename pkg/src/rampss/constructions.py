"""Scheme families over Cartesian point sets with systematic families of
coalitions that provably cannot reach a given information level.

Three constructions are provided:

* two-variable window schemes over equal axes under a graded-lex order
  (closed-form reconstruction numbers, privacy lower bounds, and staircase
  window families),
* codimension-one schemes cut below a single top monomial,
* box-window ("considerate") schemes: the outer monomial set is a full
  down-box, the removed set is a sub-box, and the defining property is that
  every fixed-size d_set minimization over the lex tail is already attained
  inside the removed sub-box.  That property yields complement-of-product
  coalitions of maximum size for every level.
"""

import itertools
import math
from dataclasses import dataclass

from .cartesian import (
    Axis,
    MonomialOrder,
    PointSet,
    bound_rghw_dual,
    bound_rghw_primary,
    certify_rghw_sharpness,
    d_set,
    d_value,
    dperp_value,
    enumerate_delta,
    evaluate_code,
    evaluate_monomial,
    in_box,
    min_d_over_subsets,
    minimal_elements,
)
from .codes import IndexSet, NestedCodePair
from .errors import DEFAULT_BUDGET, TheoremScopeError, ValidationError
from .sharing import EXACT, LOWER_BOUND, RampScheme, profile_from_rghw

CONSIDERATE_BY_RULE = "considerate-by-sufficient-condition"
CONDITION_NOT_MET = "condition-not-met"
NOT_APPLICABLE = "not-applicable"

CERTIFIED = "certified"
NEEDS_VERIFICATION = "needs-verification"


@dataclass(frozen=True)
class ProductFamily:
    """A family of coalitions that cannot reach `level` q-bits.

    Each member is the complement of a union of Cartesian products; a
    product is given by per-axis position windows into the axis order.  When
    `maximum` is True the excluded size equals the relevant relative weight,
    so the coalition has the largest possible size for its level.  `weight`
    carries that relative weight when it is known exactly.
    """

    level: int
    windows: tuple  # products; each product is a tuple of per-axis position tuples
    maximum: object = None  # True / False / None (unknown)
    provenance: str = CERTIFIED
    weight: object = None
    note: str = ""

    def excluded_positions(self):
        cells = set()
        for product in self.windows:
            cells.update(itertools.product(*product))
        return cells

    @property
    def excluded_size(self):
        return len(self.excluded_positions())

    def excluded_index_set(self, ps):
        return IndexSet(ps.n, [ps.index_of(pos) for pos in self.excluded_positions()])

    def participant_index_set(self, ps):
        return self.excluded_index_set(ps).complement()

    def describe(self):
        sizes = [
            "x".join(str(len(w)) for w in product) for product in self.windows
        ]
        flag = {True: " (maximum)", False: "", None: " (maximum unproven)"}[self.maximum]
        return (
            f"level {self.level}: complement of union of products "
            f"[{', '.join(sizes)}], excludes {self.excluded_size} participants"
            f"{flag}"
        )


def _suffix_windows(mono, dims):
    return tuple(tuple(range(e, s)) for e, s in zip(mono, dims))


def scheme_from_monomial_sets(ps, l1, l2, order):
    """Nested evaluation codes and a scheme whose secret coordinates follow
    the window monomials in ascending order."""
    c1 = evaluate_code(ps, l1)
    c2 = evaluate_code(ps, l2)
    pair = NestedCodePair(c1, c2)
    window = sorted(set(l1) - set(l2), key=order.key)
    extension = [evaluate_monomial(ps, m) for m in window]
    scheme = RampScheme.from_pair(pair, extension_rows=extension)
    return scheme, window


# ---------------------------------------------------------------------------
# two-variable window schemes (equal axes, graded-lex)


@dataclass(frozen=True)
class SmallEllSpec:
    """Two equal-size axes with window corners 0 <= i1 < i2 <= s-1.

    The outer set collects all monomials up to X1^i1 X2^i2 in graded-lex,
    the inner set all monomials strictly below X1^i2 X2^i1; the window
    between them is the degree-(i1+i2) diagonal run of length i2 - i1 + 1.
    """

    axis1: Axis
    axis2: Axis
    i1: int
    i2: int

    def __post_init__(self):
        if self.axis1.field != self.axis2.field:
            raise ValidationError("axes must share one field")
        if self.axis1.size != self.axis2.size:
            raise ValidationError("axes must have equal size")
        s = self.axis1.size
        if not (0 <= self.i1 < self.i2 <= s - 1):
            raise ValidationError("window corners must satisfy 0 <= i1 < i2 <= s-1")

    @property
    def s(self):
        return self.axis1.size

    @property
    def ell(self):
        return self.i2 - self.i1 + 1


@dataclass
class SmallEllScheme:
    spec: SmallEllSpec
    point_set: PointSet
    order: MonomialOrder
    l1: tuple
    l2: tuple
    scheme: RampScheme
    profile: object
    primary_weights: tuple
    dual_weight_bounds: tuple
    t_windows: tuple  # window products T_1..T_ell (per-axis position tuples)
    families: tuple

    def family_for(self, levels):
        return small_ell_family(self, levels)


def small_ell_t_bound(spec, m):
    """Closed-form privacy lower bound for level m."""
    return (spec.i1 + m) * (spec.i2 + 1) - m * (m - 1) // 2 - 1


def small_ell_r_exact(spec, m):
    """Closed-form exact reconstruction number for level m."""
    s, i1, i2, ell = spec.s, spec.i1, spec.i2, spec.ell
    return (
        s * s
        - (s - i1) * (s - i2 + ell - m)
        + (ell - m + 1) * (ell - m) // 2
        + 1
    )


def small_ell_family(result, levels):
    """The coalition family for a window index set J within {1..ell}.

    The complement of the union of the chosen window products cannot reach
    ell + 1 - #J q-bits; it has maximum size when J is a prefix {1..#J} or
    the suffix {u..ell}.
    """
    spec = result.spec
    ell = spec.ell
    levels = sorted(set(levels))
    if not levels or levels[0] < 1 or levels[-1] > ell:
        raise ValidationError("window indices must form a nonempty subset of 1..ell")
    u = ell + 1 - len(levels)
    is_prefix = levels == list(range(1, len(levels) + 1))
    is_suffix = levels == list(range(u, ell + 1))
    return ProductFamily(
        level=u,
        windows=tuple(result.t_windows[w - 1] for w in levels),
        maximum=is_prefix or is_suffix,
        provenance=CERTIFIED,
        weight=result.primary_weights[ell - u] if (is_prefix or is_suffix) else None,
        note=f"window indices {levels}",
    )


def build_small_ell(spec, emit_family_cap=6):
    """Build the two-variable window scheme with its profile and families."""
    s, i1, i2, ell = spec.s, spec.i1, spec.i2, spec.ell
    ps = PointSet((spec.axis1, spec.axis2))
    order = MonomialOrder.graded_lex(2)
    enum = enumerate_delta(ps.dims, order)
    top1 = (i1, i2)
    low2 = (i2, i1)
    key1 = order.key(top1)
    key2 = order.key(low2)
    l1 = tuple(m for m in enum if order.key(m) <= key1)
    l2 = tuple(m for m in enum if order.key(m) < key2)
    scheme, _ = scheme_from_monomial_sets(ps, l1, l2, order)

    n = ps.n
    r = tuple(small_ell_r_exact(spec, m) for m in range(1, ell + 1))
    t = tuple(small_ell_t_bound(spec, m) for m in range(1, ell + 1))
    primary_weights = tuple(n - r[ell - e] + 1 for e in range(1, ell + 1))
    dual_bounds = tuple(tm + 1 for tm in t)
    profile = profile_from_rghw(
        n, ell, primary_weights, dual_bounds, EXACT, LOWER_BOUND
    )

    t_windows = tuple(
        (
            tuple(range(i2 + 1 - w, s)),
            tuple(range(i1 + w - 1, s)),
        )
        for w in range(1, ell + 1)
    )
    result = SmallEllScheme(
        spec=spec,
        point_set=ps,
        order=order,
        l1=l1,
        l2=l2,
        scheme=scheme,
        profile=profile,
        primary_weights=primary_weights,
        dual_weight_bounds=dual_bounds,
        t_windows=t_windows,
        families=(),
    )
    if ell <= emit_family_cap:
        subsets = [
            list(js)
            for size in range(1, ell + 1)
            for js in itertools.combinations(range(1, ell + 1), size)
        ]
    else:
        subsets = [list(range(1, k + 1)) for k in range(1, ell + 1)]
        subsets += [list(range(u, ell + 1)) for u in range(2, ell + 1)]
    result.families = tuple(small_ell_family(result, js) for js in subsets)
    return result


# ---------------------------------------------------------------------------
# codimension-one schemes


@dataclass
class Codim1Scheme:
    point_set: PointSet
    order: MonomialOrder
    top: tuple
    l1: tuple
    l2: tuple
    scheme: RampScheme
    profile: object
    family: ProductFamily


def build_codim1(ps, order, top):
    """One-q-bit scheme cut at a single top monomial under a graded order."""
    top = tuple(top)
    if order.kind != MonomialOrder.GRADED_LEX:
        raise ValidationError("a graded order is required")
    if order.m != ps.m:
        raise ValidationError("order arity does not match the point set")
    if not in_box(top, ps.dims):
        raise ValidationError(f"top exponent {top} outside the box {ps.dims}")
    enum = enumerate_delta(ps.dims, order)
    pos = enum.index(top)
    l2 = tuple(enum[:pos])
    l1 = l2 + (top,)
    scheme, _ = scheme_from_monomial_sets(ps, l1, l2, order)
    n = ps.n
    weight = d_value(top, ps.dims)
    dual_bound = dperp_value(top, ps.dims)
    profile = profile_from_rghw(n, 1, (weight,), (dual_bound,), EXACT, LOWER_BOUND)
    family = ProductFamily(
        level=1,
        windows=(_suffix_windows(top, ps.dims),),
        maximum=True,
        provenance=CERTIFIED,
        weight=weight,
        note="any same-size per-axis subsets work",
    )
    return Codim1Scheme(ps, order, top, l1, l2, scheme, profile, family)


# ---------------------------------------------------------------------------
# box-window ("considerate") schemes


@dataclass(frozen=True)
class ConsiderateSpec:
    """Axes with per-axis window bounds 0 <= v_t < j_t < s_t.

    The outer monomial set is the full sub-box [0..j_1] x ... x [0..j_m];
    the removed set is the window box [v_1..j_1] x ... x [v_m..j_m], of size
    ell = prod (j_t - v_t + 1).
    """

    axes: tuple
    v: tuple
    j: tuple

    def __post_init__(self):
        axes = tuple(self.axes)
        v = tuple(self.v)
        j = tuple(self.j)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "j", j)
        if not axes:
            raise ValidationError("at least one axis required")
        if len(v) != len(axes) or len(j) != len(axes):
            raise ValidationError("one (v, j) pair per axis required")
        if any(ax.field != axes[0].field for ax in axes):
            raise ValidationError("axes must share one field")
        for ax, vt, jt in zip(axes, v, j):
            if not (0 <= vt < jt < ax.size):
                raise ValidationError(
                    "window bounds must satisfy 0 <= v < j < axis size"
                )

    @property
    def m(self):
        return len(self.axes)

    @property
    def dims(self):
        return tuple(ax.size for ax in self.axes)

    @property
    def ell(self):
        out = 1
        for vt, jt in zip(self.v, self.j):
            out *= jt - vt + 1
        return out

    def l1(self):
        return tuple(
            itertools.product(*(range(jt + 1) for jt in self.j))
        )

    def box(self):
        return tuple(
            itertools.product(*(range(vt, jt + 1) for vt, jt in zip(self.v, self.j)))
        )

    def l2(self):
        box = set(self.box())
        return tuple(m for m in self.l1() if m not in box)


@dataclass(frozen=True)
class BoxDiamond:
    """The removed box and its upward lex closure within the outer set."""

    dims: tuple
    box: frozenset
    diamond: frozenset
    n_min: tuple
    order: MonomialOrder

    @property
    def ell(self):
        return len(self.box)


def box_diamond(spec):
    order = MonomialOrder.lex(spec.m)
    n_min = tuple(spec.v)
    key_min = order.key(n_min)
    diamond = frozenset(m for m in spec.l1() if order.key(m) >= key_min)
    return BoxDiamond(
        dims=spec.dims,
        box=frozenset(spec.box()),
        diamond=diamond,
        n_min=n_min,
        order=order,
    )


@dataclass
class ConsiderateScheme:
    spec: ConsiderateSpec
    point_set: PointSet
    order: MonomialOrder
    l1: tuple
    l2: tuple
    scheme: RampScheme
    box_diamond: BoxDiamond


def build_considerate(spec):
    """Build the box-window scheme under lex with the first variable most
    significant; returns the scheme together with its box/diamond data."""
    ps = PointSet(spec.axes)
    order = MonomialOrder.lex(spec.m)
    l1 = spec.l1()
    l2 = spec.l2()
    scheme, _ = scheme_from_monomial_sets(ps, l1, l2, order)
    return ConsiderateScheme(
        spec=spec,
        point_set=ps,
        order=order,
        l1=l1,
        l2=l2,
        scheme=scheme,
        box_diamond=box_diamond(spec),
    )


@dataclass(frozen=True)
class ConsiderateLevelCheck:
    level: int
    diamond_min: int
    box_min: int
    box_certificate: tuple

    @property
    def attained_in_box(self):
        return self.box_min == self.diamond_min


@dataclass(frozen=True)
class ConsiderateCheck:
    ok: bool
    levels: tuple


def check_considerate(bd, budget=DEFAULT_BUDGET):
    """Exhaustively decide whether every fixed-size d_set minimum over the
    diamond is attained inside the box; certificates per level."""
    dims = bd.dims
    diamond = sorted(bd.diamond)
    box = sorted(bd.box)
    levels = []
    for i in range(1, len(box) + 1):
        dmin, _ = min_d_over_subsets(diamond, dims, i, budget)
        bmin, bcert = min_d_over_subsets(box, dims, i, budget)
        levels.append(
            ConsiderateLevelCheck(
                level=i, diamond_min=dmin, box_min=bmin, box_certificate=bcert
            )
        )
    return ConsiderateCheck(
        ok=all(lv.attained_in_box for lv in levels), levels=tuple(levels)
    )


def check_considerate_sufficient(spec):
    """Fast sufficient condition for the box-attainment property.

    Equal per-axis gaps (s_t - j_t all equal and j_t - v_t all equal) are
    sufficient for any number of axes; for two axes the weaker condition
    s1 - j1 >= s2 - j2 with j1 - v1 <= j2 - v2 + 1 also suffices.  Returns
    one of the three verdict strings; "not-applicable" means the rule is
    silent for this shape.
    """
    sj = [s - j for s, j in zip(spec.dims, spec.j)]
    jv = [j - v for j, v in zip(spec.j, spec.v)]
    if len(set(sj)) == 1 and len(set(jv)) == 1:
        return CONSIDERATE_BY_RULE
    if spec.m == 2:
        if sj[0] >= sj[1] and jv[0] <= jv[1] + 1:
            return CONSIDERATE_BY_RULE
        return CONDITION_NOT_MET
    return NOT_APPLICABLE


def ensure_considerate(spec, budget=DEFAULT_BUDGET):
    """Cheap rule first, exhaustive check otherwise; error when it fails."""
    if check_considerate_sufficient(spec) == CONSIDERATE_BY_RULE:
        return
    if not check_considerate(box_diamond(spec), budget).ok:
        raise ValidationError("the scheme is not considerate")


@dataclass(frozen=True)
class ConsiderateExtremes:
    r1: int
    r_ell: int
    family_level1: ProductFamily
    family_level_ell: ProductFamily
    level_ell_unique: bool


def considerate_extremes(spec, budget=DEFAULT_BUDGET):
    """Closed-form first/last reconstruction numbers and the extremal
    complement-of-product families of a considerate scheme.

    Level-1 families exclude any product with per-axis sizes s_t - v_t;
    level-ell families exclude any product with sizes s_t - j_t and are the
    only coalitions of their size at that level.
    """
    ensure_considerate(spec, budget)
    n = 1
    for s in spec.dims:
        n *= s
    m_ell = 1
    m_1 = 1
    for s, vt, jt in zip(spec.dims, spec.v, spec.j):
        m_ell *= s - vt
        m_1 *= s - jt
    ell = spec.ell
    fam1 = ProductFamily(
        level=1,
        windows=(_suffix_windows(spec.v, spec.dims),),
        maximum=True,
        provenance=CERTIFIED,
        weight=m_ell,
        note="any same-size per-axis subsets work",
    )
    fam_ell = ProductFamily(
        level=ell,
        windows=(_suffix_windows(spec.j, spec.dims),),
        maximum=True,
        provenance=CERTIFIED,
        weight=m_1,
        note="any same-size per-axis subsets work; these are the only such sets",
    )
    return ConsiderateExtremes(
        r1=n - m_ell + 1,
        r_ell=n - m_1 + 1,
        family_level1=fam1,
        family_level_ell=fam_ell,
        level_ell_unique=True,
    )


@dataclass(frozen=True)
class ConsiderateRghw:
    """A closed-form relative weight of a considerate scheme with equal
    per-axis gaps, plus its decomposition and coalition family."""

    e: int
    value: int
    case: str  # "square", "rectangle" or "product"
    z: int
    h: int
    a: int
    b: int
    r: int
    level: int
    certificate: tuple
    family: ProductFamily


def _square_rectangle_decomposition(e):
    """Unique (z, case, h) with e = z^2 - h (0 <= h <= z-1) or
    e = z(z-1) - h (0 <= h < z-1)."""
    z = math.isqrt(e - 1) + 1  # smallest z with z*z >= e
    if e >= z * (z - 1) + 1:
        return z, "square", z * z - e
    return z, "rectangle", z * (z - 1) - e


def considerate_rghw(spec, e, budget=DEFAULT_BUDGET):
    """Closed-form relative weight M_e for equal-gap considerate specs.

    Requires all s_t - j_t equal and all j_t - v_t equal.  For two axes
    every e in 1..ell decomposes uniquely into a square or rectangle case;
    for three or more axes only e of the form z^a (z-1)^b with a + b = m is
    in scope.  Returns the weight, its decomposition, the reconstruction
    number r_{ell-e+1} = n - M_e + 1, and the excluded-product family for
    level ell - e + 1.
    """
    ensure_considerate(spec, budget)
    ell = spec.ell
    if not 1 <= e <= ell:
        raise ValidationError(f"e must be in 1..{ell}")
    sj = {s - j for s, j in zip(spec.dims, spec.j)}
    jv = {j - v for j, v in zip(spec.j, spec.v)}
    if len(sj) != 1 or len(jv) != 1:
        raise TheoremScopeError(
            "closed forms require equal per-axis gaps s_t - j_t and j_t - v_t"
        )
    gap = sj.pop()
    width = jv.pop() + 1  # window length per axis; ell == width**m
    m = spec.m
    if m == 1:
        # one axis: the top run of e exponents is optimal
        z, case, h, a, b = e, "product", 0, 1, 0
        value = gap - 1 + e
    elif m == 2:
        z, case, h = _square_rectangle_decomposition(e)
        if case == "square":
            value = (gap - 1 + z) ** 2 - h
            a, b = 2, 0
        else:
            value = (gap - 1 + z) * (gap - 2 + z) - h
            a, b = 1, 1
    else:
        found = None
        for z in range(1, width + 1):
            for a in range(m, -1, -1):
                b = m - a
                if b > 0 and z < 2:
                    continue
                val = z**a * (z - 1) ** b
                if val == e:
                    found = (z, a, b)
                    break
            if found:
                break
        if found is None:
            raise TheoremScopeError(
                f"e={e} is not of the product form z^a (z-1)^b with a+b={m}"
            )
        z, a, b = found
        case = "product"
        h = 0
        value = (gap - 1 + z) ** a * (gap - 2 + z) ** b

    certificate = _canonical_box_certificate(spec, e, z, h, a, b)
    computed = d_set(certificate, spec.dims)
    if computed != value:
        raise ValidationError(
            f"internal inconsistency: closed form {value} vs d_set {computed}"
        )
    n = 1
    for s in spec.dims:
        n *= s
    u = ell - e + 1
    windows = tuple(
        _suffix_windows(mono, spec.dims)
        for mono in sorted(minimal_elements(certificate))
    )
    family = ProductFamily(
        level=u,
        windows=windows,
        maximum=True,
        provenance=CERTIFIED,
        weight=value,
        note=(
            "any same-size per-axis subsets work"
            if h == 0
            else f"product with {h} specific corner cells re-included"
        ),
    )
    return ConsiderateRghw(
        e=e,
        value=value,
        case=case,
        z=z,
        h=h,
        a=a,
        b=b,
        r=n - value + 1,
        level=u,
        certificate=tuple(sorted(certificate)),
        family=family,
    )


def _canonical_box_certificate(spec, e, z, h, a, b):
    """A size-e subset of the window box realizing the closed-form d_set.

    Take the top sub-box with a axes of length z and the rest of length
    z - 1, then drop the h lowest cells of its first-axis bottom row; each
    drop lowers d_set by exactly one.
    """
    j = spec.j
    lengths = [z] * a + [z - 1] * b
    ranges = [
        range(jt - ln + 1, jt + 1) for jt, ln in zip(j, lengths)
    ]
    cells = set(itertools.product(*ranges))
    if h:
        bottom = [jt - ln + 1 for jt, ln in zip(j, lengths)]
        for off in range(h):
            removed = (bottom[0] + off,) + tuple(bottom[1:])
            cells.discard(removed)
    if len(cells) != e:
        raise ValidationError("internal inconsistency in the box certificate")
    return sorted(cells)


# ---------------------------------------------------------------------------
# generic bound-driven profiles and families for evaluation-code schemes


@dataclass
class BoundProfile:
    profile: object
    primary: tuple  # RghwBound per level
    dual: tuple
    certificates: tuple  # SharpnessCertificate per level (primary side)
    all_sharp: bool


def profile_from_bounds(ps, l1, l2, order, budget=DEFAULT_BUDGET):
    """Profile of an evaluation-code scheme from the two bound searches.

    Primary bounds are promoted to exact weights when the witness
    certificates confirm sharpness (true for divisor-closed outer sets);
    dual bounds always stay lower bounds.
    """
    ell = len(set(l1)) - len(set(l2))
    primary = tuple(
        bound_rghw_primary(ps.dims, l1, l2, order, v, budget)
        for v in range(1, ell + 1)
    )
    dual = tuple(
        bound_rghw_dual(ps.dims, l1, l2, order, v, budget)
        for v in range(1, ell + 1)
    )
    certificates = tuple(
        certify_rghw_sharpness(ps, l1, l2, b.certificate) for b in primary
    )
    all_sharp = all(c.ok for c in certificates)
    profile = profile_from_rghw(
        ps.n,
        ell,
        tuple(b.value for b in primary),
        tuple(b.value for b in dual),
        EXACT if all_sharp else LOWER_BOUND,
        LOWER_BOUND,
    )
    return BoundProfile(profile, primary, dual, certificates, all_sharp)


def eval_code_families(ps, l1, l2, order, budget=DEFAULT_BUDGET):
    """Complement-of-product families read off the primary bound
    certificates of a generic evaluation-code scheme.

    Families whose witness certificate fails are still emitted but marked
    needs-verification; callers must run them through the non-qualifying
    check before reporting them.
    """
    ell = len(set(l1)) - len(set(l2))
    families = []
    for u in range(1, ell + 1):
        v = ell - u + 1
        bound = bound_rghw_primary(ps.dims, l1, l2, order, v, budget)
        cert = certify_rghw_sharpness(ps, l1, l2, bound.certificate)
        windows = tuple(
            _suffix_windows(mono, ps.dims)
            for mono in sorted(minimal_elements(bound.certificate))
        )
        families.append(
            ProductFamily(
                level=u,
                windows=windows,
                maximum=True if cert.ok else None,
                provenance=CERTIFIED if cert.ok else NEEDS_VERIFICATION,
                weight=bound.value if cert.ok else None,
                note=f"from the level-{v} bound certificate",
            )
        )
    return tuple(families)
