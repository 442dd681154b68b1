"""Built-in verification suites for the CLI.

Three suites: "tiny" cross-checks the scheme operations against brute-force
oracles on small instances, "bounds" reproduces the reference numbers of the
four worked configurations, and "considerate" adjudicates the box-attainment
property and the hand-derived weight sequence of the mixed-axes
configuration (where the computed values are authoritative; disagreement
with the recorded reference values is an expected, documented outcome).
"""

import random

from . import codes, sharing
from .cartesian import (
    Axis,
    MonomialOrder,
    PointSet,
    bound_rghw_primary,
    certify_rghw_sharpness,
    enumerate_delta,
    format_grid,
    min_d_over_subsets,
)
from .codes import IndexSet, LinearCode, NestedCodePair, dual, projected, shortened
from .constructions import (
    CONSIDERATE_BY_RULE,
    ConsiderateSpec,
    SmallEllSpec,
    box_diamond,
    build_codim1,
    build_considerate,
    build_small_ell,
    check_considerate,
    check_considerate_sufficient,
    considerate_rghw,
    eval_code_families,
    profile_from_bounds,
)
from .errors import DEFAULT_BUDGET
from .gf import PrimeField

SUITES = ("tiny", "bounds", "considerate")

GRID_6x6_D = """\
6 5 4 3 2 1
12 10 8 6 4 2
18 15 12 9 6 3
24 20 16 12 8 4
30 25 20 15 10 5
36 30 24 18 12 6"""

GRID_6x6_DPERP = """\
6 12 18 24 30 36
5 10 15 20 25 30
4 8 12 16 20 24
3 6 9 12 15 18
2 4 6 8 10 12
1 2 3 4 5 6"""

GRID_8x5_D = """\
8 7 6 5 4 3 2 1
16 14 12 10 8 6 4 2
24 21 18 15 12 9 6 3
32 28 24 20 16 12 8 4
40 35 30 25 20 15 10 5"""

GRID_8x5_DPERP = """\
5 10 15 20 25 30 35 40
4 8 12 16 20 24 28 32
3 6 9 12 15 18 21 24
2 4 6 8 10 12 14 16
1 2 3 4 5 6 7 8"""

# hand-derived weight sequence recorded for the mixed-axes configuration
# (axes 6 and 5, v=(1,2), j=(3,3)); the oracle disagrees at e = 4, 5, 6 and
# its values are authoritative
MIXED_AXES_REFERENCE_WEIGHTS = (6, 8, 10, 14, 15, 16)


class SuiteReport:
    def __init__(self, name, out=print):
        self.name = name
        self.out = out
        self.failures = 0
        self.checks = 0

    def check(self, description, ok):
        self.checks += 1
        if not ok:
            self.failures += 1
        self.out(f"{'ok  ' if ok else 'FAIL'} {description}")
        return ok

    def flag(self, description):
        self.out(f"note {description}")

    @property
    def ok(self):
        return self.failures == 0

    def summary(self):
        self.out(
            f"suite {self.name}: {self.checks - self.failures}/{self.checks} checks passed"
        )
        return self.ok


def random_nested_pair(rng, field, n, k1, k2):
    """A random nested pair with exact dimensions (k1, k2)."""
    q = field.q
    while True:
        rows = [[rng.randrange(q) for _ in range(n)] for _ in range(k1)]
        c1 = LinearCode.from_rows(field, n, rows)
        if c1.dim != k1:
            continue
        c2 = LinearCode.from_rows(field, n, rows[:k2])
        return NestedCodePair(c1, c2)


def _scheme_identities(report, scheme, rng, label, subset_samples=12):
    pair = scheme.pair
    n, ell = scheme.n, scheme.ell
    all_sets = [IndexSet.from_mask(n, m) for m in range(1 << n)]
    report.check(
        f"{label}: projection and shortening agree on every coalition",
        all(
            sharing.uncertainty(scheme, a) == sharing.info_dim(scheme, a)
            for a in all_sets
        ),
    )
    prof = sharing.access_profile_exhaustive(scheme)
    weights = codes.rghw_all_exhaustive(pair)
    dual_weights = codes.rghw_all_exhaustive(pair.dual_pair())
    derived = sharing.profile_from_rghw(n, ell, weights, dual_weights)
    report.check(
        f"{label}: exhaustive profile matches the weight-derived profile",
        (prof.t, prof.r) == (derived.t, derived.r),
    )
    ok_dual = True
    for code in (pair.c1, pair.c2):
        dc = dual(code)
        for a in all_sets:
            ab = a.complement()
            ok_dual &= code.dim == shortened(code, ab).dim + projected(code, a).dim
            ok_dual &= projected(code, a).dim + shortened(dc, a).dim == len(a)
    report.check(f"{label}: both duality identities hold on every coalition", ok_dual)
    secret = tuple(rng.randrange(scheme.field.q) for _ in range(ell))
    vec = sharing.deal(scheme, secret, seed=7)
    report.check(
        f"{label}: dealing is deterministic per seed",
        sharing.deal(scheme, secret, seed=7) == vec,
    )
    ok_rec = True
    samples = [IndexSet.empty(n), IndexSet.full(n)] + [
        IndexSet.from_mask(n, rng.randrange(1 << n)) for _ in range(subset_samples)
    ]
    for a in samples:
        bundle = sharing.bundle_from_vector(scheme, vec, a)
        coset = sharing.reconstruct(scheme, bundle)
        ok_rec &= coset.contains(secret)
        ok_rec &= coset.dim == sharing.uncertainty(scheme, a)
        ok_rec &= set(coset.iter_elements()) == sharing.brute_force_secret_set(
            scheme, bundle
        )
    report.check(
        f"{label}: reconstructed cosets equal the brute-force secret sets", ok_rec
    )


def run_tiny(report, budget=DEFAULT_BUDGET):
    rng = random.Random(20240811)
    f5 = PrimeField(5)
    ok_exact = all(
        f5.mul(f5.mul(a, b), f5.inv(b)) == a
        for a in range(5)
        for b in range(1, 5)
    )
    report.check("field arithmetic is exact (a*b)/b == a over GF(5)", ok_exact)

    configs = [
        (PrimeField(3), 6, 4, 2),
        (PrimeField(3), 8, 4, 1),
        (PrimeField(5), 7, 3, 1),
        (PrimeField(5), 9, 4, 2),
    ]
    for i, (field, n, k1, k2) in enumerate(configs):
        pair = random_nested_pair(rng, field, n, k1, k2)
        scheme = sharing.RampScheme.from_pair(pair)
        _scheme_identities(report, scheme, rng, f"pair {i} (q={field.q}, n={n})")

    # a small evaluation-code scheme exercises the construction path
    f3 = PrimeField(3)
    ps = PointSet((Axis(f3, (0, 1, 2)), Axis(f3, (0, 1, 2))))
    order = MonomialOrder.graded_lex(2)
    enum = enumerate_delta((3, 3), order)
    l2 = tuple(enum[:3])
    l1 = tuple(enum[:5])
    from .constructions import scheme_from_monomial_sets

    scheme, _ = scheme_from_monomial_sets(ps, l1, l2, order)
    _scheme_identities(report, scheme, rng, "evaluation scheme (q=3, n=9)")
    bp = profile_from_bounds(ps, l1, l2, order, budget)
    exact = sharing.access_profile_exhaustive(scheme)
    report.check(
        "evaluation scheme: bound-derived reconstruction numbers are exact",
        bp.profile.r == exact.r,
    )
    report.check(
        "evaluation scheme: dual bounds do not exceed the exact privacy numbers",
        all(bt <= te for bt, te in zip(bp.profile.t, exact.t)),
    )


def run_bounds(report, budget=DEFAULT_BUDGET):
    report.check(
        "6x6 divisibility grid matches the recorded table",
        format_grid((6, 6), "d") == GRID_6x6_D,
    )
    report.check(
        "6x6 divisor grid matches the recorded table",
        format_grid((6, 6), "dperp") == GRID_6x6_DPERP,
    )
    report.check(
        "8x5 divisibility grid matches the recorded table",
        format_grid((8, 5), "d") == GRID_8x5_D,
    )
    report.check(
        "8x5 divisor grid matches the recorded table",
        format_grid((8, 5), "dperp") == GRID_8x5_DPERP,
    )

    # two-variable window configuration: s=6, corners (2, 3), q=7
    f7 = PrimeField(7)
    ax6 = Axis(f7, tuple(range(6)))
    res = build_small_ell(SmallEllSpec(ax6, ax6, 2, 3))
    ps = res.point_set
    report.check(
        "6x6 window scheme: n=36, ell=2, r=(22,25), t bounds (11,14)",
        ps.n == 36
        and res.spec.ell == 2
        and res.profile.r == (22, 25)
        and res.profile.t == (11, 14),
    )
    fam_t1 = res.family_for([1])
    fam_t2 = res.family_for([2])
    fam_union = res.family_for([1, 2])
    checks = []
    for fam, want_size in ((fam_t1, 24), (fam_t2, 24), (fam_union, 21)):
        coalition = fam.participant_index_set(ps)
        chk = sharing.verify_non_qualifying(
            res.scheme, coalition, fam.level, max_weight=fam.weight
        )
        checks.append(chk.ok and chk.maximum and len(coalition) == want_size)
    report.check(
        "6x6 window scheme: window complements are maximum non-qualifying "
        "(sizes 24, 24, 21)",
        all(checks),
    )

    # codimension-one configuration: 4x4x4 box, top (2,2,2), q=5
    f5 = PrimeField(5)
    ps3 = PointSet(tuple(Axis(f5, (0, 1, 2, 3)) for _ in range(3)))
    c1res = build_codim1(ps3, MonomialOrder.graded_lex(3), (2, 2, 2))
    report.check(
        "4x4x4 codimension-one scheme: n=64, r=57, t bound 26",
        ps3.n == 64 and c1res.profile.r == (57,) and c1res.profile.t == (26,),
    )
    coalition = c1res.family.participant_index_set(ps3)
    chk = sharing.verify_non_qualifying(
        c1res.scheme, coalition, 1, max_weight=c1res.family.weight
    )
    report.check(
        "4x4x4 scheme: the 56-participant product complement holds nothing",
        chk.ok and chk.maximum and len(coalition) == 56 and chk.qbits == 0,
    )

    # asymmetric two-variable configuration: axes 8 and 5, q=11
    f11 = PrimeField(11)
    ps2 = PointSet((Axis(f11, tuple(range(8))), Axis(f11, tuple(range(5)))))
    order2 = MonomialOrder.graded_lex(2)
    enum2 = enumerate_delta((8, 5), order2)
    l2 = tuple(enum2[: enum2.index((5, 1))])
    l1 = l2 + ((5, 1), (4, 2))
    bp = profile_from_bounds(ps2, l1, l2, order2, budget)
    report.check(
        "8x5 scheme: r=(26,29) exact with t bounds (11,16)",
        bp.profile.r == (26, 29)
        and bp.profile.t == (11, 16)
        and bp.all_sharp,
    )
    from .constructions import scheme_from_monomial_sets

    scheme85, _ = scheme_from_monomial_sets(ps2, l1, l2, order2)
    fams = eval_code_families(ps2, l1, l2, order2, budget)
    sizes = {}
    okfam = True
    for fam in fams:
        coalition = fam.participant_index_set(ps2)
        chk = sharing.verify_non_qualifying(
            scheme85, coalition, fam.level, max_weight=fam.weight
        )
        okfam &= chk.ok
        sizes[fam.level] = len(coalition)
    report.check(
        "8x5 scheme: complements of sizes 25 and 28 hold at most 0 and 1 q-bits",
        okfam and sizes.get(1) == 25 and sizes.get(2) == 28,
    )

    # equal-gap box-window configuration: s=10, v=2, j=5, q=11
    spec = ConsiderateSpec(
        (Axis(f11, tuple(range(10))), Axis(f11, tuple(range(10)))), (2, 2), (5, 5)
    )
    seq = [considerate_rghw(spec, e, budget) for e in range(1, spec.ell + 1)]
    res10 = build_considerate(spec)
    enum_ok = True
    sharp_ok = True
    for entry in seq:
        b = bound_rghw_primary(
            spec.dims, res10.l1, res10.l2, res10.order, entry.e, budget
        )
        enum_ok &= b.value == entry.value
        cert = certify_rghw_sharpness(
            res10.point_set, res10.l1, res10.l2, entry.certificate
        )
        sharp_ok &= cert.ok and cert.value == entry.value
    report.check(
        "10x10 box-window scheme: closed-form weights equal the enumeration",
        enum_ok,
    )
    report.check(
        "10x10 box-window scheme: every weight carries a sharp witness span",
        sharp_ok,
    )
    report.check(
        "10x10 box-window scheme: recorded subsequence and r1=37",
        seq[15].value == 64
        and seq[14].value == 63
        and seq[13].value == 62
        and seq[12].value == 61
        and seq[11].value == 56
        and seq[8].value == 49
        and seq[5].value == 42
        and seq[4].value == 41
        and seq[3].value == 36
        and seq[2].value == 35
        and seq[1].value == 30
        and seq[0].value == 25
        and seq[15].r == 37,
    )


def _considerate_specs(field):
    """A spread of box-window specs with m <= 3 and ell <= 12."""
    specs = []
    q = field.q
    ax = lambda s: Axis(field, tuple(range(s)))  # noqa: E731
    two_axis = [
        ((4, 4), (0, 0), (1, 1)),
        ((4, 4), (1, 1), (2, 2)),
        ((5, 5), (0, 0), (2, 2)),
        ((5, 5), (1, 1), (3, 3)),
        ((5, 4), (1, 1), (2, 2)),
        ((6, 5), (1, 2), (3, 3)),
        ((6, 4), (0, 1), (2, 2)),
        ((5, 6), (1, 1), (2, 2)),
        ((4, 6), (1, 2), (2, 3)),
        ((6, 6), (2, 2), (4, 4)),
        ((7, 5), (1, 1), (3, 2)),
        ((5, 7), (2, 1), (3, 3)),
        ((6, 7), (1, 3), (2, 4)),
    ]
    three_axis = [
        ((3, 3, 3), (0, 0, 0), (1, 1, 1)),
        ((4, 4, 4), (1, 1, 1), (2, 2, 2)),
        ((4, 3, 3), (1, 0, 0), (2, 1, 1)),
        ((3, 4, 3), (0, 1, 1), (1, 2, 2)),
        ((4, 4, 3), (1, 1, 0), (2, 2, 1)),
    ]
    for dims, v, j in two_axis + three_axis:
        if max(dims) <= q:
            specs.append(ConsiderateSpec(tuple(ax(s) for s in dims), v, j))
    return specs


def run_considerate(report, budget=DEFAULT_BUDGET):
    f11 = PrimeField(11)
    specs = _considerate_specs(f11)
    agreement = True
    rule_count = 0
    for spec in specs:
        verdict = check_considerate_sufficient(spec)
        exhaustive = check_considerate(box_diamond(spec), budget)
        if verdict == CONSIDERATE_BY_RULE:
            rule_count += 1
            agreement &= exhaustive.ok
    report.check(
        f"sufficient condition never contradicts the exhaustive check "
        f"({rule_count} of {len(specs)} specs covered by the rule)",
        agreement,
    )

    equal_gap = [
        spec
        for spec in specs
        if len({s - j for s, j in zip(spec.dims, spec.j)}) == 1
        and len({j - v for j, v in zip(spec.j, spec.v)}) == 1
    ]
    closed_ok = True
    for spec in equal_gap:
        res = build_considerate(spec)
        for e in range(1, spec.ell + 1):
            try:
                entry = considerate_rghw(spec, e, budget)
            except Exception:
                continue  # out-of-scope e for three axes
            b = bound_rghw_primary(spec.dims, res.l1, res.l2, res.order, e, budget)
            closed_ok &= entry.value == b.value
    report.check(
        f"closed-form weights equal the enumeration on {len(equal_gap)} "
        "equal-gap specs",
        closed_ok,
    )

    # adjudicate the mixed-axes configuration (axes 6 and 5, v=(1,2), j=(3,3))
    spec = ConsiderateSpec(
        (Axis(f11, tuple(range(6))), Axis(f11, tuple(range(5)))), (1, 2), (3, 3)
    )
    bd = box_diamond(spec)
    report.check(
        "mixed-axes configuration is considerate (exhaustive check)",
        check_considerate(bd, budget).ok,
    )
    computed = []
    for e in range(1, spec.ell + 1):
        val, _ = min_d_over_subsets(sorted(bd.box), spec.dims, e, budget)
        computed.append(val)
    report.flag(
        f"mixed-axes weights: computed {tuple(computed)}, "
        f"recorded reference {MIXED_AXES_REFERENCE_WEIGHTS}"
    )
    for e, (got, ref) in enumerate(zip(computed, MIXED_AXES_REFERENCE_WEIGHTS), start=1):
        if got != ref:
            report.flag(
                f"  e={e}: computed {got} != reference {ref} "
                "(expected discrepancy; computed value is authoritative)"
            )
    report.check(
        "mixed-axes weights are strictly increasing and end at d_set(box)",
        all(a < b for a, b in zip(computed, computed[1:])) and computed[-1] == 15,
    )


def run_suite(name, budget=DEFAULT_BUDGET, out=print):
    """Run one suite; returns True when every check passed."""
    report = SuiteReport(name, out)
    if name == "tiny":
        run_tiny(report, budget)
    elif name == "bounds":
        run_bounds(report, budget)
    elif name == "considerate":
        run_considerate(report, budget)
    else:
        raise ValueError(f"unknown suite {name!r}")
    return report.summary()
