"""Scheme and share documents: parsing, canonicalization, fingerprints.

A scheme document is a single JSON object holding the field modulus, one
construction description, and an optional dealing seed.  Canonicalization
normalizes every field (residues reduced, lists sorted where order carries
no meaning) and serializes with sorted keys and fixed separators, so the
fingerprint is independent of whitespace and key order but changes with any
semantic edit.  Share documents carry the scheme fingerprint so reconstruction
can refuse shares dealt under a different scheme.
"""

import hashlib
import json
from dataclasses import dataclass

from .cartesian import Axis, MonomialOrder, PointSet, enumerate_delta, in_box
from .codes import LinearCode, NestedCodePair
from .constructions import (
    Codim1Scheme,
    ConsiderateScheme,
    ConsiderateSpec,
    SmallEllScheme,
    SmallEllSpec,
    build_codim1,
    build_considerate,
    build_small_ell,
    eval_code_families,
    profile_from_bounds,
)
from .errors import ValidationError
from .gf import PrimeField
from .sharing import RampScheme

CONSTRUCTION_TYPES = (
    "explicit-nested",
    "eval-code",
    "small-ell",
    "codim-1",
    "considerate",
)


@dataclass(frozen=True)
class SchemeDocument:
    q: int
    construction: dict
    seed: object = None

    def canonical(self):
        doc = {"q": self.q, "construction": self.construction}
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc

    def canonical_text(self):
        return json.dumps(self.canonical(), sort_keys=True, separators=(",", ":"))

    def fingerprint(self):
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()


def _require(mapping, key, kind, where):
    if key not in mapping:
        raise ValidationError(f"{where}: missing field {key!r}")
    value = mapping[key]
    if kind is int and isinstance(value, bool):
        raise ValidationError(f"{where}: field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise ValidationError(f"{where}: field {key!r} has the wrong type")
    return value


def _int_list(values, where):
    if not isinstance(values, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in values
    ):
        raise ValidationError(f"{where}: expected a list of integers")
    return list(values)


def _int_matrix(values, where):
    if not isinstance(values, list):
        raise ValidationError(f"{where}: expected a list of rows")
    return [_int_list(row, where) for row in values]


def _check_fields(mapping, allowed, where):
    extra = set(mapping) - set(allowed)
    if extra:
        raise ValidationError(f"{where}: unknown fields {sorted(extra)}")


def _normalize_axes(raw, q, where, count=None):
    axes = _int_matrix(raw, where)
    if count is not None and len(axes) != count:
        raise ValidationError(f"{where}: expected {count} axes")
    norm = [[x % q for x in axis] for axis in axes]
    for axis in norm:
        if len(set(axis)) != len(axis):
            raise ValidationError(f"{where}: axis points must be distinct")
        if not axis:
            raise ValidationError(f"{where}: axes must be nonempty")
    return norm


def _normalize_order(raw, m, where):
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ValidationError(f"{where}: order must be an object")
    _check_fields(raw, ("kind", "priority"), where)
    kind = _require(raw, "kind", str, where)
    if kind not in (MonomialOrder.GRADED_LEX, MonomialOrder.LEX):
        raise ValidationError(f"{where}: unknown order kind {kind!r}")
    out = {"kind": kind}
    if "priority" in raw:
        priority = _int_list(raw["priority"], where)
        if sorted(priority) != list(range(m)):
            raise ValidationError(f"{where}: priority must permute 0..{m - 1}")
        out["priority"] = priority
    return out


def parse_scheme_document(text):
    """Parse and normalize a scheme document from JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"document is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("document must be a JSON object")
    _check_fields(raw, ("q", "construction", "seed"), "document")
    q = _require(raw, "q", int, "document")
    PrimeField(q)  # validates primality and range
    seed = raw.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ValidationError("document: seed must be an integer")
    if seed is not None and not 0 <= seed < 2**64:
        raise ValidationError("document: seed must fit in 64 bits")
    cons = _require(raw, "construction", dict, "document")
    ctype = _require(cons, "type", str, "construction")
    if ctype not in CONSTRUCTION_TYPES:
        raise ValidationError(f"construction: unknown type {ctype!r}")
    norm = {"type": ctype}
    where = f"construction[{ctype}]"
    if ctype == "explicit-nested":
        _check_fields(cons, ("type", "g1", "g2"), where)
        g1 = _int_matrix(_require(cons, "g1", list, where), where)
        g2 = _int_matrix(_require(cons, "g2", list, where), where)
        if not g1 or not g1[0]:
            raise ValidationError(f"{where}: g1 must be a nonempty matrix")
        widths = {len(r) for r in g1} | {len(r) for r in g2}
        if len(widths) != 1:
            raise ValidationError(f"{where}: all rows must share one length")
        norm["g1"] = [[x % q for x in r] for r in g1]
        norm["g2"] = [[x % q for x in r] for r in g2]
    elif ctype == "eval-code":
        _check_fields(cons, ("type", "axes", "l1", "l2", "order"), where)
        axes = _normalize_axes(_require(cons, "axes", list, where), q, where)
        dims = tuple(len(a) for a in axes)
        l1 = [tuple(m) for m in _int_matrix(_require(cons, "l1", list, where), where)]
        l2 = [tuple(m) for m in _int_matrix(_require(cons, "l2", list, where), where)]
        for mono in l1 + l2:
            if not in_box(mono, dims):
                raise ValidationError(f"{where}: exponent {list(mono)} outside the box")
        if not set(l2) < set(l1):
            raise ValidationError(f"{where}: l2 must be a proper subset of l1")
        norm["axes"] = axes
        norm["l1"] = sorted([list(m) for m in set(l1)])
        norm["l2"] = sorted([list(m) for m in set(l2)])
        order = _normalize_order(cons.get("order"), len(axes), where)
        norm["order"] = order if order else {"kind": MonomialOrder.GRADED_LEX}
    elif ctype == "small-ell":
        _check_fields(cons, ("type", "s", "i1", "i2", "axes"), where)
        s = _require(cons, "s", int, where)
        i1 = _require(cons, "i1", int, where)
        i2 = _require(cons, "i2", int, where)
        axes = _normalize_axes(_require(cons, "axes", list, where), q, where, count=2)
        if any(len(a) != s for a in axes):
            raise ValidationError(f"{where}: both axes must have size s={s}")
        norm.update({"s": s, "i1": i1, "i2": i2, "axes": axes})
    elif ctype == "codim-1":
        _check_fields(cons, ("type", "axes", "top"), where)
        axes = _normalize_axes(_require(cons, "axes", list, where), q, where)
        top = _int_list(_require(cons, "top", list, where), where)
        if not in_box(tuple(top), tuple(len(a) for a in axes)):
            raise ValidationError(f"{where}: top exponent outside the box")
        norm.update({"axes": axes, "top": top})
    else:  # considerate
        _check_fields(cons, ("type", "axes", "v", "j"), where)
        axes = _normalize_axes(_require(cons, "axes", list, where), q, where)
        v = _int_list(_require(cons, "v", list, where), where)
        j = _int_list(_require(cons, "j", list, where), where)
        if len(v) != len(axes) or len(j) != len(axes):
            raise ValidationError(f"{where}: one (v, j) pair per axis required")
        norm.update({"axes": axes, "v": v, "j": j})
    return SchemeDocument(q=q, construction=norm, seed=seed)


def load_scheme_document(path):
    with open(path, encoding="utf-8") as fh:
        return parse_scheme_document(fh.read())


def write_scheme_document(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc.canonical(), fh, sort_keys=True, indent=2)
        fh.write("\n")


@dataclass
class BuiltScheme:
    """A scheme document realized as runtime objects.

    `result` carries the construction-specific bundle (window sets, box
    data, ...) when one exists; `point_set` is None for explicit-nested
    documents.  `profile` may be None when no closed form or bound search
    applies (explicit-nested; computed on demand by the analyze command).
    """

    document: SchemeDocument
    scheme: RampScheme
    point_set: object = None
    monomial_sets: object = None  # (l1, l2, order) for evaluation schemes
    profile: object = None
    families: tuple = ()
    result: object = None


def _axis_objects(field, axes):
    return tuple(Axis(field, tuple(points)) for points in axes)


def build_from_document(doc, budget=None):
    """Instantiate the scheme a document describes, with profile/families
    where the construction provides them."""
    from .errors import DEFAULT_BUDGET

    budget = DEFAULT_BUDGET if budget is None else budget
    field = PrimeField(doc.q)
    cons = doc.construction
    ctype = cons["type"]
    if ctype == "explicit-nested":
        n = len(cons["g1"][0])
        c1 = LinearCode.from_rows(field, n, cons["g1"])
        c2 = LinearCode.from_rows(field, n, cons["g2"])
        pair = NestedCodePair(c1, c2)
        # the document's own rows form the dealing basis: independent g2 rows
        # first, then g1 rows that are independent modulo the inner code
        from . import kernels
        from .gf import Matrix

        base = []
        for row in cons["g2"] + cons["g1"]:
            if kernels.rank_mod(field.q, base + [row]) > len(base):
                base.append(row)
        scheme = RampScheme(pair, Matrix(field, base, cols=n))
        return BuiltScheme(document=doc, scheme=scheme)
    if ctype == "eval-code":
        ps = PointSet(_axis_objects(field, cons["axes"]))
        m = ps.m
        okind = cons["order"]["kind"]
        priority = cons["order"].get("priority")
        order = MonomialOrder(
            okind,
            tuple(priority)
            if priority is not None
            else (
                tuple(range(m - 1, -1, -1))
                if okind == MonomialOrder.GRADED_LEX
                else tuple(range(m))
            ),
        )
        l1 = tuple(tuple(mono) for mono in cons["l1"])
        l2 = tuple(tuple(mono) for mono in cons["l2"])
        from .constructions import scheme_from_monomial_sets

        scheme, _ = scheme_from_monomial_sets(ps, l1, l2, order)
        bp = profile_from_bounds(ps, l1, l2, order, budget)
        families = eval_code_families(ps, l1, l2, order, budget)
        return BuiltScheme(
            document=doc,
            scheme=scheme,
            point_set=ps,
            monomial_sets=(l1, l2, order),
            profile=bp.profile,
            families=families,
            result=bp,
        )
    if ctype == "small-ell":
        axes = _axis_objects(field, cons["axes"])
        spec = SmallEllSpec(axes[0], axes[1], cons["i1"], cons["i2"])
        res = build_small_ell(spec)
        return BuiltScheme(
            document=doc,
            scheme=res.scheme,
            point_set=res.point_set,
            monomial_sets=(res.l1, res.l2, res.order),
            profile=res.profile,
            families=res.families,
            result=res,
        )
    if ctype == "codim-1":
        ps = PointSet(_axis_objects(field, cons["axes"]))
        res = build_codim1(ps, MonomialOrder.graded_lex(ps.m), tuple(cons["top"]))
        return BuiltScheme(
            document=doc,
            scheme=res.scheme,
            point_set=ps,
            monomial_sets=(res.l1, res.l2, res.order),
            profile=res.profile,
            families=(res.family,),
            result=res,
        )
    # considerate
    axes = _axis_objects(field, cons["axes"])
    spec = ConsiderateSpec(axes, tuple(cons["v"]), tuple(cons["j"]))
    res = build_considerate(spec)
    bp = profile_from_bounds(res.point_set, res.l1, res.l2, res.order, budget)
    families = eval_code_families(res.point_set, res.l1, res.l2, res.order, budget)
    return BuiltScheme(
        document=doc,
        scheme=res.scheme,
        point_set=res.point_set,
        monomial_sets=(res.l1, res.l2, res.order),
        profile=bp.profile,
        families=families,
        result=res,
    )


@dataclass(frozen=True)
class ShareDocument:
    fingerprint: str
    indices: tuple
    values: tuple

    def to_json(self):
        return json.dumps(
            {
                "fingerprint": self.fingerprint,
                "indices": list(self.indices),
                "values": list(self.values),
            },
            sort_keys=True,
            indent=2,
        )


def parse_share_document(text):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"share file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("share file must be a JSON object")
    _check_fields(raw, ("fingerprint", "indices", "values"), "shares")
    fp = _require(raw, "fingerprint", str, "shares")
    indices = _int_list(_require(raw, "indices", list, "shares"), "shares")
    values = _int_list(_require(raw, "values", list, "shares"), "shares")
    if len(indices) != len(values):
        raise ValidationError("shares: indices and values must align")
    if len(set(indices)) != len(indices):
        raise ValidationError("shares: duplicate indices")
    return ShareDocument(fp, tuple(indices), tuple(values))


def load_share_document(path):
    with open(path, encoding="utf-8") as fh:
        return parse_share_document(fh.read())
