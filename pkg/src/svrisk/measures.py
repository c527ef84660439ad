"""Set-valued risk measures and acceptance sets as expression trees.

Evaluation returns canonical upper sets in M-coordinates.  Worst-case and
value-at-risk are built from scenario-wise cone membership; segment, ray, and
hull acceptance sets evaluate by exact one-variable elimination of the mixing
parameter.  Membership tests (``accepts``) run on an independent direct
feasibility route, deliberately not through the set evaluator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadLevel, DimensionNotOne, MembershipOnly, ShapeMismatch
from .geometry import (
    Halfspace,
    Polyhedron,
    UpperSet,
    eliminate,
    feasible,
    intersect_sets,
    minkowski_sum,
    scale_set,
    translate_set,
    union_sets,
    upper_set,
)
from .rationals import ONE, Vec, dot, fmt, rat, vscale, vsub, zeros
from .scenario import Market, PortfolioVector, RandomVector, dominates


# ---------------------------------------------------------------------------
# expression nodes
# ---------------------------------------------------------------------------


class MeasureExpr:
    """Base marker for risk-measure expression nodes."""


class AccExpr:
    """Base marker for acceptance-set expression nodes."""


@dataclass(frozen=True)
class WorstCase(MeasureExpr):
    """All eligible portfolios making the position solvent in every scenario."""


def _check_level(level) -> Fraction:
    level = rat(level)
    if level < 0 or level > 1:
        raise BadLevel(f"level must lie in [0, 1], got {level}")
    return level


@dataclass(frozen=True)
class VaRWeak(MeasureExpr):
    """u keeping P(X + u in -int K) at most the level."""

    level: Fraction

    def __post_init__(self):
        object.__setattr__(self, "level", _check_level(self.level))


@dataclass(frozen=True)
class VaRStrong(MeasureExpr):
    """u keeping P(X + u outside K) at most the level."""

    level: Fraction

    def __post_init__(self):
        object.__setattr__(self, "level", _check_level(self.level))


@dataclass(frozen=True)
class OfAcceptance(MeasureExpr):
    """Measure induced by an acceptance set: u such that X + u is accepted."""

    acceptance: "AccExpr"


@dataclass(frozen=True)
class Translate(MeasureExpr):
    """Pre-composition with a position shift: evaluates inner at X + y."""

    inner: MeasureExpr
    y: RandomVector


@dataclass(frozen=True)
class Shift(MeasureExpr):
    """Post-translation of the value set: inner(X) - u."""

    inner: MeasureExpr
    u: PortfolioVector


@dataclass(frozen=True)
class MeasureUnion(MeasureExpr):
    parts: tuple[MeasureExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class MeasureIntersection(MeasureExpr):
    parts: tuple[MeasureExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class ConvexCombo(MeasureExpr):
    """Pointwise convex combination: weight*left (+) (1-weight)*right."""

    weight: Fraction
    left: MeasureExpr
    right: MeasureExpr

    def __post_init__(self):
        w = rat(self.weight)
        if w < 0 or w > 1:
            raise BadLevel(f"convex weight must lie in [0, 1], got {w}")
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class DominanceAt(AccExpr):
    """Positions dominating the anchor scenario-wise."""

    anchor: RandomVector


@dataclass(frozen=True)
class Segment(AccExpr):
    """Positions dominating t*anchor for some t in [0, 1]."""

    anchor: RandomVector


@dataclass(frozen=True)
class Ray(AccExpr):
    """Positions dominating t*anchor for some t >= 0."""

    anchor: RandomVector


@dataclass(frozen=True)
class SegmentHull(AccExpr):
    """Positions dominating t*anchor + (1-t)*base for some t in [0, 1]."""

    base: RandomVector
    anchor: RandomVector


@dataclass(frozen=True)
class OfMeasure(AccExpr):
    """Acceptance set of a measure: positions whose value contains zero."""

    measure: MeasureExpr


@dataclass(frozen=True)
class AccUnion(AccExpr):
    parts: tuple[AccExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class AccIntersection(AccExpr):
    parts: tuple[AccExpr, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))


@dataclass(frozen=True)
class ExtendedScalar:
    """Rational number extended with the two infinities."""

    kind: str  # "finite" | "minus_infinity" | "plus_infinity"
    value: Fraction | None = None

    @classmethod
    def finite(cls, v) -> "ExtendedScalar":
        return cls("finite", rat(v))

    @classmethod
    def minus_infinity(cls) -> "ExtendedScalar":
        return cls("minus_infinity")

    @classmethod
    def plus_infinity(cls) -> "ExtendedScalar":
        return cls("plus_infinity")

    def __str__(self):
        if self.kind == "finite":
            return fmt(self.value)
        return "-inf" if self.kind == "minus_infinity" else "+inf"


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _check_shape(market: Market, x: RandomVector):
    if (x.n, x.d) != (market.n, market.d):
        raise ShapeMismatch(
            f"position is {x.n}x{x.d}, market expects {market.n}x{market.d}")


def _scenario_rows(market: Market, row: Vec) -> list[Halfspace]:
    """Halfspaces on M-coords forcing row + u inside K."""
    out = []
    for a in market.cone.halfspaces:
        normal = tuple(dot(a, b) for b in market.subspace.basis)
        out.append(Halfspace.make(normal, -dot(a, row)))
    return out


def worst_case(market: Market, x: RandomVector) -> UpperSet:
    """Eligible u with X + u solvent in every scenario; one convex piece."""
    _check_shape(market, x)
    rows = []
    for row in x.values:
        rows.extend(_scenario_rows(market, row))
    piece = Polyhedron(market.m, tuple(rows))
    return upper_set(market.m, (piece,), market.cone_in_m)


def _good_scenario_sets(market: Market, level: Fraction):
    """Inclusion-minimal scenario sets whose complement has mass <= level."""
    n = market.n
    need = 1 - level
    valid = []
    for size in range(n + 1):
        for t in itertools.combinations(range(n), size):
            if market.space.prob_of(t) >= need:
                if not any(set(s) <= set(t) for s in valid):
                    valid.append(t)
    return valid


def value_at_risk(market: Market, kind: str, level, x: RandomVector) -> UpperSet:
    """Set-valued V@R: union over minimal good-scenario sets.

    'strong' keeps X + u inside K on the good scenarios; 'weak' only keeps it
    out of -int K, a union of closed halfspaces per scenario.
    """
    _check_shape(market, x)
    level = _check_level(level)
    if kind not in ("weak", "strong"):
        raise BadLevel(f"kind must be 'weak' or 'strong', got {kind!r}")
    pieces = []
    for t in _good_scenario_sets(market, level):
        if kind == "strong":
            rows = []
            for i in t:
                rows.extend(_scenario_rows(market, x.values[i]))
            pieces.append(Polyhedron(market.m, tuple(rows)))
        else:
            # not in -int K  <=>  some cone halfspace holds weakly
            options = [_scenario_rows(market, x.values[i]) for i in t]
            for choice in itertools.product(*options):
                pieces.append(Polyhedron(market.m, tuple(choice)))
    return upper_set(market.m, pieces, market.cone_in_m)


def _eliminate_mixing(market: Market, x: RandomVector, combos,
                      t_low: bool, t_high: bool) -> UpperSet:
    """Project out the mixing variable t from scenario-wise dominance.

    ``combos`` yields per-scenario pairs (base_row, direction_row) so that the
    constraint is  x_i + u - base_i - t*dir_i  in K.
    """
    m = market.m
    rows = []
    for row, (base, direction) in zip(x.values, combos):
        for a in market.cone.halfspaces:
            normal = tuple(dot(a, b) for b in market.subspace.basis)
            rows.append(Halfspace.make(normal + (-dot(a, direction),),
                                       -dot(a, vsub(row, base))))
    if t_low:
        rows.append(Halfspace.make(zeros(m) + (ONE,), 0))
    if t_high:
        rows.append(Halfspace.make(zeros(m) + (-ONE,), -1))
    piece = eliminate(Polyhedron(m + 1, tuple(rows)), (m,))
    return upper_set(m, (piece,), market.cone_in_m)


def eval_acceptance(market: Market, a: AccExpr, x: RandomVector) -> UpperSet:
    """Value of the acceptance-set-induced measure: {u in M : X + u in A}."""
    _check_shape(market, x)
    if isinstance(a, DominanceAt):
        return worst_case(market, x.sub(a.anchor))
    if isinstance(a, Segment):
        combos = [(zeros(market.d), row) for row in a.anchor.values]
        return _eliminate_mixing(market, x, combos, t_low=True, t_high=True)
    if isinstance(a, Ray):
        combos = [(zeros(market.d), row) for row in a.anchor.values]
        return _eliminate_mixing(market, x, combos, t_low=True, t_high=False)
    if isinstance(a, SegmentHull):
        combos = [(by, vsub(bz, by))
                  for by, bz in zip(a.base.values, a.anchor.values)]
        return _eliminate_mixing(market, x, combos, t_low=True, t_high=True)
    if isinstance(a, OfMeasure):
        # every expressible measure is cash additive, so the acceptance set
        # of the measure induces the measure itself
        return eval_measure(market, a.measure, x)
    if isinstance(a, AccUnion):
        values = [eval_acceptance(market, p, x) for p in a.parts]
        out = values[0]
        for v in values[1:]:
            out = union_sets(out, v)
        return out
    if isinstance(a, AccIntersection):
        values = [eval_acceptance(market, p, x) for p in a.parts]
        out = values[0]
        for v in values[1:]:
            out = intersect_sets(out, v)
        return out
    raise MembershipOnly(f"cannot evaluate acceptance node {type(a).__name__}")


def eval_measure(market: Market, r: MeasureExpr, x: RandomVector) -> UpperSet:
    """Structural evaluation of a measure expression at a position."""
    _check_shape(market, x)
    if isinstance(r, WorstCase):
        return worst_case(market, x)
    if isinstance(r, VaRWeak):
        return value_at_risk(market, "weak", r.level, x)
    if isinstance(r, VaRStrong):
        return value_at_risk(market, "strong", r.level, x)
    if isinstance(r, OfAcceptance):
        return eval_acceptance(market, r.acceptance, x)
    if isinstance(r, Translate):
        return eval_measure(market, r.inner, x.add(r.y))
    if isinstance(r, Shift):
        u_m = market.to_m(r.u.coords)
        return translate_set(eval_measure(market, r.inner, x),
                             vscale(Fraction(-1), u_m))
    if isinstance(r, MeasureUnion):
        values = [eval_measure(market, p, x) for p in r.parts]
        out = values[0]
        for v in values[1:]:
            out = union_sets(out, v)
        return out
    if isinstance(r, MeasureIntersection):
        values = [eval_measure(market, p, x) for p in r.parts]
        out = values[0]
        for v in values[1:]:
            out = intersect_sets(out, v)
        return out
    if isinstance(r, ConvexCombo):
        left = scale_set(r.weight, eval_measure(market, r.left, x))
        right = scale_set(1 - r.weight, eval_measure(market, r.right, x))
        return minkowski_sum(left, right)
    raise TypeError(f"not a measure expression: {type(r).__name__}")


def accepts(market: Market, a: AccExpr, x: RandomVector) -> bool:
    """Membership of X in the acceptance set, by direct feasibility.

    Runs independently of the set evaluator: dominance is checked row-wise,
    mixing nodes reduce to a one-variable rational feasibility problem.
    """
    _check_shape(market, x)
    if isinstance(a, DominanceAt):
        return dominates(market, x, a.anchor)
    if isinstance(a, (Segment, Ray)):
        rows = []
        for row, zrow in zip(x.values, a.anchor.values):
            for c in market.cone.halfspaces:
                rows.append(Halfspace.make((-dot(c, zrow),), -dot(c, row)))
        rows.append(Halfspace.make((ONE,), 0))
        if isinstance(a, Segment):
            rows.append(Halfspace.make((-ONE,), -1))
        return feasible(rows, 1)
    if isinstance(a, SegmentHull):
        rows = []
        for row, yrow, zrow in zip(x.values, a.base.values, a.anchor.values):
            for c in market.cone.halfspaces:
                rows.append(Halfspace.make((dot(c, vsub(yrow, zrow)),),
                                           -dot(c, vsub(row, yrow))))
        rows.append(Halfspace.make((ONE,), 0))
        rows.append(Halfspace.make((-ONE,), -1))
        return feasible(rows, 1)
    if isinstance(a, OfMeasure):
        value = eval_measure(market, a.measure, x)
        return value.contains_point(zeros(market.m))
    if isinstance(a, AccUnion):
        return any(accepts(market, p, x) for p in a.parts)
    if isinstance(a, AccIntersection):
        return all(accepts(market, p, x) for p in a.parts)
    raise TypeError(f"not an acceptance expression: {type(a).__name__}")


def scalarize_1d(market: Market, r: MeasureExpr, x: RandomVector) -> ExtendedScalar:
    """Infimum of the value set in the one-dimensional setting d = m = 1."""
    if market.d != 1 or market.m != 1:
        raise DimensionNotOne(f"scalarization needs d = m = 1, got d={market.d}, m={market.m}")
    value = eval_measure(market, r, x)
    if value.is_empty():
        return ExtendedScalar.plus_infinity()
    best = None
    for piece in value.pieces:
        low = None
        for h in piece.halfspaces:
            c = h.normal[0]
            if c > 0:
                bound = h.offset / c
                if low is None or bound > low:
                    low = bound
        if low is None:
            return ExtendedScalar.minus_infinity()
        if best is None or low < best:
            best = low
    return ExtendedScalar.finite(best)


# ---------------------------------------------------------------------------
# documents
# ---------------------------------------------------------------------------


def _position_from_ref(ref, loader):
    if isinstance(ref, dict) and "rows" in ref:
        return RandomVector.of(ref["rows"])
    if isinstance(ref, str) and loader is not None:
        return loader(ref)
    from .errors import MalformedDocument
    raise MalformedDocument(f"cannot resolve position reference {ref!r}")


def measure_from_doc(doc, loader=None) -> MeasureExpr:
    """Parse a measure-expression document (see README for the grammar)."""
    from .errors import MalformedDocument
    if doc == "wc" or doc == {"wc": {}}:
        return WorstCase()
    if not isinstance(doc, dict) or len(doc) != 1:
        raise MalformedDocument(f"bad measure node: {doc!r}")
    (key, body), = doc.items()
    if key == "wc":
        return WorstCase()
    if key == "var":
        kind, level = body.get("kind"), rat(body.get("level"))
        if kind == "weak":
            return VaRWeak(level)
        if kind == "strong":
            return VaRStrong(level)
        raise MalformedDocument(f"bad var kind: {kind!r}")
    if key == "of_acceptance":
        return OfAcceptance(acceptance_from_doc(body, loader))
    if key == "translate":
        return Translate(measure_from_doc(body["inner"], loader),
                         _position_from_ref(body["y"], loader))
    if key == "shift":
        return Shift(measure_from_doc(body["inner"], loader),
                     PortfolioVector.of(body["u"]))
    if key == "union":
        return MeasureUnion(tuple(measure_from_doc(p, loader) for p in body))
    if key == "intersection":
        return MeasureIntersection(tuple(measure_from_doc(p, loader) for p in body))
    if key == "convex_combo":
        return ConvexCombo(rat(body["weight"]),
                           measure_from_doc(body["left"], loader),
                           measure_from_doc(body["right"], loader))
    raise MalformedDocument(f"unknown measure node: {key!r}")


def acceptance_from_doc(doc, loader=None) -> AccExpr:
    from .errors import MalformedDocument
    if not isinstance(doc, dict) or len(doc) != 1:
        raise MalformedDocument(f"bad acceptance node: {doc!r}")
    (key, body), = doc.items()
    if key == "dominance_at":
        return DominanceAt(_position_from_ref(body["z"], loader))
    if key == "segment":
        return Segment(_position_from_ref(body["z"], loader))
    if key == "ray":
        return Ray(_position_from_ref(body["z"], loader))
    if key == "segment_hull":
        return SegmentHull(_position_from_ref(body["y"], loader),
                           _position_from_ref(body["z"], loader))
    if key == "of_measure":
        return OfMeasure(measure_from_doc(body, loader))
    if key == "union":
        return AccUnion(tuple(acceptance_from_doc(p, loader) for p in body))
    if key == "intersection":
        return AccIntersection(tuple(acceptance_from_doc(p, loader) for p in body))
    raise MalformedDocument(f"unknown acceptance node: {key!r}")


def measure_to_doc(r: MeasureExpr) -> dict:
    if isinstance(r, WorstCase):
        return {"wc": {}}
    if isinstance(r, VaRWeak):
        return {"var": {"kind": "weak", "level": fmt(r.level)}}
    if isinstance(r, VaRStrong):
        return {"var": {"kind": "strong", "level": fmt(r.level)}}
    if isinstance(r, OfAcceptance):
        return {"of_acceptance": acceptance_to_doc(r.acceptance)}
    if isinstance(r, Translate):
        return {"translate": {"inner": measure_to_doc(r.inner), "y": r.y.to_doc()}}
    if isinstance(r, Shift):
        return {"shift": {"inner": measure_to_doc(r.inner), "u": r.u.to_doc()}}
    if isinstance(r, MeasureUnion):
        return {"union": [measure_to_doc(p) for p in r.parts]}
    if isinstance(r, MeasureIntersection):
        return {"intersection": [measure_to_doc(p) for p in r.parts]}
    if isinstance(r, ConvexCombo):
        return {"convex_combo": {"weight": fmt(r.weight),
                                 "left": measure_to_doc(r.left),
                                 "right": measure_to_doc(r.right)}}
    raise TypeError(f"not a measure expression: {type(r).__name__}")


def acceptance_to_doc(a: AccExpr) -> dict:
    if isinstance(a, DominanceAt):
        return {"dominance_at": {"z": a.anchor.to_doc()}}
    if isinstance(a, Segment):
        return {"segment": {"z": a.anchor.to_doc()}}
    if isinstance(a, Ray):
        return {"ray": {"z": a.anchor.to_doc()}}
    if isinstance(a, SegmentHull):
        return {"segment_hull": {"y": a.base.to_doc(), "z": a.anchor.to_doc()}}
    if isinstance(a, OfMeasure):
        return {"of_measure": measure_to_doc(a.measure)}
    if isinstance(a, AccUnion):
        return {"union": [acceptance_to_doc(p) for p in a.parts]}
    if isinstance(a, AccIntersection):
        return {"intersection": [acceptance_to_doc(p) for p in a.parts]}
    raise TypeError(f"not an acceptance expression: {type(a).__name__}")
