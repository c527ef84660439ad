"""Constructive decompositions, dual certificates, and the translation link.

A measure's value set at a queried position is rebuilt as the union of the
values of convex acceptance-set members anchored at the vertices of the set:
the anchor for vertex v is Z = X + v, so the member's value at X contains v
and is dominated by the measure.  Dual certificates witness exclusion of a
portfolio from the worst-case measure with a single-scenario vector
probability measure and a violated dual-cone generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyValue,
    NotInIntersection,
    OnlyOrthogonalSeparators,
    SubspaceNotFull,
)
from .geometry import convert_rep, is_subset, separating_point, sets_equal, union_sets
from .laws import LawReport, SampleBudget, _accepted_position, _serialize_sample
from .measures import (
    AccExpr,
    AccIntersection,
    AccUnion,
    DominanceAt,
    MeasureExpr,
    OfAcceptance,
    Ray,
    Segment,
    SegmentHull,
    Translate,
    accepts,
    eval_acceptance,
    eval_measure,
)
from .rationals import Vec, dot, fmt
from .scenario import Market, PortfolioVector, RandomVector, componentwise_sup

import random


_MEMBER_KIND = {
    "monetary": DominanceAt,
    "star_normalized": Segment,
    "coherent": Ray,
}

_CONVEX_KINDS = (DominanceAt, Segment, Ray, SegmentHull)


@dataclass(frozen=True)
class DecompositionFamily:
    """Finite family of convex acceptance members with their anchors."""

    kind: str
    members: tuple[AccExpr, ...]
    anchors: tuple[RandomVector, ...]
    base: RandomVector | None = None  # hull families keep the star point
    empty_value: bool = False

    def to_doc(self) -> dict:
        from .measures import acceptance_to_doc
        doc = {
            "kind": self.kind,
            "members": [acceptance_to_doc(m) for m in self.members],
            "anchors": [z.to_doc() for z in self.anchors],
            "empty_value": self.empty_value,
        }
        if self.base is not None:
            doc["base"] = self.base.to_doc()
        return doc


def _vertex_anchors(market: Market, r: MeasureExpr, x: RandomVector):
    value = eval_measure(market, r, x)
    anchors = []
    for piece in value.pieces:
        for v in convert_rep(piece).vertices:
            anchors.append(x.add_constant(market.from_m(v)))
    return value, anchors


def _sampled_anchors(market: Market, r: MeasureExpr, extra: SampleBudget):
    """Accepted positions of the measure, used as additional anchors."""
    from .measures import OfMeasure
    rng = random.Random(extra.seed)
    target = OfMeasure(r)
    anchors = []
    for i in range(extra.count):
        z = _accepted_position(market, target, rng, extra.bound, i)
        if z is not None:
            anchors.append(z)
    return anchors


def decompose(market: Market, r: MeasureExpr, theorem: str, x: RandomVector,
              extra: SampleBudget | None = None) -> DecompositionFamily:
    """Build the theorem's acceptance family anchored at the value's vertices.

    ``theorem`` picks the member constructor: 'monetary' wraps anchors in
    dominance sets, 'star_normalized' in segments (requires a normalized
    star-shaped measure), 'coherent' in rays (requires positive homogeneity).
    ``extra`` adds seeded accepted-sample anchors.  When the value set is
    empty and no sampled anchor exists, EmptyValue is raised; with sampled
    anchors the family is returned flagged instead.
    """
    if theorem not in _MEMBER_KIND:
        raise ValueError(f"unknown decomposition theorem {theorem!r}")
    value, anchors = _vertex_anchors(market, r, x)
    flagged = value.is_empty()
    if extra is not None:
        anchors.extend(_sampled_anchors(market, r, extra))
    if not anchors:
        raise EmptyValue("value set is empty and no sampled anchors were found")
    wrap = _MEMBER_KIND[theorem]
    members = tuple(wrap(z) for z in anchors)
    family = DecompositionFamily(theorem, members, tuple(anchors),
                                 empty_value=flagged)
    _validate_family(market, family)
    return family


def hull_family(market: Market, r: MeasureExpr, y: RandomVector,
                x: RandomVector) -> DecompositionFamily:
    """Family of segment hulls through a common base position y.

    Realizes the star-shaped-at-y construction: every member contains y, so
    the family has nonempty intersection by design.
    """
    value, anchors = _vertex_anchors(market, r, x)
    if not anchors:
        raise EmptyValue("value set is empty; no hull anchors available")
    members = tuple(SegmentHull(y, z) for z in anchors)
    family = DecompositionFamily("hull", members, tuple(anchors), base=y,
                                 empty_value=value.is_empty())
    _validate_family(market, family)
    return family


def _validate_family(market: Market, family: DecompositionFamily):
    for member, anchor in zip(family.members, family.anchors):
        if not accepts(market, member, anchor):
            raise AssertionError("family member rejects its own anchor")
    if family.base is not None:
        for member in family.members:
            if not accepts(market, member, family.base):
                raise NotInIntersection("hull base rejected by a member")


def family_union_value(market: Market, family: DecompositionFamily,
                       x: RandomVector):
    values = [eval_acceptance(market, member, x) for member in family.members]
    out = values[0]
    for v in values[1:]:
        out = union_sets(out, v)
    return out


def reconstruct_check(market: Market, r: MeasureExpr,
                      family: DecompositionFamily, x: RandomVector,
                      budget: SampleBudget = SampleBudget()) -> LawReport:
    """Union of member values against the measure's value at x.

    The union must always be dominated by the measure; equality is required
    exactly when the family contains every vertex-derived anchor of the value
    set at x.
    """
    value = eval_measure(market, r, x)
    union = family_union_value(market, family, x)
    if not is_subset(union, value):
        w = separating_point(union, value)
        witness = {"relation": "reconstruct_containment",
                   "sample": {"x": x.to_doc()},
                   "detail": {"separating_point": [fmt(c) for c in w]}}
        return LawReport(f"reconstruct_{family.kind}", "fail", 1, witness,
                         budget.seed, budget.count)
    _, needed = _vertex_anchors(market, r, x)
    have = set(family.anchors)
    if all(z in have for z in needed):
        if not sets_equal(union, value):
            w = separating_point(value, union)
            witness = {"relation": "reconstruct_equality",
                       "sample": {"x": x.to_doc()},
                       "detail": {"separating_point": [fmt(c) for c in w]}}
            return LawReport(f"reconstruct_{family.kind}", "fail", 2, witness,
                             budget.seed, budget.count)
    return LawReport(f"reconstruct_{family.kind}", "pass", 2, None,
                     budget.seed, budget.count)


# ---------------------------------------------------------------------------
# dual certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualCertificate:
    """(Q, y) pair excluding a portfolio from the worst-case value.

    ``q_columns[j]`` is the probability vector of component j over scenarios;
    here every component concentrates on one scenario.  y is a dual-cone
    generator outside the orthogonal complement of M.
    """

    q_columns: tuple[Vec, ...]
    y: Vec
    excluded_point: PortfolioVector

    def to_doc(self) -> dict:
        return {
            "q_columns": [[fmt(q) for q in col] for col in self.q_columns],
            "y": [fmt(v) for v in self.y],
            "excluded_point": self.excluded_point.to_doc(),
        }


def _in_m_perp(market: Market, y: Vec) -> bool:
    return all(dot(y, b) == 0 for b in market.subspace.basis)


def dual_certificate(market: Market, y_vec: RandomVector,
                     u: PortfolioVector) -> DualCertificate | None:
    """Certificate that u is missing from the worst-case value, or None.

    Scans scenarios for a dual generator violated by y_vec(w) + u; the
    certificate concentrates every Q component on that scenario.  Raises
    OnlyOrthogonalSeparators when every violated generator is orthogonal
    to M, where the dual representation cannot see the exclusion.
    """
    from .measures import worst_case
    u_m = market.to_m(u.coords)
    if worst_case(market, y_vec).contains_point(u_m):
        return None
    fallback_found = False
    for i, row in enumerate(y_vec.values):
        shifted = tuple(a + b for a, b in zip(row, u.coords))
        for a in market.cone.dual_generators:
            if dot(a, shifted) < 0:
                if _in_m_perp(market, a):
                    fallback_found = True
                    continue
                column = tuple(Fraction(1) if k == i else Fraction(0)
                               for k in range(market.n))
                return DualCertificate(tuple(column for _ in range(market.d)),
                                       a, u)
    if fallback_found:
        raise OnlyOrthogonalSeparators(
            "every separating dual generator lies in the orthogonal complement of M")
    raise AssertionError("point outside worst case must violate some dual generator")


def validate_certificate(market: Market, y_vec: RandomVector,
                         cert: DualCertificate) -> bool:
    """Exact re-check of all certificate conditions; False on any failure."""
    n, d = market.n, market.d
    if len(cert.q_columns) != d or any(len(col) != n for col in cert.q_columns):
        return False
    for col in cert.q_columns:
        if any(q < 0 for q in col) or sum(col) != 1:
            return False
        if any(q != 0 and p == 0 for q, p in zip(col, market.space.probs)):
            return False
    if len(cert.y) != d:
        return False
    # y in K+ vis-a-vis the generators of K, and not orthogonal to M
    if any(dot(cert.y, g) < 0 for g in market.cone.generators):
        return False
    if _in_m_perp(market, cert.y):
        return False
    # diag(y) dQ/dP must land in K+ scenario-wise
    for i in range(n):
        row = tuple(cert.y[j] * cert.q_columns[j][i] / market.space.probs[i]
                    for j in range(d))
        if any(dot(row, g) < 0 for g in market.cone.generators):
            return False
    # exclusion: y . (u - E^Q[-Y]) < 0
    expectation = tuple(
        sum((cert.q_columns[j][i] * (-y_vec.values[i][j]) for i in range(n)),
            Fraction(0))
        for j in range(d))
    gap = dot(cert.y, tuple(a - b for a, b in
                            zip(cert.excluded_point.coords, expectation)))
    return gap < 0


# ---------------------------------------------------------------------------
# the monetary <-> star-shaped translation link
# ---------------------------------------------------------------------------


def _family_members(family_or_members):
    if isinstance(family_or_members, DecompositionFamily):
        return family_or_members.members
    return tuple(family_or_members)


def star_link(market: Market, family_or_members, y: RandomVector,
              budget: SampleBudget = SampleBudget()) -> tuple[MeasureExpr, LawReport]:
    """Translate the union measure by a position in every member.

    Returns the translated measure R_y(X) = R_A(X + y) together with the
    star-shapedness report that the construction guarantees to pass.
    Raises NotInIntersection when y is rejected by some member.
    """
    from .laws import check_measure_law
    members = _family_members(family_or_members)
    if not members:
        raise NotInIntersection("the empty family has no intersection")
    for member in members:
        if not isinstance(member, _CONVEX_KINDS):
            raise ValueError(
                f"star link requires convex member kinds, got {type(member).__name__}")
        if not accepts(market, member, y):
            raise NotInIntersection("y is rejected by a family member")
    translated = Translate(OfAcceptance(AccUnion(members)), y)
    report = check_measure_law(market, translated, "R6", budget)
    return translated, report


def esssup_bridge(market: Market, members, budget: SampleBudget = SampleBudget()) -> LawReport:
    """On a full subspace, accepted positions stay accepted at their sup.

    Witnesses that the member intersection meets M iff it is nonempty when
    M = R^d: monotonicity lifts any accepted position to its deterministic
    componentwise supremum.  Raises SubspaceNotFull otherwise.
    """
    if not market.subspace.is_full():
        raise SubspaceNotFull("the ess-sup bridge needs M = R^d")
    members = tuple(members)
    joint = AccIntersection(members)
    rng = random.Random(budget.seed)
    checked = 0
    for i in range(budget.count):
        x = _accepted_position(market, joint, rng, budget.bound, i)
        if x is None:
            continue
        checked += 1
        sup = componentwise_sup(x)
        lifted = RandomVector.constant(market.n, sup.coords)
        if not accepts(market, joint, lifted):
            witness = {"relation": "esssup_lift",
                       "sample": _serialize_sample({"x": x}),
                       "detail": {"sup": sup.to_doc()}}
            return LawReport("esssup_bridge", "fail", checked, witness,
                             budget.seed, budget.count)
    return LawReport("esssup_bridge", "pass", checked, None,
                     budget.seed, budget.count)


def find_star_member(market: Market, family: DecompositionFamily,
                     budget: SampleBudget = SampleBudget()):
    """A member whose induced measure accepts zero, i.e. a star-shaped one.

    Exact scan over the family; the sampled star check on the winner is run
    at the given budget as corroboration.  Returns None when every member
    rejects the zero position.
    """
    from .laws import check_measure_law
    zero = market.zero_position()
    for member in family.members:
        if accepts(market, member, zero):
            report = check_measure_law(market, OfAcceptance(member), "R6", budget)
            if report.passed:
                return member
    return None
