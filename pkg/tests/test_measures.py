"""Measure and acceptance-set evaluation against definitional predicates.

Derived set values were frozen from the scenario-wise membership and
t-interval oracles; every evaluator is also cross-checked against the direct
predicate route on rational grids.
"""

import random
from fractions import Fraction

import pytest

from svrisk.errors import BadLevel, DimensionNotOne, ShapeMismatch
from svrisk.geometry import (
    Polyhedron,
    hs,
    is_subset,
    minkowski_sum,
    recession_upper_set,
    sets_equal,
    translate_set,
    upper_set,
)
from svrisk.measures import (
    AccIntersection,
    AccUnion,
    ConvexCombo,
    DominanceAt,
    MeasureIntersection,
    MeasureUnion,
    OfAcceptance,
    OfMeasure,
    Ray,
    Segment,
    SegmentHull,
    Shift,
    Translate,
    VaRStrong,
    VaRWeak,
    WorstCase,
    accepts,
    eval_acceptance,
    eval_measure,
    measure_from_doc,
    measure_to_doc,
    scalarize_1d,
    value_at_risk,
    worst_case,
)
from svrisk.scenario import PortfolioVector, RandomVector

from oracles import (
    exists_t_member,
    grid_points,
    var_strong_predicate,
    var_weak_predicate,
    wc_predicate,
)


def half_line(mkt, c):
    return upper_set(1, (Polyhedron(1, (hs([1], c),)),), mkt.cone_in_m)


class TestWorstCase:
    def test_at_zero_is_cone(self, mkt_a):
        assert sets_equal(worst_case(mkt_a, mkt_a.zero_position()),
                          recession_upper_set(mkt_a.cone_in_m))

    def test_fixture_half_line(self, mkt_a, wc_fixture_position):
        assert sets_equal(worst_case(mkt_a, wc_fixture_position),
                          half_line(mkt_a, 1))

    def test_uncompensatable_is_empty(self, mkt_a):
        x = RandomVector.of([["-1", "0"], ["0", "-2"]])
        assert worst_case(mkt_a, x).is_empty()

    def test_single_convex_piece(self, mkt_b):
        x = RandomVector.of([["-1", "2"], ["3", "-1"], ["0", "0"]])
        assert len(worst_case(mkt_b, x).pieces) == 1

    def test_matches_predicate_on_grid(self, mkt_a, mkt_b, wc_fixture_position):
        cases = [(mkt_a, wc_fixture_position),
                 (mkt_b, RandomVector.of([["-1", "-1"], ["-2", "0"], ["0", "-4"]]))]
        for mkt, x in cases:
            value = worst_case(mkt, x)
            for u in grid_points(mkt.m):
                assert value.contains_point(u) == wc_predicate(mkt, x, u)

    def test_shape_mismatch(self, mkt_a):
        with pytest.raises(ShapeMismatch):
            worst_case(mkt_a, RandomVector.zero(3, 2))


class TestValueAtRisk:
    def test_level_zero_is_worst_case(self, mkt_b, var_fixture_position):
        v = value_at_risk(mkt_b, "strong", 0, var_fixture_position)
        assert sets_equal(v, worst_case(mkt_b, var_fixture_position))

    def test_documented_two_piece_value(self, mkt_b, var_fixture_position):
        v = value_at_risk(mkt_b, "strong", Fraction(1, 4), var_fixture_position)
        expected = upper_set(2, (
            Polyhedron(2, (hs([1, 0], 2), hs([0, 1], 1))),
            Polyhedron(2, (hs([1, 0], 1), hs([0, 1], 4))),
        ), mkt_b.cone_in_m)
        assert sets_equal(v, expected)
        assert len(v.pieces) == 2

    def test_level_one_is_everything(self, mkt_b, var_fixture_position):
        v = value_at_risk(mkt_b, "strong", 1, var_fixture_position)
        assert v.pieces[0].halfspaces == ()

    def test_strong_inside_weak(self, mkt_a, mkt_b, var_fixture_position):
        lam = Fraction(1, 4)
        for mkt, x in ((mkt_b, var_fixture_position),
                       (mkt_a, RandomVector.of([["-2", "1"], ["1", "-1"]]))):
            strong = value_at_risk(mkt, "strong", lam, x)
            weak = value_at_risk(mkt, "weak", lam, x)
            assert is_subset(strong, weak)

    @pytest.mark.parametrize("kind,oracle", [
        ("strong", var_strong_predicate),
        ("weak", var_weak_predicate),
    ])
    def test_matches_predicate_on_grid(self, mkt_b, var_fixture_position, kind, oracle):
        lam = Fraction(1, 4)
        value = value_at_risk(mkt_b, kind, lam, var_fixture_position)
        for u in grid_points(2, -1, 5, Fraction(1, 2)):
            assert value.contains_point(u) == oracle(mkt_b, var_fixture_position, u, lam)

    def test_bad_level(self, mkt_b, var_fixture_position):
        with pytest.raises(BadLevel):
            value_at_risk(mkt_b, "strong", Fraction(5, 4), var_fixture_position)
        with pytest.raises(BadLevel):
            VaRWeak(Fraction(-1, 2))

    def test_positive_homogeneity_sampled(self, mkt_b, var_fixture_position):
        v = value_at_risk(mkt_b, "strong", Fraction(1, 4), var_fixture_position)
        for t in (Fraction(1, 2), Fraction(2), Fraction(3, 4)):
            scaled = value_at_risk(mkt_b, "strong", Fraction(1, 4),
                                   var_fixture_position.scale(t))
            from svrisk.geometry import scale_set
            assert sets_equal(scale_set(t, v), scaled)

    def test_three_asset_market(self):
        from svrisk.geometry import scale_set
        from svrisk.scenario import load_market
        doc = {"d": 3, "probs": ["1/3", "1/3", "1/3"],
               "cone": {"halfspaces": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]},
               "subspace": {"coords": [0, 1, 2]}}
        mkt = load_market(doc)
        x = RandomVector.of([["-1", "0", "2"], ["0", "-2", "1"], ["1", "1", "-1"]])
        wc = worst_case(mkt, x)
        assert len(wc.pieces) == 1
        v = value_at_risk(mkt, "strong", Fraction(1, 3), x)
        assert is_subset(wc, v)
        assert sets_equal(scale_set(2, v),
                          value_at_risk(mkt, "strong", Fraction(1, 3), x.scale(2)))


class TestEvalAcceptance:
    def test_dominance_at_self(self, mkt_a, wc_fixture_position):
        a = DominanceAt(wc_fixture_position)
        out = eval_acceptance(mkt_a, a, wc_fixture_position)
        assert sets_equal(out, recession_upper_set(mkt_a.cone_in_m))

    def test_segment_t_forced_to_zero(self, mkt_a):
        z = RandomVector.constant(2, ["-1", "1"])
        out = eval_acceptance(mkt_a, Segment(z), mkt_a.zero_position())
        assert sets_equal(out, half_line(mkt_a, 0))

    def test_segment_best_t_is_one(self, mkt_a):
        z = RandomVector.constant(2, ["-2", "0"])
        out = eval_acceptance(mkt_a, Segment(z), mkt_a.zero_position())
        assert sets_equal(out, half_line(mkt_a, -2))

    def test_segment_matches_interval_oracle(self, mkt_a):
        z = RandomVector.of([["-2", "1"], ["1", "-1"]])
        x = RandomVector.of([["0", "1"], ["-1", "2"]])
        out = eval_acceptance(mkt_a, Segment(z), x)
        rows = []
        for xr, zr in zip(x.values, z.values):
            for a in mkt_a.cone.halfspaces:
                au = sum(c * b for c, b in zip(a, mkt_a.subspace.basis[0]))
                rows.append((au, -sum(c * v for c, v in zip(a, zr)),
                             -sum(c * v for c, v in zip(a, xr)), False))
        for u in grid_points(1, -4, 4, Fraction(1, 3)):
            assert out.contains_point(u) == exists_t_member(rows, u, lo=0, hi=1)

    def test_ray_extends_segment(self, mkt_b):
        z = RandomVector.constant(3, ["-1", "-1"])
        x = mkt_b.zero_position()
        seg = eval_acceptance(mkt_b, Segment(z), x)
        ray = eval_acceptance(mkt_b, Ray(z), x)
        assert is_subset(seg, ray)

    def test_segment_hull_contains_endpoints(self, mkt_b):
        y = RandomVector.constant(3, ["2", "0"])
        z = RandomVector.constant(3, ["0", "2"])
        hull_val = eval_acceptance(mkt_b, SegmentHull(y, z), mkt_b.zero_position())
        for anchor in (y, z):
            dom_val = eval_acceptance(mkt_b, DominanceAt(anchor), mkt_b.zero_position())
            assert is_subset(dom_val, hull_val)

    def test_segment_always_single_piece(self, mkt_a):
        rng = random.Random(5)
        for _ in range(20):
            z = RandomVector.of([[Fraction(rng.randint(-4, 4), 2) for _ in range(2)]
                                 for _ in range(2)])
            x = RandomVector.of([[Fraction(rng.randint(-4, 4), 2) for _ in range(2)]
                                 for _ in range(2)])
            out = eval_acceptance(mkt_a, Segment(z), x)
            assert len(out.pieces) <= 1

    def test_of_measure_round_trip(self, mkt_a, wc_fixture_position):
        direct = worst_case(mkt_a, wc_fixture_position)
        via = eval_acceptance(mkt_a, OfMeasure(WorstCase()), wc_fixture_position)
        assert sets_equal(direct, via)

    def test_set_nodes_distribute(self, mkt_b):
        z1 = RandomVector.constant(3, ["2", "0"])
        z2 = RandomVector.constant(3, ["0", "2"])
        x = mkt_b.zero_position()
        union_val = eval_acceptance(mkt_b, AccUnion((DominanceAt(z1), DominanceAt(z2))), x)
        inter_val = eval_acceptance(mkt_b, AccIntersection((DominanceAt(z1), DominanceAt(z2))), x)
        v1 = eval_acceptance(mkt_b, DominanceAt(z1), x)
        v2 = eval_acceptance(mkt_b, DominanceAt(z2), x)
        from svrisk.geometry import union_sets, intersect_sets
        assert sets_equal(union_val, union_sets(v1, v2))
        assert sets_equal(inter_val, intersect_sets(v1, v2))


class TestEvalMeasure:
    def test_cash_additivity_fixture(self, mkt_a, wc_fixture_position):
        u = (Fraction(3, 2),)
        shifted = wc_fixture_position.add_constant(mkt_a.from_m(u))
        lhs = eval_measure(mkt_a, WorstCase(), shifted)
        rhs = translate_set(eval_measure(mkt_a, WorstCase(), wc_fixture_position),
                            (-u[0],))
        assert sets_equal(lhs, rhs)

    def test_translate_is_precomposition(self, mkt_a, wc_fixture_position):
        y = RandomVector.constant(2, ["1", "1"])
        expr = Translate(WorstCase(), y)
        assert sets_equal(eval_measure(mkt_a, expr, wc_fixture_position),
                          worst_case(mkt_a, wc_fixture_position.add(y)))

    def test_shift_moves_value(self, mkt_a, wc_fixture_position):
        expr = Shift(WorstCase(), PortfolioVector.of(["2", "0"]))
        out = eval_measure(mkt_a, expr, wc_fixture_position)
        assert sets_equal(out, half_line(mkt_a, -1))

    def test_union_on_grid(self, mkt_a, wc_fixture_position):
        expr = MeasureUnion((WorstCase(), Shift(WorstCase(), PortfolioVector.of(["1", "0"]))))
        out = eval_measure(mkt_a, expr, wc_fixture_position)
        wc_val = worst_case(mkt_a, wc_fixture_position)
        for u in grid_points(1, -3, 3, Fraction(1, 2)):
            direct = wc_val.contains_point(u) or wc_val.contains_point((u[0] + 1,))
            assert out.contains_point(u) == direct

    def test_intersection(self, mkt_a, wc_fixture_position):
        expr = MeasureIntersection((WorstCase(), Shift(WorstCase(), PortfolioVector.of(["-1", "0"]))))
        out = eval_measure(mkt_a, expr, wc_fixture_position)
        assert sets_equal(out, half_line(mkt_a, 2))

    def test_convex_combo_of_half_lines(self, mkt_1d):
        # values {u>=0} and {u>=2} mix to {u>=1}
        x = mkt_1d.zero_position()
        expr = ConvexCombo(Fraction(1, 2), WorstCase(),
                           Shift(WorstCase(), PortfolioVector.of(["-2"])))
        out = eval_measure(mkt_1d, expr, x)
        assert sets_equal(out, half_line(mkt_1d, 1))

    def test_convex_combo_weight_validated(self):
        with pytest.raises(BadLevel):
            ConvexCombo(Fraction(3, 2), WorstCase(), WorstCase())

    def test_every_value_absorbs_cone(self, mkt_b, var_fixture_position):
        exprs = [WorstCase(), VaRStrong(Fraction(1, 4)), VaRWeak(Fraction(1, 2)),
                 OfAcceptance(Segment(RandomVector.constant(3, ["-1", "0"]))),
                 ConvexCombo(Fraction(1, 3), WorstCase(), VaRStrong(Fraction(1, 4)))]
        km = recession_upper_set(mkt_b.cone_in_m)
        for expr in exprs:
            value = eval_measure(mkt_b, expr, var_fixture_position)
            assert sets_equal(minkowski_sum(value, km), value) or value.is_empty()


class TestAccepts:
    def test_of_measure_wc_is_scenario_solvency(self, mkt_a):
        good = RandomVector.of([["1", "0"], ["-1", "2"]])
        bad = RandomVector.of([["1", "0"], ["-1", "0"]])
        assert accepts(mkt_a, OfMeasure(WorstCase()), good)
        assert not accepts(mkt_a, OfMeasure(WorstCase()), bad)

    def test_dominance_fixture(self, mkt_a, wc_fixture_position):
        z = RandomVector.of([["0", "0"], ["1", "2"]])
        assert not accepts(mkt_a, DominanceAt(z), wc_fixture_position)
        shifted = wc_fixture_position.add_constant(["1", "0"])
        assert accepts(mkt_a, DominanceAt(z), shifted)

    def test_segment_endpoint(self, mkt_a):
        z = RandomVector.of([["-1", "1"], ["2", "0"]])
        assert accepts(mkt_a, Segment(z), z)

    def test_membership_agrees_with_eval(self, mkt_a, mkt_b):
        # the direct feasibility route and the set-evaluation route agree
        rng = random.Random(9)
        anchors = {2: RandomVector.of([["-1", "1"], ["1", "-1"]]),
                   3: RandomVector.of([["-1", "1"], ["1", "-1"], ["0", "1"]])}
        for mkt in (mkt_a, mkt_b):
            z = anchors[mkt.n]
            nodes = [DominanceAt(z), Segment(z), Ray(z),
                     SegmentHull(RandomVector.constant(mkt.n, ["1", "1"]), z)]
            for _ in range(15):
                x = RandomVector.of([[Fraction(rng.randint(-4, 4), 2) for _ in range(2)]
                                     for _ in range(mkt.n)])
                for node in nodes:
                    direct = accepts(mkt, node, x)
                    via_set = eval_acceptance(mkt, node, x).contains_point(
                        (Fraction(0),) * mkt.m)
                    assert direct == via_set, (node, x)


class TestScalarize:
    def test_worst_loss(self, mkt_1d):
        x = RandomVector.of([["-3"], ["2"]])
        assert str(scalarize_1d(mkt_1d, WorstCase(), x)) == "3"

    def test_cash_additivity(self, mkt_1d):
        x = RandomVector.of([["-3"], ["2"]])
        shifted = x.add_constant(["5/2"])
        rho_x = scalarize_1d(mkt_1d, WorstCase(), x)
        rho_shifted = scalarize_1d(mkt_1d, WorstCase(), shifted)
        assert rho_shifted.value == rho_x.value - Fraction(5, 2)

    def test_star_shaped_scalarization(self, mkt_1d):
        x = RandomVector.of([["-4"], ["1"]])
        rho = scalarize_1d(mkt_1d, WorstCase(), x).value
        for t in (Fraction(1, 4), Fraction(1, 2), Fraction(7, 8)):
            rho_t = scalarize_1d(mkt_1d, WorstCase(), x.scale(t)).value
            assert rho_t <= t * rho

    def test_plus_infinity_iff_empty(self, mkt_1d):
        # VaR at level 0 with an unsalvageable scenario? in d=1 WC is never
        # empty, so force emptiness through an intersection
        expr = MeasureIntersection((WorstCase(),
                                    Shift(WorstCase(), PortfolioVector.of(["1"])),))
        x = RandomVector.of([["0"], ["0"]])
        out = eval_measure(mkt_1d, expr, x)
        assert not out.is_empty()  # half-lines always intersect
        # genuine +inf needs d >= 2, checked in the measures module directly
        assert str(scalarize_1d(mkt_1d, WorstCase(), x)) == "0"

    def test_dimension_guard(self, mkt_a):
        with pytest.raises(DimensionNotOne):
            scalarize_1d(mkt_a, WorstCase(), mkt_a.zero_position())


class TestDocuments:
    def test_measure_doc_round_trip(self, mkt_b):
        expr = ConvexCombo(
            Fraction(1, 2),
            MeasureUnion((WorstCase(), VaRStrong(Fraction(1, 4)))),
            Translate(OfAcceptance(Segment(RandomVector.constant(3, ["1", "0"]))),
                      RandomVector.constant(3, ["0", "1"])))
        doc = measure_to_doc(expr)
        assert measure_from_doc(doc) == expr

    def test_shorthand_var_doc(self):
        expr = measure_from_doc({"var": {"kind": "strong", "level": "1/4"}})
        assert expr == VaRStrong(Fraction(1, 4))
