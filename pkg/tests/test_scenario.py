"""Market ingestion, the K-induced order, and position arithmetic."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from svrisk.errors import (
    EmptyInterior,
    MalformedDocument,
    OrthantNotContained,
    ProbabilitySum,
    ShapeMismatch,
)
from svrisk.fixtures import market_doc
from svrisk.rationals import dot
from svrisk.scenario import (
    PortfolioVector,
    RandomVector,
    componentwise_sup,
    dominates,
    load_market,
    load_position,
    translate_and_scale,
)


class TestLoadMarket:
    def test_mkt_a_valid(self):
        mkt = load_market(market_doc("mkt-a"))
        assert (mkt.n, mkt.d, mkt.m) == (2, 2, 1)
        assert mkt.cone_in_m.halfspaces == ((Fraction(1),),)

    def test_frictionless_valid(self):
        mkt = load_market(market_doc("mkt-b"))
        assert (mkt.n, mkt.d, mkt.m) == (3, 2, 2)

    def test_json_text_source(self):
        import json
        mkt = load_market(json.dumps(market_doc("mkt-a")))
        assert mkt.d == 2

    def test_bidask_cone_section(self):
        doc = {"d": 2, "probs": ["1/2", "1/2"],
               "cone": {"bidask": [[1, 2], [2, 1]]},
               "subspace": {"coords": [0, 1]}}
        mkt = load_market(doc)
        assert mkt.cone.contains_orthant()

    def test_probability_sum(self):
        doc = dict(market_doc("mkt-a"), probs=["1/2", "1/3"])
        with pytest.raises(ProbabilitySum):
            load_market(doc)

    def test_nonpositive_probability(self):
        doc = dict(market_doc("mkt-a"), probs=["3/2", "-1/2"])
        with pytest.raises(ProbabilitySum):
            load_market(doc)

    def test_orthant_not_contained(self):
        doc = dict(market_doc("mkt-a"), cone={"halfspaces": [[1, -1]]})
        with pytest.raises(OrthantNotContained):
            load_market(doc)

    def test_empty_interior(self):
        doc = dict(market_doc("mkt-b"), subspace={"basis": [[1, -1]]})
        with pytest.raises(EmptyInterior):
            load_market(doc)

    @pytest.mark.parametrize("mangle", [
        lambda d: "not json at all {",
        lambda d: {k: v for k, v in d.items() if k != "cone"},
        lambda d: dict(d, probs=["1/2", "oops"]),
        lambda d: dict(d, cone={"rays": [[1, 0]]}),
        lambda d: dict(d, subspace={"coords": [5]}),
    ])
    def test_malformed_documents(self, mangle):
        with pytest.raises(MalformedDocument):
            load_market(mangle(dict(market_doc("mkt-a"))))

    def test_position_shape_check(self, mkt_a):
        with pytest.raises(ShapeMismatch):
            load_position({"rows": [["1", "2", "3"]]}, mkt_a)


class TestDominates:
    def test_orthant_componentwise(self, mkt_b):
        x = RandomVector.constant(3, [2, 3])
        y = RandomVector.constant(3, [1, 3])
        assert dominates(mkt_b, x, y)
        assert not dominates(mkt_b, y, x)

    def test_friction_single_scenario(self, mkt_a):
        zero = mkt_a.zero_position()
        assert dominates(mkt_a, RandomVector.constant(2, [-1, 1]), zero)
        assert not dominates(mkt_a, RandomVector.constant(2, [-1, 0]), zero)

    def test_shape_mismatch(self, mkt_a):
        with pytest.raises(ShapeMismatch):
            dominates(mkt_a, RandomVector.zero(3, 2), mkt_a.zero_position())

    def test_reflexive(self, mkt_a):
        x = RandomVector.of([["1/2", "-3"], ["0", "7"]])
        assert dominates(mkt_a, x, x)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(-3, 3), min_size=8, max_size=8),
           st.lists(st.integers(0, 2), min_size=8, max_size=8))
    def test_transitive_by_construction(self, base, steps):
        from svrisk.fixtures import market
        mkt = market("mkt-a")
        gens = mkt.cone.generators
        z = RandomVector.of([base[:2], base[2:4]])
        k1 = [[sum(c * g[j] for c, g in zip(steps[:2], gens)) for j in range(2)],
              [sum(c * g[j] for c, g in zip(steps[2:4], gens)) for j in range(2)]]
        k2 = [[sum(c * g[j] for c, g in zip(steps[4:6], gens)) for j in range(2)],
              [sum(c * g[j] for c, g in zip(steps[6:8], gens)) for j in range(2)]]
        y = z.add(RandomVector.of(k1))
        x = y.add(RandomVector.of(k2))
        assert dominates(mkt, y, z) and dominates(mkt, x, y)
        assert dominates(mkt, x, z)

    def test_mutual_dominance_forces_lineality(self):
        # half-plane cone: dominance both ways puts rows in K cap -K
        doc = {"d": 2, "probs": ["1"], "cone": {"halfspaces": [[1, 1]]},
               "subspace": {"coords": [0, 1]}}
        mkt = load_market(doc)
        x = RandomVector.constant(1, [2, -2])
        zero = mkt.zero_position()
        assert dominates(mkt, x, zero) and dominates(mkt, zero, x)
        for row in x.values:
            for a in mkt.cone.halfspaces:
                assert dot(a, row) == 0


class TestTranslateAndScale:
    def test_identity(self):
        x = RandomVector.of([["-1", "0"], ["0", "2"]])
        assert translate_and_scale(x, 1, PortfolioVector.of([0, 0])) == x

    def test_annihilation(self):
        x = RandomVector.of([["-1", "0"], ["0", "2"]])
        out = translate_and_scale(x, 0, PortfolioVector.of([0, 0]))
        assert out == RandomVector.zero(2, 2)

    def test_componentwise_arithmetic(self):
        x = RandomVector.of([["-1", "0"], ["0", "2"]])
        out = translate_and_scale(x, 2, PortfolioVector.of([1, 0]))
        assert out == RandomVector.of([["-1", "0"], ["1", "4"]])

    def test_exact_roundtrip(self):
        x = RandomVector.of([["1/3", "-5/7"], ["22/7", "0"]])
        u = PortfolioVector.of(["2/9", "-1/11"])
        back = translate_and_scale(
            translate_and_scale(x, 1, u), 1, PortfolioVector.of([-c for c in u.coords]))
        assert back == x

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            translate_and_scale(RandomVector.zero(2, 2), 1, PortfolioVector.of([1]))


class TestComponentwiseSup:
    def test_fixture(self):
        x = RandomVector.of([["-1", "3"], ["2", "0"]])
        assert componentwise_sup(x).coords == (Fraction(2), Fraction(3))

    def test_deterministic_position(self):
        x = RandomVector.constant(3, ["1/2", "-4"])
        assert componentwise_sup(x).coords == (Fraction(1, 2), Fraction(-4))

    def test_sup_dominates(self, mkt_a):
        x = RandomVector.of([["-1", "3"], ["2", "0"]])
        w = componentwise_sup(x)
        lifted = RandomVector.constant(2, w.coords)
        assert dominates(mkt_a, lifted, x)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                    min_size=4, max_size=4))
    def test_sup_dominates_property(self, vals):
        from svrisk.fixtures import market
        mkt = market("mkt-a")
        x = RandomVector.of([vals[:2], vals[2:]])
        lifted = RandomVector.constant(2, componentwise_sup(x).coords)
        assert dominates(mkt, lifted, x)
