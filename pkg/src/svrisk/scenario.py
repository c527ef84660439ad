"""Finite scenario spaces, multivariate positions, and market ingestion.

A market bundles the probability space, the solvency cone K, the eligible
subspace M, and the precomputed restriction K cap M.  Positions are n x d
matrices of exact rationals; the cone K induces the scenario-wise partial
order used everywhere else.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cones import ConeInM, EligibleSubspace, SolvencyCone, bidask_cone, restrict_to_subspace
from .errors import MalformedDocument, OrthantNotContained, ProbabilitySum, ShapeMismatch
from .rationals import Mat, Vec, fmt, rat, vadd, vec, vscale, zeros


@dataclass(frozen=True)
class ScenarioSpace:
    """Finite probability space; every scenario has positive probability."""

    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.probs):
            raise ProbabilitySum("every scenario probability must be > 0")
        if sum(self.probs) != 1:
            raise ProbabilitySum(f"probabilities sum to {sum(self.probs)}, not 1")

    @property
    def n(self) -> int:
        return len(self.probs)

    def prob_of(self, scenarios) -> Fraction:
        return sum((self.probs[i] for i in scenarios), Fraction(0))


@dataclass(frozen=True)
class RandomVector:
    """Payoff matrix: row i is the d-vector paid in scenario i."""

    values: Mat

    @classmethod
    def of(cls, rows) -> "RandomVector":
        return cls(tuple(vec(r) for r in rows))

    @classmethod
    def zero(cls, n: int, d: int) -> "RandomVector":
        return cls(tuple(zeros(d) for _ in range(n)))

    @classmethod
    def constant(cls, n: int, coords) -> "RandomVector":
        row = vec(coords)
        return cls(tuple(row for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def d(self) -> int:
        return len(self.values[0]) if self.values else 0

    def add(self, other: "RandomVector") -> "RandomVector":
        if (self.n, self.d) != (other.n, other.d):
            raise ShapeMismatch("positions have different shapes")
        return RandomVector(tuple(vadd(a, b) for a, b in zip(self.values, other.values)))

    def sub(self, other: "RandomVector") -> "RandomVector":
        return self.add(other.scale(-1))

    def scale(self, t) -> "RandomVector":
        t = rat(t)
        return RandomVector(tuple(vscale(t, r) for r in self.values))

    def add_constant(self, coords) -> "RandomVector":
        row = vec(coords)
        if len(row) != self.d:
            raise ShapeMismatch("constant vector has wrong dimension")
        return RandomVector(tuple(vadd(r, row) for r in self.values))

    def to_doc(self) -> dict:
        return {"rows": [[fmt(v) for v in row] for row in self.values]}


@dataclass(frozen=True)
class PortfolioVector:
    """Deterministic portfolio in asset quantities."""

    coords: Vec

    @classmethod
    def of(cls, coords) -> "PortfolioVector":
        return cls(vec(coords))

    @property
    def d(self) -> int:
        return len(self.coords)

    def to_doc(self) -> list[str]:
        return [fmt(v) for v in self.coords]


@dataclass(frozen=True)
class Market:
    """Scenario space + solvency cone + eligible subspace, validated."""

    space: ScenarioSpace
    d: int
    cone: SolvencyCone
    subspace: EligibleSubspace
    cone_in_m: ConeInM

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def m(self) -> int:
        return self.subspace.m

    def to_m(self, coords) -> Vec:
        u = self.subspace.to_m(coords)
        if u is None:
            raise ShapeMismatch(f"portfolio {coords} is not in the eligible subspace")
        return u

    def from_m(self, u) -> Vec:
        return self.subspace.from_m(vec(u))

    def zero_position(self) -> RandomVector:
        return RandomVector.zero(self.n, self.d)


def _parse_doc(source) -> dict:
    if isinstance(source, dict):
        return source
    if isinstance(source, (str, bytes)):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"market document does not parse: {exc}") from exc
        if not isinstance(doc, dict):
            raise MalformedDocument("market document must be an object")
        return doc
    raise MalformedDocument(f"unsupported document source: {type(source)!r}")


def load_market(source) -> Market:
    """Validate and assemble a market from its structured-text document.

    See the package README for the schema; rationals are 'p/q' strings or
    integers.  Raises ProbabilitySum, OrthantNotContained, EmptyInterior, or
    MalformedDocument as appropriate.
    """
    doc = _parse_doc(source)
    try:
        d = int(doc["d"])
        probs = tuple(rat(p) for p in doc["probs"])
        cone_doc = doc["cone"]
        sub_doc = doc["subspace"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"market document missing or bad field: {exc}") from exc

    space = ScenarioSpace(probs)

    if "halfspaces" in cone_doc:
        try:
            rows = [vec(r) for r in cone_doc["halfspaces"]]
        except (TypeError, ValueError) as exc:
            raise MalformedDocument(f"bad cone halfspaces: {exc}") from exc
        if any(len(r) != d for r in rows):
            raise MalformedDocument("cone halfspace rows must have length d")
        cone = SolvencyCone.from_halfspaces(rows)
    elif "bidask" in cone_doc:
        cone = bidask_cone(cone_doc["bidask"])
        if cone.dim != d:
            raise MalformedDocument("bidask matrix size differs from d")
    else:
        raise MalformedDocument("cone document needs 'halfspaces' or 'bidask'")

    if not cone.contains_orthant():
        raise OrthantNotContained("the nonnegative orthant must lie inside K")

    if "coords" in sub_doc:
        idx = list(sub_doc["coords"])
        if any(not isinstance(i, int) or i < 0 or i >= d for i in idx):
            raise MalformedDocument("subspace coords must be indices below d")
        sub = EligibleSubspace.from_coords(d, idx)
    elif "basis" in sub_doc:
        try:
            sub = EligibleSubspace.from_basis(sub_doc["basis"])
        except (TypeError, ValueError) as exc:
            raise MalformedDocument(f"bad subspace basis: {exc}") from exc
        if sub.d != d:
            raise MalformedDocument("subspace basis vectors must have length d")
    else:
        raise MalformedDocument("subspace document needs 'coords' or 'basis'")

    cone_in_m = restrict_to_subspace(cone, sub)
    return Market(space, d, cone, sub, cone_in_m)


def load_position(source, market: Market | None = None) -> RandomVector:
    """Parse a position document {'rows': [[...]]}; validate shape if asked."""
    doc = _parse_doc(source)
    try:
        x = RandomVector.of(doc["rows"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad position document: {exc}") from exc
    if market is not None and (x.n, x.d) != (market.n, market.d):
        raise ShapeMismatch(
            f"position is {x.n}x{x.d}, market expects {market.n}x{market.d}")
    return x


def dominates(market: Market, x: RandomVector, y: RandomVector) -> bool:
    """x >= y in the K-induced order: every row of x - y lies in K."""
    if (x.n, x.d) != (market.n, market.d) or (y.n, y.d) != (market.n, market.d):
        raise ShapeMismatch("positions do not match the market shape")
    diff = x.sub(y)
    return all(market.cone.contains_point(row) for row in diff.values)


def translate_and_scale(x: RandomVector, t, u: PortfolioVector) -> RandomVector:
    """t*x with the deterministic portfolio u added in every scenario."""
    if u.d != x.d:
        raise ShapeMismatch("portfolio dimension differs from position")
    return x.scale(t).add_constant(u.coords)


def componentwise_sup(x: RandomVector) -> PortfolioVector:
    """Scenario-wise supremum; K-dominates x because the orthant sits in K."""
    coords = tuple(max(row[j] for row in x.values) for j in range(x.d))
    return PortfolioVector(coords)
