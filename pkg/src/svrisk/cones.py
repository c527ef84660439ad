"""Solvency-cone algebra: duals, eligible subspaces, restriction to M.

The solvency cone K lives in R^d and contains the nonnegative orthant; the
eligible subspace M selects which deterministic portfolios count as risk
compensation.  K need not be pointed: lineality is carried through all
representations as +/- generator pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyInterior, InvalidSpread
from .geometry import ConeInM, canonical_piece, cone_generators, cone_hrep, hs, Polyhedron
from .rationals import (
    Mat,
    Vec,
    dot,
    null_space,
    rank,
    rat,
    scale_to_coprime,
    solve_linear,
    unit,
    vec,
    zeros,
)


@dataclass(frozen=True)
class Cone:
    """A plain polyhedral cone given both ways (used for duals)."""

    dim: int
    halfspaces: tuple[Vec, ...]
    generators: tuple[Vec, ...]

    def contains_point(self, x: Vec) -> bool:
        return all(dot(a, x) >= 0 for a in self.halfspaces)


@dataclass(frozen=True)
class SolvencyCone:
    """Closed convex cone of debt-free liquidatable positions.

    ``dual_generators`` span the positive dual cone; by bipolarity they are
    exactly the halfspace normals of K, and the generators of K are the
    halfspace normals of the dual.
    """

    dim: int
    halfspaces: tuple[Vec, ...]
    generators: tuple[Vec, ...]
    dual_generators: tuple[Vec, ...]

    @classmethod
    def from_halfspaces(cls, rows) -> "SolvencyCone":
        normals = tuple(scale_to_coprime(vec(r)) for r in rows)
        dim = len(normals[0]) if normals else 0
        piece = canonical_piece(Polyhedron(dim, tuple(hs(a) for a in normals)))
        clean = tuple(h.normal for h in piece.halfspaces) if piece else ()
        return cls(dim, clean, cone_generators(clean, dim), clean)

    @classmethod
    def from_generators(cls, gens, dim: int) -> "SolvencyCone":
        rows = cone_hrep(gens, dim)
        return cls.from_halfspaces(rows) if rows else cls(dim, (), cone_generators((), dim), ())

    def contains_point(self, x: Vec) -> bool:
        return all(dot(a, x) >= 0 for a in self.halfspaces)

    def contains_orthant(self) -> bool:
        return all(self.contains_point(unit(self.dim, i)) for i in range(self.dim))


def dual_cone(k: SolvencyCone) -> Cone:
    """Positive dual {y : y.x >= 0 for all x in K}.

    Generators and halfspaces swap roles with those of K.
    """
    return Cone(k.dim, k.generators, k.dual_generators)


def bidask_cone(spread) -> SolvencyCone:
    """Solvency cone of a bid-ask spread matrix pi (pi_ij >= 1, pi_ii = 1).

    Generated by the unit vectors together with pi_ij e_i - e_j: exchanging
    one unit of asset j costs pi_ij units of asset i.
    """
    pi = [[rat(v) for v in row] for row in spread]
    d = len(pi)
    if any(len(row) != d for row in pi):
        raise InvalidSpread("spread matrix must be square")
    for i in range(d):
        if pi[i][i] != 1:
            raise InvalidSpread(f"pi[{i}][{i}] must be 1, got {pi[i][i]}")
        for j in range(d):
            if pi[i][j] < 1:
                raise InvalidSpread(f"pi[{i}][{j}] = {pi[i][j]} < 1")
    gens = [unit(d, i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            if i != j:
                gens.append(tuple(pi[i][j] * a - b
                                  for a, b in zip(unit(d, i), unit(d, j))))
    return SolvencyCone.from_generators(gens, d)


@dataclass(frozen=True)
class EligibleSubspace:
    """Linear subspace M of eligible deterministic portfolios.

    ``basis`` rows are linearly independent d-vectors; M-coordinates are the
    coefficients with respect to this basis.
    """

    basis: Mat

    def __post_init__(self):
        if not self.basis:
            raise ValueError("subspace needs at least one basis vector")
        if rank(self.basis) != len(self.basis):
            raise ValueError("subspace basis is linearly dependent")

    @classmethod
    def from_coords(cls, d: int, coords) -> "EligibleSubspace":
        return cls(tuple(unit(d, int(i)) for i in coords))

    @classmethod
    def from_basis(cls, rows) -> "EligibleSubspace":
        return cls(tuple(vec(r) for r in rows))

    @property
    def d(self) -> int:
        return len(self.basis[0])

    @property
    def m(self) -> int:
        return len(self.basis)

    def from_m(self, u: Vec) -> Vec:
        """Map M-coordinates to the ambient d-vector."""
        out = list(zeros(self.d))
        for c, b in zip(u, self.basis):
            for j in range(self.d):
                out[j] += c * b[j]
        return tuple(out)

    def to_m(self, x) -> Vec | None:
        """M-coordinates of an ambient vector; None when x is outside M."""
        x = vec(x)
        cols = tuple(tuple(self.basis[i][j] for i in range(self.m))
                     for j in range(self.d))
        return solve_linear(cols, x)

    def contains(self, x) -> bool:
        return self.to_m(x) is not None

    def orthogonal_complement(self) -> Mat:
        """Exact basis of M-perp, from the null space of the basis matrix."""
        return null_space(self.basis)

    def is_full(self) -> bool:
        return self.m == self.d


def restrict_to_subspace(k: SolvencyCone, sub: EligibleSubspace) -> ConeInM:
    """K intersected with M, written in M-coordinates.

    Raises EmptyInterior when the standing assumption int(K cap M) != empty
    fails; the test is exact strict-inequality feasibility, no perturbation.
    """
    rows = []
    for a in k.halfspaces:
        row = tuple(dot(a, b) for b in sub.basis)
        rows.append(row)
    cone = ConeInM.from_rows(sub.m, rows)
    if not cone.interior_nonempty():
        raise EmptyInterior("int(K cap M) is empty inside M")
    return cone
