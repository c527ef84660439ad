"""Exact polyhedral kernel in the coordinates of the eligible subspace.

Sets handled here are finite unions of closed convex polyhedra in R^m, each
absorbing a fixed full-dimensional recession cone.  All arithmetic is exact
rational.  Three primitives carry the module:

* Fourier-Motzkin elimination (projections, feasibility, interior tests),
* the double description method (H-rep <-> V-rep, dual cones),
* polyhedral subtraction (containment and equality of unions).

Strict inequalities are supported internally (interior and complement
computations); canonical upper sets expose weak halfspaces only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NegativeScale, StrictUnsupported
from .rationals import (
    ONE,
    ZERO,
    Vec,
    dot,
    fmt,
    is_zero,
    rat,
    scale_to_coprime,
    unit,
    vadd,
    vscale,
    vsub,
    zeros,
)

# ---------------------------------------------------------------------------
# halfspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Halfspace:
    """The set {x : normal . x >= offset}, or > when strict."""

    normal: Vec
    offset: Fraction = ZERO
    strict: bool = False

    @classmethod
    def make(cls, normal, offset=0, strict: bool = False) -> "Halfspace":
        """Build a halfspace normalized to coprime integer coefficients."""
        n = tuple(rat(v) for v in normal)
        b = rat(offset)
        row = scale_to_coprime(n + (b,))
        return cls(row[:-1], row[-1], strict)

    def holds_at(self, point: Vec) -> bool:
        v = dot(self.normal, point)
        return v > self.offset if self.strict else v >= self.offset

    def complement(self) -> "Halfspace":
        """The complementary halfspace (weak <-> strict, normal flipped)."""
        return Halfspace(vscale(Fraction(-1), self.normal), -self.offset,
                         not self.strict)

    def strictified(self) -> "Halfspace":
        return self if self.strict else Halfspace(self.normal, self.offset, True)

    def translated(self, w: Vec) -> "Halfspace":
        # {x + w : n.x >= b} = {y : n.y >= b + n.w}
        return Halfspace.make(self.normal, self.offset + dot(self.normal, w),
                              self.strict)

    def sort_key(self):
        return (self.normal, self.offset, self.strict)

    def as_row(self) -> list[str]:
        return [fmt(v) for v in self.normal] + [fmt(self.offset)]

    def __str__(self):
        op = ">" if self.strict else ">="
        terms = " + ".join(f"{fmt(c)}*u{i}" for i, c in enumerate(self.normal))
        return f"{terms} {op} {fmt(self.offset)}"


def hs(coeffs, offset=0, strict: bool = False) -> Halfspace:
    """Shorthand constructor used heavily in tests and fixtures."""
    return Halfspace.make(coeffs, offset, strict)


_TRUE = "true"
_FALSE = "false"


def _triviality(h: Halfspace):
    """Classify a zero-normal row as trivially true/false, else None."""
    if not is_zero(h.normal):
        return None
    if h.strict:
        return _TRUE if h.offset < 0 else _FALSE
    return _TRUE if h.offset <= 0 else _FALSE


def _prune_rows(rows) -> list[Halfspace] | None:
    """Drop trivial and dominated rows; None when trivially infeasible.

    Rows sharing a normal keep only the tightest offset (ties: strict wins).
    """
    by_normal: dict[Vec, Halfspace] = {}
    for h in rows:
        t = _triviality(h)
        if t == _TRUE:
            continue
        if t == _FALSE:
            return None
        cur = by_normal.get(h.normal)
        if cur is None or (h.offset, h.strict) > (cur.offset, cur.strict):
            by_normal[h.normal] = h
    return sorted(by_normal.values(), key=Halfspace.sort_key)


def _eliminate_var(rows: list[Halfspace], j: int) -> list[Halfspace] | None:
    """One Fourier-Motzkin step on coordinate j (width preserved)."""
    pos, neg, zero = [], [], []
    for h in rows:
        c = h.normal[j]
        (pos if c > 0 else neg if c < 0 else zero).append(h)
    out = list(zero)
    for p in pos:
        for n in neg:
            cp, cn = -n.normal[j], p.normal[j]
            normal = vadd(vscale(cp, p.normal), vscale(cn, n.normal))
            offset = cp * p.offset + cn * n.offset
            out.append(Halfspace.make(normal, offset, p.strict or n.strict))
    return _prune_rows(out)


def feasible(rows, dim: int) -> bool:
    """Exact feasibility of a mixed weak/strict system by elimination."""
    cur = _prune_rows(rows)
    if cur is None:
        return False
    for j in range(dim):
        cur = _eliminate_var(cur, j)
        if cur is None:
            return False
    return True


def feasible_point(rows, dim: int) -> Vec | None:
    """An explicit rational point satisfying the system, or None.

    Found by eliminating the last coordinate, solving the projection
    recursively, then back-substituting a value inside the induced interval.
    """
    cur = _prune_rows(rows)
    if cur is None:
        return None
    if dim == 0:
        return ()
    proj = _eliminate_var(cur, dim - 1)
    if proj is None:
        return None
    stripped = [Halfspace.make(h.normal[: dim - 1], h.offset, h.strict)
                for h in proj]
    base = feasible_point(stripped, dim - 1)
    if base is None:
        return None
    lower = upper = None
    lower_strict = upper_strict = False
    for h in cur:
        c = h.normal[dim - 1]
        if c == 0:
            continue
        bound = (h.offset - dot(h.normal[: dim - 1], base)) / c
        if c > 0:
            if lower is None or (bound, h.strict) > (lower, lower_strict):
                lower, lower_strict = bound, h.strict
        else:
            if upper is None or (bound, not h.strict) < (upper, not upper_strict):
                upper, upper_strict = bound, h.strict
    if lower is None and upper is None:
        val = ZERO
    elif lower is None:
        val = upper - 1 if upper_strict else upper
    elif upper is None:
        val = lower + 1 if lower_strict else lower
    elif lower == upper:
        val = lower  # compatible only when both weak; elimination vouched
    else:
        val = (lower + upper) / 2
    return base + (val,)


# ---------------------------------------------------------------------------
# polyhedra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polyhedron:
    """H-representation with an optional cached V-representation."""

    dim: int
    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Vec, ...] | None = None
    rays: tuple[Vec, ...] | None = None

    def contains_point(self, point: Vec) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatch(f"point has length {len(point)}, dim {self.dim}")
        return all(h.holds_at(point) for h in self.halfspaces)

    def has_strict(self) -> bool:
        return any(h.strict for h in self.halfspaces)

    def strictified_rows(self) -> list[Halfspace]:
        return [h.strictified() for h in self.halfspaces]

    def is_feasible(self) -> bool:
        return feasible(self.halfspaces, self.dim)

    def full_dimensional(self) -> bool:
        """Nonempty interior, i.e. the all-strict system is feasible."""
        return feasible(self.strictified_rows(), self.dim)

    def translated(self, w: Vec) -> "Polyhedron":
        verts = tuple(vadd(v, w) for v in self.vertices) if self.vertices is not None else None
        return Polyhedron(self.dim, tuple(h.translated(w) for h in self.halfspaces),
                          verts, self.rays)

    def scaled(self, t: Fraction) -> "Polyhedron":
        if t <= 0:
            raise NegativeScale("polyhedron scaling requires t > 0")
        rows = tuple(Halfspace.make(h.normal, t * h.offset, h.strict)
                     for h in self.halfspaces)
        verts = tuple(vscale(t, v) for v in self.vertices) if self.vertices is not None else None
        return Polyhedron(self.dim, rows, verts, self.rays)

    def sort_key(self):
        return tuple(h.sort_key() for h in self.halfspaces)


def polyhedron(dim: int, rows) -> Polyhedron:
    return Polyhedron(dim, tuple(rows))


def empty_polyhedron(dim: int) -> Polyhedron:
    return Polyhedron(dim, (Halfspace(zeros(dim), ONE),), (), ())


def canonical_piece(p: Polyhedron) -> Polyhedron | None:
    """Irredundant sorted H-rep of the same set; None when empty."""
    rows = _prune_rows(p.halfspaces)
    if rows is None or not feasible(rows, p.dim):
        return None
    kept = list(rows)
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1:]
        if not feasible(trial + [kept[i].complement()], p.dim):
            kept = trial
        else:
            i += 1
    return Polyhedron(p.dim, tuple(sorted(kept, key=Halfspace.sort_key)))


def eliminate(p: Polyhedron, drop) -> Polyhedron:
    """Exact projection discarding the coordinates in ``drop``.

    Strictness propagates through row combinations (strict o weak -> strict).
    An infeasible input projects to the canonical empty polyhedron.
    """
    drop = sorted(set(drop))
    if any(j < 0 or j >= p.dim for j in drop):
        raise DimensionMismatch(f"drop indices {drop} out of range for dim {p.dim}")
    rows = _prune_rows(p.halfspaces)
    remaining = list(drop)
    while rows is not None and remaining:
        # cheapest column first keeps the intermediate row count down
        remaining.sort(key=lambda j: (
            sum(1 for h in rows if h.normal[j] > 0)
            * sum(1 for h in rows if h.normal[j] < 0), j))
        j = remaining.pop(0)
        rows = _eliminate_var(rows, j)
    new_dim = p.dim - len(drop)
    if rows is None:
        return empty_polyhedron(new_dim)
    keep = [i for i in range(p.dim) if i not in drop]
    out = [Halfspace.make(tuple(h.normal[i] for i in keep), h.offset, h.strict)
           for h in rows]
    result = canonical_piece(Polyhedron(new_dim, tuple(out)))
    return result if result is not None else empty_polyhedron(new_dim)


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------


def cone_vrep(rows, dim: int) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Generators of {x : a.x >= 0 for each row a}.

    Returns (lineality basis, extreme rays); the cone is span(lineality) +
    cone(rays).  Incremental double description with the combinatorial
    adjacency test; exact throughout.
    """
    lin: list[Vec] = [unit(dim, i) for i in range(dim)]
    rays: list[Vec] = []
    active: list[set[int]] = []
    processed: list[Vec] = []

    def recompute_active():
        active.clear()
        for r in rays:
            active.append({k for k, row in enumerate(processed) if dot(row, r) == 0})

    seen = set()
    for a in rows:
        a = scale_to_coprime(tuple(rat(v) for v in a))
        if is_zero(a) or a in seen:
            continue
        seen.add(a)
        cut = next((l for l in lin if dot(a, l) != 0), None)
        if cut is not None:
            if dot(a, cut) < 0:
                cut = vscale(Fraction(-1), cut)
            lin = [scale_to_coprime(vsub(l, vscale(dot(a, l) / dot(a, cut), cut)))
                   for l in lin if l is not cut and not is_zero(
                       vsub(l, vscale(dot(a, l) / dot(a, cut), cut)))]
            # keep only independent remnants: remnants are l - proj, for l != cut
            rays = [scale_to_coprime(vsub(r, vscale(dot(a, r) / dot(a, cut), cut)))
                    for r in rays]
            rays = [r for r in rays if not is_zero(r)]
            rays.append(scale_to_coprime(cut))
            processed.append(a)
            recompute_active()
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            processed.append(a)
            recompute_active()
            continue
        new_rays = [rays[i] for i in pos + zero]
        for ip in pos:
            for im in neg:
                z = active[ip] & active[im]
                dominated = any(
                    k not in (ip, im) and z <= active[k]
                    for k in range(len(rays)))
                if dominated:
                    continue
                w = scale_to_coprime(vadd(vscale(vals[ip], rays[im]),
                                          vscale(-vals[im], rays[ip])))
                if not is_zero(w) and w not in new_rays:
                    new_rays.append(w)
        rays = new_rays
        processed.append(a)
        recompute_active()
    lin = [l for l in lin if not is_zero(l)]
    return tuple(sorted(lin)), tuple(sorted(rays))


def cone_generators(rows, dim: int) -> tuple[Vec, ...]:
    """Spanning rays of {x : a.x >= 0}; lineality emitted as +/- pairs."""
    lin, rays = cone_vrep(rows, dim)
    gens = set(rays)
    for l in lin:
        gens.add(l)
        gens.add(scale_to_coprime(vscale(Fraction(-1), l)))
    return tuple(sorted(gens))


def cone_hrep(generators, dim: int) -> tuple[Vec, ...]:
    """Minimal halfspace rows a (a.x >= 0) of the conic hull of generators.

    Uses bipolarity: facet normals of cone(G) are the generators of the dual
    cone {y : g.y >= 0 for g in G}.
    """
    gens = [tuple(rat(v) for v in g) for g in generators]
    dual_rows = cone_generators(gens, dim)
    piece = canonical_piece(Polyhedron(dim, tuple(hs(a) for a in dual_rows)))
    if piece is None:  # only when the hull is empty, which needs no rows
        return ()
    return tuple(h.normal for h in piece.halfspaces)


def convert_rep(p: Polyhedron) -> Polyhedron:
    """Attach an exact V-representation (vertices + rays) to ``p``.

    The polyhedron is homogenized to the cone {(x, t) : Ax >= bt, t >= 0};
    its generators with positive last coordinate scale to vertices, the rest
    are recession rays (lineality contributes a +/- pair).
    """
    if p.has_strict():
        raise StrictUnsupported("V-representation requires weak halfspaces only")
    rows = [h.normal + (-h.offset,) for h in p.halfspaces]
    rows.append(unit(p.dim + 1, p.dim))
    lin, rays = cone_vrep(rows, p.dim + 1)
    verts = set()
    rec = set()
    for r in rays:
        if r[p.dim] > 0:
            verts.add(tuple(v / r[p.dim] for v in r[: p.dim]))
        else:
            xpart = r[: p.dim]
            if not is_zero(xpart):
                rec.add(scale_to_coprime(xpart))
    for l in lin:
        xpart = l[: p.dim]
        if not is_zero(xpart):
            rec.add(scale_to_coprime(xpart))
            rec.add(scale_to_coprime(vscale(Fraction(-1), xpart)))
    return Polyhedron(p.dim, p.halfspaces, tuple(sorted(verts)), tuple(sorted(rec)))


def hrep_from_vrep(dim: int, vertices, rays) -> Polyhedron:
    """Minimal weak H-rep of conv(vertices) + cone(rays)."""
    verts = [tuple(rat(v) for v in p) for p in vertices]
    rec = [tuple(rat(v) for v in r) for r in rays]
    if not verts:
        return empty_polyhedron(dim)
    gens = [v + (ONE,) for v in verts] + [r + (ZERO,) for r in rec]
    facets = cone_generators(gens, dim + 1)
    rows = []
    for f in facets:
        normal, c = f[:dim], f[dim]
        if is_zero(normal):
            continue  # the t >= 0 facet carries no x-constraint
        rows.append(Halfspace.make(normal, -c))
    piece = canonical_piece(Polyhedron(dim, tuple(rows)))
    if piece is None:
        raise AssertionError("V-rep with a vertex cannot be empty")
    return Polyhedron(dim, piece.halfspaces,
                      tuple(sorted(set(verts))), tuple(sorted(set(rec))))


# ---------------------------------------------------------------------------
# recession cones and upper sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConeInM:
    """The cone K intersected with M, written in M-coordinates.

    ``halfspaces`` are rows a with a.u >= 0; ``generators`` span the cone.
    Shared as the recession cone of every upper set of a market.
    """

    dim: int
    halfspaces: tuple[Vec, ...]
    generators: tuple[Vec, ...]

    @classmethod
    def from_rows(cls, dim: int, rows) -> "ConeInM":
        piece = canonical_piece(Polyhedron(dim, tuple(hs(r) for r in rows)))
        clean = tuple(h.normal for h in piece.halfspaces) if piece else ()
        return cls(dim, clean, cone_generators(clean, dim))

    def contains_point(self, u: Vec) -> bool:
        return all(dot(a, u) >= 0 for a in self.halfspaces)

    def neg_interior(self) -> tuple[Halfspace, ...]:
        """Strict system describing -int(K cap M) inside M."""
        return tuple(Halfspace.make(vscale(Fraction(-1), a), 0, True)
                     for a in self.halfspaces)

    def interior_nonempty(self) -> bool:
        return feasible([hs(a, 0, True) for a in self.halfspaces], self.dim)

    def interior_point(self) -> Vec | None:
        return feasible_point([hs(a, 0, True) for a in self.halfspaces], self.dim)

    def as_polyhedron(self) -> Polyhedron:
        return Polyhedron(self.dim, tuple(hs(a) for a in self.halfspaces))

    def key(self):
        return (self.dim, self.halfspaces, self.generators)


@dataclass(frozen=True)
class UpperSet:
    """Finite union of closed polyhedral pieces absorbing a recession cone.

    The empty union denotes the empty set.  ``canonical`` marks the output of
    :func:`canonicalize`; operations canonicalize lazily when needed.
    """

    dim: int
    pieces: tuple[Polyhedron, ...]
    recession: ConeInM
    canonical: bool = False

    def is_empty(self) -> bool:
        return not self.pieces

    def contains_point(self, u: Vec) -> bool:
        return any(p.contains_point(u) for p in self.pieces)

    def to_doc(self, with_vrep: bool = True) -> dict:
        pieces = []
        for p in self.pieces:
            entry = {"halfspaces": [h.as_row() for h in p.halfspaces]}
            if with_vrep:
                q = convert_rep(p)
                entry["vertices"] = [[fmt(c) for c in v] for v in q.vertices]
                entry["rays"] = [[fmt(c) for c in r] for r in q.rays]
            pieces.append(entry)
        return {"pieces": pieces}


def upper_set(dim: int, pieces, recession: ConeInM) -> UpperSet:
    return canonicalize(UpperSet(dim, tuple(pieces), recession))


def empty_upper_set(recession: ConeInM) -> UpperSet:
    return UpperSet(recession.dim, (), recession, canonical=True)


def full_upper_set(recession: ConeInM) -> UpperSet:
    return upper_set(recession.dim, (Polyhedron(recession.dim, ()),), recession)


def recession_upper_set(recession: ConeInM) -> UpperSet:
    return upper_set(recession.dim, (recession.as_polyhedron(),), recession)


def _absorbs(p: Polyhedron, recession: ConeInM) -> bool:
    return all(dot(h.normal, g) >= 0
               for h in p.halfspaces for g in recession.generators)


def _absorb(p: Polyhedron, recession: ConeInM) -> Polyhedron:
    """Minkowski-add the recession cone via the V-representation."""
    q = convert_rep(p)
    rays = set(q.rays) | set(recession.generators)
    return hrep_from_vrep(p.dim, q.vertices, sorted(rays))


def _subtract(piece: Polyhedron, others) -> list[Polyhedron]:
    """Pieces (with strict rows) covering ``piece`` minus the union."""
    residuals = [piece]
    for q in others:
        nxt: list[Polyhedron] = []
        for r in residuals:
            rows = list(r.halfspaces)
            for i, h in enumerate(q.halfspaces):
                cand = rows + [h.complement()] + [q.halfspaces[k] for k in range(i)]
                if feasible(cand, r.dim):
                    nxt.append(Polyhedron(r.dim, tuple(cand)))
        residuals = nxt
        if not residuals:
            break
    return residuals


def covered_by_union(piece: Polyhedron, others) -> bool:
    """piece subset of union(others), up to sets with empty interior.

    Valid for pieces equal to the closure of their interior, which holds for
    every canonical piece because it absorbs a full-dimensional cone.
    """
    return all(not r.full_dimensional() for r in _subtract(piece, others))


def uncovered_point(piece: Polyhedron, others) -> Vec | None:
    """A rational point of ``piece`` outside union(others), if one exists."""
    for r in _subtract(piece, others):
        if r.full_dimensional():
            return feasible_point(r.strictified_rows(), r.dim)
    return None


def canonicalize(a: UpperSet) -> UpperSet:
    """Deterministic canonical form: irredundant absorbing sorted pieces."""
    if a.canonical:
        return a
    pieces = []
    for p in a.pieces:
        c = canonical_piece(p)
        if c is None:
            continue
        if not _absorbs(c, a.recession):
            c = canonical_piece(_absorb(c, a.recession))
            if c is None:
                continue
        pieces.append(c)
    # dedupe identical pieces, then drop pieces covered by the others
    uniq: dict[tuple, Polyhedron] = {}
    for p in pieces:
        uniq.setdefault(p.sort_key(), p)
    pieces = sorted(uniq.values(), key=Polyhedron.sort_key)
    i = 0
    while i < len(pieces):
        rest = pieces[:i] + pieces[i + 1:]
        if rest and covered_by_union(pieces[i], rest):
            pieces = rest
        else:
            i += 1
    return UpperSet(a.dim, tuple(pieces), a.recession, canonical=True)


def _check_compatible(a: UpperSet, b: UpperSet):
    if a.dim != b.dim:
        raise DimensionMismatch(f"upper sets of dim {a.dim} and {b.dim}")
    if a.recession.key() != b.recession.key():
        raise DimensionMismatch("upper sets with different recession cones")


def translate_set(a: UpperSet, w: Vec) -> UpperSet:
    """The set {u + w : u in a}; canonical form is preserved."""
    pieces = tuple(sorted((p.translated(w) for p in a.pieces),
                          key=Polyhedron.sort_key))
    return UpperSet(a.dim, pieces, a.recession, canonical=a.canonical)


def intersect_sets(a: UpperSet, b: UpperSet) -> UpperSet:
    _check_compatible(a, b)
    pieces = [Polyhedron(a.dim, p.halfspaces + q.halfspaces)
              for p in a.pieces for q in b.pieces]
    return upper_set(a.dim, pieces, a.recession)


def union_sets(a: UpperSet, b: UpperSet) -> UpperSet:
    _check_compatible(a, b)
    return upper_set(a.dim, a.pieces + b.pieces, a.recession)


def minkowski_sum(a: UpperSet, b: UpperSet) -> UpperSet:
    _check_compatible(a, b)
    pieces = []
    for p in a.pieces:
        vp = convert_rep(p)
        for q in b.pieces:
            vq = convert_rep(q)
            verts = {vadd(x, y) for x in vp.vertices for y in vq.vertices}
            rays = set(vp.rays) | set(vq.rays)
            pieces.append(hrep_from_vrep(a.dim, sorted(verts), sorted(rays)))
    return upper_set(a.dim, pieces, a.recession)


def scale_set(t, a: UpperSet) -> UpperSet:
    """t * a for t > 0; by convention 0 * D is the recession cone itself."""
    t = rat(t)
    if t < 0:
        raise NegativeScale(f"cannot scale an upper set by {t}")
    if t == 0:
        return recession_upper_set(a.recession)
    if t == 1:
        return canonicalize(a)
    return upper_set(a.dim, (p.scaled(t) for p in a.pieces), a.recession)


def combine(op: str, a: UpperSet, b) -> UpperSet:
    """String-dispatched set algebra; the named functions below do the work."""
    if op == "intersect":
        return intersect_sets(a, b)
    if op == "union":
        return union_sets(a, b)
    if op == "minkowski_add":
        return minkowski_sum(a, b)
    if op == "scale":
        return scale_set(b, a)
    raise ValueError(f"unknown combine op: {op}")


def is_subset(b: UpperSet, a: UpperSet) -> bool:
    """b subset of a, decided by exact polyhedral subtraction."""
    _check_compatible(a, b)
    b = canonicalize(b)
    a = canonicalize(a)
    return all(covered_by_union(p, a.pieces) for p in b.pieces)


def sets_equal(a: UpperSet, b: UpperSet) -> bool:
    return is_subset(a, b) and is_subset(b, a)


def separating_point(b: UpperSet, a: UpperSet) -> Vec | None:
    """A point of b outside a; None when b is a subset of a."""
    _check_compatible(a, b)
    b = canonicalize(b)
    a = canonicalize(a)
    for p in b.pieces:
        w = uncovered_point(p, a.pieces)
        if w is not None:
            return w
    return None


def contains(query: str, a: UpperSet, b) -> bool:
    """String-dispatched containment: point membership, subset, or equality."""
    if query == "point":
        return canonicalize(a).contains_point(tuple(rat(v) for v in b))
    if query == "subset":
        return is_subset(b, a)
    if query == "equal":
        return sets_equal(a, b)
    raise ValueError(f"unknown containment query: {query}")


def upper_set_from_doc(doc: dict, recession: ConeInM) -> UpperSet:
    """Rebuild an upper set from its serialized document."""
    pieces = []
    for entry in doc["pieces"]:
        if "halfspaces" in entry and entry["halfspaces"]:
            rows = [hs(row[:-1], row[-1]) for row in entry["halfspaces"]]
            pieces.append(Polyhedron(recession.dim, tuple(rows)))
        else:
            pieces.append(hrep_from_vrep(recession.dim,
                                         entry.get("vertices", ()),
                                         entry.get("rays", ())))
    return upper_set(recession.dim, pieces, recession)
