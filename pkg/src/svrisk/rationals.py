"""Exact rational vectors and matrices built on fractions.Fraction.

Every quantity in the package is a Fraction; floats never enter the kernel.
Vectors are tuples of Fractions, matrices tuples of row tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact Fraction.

    Floats are rejected: the kernel is exact by contract.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


def fmt(value: Fraction) -> str:
    """Canonical string form, 'p/q' or plain integer."""
    return str(value)


def vec(items) -> Vec:
    return tuple(rat(v) for v in items)


def mat(rows) -> Mat:
    return tuple(vec(r) for r in rows)


def dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(t: Fraction, a: Vec) -> Vec:
    return tuple(t * x for x in a)


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def scale_to_coprime(a: Vec) -> Vec:
    """Scale by a positive rational so entries are coprime integers.

    Direction (sign pattern) is preserved; the zero vector maps to itself.
    """
    if is_zero(a):
        return a
    denom_lcm = math.lcm(*(x.denominator for x in a))
    ints = [x.numerator * (denom_lcm // x.denominator) for x in a]
    g = math.gcd(*(abs(v) for v in ints))
    return tuple(Fraction(v // g) for v in ints)


def solve_linear(a: Mat, b: Vec) -> Vec | None:
    """Solve A x = b exactly; None if inconsistent.

    When the system is underdetermined, free variables are set to zero.
    """
    rows = [list(r) + [bv] for r, bv in zip(a, b)]
    ncols = len(a[0]) if a else 0
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    x = [ZERO] * ncols
    for pr, pc in pivots:
        x[pc] = rows[pr][ncols]
    return tuple(x)


def null_space(a: Mat) -> Mat:
    """Exact basis of {x : A x = 0}."""
    if not a:
        return ()
    ncols = len(a[0])
    rows = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for pr, pc in enumerate(pivots):
            v[pc] = -rows[pr][fc]
        basis.append(tuple(v))
    return tuple(basis)


def rank(a: Mat) -> int:
    if not a:
        return 0
    return len(a[0]) - len(null_space(a))
