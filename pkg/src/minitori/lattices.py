"""Lattices: Gram matrices, duals, torus spectra and exhaustive norm enumeration.

Enumeration of integer vectors with a prescribed quadratic-form value uses the
Fincke-Pohst recursion on an exact LDL^t completion of squares, so the
completeness claim is certified whenever the form is rational.  Floating
inputs are lifted exactly to rationals (binary floats are rationals) and the
target is inflated to an interval.

Vectors are reported one representative per +/- pair, the representative
having a positive leading nonzero entry, sorted lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence, Union

from .scalars import Rat
from .symmetric import SymMatrix, inverse, is_positive_definite

FOUR_PI_SQ = 4 * math.pi * math.pi

DEFAULT_BOX_BOUND = 10**6


class EnumerationIncomplete(RuntimeError):
    """Raised when the coordinate cap was hit before the ellipsoid bound."""


@dataclass(frozen=True)
class Lattice:
    """Rank-n lattice given by a generator matrix of row vectors."""

    generator: tuple[tuple[Fraction, ...], ...]
    gram: SymMatrix

    @classmethod
    def from_generator(cls, rows: Sequence[Sequence[Rat]]) -> "Lattice":
        gen = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(gen)
        gram = SymMatrix([[sum(gen[i][k] * gen[j][k] for k in range(n)) for j in range(n)]
                          for i in range(n)])
        if is_positive_definite(gram) is not True:
            raise ValueError("generator rows are linearly dependent")
        return cls(gen, gram)

    @property
    def n(self) -> int:
        return self.gram.n


@dataclass(frozen=True)
class DualLattice:
    """Dual lattice: generator (L^{-1})^t, Gram matrix the inverse of the primal's."""

    generator: tuple[tuple[Fraction, ...], ...]
    gram: SymMatrix


def dual(lat: Lattice) -> DualLattice:
    n = lat.n
    gen = [[lat.generator[i][j] for j in range(n)] for i in range(n)]
    # invert the generator exactly
    aug = [row + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(gen)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular generator")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    linv = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    dual_gen = tuple(tuple(linv[j][i] for j in range(n)) for i in range(n))  # transpose
    return DualLattice(dual_gen, inverse(lat.gram))


@dataclass(frozen=True)
class NormClassList:
    """All integer vectors (one per +/- class) with v^t Q v equal to `target`."""

    target: Fraction
    classes: tuple[tuple[int, ...], ...]
    complete: bool = True

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def canonical_class(v: Sequence[int]) -> tuple[int, ...]:
    """Representative of the +/- class: first nonzero entry positive."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def _exact_gram(q: SymMatrix) -> list[list[Fraction]]:
    if q.regime == "rational":
        return [[Fraction(x) for x in row] for row in q.entries]
    if q.regime == "float":
        return [[Fraction(float(x)) for x in row] for row in q.entries]
    raise TypeError("enumeration over algebraic Gram matrices is not supported; "
                    "verify certificates instead")


def _ldl(q: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Completion of squares: Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2."""
    n = len(q)
    a = [row[:] for row in q]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for r in range(i + 1, n):
            for cidx in range(r, n):
                val = a[r][cidx] - d[i] * u[i][r] * u[i][cidx]
                a[r][cidx] = val
                a[cidx][r] = val
    return d, u


def _floor_sum_sqrt(x: Fraction, y: Fraction) -> int:
    """floor(x + sqrt(y)) for rationals, y >= 0, computed exactly."""
    a, c = x.numerator, x.denominator
    p, q = y.numerator, y.denominator
    t = math.isqrt(c * c * p * q)
    return (a * q + t) // (c * q)


def _enumerate_box(q: list[list[Fraction]], bound: Fraction, box_bound: int):
    """All integer vectors (up to sign) with 0 < v^t Q v <= bound.

    Yields (vector, value).  Raises EnumerationIncomplete if a coordinate
    range exceeds box_bound before the ellipsoid certifies completeness.
    """
    n = len(q)
    d, u = _ldl(q)
    vec = [0] * n

    def levels(i: int, remaining: Fraction) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        # level i fixes coordinate i, given coordinates i+1..n-1
        center = -sum(u[i][j] * vec[j] for j in range(i + 1, n))
        if remaining < 0:
            return
        radius2 = remaining / d[i]
        hi = _floor_sum_sqrt(center, radius2)
        lo = -_floor_sum_sqrt(-center, radius2)
        if hi - lo > 2 * box_bound + 1:
            raise EnumerationIncomplete(
                f"coordinate range at level {i} exceeds the box bound {box_bound}")
        for x in range(lo, hi + 1):
            vec[i] = x
            used = d[i] * (x - center) * (x - center)
            if used > remaining:
                continue
            if i == 0:
                v = tuple(vec)
                if any(v):
                    yield v, bound - (remaining - used)
            else:
                yield from levels(i - 1, remaining - used)
        vec[i] = 0

    yield from levels(n - 1, bound)


def enumerate_norm(q: SymMatrix, target: Rat, box_bound: int = DEFAULT_BOX_BOUND,
                   float_tol: float = 1e-9) -> NormClassList:
    """All +/- classes of integer vectors with v^t Q v = target.

    Exact for rational Q.  For float Q the comparison allows an absolute
    slack of float_tol * max(1, target).
    """
    if is_positive_definite(q) is not True:
        raise ValueError("Gram matrix must be positive definite")
    target = Fraction(target) if not isinstance(target, float) else Fraction(target)
    if target <= 0:
        raise ValueError("target must be positive")
    grid = _exact_gram(q)
    slack = Fraction(0)
    if q.regime == "float":
        slack = Fraction(float_tol) * max(Fraction(1), target)
    found = set()
    complete = True
    try:
        for v, val in _enumerate_box(grid, target + slack, box_bound):
            if abs(val - target) <= slack:
                found.add(canonical_class(v))
    except EnumerationIncomplete:
        complete = False
    classes = tuple(sorted(found))
    return NormClassList(target=target, classes=classes, complete=complete)


def shortest_vectors(q: SymMatrix, box_bound: int = DEFAULT_BOX_BOUND) -> tuple[Fraction, NormClassList]:
    """(lambda_1, classes attaining it): the minimal nonzero value of v^t Q v."""
    if is_positive_definite(q) is not True:
        raise ValueError("Gram matrix must be positive definite")
    grid = _exact_gram(q)
    upper = min(grid[i][i] for i in range(q.n))  # value at e_i
    best = None
    for v, val in _enumerate_box(grid, upper, box_bound):
        if best is None or val < best:
            best = val
    assert best is not None
    classes = enumerate_norm(q, best, box_bound)
    return best, classes


class SpectrumLine(NamedTuple):
    eigenvalue: float
    multiplicity: int
    norm: Fraction


def _distinct_norms(q: SymMatrix, count: int, box_bound: int) -> list[tuple[Fraction, int]]:
    """First `count` distinct nonzero values of v^t Q v with class counts.

    For float Grams, values within relative 1e-9 are clustered into one line
    (exact lifting of binary floats would otherwise split equal eigenvalues).
    """
    grid = _exact_gram(q)
    cluster = Fraction(1, 10**9) if q.regime == "float" else Fraction(0)
    bound = min(grid[i][i] for i in range(q.n))
    while True:
        values: dict[Fraction, int] = {}
        seen = set()
        search_bound = bound + cluster * max(Fraction(1), bound)
        for v, val in _enumerate_box(grid, search_bound, box_bound):
            c = canonical_class(v)
            if c in seen:
                continue
            seen.add(c)
            values[val] = values.get(val, 0) + 1
        merged: list[tuple[Fraction, int]] = []
        for nv in sorted(values):
            if merged and nv - merged[-1][0] <= cluster * max(Fraction(1), merged[-1][0]):
                merged[-1] = (merged[-1][0], merged[-1][1] + values[nv])
            else:
                merged.append((nv, values[nv]))
        if len(merged) >= count:
            return merged[:count]
        bound = bound * 2


def spectrum(q_dual: SymMatrix, count: int, box_bound: int = DEFAULT_BOX_BOUND) -> list[SpectrumLine]:
    """First `count` distinct Laplace eigenvalues 4 pi^2 |xi|^2 of the torus.

    q_dual is the Gram matrix of the dual lattice in integer coordinates.
    The zero eigenvalue (constants) opens the list with multiplicity 1;
    each nonzero eigenvalue has multiplicity 2 * (number of +/- classes).
    """
    if is_positive_definite(q_dual) is not True:
        raise ValueError("Gram matrix must be positive definite")
    if count < 1:
        raise ValueError("count must be >= 1")
    out = [SpectrumLine(0.0, 1, Fraction(0))]
    if count == 1:
        return out
    for norm, nclasses in _distinct_norms(q_dual, count - 1, box_bound):
        out.append(SpectrumLine(FOUR_PI_SQ * float(norm), 2 * nclasses, norm))
    return out


def eigenfunction_index(q_dual: SymMatrix, target: Union[Rat, float],
                        box_bound: int = DEFAULT_BOX_BOUND, tol: float = 1e-9) -> int:
    """1-based index of `target` among the distinct nonzero eigenvalues.

    A Fraction target is interpreted as the exact squared norm |xi|^2 and
    compared exactly; a float target is interpreted as the eigenvalue
    4 pi^2 |xi|^2 and compared within tol.
    """
    exact = not isinstance(target, float)
    goal = Fraction(target) if exact else Fraction(target / FOUR_PI_SQ)
    count = 1
    while True:
        norms = _distinct_norms(q_dual, count, box_bound)
        for k, (nv, _) in enumerate(norms, start=1):
            if exact and nv == goal:
                return k
            if not exact and abs(float(nv) - float(goal)) <= tol * max(1.0, float(goal)):
                return k
        if norms and norms[-1][0] > goal:
            raise ValueError("target is not an eigenvalue of this torus")
        count += 4


def rational_points_on_ellipsoid(q: SymMatrix, u0: Sequence[Rat], count: int,
                                 seed: int, max_denominator: int = 4,
                                 max_numerator: int = 4) -> list[tuple[Fraction, ...]]:
    """Rational points on the quadric u^t Q u = 1, by projection through u0.

    A pseudo-random rational point u' on a coordinate hyperplane avoiding u0
    determines the line through u0 whose second quadric intersection

        u0 - 2 (u0^t Q (u'-u0)) / ((u'-u0)^t Q (u'-u0)) (u'-u0)

    is again rational.  Deterministic for a given seed; every output
    satisfies the quadric equation exactly.
    """
    import random

    if q.regime != "rational":
        raise TypeError("Q must be rational")
    n = q.n
    u0 = tuple(Fraction(x) for x in u0)
    if q.quad_form(u0) != 1:
        raise ValueError("u0 does not lie on the ellipsoid")
    axis = next((k for k in range(n) if u0[k] != 0), None)
    if axis is None:
        raise ValueError("u0 is the origin")
    rng = random.Random(seed)
    points: list[tuple[Fraction, ...]] = []
    seen = {u0}
    tries = 0
    while len(points) < count:
        tries += 1
        if tries > 200 * count + 1000:
            raise RuntimeError("sampling did not produce enough distinct points")
        uprime = [Fraction(rng.randint(-max_numerator, max_numerator),
                           rng.randint(1, max_denominator)) for _ in range(n)]
        uprime[axis] = Fraction(0)
        delta = tuple(a - b for a, b in zip(uprime, u0))
        qd = q.quad_form(delta)
        if qd == 0:
            continue
        # u0^t Q delta
        num = sum(u0[i] * sum(q.entries[i][j] * delta[j] for j in range(n)) for i in range(n))
        t = 2 * num / qd
        u = tuple(a - t * d for a, d in zip(u0, delta))
        if u in seen:
            continue
        seen.add(u)
        points.append(u)
    return points
