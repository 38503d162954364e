"""Exact lattice points of rational polytopes, and Fourier-Motzkin elimination.

Polytopes are written as ``{x : <a_k, x> >= b_k}``. Lattice points are found
by computing an exact bounding box from the rational vertices and filtering
the integer points of the box through the inequalities. At the sizes met
here (ambient dimension at most four, a dozen inequalities) this is both
simple and fast.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd, lcm
from typing import Iterator, Optional, Sequence

from . import lattice
from .errors import Unbounded


@dataclass(frozen=True)
class RationalPolytope:
    """``{x in Q^dim : <normal_k, x> >= offset_k for all k}``."""

    normals: tuple[tuple[Fraction, ...], ...]
    offsets: tuple[Fraction, ...]
    dim: int

    @classmethod
    def from_inequalities(cls, inequalities, dim: Optional[int] = None) -> "RationalPolytope":
        """Build from ``(normal, offset)`` pairs."""
        normals, offsets = [], []
        for a, b in inequalities:
            normals.append(tuple(Fraction(x) for x in a))
            offsets.append(Fraction(b))
        if dim is None:
            if not normals:
                raise ValueError("dimension needed for a polytope without inequalities")
            dim = len(normals[0])
        return cls(tuple(normals), tuple(offsets), dim)

    def contains(self, x: Sequence) -> bool:
        return all(
            sum(a * xi for a, xi in zip(row, x)) >= b for row, b in zip(self.normals, self.offsets)
        )

    def integral(self) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
        """Equivalent system with integer normals and integer offsets.

        Offsets are rounded up, which does not change the lattice points.
        """
        A, b = [], []
        for row, off in zip(self.normals, self.offsets):
            den = lcm(*(x.denominator for x in row)) if row else 1
            irow = [int(x * den) for x in row]
            g = 0
            for x in irow:
                g = gcd(g, x)
            if g == 0:
                # 0 >= off: keep as a trivially true or trivially false row
                A.append(tuple(irow))
                b.append(0 if off <= 0 else 1)
                continue
            A.append(tuple(x // g for x in irow))
            b.append(ceil(off * den / g))
        return tuple(A), tuple(b)


def lattice_points(P: RationalPolytope) -> list[tuple[int, ...]]:
    """All integer points of a bounded rational polytope, sorted.

    Raises Unbounded if P is nonempty and unbounded.
    """
    A, b = P.integral()
    for row, off in zip(A, b):
        if not any(row) and off > 0:
            return []
    A2 = tuple(r for r in A if any(r))
    b2 = tuple(o for r, o in zip(A, b) if any(r))
    if not A2:
        if P.dim == 0:
            return [()]
        raise Unbounded("polytope without constraints")
    return sorted(integral_system(A2).points(b2))


class IntegralSystem:
    """``{x in Z^n : A x >= b}`` for a fixed integer matrix A and varying b.

    Everything that depends only on A (vertex adjugates, boundedness) is
    computed once, so that sweeping b is cheap.
    """

    def __init__(self, A: Sequence[Sequence[int]]):
        self.A = tuple(tuple(r) for r in A)
        self.n = len(self.A[0]) if self.A else 0
        self.full_rank = lattice.rank(self.A) == self.n
        # (rows, adjugate, det) with det > 0 for every invertible n-subset
        self._vertex_solvers = []
        if self.full_rank:
            for S in itertools.combinations(range(len(self.A)), self.n):
                sub = [self.A[i] for i in S]
                det = lattice.determinant(sub)
                if det == 0:
                    continue
                adj = lattice.adjugate(sub)
                if det < 0:
                    det, adj = -det, [[-x for x in row] for row in adj]
                # residual of row k at the vertex, as a linear form in b[S]
                checks = tuple(
                    (k, tuple(sum(a * adj[r][j] for r, a in enumerate(self.A[k])) for j in range(self.n)))
                    for k in range(len(self.A))
                    if k not in S
                )
                self._vertex_solvers.append((S, tuple(map(tuple, adj)), det, checks))
        self.bounded = self.full_rank and self._recession_cone_is_zero()

    def _recession_cone_is_zero(self) -> bool:
        # A pointed cone {A y >= 0} is nonzero iff it has an extreme ray, and
        # every extreme ray spans the kernel of n-1 independent rows.
        n = self.n
        for S in itertools.combinations(range(len(self.A)), n - 1):
            sub = [self.A[i] for i in S]
            if lattice.rank(sub) != n - 1:
                continue
            K = lattice.kernel_basis(sub, n)
            y = [row[0] for row in K]
            for sign in (1, -1):
                if all(sign * sum(a * yi for a, yi in zip(row, y)) >= 0 for row in self.A):
                    return False
        return True

    def vertices(self, b: Sequence[int]) -> Iterator[tuple[tuple[int, ...], int]]:
        """Feasible vertices as ``(numerators, denominator)`` pairs."""
        for S, adj, det, checks in self._vertex_solvers:
            bs = [b[i] for i in S]
            for k, w in checks:
                acc = -det * b[k]
                for wj, bj in zip(w, bs):
                    acc += wj * bj
                if acc < 0:
                    break
            else:
                yield tuple(sum(x * y for x, y in zip(row, bs)) for row in adj), det

    def box(self, b: Sequence[int]) -> Optional[list[tuple[int, int]]]:
        """Integer bounding box of the polytope, or None if it is empty."""
        if not self.full_rank:
            if not fm_feasible([(r, bi, False) for r, bi in zip(self.A, b)], self.n):
                return None
            raise Unbounded("polyhedron contains a line")
        lo = hi = None
        for v, det in self.vertices(b):
            if lo is None:
                if not self.bounded:
                    raise Unbounded("polyhedron has a nonzero recession cone")
                lo = [-(-x // det) for x in v]
                hi = [x // det for x in v]
                continue
            for k, x in enumerate(v):
                c, f = -(-x // det), x // det
                if c < lo[k]:
                    lo[k] = c
                if f > hi[k]:
                    hi[k] = f
        if lo is None:
            return None
        return list(zip(lo, hi))

    def points(self, b: Sequence[int], first: bool = False) -> list[tuple[int, ...]]:
        box = self.box(b)
        if box is None or any(l > h for l, h in box):
            return []
        out = []
        A = self.A
        for x in itertools.product(*(range(l, h + 1) for l, h in box)):
            if all(sum(a * xi for a, xi in zip(row, x)) >= bi for row, bi in zip(A, b)):
                out.append(x)
                if first:
                    break
        return out

    def is_empty(self, b: Sequence[int]) -> bool:
        return not self.points(b, first=True)


@lru_cache(maxsize=4096)
def integral_system(A: tuple[tuple[int, ...], ...]) -> IntegralSystem:
    return IntegralSystem(A)


# --- Fourier-Motzkin -------------------------------------------------------
#
# An inequality is (a, b, strict) meaning <a, x> >= b, or > b when strict.
# Coefficients stay integral: rows are combined with positive integer
# multipliers and divided by the gcd afterwards.


def _normalize(a, b, strict):
    g = 0
    for x in a:
        g = gcd(g, x)
    if g == 0:
        return tuple(a), b, strict
    # rational offsets are allowed; dividing keeps the half-space
    return tuple(x // g for x in a), Fraction(b) / g, strict


def fm_eliminate(ineqs, k: int):
    """Eliminate variable ``k`` from a list of (a, b, strict) inequalities.

    The returned system lives in the same coordinates with a zero in slot k.
    """
    pos, neg, rest = [], [], []
    for a, b, s in ineqs:
        c = a[k]
        (pos if c > 0 else neg if c < 0 else rest).append((a, b, s))
    out = set(_normalize(a, b, s) for a, b, s in rest)
    for ap, bp, sp in pos:
        for an, bn, sn in neg:
            fp, fn = -an[k], ap[k]
            a = tuple(fp * x + fn * y for x, y in zip(ap, an))
            out.add(_normalize(a, fp * bp + fn * bn, sp or sn))
    return _drop_dominated(out)


def _drop_dominated(ineqs):
    # same normal: keep the tightest offset; strict beats non-strict at ties
    best = {}
    for a, b, s in ineqs:
        cur = best.get(a)
        if cur is None or b > cur[0] or (b == cur[0] and s and not cur[1]):
            best[a] = (b, s)
    return sorted((a, b, s) for a, (b, s) in best.items())


def fm_feasible(ineqs, n: int) -> bool:
    """Exact rational feasibility of a system of (a, b, strict) inequalities."""
    system = _drop_dominated(_normalize(tuple(a), b, s) for a, b, s in ineqs)
    for k in range(n):
        system = fm_eliminate(system, k)
        for a, b, s in system:
            if not any(a) and (b > 0 or (s and b >= 0)):
                return False
    return all(not (b > 0 or (s and b >= 0)) for a, b, s in system if not any(a))


def fm_project(ineqs, eliminate: Sequence[int], n: int):
    """Project onto the coordinates not listed in ``eliminate``.

    Returns non-strict inequalities on the remaining coordinates (in their
    original order), with redundant rows removed by exact feasibility tests.
    """
    system = _drop_dominated(_normalize(tuple(a), b, False) for a, b in ineqs)
    for k in eliminate:
        system = fm_eliminate(system, k)
    keep = [j for j in range(n) if j not in set(eliminate)]
    rows = []
    for a, b, s in system:
        if not any(a):
            if b > 0:
                raise ValueError("projection of an empty polyhedron")
            continue
        rows.append((tuple(a[j] for j in keep), b))
    return prune_redundant(rows, len(keep))


def prune_redundant(rows, n: int):
    """Drop rows implied by the others. Rows are (a, b) meaning <a,x> >= b."""
    rows = list(dict.fromkeys(rows))
    i = 0
    while i < len(rows):
        a, b = rows[i]
        others = [(r, c, False) for j, (r, c) in enumerate(rows) if j != i]
        # redundant iff others together with <a,x> < b is infeasible
        violated = others + [(tuple(-x for x in a), -b, True)]
        if not fm_feasible(violated, n):
            rows.pop(i)
        else:
            i += 1
    return rows
