"""Vanishing of higher cohomology of rank one reflexive sheaves.

For a torus-invariant divisor D and a character m, let I(D, m) be the set of
rays with ``<m, u_rho> + D_rho < 0``. The m-graded piece of H^i(X, O(D)) has
dimension equal to the rank of reduced homology in degree i-1 of the
subcomplex of the fan supported on I(D, m). A set of rays I whose complex has
some nonzero reduced homology is *forbidden*; O(D) can only have higher
cohomology when some character realises a forbidden set, i.e. when the
polytope

    R_I(D) = {m : <m,u> + D_rho <= -1 for rho in I, >= 0 otherwise}

has a lattice point. Membership is decided by lattice-point search, which
is exact; the projected inequality description of each cone is kept for
display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

from . import lattice
from .errors import UnboundedRegion, Unbounded
from .polytope import fm_project
from .sections import region_system
from .toric import DivisorClass, Fan, ToricVariety, anticanonical_class


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[int, ...]
    facets: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def faces(self, k: int) -> list[tuple[int, ...]]:
        """Faces with k+1 vertices; k = -1 gives the empty face."""
        if k == -1:
            return [()]
        out = set()
        for f in self.facets:
            out.update(itertools.combinations(f, k + 1))
        return sorted(out)


@dataclass(frozen=True)
class ForbiddenSet:
    rays: tuple[int, ...]
    witness_degrees: frozenset[int]


@dataclass(frozen=True)
class ConeRegion:
    """Projected non-vanishing cone ``{v in Cl(X) : H v <= w}``."""

    rays: tuple[int, ...]
    w: tuple[int, ...]
    H: tuple[tuple[int, ...], ...]

    def contains(self, v: Sequence[int]) -> bool:
        return all(sum(h * x for h, x in zip(row, v)) <= b for row, b in zip(self.H, self.w))

    def to_dict(self) -> dict:
        return {"I": list(self.rays), "w": list(self.w), "H": [list(r) for r in self.H]}


def _maximal(sets) -> tuple[tuple[int, ...], ...]:
    sets = set(frozenset(s) for s in sets if s)
    keep = [s for s in sets if not any(s < t for t in sets)]
    return tuple(sorted(tuple(sorted(s)) for s in keep))


def induced_complex(fan: Fan, I: Sequence[int]) -> SimplicialComplex:
    """Complex on I whose faces are the intersections of I with cones of the fan."""
    I = tuple(sorted(set(I)))
    Iset = set(I)
    return SimplicialComplex(I, _maximal([Iset.intersection(c) for c in fan.max_cones]))


def _boundary(rows_faces, cols_faces) -> lattice.Matrix:
    pos = {f: r for r, f in enumerate(rows_faces)}
    M = lattice.zeros(len(rows_faces), len(cols_faces))
    for c, f in enumerate(cols_faces):
        for k in range(len(f)):
            M[pos[f[:k] + f[k + 1:]]][c] = (-1) ** k
    return M


def reduced_homology_ranks(K: SimplicialComplex) -> dict[int, int]:
    """Nonzero ranks of reduced homology over Q, keyed by degree."""
    top = K.dim
    faces = {k: K.faces(k) for k in range(-1, top + 1)}
    ranks = {k: lattice.rank(_boundary(faces[k - 1], faces[k])) for k in range(0, top + 1)}
    out = {}
    for k in range(-1, top + 1):
        r = len(faces[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if r:
            out[k] = r
    return out


def subset_homology(X: ToricVariety) -> dict[int, dict[int, int]]:
    """Reduced homology of the induced complex for every ray subset (bitmask)
    that has any; the empty set is included."""

    def compute():
        memo = {}
        out = {}
        for mask in range(1 << X.n_rays):
            I = [i for i in range(X.n_rays) if mask >> i & 1]
            K = induced_complex(X.fan, I)
            key = (K.vertices, K.facets)
            if key not in memo:
                memo[key] = reduced_homology_ranks(K)
            if memo[key]:
                out[mask] = memo[key]
        return out

    return X.cached("subset_homology", compute)


def forbidden_sets(X: ToricVariety) -> dict[int, list[ForbiddenSet]]:
    """Forbidden sets by cohomological degree, in increasing bitmask order."""

    def compute():
        out = {i: [] for i in range(1, X.dim + 1)}
        for mask, ranks in sorted(subset_homology(X).items()):
            if mask == 0:
                continue
            degrees = frozenset(k + 1 for k in ranks if k + 1 >= 1)
            fs = ForbiddenSet(tuple(i for i in range(X.n_rays) if mask >> i & 1), degrees)
            for i in sorted(degrees):
                out[i].append(fs)
        return out

    return X.cached("forbidden_sets", compute)


def _region_points(X: ToricVariety, rays: Sequence[int] | int, D: Sequence[int], first=False):
    system, rhs = region_system(X, rays if isinstance(rays, int) else frozenset(rays))
    try:
        return system.points(rhs(D), first=first)
    except Unbounded as exc:
        raise UnboundedRegion(f"region for rays {rays} is unbounded") from exc


def nonvanishing_region_contains(X: ToricVariety, I: ForbiddenSet | Sequence[int], d: Sequence[int]) -> bool:
    rays = I.rays if isinstance(I, ForbiddenSet) else tuple(I)
    return bool(_region_points(X, rays, X.lift(d), first=True))


def projected_cone(X: ToricVariety, I: ForbiddenSet | Sequence[int]) -> ConeRegion:
    """Inequalities ``H v <= w`` for the image under deg of the raw cone.

    Rows of H are primitive and w is rounded down, so the description is
    exact on lattice points of the rational projection.
    """
    rays = tuple(sorted(I.rays if isinstance(I, ForbiddenSet) else I))
    Iset = set(rays)
    c, n = X.cl_rank, X.dim
    S = X.section
    ineqs = []
    for rho, u in enumerate(X.fan.rays):
        a = tuple(S[rho]) + tuple(u)
        if rho in Iset:
            ineqs.append((tuple(-x for x in a), 1))
        else:
            ineqs.append((a, 0))
    rows = fm_project(ineqs, list(range(c, c + n)), c + n)
    pairs = sorted((tuple(-x for x in a), floor(-Fraction(b))) for a, b in rows)
    return ConeRegion(rays, tuple(w for _, w in pairs), tuple(h for h, _ in pairs))


def cone_regions(X: ToricVariety) -> dict[int, list[ConeRegion]]:
    return X.cached(
        "cones",
        lambda: {i: [projected_cone(X, fs) for fs in sets] for i, sets in forbidden_sets(X).items()},
    )


def higher_cohomology_vanishes(X: ToricVariety, d: Sequence[int]) -> bool:
    d = tuple(d)
    memo = X.cached("vanishing", dict)
    if d in memo:
        return memo[d]
    D = X.lift(d)
    result = True
    seen = set()
    for sets in forbidden_sets(X).values():
        for fs in sets:
            if fs.rays in seen:
                continue
            seen.add(fs.rays)
            if _region_points(X, fs.rays, D, first=True):
                result = False
                break
        if not result:
            break
    memo[d] = result
    return result


def cohomology_oracle(X: ToricVariety, D: Sequence[int]) -> list[int]:
    """Dimensions h^0..h^n of O(D) for a torus-invariant divisor D.

    Sums reduced homology ranks over all characters, one region per subset.
    This does not go through the forbidden-set machinery.
    """
    h = [0] * (X.dim + 1)
    for mask, ranks in subset_homology(X).items():
        count = None
        for k, r in ranks.items():
            if count is None:
                count = len(_region_points(X, mask, D))
            h[k + 1] += r * count
    return h


def _differences(vertices):
    for vj in vertices:
        for vk in vertices:
            yield tuple(a - b for a, b in zip(vk, vj))


def do_higher_self_exts_vanish(Q) -> bool:
    """Ext^i(L_j, L_k) = 0 for all i > 0 and all pairs of vertices."""
    X = Q.variety
    return all(higher_cohomology_vanishes(X, d) for d in _differences(Q.vertices))


def twisted_classes_vanish(X: ToricVariety, vertices, p: int) -> bool:
    if p < 0:
        raise ValueError("p must be nonnegative")
    anti = anticanonical_class(X)
    for m in range(p + 1):
        for d in _differences(vertices):
            if not higher_cohomology_vanishes(X, tuple(x + m * a for x, a in zip(d, anti))):
                return False
    return True


def do_higher_self_exts_vanish_twisted(Q, p: int) -> bool:
    """Also twisting by ``omega^-m`` for 0 <= m <= p."""
    return twisted_classes_vanish(Q.variety, Q.vertices, p)


def forbidden_sets_json(X: ToricVariety) -> list[dict]:
    return [{"i": i, "sets": [list(fs.rays) for fs in sets]} for i, sets in forbidden_sets(X).items()]
