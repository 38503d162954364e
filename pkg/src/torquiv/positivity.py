"""Intersection numbers with torus-invariant curves and nef tests.

On a smooth complete toric variety every wall (codimension one cone) tau
separates two maximal cones with off-wall rays u_a, u_b, and there is a
unique integral relation

    u_a + u_b + sum_{rho in tau} c_rho u_rho = 0.

The curve V(tau) meets D_a and D_b once and D_rho (rho in tau) with
multiplicity c_rho, which gives D . V(tau) directly. A class is nef iff it
meets every such curve nonnegatively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import lattice
from .errors import NotSmooth
from .toric import ToricVariety, anticanonical_class


@dataclass(frozen=True)
class Wall:
    rays: tuple[int, ...]
    cones: tuple[int, int]
    off_wall: tuple[int, int]
    coefficients: tuple[int, ...]  # aligned with ``rays``


def walls(X: ToricVariety) -> list[Wall]:
    if not X.is_smooth():
        raise NotSmooth("walls are only computed for smooth varieties")

    def compute():
        fan = X.fan
        owners: dict[tuple[int, ...], list[int]] = {}
        for k, cone in enumerate(fan.max_cones):
            for tau in itertools.combinations(cone, X.dim - 1):
                owners.setdefault(tau, []).append(k)
        out = []
        for tau, (k1, k2) in sorted(owners.items()):
            (a,) = set(fan.max_cones[k1]) - set(tau)
            (b,) = set(fan.max_cones[k2]) - set(tau)
            target = [-(x + y) for x, y in zip(fan.rays[a], fan.rays[b])]
            cols = [[fan.rays[r][i] for r in tau] for i in range(X.dim)]
            c = lattice.solve_integer(cols, target, len(tau))
            if c is None:
                raise NotSmooth(f"wall {tau} has no integral relation")
            out.append(Wall(tau, (k1, k2), (a, b), tuple(c)))
        return out

    return X.cached("walls", compute)


def intersection_number(X: ToricVariety, D: Sequence[int], wall: Wall) -> int:
    a, b = wall.off_wall
    return D[a] + D[b] + sum(c * D[r] for c, r in zip(wall.coefficients, wall.rays))


def is_nef(X: ToricVariety, d: Sequence[int]) -> bool:
    D = X.lift(d)
    return all(intersection_number(X, D, w) >= 0 for w in walls(X))


def bundles_nef_check(Q, n: int) -> bool:
    """Whether ``L_i - L_j + n(-K)`` is nef for every ordered pair."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    X = Q.variety
    anti = anticanonical_class(X)
    for vi in Q.vertices:
        for vj in Q.vertices:
            d = tuple(x - y + n * a for x, y, a in zip(vi, vj, anti))
            if not is_nef(X, d):
                return False
    return True
