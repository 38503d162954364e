"""Monomial bases of graded pieces of the Cox ring.

``Hom(L_i, L_j)`` on a complete toric variety has a basis of Cox monomials
of multidegree ``v_j - v_i``. They are the lattice points of the fiber
polytope ``{m : <m, u_rho> >= -D_rho}`` for any lift D of the class,
shifted by D.
"""

from __future__ import annotations

from typing import Sequence

from .errors import NotComplete, Unbounded
from .polytope import integral_system
from .toric import DivisorClass, ToricVariety

Monomial = tuple[int, ...]


def monomial_key(a: Sequence[int]):
    """Sort key for graded reverse lexicographic order, largest first.

    With x_0 > x_1 > ... this lists x_0x_1 before x_3x_4 and x_2x_3 before
    x_0x_5, the order Macaulay2 prints them in.
    """
    return (-sum(a), tuple(reversed(a)))


def format_monomial(a: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(a):
        if e == 1:
            parts.append(f"x_{i}")
        elif e > 1:
            parts.append(f"x_{i}^{e}")
    return "".join(parts) or "1"


def region_system(X: ToricVariety, negative: frozenset[int] | int = 0):
    """The integral system for ``R_I(D)`` where I is a set (or bitmask) of rays.

    Rows for rays in I read ``-<m, u> >= 1 + D_rho``, the rest
    ``<m, u> >= -D_rho``. Returns the cached system and a function mapping a
    divisor D to the right-hand side.
    """
    mask = negative if isinstance(negative, int) else sum(1 << i for i in negative)
    rays = X.fan.rays
    A = tuple(
        tuple(-x for x in u) if mask >> i & 1 else u for i, u in enumerate(rays)
    )
    system = integral_system(A)

    def rhs(D: Sequence[int]) -> list[int]:
        return [1 + D[i] if mask >> i & 1 else -D[i] for i in range(len(rays))]

    return system, rhs


def hom_basis(X: ToricVariety, d: Sequence[int]) -> list[Monomial]:
    """All monomials ``a >= 0`` with ``deg(a) = d``, in graded revlex order."""
    D = X.lift(d)
    system, rhs = region_system(X, 0)
    try:
        pts = system.points(rhs(D))
    except Unbounded as exc:
        raise NotComplete("fiber polytope is unbounded") from exc
    rays = X.fan.rays
    out = [
        tuple(Di + sum(a * b for a, b in zip(m, u)) for Di, u in zip(D, rays)) for m in pts
    ]
    return sorted(out, key=monomial_key)


def hom_dimension(X: ToricVariety, d: Sequence[int]) -> int:
    return len(hom_basis(X, d))


def class_of(X: ToricVariety, a: Sequence[int]) -> DivisorClass:
    return tuple(sum(r * x for r, x in zip(row, a)) for row in X.deg)
