"""Fans, complete toric varieties and their class groups.

A toric variety here is a complete fan together with the degree map
``deg: Z^rays -> Cl(X)`` from the exact sequence

    0 -> M -> Z^rays -> Cl(X) -> 0

where the first map sends a character m to ``(<m, u_rho>)_rho``. Ray order
is significant: the Cox variable ``x_i`` and every label printed by the
package refer to ray ``i``.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Optional, Sequence

from . import lattice
from .errors import (
    InvalidDegMatrix,
    InvalidFan,
    LengthMismatch,
    NoLift,
    NotComplete,
    TorsionClassGroup,
)

DivisorClass = tuple[int, ...]


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidFan(f"expected an integer, got {x!r}")
    return x


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(_as_int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(_as_int(i) for i in c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if self.dim < 1:
            raise InvalidFan("ambient dimension must be positive")
        for r in rays:
            if len(r) != self.dim:
                raise InvalidFan(f"ray {r} does not have length {self.dim}")
            g = 0
            for x in r:
                g = gcd(g, x)
            if g != 1:
                raise InvalidFan(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise InvalidFan("duplicate rays")
        used = set()
        for c in cones:
            if len(set(c)) != len(c) or not c:
                raise InvalidFan(f"bad cone {c}")
            for i in c:
                if not 0 <= i < len(rays):
                    raise InvalidFan(f"cone {c} refers to a missing ray")
            used.update(c)
        if used != set(range(len(rays))):
            raise InvalidFan("every ray must lie in some maximal cone")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray_matrix(self) -> lattice.Matrix:
        """The inclusion M -> Z^rays, one row per ray."""
        return [list(r) for r in self.rays]

    def to_dict(self) -> dict[str, Any]:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Fan":
        try:
            return cls(int(data["dim"]), tuple(map(tuple, data["rays"])),
                       tuple(map(tuple, data["max_cones"])))
        except (KeyError, TypeError) as exc:
            raise InvalidFan(f"malformed fan data: {exc}") from exc

    # -- geometry of cones ------------------------------------------------

    def cone_facets(self, c: int) -> list[tuple[frozenset[int], tuple[int, ...]]]:
        """Facets of maximal cone ``c`` as (ray set, inward normal) pairs."""
        cone = self.max_cones[c]
        n = self.dim
        seen = {}
        for S in itertools.combinations(cone, n - 1):
            sub = [self.rays[i] for i in S]
            if lattice.rank(sub) != n - 1:
                continue
            K = lattice.kernel_basis(sub, n)
            h = [row[0] for row in K]
            vals = [sum(a * b for a, b in zip(h, self.rays[i])) for i in cone]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                h = [-x for x in h]
            else:
                continue
            face = frozenset(i for i, v in zip(cone, vals) if v == 0)
            seen.setdefault(face, tuple(h))
        return sorted(seen.items(), key=lambda kv: sorted(kv[0]))

    def contains(self, c: int, point: Sequence) -> bool:
        return all(sum(a * x for a, x in zip(h, point)) >= 0 for _, h in self.cone_facets(c))


def is_complete(fan: Fan) -> bool:
    """Whether the cones of ``fan`` cover all of R^n.

    The fan must be pure of full dimension, every facet of a maximal cone
    must be shared by exactly two maximal cones, the dual graph must be
    connected, and a generic point must lie in exactly one maximal cone
    (which rules out fans that wrap around more than once).
    """
    n = fan.dim
    cones = fan.max_cones
    for c in cones:
        if lattice.rank([fan.rays[i] for i in c]) != n:
            return False
    facet_owners: dict[frozenset[int], list[int]] = {}
    for k in range(len(cones)):
        for face, _ in fan.cone_facets(k):
            facet_owners.setdefault(face, []).append(k)
    if any(len(owners) != 2 for owners in facet_owners.values()):
        return False
    adj = {k: set() for k in range(len(cones))}
    for a, b in facet_owners.values():
        adj[a].add(b)
        adj[b].add(a)
    seen, todo = {0}, [0]
    while todo:
        for j in adj[todo.pop()]:
            if j not in seen:
                seen.add(j)
                todo.append(j)
    if len(seen) != len(cones):
        return False
    p = _generic_point(fan)
    return sum(1 for k in range(len(cones)) if fan.contains(k, p)) == 1


def _generic_point(fan: Fan) -> list[int]:
    n = fan.dim
    hyperplanes = []
    for S in itertools.combinations(range(fan.n_rays), n - 1):
        sub = [fan.rays[i] for i in S]
        if lattice.rank(sub) == n - 1:
            K = lattice.kernel_basis(sub, n)
            hyperplanes.append([row[0] for row in K])
    base = 1009
    while True:
        p = [base ** k for k in range(n)]
        if all(sum(a * x for a, x in zip(h, p)) != 0 for h in hyperplanes):
            return p
        base += 2


def is_smooth(fan: Fan) -> bool:
    """Every maximal cone is generated by part of a Z-basis."""
    for c in fan.max_cones:
        sub = [fan.rays[i] for i in c]
        snf = lattice.smith_normal_form(sub, fan.dim)
        if snf.rank != len(c) or any(d != 1 for d in snf.diagonal[: len(c)]):
            return False
    return True


@dataclass(eq=False)
class ToricVariety:
    """A complete toric variety with a torsion-free class group.

    ``deg`` is a ``cl_rank x n_rays`` matrix. Caches are write-once and are
    filled under ``_lock``.
    """

    fan: Fan
    deg: tuple[tuple[int, ...], ...]
    key: Optional[tuple[int, int]] = None
    name: Optional[str] = None
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    @property
    def dim(self) -> int:
        return self.fan.dim

    @property
    def n_rays(self) -> int:
        return self.fan.n_rays

    @property
    def cl_rank(self) -> int:
        return len(self.deg)

    def cached(self, name: str, compute):
        with self._lock:
            if name not in self._cache:
                self._cache[name] = compute()
            return self._cache[name]

    @property
    def section(self) -> tuple[tuple[int, ...], ...]:
        """An integer right inverse of deg (n_rays x cl_rank)."""

        def compute():
            cols = []
            for k in range(self.cl_rank):
                e = [int(i == k) for i in range(self.cl_rank)]
                x = lattice.solve_integer(self.deg, e, self.n_rays)
                if x is None:
                    raise NoLift(f"class {e} is not in the image of deg")
                cols.append(x)
            return tuple(tuple(c[i] for c in cols) for i in range(self.n_rays))

        return self.cached("section", compute)

    def lift(self, d: Sequence[int]) -> list[int]:
        """A torus-invariant divisor with class ``d``."""
        if len(d) != self.cl_rank:
            raise LengthMismatch(f"class {tuple(d)} should have length {self.cl_rank}")
        return lattice.matvec(self.section, d)

    def is_smooth(self) -> bool:
        return self.cached("smooth", lambda: is_smooth(self.fan))

    def to_dict(self) -> dict[str, Any]:
        out = self.fan.to_dict()
        out["deg"] = [list(r) for r in self.deg]
        return out

    def __repr__(self) -> str:
        label = self.name or (f"smooth_fano{self.key}" if self.key else "ToricVariety")
        return f"<{label}: dim {self.dim}, {self.n_rays} rays, Cl rank {self.cl_rank}>"


def make_variety(fan: Fan, deg: Optional[Sequence[Sequence[int]]] = None, *,
                 key: Optional[tuple[int, int]] = None, name: Optional[str] = None) -> ToricVariety:
    """Validate ``fan`` and attach a degree map.

    Without ``deg`` a deterministic basis of Cl(X) is chosen (Hermite form
    of the cokernel projection). A supplied ``deg`` must kill the image of M
    and be surjective.
    """
    if not is_complete(fan):
        raise NotComplete("fan does not cover the whole space")
    R = fan.ray_matrix()
    rank, torsion, proj = lattice.cokernel_projection(R, fan.dim)
    if torsion:
        raise TorsionClassGroup(f"class group has torsion {torsion}")
    if deg is None:
        deg = proj
    else:
        deg = [[_as_int(x) for x in row] for row in deg]
        if len(deg) != rank or any(len(row) != fan.n_rays for row in deg):
            raise InvalidDegMatrix(f"deg must be {rank} x {fan.n_rays}")
        if any(any(row) for row in lattice.matmul(deg, R, fan.dim)):
            raise InvalidDegMatrix("deg does not vanish on the image of M")
        snf = lattice.smith_normal_form(deg, fan.n_rays)
        if snf.rank != rank or any(d != 1 for d in snf.diagonal):
            raise InvalidDegMatrix("deg is not surjective")
    return ToricVariety(fan, tuple(tuple(r) for r in deg), key=key, name=name)


def variety_from_dict(data: dict[str, Any], **kw) -> ToricVariety:
    return make_variety(Fan.from_dict(data), data.get("deg"), **kw)


def load_fan_json(text: str) -> ToricVariety:
    """Parse the fan JSON format; floats are rejected."""

    def no_floats(s):
        raise InvalidFan(f"non-integer number {s} in fan data")

    return variety_from_dict(json.loads(text, parse_float=no_floats))


def from_wdiv_to_cl(X: ToricVariety, D: Sequence[int]) -> DivisorClass:
    if len(D) != X.n_rays:
        raise LengthMismatch(f"divisor {tuple(D)} should have length {X.n_rays}")
    return tuple(lattice.matvec(X.deg, D))


def anticanonical_class(X: ToricVariety) -> DivisorClass:
    return from_wdiv_to_cl(X, [1] * X.n_rays)


def is_cartier(X: ToricVariety, D: Sequence[int]) -> bool:
    """Whether the torus-invariant Weil divisor D is Cartier."""
    for cone in X.fan.max_cones:
        A = [X.fan.rays[i] for i in cone]
        if lattice.solve_integer(A, [-D[i] for i in cone], X.dim) is None:
            return False
    return True


def is_line_bundle(X: ToricVariety, d: Sequence[int]) -> bool:
    if X.is_smooth():
        return True
    return is_cartier(X, X.lift(d))
