"""Database of smooth toric Fano varieties, their full strong exceptional
collections, and divisorial contractions between them.

Entries are keyed by ``(dim, index)``. A contraction edge removes rays over
the same lattice N, so the induced maps on the exact sequences are the
identity on M, the coordinate projection on torus-invariant divisors, and
the Picard map forced by commutativity.
"""

from __future__ import annotations

import json
import os
import threading
from collections import deque
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from . import lattice
from .cohomology import higher_cohomology_vanishes, twisted_classes_vanish
from .errors import NoCollection, NonCommuting, NoSuchEdge, UnknownKey
from .toric import DivisorClass, ToricVariety, variety_from_dict

ENV_VAR = "TORQUIV_DB_PATH"

Key = tuple[int, int]


@dataclass(frozen=True)
class ContractionMaps:
    character_map: lattice.Matrix  # M_source -> M_target
    divisor_map: lattice.Matrix  # Z^rays(source) -> Z^rays(target)
    picard_map: lattice.Matrix  # Cl(source) -> Cl(target)


@dataclass
class DatabaseEntry:
    key: Key
    variety: ToricVariety
    collection: Optional[list[DivisorClass]]
    contractions: dict[int, list[int]]  # target index -> source ray of each target ray
    name: Optional[str] = None


class FanoDatabase:
    def __init__(self, records: Sequence[dict]):
        self.entries: dict[Key, DatabaseEntry] = {}
        for rec in records:
            key = (int(rec["key"][0]), int(rec["key"][1]))
            X = variety_from_dict(rec, key=key, name=rec.get("name"))
            coll = rec.get("collection")
            edges = {int(e["target"]): [int(i) for i in e["ray_matching"]] for e in rec.get("contractions", [])}
            self.entries[key] = DatabaseEntry(
                key, X, [tuple(c) for c in coll] if coll is not None else None, edges, rec.get("name")
            )
        self._check_edges()

    def _check_edges(self):
        for (dim, _), entry in self.entries.items():
            for t, matching in entry.contractions.items():
                if (dim, t) not in self.entries:
                    raise NoSuchEdge(f"contraction to missing entry {(dim, t)}")
                target = self.entries[dim, t].variety
                src_rays = entry.variety.fan.rays
                if len(set(matching)) != len(matching) or len(matching) != target.n_rays:
                    raise ValueError(f"ray matching for {entry.key} -> {(dim, t)} is not injective")
                for i, j in enumerate(matching):
                    if target.fan.rays[i] != src_rays[j]:
                        raise ValueError(f"ray matching for {entry.key} -> {(dim, t)} moves a ray")

    def self_test(self) -> None:
        """Every stored collection is strong exceptional and every square commutes."""
        for key, entry in self.entries.items():
            if entry.collection is not None:
                X = entry.variety
                for a in entry.collection:
                    for b in entry.collection:
                        d = tuple(x - y for x, y in zip(a, b))
                        if not higher_cohomology_vanishes(X, d):
                            raise AssertionError(f"stored collection on {key} is not strong exceptional")
            for t in entry.contractions:
                self.contraction_maps(key, (key[0], t))

    # -- lookups ------------------------------------------------------------

    def entry(self, dim: int, index: int) -> DatabaseEntry:
        try:
            return self.entries[dim, index]
        except KeyError:
            raise UnknownKey(f"no smooth Fano variety {(dim, index)} in the database") from None

    def smooth_fano(self, dim: int, index: int) -> ToricVariety:
        return self.entry(dim, index).variety

    def full_str_exc_coll(self, dim: int, index: int) -> list[DivisorClass]:
        coll = self.entry(dim, index).collection
        if coll is None:
            raise NoCollection(f"no collection stored for {(dim, index)}")
        return list(coll)

    def contraction_list(self, dim: int) -> list[tuple[int, int]]:
        return sorted(
            ((s, t) for (d, s), e in self.entries.items() if d == dim for t in e.contractions),
            key=lambda st: (-st[0], -st[1]),
        )

    def _edge_maps(self, source: Key, target: Key) -> ContractionMaps:
        Xs = self.smooth_fano(*source)
        Xt = self.smooth_fano(*target)
        if source == target:
            matching = list(range(Xs.n_rays))
        else:
            try:
                matching = self.entries[source].contractions[target[1]]
            except KeyError:
                raise NoSuchEdge(f"no contraction {source} -> {target}") from None
        n = Xs.dim
        divisor_map = [[int(j == m) for j in range(Xs.n_rays)] for m in matching]
        image = lattice.matmul(Xt.deg, divisor_map, Xs.n_rays)
        picard = lattice.matmul(image, Xs.section, Xs.cl_rank)
        maps = ContractionMaps(lattice.identity(n), divisor_map, picard)
        check_square(Xs, Xt, maps)
        return maps

    def contraction_maps(self, source: Key, target: Key) -> ContractionMaps:
        """Maps for an edge, or the composite along a path of edges."""
        path = self._path(source, target)
        maps = self._edge_maps(path[0], path[0])
        for a, b in zip(path, path[1:]):
            step = self._edge_maps(a, b)
            maps = ContractionMaps(
                lattice.matmul(step.character_map, maps.character_map),
                lattice.matmul(step.divisor_map, maps.divisor_map, self.smooth_fano(*source).n_rays),
                lattice.matmul(step.picard_map, maps.picard_map, self.smooth_fano(*source).cl_rank),
            )
        check_square(self.smooth_fano(*source), self.smooth_fano(*target), maps)
        return maps

    def _path(self, source: Key, target: Key) -> list[Key]:
        self.entry(*source)
        self.entry(*target)
        if source[0] != target[0]:
            raise NoSuchEdge("contractions preserve dimension")
        prev = {source: None}
        todo = deque([source])
        while todo:
            k = todo.popleft()
            if k == target:
                break
            for t in sorted(self.entries[k].contractions):
                nk = (k[0], t)
                if nk not in prev:
                    prev[nk] = k
                    todo.append(nk)
        if target not in prev:
            raise NoSuchEdge(f"{target} is not reachable from {source} by contractions")
        path = [target]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return path[::-1]

    def to_records(self) -> list[dict]:
        out = []
        for key, e in sorted(self.entries.items()):
            rec = {"key": list(key)}
            if e.name:
                rec["name"] = e.name
            rec.update(e.variety.to_dict())
            if e.collection is not None:
                rec["collection"] = [list(c) for c in e.collection]
            if e.contractions:
                rec["contractions"] = [
                    {"target": t, "ray_matching": m} for t, m in sorted(e.contractions.items())
                ]
            out.append(rec)
        return out


def check_square(Xs: ToricVariety, Xt: ToricVariety, maps: ContractionMaps) -> None:
    lhs = lattice.matmul(Xt.deg, maps.divisor_map, Xs.n_rays)
    rhs = lattice.matmul(maps.picard_map, Xs.deg, Xs.n_rays)
    if lhs != rhs:
        raise NonCommuting("deg_target . divisor_map != picard_map . deg_source")
    lhs = lattice.matmul(maps.divisor_map, Xs.fan.ray_matrix(), Xs.dim)
    rhs = lattice.matmul(Xt.fan.ray_matrix(), maps.character_map, Xs.dim)
    if lhs != rhs:
        raise NonCommuting("divisor_map does not restrict to the character map")


def image_collection(coll: Sequence[Sequence[int]], maps: ContractionMaps) -> list[DivisorClass]:
    """Images under the Picard map, deduplicated in order of first occurrence."""
    out = []
    for c in coll:
        v = tuple(lattice.matvec(maps.picard_map, c))
        if v not in out:
            out.append(v)
    return out


_default: Optional[FanoDatabase] = None
_default_path: Optional[str] = None
_lock = threading.Lock()


def load_database(path: Optional[str] = None, self_test: bool = True) -> FanoDatabase:
    if path is None:
        text = resources.files("torquiv").joinpath("data/fano_db.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    db = FanoDatabase(json.loads(text))
    if self_test:
        db.self_test()
    return db


def default_database(path: Optional[str] = None) -> FanoDatabase:
    """Database from ``path``, else $TORQUIV_DB_PATH, else the embedded copy.

    Loaded once per path and validated on load.
    """
    global _default, _default_path
    path = path or os.environ.get(ENV_VAR) or None
    with _lock:
        if _default is None or _default_path != path:
            _default = load_database(path)
            _default_path = path
        return _default


def smooth_fano(dim: int, index: int) -> ToricVariety:
    return default_database().smooth_fano(dim, index)


def full_str_exc_coll(dim: int, index: int) -> list[DivisorClass]:
    return default_database().full_str_exc_coll(dim, index)


def contraction_list(dim: int) -> list[tuple[int, int]]:
    return default_database().contraction_list(dim)


def contraction_maps(source: Key, target: Key) -> ContractionMaps:
    return default_database().contraction_maps(source, target)


def do_higher_self_exts_vanish_chain(Q, chain: Sequence[int], p: Optional[int] = None,
                                     db: Optional[FanoDatabase] = None) -> bool:
    """Push the collection down each contraction in ``chain`` and check it.

    ``chain[0]`` must be the database index of Q's variety. With ``p`` the
    twisted condition is checked with the anticanonical class of each
    target variety.
    """
    db = db or default_database()
    X = Q.variety
    if X.key is None:
        raise ValueError("quiver's variety is not a database entry")
    chain = [int(t) for t in chain]
    if not chain or chain[0] != X.key[1]:
        raise ValueError(f"chain must start at {X.key[1]}")
    dim = X.key[0]
    image = list(Q.vertices)
    prev = chain[0]
    for t in chain:
        maps = db.contraction_maps((dim, prev), (dim, t))
        Xt = db.smooth_fano(dim, t)
        image = image_collection(image, maps)
        prev = t
        if not twisted_classes_vanish(Xt, image, p or 0):
            return False
    return True
