"""Quivers of sections for collections of rank one reflexive sheaves."""

from __future__ import annotations

import heapq
import json
import warnings
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadLabelDegree, BadOrientation, CyclicHoms, DuplicateClass, NonLineBundleWarning
from .sections import Monomial, class_of, format_monomial, hom_basis, hom_dimension, monomial_key
from .toric import DivisorClass, ToricVariety, is_line_bundle


@dataclass(frozen=True)
class Arrow:
    index: int  # 1-based, as displayed
    source: int
    target: int
    label: Monomial

    def __str__(self) -> str:
        return f"arrow_{self.index}"


def source(a: Arrow) -> int:
    return a.source


def target(a: Arrow) -> int:
    return a.target


def label(a: Arrow) -> Monomial:
    return a.label


def index(a: Arrow) -> int:
    return a.index


def _sub(u, v):
    return tuple(x - y for x, y in zip(u, v))


class QuiverOfSections:
    """Vertices are classes in Cl(X), arrows are irreducible sections.

    Build one with :func:`quiver_of_sections` or :func:`quiver_from_data`.
    """

    def __init__(self, variety: ToricVariety, vertices: Sequence[DivisorClass], arrows: Iterable[Arrow]):
        self.variety = variety
        self.vertices: tuple[DivisorClass, ...] = tuple(tuple(v) for v in vertices)
        self.arrows: tuple[Arrow, ...] = tuple(arrows)
        adjacency = defaultdict(list)
        for a in self.arrows:
            adjacency[a.source, a.target].append(a)
        self._adjacency = dict(adjacency)
        self.non_line_bundles: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuiverOfSections)
            and self.variety is other.variety
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __repr__(self) -> str:
        return f"<QuiverOfSections: {len(self.vertices)} vertices, {len(self.arrows)} arrows>"

    def arrows_between(self, i: int, j: int) -> list[Arrow]:
        return list(self._adjacency.get((i, j), ()))

    def arrows_from(self, i: int) -> dict[int, list[Arrow]]:
        out = {}
        for j in range(len(self.vertices)):
            if (i, j) in self._adjacency:
                out[j] = self._adjacency[i, j]
        return out

    def vertex_block(self, i: int) -> str:
        """Text in the layout of Macaulay2's ``Q#i``."""
        lines = [
            f"{j} => {{{', '.join(format_monomial(a.label) for a in arrows)}}}"
            for j, arrows in self.arrows_from(i).items()
        ]
        lines.append("degree => {" + ", ".join(map(str, self.vertices[i])) + "}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "arrows": [
                {"index": a.index - 1, "source": a.source, "target": a.target, "label": list(a.label)}
                for a in self.arrows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  {i} [label="{i}: ({",".join(map(str, v))})"];')
        for a in self.arrows:
            lines.append(f'  {a.source} -> {a.target} [label="{format_monomial(a.label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def export(Q: QuiverOfSections, fmt: str = "json") -> str:
    if fmt == "json":
        return Q.to_json()
    if fmt == "dot":
        return Q.to_dot()
    raise ValueError(f"unknown export format {fmt!r}")


def order_vertices(X: ToricVariety, classes: Sequence[Sequence[int]]) -> list[DivisorClass]:
    """Order classes so that Hom(L_j, L_i) = 0 whenever i < j.

    Among classes that are free to go next, the zero class goes first and
    otherwise the earliest in the input wins.
    """
    classes = [tuple(c) for c in classes]
    if len(set(classes)) != len(classes):
        raise DuplicateClass("classes must be pairwise distinct")
    n = len(classes)
    succ = defaultdict(list)
    indeg = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            fwd = hom_dimension(X, _sub(classes[j], classes[i])) > 0
            bwd = hom_dimension(X, _sub(classes[i], classes[j])) > 0
            if fwd and bwd:
                raise CyclicHoms(f"nonzero maps both ways between {classes[i]} and {classes[j]}")
            if fwd:
                succ[i].append(j)
                indeg[j] += 1
            elif bwd:
                succ[j].append(i)
                indeg[i] += 1
    zero = tuple([0] * X.cl_rank)
    heap = [(classes[i] != zero, i) for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(classes[i])
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (classes[j] != zero, j))
    return order


def _divides(m, h) -> bool:
    return all(x <= y for x, y in zip(m, h))


def quiver_of_sections(X: ToricVariety, classes: Sequence[Sequence[int]]) -> QuiverOfSections:
    """Quiver whose arrows i -> j are the sections of L_j - L_i that do not
    factor through an intermediate vertex.

    Every Hom space has a monomial basis and composition is multiplication,
    so a basis of the cokernel of the composition map is the set of
    monomials that are not a product of two nonconstant sections.
    """
    vertices = order_vertices(X, classes)
    n = len(vertices)
    bases = {
        (i, j): hom_basis(X, _sub(vertices[j], vertices[i]))
        for i in range(n)
        for j in range(i + 1, n)
    }
    raw = []
    for i in range(n):
        for j in range(i + 1, n):
            for h in bases[i, j]:
                factors = any(
                    _divides(m, h) and m != h
                    for k in range(i + 1, j)
                    for m in bases[i, k]
                )
                if not factors:
                    raw.append((i, j, h))
    raw.sort(key=lambda t: (t[0], t[1], monomial_key(t[2])))
    Q = QuiverOfSections(X, vertices, (Arrow(k + 1, s, t, h) for k, (s, t, h) in enumerate(raw)))
    bad = tuple(i for i, v in enumerate(vertices) if not is_line_bundle(X, v))
    if bad:
        Q.non_line_bundles = bad
        warnings.warn(f"vertices {bad} are not line bundles", NonLineBundleWarning, stacklevel=2)
    return Q


def quiver_from_data(X: ToricVariety, vertices: Sequence[Sequence[int]], labelled_arrows) -> QuiverOfSections:
    """Quiver with exactly the given arrows.

    ``labelled_arrows`` holds ``(source, target, label)`` triples; they are
    indexed in the order given.
    """
    vertices = [tuple(v) for v in vertices]
    if len(set(vertices)) != len(vertices):
        raise DuplicateClass("vertex classes must be pairwise distinct")
    arrows = []
    for k, (s, t, lab) in enumerate(labelled_arrows):
        lab = tuple(lab)
        if not (0 <= s < t < len(vertices)):
            raise BadOrientation(f"arrow {s} -> {t} does not go forward")
        if any(x < 0 for x in lab) or len(lab) != X.n_rays:
            raise BadLabelDegree(f"label {lab} is not a monomial")
        if class_of(X, lab) != _sub(vertices[t], vertices[s]):
            raise BadLabelDegree(f"label {format_monomial(lab)} has the wrong degree for {s} -> {t}")
        arrows.append(Arrow(k + 1, s, t, lab))
    return QuiverOfSections(X, vertices, arrows)


def quiver_from_json(X: ToricVariety, text: str) -> QuiverOfSections:
    data = json.loads(text)
    arrows = sorted(data["arrows"], key=lambda a: a["index"])
    return quiver_from_data(X, data["vertices"], [(a["source"], a["target"], a["label"]) for a in arrows])


def _label_product(Q: QuiverOfSections, path) -> Monomial:
    out = [0] * Q.variety.n_rays
    for k in path:
        for r, e in enumerate(Q.arrows[k].label):
            out[r] += e
    return tuple(out)


def paths(Q: QuiverOfSections, max_len: int) -> list[tuple[int, ...]]:
    """Directed paths of length 1..max_len as tuples of arrow positions."""
    out_by_vertex = defaultdict(list)
    for k, a in enumerate(Q.arrows):
        out_by_vertex[a.source].append(k)
    frontier = [(k,) for k in range(len(Q.arrows))]
    found = list(frontier)
    for _ in range(max_len - 1):
        frontier = [p + (k,) for p in frontier for k in out_by_vertex[Q.arrows[p[-1]].target]]
        found.extend(frontier)
    return found


def relations(Q: QuiverOfSections, max_len: int) -> list[tuple[tuple[Arrow, ...], tuple[Arrow, ...]]]:
    """Pairs of parallel paths with equal labels, up to length ``max_len``.

    Pairs sharing a first or last arrow are left out since they follow from
    a shorter relation. This is not claimed to generate the relation ideal.
    """
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    groups = defaultdict(list)
    for p in paths(Q, max_len):
        key = (Q.arrows[p[0]].source, Q.arrows[p[-1]].target, _label_product(Q, p))
        groups[key].append(p)
    out = []
    for key in sorted(groups):
        ps = groups[key]
        for x in range(len(ps)):
            for y in range(x + 1, len(ps)):
                p, q = ps[x], ps[y]
                if p[0] == q[0] or p[-1] == q[-1]:
                    continue
                out.append((tuple(Q.arrows[k] for k in p), tuple(Q.arrows[k] for k in q)))
    return out
