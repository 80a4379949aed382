"""Component classification into the named shapes the theory predicts.

Components are Isolated, Complete(d), CompleteBipartite(a, b) or Other; a
single edge is always reported as CompleteBipartite(1, 1) and a one-vertex
complete block as Isolated, so reports compare canonically.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graph import (INF, NTotalGraph, component_diameters, components,
                    diameter, girth)

__all__ = [
    "ComponentClass",
    "StructureReport",
    "classify_component",
    "decompose",
    "is_totally_disconnected",
    "isolated",
    "complete",
    "complete_bipartite",
    "other",
]


@dataclass(frozen=True, order=True)
class ComponentClass:
    kind: str  # isolated | complete | complete_bipartite | other
    a: int = 0  # complete: size; bipartite: small part; other: size
    b: int = 0  # bipartite: large part; other: edge count

    def display(self) -> str:
        if self.kind == "isolated":
            return "K1"
        if self.kind == "complete":
            return f"K{self.a}"
        if self.kind == "complete_bipartite":
            return f"K_{{{self.a},{self.b}}}"
        return f"Other(v={self.a},e={self.b})"

    @property
    def size(self) -> int:
        if self.kind == "isolated":
            return 1
        if self.kind == "complete_bipartite":
            return self.a + self.b
        return self.a


def isolated() -> ComponentClass:
    return ComponentClass("isolated", 1, 0)


def complete(d: int) -> ComponentClass:
    """K_d, canonicalized: K_1 is Isolated and K_2 is K_{1,1}."""
    if d <= 1:
        return isolated()
    if d == 2:
        return ComponentClass("complete_bipartite", 1, 1)
    return ComponentClass("complete", d, 0)


def complete_bipartite(a: int, b: int) -> ComponentClass:
    a, b = sorted((a, b))
    if a == 0:
        return isolated() if b <= 1 else ComponentClass("other", b, 0)
    return ComponentClass("complete_bipartite", a, b)


def other(size: int, edges: int) -> ComponentClass:
    return ComponentClass("other", size, edges)


def classify_component(g: NTotalGraph, verts) -> ComponentClass:
    """Classify a connected component given by its vertex set.

    Raises if the set is not actually a component (an edge leaves it, or it
    is not internally connected).
    """
    verts = np.asarray(sorted(int(v) for v in verts), dtype=np.int64)
    size = verts.size
    if size == 0:
        raise ValueError("empty vertex set")
    rows = np.unpackbits(g._bits[verts], axis=1, count=g.order).astype(bool)
    inside = np.zeros(g.order, dtype=bool)
    inside[verts] = True
    leaving = rows & ~inside
    if leaving.any():
        i, j = np.argwhere(leaving)[0]
        raise ValueError(
            f"not a component: edge from vertex {int(verts[i])} leaves the set "
            f"toward {int(j)}")
    sub = rows[:, verts]
    if size == 1:
        return isolated()
    # connectivity inside the set
    seen = np.zeros(size, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = sub[frontier].any(axis=0) & ~seen
        frontier = np.nonzero(nxt)[0]
        seen |= nxt
    if not seen.all():
        raise ValueError("not a component: the vertex set is internally disconnected")

    edge_cnt = int(sub.sum()) // 2
    if edge_cnt == size * (size - 1) // 2:
        return complete(size)
    # try a 2-coloring
    color = np.full(size, -1, dtype=np.int64)
    color[0] = 0
    frontier = np.array([0])
    ok = True
    while frontier.size and ok:
        nxt = []
        for u in frontier:
            for w in np.nonzero(sub[u])[0]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    nxt.append(w)
                elif color[w] == color[u]:
                    ok = False
        frontier = np.asarray(nxt, dtype=np.int64)
    if ok:
        na = int((color == 0).sum())
        nb = size - na
        if edge_cnt == na * nb:
            return complete_bipartite(na, nb)
    return other(size, edge_cnt)


@dataclass(frozen=True)
class StructureReport:
    classes: tuple[ComponentClass, ...]  # sorted multiset
    connected: bool
    totally_disconnected: bool
    diameter: float
    girth: float
    component_diameters: tuple[int, ...]
    vertex_count: int
    edge_count: int

    def same_structure(self, other: "StructureReport") -> bool:
        """Report equality used when comparing against closed-form predictions:
        sorted class multisets, connectivity flags, diameter and girth."""
        return (self.classes == other.classes
                and self.connected == other.connected
                and self.totally_disconnected == other.totally_disconnected
                and self.diameter == other.diameter
                and self.girth == other.girth)

    def class_counts(self) -> list[tuple[ComponentClass, int]]:
        counts = Counter(self.classes)
        return sorted(counts.items())

    def summary(self) -> str:
        if not self.classes:
            return "empty"
        parts = []
        for cls, cnt in self.class_counts():
            parts.append(cls.display() if cnt == 1 else f"{cnt}x{cls.display()}")
        return " + ".join(parts)

    def to_json_dict(self) -> dict:
        def num(x):
            return "inf" if x == INF else int(x)

        return {
            "classes": [
                {"kind": cls.kind, "sizes": [cls.a, cls.b], "count": cnt}
                for cls, cnt in self.class_counts()
            ],
            "connected": self.connected,
            "totally_disconnected": self.totally_disconnected,
            "diameter": num(self.diameter),
            "girth": num(self.girth),
            "component_diameters": [int(d) for d in self.component_diameters],
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "summary": self.summary(),
        }


def class_multiset(classes) -> tuple[ComponentClass, ...]:
    return tuple(sorted(classes))


def decompose(g: NTotalGraph) -> StructureReport:
    """Full structural report: classified components plus metric invariants."""
    comps = components(g)
    classes = class_multiset(classify_component(g, comp) for comp in comps)
    return StructureReport(
        classes=classes,
        connected=len(comps) <= 1,
        totally_disconnected=g.edge_count == 0,
        diameter=diameter(g),
        girth=girth(g),
        component_diameters=tuple(component_diameters(g)),
        vertex_count=g.order,
        edge_count=g.edge_count,
    )


def is_totally_disconnected(g: NTotalGraph) -> bool:
    return g.edge_count == 0
