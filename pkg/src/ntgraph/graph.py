"""Construction of n-total graphs and exact metric invariants.

Vertices are ring element indices; x and y are adjacent iff x != y and
x**n + y**n lies in the ideal union D.  Adjacency is stored as a packed
symmetric bitset (one bit per ordered pair, rows byte-aligned), so graphs up
to the desk-scale bound of 2**16 vertices stay addressable.  All metrics are
exact BFS computations; nothing is approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .ideals import IdealUnion
from .rings import RingBackend, RingError

__all__ = [
    "INF",
    "ORDER_BOUND",
    "GraphMeta",
    "NTotalGraph",
    "PathResult",
    "build_graph",
    "build_graph_reference",
    "induced_subgraph",
    "components",
    "diameter",
    "component_diameters",
    "girth",
    "shortest_path",
    "bfs_levels",
    "export_dot",
    "graph_to_json_dict",
]

INF = math.inf
ORDER_BOUND = 2 ** 16
_BOOL_CACHE_MAX = 8192  # cache a dense bool matrix up to this many vertices
_BUILD_CHUNK_CELLS = 1 << 22  # pair cells materialized per build chunk


@dataclass(frozen=True)
class GraphMeta:
    ring: str
    ideal: str
    n: int
    subset: str = "full"  # full | D | complement


@dataclass(frozen=True)
class PathResult:
    start: int
    end: int
    length: float  # edge count, or INF when unreachable
    vertices: tuple[int, ...] | None  # present iff length is finite


class NTotalGraph:
    """Simple undirected graph on dense vertex indices with packed adjacency."""

    def __init__(self, order: int, bits: np.ndarray, labels, meta: GraphMeta,
                 in_d: np.ndarray):
        self.order = order
        self._row_bytes = (order + 7) // 8
        assert bits.shape == (order, self._row_bytes)
        bits.setflags(write=False)
        self._bits = bits
        self.labels = tuple(labels)
        self.meta = meta
        in_d = np.asarray(in_d, dtype=bool)
        in_d.setflags(write=False)
        self.in_d = in_d
        self._bool = None

    # -- adjacency access ---------------------------------------------------
    def edge(self, i: int, j: int) -> bool:
        return bool((self._bits[i, j >> 3] >> (7 - (j & 7))) & 1)

    def neighbors_mask(self, i: int) -> np.ndarray:
        return np.unpackbits(self._bits[i], count=self.order).astype(bool)

    def adjacency_bool(self) -> np.ndarray:
        """Dense boolean adjacency; cached for graphs small enough to afford it."""
        if self._bool is None:
            m = np.unpackbits(self._bits, axis=1, count=self.order).astype(bool)
            m.setflags(write=False)
            if self.order <= _BOOL_CACHE_MAX:
                self._bool = m
            else:
                return m
        return self._bool

    @property
    def degrees(self) -> np.ndarray:
        d = getattr(self, "_degrees", None)
        if d is None:
            # popcount per row via the unpacked table on bytes
            d = np.unpackbits(self._bits, axis=1, count=self.order).sum(axis=1)
            self._degrees = d
        return d

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def edges(self):
        """Yield edges (i, j) with i < j, lexicographically sorted."""
        for i in range(self.order):
            row = self.neighbors_mask(i)
            for j in np.nonzero(row[i + 1:])[0]:
                yield i, int(j) + i + 1

    def label_edge_set(self) -> frozenset[frozenset]:
        return frozenset(frozenset((self.labels[i], self.labels[j]))
                         for i, j in self.edges())

    def __repr__(self):
        return (f"<NTotalGraph {self.meta.ring} D={self.meta.ideal} n={self.meta.n} "
                f"subset={self.meta.subset} V={self.order} E={self.edge_count}>")


def build_graph(ring: RingBackend, D: IdealUnion, n: int) -> NTotalGraph:
    """Brute-force n-total graph: x ~ y iff x != y and x**n + y**n in D.

    x**n is computed once per vertex; membership tests are vectorized over
    row chunks so memory stays bounded for large orders.
    """
    if n < 1:
        raise RingError(f"exponent must be >= 1, got {n}")
    if D.ring is not ring:
        raise RingError("ideal union lives in a different ring")
    V = ring.order
    if V > ORDER_BOUND:
        raise RingError(f"ring order {V} exceeds the graph bound {ORDER_BOUND}")
    xn = ring.pow_vec(np.arange(V, dtype=np.int64), n)
    dmask = D.mask()
    row_bytes = (V + 7) // 8
    bits = np.empty((V, row_bytes), dtype=np.uint8)
    chunk = max(1, _BUILD_CHUNK_CELLS // max(V, 1))
    for i0 in range(0, V, chunk):
        i1 = min(V, i0 + chunk)
        rows = dmask[ring.add_vec(xn[i0:i1, None], xn[None, :])]
        rows[np.arange(i1 - i0), np.arange(i0, i1)] = False  # simple graph
        bits[i0:i1] = np.packbits(rows, axis=1)
    labels = [ring.label(i) for i in range(V)]
    meta = GraphMeta(ring=ring.describe(), ideal=D.describe(), n=n)
    return NTotalGraph(V, bits, labels, meta, dmask.copy())


def build_graph_reference(ring: RingBackend, D: IdealUnion, n: int) -> set[tuple[int, int]]:
    """Pure scalar-arithmetic edge set, kept as the slow reference route for
    agreement tests and benchmarks; O(V^2) Python, so capped."""
    V = ring.order
    if V > 2048:
        raise RingError("the reference builder is for small rings only")
    powers = [ring.pow(a, n) for a in range(V)]
    edges = set()
    for x in range(V):
        for y in range(x + 1, V):
            if D.membership(ring.add(powers[x], powers[y])):
                edges.add((x, y))
    return edges


# ---------------------------------------------------------------------------
# traversal and metrics


def bfs_levels(g: NTotalGraph, source: int) -> np.ndarray:
    """BFS distance from source to every vertex; -1 where unreachable."""
    levels = np.full(g.order, -1, dtype=np.int64)
    levels[source] = 0
    frontier = np.array([source], dtype=np.int64)
    lvl = 0
    while frontier.size:
        acc = np.bitwise_or.reduce(g._bits[frontier], axis=0)
        nxt = np.unpackbits(acc, count=g.order).astype(bool)
        nxt &= levels < 0
        frontier = np.nonzero(nxt)[0]
        lvl += 1
        levels[frontier] = lvl
    return levels


def components(g: NTotalGraph) -> list[np.ndarray]:
    """Connected components as sorted index arrays, ordered by smallest member."""
    seen = np.zeros(g.order, dtype=bool)
    out = []
    for seed in range(g.order):
        if seen[seed]:
            continue
        levels = bfs_levels(g, seed)
        comp = np.nonzero(levels >= 0)[0]
        seen[comp] = True
        out.append(comp)
    return out


def diameter(g: NTotalGraph) -> float:
    """Supremum of pairwise distances: 0 for a single vertex, INF when the
    graph is disconnected with at least two vertices."""
    if g.order == 1:
        return 0
    comps = components(g)
    if len(comps) > 1:
        return INF
    best = 0
    for s in range(g.order):
        best = max(best, int(bfs_levels(g, s).max()))
    return best


def component_diameters(g: NTotalGraph) -> list[int]:
    """Diameter of each component separately, in component order."""
    out = []
    for comp in components(g):
        if comp.size == 1:
            out.append(0)
            continue
        ecc = 0
        for s in comp:
            levels = bfs_levels(g, int(s))
            ecc = max(ecc, int(levels[comp].max()))
        out.append(ecc)
    return out


_MATMUL_GIRTH_MAX = 4096


def girth(g: NTotalGraph) -> float:
    """Length of the shortest cycle, INF for forests.

    Triangles and 4-cycles, which dominate in practice, are detected with one
    boolean matrix product; longer cycles fall back to per-source BFS.
    """
    if g.edge_count == 0:
        return INF
    if g.order <= _MATMUL_GIRTH_MAX:
        A = g.adjacency_bool().astype(np.float32)
        common = A @ A  # common-neighbor counts
        if bool((common.astype(bool) & A.astype(bool)).any()):
            return 3
        np.fill_diagonal(common, 0.0)
        if bool((common >= 2).any()):
            return 4
        return _girth_bfs(g, floor=5)
    return _girth_bfs(g, floor=3)


def _girth_bfs(g: NTotalGraph, floor: int) -> float:
    """Exact girth by BFS from every vertex of degree >= 2.

    From source s, an edge inside BFS level l closes a cycle of length 2l+1
    and a vertex at level l+1 with two neighbors at level l closes one of
    length 2l+2; the minimum over all sources is the girth.
    """
    best = INF
    degs = g.degrees
    for s in range(g.order):
        if degs[s] < 2:
            continue  # not on any cycle
        levels = bfs_levels(g, s)
        reach = levels[levels > 0]
        if reach.size == 0:
            continue
        for lvl in range(1, int(reach.max()) + 1):
            if 2 * lvl - 1 >= best:
                break
            here = np.nonzero(levels == lvl)[0]
            sub = np.unpackbits(g._bits[here], axis=1, count=g.order).astype(bool)
            if sub[:, here].any():
                best = min(best, 2 * lvl + 1)
            below = np.nonzero(levels == lvl - 1)[0]
            if lvl >= 2 and (sub[:, below].sum(axis=1) >= 2).any():
                best = min(best, 2 * lvl)
        if best <= floor:
            return best
    return best


def shortest_path(g: NTotalGraph, u: int, v: int) -> PathResult:
    """A shortest path from u to v; ties broken toward the smallest-index
    neighbor at every step, so the witness is deterministic."""
    levels = bfs_levels(g, v)
    if levels[u] < 0:
        return PathResult(u, v, INF, None)
    path = [u]
    cur = u
    while cur != v:
        candidates = g.neighbors_mask(cur) & (levels == levels[cur] - 1)
        cur = int(np.nonzero(candidates)[0][0])
        path.append(cur)
    return PathResult(u, v, len(path) - 1, tuple(path))


def induced_subgraph(g: NTotalGraph, which: str) -> tuple[NTotalGraph, np.ndarray]:
    """Subgraph induced on the D vertices ("D") or their complement
    ("complement"); returns (subgraph, original-index map)."""
    if which == "D":
        sel = g.in_d
    elif which == "complement":
        sel = ~g.in_d
    else:
        raise ValueError(f'which must be "D" or "complement", got {which!r}')
    idx = np.nonzero(sel)[0]
    if idx.size == 0:
        bits = np.zeros((0, 0), dtype=np.uint8)
    else:
        rows = np.unpackbits(g._bits[idx], axis=1, count=g.order)[:, idx]
        bits = np.packbits(rows.astype(bool), axis=1)
    labels = [g.labels[i] for i in idx]
    meta = replace(g.meta, subset=which)
    sub = NTotalGraph(int(idx.size), bits, labels, meta, g.in_d[idx])
    return sub, idx


# ---------------------------------------------------------------------------
# export


def export_dot(g: NTotalGraph, notes=()) -> str:
    """Graphviz DOT text with deterministic vertex and edge order."""
    lines = ["graph ntg {"]
    lines.append(f'  // ring={g.meta.ring} D={g.meta.ideal} n={g.meta.n} '
                 f'subset={g.meta.subset}')
    for note in notes:
        lines.append(f"  // {note}")
    for i in range(g.order):
        lines.append(f'  v{i} [label="{g.labels[i]}"];')
    for i, j in g.edges():
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json_dict(g: NTotalGraph, notes=()) -> dict:
    out = {
        "ring": g.meta.ring,
        "ideal": g.meta.ideal,
        "n": g.meta.n,
        "subset": g.meta.subset,
        "vertices": list(g.labels),
        "edges": [[i, j] for i, j in g.edges()],
    }
    if notes:
        out["notes"] = list(notes)
    return out
