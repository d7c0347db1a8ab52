"""Graph representation, connectivity and coloring evaluation.

Vertices are dense integers ``0..n-1``.  A :class:`Graph` is immutable once
built.  Parallel edges are allowed only when ``multi=True``; that mode exists
for the configuration-model graphs that are fed to :func:`line_graph`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs, colorings or vertex sets."""


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


class Graph:
    """Undirected graph without loops.

    ``edges`` is kept sorted with ``u < v``; in a multigraph an edge of
    multiplicity k appears k times.  ``adj`` holds the simple-graph view
    (sorted, duplicate free).  ``embedding``, when given, is a rotation system:
    for every vertex a cyclic order of its neighbors.
    """

    __slots__ = ("n", "edges", "adj", "embedding", "multiplicity")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), embedding=None, multi: bool = False):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            norm.append((u, v) if u < v else (v, u))
        norm.sort()
        counts = Counter(norm)
        if not multi and len(counts) != len(norm):
            dup = next(e for e, c in counts.items() if c > 1)
            raise GraphError(f"parallel edge {dup} in a simple graph")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in counts:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = tuple(norm)
        self.adj = tuple(tuple(sorted(a)) for a in nbrs)
        self.multiplicity = {e: c for e, c in counts.items() if c > 1}
        self.embedding = None
        if embedding is not None:
            rot = tuple(tuple(int(x) for x in r) for r in embedding)
            if len(rot) != n:
                raise GraphError("embedding must list a rotation for every vertex")
            for v, r in enumerate(rot):
                if sorted(r) != list(self.adj[v]):
                    raise GraphError(f"rotation at vertex {v} is not a permutation of its neighbors")
            self.embedding = rot

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_multi(self) -> bool:
        return bool(self.multiplicity)

    def degree(self, v: int) -> int:
        """Degree counting parallel edges."""
        return sum(self.multiplicity.get((min(u, v), max(u, v)), 1) for u in self.adj[v])

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``.

        Returns ``(sub, labels)`` where sub-vertex ``i`` is ``labels[i]`` in
        this graph.  Rotations are restricted, which keeps a planar embedding
        planar.
        """
        labels = sorted(set(vertices))
        self._check_vertices(labels)
        index = {v: i for i, v in enumerate(labels)}
        edges = []
        for u, v in self.edges:
            if u in index and v in index:
                edges.append((index[u], index[v]))
        emb = None
        if self.embedding is not None:
            emb = [[index[w] for w in self.embedding[v] if w in index] for v in labels]
        return Graph(len(labels), edges, embedding=emb, multi=self.is_multi), labels

    def simple(self) -> "Graph":
        """The simple graph underlying a multigraph."""
        if not self.is_multi:
            return self
        return Graph(self.n, sorted(set(self.edges)), embedding=self.embedding)

    def _check_vertices(self, vs: Iterable[int]) -> None:
        for v in vs:
            if not (0 <= v < self.n):
                raise GraphError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges and self.embedding == other.embedding

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}{', multi' if self.is_multi else ''})"


def require_simple(g: Graph) -> None:
    if g.is_multi:
        raise GraphError("operation requires a simple graph; got parallel edges")


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> color in ``0..t-1``."""

    colors: tuple
    t: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))
        if self.t < 1:
            raise GraphError("a coloring needs at least one color")
        for v, c in enumerate(self.colors):
            if not (0 <= c < self.t):
                raise GraphError(f"vertex {v} has color {c} outside 0..{self.t - 1}")

    def __len__(self):
        return len(self.colors)

    def __getitem__(self, v):
        return self.colors[v]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.t)]
        for v, c in enumerate(self.colors):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class ComponentReport:
    components: tuple  # per color: tuple of sorted vertex tuples
    max_component_size: int
    per_color_max: tuple

    def largest(self) -> tuple:
        """A component attaining ``max_component_size`` (empty for n = 0)."""
        best = ()
        for comps in self.components:
            for c in comps:
                if len(c) > len(best):
                    best = c
        return best


def components(g: Graph, s: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of ``g[s]`` (all of ``g`` when ``s`` is None).

    Components are sorted lists, ordered by their smallest vertex, so the
    output does not depend on the order in which ``s`` is enumerated.
    """
    if s is None:
        members = list(range(g.n))
    else:
        members = sorted(set(s))
        g._check_vertices(members)
    inside = bytearray(g.n)
    for v in members:
        inside[v] = 1
    uf = UnionFind(g.n)
    for u, v in g.edges:
        if inside[u] and inside[v]:
            uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in members:
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def max_mono_component(g: Graph, c: Coloring) -> ComponentReport:
    """Decompose every color class of ``c`` into connected components."""
    require_simple(g)
    if len(c) != g.n:
        raise GraphError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    uf = UnionFind(g.n)
    colors = c.colors
    for u, v in g.edges:
        if colors[u] == colors[v]:
            uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(uf.find(v), []).append(v)
    per_color: list[list[tuple]] = [[] for _ in range(c.t)]
    for comp in sorted(groups.values(), key=lambda x: x[0]):
        per_color[colors[comp[0]]].append(tuple(comp))
    per_max = tuple(max((len(x) for x in comps), default=0) for comps in per_color)
    return ComponentReport(
        components=tuple(tuple(comps) for comps in per_color),
        max_component_size=max(per_max, default=0),
        per_color_max=per_max,
    )


def line_graph(h: Graph) -> tuple[Graph, tuple]:
    """Line graph of ``h`` (which may have parallel edges).

    Vertex ``i`` of the result is the edge ``h.edges[i]``; the returned tuple
    is that edge list.  Parallel copies are distinct vertices joined to each
    other, so the output is always simple.
    """
    if h.m == 0:
        raise GraphError("line graph of an edgeless graph is empty")
    incident: list[list[int]] = [[] for _ in range(h.n)]
    for i, (u, v) in enumerate(h.edges):
        incident[u].append(i)
        incident[v].append(i)
    pairs = set()
    for inc in incident:
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                pairs.add((inc[a], inc[b]))
    return Graph(h.m, pairs), h.edges


def _edges_within(g: Graph, s: set[int]) -> int:
    return sum(1 for u, v in g.edges if u in s and v in s)


def avg_degree(g: Graph, s: Iterable[int] | None = None) -> Fraction:
    """Exact average degree ``2|E(g[s])| / |s|``; parallel edges count."""
    members = set(range(g.n)) if s is None else set(s)
    if not members:
        raise GraphError("average degree of an empty vertex set")
    g._check_vertices(members)
    return Fraction(2 * _edges_within(g, members), len(members))


def line_graph_avg_degree(h: Graph, f: Iterable[int]) -> Fraction:
    """Average degree of ``L(K)`` for ``K = (endpoints of f, f)``.

    ``f`` holds indices into ``h.edges``.  Computed from vertex degrees as
    ``sum_u deg_K(u) * (deg_K(u) - 1) / |f|``.  A bundle of k parallel edges
    is counted at both of its endpoints, so ``k * (k - 1)`` is taken back
    per bundle to match the simple line graph.
    """
    idx = sorted(set(f))
    if not idx:
        raise GraphError("edge set must be nonempty")
    for i in idx:
        if not (0 <= i < h.m):
            raise GraphError(f"edge index {i} out of range")
    deg: Counter = Counter()
    bundles: Counter = Counter()
    for i in idx:
        u, v = h.edges[i]
        deg[u] += 1
        deg[v] += 1
        bundles[(u, v)] += 1
    total = sum(d * (d - 1) for d in deg.values())
    total -= sum(k * (k - 1) for k in bundles.values())
    return Fraction(total, len(idx))


def edge_subgraph(h: Graph, f: Iterable[int]) -> Graph:
    """``(V(f), f)`` relabelled onto ``0..k-1`` (keeps multiplicities)."""
    idx = sorted(set(f))
    verts = sorted({x for i in idx for x in h.edges[i]})
    index = {v: j for j, v in enumerate(verts)}
    return Graph(len(verts), [(index[h.edges[i][0]], index[h.edges[i][1]]) for i in idx], multi=True)
