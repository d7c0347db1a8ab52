"""Balanced vertex separators.

A set ``C`` separates ``G`` when no component of ``G - C`` has more than
``BALANCE * n`` vertices.  Three providers are available:

* :func:`planar_separator` - fundamental cycle of a shortest-path tree in a
  triangulation of the embedded graph, plus single BFS levels as extra
  candidates.
* :func:`treewidth_separator` - centroid bag of a supplied tree decomposition.
* :func:`fallback_separator` - BFS level bisection for unstructured graphs.

Every provider prunes redundant vertices greedily and returns a result that
passes :func:`verify_separator`.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, GraphError, UnionFind, components, is_connected, require_simple

BALANCE = Fraction(2, 3)


class SeparatorError(GraphError):
    """A provider could not produce a separator for its input."""


@dataclass(frozen=True)
class SeparatorResult:
    separator: tuple
    components: tuple
    n: int

    @property
    def size(self) -> int:
        return len(self.separator)

    @property
    def balance(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(max((len(c) for c in self.components), default=0), self.n)


@dataclass(frozen=True)
class SeparatorProfile:
    """Claimed guarantee: separators of size at most ``K * n**gamma``."""

    K: Fraction
    gamma: Fraction
    provider: str = "planar"

    def __post_init__(self):
        object.__setattr__(self, "K", Fraction(self.K))
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        if self.K <= 0:
            raise ValueError("K must be positive")
        if not (0 <= self.gamma < 1):
            raise ValueError("gamma must lie in [0, 1)")

    def allows(self, n: int, size: int) -> bool:
        return size <= float(self.K) * n ** float(self.gamma) * (1 + 1e-12)


@dataclass(frozen=True)
class SeparatorCheck:
    ok: bool
    reason: str = ""
    balance: Fraction = Fraction(0)

    def __bool__(self):
        return self.ok


def separator_result(g: Graph, sep: Iterable[int]) -> SeparatorResult:
    sep = sorted(set(sep))
    rest = sorted(set(range(g.n)) - set(sep))
    comps = components(g, rest)
    return SeparatorResult(tuple(sep), tuple(tuple(c) for c in comps), g.n)


def verify_separator(g: Graph, r: SeparatorResult, balance: Fraction = BALANCE) -> SeparatorCheck:
    """Check every clause of the separator definition; never raises."""
    if r.n != g.n:
        return SeparatorCheck(False, f"result is for n={r.n}, graph has n={g.n}")
    seen = [False] * g.n
    for v in list(r.separator) + [x for c in r.components for x in c]:
        if not (0 <= v < g.n):
            return SeparatorCheck(False, f"vertex {v} out of range")
        if seen[v]:
            return SeparatorCheck(False, f"vertex {v} listed twice (not a partition)")
        seen[v] = True
    if not all(seen):
        return SeparatorCheck(False, f"vertex {seen.index(False)} not covered (not a partition)")
    owner = [-1] * g.n
    for i, comp in enumerate(r.components):
        if not comp:
            return SeparatorCheck(False, f"component {i} is empty")
        for v in comp:
            owner[v] = i
    for u, v in g.edges:
        if owner[u] >= 0 and owner[v] >= 0 and owner[u] != owner[v]:
            return SeparatorCheck(False, f"edge ({u}, {v}) joins components {owner[u]} and {owner[v]}")
    for i, comp in enumerate(r.components):
        if len(components(g, comp)) != 1:
            return SeparatorCheck(False, f"component {i} is not connected")
    bal = r.balance
    if bal > balance:
        return SeparatorCheck(False, f"largest component has {bal * g.n} > {balance} * {g.n} vertices", bal)
    return SeparatorCheck(True, "", bal)


def _limit(n: int, balance: Fraction = BALANCE) -> int:
    return math.floor(balance * n)


def prune_separator(g: Graph, sep: Iterable[int], balance: Fraction = BALANCE) -> list[int]:
    """Greedily hand separator vertices back to ``G - C`` while balanced.

    Vertices are tried in order of how many distinct components they would
    merge, fewest first.  The input must already be balanced.
    """
    limit = _limit(g.n, balance)
    in_sep = [False] * g.n
    for v in sep:
        in_sep[v] = True
    uf = UnionFind(g.n)
    for u, v in g.edges:
        if not in_sep[u] and not in_sep[v]:
            uf.union(u, v)

    def touching(v):
        return {uf.find(w) for w in g.adj[v] if not in_sep[w]}

    order = sorted((v for v in range(g.n) if in_sep[v]), key=lambda v: (len(touching(v)), v))
    for v in order:
        roots = touching(v)
        if 1 + sum(uf.size[r] for r in roots) <= limit:
            in_sep[v] = False
            for r in roots:
                uf.union(v, r)
    return [v for v in range(g.n) if in_sep[v]]


def _finish(g: Graph, sep: Iterable[int], what: str) -> SeparatorResult:
    res = separator_result(g, prune_separator(g, sep))
    check = verify_separator(g, res)
    if not check:
        raise SeparatorError(f"{what}: produced an invalid separator ({check.reason})")
    return res


def _trivial(g: Graph) -> SeparatorResult | None:
    # one or two vertices: any single vertex is a separator
    if g.n == 0:
        return SeparatorResult((), (), 0)
    if g.n <= 2:
        return separator_result(g, [0])
    return None


# ---------------------------------------------------------------- planar


class _Map:
    """Combinatorial map (rotation system over darts) of a connected graph."""

    def __init__(self, g: Graph):
        n = g.n
        self.tail: list[int] = []
        self.head: list[int] = []
        first = {}
        for u in range(n):
            for w in g.embedding[u]:
                first[(u, w)] = len(self.tail)
                self.tail.append(u)
                self.head.append(w)
        self.twin = [first[(self.head[d], self.tail[d])] for d in range(len(self.tail))]
        self.succ = [0] * len(self.tail)
        self.out: list[list[int]] = [[] for _ in range(n)]
        for u in range(n):
            ds = [first[(u, w)] for w in g.embedding[u]]
            self.out[u] = ds
            for i, d in enumerate(ds):
                self.succ[d] = ds[(i + 1) % len(ds)]
        self.nv = n

    def faces(self) -> list[list[int]]:
        seen = [False] * len(self.tail)
        out = []
        for d0 in range(len(self.tail)):
            if seen[d0]:
                continue
            face = []
            d = d0
            while not seen[d]:
                seen[d] = True
                face.append(d)
                d = self.succ[self.twin[d]]
            out.append(face)
        return out

    def _new_edge(self, u: int, v: int) -> tuple[int, int]:
        a = len(self.tail)
        self.tail += [u, v]
        self.head += [v, u]
        self.twin += [a + 1, a]
        self.succ += [a, a + 1]
        self.out[u].append(a)
        self.out[v].append(a + 1)
        return a, a + 1

    def stellate(self) -> int:
        """Put a new vertex inside every non-triangular face; returns how many."""
        added = 0
        for face in self.faces():
            if len(face) == 3:
                continue
            z = self.nv
            self.nv += 1
            self.out.append([])
            L = len(face)
            spokes = []
            for i in range(L):
                w = self.tail[face[i]]
                spokes.append(self._new_edge(w, z))
            for i in range(L):
                prev_twin = self.twin[face[i - 1]]
                e, f = spokes[i]
                self.succ[prev_twin] = e
                self.succ[e] = face[i]
                self.succ[f] = spokes[i - 1][1]
            added += 1
        return added


def embedding_faces(g: Graph) -> list[list[int]]:
    """Faces of the embedded graph as vertex walks."""
    if g.embedding is None:
        raise SeparatorError("graph carries no embedding")
    mp = _Map(g)
    return [[mp.tail[d] for d in f] for f in mp.faces()]


def check_embedding(g: Graph) -> None:
    """Raise unless ``g`` is connected and its rotation system has genus 0."""
    if g.embedding is None:
        raise SeparatorError("planar separator needs an embedding")
    if not is_connected(g):
        raise SeparatorError("planar separator needs a connected graph")
    if g.m == 0:
        return
    f = len(embedding_faces(g))
    if g.n - g.m + f != 2:
        raise SeparatorError(f"rotation system is not planar (V - E + F = {g.n - g.m + f})")


def _cycle_candidate(mp: _Map, n_real: int, root: int):
    """Best balanced fundamental cycle and the median level for one BFS root."""
    nv = mp.nv
    weight = [1 if v < n_real else 0 for v in range(nv)]
    total = n_real
    inf = float("inf")
    dist = [inf] * nv
    pdart = [-1] * nv
    done = [False] * nv
    order = []
    dist[root] = weight[root]
    dq = deque([root])
    while dq:
        v = dq.popleft()
        if done[v]:
            continue
        done[v] = True
        order.append(v)
        for d in mp.out[v]:
            w = mp.head[d]
            nd = dist[v] + weight[w]
            if nd < dist[w]:
                dist[w] = nd
                pdart[w] = d
                if weight[w]:
                    dq.append(w)
                else:
                    dq.appendleft(w)
    depth = [0] * nv
    for v in order:
        if pdart[v] >= 0:
            depth[v] = depth[mp.tail[pdart[v]]] + 1
    in_tree = [False] * len(mp.tail)
    for v in range(nv):
        if pdart[v] >= 0:
            in_tree[pdart[v]] = True
            in_tree[mp.twin[pdart[v]]] = True

    faces = mp.faces()
    face_of = [0] * len(mp.tail)
    for i, f in enumerate(faces):
        for d in f:
            face_of[d] = i
    dual: list[list[tuple[int, int]]] = [[] for _ in faces]
    for d in range(len(mp.tail)):
        if not in_tree[d] and d < mp.twin[d]:
            a, b = face_of[d], face_of[mp.twin[d]]
            dual[a].append((b, d))
            dual[b].append((a, d))
    parent_edge = [-2] * len(faces)
    parent_edge[0] = -1
    tin = [0] * len(faces)
    tout = [0] * len(faces)
    preorder = []
    stack = [(0, 0)]
    clock = 0
    while stack:
        f, i = stack.pop()
        if i == 0:
            tin[f] = clock
            clock += 1
            preorder.append(f)
        if i < len(dual[f]):
            stack.append((f, i + 1))
            g2, d = dual[f][i]
            if parent_edge[g2] == -2:
                parent_edge[g2] = d
                stack.append((g2, 0))
        else:
            tout[f] = clock
    if clock != len(faces):
        raise SeparatorError("dual of the non-tree edges is not connected")

    home = [face_of[mp.out[v][0]] for v in range(n_real)]
    sub = [0] * len(faces)
    for v in range(n_real):
        sub[home[v]] += 1
    # children appear after parents in preorder
    fparent = [-1] * len(faces)
    for f in range(len(faces)):
        d = parent_edge[f]
        if d >= 0:
            a, b = face_of[d], face_of[mp.twin[d]]
            fparent[f] = b if a == f else a
    for f in reversed(preorder):
        if fparent[f] >= 0:
            sub[fparent[f]] += sub[f]

    best = None
    for f in range(len(faces)):
        d = parent_edge[f]
        if d < 0:
            continue
        u, v = mp.tail[d], mp.head[d]
        cyc = []
        while depth[u] > depth[v]:
            cyc.append(u)
            u = mp.tail[pdart[u]]
        while depth[v] > depth[u]:
            cyc.append(v)
            v = mp.tail[pdart[v]]
        while u != v:
            cyc.append(u)
            cyc.append(v)
            u = mp.tail[pdart[u]]
            v = mp.tail[pdart[v]]
        cyc.append(u)
        real = [x for x in cyc if x < n_real]
        inside = sub[f] - sum(1 for x in real if tin[f] <= tin[home[x]] < tout[f])
        outside = total - len(real) - inside
        worst = max(inside, outside)
        key = (3 * worst > 2 * total, len(real), worst)
        if best is None or key < best[0]:
            best = (key, real)
    cands = []
    if best is not None:
        cands.append(best[1])
    levels: dict[int, list[int]] = {}
    for v in range(n_real):
        levels.setdefault(dist[v], []).append(v)
    acc = 0
    for k in sorted(levels):
        if 2 * (acc + len(levels[k])) >= total:
            cands.append(levels[k])
            break
        acc += len(levels[k])
    return cands


def planar_separator(g: Graph) -> SeparatorResult:
    """Separator of a connected embedded planar graph.

    The embedding is triangulated by inserting a weightless vertex inside
    each non-triangular face; those vertices never reach the output.
    """
    require_simple(g)
    check_embedding(g)
    tiny = _trivial(g)
    if tiny is not None:
        return tiny
    mp = _Map(g)
    mp.stellate()
    n = g.n
    roots = [max(range(n), key=lambda v: (len(g.adj[v]), -v)), 0]
    if mp.nv > n:
        roots.insert(0, max(range(n, mp.nv), key=lambda z: (len(mp.out[z]), -z)))
    best = None
    for root in dict.fromkeys(roots):
        for cand in _cycle_candidate(mp, n, root):
            res = separator_result(g, cand)
            if 3 * max((len(c) for c in res.components), default=0) > 2 * n:
                # keep splitting the heavy side until balanced
                res = _repair(g, list(cand))
            res = separator_result(g, prune_separator(g, res.separator))
            if best is None or res.size < best.size:
                best = res
    check = verify_separator(g, best)
    if not check:
        raise SeparatorError(f"planar separator failed verification: {check.reason}")
    return best


def _repair(g: Graph, sep: list[int]) -> SeparatorResult:
    sep = set(sep)
    while True:
        res = separator_result(g, sep)
        big = max(res.components, key=len, default=())
        if 3 * len(big) <= 2 * g.n:
            return res
        sub, labels = g.induced(big)
        inner = fallback_separator(sub)
        sep.update(labels[v] for v in inner.separator)


# ------------------------------------------------------------ treewidth


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple
    tree_edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(tuple(sorted(set(b))) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple(tuple(sorted(e)) for e in self.tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        nb: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    def validate(self, g: Graph) -> None:
        """Raise :class:`SeparatorError` unless this decomposes ``g``."""
        nb = len(self.bags)
        if nb == 0:
            if g.n:
                raise SeparatorError("empty decomposition for a nonempty graph")
            return
        for a, b in self.tree_edges:
            if not (0 <= a < nb and 0 <= b < nb) or a == b:
                raise SeparatorError(f"bad tree edge ({a}, {b})")
        if len(self.tree_edges) != nb - 1:
            raise SeparatorError("decomposition tree must have bags - 1 edges")
        uf = UnionFind(nb)
        for a, b in self.tree_edges:
            if not uf.union(a, b):
                raise SeparatorError("decomposition tree contains a cycle")
        holders: list[list[int]] = [[] for _ in range(g.n)]
        for i, bag in enumerate(self.bags):
            for v in bag:
                if not (0 <= v < g.n):
                    raise SeparatorError(f"bag {i} names vertex {v} outside the graph")
                holders[v].append(i)
        for v in range(g.n):
            if not holders[v]:
                raise SeparatorError(f"vertex {v} is in no bag")
        bagsets = [set(b) for b in self.bags]
        for u, v in g.edges:
            if not any(v in bagsets[i] for i in holders[u]):
                raise SeparatorError(f"edge ({u}, {v}) is in no bag")
        nbrs = self.neighbors()
        for v in range(g.n):
            hold = set(holders[v])
            start = holders[v][0]
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in nbrs[x]:
                    if y in hold and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != hold:
                raise SeparatorError(f"bags holding vertex {v} are not connected in the tree")

    def restrict(self, labels: Sequence[int]) -> "TreeDecomposition":
        """Decomposition of the induced subgraph whose vertex i is labels[i]."""
        index = {v: i for i, v in enumerate(labels)}
        return TreeDecomposition(tuple(tuple(index[v] for v in b if v in index) for b in self.bags), self.tree_edges)


def treewidth_separator(g: Graph, td: TreeDecomposition, check: bool = True) -> SeparatorResult:
    """Centroid bag: walk towards the heavy component until none exceeds n/2."""
    require_simple(g)
    if check:
        td.validate(g)
    tiny = _trivial(g)
    if tiny is not None:
        return tiny
    home = [-1] * g.n
    for i, bag in enumerate(td.bags):
        for v in bag:
            if home[v] < 0:
                home[v] = i
    nbrs = td.neighbors()
    cur = next(i for i, b in enumerate(td.bags) if b)
    came_from = -1
    for _ in range(len(td.bags) + 1):
        res = separator_result(g, td.bags[cur])
        big = max(res.components, key=len, default=())
        if 2 * len(big) <= g.n:
            break
        target = home[big[0]]
        prev = {cur: -1}
        dq = deque([cur])
        while dq:
            x = dq.popleft()
            if x == target:
                break
            for y in nbrs[x]:
                if y not in prev:
                    prev[y] = x
                    dq.append(y)
        step = target
        while prev[step] != cur:
            step = prev[step]
        if step == came_from:
            raise SeparatorError("centroid walk reversed; decomposition inconsistent with graph")
        came_from, cur = cur, step
    else:
        raise SeparatorError("centroid walk did not terminate")
    return _finish(g, td.bags[cur], "treewidth separator")


# ------------------------------------------------------------- fallback


def _bfs_levels(g: Graph, root: int) -> list[list[int]]:
    dist = [-1] * g.n
    dist[root] = 0
    levels = [[root]]
    while True:
        nxt = []
        for v in levels[-1]:
            for w in g.adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        if not nxt:
            return levels
        levels.append(nxt)


def fallback_separator(g: Graph) -> SeparatorResult:
    """BFS level bisection with greedy pruning; no size guarantee."""
    require_simple(g)
    if not is_connected(g):
        raise SeparatorError("fallback separator needs a connected graph")
    tiny = _trivial(g)
    if tiny is not None:
        return tiny
    far = _bfs_levels(g, 0)[-1][0]
    roots = dict.fromkeys([far, max(range(g.n), key=lambda v: (len(g.adj[v]), -v)), 0])
    limit = _limit(g.n)
    best = None
    for root in roots:
        for level in _bfs_levels(g, root):
            if best is not None and len(level) >= best.size:
                continue
            res = separator_result(g, level)
            if max((len(c) for c in res.components), default=0) <= limit:
                res = separator_result(g, prune_separator(g, level))
                if best is None or res.size < best.size:
                    best = res
    check = verify_separator(g, best)
    if not check:
        raise SeparatorError(f"fallback separator failed verification: {check.reason}")
    return best


# ------------------------------------------------------------ providers


class PlanarProvider:
    name = "planar"

    def profile(self) -> SeparatorProfile:
        return SeparatorProfile(4, Fraction(1, 2), self.name)

    def __call__(self, g: Graph, labels: Sequence[int]) -> SeparatorResult:
        return planar_separator(g)


class TreewidthProvider:
    """Separators from a decomposition of the root graph; subgraphs restrict it.

    Pieces handed to the provider are connected, so the bags meeting a piece
    form a subtree and only those bags are kept.
    """

    name = "treewidth"

    def __init__(self, td: TreeDecomposition):
        self.td = td
        self.holders: dict[int, list[int]] = {}
        for i, bag in enumerate(td.bags):
            for v in bag:
                self.holders.setdefault(v, []).append(i)

    def profile(self) -> SeparatorProfile:
        return SeparatorProfile(self.td.width + 1, 0, self.name)

    def restrict(self, labels: Sequence[int]) -> TreeDecomposition:
        index = {v: i for i, v in enumerate(labels)}
        keep = sorted({b for v in labels for b in self.holders.get(v, ())})
        where = {b: i for i, b in enumerate(keep)}
        bags = tuple(tuple(index[v] for v in self.td.bags[b] if v in index) for b in keep)
        edges = tuple((where[a], where[b]) for a, b in self.td.tree_edges if a in where and b in where)
        return TreeDecomposition(bags, edges)

    def __call__(self, g: Graph, labels: Sequence[int]) -> SeparatorResult:
        return treewidth_separator(g, self.restrict(labels), check=False)


class FallbackProvider:
    name = "fallback"

    def profile(self) -> SeparatorProfile:
        # no guarantee exists; sqrt profile is only a reporting convention
        return SeparatorProfile(4, Fraction(1, 2), self.name)

    def __call__(self, g: Graph, labels: Sequence[int]) -> SeparatorResult:
        return fallback_separator(g)
