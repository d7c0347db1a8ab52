"""Exact mcc_t for small graphs, and density certificates for line graphs.

``exact_mcc`` is a branch and bound over colorings; ``naive_mcc`` enumerates
every coloring with numpy and is kept as its independent check.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph import Coloring, Graph, GraphError, UnionFind, avg_degree, max_mono_component, require_simple

DEFAULT_NODE_BUDGET = 20_000_000
NAIVE_LIMIT = 2 ** 24


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class ExactResult:
    value: int
    witness: Coloring
    nodes_explored: int
    exact: bool = True


def _bfs_order(g: Graph) -> list[int]:
    """BFS from a max-degree root; restarts on further components."""
    seen = [False] * g.n
    order = []
    for root in sorted(range(g.n), key=lambda v: (-len(g.adj[v]), v)):
        if seen[root]:
            continue
        seen[root] = True
        dq = deque([root])
        while dq:
            v = dq.popleft()
            order.append(v)
            for w in sorted(g.adj[v], key=lambda w: (-len(g.adj[w]), w)):
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
    return order


def _component_mask(adj: list[int], v: int, allowed: int) -> int:
    comp = 1 << v
    frontier = comp
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= adj[low.bit_length() - 1]
            f ^= low
        nb &= allowed & ~comp
        comp |= nb
        frontier = nb
    return comp


def exact_mcc(g: Graph, t: int, node_budget: int = DEFAULT_NODE_BUDGET) -> ExactResult:
    """Minimum over t-colorings of the largest monochromatic component.

    Vertices are colored in BFS order.  A branch is cut as soon as the
    component holding the newest vertex reaches the incumbent.  Colors are
    opened in order (a vertex may use at most one color beyond those already
    in use), which fixes the first vertex to color 0.  When more than
    ``node_budget`` nodes are visited the best coloring found so far is
    returned with ``exact=False``.
    """
    require_simple(g)
    if t < 1:
        raise GraphError("t must be at least 1")
    n = g.n
    if n == 0:
        return ExactResult(0, Coloring((), t), 0)
    order = _bfs_order(g)
    pos = {v: i for i, v in enumerate(order)}
    # relabel so that search position == bit index
    adj = [0] * n
    for u, v in g.edges:
        a, b = pos[u], pos[v]
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    # greedy start: smallest resulting component
    masks = [0] * t
    greedy = [0] * n
    worst = 0
    for i in range(n):
        best_c, best_s = 0, None
        for c in range(t):
            s = bin(_component_mask(adj, i, masks[c] | (1 << i))).count("1")
            if best_s is None or s < best_s:
                best_c, best_s = c, s
        greedy[i] = best_c
        masks[best_c] |= 1 << i
        worst = max(worst, best_s)
    best = [worst, list(greedy)]
    nodes = 0
    colors = [0] * n
    masks = [0] * t

    def search(i: int, used: int) -> None:
        nonlocal nodes
        if i == n:
            best[0] = max(bin(_component_mask(adj, v, masks[colors[v]])).count("1") for v in range(n))
            best[1] = list(colors)
            return
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded
        bit = 1 << i
        for c in range(min(used + 1, t)):
            size = bin(_component_mask(adj, i, masks[c] | bit)).count("1")
            if size >= best[0]:
                continue
            colors[i] = c
            masks[c] |= bit
            search(i + 1, max(used, c + 1))
            masks[c] ^= bit
            if best[0] == 1:
                return

    exact = True
    if best[0] > 1:
        try:
            search(0, 0)
        except BudgetExceeded:
            exact = False
    witness = [0] * n
    for v in range(n):
        witness[v] = best[1][pos[v]]
    return ExactResult(best[0], Coloring(tuple(witness), t), nodes, exact)


def naive_mcc(g: Graph, t: int, chunk: int = 1 << 16) -> ExactResult:
    """Enumerate all t**n colorings (vectorised label propagation)."""
    require_simple(g)
    n = g.n
    if t < 1:
        raise GraphError("t must be at least 1")
    if t ** n > NAIVE_LIMIT:
        raise GraphError(f"{t}^{n} colorings exceed the enumeration limit")
    if n == 0:
        return ExactResult(0, Coloring((), t), 1)
    total = t ** n
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    powers = t ** np.arange(n - 1, -1, -1, dtype=np.int64)
    best_val, best_row = n + 1, None
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cols = (codes[:, None] // powers[None, :]) % t
        lab = np.tile(np.arange(n, dtype=np.int64), (len(codes), 1))
        if len(eu):
            same = cols[:, eu] == cols[:, ev]
            changed = True
            while changed:
                before = lab.copy()
                for j in range(len(eu)):
                    a, b = lab[:, eu[j]], lab[:, ev[j]]
                    low = np.where(same[:, j], np.minimum(a, b), a)
                    lab[:, eu[j]] = low
                    lab[:, ev[j]] = np.where(same[:, j], low, b)
                changed = not np.array_equal(before, lab)
        sizes = (lab[:, :, None] == lab[:, None, :]).sum(axis=2).max(axis=1)
        i = int(np.argmin(sizes))
        if sizes[i] < best_val:
            best_val, best_row = int(sizes[i]), cols[i]
    return ExactResult(best_val, Coloring(tuple(int(x) for x in best_row), t), total)


# ------------------------------------------------------------- density


@dataclass
class DensityCertificate:
    p: int
    dbar: Fraction
    t: int
    valid: bool
    exhaustive: bool
    checked: int
    violation: tuple | None = None  # a vertex set breaking the strict bound
    sampled_max: Fraction | None = None
    samples: int = 0


def _edge_counts(h: Graph):
    """Neighbor multiplicities: cnt[u][w] = number of u-w edges."""
    cnt: list[dict] = [dict() for _ in range(h.n)]
    for u, v in h.edges:
        cnt[u][v] = cnt[u].get(v, 0) + 1
        cnt[v][u] = cnt[v].get(u, 0) + 1
    return cnt


def connected_sets(h: Graph, p: int, cap: int | None = None):
    """Yield every connected vertex set of size <= p exactly once.

    Grows each set from its smallest vertex, only adding vertices that are
    larger than the anchor and not yet adjacent to the set.
    """
    count = 0
    for anchor in range(h.n):
        stack = [((anchor,), frozenset(w for w in h.adj[anchor] if w > anchor))]
        while stack:
            sub, ext = stack.pop()
            yield sub
            count += 1
            if cap is not None and count > cap:
                raise BudgetExceeded
            if len(sub) == p:
                continue
            ext = sorted(ext)
            closed = set(sub)
            for x in sub:
                closed.update(h.adj[x])
            while ext:
                w = ext.pop()
                new_ext = set(ext)
                new_ext.update(u for u in h.adj[w] if u > anchor and u not in closed)
                stack.append((sub + (w,), frozenset(new_ext)))


def _set_avg(cnt, s) -> Fraction:
    ss = set(s)
    twice = sum(c for x in s for y, c in cnt[x].items() if y in ss)
    return Fraction(twice, len(s))


def sample_connected_set(h: Graph, size: int, rng: random.Random) -> tuple:
    """Random connected set grown from a random vertex by random frontier picks."""
    start = rng.randrange(h.n)
    s = [start]
    inside = {start}
    frontier = list(h.adj[start])
    while len(s) < size:
        frontier = [w for w in frontier if w not in inside]
        if not frontier:
            break
        w = frontier[rng.randrange(len(frontier))]
        s.append(w)
        inside.add(w)
        frontier.extend(h.adj[w])
    return tuple(s)


def sampled_densities(h: Graph, max_size: int, samples: int, seed: int) -> list[Fraction]:
    """Average degrees of H[S] over random connected S with 1 <= |S| <= max_size."""
    rng = random.Random(seed)
    cnt = _edge_counts(h)
    return [_set_avg(cnt, sample_connected_set(h, rng.randint(1, max_size), rng)) for _ in range(samples)]


def density_lower_bound(h: Graph, t: int, p: int, cap: int = 200_000,
                        samples: int = 2_000, seed: int = 0) -> DensityCertificate:
    """Certify that every connected set of <= p vertices has average degree < dbar / t.

    Such a certificate implies mcc_t(L(h)) >= p.  Disconnected sets need no
    check: their average degree is a weighted mean over their components.
    When enumeration would exceed ``cap`` sets, random sets are checked
    instead and the certificate is never marked valid.
    """
    if p < 1:
        raise GraphError("p must be at least 1")
    if t < 1:
        raise GraphError("t must be at least 1")
    dbar = avg_degree(h)
    limit = dbar / t
    cnt = _edge_counts(h)
    checked = 0
    try:
        for s in connected_sets(h, p, cap):
            checked += 1
            if _set_avg(cnt, s) >= limit:
                return DensityCertificate(p, dbar, t, False, True, checked, violation=tuple(sorted(s)))
    except BudgetExceeded:
        rng = random.Random(seed)
        worst = Fraction(0)
        bad = None
        for _ in range(samples):
            s = sample_connected_set(h, rng.randint(1, p), rng)
            a = _set_avg(cnt, s)
            if a > worst:
                worst = a
            if bad is None and a >= limit:
                bad = tuple(sorted(s))
        return DensityCertificate(p, dbar, t, False, False, checked, violation=bad,
                                  sampled_max=worst, samples=samples)
    return DensityCertificate(p, dbar, t, True, True, checked)


@dataclass
class AdversaryReport:
    majority_color: int
    majority_edges: int
    largest_edges: int  # largest component of the majority class, in edges
    largest_vertices: int
    largest_avg_degree: Fraction
    densest_edges: int
    densest_avg_degree: Fraction
    dbar_over_t: Fraction
    max_mono_edges: int  # over all colors
    component_edges: tuple = field(default=(), repr=False)  # edge indices of the largest


def _edge_components(h: Graph, idx: Sequence[int]):
    uf = UnionFind(h.n)
    for i in idx:
        uf.union(*h.edges[i])
    groups: dict[int, list[int]] = {}
    for i in idx:
        groups.setdefault(uf.find(h.edges[i][0]), []).append(i)
    return list(groups.values())


def coloring_adversary_report(h: Graph, edge_colors: Sequence[int], t: int | None = None) -> AdversaryReport:
    """Largest and densest components of the majority color class of an edge coloring.

    ``edge_colors[i]`` colors ``h.edges[i]``.  Some component of the
    majority class always has average degree at least ``avg_degree(h) / t``.
    """
    if len(edge_colors) != h.m:
        raise GraphError(f"{len(edge_colors)} edge colors for {h.m} edges")
    t = (max(edge_colors) + 1) if t is None else t
    classes: list[list[int]] = [[] for _ in range(t)]
    for i, c in enumerate(edge_colors):
        classes[c].append(i)
    maj = max(range(t), key=lambda c: (len(classes[c]), -c))
    comps = _edge_components(h, classes[maj])

    def stats(comp):
        verts = {x for i in comp for x in h.edges[i]}
        return len(comp), len(verts), Fraction(2 * len(comp), len(verts))

    largest = max(comps, key=lambda c: (len(c), -min(c)))
    le, lv, la = stats(largest)
    densest = max(comps, key=lambda c: (stats(c)[2], len(c)))
    de, _, da = stats(densest)
    overall = max((len(c) for cl in classes for c in _edge_components(h, cl)), default=0)
    return AdversaryReport(maj, len(classes[maj]), le, lv, la, de, da,
                           avg_degree(h) / t, overall, tuple(sorted(largest)))


def random_edge_coloring(h: Graph, seed: int, t: int = 2) -> list[int]:
    """Balanced random edge coloring: a shuffled round-robin assignment."""
    rng = random.Random(seed)
    colors = [i % t for i in range(h.m)]
    rng.shuffle(colors)
    return colors


def greedy_edge_coloring(h: Graph, seed: int, t: int = 2) -> list[int]:
    """Edges in random order, each joining the color whose component stays smallest."""
    rng = random.Random(seed)
    order = list(range(h.m))
    rng.shuffle(order)
    ufs = [UnionFind(h.n) for _ in range(t)]
    esize = [[0] * h.n for _ in range(t)]
    colors = [0] * h.m
    for i in order:
        u, v = h.edges[i]
        best = None
        for c in range(t):
            ru, rv = ufs[c].find(u), ufs[c].find(v)
            s = esize[c][ru] + (esize[c][rv] if ru != rv else 0) + 1
            if best is None or s < best[0]:
                best = (s, c)
        s, c = best
        uf = ufs[c]
        uf.union(u, v)
        esize[c][uf.find(u)] = s
        colors[i] = c
    return colors


def check_witness(g: Graph, res: ExactResult) -> bool:
    return max_mono_component(g, res.witness).max_component_size == res.value
