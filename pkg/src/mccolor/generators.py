"""Instance families with their vertex layouts and known bounds.

Layouts (all indices 0-based):

* ``gen_grid_diag(m, d)``: coordinate vector ``(u_1..u_d)`` in ``{1..m}^d``
  maps to ``sum (u_i - 1) * m**(d - i)``; the last coordinate varies fastest.
* ``gen_tri_grid(rows, cols)``: ``(r, c) -> r * cols + c``.
* ``gen_rib_planar(k)``: grid row ``r`` (0 = top), column ``i`` is
  ``r * k**2 + i``; path vertex ``j`` is ``k**3 + j``; the apex is ``2 k**3``.
* ``gen_fan(k)``: path ``0..k-1``, hub ``k``.
* ``gen_cone(g, m)``: copy ``c`` of vertex ``v`` is ``c * g.n + v``; apex last.
* ``gen_config_bipartite``: side A first, then side B.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .graph import Graph, GraphError, is_connected, line_graph
from .separators import TreeDecomposition

MAX_VERTICES = 4_000_000
MAX_CONFIG_DEGREE = 5


@dataclass(frozen=True)
class Bound:
    quantity: str
    relation: str
    value: Any
    provenance: str  # "published: <argument>" or "derived: <how>"


@dataclass
class FamilyMetadata:
    known_bounds: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "known_bounds": [b.__dict__ for b in self.known_bounds],
            "notes": self.notes,
        }


def _rotation_from_coords(n: int, edges, xy) -> list[list[int]]:
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = []
    for v in range(n):
        x0, y0 = xy[v]
        rot.append(sorted(nbrs[v], key=lambda w: math.atan2(xy[w][1] - y0, xy[w][0] - x0)))
    return rot


def _guard(count: int) -> None:
    if count > MAX_VERTICES:
        raise GraphError(f"instance would have {count} vertices (limit {MAX_VERTICES})")


def grid_index(coords: Sequence[int], m: int) -> int:
    idx = 0
    for u in coords:
        idx = idx * m + (u - 1)
    return idx


def gen_grid_diag(m: int, d: int) -> Graph:
    """``D_m^d``: ``{1..m}^d`` with u ~ v iff they differ by at most 1 in every coordinate."""
    if m < 1 or d < 1:
        raise GraphError("need m >= 1 and d >= 1")
    _guard(m ** d)
    n = m ** d
    strides = [m ** (d - 1 - i) for i in range(d)]
    # offsets whose first nonzero entry is +1 enumerate each edge once
    offsets = []
    for code in range(3 ** d):
        off = []
        for _ in range(d):
            off.append(code % 3 - 1)
            code //= 3
        off.reverse()
        nz = next((x for x in off if x), 0)
        if nz == 1:
            offsets.append(off)
    edges = []
    for idx in range(n):
        coords = [(idx // s) % m for s in strides]
        for off in offsets:
            tgt = 0
            for c, o, s in zip(coords, off, strides):
                c2 = c + o
                if not (0 <= c2 < m):
                    break
                tgt += c2 * s
            else:
                edges.append((idx, tgt))
    return Graph(n, edges)


def gen_tri_grid(rows: int, cols: int) -> Graph:
    """Grid graph with the diagonal (r, c)-(r+1, c+1) in every cell, embedded."""
    if rows < 1 or cols < 1:
        raise GraphError("need rows, cols >= 1")
    _guard(rows * cols)
    n = rows * cols
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
                if c + 1 < cols:
                    edges.append((v, v + cols + 1))
    xy = [(c, -r) for r in range(rows) for c in range(cols)]
    return Graph(n, edges, embedding=_rotation_from_coords(n, edges, xy))


@dataclass(frozen=True)
class RibNames:
    apex: int
    tops: tuple  # v_i, top vertex of column i
    intervals: tuple  # (first, last + 1) of interval I_i on the path
    columns: tuple  # column i listed top to bottom


def gen_rib_planar(k: int) -> tuple[Graph, RibNames]:
    """Planar graph on 2k^3 + 1 vertices whose two-colorings all have a
    monochromatic component of at least k^2/2 vertices."""
    if k < 2:
        raise GraphError("rib construction needs k >= 2")
    w = k * k
    plen = k ** 3
    _guard(2 * plen + 1)
    n = 2 * plen + 1
    apex = 2 * plen

    def cell(r, i):
        return r * w + i

    def path(j):
        return plen + j

    edges = []
    for r in range(k):
        for i in range(w):
            if i + 1 < w:
                edges.append((cell(r, i), cell(r, i + 1)))
            if r + 1 < k:
                edges.append((cell(r, i), cell(r + 1, i)))
                if i + 1 < w:
                    edges.append((cell(r, i), cell(r + 1, i + 1)))
    for j in range(plen - 1):
        edges.append((path(j), path(j + 1)))
    for j in range(plen):
        edges.append((apex, path(j)))
    for i in range(w):
        for j in range(i * k, (i + 1) * k):
            edges.append((cell(0, i), path(j)))
        if i + 1 < w:
            edges.append((cell(0, i), path((i + 1) * k)))
    xy = [None] * n
    for r in range(k):
        for i in range(w):
            xy[cell(r, i)] = (i * k + (k - 1) / 2, -r)
    for j in range(plen):
        xy[path(j)] = (j, 1)
    xy[apex] = ((plen - 1) / 2, 2)
    g = Graph(n, edges, embedding=_rotation_from_coords(n, edges, xy))
    names = RibNames(
        apex=apex,
        tops=tuple(cell(0, i) for i in range(w)),
        intervals=tuple((path(i * k), path((i + 1) * k)) for i in range(w)),
        columns=tuple(tuple(cell(r, i) for r in range(k)) for i in range(w)),
    )
    return g, names


def gen_fan(k: int) -> tuple[Graph, TreeDecomposition]:
    """Path on k vertices plus a hub joined to all of them, with a width-2 decomposition."""
    if k < 1:
        raise GraphError("fan needs k >= 1")
    hub = k
    edges = [(j, j + 1) for j in range(k - 1)] + [(j, hub) for j in range(k)]
    xy = [(j, 0) for j in range(k)] + [((k - 1) / 2, 1)]
    g = Graph(k + 1, edges, embedding=_rotation_from_coords(k + 1, edges, xy))
    if k == 1:
        td = TreeDecomposition(((0, hub),), ())
    else:
        td = TreeDecomposition(tuple((j, j + 1, hub) for j in range(k - 1)),
                               tuple((j, j + 1) for j in range(k - 2)))
    return g, td


def fan_mcc2(k: int) -> int:
    """Closed form of the two-color optimum on the fan.

    With the hub red, r red path vertices give a red component of r + 1 and
    split the remaining k - r path vertices into at most r + 1 blue runs.
    """
    return min(max(r + 1, -(-(k - r) // (r + 1))) for r in range(k + 1))


def gen_cone(g: Graph, m: int, td: TreeDecomposition | None = None):
    """m disjoint copies of g plus an apex joined to every copy vertex.

    With ``td`` given, returns ``(cone, decomposition)`` where the apex is
    added to every bag, so the width grows by one.
    """
    if m < 1:
        raise GraphError("cone needs m >= 1")
    _guard(m * g.n + 1)
    n = m * g.n + 1
    apex = n - 1
    edges = []
    for c in range(m):
        off = c * g.n
        edges.extend((u + off, v + off) for u, v in g.edges)
        edges.extend((v + off, apex) for v in range(g.n))
    cone = Graph(n, edges)
    if td is None:
        return cone
    bags = [(apex,)]
    tree = []
    for c in range(m):
        off = c * g.n
        base = len(bags)
        bags.extend(tuple(v + off for v in b) + (apex,) for b in td.bags)
        tree.extend((a + base, b + base) for a, b in td.tree_edges)
        tree.append((0, base))
    return cone, TreeDecomposition(tuple(bags), tuple(tree))


def gen_fan_tower(k: int, levels: int = 1, m: int | None = None):
    """Cone applied ``levels`` times starting from the fan, with m copies each time.

    m defaults to the two-color optimum of the fan.  Returns the graph and a
    decomposition of width at most ``2 + levels``.
    """
    g, td = gen_fan(k)
    m = fan_mcc2(k) if m is None else m
    for _ in range(levels):
        g, td = gen_cone(g, m, td)
    return g, td


def gen_hamming_cube(d: int) -> Graph:
    """Q_d on {0,1}^d; vertex index = bit vector, bit i = coordinate i."""
    if d < 1:
        raise GraphError("need d >= 1")
    _guard(2 ** d)
    edges = [(v, v | (1 << i)) for v in range(2 ** d) for i in range(d) if not (v >> i) & 1]
    return Graph(2 ** d, edges)


def gen_path(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def gen_cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle needs k >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def gen_complete(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def gen_star(k: int) -> Graph:
    """K_{1,k} with center 0."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def _check_degrees(degs, D):
    for x in degs:
        if not (1 <= x <= D):
            raise GraphError(f"degree {x} outside 1..{D}")


def gen_config_bipartite(deg_a: Sequence[int], deg_b: Sequence[int], seed: int,
                         D: int = MAX_CONFIG_DEGREE) -> Graph:
    """Random bipartite multigraph with the given degrees.

    Side-A half-edges are listed vertex by vertex; side-B half-edges are
    listed the same way and shuffled with ``random.Random(seed).shuffle``
    (Mersenne Twister, Fisher-Yates).  The i-th A half-edge is matched to the
    i-th shuffled B half-edge, which gives a uniform perfect matching.
    """
    _check_degrees(deg_a, D)
    _check_degrees(deg_b, D)
    if sum(deg_a) != sum(deg_b):
        raise GraphError(f"degree sums differ: {sum(deg_a)} vs {sum(deg_b)}")
    na = len(deg_a)
    a_stubs = [v for v, dv in enumerate(deg_a) for _ in range(dv)]
    b_stubs = [na + v for v, dv in enumerate(deg_b) for _ in range(dv)]
    random.Random(seed).shuffle(b_stubs)
    return Graph(na + len(deg_b), zip(a_stubs, b_stubs), multi=True)


@dataclass
class Theorem12Instance:
    line: Graph  # L(H)
    h: Graph
    side_a: int  # vertices 0..side_a-1 form A
    deg5_a: int  # number of degree-5 vertices in A (they come first)
    deg5_b: int  # degree-5 vertices in B used to balance the degree sums
    attempts: int


def theorem12_degrees(m_a: int, rho: float) -> tuple[list[int], list[int]]:
    """Degree sequences: floor(rho*m_a) fives then fours on A; fours on B.

    If the number of fives is not divisible by 4, B receives that remainder
    of degree-5 vertices so the sums agree while all degrees stay in {4, 5}.
    """
    if not (0 < rho < 1):
        raise GraphError("rho must lie in (0, 1)")
    r = math.floor(rho * m_a)
    if r < 1:
        raise GraphError("floor(rho * m_a) must be at least 1")
    deg_a = [5] * r + [4] * (m_a - r)
    q = r % 4
    nb = m_a + (r - q) // 4
    deg_b = [5] * q + [4] * (nb - q)
    assert sum(deg_a) == sum(deg_b)
    return deg_a, deg_b


def gen_theorem12_instance(m_a: int, rho: float, seed: int, simple: bool = True,
                           max_attempts: int = 100_000) -> Theorem12Instance:
    """Line graph of a random bipartite H with degrees 4 and 5.

    Matchings are redrawn until no edge joins two degree-5 vertices and,
    when ``simple`` is set, H has no parallel edges.  Then every vertex of
    L(H) has degree 6 or 7.
    """
    deg_a, deg_b = theorem12_degrees(m_a, rho)
    na = len(deg_a)
    five = set(v for v, x in enumerate(deg_a) if x == 5) | {na + v for v, x in enumerate(deg_b) if x == 5}
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        h = gen_config_bipartite(deg_a, deg_b, rng.getrandbits(64))
        if simple and h.is_multi:
            continue
        if any(u in five and v in five for u, v in h.edges):
            continue
        lg, _ = line_graph(h)
        return Theorem12Instance(lg, h, na, deg_a.count(5), deg_b.count(5), attempt)
    raise GraphError(f"no admissible matching in {max_attempts} attempts")


def gen_random_regular(n: int, d: int, seed: int, connected: bool = True, max_attempts: int = 100_000) -> Graph:
    """Uniform simple d-regular graph via the pairing model with rejection."""
    if n * d % 2 or d >= n:
        raise GraphError("need n*d even and d < n")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if any(u == v for u, v in pairs):
            continue
        norm = {(min(u, v), max(u, v)) for u, v in pairs}
        if len(norm) != len(pairs):
            continue
        g = Graph(n, norm)
        if connected and not is_connected(g):
            continue
        return g
    raise GraphError("could not sample a regular graph")


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


# ---------------------------------------------------------------- specs

FAMILIES = ("grid_diag", "tri_grid", "rib_planar", "cone", "fan", "fan_tower", "hamming_cube",
            "line_graph", "config_bipartite", "theorem12", "regular", "gnp")


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: tuple = ()  # sorted (key, value) pairs
    seed: int = 0

    @staticmethod
    def make(family: str, seed: int = 0, **params) -> "InstanceSpec":
        if family not in FAMILIES:
            raise GraphError(f"unknown family {family!r}")
        return InstanceSpec(family, tuple(sorted(params.items())), int(seed))

    @property
    def kw(self) -> dict:
        return dict(self.params)

    def key(self) -> str:
        return f"{self.family}:{json.dumps(self.kw, sort_keys=True)}:{self.seed}"

    def label(self) -> str:
        body = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({body})"


@dataclass
class Instance:
    spec: InstanceSpec
    graph: Graph
    metadata: FamilyMetadata
    decomposition: TreeDecomposition | None = None
    names: Any = None
    planar: bool = False


def _published(q, rel, val, why):
    return Bound(q, rel, val, f"published: {why}")


def build_instance(spec: InstanceSpec) -> Instance:
    """Deterministically construct the family member described by ``spec``."""
    try:
        return _build(spec)
    except KeyError as exc:
        raise GraphError(f"{spec.family}: missing parameter {exc.args[0]!r}") from None


def _build(spec: InstanceSpec) -> Instance:
    p = spec.kw
    fam = spec.family
    meta = FamilyMetadata()
    if fam == "grid_diag":
        m, d = int(p["m"]), int(p["d"])
        meta.known_bounds += [
            _published(f"mcc_{d}", ">=", m, "d-dimensional HEX lemma"),
            _published("mcc_2", "<=", m ** (d - 1), "layer-by-layer coloring"),
        ]
        return Instance(spec, gen_grid_diag(m, d), meta)
    if fam == "tri_grid":
        g = gen_tri_grid(int(p["rows"]), int(p["cols"]))
        return Instance(spec, g, meta, planar=True)
    if fam == "rib_planar":
        k = int(p["k"])
        g, names = gen_rib_planar(k)
        meta.known_bounds.append(_published("mcc_2", ">=", Fraction(k * k, 2), "rib construction"))
        meta.notes["n"] = 2 * k ** 3 + 1
        return Instance(spec, g, meta, names=names, planar=True)
    if fam == "fan":
        k = int(p["k"])
        g, td = gen_fan(k)
        meta.known_bounds.append(Bound("mcc_2", "==", fan_mcc2(k), "derived: closed-form minimisation over red path counts"))
        meta.notes["mcc_2 order"] = "Theta(sqrt k)"
        return Instance(spec, g, meta, decomposition=td, planar=True)
    if fam in ("cone", "fan_tower"):
        k = int(p["k"])
        levels = int(p.get("levels", 1))
        m = int(p["m"]) if "m" in p else fan_mcc2(k)
        g, td = gen_fan_tower(k, levels, m)
        meta.known_bounds.append(_published(f"mcc_{2 + levels}", ">=", min(m, fan_mcc2(k)),
                                            "cone lemma applied to the fan"))
        meta.notes.update(width=td.width, m=m)
        return Instance(spec, g, meta, decomposition=td)
    if fam == "hamming_cube":
        return Instance(spec, gen_hamming_cube(int(p["d"])), meta)
    if fam == "line_graph":
        d = int(p["d"])
        lg, _ = line_graph(gen_hamming_cube(d))
        if d % 2 == 0:
            meta.known_bounds.append(_published("mcc_2", "==", Fraction(d, 4) * 2 ** (d // 2), "hamming cube edge coloring"))
        return Instance(spec, lg, meta)
    if fam == "config_bipartite":
        a, b = int(p["a"]), int(p["b"])
        da, db = int(p.get("deg_a", 4)), int(p.get("deg_b", 4))
        g = gen_config_bipartite([da] * a, [db] * b, spec.seed)
        return Instance(spec, g, meta)
    if fam == "theorem12":
        inst = gen_theorem12_instance(int(p["m_a"]), float(p["rho"]), spec.seed)
        meta.known_bounds.append(_published("max degree", "<=", 7, "degree-5 vertices never adjacent"))
        meta.notes.update(deg5_a=inst.deg5_a, deg5_b=inst.deg5_b, attempts=inst.attempts, edges_h=inst.h.m)
        return Instance(spec, inst.line, meta, names=inst)
    if fam == "regular":
        g = gen_random_regular(int(p["n"]), int(p["d"]), spec.seed)
        if int(p["d"]) <= 3:
            meta.known_bounds.append(_published("mcc_2", "<=", 2, "max degree 3"))
        return Instance(spec, g, meta)
    if fam == "gnp":
        return Instance(spec, gen_gnp(int(p["n"]), float(p["p"]), spec.seed), meta)
    raise GraphError(f"unknown family {fam!r}")
