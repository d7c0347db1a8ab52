"""Colorings with small monochromatic components.

The separator-driven algorithm keeps a work list of induced subgraphs.  Any
member larger than the threshold ``n0`` is split by a separator whose
vertices are collected in ``S``.  Vertices outside ``S`` end up in pieces of
at most ``n0`` vertices and share one color; ``S`` gets the other color
(two colors) or is colored recursively with one color fewer.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .graph import Coloring, Graph, components, max_mono_component, require_simple
from .separators import (
    BALANCE,
    SeparatorError,
    SeparatorProfile,
    SeparatorResult,
    verify_separator,
)

Provider = Callable[[Graph, Sequence[int]], SeparatorResult]


def iroot(x: int, k: int) -> int:
    """Largest integer r with r**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = int(round(x ** (1.0 / k)))
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def threshold(n: int, t: int, gamma) -> int:
    """``floor(n ** (1 / (t - (t - 1) * gamma)))`` in exact arithmetic."""
    gamma = Fraction(gamma)
    denom = t - (t - 1) * gamma
    # n ** (q / p) with denom = p / q
    p, q = denom.numerator, denom.denominator
    return iroot(n ** q, p)


def charging_bound(n: int, n0: int, profile: SeparatorProfile) -> float:
    """Upper bound on |S| when every separator obeys the profile."""
    K, gamma = float(profile.K), float(profile.gamma)
    ratio = float(BALANCE) ** (1 - gamma)
    return K * n0 ** (gamma - 1) / (1 - ratio) * n


@dataclass
class FragmentationRun:
    coloring: Coloring
    n0: int
    separator_vertices: tuple
    charge_ledger: list = field(default_factory=list)  # (depth, piece size, |C|)
    bound: float = 0.0  # charging bound on |S|
    certificate_valid: bool = True
    profile: SeparatorProfile | None = None
    free_color: int = 0
    inner: "FragmentationRun | None" = None

    @property
    def bound_certificate(self) -> float:
        """Constant C with |S| <= C * n0 implied by the charging bound."""
        return self.bound / self.n0 if self.n0 else float("inf")

    @property
    def S(self) -> int:
        return len(self.separator_vertices)


def _split(g: Graph, n0: int, provider: Provider, labels: Sequence[int], profile, verify: bool):
    """Run the work-list loop.  Returns (S as root labels, ledger, honest)."""
    heap = []
    for comp in components(g):
        heapq.heappush(heap, (-len(comp), comp[0], 0, comp))
    S: list[int] = []
    ledger = []
    honest = True
    while heap and -heap[0][0] > n0:
        size, _, depth, piece = heapq.heappop(heap)
        size = -size
        sub, sub_labels = g.induced(piece)
        root_labels = [labels[v] for v in sub_labels]
        try:
            res = provider(sub, root_labels)
        except SeparatorError as exc:
            exc.subgraph = root_labels
            raise
        if verify:
            check = verify_separator(sub, res)
            if not check:
                err = SeparatorError(f"provider returned a non-separator: {check.reason}")
                err.subgraph = root_labels
                raise err
        if profile is not None and not profile.allows(size, res.size):
            honest = False
        ledger.append((depth, size, res.size))
        S.extend(sub_labels[v] for v in res.separator)
        for comp in res.components:
            part = [sub_labels[v] for v in comp]
            heapq.heappush(heap, (-len(part), min(part), depth + 1, sorted(part)))
    return S, ledger, honest


def two_color_via_separators(g: Graph, profile: SeparatorProfile, provider: Provider,
                             verify: bool = True, labels: Sequence[int] | None = None) -> FragmentationRun:
    """Two colors: separator vertices get color 1, everything else color 0.

    Every color-0 component has at most ``n0 = floor(n ** (1 / (2 - gamma)))``
    vertices.
    """
    require_simple(g)
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    labels = list(range(g.n)) if labels is None else list(labels)
    n0 = threshold(g.n, 2, profile.gamma)
    S, ledger, honest = _split(g, n0, provider, labels, profile, verify)
    colors = [0] * g.n
    for v in S:
        colors[v] = 1
    return FragmentationRun(
        coloring=Coloring(tuple(colors), 2),
        n0=n0,
        separator_vertices=tuple(sorted(S)),
        charge_ledger=ledger,
        bound=charging_bound(g.n, n0, profile),
        certificate_valid=honest,
        profile=profile,
        free_color=0,
    )


def t_color_via_separators(g: Graph, t: int, profile: SeparatorProfile, provider: Provider,
                           verify: bool = True, labels: Sequence[int] | None = None) -> FragmentationRun:
    """Color with ``t`` colors.

    Vertices outside ``S`` take color ``t - 1``; ``G[S]`` is colored with
    colors ``0..t-2`` by the same procedure, with its own threshold.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    if t == 2:
        return two_color_via_separators(g, profile, provider, verify, labels)
    require_simple(g)
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    labels = list(range(g.n)) if labels is None else list(labels)
    n0 = threshold(g.n, t, profile.gamma)
    S, ledger, honest = _split(g, n0, provider, labels, profile, verify)
    colors = [t - 1] * g.n
    inner = None
    if S:
        sub, sub_labels = g.induced(S)
        inner = t_color_via_separators(sub, t - 1, profile, provider, verify,
                                       [labels[v] for v in sub_labels])
        for i, v in enumerate(sub_labels):
            colors[v] = inner.coloring[i]
    return FragmentationRun(
        coloring=Coloring(tuple(colors), t),
        n0=n0,
        separator_vertices=tuple(sorted(S)),
        charge_ledger=ledger,
        bound=charging_bound(g.n, n0, profile),
        certificate_valid=honest,
        profile=profile,
        free_color=t - 1,
        inner=inner,
    )


def audit_run(g: Graph, run: FragmentationRun) -> list[str]:
    """Problems with a finished run (empty when all guarantees hold)."""
    problems = []
    report = max_mono_component(g, run.coloring)
    if report.per_color_max[run.free_color] > run.n0:
        problems.append(f"color {run.free_color} component of size "
                        f"{report.per_color_max[run.free_color]} exceeds n0={run.n0}")
    if sum(c for _, _, c in run.charge_ledger) != run.S:
        problems.append("charge ledger does not sum to |S|")
    if run.certificate_valid and run.S > run.bound * (1 + 1e-12):
        problems.append(f"|S|={run.S} exceeds the charging bound {run.bound:.3f}")
    if len(set(run.coloring.colors)) > run.coloring.t:
        problems.append("more colors used than allowed")
    return problems


def layer_coloring(d: int, m: int) -> Coloring:
    """Two-color the diagonal grid by parity of the last coordinate.

    Uses the vertex layout of :func:`mccolor.generators.gen_grid_diag`: the
    last coordinate is the fastest-varying digit of the index.
    """
    if d < 1 or m < 1:
        raise ValueError("need d >= 1 and m >= 1")
    return Coloring(tuple((i % m) % 2 for i in range(m ** d)), 2)


def hamming_cube_edge_coloring(d: int) -> Coloring:
    """Color edge {u, v} of Q_d with 0 iff its flipped bit is among the lowest d/2.

    The coloring lives on the vertices of ``L(Q_d)`` in the edge order of
    :func:`mccolor.generators.gen_hamming_cube`.
    """
    if d < 2 or d % 2:
        raise ValueError("d must be an even integer >= 2")
    from .generators import gen_hamming_cube

    cube = gen_hamming_cube(d)
    half = d // 2
    colors = [0 if ((u ^ v).bit_length() - 1) < half else 1 for u, v in cube.edges]
    return Coloring(tuple(colors), 2)
