"""Plain-text formats.  Every line, including the last, ends with ``\\n``.

Graph::

    n m
    u v            (m lines, u < v, sorted; a multi-edge repeats its line)
    # embedding    (optional)
    v a b c ...    (n lines: vertex, then its neighbors in rotation order)

Coloring::

    v c            (n lines, v = 0..n-1 in order)

Tree decomposition::

    b w            (bag count, width)
    v1 v2 ...      (b lines, sorted vertices of each bag; may be empty)
    i j            (b - 1 lines, tree edges with i < j, sorted)
"""
from __future__ import annotations

from .graph import Coloring, Graph, GraphError
from .separators import TreeDecomposition


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def _ints(text: str, lineno: int, count: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in text.split()]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise ParseError(lineno, f"expected {count} integers, got {len(vals)}")
    return vals


def _lines(text: str) -> list[str]:
    if text and not text.endswith("\n"):
        text += "\n"
    return text.split("\n")[:-1]


def emit_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out += [f"{u} {v}" for u, v in g.edges]
    if g.embedding is not None:
        out.append("# embedding")
        out += [" ".join(str(x) for x in (v, *rot)) for v, rot in enumerate(g.embedding)]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "missing 'n m' header")
    n, m = _ints(lines[0], 1, 2)
    if n < 0 or m < 0:
        raise ParseError(1, "negative count")
    body = lines[1:]
    emb_at = next((i for i, s in enumerate(body) if s.strip() == "# embedding"), None)
    edge_lines = body if emb_at is None else body[:emb_at]
    if len(edge_lines) != m:
        raise ParseError(1, f"header declares {m} edges, found {len(edge_lines)}")
    edges = []
    for i, s in enumerate(edge_lines):
        u, v = _ints(s, i + 2, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(i + 2, f"vertex out of range 0..{n - 1}")
        if u == v:
            raise ParseError(i + 2, "self-loop")
        edges.append((u, v))
    emb = None
    if emb_at is not None:
        rot_lines = body[emb_at + 1:]
        first = emb_at + 3
        if len(rot_lines) != n:
            raise ParseError(emb_at + 2, f"embedding lists {len(rot_lines)} rotations for {n} vertices")
        emb = []
        for i, s in enumerate(rot_lines):
            vals = _ints(s, first + i)
            if not vals or vals[0] != i:
                raise ParseError(first + i, f"expected rotation of vertex {i}")
            emb.append(vals[1:])
    multi = len(set(map(lambda e: (min(e), max(e)), edges))) != len(edges)
    try:
        return Graph(n, edges, embedding=emb, multi=multi)
    except GraphError as exc:
        raise ParseError(emb_at + 2 if emb_at is not None else 1, str(exc)) from None


def emit_coloring(c: Coloring) -> str:
    return "".join(f"{v} {x}\n" for v, x in enumerate(c.colors))


def parse_coloring(text: str, t: int | None = None) -> Coloring:
    colors = []
    for i, s in enumerate(_lines(text)):
        v, x = _ints(s, i + 1, 2)
        if v != i:
            raise ParseError(i + 1, f"expected vertex {i}, got {v}")
        if x < 0:
            raise ParseError(i + 1, "negative color")
        colors.append(x)
    k = (max(colors) + 1 if colors else 1) if t is None else t
    if colors and max(colors) >= k:
        raise ParseError(colors.index(max(colors)) + 1, f"color {max(colors)} not below t={k}")
    return Coloring(tuple(colors), k)


def emit_decomposition(td: TreeDecomposition) -> str:
    out = [f"{len(td.bags)} {td.width}"]
    out += [" ".join(map(str, b)) for b in td.bags]
    out += [f"{a} {b}" for a, b in sorted(td.tree_edges)]
    return "\n".join(out) + "\n"


def parse_decomposition(text: str) -> TreeDecomposition:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "missing 'b w' header")
    b, w = _ints(lines[0], 1, 2)
    expected = 1 + b + max(b - 1, 0)
    if len(lines) != expected:
        raise ParseError(1, f"header implies {expected} lines, found {len(lines)}")
    bags = [tuple(_ints(lines[1 + i], 2 + i)) for i in range(b)]
    edges = []
    for i in range(max(b - 1, 0)):
        lineno = 2 + b + i
        x, y = _ints(lines[1 + b + i], lineno, 2)
        if not (0 <= x < b and 0 <= y < b):
            raise ParseError(lineno, "tree edge names a missing bag")
        edges.append((x, y))
    td = TreeDecomposition(tuple(bags), tuple(edges))
    if td.width != w and b:
        raise ParseError(1, f"declared width {w} but bags give {td.width}")
    return td
