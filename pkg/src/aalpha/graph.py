"""Weighted simple graphs on a bipartite vertex grid.

Vertices of a graph with ``n = d1 * d2`` vertices are labelled by a composite
index ``v = a * d2 + b`` standing for the pair ``(a, b)``, ``a < d1``,
``b < d2``. This is the row-major Kronecker ordering, so the graph-level
partial transpose agrees with the block transpose of the adjacency matrix.

Edge weights are stored exactly as :class:`fractions.Fraction` values in
``(0, 1]``; every combinatorial quantity in this module is returned exactly.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal

import numpy as np

from aalpha.spectral import SymMatrix

__all__ = [
    "Graph",
    "GraphFamily",
    "GraphError",
    "MalformedLineError",
    "VertexRangeError",
    "WeightRangeError",
    "DuplicateEdgeError",
    "SelfLoopError",
    "DimensionError",
    "CollisionError",
    "parse_graph",
    "serialize_graph",
    "read_graph",
    "weighted_degree",
    "total_degree",
    "adjacency_matrix",
    "degree_matrix",
    "partial_transpose_graph",
    "frobenius_norm_sq",
    "triangle_weight_sum",
    "sum_swapped_degree_weighted",
    "is_connected",
    "generate_family",
]


class GraphError(ValueError):
    """Invalid graph data. ``lineno`` is set when the error comes from a file."""

    def __init__(self, message: str, lineno: int | None = None):
        super().__init__(message)
        self.message = message
        self.lineno = lineno

    def __str__(self) -> str:
        if self.lineno is None:
            return self.message
        return f"line {self.lineno}: {self.message}"


class MalformedLineError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class WeightRangeError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DimensionError(GraphError):
    pass


class CollisionError(GraphError):
    pass


def _as_weight(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, (int, np.integer)):
        return Fraction(int(w))
    if isinstance(w, (float, np.floating)):
        if not np.isfinite(w):
            raise WeightRangeError(f"weight {w!r} is not finite")
        # repr gives the shortest decimal that round-trips, so 0.1 -> 1/10
        return Fraction(repr(float(w)))
    return Fraction(w)


@dataclass(frozen=True)
class Graph:
    """Immutable weighted simple graph with a ``d1 x d2`` vertex partition.

    ``edges`` may be given as any iterable of ``(u, v, w)``; it is normalised
    to a sorted tuple with ``u < v`` and :class:`~fractions.Fraction` weights.
    """

    n: int
    d1: int
    d2: int
    edges: tuple[tuple[int, int, Fraction], ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError(f"vertex count must be positive, got {self.n}")
        if self.d1 < 1 or self.d2 < 1 or self.d1 * self.d2 != self.n:
            raise DimensionError(
                f"n = {self.n} does not factor as d1*d2 = {self.d1}*{self.d2}"
            )
        seen = {}
        for edge in self.edges:
            u, v, w = edge
            u, v, w = int(u), int(v), _as_weight(w)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge ({u}, {v}) has a vertex outside [0, {self.n})")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 < w <= 1):
                raise WeightRangeError(f"weight {w} of edge ({u}, {v}) is outside (0, 1]")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {key}")
            seen[key] = w
        object.__setattr__(
            self, "edges", tuple((u, v, w) for (u, v), w in sorted(seen.items()))
        )

    @cached_property
    def weights(self) -> dict[tuple[int, int], Fraction]:
        return {(u, v): w for u, v, w in self.edges}

    @cached_property
    def neighbors(self) -> tuple[dict[int, Fraction], ...]:
        nbrs: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for u, v, w in self.edges:
            nbrs[u][v] = w
            nbrs[v][u] = w
        return tuple(nbrs)

    @cached_property
    def degrees(self) -> tuple[Fraction, ...]:
        return tuple(sum(nb.values(), Fraction(0)) for nb in self.neighbors)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def weight(self, u: int, v: int) -> Fraction:
        """Weight of edge ``{u, v}``, zero if absent."""
        return self.weights.get((min(u, v), max(u, v)), Fraction(0))

    def vertex(self, a: int, b: int) -> int:
        """Composite index of grid vertex ``(a, b)``."""
        return a * self.d2 + b

    def with_dims(self, d1: int, d2: int) -> "Graph":
        """Same edges, relabelled as a ``d1 x d2`` grid."""
        if (d1, d2) == (self.d1, self.d2):
            return self
        return Graph(self.n, d1, d2, self.edges)


@dataclass(frozen=True)
class GraphFamily:
    kind: Literal["complete", "path", "cycle", "random"]
    n: int
    seed: int | None = None
    density: float = 0.5

    def __post_init__(self):
        if self.kind not in ("complete", "path", "cycle", "random"):
            raise ValueError(f"unknown graph family {self.kind!r}")
        if self.n < 2:
            raise ValueError("graph families need n >= 2")
        if self.kind == "cycle" and self.n < 3:
            raise ValueError("a simple cycle needs n >= 3")
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0, 1]")


# ---------------------------------------------------------------------------
# File format

_HEADER = re.compile(r"graph\s+(\S+)\s+(\S+)\s+(\S+)")
_EDGE = re.compile(r"edge\s+(\S+)\s+(\S+)\s+(\S+)")


def _int_token(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MalformedLineError(f"expected an integer, got {tok!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented edge-list format.

    ::

        # optional comments
        graph <n> <d1> <d2>
        edge <u> <v> <w>

    Weights are decimals or ``p/q`` fractions in ``(0, 1]``. Every error is a
    :class:`GraphError` subclass carrying the offending line number.
    """
    header = None
    edges: dict[tuple[int, int], Fraction] = {}
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise MalformedLineError(f"expected 'graph <n> <d1> <d2>', got {line!r}", lineno)
            n, d1, d2 = (_int_token(t, lineno) for t in m.groups())
            if n < 1 or d1 < 1 or d2 < 1 or n != d1 * d2:
                raise DimensionError(f"n = {n} does not factor as d1*d2 = {d1}*{d2}", lineno)
            header = (n, d1, d2)
            continue
        m = _EDGE.fullmatch(line)
        if not m:
            raise MalformedLineError(f"expected 'edge <u> <v> <w>', got {line!r}", lineno)
        u = _int_token(m.group(1), lineno)
        v = _int_token(m.group(2), lineno)
        try:
            w = Fraction(m.group(3))
        except (ValueError, ZeroDivisionError):
            raise MalformedLineError(f"bad weight literal {m.group(3)!r}", lineno) from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"vertex index outside [0, {n})", lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        if not (0 < w <= 1):
            raise WeightRangeError(f"weight {m.group(3)} outside (0, 1]", lineno)
        key = (min(u, v), max(u, v))
        if key in edges:
            raise DuplicateEdgeError(f"duplicate edge {key}", lineno)
        edges[key] = w
    if header is None:
        raise MalformedLineError("missing 'graph <n> <d1> <d2>' header", lineno + 1)
    return Graph(*header, tuple((u, v, w) for (u, v), w in edges.items()))


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _format_weight(w: Fraction) -> str:
    if w.denominator == 1:
        return str(w.numerator)
    return f"{w.numerator}/{w.denominator}"


def serialize_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"graph {g.n} {g.d1} {g.d2}")
    lines.extend(f"edge {u} {v} {_format_weight(w)}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Combinatorial quantities


def weighted_degree(g: Graph, v: int) -> Fraction:
    if not 0 <= v < g.n:
        raise VertexRangeError(f"vertex {v} outside [0, {g.n})")
    return g.degrees[v]


def total_degree(g: Graph) -> Fraction:
    return 2 * sum((w for _, _, w in g.edges), Fraction(0))


def adjacency_matrix(g: Graph) -> SymMatrix:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = a[v, u] = float(w)
    return SymMatrix(a)


def degree_matrix(g: Graph) -> SymMatrix:
    return SymMatrix(np.diag([float(d) for d in g.degrees]))


def _pt_pair(g: Graph, u: int, v: int) -> tuple[int, int]:
    i, k = divmod(u, g.d2)
    j, l = divmod(v, g.d2)
    return i * g.d2 + l, j * g.d2 + k


def partial_transpose_graph(g: Graph) -> Graph:
    """Graph whose adjacency matrix is the partial transpose of ``A_G``.

    Cross edges ``(v_ik, v_jl)`` with ``i != j`` and ``k != l`` move to
    ``(v_il, v_jk)`` carrying their weight; row and column edges stay put. The
    map is an involution on vertex pairs, so when an edge and its mirror are
    both present they simply exchange weights.
    """
    out: dict[tuple[int, int], Fraction] = {}
    for u, v, w in g.edges:
        a, b = _pt_pair(g, u, v)
        key = (min(a, b), max(a, b))
        if a == b or key in out:
            raise CollisionError(f"edge ({u}, {v}) collides at {key}")
        out[key] = w
    return Graph(g.n, g.d1, g.d2, tuple((a, b, w) for (a, b), w in out.items()))


def frobenius_norm_sq(g: Graph) -> Fraction:
    return 2 * sum((w * w for _, _, w in g.edges), Fraction(0))


def triangle_weight_sum(g: Graph) -> Fraction:
    """Sum over triangles of the product of their three edge weights."""
    nbrs = g.neighbors
    total = Fraction(0)
    for u, v, w_uv in g.edges:
        for x in nbrs[u].keys() & nbrs[v].keys():
            if x > v:
                total += w_uv * nbrs[u][x] * nbrs[v][x]
    return total


def sum_swapped_degree_weighted(g: Graph) -> Fraction:
    """``sum over (v_ik, v_jl) in E(G) of (d(v_il) + d(v_jk)) * w**2``.

    Degrees are those of ``g`` itself; the value equals ``tr(D (A^T_B)^2)``.
    """
    d = g.degrees
    total = Fraction(0)
    for u, v, w in g.edges:
        a, b = _pt_pair(g, u, v)
        total += (d[a] + d[b]) * w * w
    return total


def is_connected(g: Graph) -> bool:
    nbrs = g.neighbors
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in nbrs[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.n


def generate_family(f: GraphFamily, d1: int, d2: int) -> Graph:
    """Build a member of a standard family on a ``d1 x d2`` grid.

    ``complete``, ``path`` and ``cycle`` have unit weights and follow the
    vertex index order. ``random`` keeps each pair independently with
    probability ``f.density`` and draws weights uniformly from
    ``{k/100 : k = 1..100}``; it is deterministic for a fixed seed.
    """
    if f.n != d1 * d2:
        raise DimensionError(f"family size {f.n} does not match d1*d2 = {d1 * d2}")
    one = Fraction(1)
    if f.kind == "complete":
        edges = [(u, v, one) for u, v in combinations(range(f.n), 2)]
    elif f.kind == "path":
        edges = [(i, i + 1, one) for i in range(f.n - 1)]
    elif f.kind == "cycle":
        edges = [(i, i + 1, one) for i in range(f.n - 1)] + [(0, f.n - 1, one)]
    else:
        rng = np.random.default_rng(f.seed)
        edges = []
        for u, v in combinations(range(f.n), 2):
            keep = rng.random() < f.density
            k = int(rng.integers(1, 101))
            if keep:
                edges.append((u, v, Fraction(k, 100)))
    return Graph(f.n, d1, d2, tuple(edges))
