"""Undirected graphs and chordal machinery.

Vertices are labelled 1..p throughout.  Graphs are immutable once built;
all operations are pure functions (``erdos_renyi`` owns its own seeded
generator).

The chordal toolchain is: ``max_cardinality_search`` produces a vertex
ordering that is perfect exactly when the graph is chordal;
``triangulate`` fills a graph into a chordal supergraph together with a
perfect ordering of it; ``orient_chordal`` directs the edges along such
an ordering, yielding an acyclic orientation with no v-structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "UndirectedGraph",
    "AcyclicOrientation",
    "NotChordalError",
    "erdos_renyi",
    "max_cardinality_search",
    "is_perfect_ordering",
    "triangulate",
    "orient_chordal",
]


class NotChordalError(ValueError):
    """Raised when an operation requires a chordal graph and gets none."""


class UndirectedGraph:
    """Simple undirected graph on vertices ``{1, ..., p}``.

    Parameters
    ----------
    p : int
        Number of vertices, at least 1.
    edges : iterable of (int, int)
        Unordered vertex pairs.  Pairs are normalised to ``i < j``;
        self loops are rejected, duplicates collapse.
    """

    __slots__ = ("_p", "_edges", "_adj")

    def __init__(self, p: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(p, (int, np.integer)) or p < 1:
            raise ValueError(f"vertex count must be a positive integer, got {p!r}")
        self._p = int(p)
        adj: list[set[int]] = [set() for _ in range(self._p + 1)]
        norm: set[tuple[int, int]] = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self loop at vertex {i}")
            if not (1 <= i <= self._p and 1 <= j <= self._p):
                raise ValueError(f"edge ({i}, {j}) outside vertex range 1..{self._p}")
            a, b = (i, j) if i < j else (j, i)
            norm.add((a, b))
            adj[a].add(b)
            adj[b].add(a)
        self._edges = frozenset(norm)
        self._adj = tuple(frozenset(s) for s in adj)

    @property
    def p(self) -> int:
        return self._p

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        """Edge set as pairs with ``i < j``."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> frozenset[int]:
        if not 1 <= v <= self._p:
            raise ValueError(f"vertex {v} outside 1..{self._p}")
        return self._adj[v]

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges in lexicographic order, the canonical enumeration."""
        return sorted(self._edges)

    def nonadjacent_pairs(self) -> list[tuple[int, int]]:
        """All pairs ``i < j`` that are not edges."""
        return [
            (i, j)
            for i in range(1, self._p + 1)
            for j in range(i + 1, self._p + 1)
            if (i, j) not in self._edges
        ]

    def adjacency_matrix(self) -> np.ndarray:
        """Boolean adjacency matrix, 0-based, shape ``(p, p)``."""
        a = np.zeros((self._p, self._p), dtype=bool)
        for i, j in self._edges:
            a[i - 1, j - 1] = True
            a[j - 1, i - 1] = True
        return a

    @classmethod
    def chain(cls, p: int) -> "UndirectedGraph":
        """Path graph 1 - 2 - ... - p."""
        return cls(p, [(i, i + 1) for i in range(1, p)])

    @classmethod
    def complete(cls, p: int) -> "UndirectedGraph":
        return cls(p, [(i, j) for i in range(1, p + 1) for j in range(i + 1, p + 1)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self._p == other._p and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._p, self._edges))

    def __repr__(self) -> str:
        return f"UndirectedGraph(p={self._p}, edges={len(self._edges)})"


@dataclass(frozen=True)
class AcyclicOrientation:
    """Acyclic orientation of an undirected graph along a vertex ordering.

    ``parents[v]`` and ``children[v]`` are keyed by vertex label; every
    edge is directed from the earlier to the later endpoint of ``order``,
    so ``order`` is a topological order of the result.
    """

    parents: dict[int, frozenset[int]]
    children: dict[int, frozenset[int]]
    order: tuple[int, ...]

    def parent_count(self, v: int) -> int:
        return len(self.parents[v])

    def child_count(self, v: int) -> int:
        return len(self.children[v])


def erdos_renyi(p: int, d: float, seed) -> UndirectedGraph:
    """Erdos-Renyi G(p, d) random graph.

    Each of the ``p (p - 1) / 2`` unordered pairs becomes an edge
    independently with probability ``d``.  Pairs are visited in
    lexicographic order with one uniform draw each, so the result is
    reproducible given the seed.

    Parameters
    ----------
    p : int
        Vertex count, at least 1.
    d : float
        Edge probability in [0, 1].
    seed : int, sequence of int, SeedSequence or Generator
        Anything accepted by :func:`numpy.random.default_rng`.
    """
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {d}")
    rng = np.random.default_rng(seed)
    rows, cols = np.triu_indices(p, k=1)
    u = rng.random(rows.size)
    keep = u < d
    edges = [(int(i) + 1, int(j) + 1) for i, j in zip(rows[keep], cols[keep])]
    return UndirectedGraph(p, edges)


def max_cardinality_search(g: UndirectedGraph) -> tuple[tuple[int, ...], bool]:
    """Maximum cardinality search visit order, plus a perfectness flag.

    Repeatedly visits the unvisited vertex with the most visited
    neighbors, breaking ties by smallest label.  The returned flag is
    True iff the order is a perfect ordering of ``g`` (each vertex's
    earlier neighbors form a clique), which holds exactly when ``g``
    is chordal.

    Returns
    -------
    order : tuple of int
        Visit order; position k holds the k-th visited vertex.
    perfect : bool
        Whether ``order`` is a perfect ordering of ``g``.
    """
    p = g.p
    weight = {v: 0 for v in range(1, p + 1)}
    unvisited = set(weight)
    order: list[int] = []
    for _ in range(p):
        v = min(unvisited, key=lambda u: (-weight[u], u))
        order.append(v)
        unvisited.remove(v)
        for w in g.neighbors(v):
            if w in unvisited:
                weight[w] += 1
    ordert = tuple(order)
    return ordert, is_perfect_ordering(g, ordert)


def is_perfect_ordering(g: UndirectedGraph, order: Sequence[int]) -> bool:
    """Check that each vertex's earlier neighbors are pairwise adjacent."""
    if sorted(order) != list(range(1, g.p + 1)):
        raise ValueError("order is not a permutation of 1..p")
    pos = {v: k for k, v in enumerate(order)}
    for v in order:
        earlier = [w for w in g.neighbors(v) if pos[w] < pos[v]]
        for a in range(len(earlier)):
            for b in range(a + 1, len(earlier)):
                if not g.has_edge(earlier[a], earlier[b]):
                    return False
    return True


def triangulate(g: UndirectedGraph) -> tuple[UndirectedGraph, tuple[int, ...]]:
    """Fill ``g`` into a chordal supergraph with a perfect ordering.

    Plays the elimination game on the maximum cardinality search order:
    vertices are processed from last to first, and at each step the
    current earlier neighborhood of the vertex is completed into a
    clique.  The result is chordal and the MCS order is perfect for it.
    If ``g`` is already chordal no fill is added and the graph comes
    back unchanged.  Fill-in is not minimised.

    Returns
    -------
    gp : UndirectedGraph
        Chordal supergraph of ``g``.
    order : tuple of int
        A perfect ordering of ``gp``.
    """
    order, perfect = max_cardinality_search(g)
    if perfect:
        return g, order
    pos = {v: k for k, v in enumerate(order)}
    adj = {v: set(g.neighbors(v)) for v in range(1, g.p + 1)}
    for k in range(g.p - 1, -1, -1):
        v = order[k]
        earlier = [w for w in adj[v] if pos[w] < k]
        for a in range(len(earlier)):
            for b in range(a + 1, len(earlier)):
                x, y = earlier[a], earlier[b]
                if y not in adj[x]:
                    adj[x].add(y)
                    adj[y].add(x)
    edges = [(v, w) for v in adj for w in adj[v] if v < w]
    gp = UndirectedGraph(g.p, edges)
    return gp, order


def orient_chordal(g: UndirectedGraph, order: Sequence[int]) -> AcyclicOrientation:
    """Direct each edge from its earlier to its later endpoint.

    Requires ``order`` to be a perfect ordering of ``g``; the resulting
    acyclic orientation then has no v-structures (every parent set is
    a clique of ``g``).
    """
    if not is_perfect_ordering(g, order):
        raise ValueError("order is not a perfect ordering of the graph")
    pos = {v: k for k, v in enumerate(order)}
    parents = {v: frozenset(w for w in g.neighbors(v) if pos[w] < pos[v])
               for v in range(1, g.p + 1)}
    children = {v: frozenset(w for w in g.neighbors(v) if pos[w] > pos[v])
                for v in range(1, g.p + 1)}
    return AcyclicOrientation(parents=parents, children=children, order=tuple(order))
