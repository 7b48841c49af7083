"""Immutable labeled trees and exact Wiener index computation.

Two independent algorithms compute the Wiener index: the production
path decomposes the sum over edges (each edge contributes the product
of the two component sizes its removal leaves), while the reference
oracle runs a breadth-first sweep from every vertex and adds up raw
distances.  They must agree on every tree; keeping both is what lets
the rest of the package trust a single number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    Disconnected,
    DuplicateEdge,
    LabelOutOfRange,
    MalformedEdgeList,
    NotCaterpillar,
    Overflow,
    SelfLoop,
    WrongEdgeCount,
)

__all__ = [
    "Tree",
    "VertexProfile",
    "build_tree",
    "path_tree",
    "star_tree",
    "path_wiener",
    "star_wiener",
    "wiener",
    "wiener_reference",
    "distance_sum",
    "vertex_profile",
    "interior_path",
    "canonical_code",
    "parse_edge_list",
    "format_edge_list",
]

# Above 2**53 a float64 can no longer hold every integer, so the
# reference oracle (which sums a float distance matrix) refuses.
_FLOAT_EXACT_LIMIT = 1 << 53


class Tree:
    """A labeled tree on vertices 0..n-1, immutable after construction.

    Edges are stored as a lexicographically sorted tuple of (u, v)
    pairs with u < v; adjacency lists are sorted ascending.  Instances
    are created through :func:`build_tree`, which validates, or the
    convenience constructors :func:`path_tree` / :func:`star_tree`.
    """

    __slots__ = ("n", "edges", "adjacency")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        normalized = _validate_edges(n, edges)
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            adjacency[u].append(v)
            adjacency[v].append(u)
        for row in adjacency:
            row.sort()
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", normalized)
        object.__setattr__(self, "adjacency", tuple(tuple(row) for row in adjacency))
        _check_connected(self)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("Tree is immutable")

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def is_leaf(self, v: int) -> bool:
        return len(self.adjacency[v]) == 1

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if len(self.adjacency[v]) == 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={list(self.edges)!r})"


def _validate_edges(n: int, edges: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise WrongEdgeCount(f"vertex count must be positive, got {n}")
    pairs = []
    seen: set[tuple[int, int]] = set()
    for edge in edges:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise LabelOutOfRange(f"edge {edge!r} has a label outside [0, {n - 1}]")
        if u == v:
            raise SelfLoop(f"edge {edge!r} joins a vertex to itself")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key!r} appears more than once")
        seen.add(key)
        pairs.append(key)
    if len(pairs) != n - 1:
        raise WrongEdgeCount(f"a tree on {n} vertices needs {n - 1} edges, got {len(pairs)}")
    pairs.sort()
    return tuple(pairs)


def _check_connected(tree: Tree) -> None:
    n = tree.n
    if n == 1:
        return
    adjacency = tree.adjacency
    seen = bytearray(n)
    seen[0] = 1
    frontier = [0]
    count = 1
    while frontier:
        nxt = []
        for v in frontier:
            for w in adjacency[v]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    nxt.append(w)
        frontier = nxt
    if count != n:
        raise Disconnected(f"edge set reaches {count} of {n} vertices")


def build_tree(n: int, edges: Iterable[tuple[int, int]]) -> Tree:
    """Validate an edge list and return the corresponding tree.

    Raises WrongEdgeCount, SelfLoop, DuplicateEdge, LabelOutOfRange or
    Disconnected; together these checks guarantee acyclicity, so a
    returned Tree is always a tree.
    """
    return Tree(n, edges)


def path_tree(n: int) -> Tree:
    """Path 0 - 1 - ... - (n-1)."""
    return Tree(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    """Star with center 0 and leaves 1..n-1."""
    return Tree(n, [(0, i) for i in range(1, n)])


def path_wiener(n: int) -> int:
    """W of the n-vertex path: C(n+1, 3), the maximum over all trees."""
    return math.comb(n + 1, 3)


def star_wiener(n: int) -> int:
    """W of the n-vertex star: (n-1)^2, the minimum over all trees."""
    return (n - 1) ** 2


def wiener(tree: Tree) -> int:
    """Wiener index by edge contribution.

    Rooting anywhere, each edge (v, parent) separates the subtree under
    v from the rest, so it adds size(v) * (n - size(v)) shortest paths
    of length 1 across it.  One traversal, exact integers throughout.
    """
    n = tree.n
    if n < 2:
        return 0
    adjacency = tree.adjacency
    parent = [-1] * n
    parent[0] = 0
    order = [0]
    for v in order:
        for w in adjacency[v]:
            if parent[w] < 0:
                parent[w] = v
                order.append(w)
    size = [1] * n
    total = 0
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
        total += size[v] * (n - size[v])
    return total


def wiener_reference(tree: Tree) -> int:
    """Wiener index by a literal all-pairs breadth-first distance sum.

    Deliberately implemented on a different code path (scipy's compiled
    per-source sweep over a CSR adjacency structure) so that it shares
    nothing with :func:`wiener` beyond the Tree itself.  The float64
    distance matrix is converted back to integers with an exactness
    check; any value at or beyond 2**53 raises Overflow instead of
    silently rounding.
    """
    n = tree.n
    if n < 2:
        return 0
    if n == 2:
        return 1

    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra

    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + len(tree.adjacency[v])
    indices = np.fromiter(
        (w for row in tree.adjacency for w in row), dtype=np.int32, count=int(indptr[n])
    )
    data = np.ones(len(indices), dtype=np.int8)
    graph = csr_matrix((data, indices, indptr), shape=(n, n))

    total = 0
    chunk = 512
    for start in range(0, n, chunk):
        sources = np.arange(start, min(start + chunk, n))
        dist = dijkstra(graph, directed=False, unweighted=True, indices=sources)
        if not np.isfinite(dist).all():
            raise Disconnected("reference sweep found an unreachable vertex")
        if dist.max() >= _FLOAT_EXACT_LIMIT:
            raise Overflow("distance exceeds exact float64 range")
        as_int = dist.astype(np.int64)
        if (as_int != dist).any():
            raise Overflow("distance matrix is not exactly integral")
        total += int(as_int.sum(dtype=object))
    return total // 2


def _distances_from(tree: Tree, source: int) -> list[int]:
    dist = [-1] * tree.n
    dist[source] = 0
    frontier = [source]
    depth = 0
    adjacency = tree.adjacency
    while frontier:
        depth += 1
        nxt = []
        for v in frontier:
            for w in adjacency[v]:
                if dist[w] < 0:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    return dist


def distance_sum(tree: Tree, u: int, vertices: Iterable[int]) -> int:
    """Sum of d(u, v) over the given vertices (repeats count again)."""
    if not 0 <= u < tree.n:
        raise LabelOutOfRange(f"vertex {u} outside [0, {tree.n - 1}]")
    dist = _distances_from(tree, u)
    total = 0
    for v in vertices:
        if not 0 <= v < tree.n:
            raise LabelOutOfRange(f"vertex {v} outside [0, {tree.n - 1}]")
        total += dist[v]
    return total


@dataclass(frozen=True)
class VertexProfile:
    """Per-vertex degree facts: leaves have degree 1, petals have a leaf neighbor."""

    degrees: tuple[int, ...]
    is_leaf: tuple[bool, ...]
    is_petal: tuple[bool, ...]

    @property
    def leaf_count(self) -> int:
        return sum(self.is_leaf)


def vertex_profile(tree: Tree) -> VertexProfile:
    degrees = tuple(len(row) for row in tree.adjacency)
    is_leaf = tuple(d == 1 for d in degrees)
    is_petal = tuple(
        any(is_leaf[w] for w in tree.adjacency[v]) for v in range(tree.n)
    )
    return VertexProfile(degrees, is_leaf, is_petal)


def interior_path(tree: Tree) -> tuple[int, ...]:
    """The non-leaf vertices in path order, if they induce a path.

    Raises NotCaterpillar otherwise.  Trees with fewer than two interior
    vertices (stars, edges, single points) return what little there is.
    The orientation is normalized: the returned sequence starts at the
    endpoint with the smaller label.
    """
    n = tree.n
    degrees = [len(row) for row in tree.adjacency]
    interior = [v for v in range(n) if degrees[v] > 1]
    if len(interior) <= 1:
        return tuple(interior)
    inner_degree = {}
    for v in interior:
        inner_degree[v] = sum(1 for w in tree.adjacency[v] if degrees[w] > 1)
    ends = [v for v in interior if inner_degree[v] <= 1]
    if any(inner_degree[v] > 2 for v in interior) or len(ends) != 2:
        raise NotCaterpillar("interior vertices do not induce a path")
    start = min(ends)
    order = [start]
    prev = -1
    current = start
    while True:
        nxt = [w for w in tree.adjacency[current] if degrees[w] > 1 and w != prev]
        if not nxt:
            break
        prev, current = current, nxt[0]
        order.append(current)
    if len(order) != len(interior):
        raise NotCaterpillar("interior vertices do not induce a path")
    return tuple(order)


def _tree_centers(tree: Tree) -> tuple[int, ...]:
    # classic leaf stripping; one or two vertices survive
    n = tree.n
    if n <= 2:
        return tuple(range(n))
    degree = [len(row) for row in tree.adjacency]
    layer = [v for v in range(n) if degree[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in tree.adjacency[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
            degree[v] = 0
        layer = nxt
    return tuple(sorted(layer))


def _rooted_code(tree: Tree, root: int) -> str:
    # iterative AHU: children's codes sorted and wrapped in parentheses
    n = tree.n
    parent = [-2] * n
    parent[root] = -1
    order = [root]
    for v in order:
        for w in tree.adjacency[v]:
            if parent[w] == -2:
                parent[w] = v
                order.append(w)
    code: list[str] = [""] * n
    children: list[list[str]] = [[] for _ in range(n)]
    for v in reversed(order):
        code[v] = "(" + "".join(sorted(children[v])) + ")"
        if parent[v] >= 0:
            children[parent[v]].append(code[v])
    return code[root]


def canonical_code(tree: Tree) -> str:
    """Isomorphism-complete code: minimal AHU string rooted at a center.

    Any isomorphism maps centers to centers, so taking the smaller of
    the at most two center-rooted codes yields equal strings exactly
    for isomorphic trees.
    """
    return min(_rooted_code(tree, c) for c in _tree_centers(tree))


# -- serialization ----------------------------------------------------------
#
# Text format: first line `n <N>`, then N-1 lines `<u> <v>` with 0-based
# labels.  Lines starting with `#` are comments; blank lines are skipped.
# Emission always sorts edges lexicographically, so output is stable.

def format_edge_list(tree: Tree) -> str:
    lines = [f"n {tree.n}"]
    lines.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Tree:
    header: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2 or parts[0] != "n":
                raise MalformedEdgeList(f"line {lineno}: expected header 'n <count>'")
            try:
                header = int(parts[1])
            except ValueError:
                raise MalformedEdgeList(f"line {lineno}: vertex count is not an integer") from None
            continue
        if len(parts) != 2:
            raise MalformedEdgeList(f"line {lineno}: expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedEdgeList(f"line {lineno}: labels are not integers") from None
        edges.append((u, v))
    if header is None:
        raise MalformedEdgeList("no header line found")
    return build_tree(header, edges)
