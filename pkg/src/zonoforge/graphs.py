"""Rooted trees, orientations, and (generalized) broken wheel graphs.

A broken wheel graph on n+1 vertices 0..n consists of a doubled edge from 0
to 1, a single edge from 0 to every other vertex, and a path 1-2-...-n.  Its
edges carry a fixed order that the activity and space computations depend on:

    x_{2i-1} = edge between i-1 and i   (for i=1 this is the doubled radius)
    x_{2i}   = edge between 0 and i

A generalized broken wheel graph is built the same way from an arbitrary
rooted tree with a +/-1 orientation vector: tree edges are directed away from
the root where the orientation is +1 and toward it where it is -1, the root
gets a doubled radius, and every vertex gets a radius from 0.  The canonical
edge order interleaves tree edges and radii vertex by vertex so that the path
tree with the all-forward orientation reproduces the broken wheel order
exactly.

Edges are realized as vectors e_head - e_tail (with e_0 = 0); the columns of
the edge matrix generate the graphic matroid used everywhere else.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from . import linalg

ROOT_TREE_LIMIT = 8  # labeled-tree enumeration guard


@dataclass(frozen=True)
class RootedTree:
    """A tree on vertices 1..n rooted at 1, stored as a parent array.

    parent[i-1] is the parent of vertex i; the root's entry is the sentinel 0.
    """

    n: int
    parent: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("tree needs at least one vertex")
        if len(self.parent) != self.n:
            raise ValueError("parent array length must equal n")
        if self.parent[0] != 0:
            raise ValueError("vertex 1 must be the root (parent sentinel 0)")
        for i in range(2, self.n + 1):
            p = self.parent[i - 1]
            if not 1 <= p <= self.n:
                raise ValueError(f"vertex {i} has invalid parent {p}")
        # every vertex must reach the root without cycles
        for i in range(2, self.n + 1):
            seen = set()
            v = i
            while v != 1:
                if v in seen:
                    raise ValueError("parent pointers contain a cycle")
                seen.add(v)
                v = self.parent[v - 1]

    @classmethod
    def path(cls, n: int) -> "RootedTree":
        """The path 1-2-...-n rooted at 1."""
        return cls(n, tuple([0] + list(range(1, n))))

    def children(self, v: int) -> tuple[int, ...]:
        return tuple(i for i in range(2, self.n + 1) if self.parent[i - 1] == v)

    def subtree(self, v: int) -> frozenset[int]:
        """Vertices of the subtree rooted at v (including v)."""
        out = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for c in self.children(u):
                out.add(c)
                stack.append(c)
        return frozenset(out)

    def shape_key(self):
        """Canonical key of the unlabeled rooted shape (children sorted recursively)."""

        def canon(v: int):
            return tuple(sorted(canon(c) for c in self.children(v)))

        return canon(1)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "parent": list(self.parent)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "RootedTree":
        return cls(int(data["n"]), tuple(int(p) for p in data["parent"]))


@dataclass(frozen=True)
class Orientation:
    """A +/-1 vector over the tree vertices; entry 1 (the root) is always +1."""

    k: tuple[int, ...]

    def __post_init__(self):
        if not self.k:
            raise ValueError("orientation must be nonempty")
        if any(v not in (1, -1) for v in self.k):
            raise ValueError("orientation entries must be +1 or -1")
        if self.k[0] != 1:
            raise ValueError("orientation must fix +1 at the root")

    @classmethod
    def all_forward(cls, n: int) -> "Orientation":
        return cls((1,) * n)

    def to_json_dict(self) -> dict:
        return {"k": list(self.k)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Orientation":
        return cls(tuple(int(v) for v in data["k"]))


@dataclass(frozen=True)
class DirectedMultigraph:
    """Directed multigraph on vertices 0..nvertices-1 with an ordered edge list.

    Parallel edges are allowed and the order of the edge sequence is
    significant: activity valuations depend on it.
    """

    nvertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for t, h in self.edges:
            if not (0 <= t < self.nvertices and 0 <= h < self.nvertices):
                raise ValueError(f"edge ({t},{h}) out of range")
            if t == h:
                raise ValueError("self-loops are not supported")
        incident = set()
        for t, h in self.edges:
            incident.add(t)
            incident.add(h)
        for v in range(1, self.nvertices):
            if v not in incident:
                raise ValueError(f"vertex {v} has no incident edge")

    @property
    def n(self) -> int:
        """Number of non-root vertices (the root is vertex 0)."""
        return self.nvertices - 1

    def indegree(self, v: int) -> int:
        return sum(1 for _, h in self.edges if h == v)

    def undirected_degree(self, v: int) -> int:
        return sum(1 for t, h in self.edges if v in (t, h))

    def adjacency_counts(self) -> list[list[int]]:
        """Undirected multiplicity matrix adj[v][w]."""
        adj = [[0] * self.nvertices for _ in range(self.nvertices)]
        for t, h in self.edges:
            adj[t][h] += 1
            adj[h][t] += 1
        return adj


class EdgeMatrix:
    """Ordered integer column vectors; columns are 1-indexed in the public API."""

    def __init__(self, columns):
        cols = tuple(tuple(int(x) for x in c) for c in columns)
        if not cols:
            raise ValueError("edge matrix needs at least one column")
        dim = len(cols[0])
        if any(len(c) != dim for c in cols):
            raise ValueError("columns must share a dimension")
        self.columns = cols
        self.dimension = dim

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def column(self, j: int) -> tuple[int, ...]:
        """Column x_j, 1-indexed."""
        if not 1 <= j <= self.ncols:
            raise ValueError(f"column index {j} out of range")
        return self.columns[j - 1]

    @cached_property
    def rank(self) -> int:
        return linalg.rank([list(c) for c in self.columns], self.dimension)

    def submatrix_rank(self, indices) -> int:
        """Rank of the selected columns (1-indexed indices)."""
        rows = [list(self.column(j)) for j in indices]
        if not rows:
            return 0
        return linalg.rank(rows, self.dimension)

    def reversed(self) -> "EdgeMatrix":
        return EdgeMatrix(tuple(reversed(self.columns)))

    def rows(self) -> list[list[int]]:
        return [[c[i] for c in self.columns] for i in range(self.dimension)]

    def __eq__(self, other) -> bool:
        return isinstance(other, EdgeMatrix) and self.columns == other.columns

    def __repr__(self) -> str:
        return f"EdgeMatrix({self.dimension}x{self.ncols})"


def broken_wheel(n: int) -> DirectedMultigraph:
    """The broken wheel graph on vertices 0..n with its canonical edge order."""
    if n < 1:
        raise ValueError("broken wheel graph needs n >= 1")
    edges = []
    for i in range(1, n + 1):
        edges.append((i - 1, i) if i > 1 else (0, 1))  # x_{2i-1}
        edges.append((0, i))  # x_{2i}
    return DirectedMultigraph(n + 1, tuple(edges))


def gbw(tree: RootedTree, orientation: Orientation) -> DirectedMultigraph:
    """The generalized broken wheel graph over an oriented rooted tree.

    Edge order: for each vertex i = 1..n ascending, first the tree edge at i
    (for the root this is the extra doubled radius), then the radius (0, i).
    A +1 orientation entry directs the tree edge toward i, a -1 entry toward
    its parent.
    """
    n = tree.n
    if len(orientation.k) != n:
        raise ValueError("orientation length must equal vertex count")
    edges = [(0, 1), (0, 1)]
    for i in range(2, n + 1):
        p = tree.parent[i - 1]
        edges.append((p, i) if orientation.k[i - 1] == 1 else (i, p))
        edges.append((0, i))
    return DirectedMultigraph(n + 1, tuple(edges))


def weights(g: DirectedMultigraph) -> tuple[int, ...]:
    """Indegree-minus-one weight vector over the non-root vertices 1..n."""
    out = []
    for v in range(1, g.nvertices):
        d = g.indegree(v)
        if d < 1:
            raise ValueError(f"vertex {v} has indegree 0; not a generalized broken wheel")
        out.append(d - 1)
    return tuple(out)


def edge_matrix(g: DirectedMultigraph) -> EdgeMatrix:
    """One column e_head - e_tail per edge, in edge order (e_0 = 0)."""
    n = g.n
    cols = []
    for t, h in g.edges:
        col = [0] * n
        if h != 0:
            col[h - 1] += 1
        if t != 0:
            col[t - 1] -= 1
        cols.append(tuple(col))
    return EdgeMatrix(tuple(cols))


def enumerate_orientations(n: int):
    """All 2^(n-1) orientations with +1 at the root, in binary-counter order.

    Position 2 is most significant and -1 sorts before +1 at each position.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for bits in product((-1, 1), repeat=n - 1):
        out.append(Orientation((1,) + bits))
    return out


def _tree_from_pruefer(seq: tuple[int, ...], n: int) -> RootedTree:
    degree = [1] * (n + 1)
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    w = heapq.heappop(leaves)
    edges.append((u, w))
    # orient toward root 1
    adj = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent = [0] * n
    stack = [1]
    seen = {1}
    while stack:
        v = stack.pop()
        for w2 in adj[v]:
            if w2 not in seen:
                seen.add(w2)
                parent[w2 - 1] = v
                stack.append(w2)
    return RootedTree(n, tuple(parent))


def enumerate_rooted_trees(n: int, distinct_shapes: bool = False):
    """All labeled trees on 1..n rooted at 1, via Pruefer sequences.

    There are n^(n-2) labeled trees for n >= 2 (one for n = 1).  With
    distinct_shapes=True, only the first representative of each unlabeled
    rooted shape is kept.
    """
    if not 1 <= n <= ROOT_TREE_LIMIT:
        raise ValueError(f"n must be in 1..{ROOT_TREE_LIMIT}")
    if n == 1:
        trees = [RootedTree(1, (0,))]
    elif n == 2:
        trees = [RootedTree(2, (0, 1))]
    else:
        trees = [
            _tree_from_pruefer(seq, n)
            for seq in product(range(1, n + 1), repeat=n - 2)
        ]
    if distinct_shapes:
        seen = set()
        unique = []
        for t in trees:
            key = t.shape_key()
            if key not in seen:
                seen.add(key)
                unique.append(t)
        return unique
    return trees
