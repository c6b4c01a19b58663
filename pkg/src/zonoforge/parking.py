"""Parking functions of rooted multigraphs and the broken wheel specials.

A parking function of a multigraph with root vertex 0 is a vector s of
naturals over the non-root vertices such that every nonempty subset U of
non-root vertices contains a vertex v with s(v) strictly below the number of
edges (with multiplicity) joining v to vertices outside U.  This subset
condition is the source of truth here; the interval-only conditions used for
broken wheel graphs are separate predicates whose equivalence on those
graphs is tested, not assumed.

Parking functions are represented as plain exponent tuples; enumeration
functions only ever emit tuples that satisfy the defining condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from . import linalg
from .graphs import DirectedMultigraph, broken_wheel
from .mpoly import MPoly

ENUMERATION_LIMIT = 7
CHARACTERIZATION_LIMIT = 8


def is_gparking(g: DirectedMultigraph, root: int, s: tuple[int, ...]) -> bool:
    """Subset-based parking test over the non-root vertices of g (undirected)."""
    verts = [v for v in range(g.nvertices) if v != root]
    if len(s) != len(verts):
        raise ValueError("parking vector length must equal non-root vertex count")
    if any(e < 0 for e in s):
        return False
    label = {v: s[i] for i, v in enumerate(verts)}
    adj = g.adjacency_counts()
    for size in range(1, len(verts) + 1):
        for U in combinations(verts, size):
            inside = set(U)
            ok = False
            for v in U:
                d = sum(adj[v][w] for w in range(g.nvertices) if w not in inside)
                if label[v] < d:
                    ok = True
                    break
            if not ok:
                return False
    return True


def enumerate_parking(g: DirectedMultigraph, root: int = 0) -> list[tuple[int, ...]]:
    """All parking functions, lexicographically sorted.

    Candidate entries are capped by the vertex degree (the singleton subset
    condition), then the full subset condition filters the product space.
    """
    n = g.nvertices - 1
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"vertex count {n} exceeds guard {ENUMERATION_LIMIT}")
    verts = [v for v in range(g.nvertices) if v != root]
    ranges = [range(g.undirected_degree(v)) for v in verts]
    out = [s for s in product(*ranges) if is_gparking(g, root, s)]
    out.sort()
    return out


def maximal_parking(g: DirectedMultigraph, root: int = 0) -> list[tuple[int, ...]]:
    """Parking functions of total weight n (the number of non-root vertices)."""
    n = g.nvertices - 1
    return [s for s in enumerate_parking(g, root) if sum(s) == n]


def spanning_tree_count(g: DirectedMultigraph, root: int = 0) -> int:
    """Matrix-tree determinant: spanning trees of the undirected multigraph."""
    adj = g.adjacency_counts()
    verts = [v for v in range(g.nvertices) if v != root]
    lap = []
    for v in verts:
        row = []
        deg = sum(adj[v][w] for w in range(g.nvertices) if w != v)
        for w in verts:
            row.append(deg if v == w else -adj[v][w])
        lap.append(row)
    return linalg.det(lap)


# ----------------------------------------------------------------------
# broken-wheel interval conditions


def bw_out_degree(n: int, i: int, k: int, j: int) -> int:
    """Edges (with multiplicity) from vertex k to vertices outside [i:j] in BW_n.

    The doubled root radius counts twice, so the value is always 1, 2, or 3.
    """
    if not (1 <= i <= k <= j <= n):
        raise ValueError("need 1 <= i <= k <= j <= n")
    d = 2 if k == 1 else 1  # radius edges to vertex 0
    if k >= 2 and k == i:
        d += 1  # path edge to k-1, which lies outside the interval
    if k <= n - 1 and k == j:
        d += 1  # path edge to k+1
    return d


def bw_parking_interval(n: int, s: tuple[int, ...]) -> bool:
    """Interval-only parking condition for the broken wheel graph."""
    if len(s) != n:
        raise ValueError("vector length must equal n")
    if any(e < 0 for e in s):
        return False
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if not any(s[k - 1] < bw_out_degree(n, i, k, j) for k in range(i, j + 1)):
                return False
    return True


def bw_internal_parking(n: int, s: tuple[int, ...]) -> bool:
    """Interval-only internal parking condition for the broken wheel graph.

    For every interval [i:j], either some k in [i:j-1] satisfies the plain
    condition, or the right endpoint satisfies the strengthened
    out-degree-minus-one condition.
    """
    if len(s) != n:
        raise ValueError("vector length must equal n")
    if any(e < 0 for e in s):
        return False
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if any(s[k - 1] < bw_out_degree(n, i, k, j) for k in range(i, j)):
                continue
            if s[j - 1] < bw_out_degree(n, i, j, j) - 1:
                continue
            return False
    return True


def enumerate_bw_parking(n: int) -> list[tuple[int, ...]]:
    """All parking functions of BW_n by the interval condition, sorted.

    Entries are bounded by the interval out-degrees (at most 2, and at most
    1 at the last vertex), so the candidate space stays small even past the
    general enumeration guard.
    """
    ranges = [range(3)] * (n - 1) + [range(2)]
    return sorted(s for s in product(*ranges) if bw_parking_interval(n, s))


def enumerate_bw_internal(n: int) -> list[tuple[int, ...]]:
    """All internal parking functions of BW_n, lexicographically sorted."""
    ranges = [range(3) for _ in range(n)]
    return sorted(s for s in product(*ranges) if bw_internal_parking(n, s))


# ----------------------------------------------------------------------
# closed-form support characterizations


@dataclass(frozen=True)
class SupportCharacterizations:
    """Product polynomials whose supports are the three BW parking classes."""

    n: int
    maximal_poly: MPoly  # prod_i (t_{i-1} + t_i), support = maximal parking
    parking_poly: MPoly  # prod_i (1 + t_{i-1} + t_i), support = all parking
    internal_poly: MPoly  # prod_{i<n} (1 + t_i), support = internal parking


def _shifted_pair(n: int, i: int, constant: int) -> MPoly:
    """constant + t_{i-1} + t_i in n variables, with t_0 = 0."""
    terms = {}
    if constant:
        terms[(0,) * n] = constant
    exp = [0] * n
    exp[i - 1] = 1
    terms[tuple(exp)] = 1
    if i >= 2:
        exp2 = [0] * n
        exp2[i - 2] = 1
        terms[tuple(exp2)] = 1
    return MPoly(n, terms)


def bw_product_polys(n: int) -> tuple[MPoly, MPoly, MPoly]:
    """The three product polynomials (maximal, all, internal), unchecked."""
    if n < 1:
        raise ValueError("n must be positive")
    p_max = MPoly.constant(n, 1)
    p_all = MPoly.constant(n, 1)
    for i in range(1, n + 1):
        p_max = p_max * _shifted_pair(n, i, 0)
        p_all = p_all * _shifted_pair(n, i, 1)
    p_int = MPoly.constant(n, 1)
    for i in range(1, n):
        p_int = p_int * (MPoly.constant(n, 1) + MPoly.variable(n, i))
    return p_max, p_all, p_int


def support_characterizations(n: int) -> SupportCharacterizations:
    """Build the three product polynomials and check them against enumeration.

    The parking sets are enumerated by the general subset definition up to
    the enumeration guard and by the interval condition beyond it (the two
    are verified equivalent elsewhere).  Raises AssertionError naming the
    characterization that fails, if any.
    """
    if not 1 <= n <= CHARACTERIZATION_LIMIT:
        raise ValueError(f"n must be in 1..{CHARACTERIZATION_LIMIT}")
    p_max, p_all, p_int = bw_product_polys(n)

    if n <= ENUMERATION_LIMIT:
        parking = set(enumerate_parking(broken_wheel(n)))
    else:
        parking = set(enumerate_bw_parking(n))
    maximal = {s for s in parking if sum(s) == n}
    internal = set(enumerate_bw_internal(n))

    if set(p_max.support()) != maximal:
        raise AssertionError("maximal parking support characterization failed")
    if set(p_all.support()) != parking:
        raise AssertionError("parking support characterization failed")
    if set(p_int.support()) != internal:
        raise AssertionError("internal parking support characterization failed")
    return SupportCharacterizations(n, p_max, p_all, p_int)


def parking_json(n: int, cls: str, functions: list[tuple[int, ...]]) -> dict:
    return {"n": n, "class": cls, "functions": [list(s) for s in sorted(functions)]}
