"""Volume polynomials, simplex subdivisions, and the plane-tree chamber walk.

Three families of exact objects live here:

* the Stanley-Pitman polytope {r >= 0 : suffix sums of r <= suffix sums of t}
  and its volume polynomial, a sum of Catalan-many normalized monomials;
* per-orientation chambers of the simplex sum(r) <= sum(t) cut out by a
  rooted tree: each orientation yields a weight vector, a reference
  monomial, a half-space system over subtrees, and a volume polynomial read
  off a sandpile move closure (one normalized monomial per reachable weight);
* the subdivision of the prefix-sum polytope indexed by plane binary trees,
  realized by the up/down contour walk: each tree's chamber has a single
  normalized monomial as its volume.

Everything symbolic is exact; the only floating point lives in the
Monte-Carlo volume estimator, which is seeded and chunk-deterministic.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import (
    Orientation,
    RootedTree,
    enumerate_orientations,
    gbw,
    weights,
)
from .mpoly import Exponent, MPoly, monomials_of_degree, normalized_monomial

COMPOSITION_LIMIT = 12
SANDPILE_LIMIT = 12
PLANE_TREE_LIMIT = 10
PARTITION_SYMBOLIC_LIMIT = 8
MC_MIN_SAMPLES = 10_000
_MC_CHUNK = 1 << 16


class DegenerateContourError(Exception):
    """The contour walk hit a boundary configuration (non-generic input)."""


class ZeroMeasureError(Exception):
    """All samples missed and the system provably has empty interior."""


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def worker_count() -> int:
    """Worker cap from ZONOFORGE_THREADS (default 1; result never changes output)."""
    try:
        return max(1, int(os.environ.get("ZONOFORGE_THREADS", "1")))
    except ValueError:
        return 1


# ----------------------------------------------------------------------
# compositions and the Stanley-Pitman volume polynomial


@dataclass(frozen=True)
class CompositionSet:
    """Degree-n exponents whose prefix sums dominate their position index."""

    n: int
    members: frozenset[Exponent]

    def __post_init__(self):
        if len(self.members) != catalan(self.n):
            raise ValueError("composition set size must be the Catalan number")


def composition_set(n: int) -> CompositionSet:
    """All k in N^n with sum(k) = n and k_1 + ... + k_j >= j for j < n."""
    if not 1 <= n <= COMPOSITION_LIMIT:
        raise ValueError(f"n must be in 1..{COMPOSITION_LIMIT}")
    out: list[Exponent] = []

    def rec(prefix: tuple[int, ...], total: int):
        pos = len(prefix)
        if pos == n:
            if total == n:
                out.append(prefix)
            return
        if pos < n - 1 and total < pos:  # prefix condition already violated
            return
        for e in range(n - total + 1):
            if pos < n - 1 and total + e < pos + 1:
                continue
            rec(prefix + (e,), total + e)

    rec((), 0)
    return CompositionSet(n, frozenset(out))


def stanley_pitman_q(n: int) -> MPoly:
    """Volume polynomial of {r >= 0 : suffix sums of r <= suffix sums of t}.

    One normalized monomial t^s / s! per degree-n exponent s whose prefix
    sums satisfy s_1 + ... + s_i <= i; these are exactly the reversals of
    the composition-set members, so the term count is the Catalan number.
    """
    terms = {}
    for k in composition_set(n).members:
        s = tuple(reversed(k))
        den = 1
        for e in s:
            den *= math.factorial(e)
        terms[s] = Fraction(1, den)
    return MPoly(n, terms)


def simplex_volume_poly(n: int) -> MPoly:
    """(t_1 + ... + t_n)^n / n! by repeated multiplication (expansion oracle)."""
    form = MPoly.linear_form([1] * n)
    out = MPoly.constant(n, 1)
    for _ in range(n):
        out = out * form
    return out * Fraction(1, math.factorial(n))


# ----------------------------------------------------------------------
# sandpile closures and chamber volume polynomials


def _tree_moves(tree: RootedTree, k: Orientation) -> list[tuple[int, int]]:
    """Directed tree edges (i, j): a unit of weight may move from i to j."""
    moves = []
    for v in range(2, tree.n + 1):
        p = tree.parent[v - 1]
        moves.append((p, v) if k.k[v - 1] == 1 else (v, p))
    return moves


def sandpile_support(tree: RootedTree, k: Orientation) -> frozenset[Exponent]:
    """Weight vectors reachable from the orientation's start weights.

    A move shifts one unit along a directed tree edge out of a positive
    vertex; the apex vertex carries no weight and never participates.
    Breadth-first closure over the (finite) state space.
    """
    if tree.n > SANDPILE_LIMIT:
        raise ValueError(f"vertex count {tree.n} exceeds guard {SANDPILE_LIMIT}")
    start = weights(gbw(tree, k))
    moves = _tree_moves(tree, k)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i, j in moves:
                if w[i - 1] > 0:
                    w2 = list(w)
                    w2[i - 1] -= 1
                    w2[j - 1] += 1
                    w2 = tuple(w2)
                    if w2 not in seen:
                        seen.add(w2)
                        nxt.append(w2)
        frontier = nxt
    return frozenset(seen)


def ref_monomial(tree: RootedTree, k: Orientation) -> Exponent:
    """Indegree-minus-one weight vector; always lies in the sandpile support."""
    return weights(gbw(tree, k))


def q_tk(tree: RootedTree, k: Orientation) -> MPoly:
    """Chamber volume polynomial: sum of t^w / w! over the reachable weights."""
    poly = MPoly.zero(tree.n)
    for w in sandpile_support(tree, k):
        poly = poly + normalized_monomial(w)
    return poly


@dataclass(frozen=True)
class Chamber:
    """Half-space system of one orientation's chamber inside the simplex.

    One row per vertex j: the sum of r over the subtree rooted at j is <=
    (orientation +1) or >= (orientation -1) the same sum of t.  The root row
    is always the simplex inequality sum(r) <= sum(t).
    """

    tree: RootedTree
    k: Orientation
    rows: tuple[tuple[tuple[int, ...], str], ...]

    def evaluate(self, point, t) -> tuple[bool, bool, bool]:
        """(closed membership, strict membership, lies on some row hyperplane)."""
        point = [Fraction(v) for v in point]
        t = [Fraction(v) for v in t]
        closed = strict = True
        on_boundary = False
        for vars_, sense in self.rows:
            lhs = sum(point[i - 1] for i in vars_)
            rhs = sum(t[i - 1] for i in vars_)
            if lhs == rhs:
                on_boundary = True
                strict = False
            elif (lhs < rhs) != (sense == "<="):
                closed = strict = False
        return closed and all(v >= 0 for v in point), strict and all(
            v > 0 for v in point
        ), on_boundary

    def to_json_dict(self, t) -> dict:
        return {
            "tree": self.tree.to_json_dict(),
            "k": list(self.k.k),
            "rows": [
                {"vars": list(vars_), "sense": sense} for vars_, sense in self.rows
            ],
            "ref": list(ref_monomial(self.tree, self.k)),
            "q": q_tk(self.tree, self.k).to_json_dict(),
        }


def chamber(tree: RootedTree, k: Orientation) -> Chamber:
    rows = []
    for j in range(1, tree.n + 1):
        vars_ = tuple(sorted(tree.subtree(j)))
        sense = "<=" if k.k[j - 1] == 1 else ">="
        rows.append((vars_, sense))
    return Chamber(tree, k, tuple(rows))


# ----------------------------------------------------------------------
# the partition of the simplex


@dataclass
class PartitionReport:
    """Outcome of the per-tree partition verification."""

    tree: RootedTree
    sum_identity_ok: bool
    supports_disjoint: bool
    union_complete: bool
    union_size: int
    samples_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.sum_identity_ok
            and self.supports_disjoint
            and self.union_complete
            and self.samples_ok
        )


def _simplex_point(rng: random.Random, n: int, total: Fraction):
    """Uniform rational point of {r > 0 : sum(r) < total}, or None on a tie.

    Sorted-differences construction: n sorted uniforms cut (0, 1) into n+1
    gaps; the first n gaps scaled by the total are a uniform sample of the
    open corner simplex.  Ties (boundary points) are rejected.
    """
    denom = 9973
    cuts = sorted(rng.randint(1, denom - 1) for _ in range(n))
    if len(set(cuts)) != n or cuts[-1] == denom:
        return None
    prev = 0
    point = []
    for c in cuts:
        point.append(Fraction(c - prev, denom) * total)
        prev = c
    return point


def partition_check(
    tree: RootedTree,
    params=None,
    samples: int = 40,
    seed: int = 0,
) -> PartitionReport:
    """Verify that the orientation chambers partition the simplex.

    (a) the chamber volume polynomials sum to (t_1+...+t_n)^n / n! exactly;
    (b) the sandpile supports are pairwise disjoint and cover every degree-n
        exponent;
    (c) sampled rational points of the simplex lie in at least one closed
        chamber, in at most one chamber interior, and on a hyperplane when
        in no interior.
    """
    n = tree.n
    if n > PARTITION_SYMBOLIC_LIMIT:
        raise ValueError(f"vertex count {n} exceeds guard {PARTITION_SYMBOLIC_LIMIT}")
    t = [Fraction(v) for v in params] if params is not None else [Fraction(1)] * n
    if any(v <= 0 for v in t):
        raise ValueError("parameters must be positive")
    failures: list[str] = []
    orientations = enumerate_orientations(n)

    total = MPoly.zero(n)
    seen: set[Exponent] = set()
    disjoint = True
    for k in orientations:
        supp = sandpile_support(tree, k)
        if seen & supp:
            disjoint = False
            failures.append(f"support overlap at orientation {k.k}")
        seen |= supp
        total = total + q_tk(tree, k)
    expected = simplex_volume_poly(n)
    sum_ok = total == expected
    if not sum_ok:
        failures.append("volume polynomials do not sum to the simplex volume")
    all_exps = set(monomials_of_degree(n, n))
    union_ok = seen == all_exps
    if not union_ok:
        failures.append(f"support union covers {len(seen)} of {len(all_exps)} exponents")

    chambers = [chamber(tree, k) for k in orientations]
    rng = random.Random(seed)
    total_t = sum(t)
    samples_ok = True
    drawn = 0
    while drawn < samples:
        point = _simplex_point(rng, n, total_t)
        if point is None:
            continue
        drawn += 1
        closed = strict = 0
        boundary = False
        for ch in chambers:
            c, s, b = ch.evaluate(point, t)
            closed += c
            strict += s
            boundary = boundary or (c and b)
        if closed < 1 or strict > 1 or (strict == 0 and not boundary):
            samples_ok = False
            failures.append(
                f"point {[str(v) for v in point]}: closed={closed} strict={strict}"
            )
    return PartitionReport(
        tree, sum_ok, disjoint, union_ok, len(seen), samples_ok, failures
    )


# ----------------------------------------------------------------------
# plane binary trees and the contour walk


@dataclass(frozen=True)
class PlaneBinaryTree:
    """A plane tree in which every vertex has zero or two ordered subtrees."""

    left: "PlaneBinaryTree | None" = None
    right: "PlaneBinaryTree | None" = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("vertices have zero or two subtrees")

    def is_leaf(self) -> bool:
        return self.left is None

    def internal_count(self) -> int:
        if self.is_leaf():
            return 0
        return 1 + self.left.internal_count() + self.right.internal_count()

    def encode(self) -> str:
        """Nested-parentheses encoding; 'o' is a leaf."""
        if self.is_leaf():
            return "o"
        return "(" + self.left.encode() + self.right.encode() + ")"


LEAF = PlaneBinaryTree()


def plane_binary_trees(n: int) -> list[PlaneBinaryTree]:
    """All plane binary trees with n internal vertices (Catalan many)."""
    if not 1 <= n <= PLANE_TREE_LIMIT:
        raise ValueError(f"n must be in 1..{PLANE_TREE_LIMIT}")
    table: dict[int, list[PlaneBinaryTree]] = {0: [LEAF]}
    for m in range(1, n + 1):
        out = []
        for i in range(m):
            for left in table[i]:
                for right in table[m - 1 - i]:
                    out.append(PlaneBinaryTree(left, right))
        table[m] = out
    return table[n]


def kT(tree: PlaneBinaryTree) -> Exponent:
    """Per-label chamber exponents of a plane binary tree.

    Internal vertices are labeled 1..n in left-to-right (in-order) discovery
    order, which places every label above its left subtree's labels and
    below its right subtree's.  Label i gets 0 when its left child is
    internal; otherwise it gets the length of the maximal chain climbing
    from i through consecutive left-child links.  The entries always sum
    to n.

    The recursion threads the current left-chain depth downward (subtrees
    may be shared between enumerated trees, so no parent pointers exist).
    """
    ks: list[int] = []

    def rec(node: PlaneBinaryTree, left_run: int):
        if node.is_leaf():
            return
        rec(node.left, left_run + 1)
        ks.append(0 if not node.left.is_leaf() else 1 + left_run)
        rec(node.right, 0)

    rec(tree, 0)
    return tuple(ks)


class _WalkNode:
    __slots__ = ("height", "children")

    def __init__(self, height: Fraction):
        self.height = height
        self.children: list[tuple["_WalkNode", Fraction]] = []


@dataclass(frozen=True)
class WalkTree:
    """Plane tree with positive rational edge lengths from a contour walk.

    Edge lengths are keyed by the child path from the tree root (0 = left,
    1 = right at binary vertices).
    """

    shape: PlaneBinaryTree
    lengths: tuple[tuple[tuple[int, ...], Fraction], ...]

    def total_length(self) -> Fraction:
        return sum((l for _, l in self.lengths), Fraction(0))


def _freeze_walk(node: _WalkNode) -> WalkTree:
    lengths: list[tuple[tuple[int, ...], Fraction]] = []

    def rec(nd: _WalkNode, path: tuple[int, ...]) -> PlaneBinaryTree:
        if not nd.children:
            return LEAF
        if len(nd.children) != 2:
            raise DegenerateContourError("contour produced a non-binary vertex")
        subtrees = []
        for idx, (child, length) in enumerate(nd.children):
            if length <= 0:
                raise DegenerateContourError("zero-length edge in contour tree")
            lengths.append((path + (idx,), length))
            subtrees.append(rec(child, path + (idx,)))
        return PlaneBinaryTree(subtrees[0], subtrees[1])

    shape = rec(node, ())
    return WalkTree(shape, tuple(lengths))


def phi_walk(x, y, s) -> WalkTree:
    """Build the plane tree traced by the alternating up/down contour.

    Go up x_i then down y_i for each i, finishing with the complementary
    up/down pair that returns the contour to level zero; the planted root
    and its edge are removed from the result.  Generic inputs yield a
    binary tree; any down step that lands exactly on an existing vertex
    level (before the final return to the root) is a boundary configuration
    and raises DegenerateContourError.
    """
    x = [Fraction(v) for v in x]
    y = [Fraction(v) for v in y]
    s = Fraction(s)
    if len(x) != len(y):
        raise ValueError("x and y must have equal length")
    if any(v <= 0 for v in x):
        raise ValueError("up distances must be positive")
    if any(v < 0 for v in y):
        raise ValueError("down distances must be nonnegative")
    if sum(x) >= s:
        raise ValueError("sum of up distances must be below the total length")
    px = Fraction(0)
    py = Fraction(0)
    for xi, yi in zip(x, y):
        px += xi
        py += yi
        if py > px:
            raise ValueError("prefix sums of y must not exceed prefix sums of x")
    steps = list(zip(x, y)) + [(s - sum(x), s - sum(y))]

    root = _WalkNode(Fraction(0))
    stack = [root]
    h = Fraction(0)
    for i, (up, down) in enumerate(steps):
        # ascend: branch at the current position, then climb to a new apex
        if stack[-1] is root and not root.children:
            apex = _WalkNode(h + up)
            root.children.append((apex, up))
            stack.append(apex)
        else:
            parent = stack[-1]
            child, _ = parent.children[-1]
            branch = _WalkNode(h)
            branch.children.append((child, child.height - h))
            parent.children[-1] = (branch, h - parent.height)
            apex = _WalkNode(h + up)
            branch.children.append((apex, up))
            stack.append(branch)
            stack.append(apex)
        h += up
        # descend
        if down <= 0:
            raise DegenerateContourError("zero down step")
        target = h - down
        if target < 0:
            raise ValueError("contour drops below the root level")
        while stack[-1].height > target:
            stack.pop()
        if stack[-1].height == target:
            if i == len(steps) - 1 and stack[-1] is root:
                h = target
                continue
            raise DegenerateContourError(
                "down step lands exactly on an existing vertex level"
            )
        h = target
    if h != 0 or len(root.children) != 1:
        raise DegenerateContourError("contour did not close at the root")
    return _freeze_walk(root.children[0][0])


# ----------------------------------------------------------------------
# Monte-Carlo volume oracle


@dataclass(frozen=True)
class InequalitySystem:
    """Rows a.r (<=|>=) b over r in [0, box_high]^nvars with 0/1 coefficients."""

    nvars: int
    rows: tuple[tuple[tuple[int, ...], str, Fraction], ...]
    box_high: Fraction


def chamber_system(ch: Chamber, t) -> InequalitySystem:
    t = [Fraction(v) for v in t]
    n = ch.tree.n
    rows = []
    for vars_, sense in ch.rows:
        coeffs = tuple(1 if i in vars_ else 0 for i in range(1, n + 1))
        rhs = sum(t[i - 1] for i in vars_)
        rows.append((coeffs, sense, rhs))
    return InequalitySystem(n, tuple(rows), sum(t))


def suffix_polytope_system(t) -> InequalitySystem:
    """The Stanley-Pitman polytope: suffix sums of r below suffix sums of t."""
    t = [Fraction(v) for v in t]
    n = len(t)
    rows = []
    for j in range(1, n + 1):
        coeffs = tuple(1 if i >= j else 0 for i in range(1, n + 1))
        rows.append((coeffs, "<=", sum(t[j - 1:])))
    return InequalitySystem(n, tuple(rows), sum(t))


def simplex_system(t) -> InequalitySystem:
    t = [Fraction(v) for v in t]
    n = len(t)
    return InequalitySystem(n, (((1,) * n, "<=", sum(t)),), sum(t))


def _has_interior(system: InequalitySystem) -> bool:
    """Exact strict-feasibility test by Fourier-Motzkin elimination."""
    n = system.nvars
    # constraints as (coeff list, rhs) meaning sum(c*r) < rhs
    cons: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for coeffs, sense, rhs in system.rows:
        c = [Fraction(v) for v in coeffs]
        if sense == "<=":
            cons.append((tuple(c), Fraction(rhs)))
        else:
            cons.append((tuple(-v for v in c), -Fraction(rhs)))
    for i in range(n):
        unit = tuple(Fraction(1 if j == i else 0) for j in range(n))
        cons.append((tuple(-v for v in unit), Fraction(0)))  # r_i > 0
        cons.append((unit, Fraction(system.box_high)))  # r_i < box
    for v in range(n - 1, -1, -1):
        uppers, lowers, rest = [], [], []
        for c, b in cons:
            if c[v] > 0:
                uppers.append((c, b))
            elif c[v] < 0:
                lowers.append((c, b))
            else:
                rest.append((c, b))
        new = rest
        for cu, bu in uppers:
            for cl, bl in lowers:
                # r_v < (bu - rest_u)/cu[v] and r_v > (rest_l - bl)/(-cl[v])
                coeff = tuple(
                    cl[j] * cu[v] - cu[j] * cl[v] for j in range(n)
                )
                bound = bl * cu[v] - bu * cl[v]
                new.append((coeff, bound))
        seen = set()
        cons = []
        for c, b in new:
            key = (c, b)
            if key not in seen:
                seen.add(key)
                cons.append((c, b))
    return all(b > 0 for c, b in cons)


def mc_volume(system: InequalitySystem, samples: int, seed: int):
    """Rejection-sampling volume estimate over the bounding box.

    Deterministic given the seed: sampling is split into fixed chunks, chunk
    c drawing from numpy PCG64 seeded with SeedSequence([seed, c]); chunk
    hit counts are summed in index order, so the result is independent of
    the worker count (capped by ZONOFORGE_THREADS).

    Returns (estimate, standard error) as floats.  Raises ZeroMeasureError
    when no sample hits and exact elimination shows the interior is empty.
    """
    if samples < MC_MIN_SAMPLES:
        raise ValueError(f"samples must be at least {MC_MIN_SAMPLES}")
    import numpy as np

    n = system.nvars
    box = float(system.box_high)
    mats = []
    rhss = []
    for coeffs, sense, rhs in system.rows:
        row = np.array(coeffs, dtype=float)
        b = float(rhs)
        if sense == ">=":
            row, b = -row, -b
        mats.append(row)
        rhss.append(b)
    A = np.vstack(mats)
    b = np.array(rhss)

    chunks = [
        (c, min(_MC_CHUNK, samples - c * _MC_CHUNK))
        for c in range((samples + _MC_CHUNK - 1) // _MC_CHUNK)
    ]

    def run_chunk(args) -> int:
        idx, size = args
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, idx])))
        pts = rng.random((size, n)) * box
        ok = (pts @ A.T) <= b
        return int(ok.all(axis=1).sum())

    nworkers = worker_count()
    if nworkers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            hits = sum(pool.map(run_chunk, chunks))
    else:
        hits = sum(run_chunk(c) for c in chunks)

    if hits == 0 and not _has_interior(system):
        raise ZeroMeasureError("system has empty interior")
    box_vol = box**n
    p = hits / samples
    estimate = p * box_vol
    stderr = box_vol * math.sqrt(p * (1 - p) / samples)
    return estimate, stderr
