"""Graded polynomial spaces attached to an edge matrix.

Two dual constructions are computed exactly, degree by degree:

* kernel spaces: homogeneous polynomials annihilated by a family of
  constant-coefficient differential operators (products of the linear forms
  of cocircuits, or explicit broken-wheel families);
* span spaces: the span of products p_R of column linear forms over subsets
  R whose complement still has full rank.

Kernels are found by stacking, for each operator, the coefficient rows of
its action on the degree-d monomial basis and taking the exact nullspace.
Every basis returned is in reduced echelon form with respect to the
canonical monomial order, so results are reproducible bit for bit.

Monic bases: for a parking function s, the s-monic polynomial is the unique
element of the matching-degree kernel component with coefficient 1 on t^s
and 0 on every other parking monomial of the same degree.  Internal monic
bases use the operator family generated by the internal bases taken with
respect to the reversed column order (the order reversal is what makes the
explicit broken-wheel internal family come out right).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import activity, linalg
from .graphs import EdgeMatrix, broken_wheel, edge_matrix
from .mpoly import (
    Exponent,
    MPoly,
    coeff_vector,
    from_coeff_vector,
    monomials_of_degree,
)

DEGREE_LIMIT = 12


@dataclass(frozen=True)
class OperatorFamily:
    """A named family of polynomials applied as differential operators."""

    name: str
    ops: tuple[MPoly, ...]

    def __post_init__(self):
        if not self.ops:
            raise ValueError("operator family must be nonempty")
        if len({op.nvars for op in self.ops}) != 1:
            raise ValueError("operators must share a variable count")

    @property
    def nvars(self) -> int:
        return self.ops[0].nvars

    def annihilates(self, p: MPoly) -> bool:
        return all(not op.apply_diff(p) for op in self.ops)


@dataclass(frozen=True)
class GradedComponent:
    """Basis of a homogeneous component (reduced echelon, canonical order)."""

    degree: int
    nvars: int
    basis: tuple[MPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomial_order(self) -> list[Exponent]:
        return monomials_of_degree(self.nvars, self.degree)

    def contains(self, p: MPoly) -> bool:
        """Exact span membership for a homogeneous polynomial of this degree."""
        if p.nvars != self.nvars:
            raise ValueError("variable-count mismatch")
        if not p:
            return True
        if not p.is_homogeneous() or p.degree() != self.degree:
            return False
        order = self.monomial_order()
        rows = [coeff_vector(b, order) for b in self.basis]
        rref_rows, pivots = linalg.rref(rows, len(order))
        return linalg.in_row_space(rref_rows, pivots, coeff_vector(p, order))

    def equals(self, other: "GradedComponent") -> bool:
        return (
            self.degree == other.degree
            and self.nvars == other.nvars
            and self.dim == other.dim
            and all(other.contains(b) for b in self.basis)
        )

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "dim": self.dim,
            "basis": [b.to_json_dict() for b in self.basis],
        }


# ----------------------------------------------------------------------
# operator families


def column_form(x: EdgeMatrix, j: int) -> MPoly:
    """Linear form of column x_j (1-indexed)."""
    return MPoly.linear_form(x.column(j))


def _product_over(x: EdgeMatrix, indices) -> MPoly:
    p = MPoly.constant(x.dimension, 1)
    for j in indices:
        p = p * column_form(x, j)
    return p


def cocircuit_ideal_ops(x: EdgeMatrix) -> OperatorFamily:
    """Products of column linear forms over all cocircuits."""
    ops = tuple(_product_over(x, c.indices) for c in activity.cocircuits(x))
    return OperatorFamily("cocircuit-ideal", ops)


def _bw_matrix(n: int) -> EdgeMatrix:
    return edge_matrix(broken_wheel(n))


def bw_central_ops(n: int) -> OperatorFamily:
    """Explicit central family for the broken wheel graph.

    For each interval [i:j] of vertices, the product of the radius forms
    t_i..t_j with the boundary path forms (t_i - t_{i-1}) and, when j < n,
    (t_{j+1} - t_j).  These are exactly the cocircuit products of the
    broken-wheel matroid, one per interval.
    """
    x = _bw_matrix(n)
    ops = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            idx = [2 * k for k in range(i, j + 1)]  # radii
            idx.append(2 * i - 1)
            if j < n:
                idx.append(2 * j + 1)
            ops.append(_product_over(x, sorted(idx)))
    return OperatorFamily("bw-central", tuple(ops))


def bw_internal_ops(n: int) -> OperatorFamily:
    """Explicit internal family for the broken wheel graph.

    In variable form: t_i * (t_{i+1} - t_i) for i < n, together with t_n.
    """
    ops = []
    for i in range(1, n):
        ops.append(
            MPoly.variable(n, i) * (MPoly.variable(n, i + 1) - MPoly.variable(n, i))
        )
    ops.append(MPoly.variable(n, n))
    return OperatorFamily("bw-internal", tuple(ops))


def _interval_form(n: int, i: int, j: int) -> MPoly:
    """t_i + t_{i+1} + ... + t_j."""
    p = MPoly.zero(n)
    for k in range(i, j + 1):
        p = p + MPoly.variable(n, k)
    return p


def _power(p: MPoly, e: int) -> MPoly:
    out = MPoly.constant(p.nvars, 1)
    for _ in range(e):
        out = out * p
    return out


def bw_pcentral_ops(n: int) -> OperatorFamily:
    """Powers of interval directional derivatives cutting out the central span.

    (D_i + ... + D_j)^(j-i+3) for i <= j < n and (D_i + ... + D_n)^(n-i+2)
    for i <= n; the exponent is one more than the number of columns off the
    hyperplane orthogonal to the interval direction.
    """
    ops = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            e = (j - i + 3) if j < n else (n - i + 2)
            ops.append(_power(_interval_form(n, i, j), e))
    return OperatorFamily("bw-p-central", tuple(ops))


def bw_pinternal_ops(n: int) -> OperatorFamily:
    """Interval-power family for the internal span (exponents one lower)."""
    ops = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            e = (j - i + 2) if j < n else (n - i + 1)
            ops.append(_power(_interval_form(n, i, j), e))
    return OperatorFamily("bw-p-internal", tuple(ops))


def volume_translate_ops(n: int) -> OperatorFamily:
    """The family D_i (D_i - D_{i-1}), i = 1..n, with D_0 = 0.

    Its degree-graded kernel is spanned by the translates of the volume
    polynomial of the suffix-sum polytope and has binomial dimensions.
    """
    ops = []
    for i in range(1, n + 1):
        ti = MPoly.variable(n, i)
        prev = MPoly.variable(n, i - 1) if i > 1 else MPoly.zero(n)
        ops.append(ti * (ti - prev))
    return OperatorFamily("volume-translate", tuple(ops))


def volume_product_ops(n: int) -> OperatorFamily:
    """Consecutive-run operator families characterizing the volume polynomial.

    (D_{j+1} - D_j)(D_i ... D_j)(D_i - D_{i-1}) for 1 <= i <= j < n, and
    (D_1 ... D_n)(D_i - D_{i-1}) for 1 <= i <= n, with D_0 = 0.
    """
    def var(i: int) -> MPoly:
        return MPoly.variable(n, i) if i >= 1 else MPoly.zero(n)

    ops = []
    for i in range(1, n + 1):
        for j in range(i, n):
            p = var(j + 1) - var(j)
            for k in range(i, j + 1):
                p = p * var(k)
            ops.append(p * (var(i) - var(i - 1)))
    full = MPoly.constant(n, 1)
    for k in range(1, n + 1):
        full = full * var(k)
    for i in range(1, n + 1):
        ops.append(full * (var(i) - var(i - 1)))
    return OperatorFamily("volume-product", tuple(ops))


# ----------------------------------------------------------------------
# internal cocircuits (reversed order)


def minimal_hitting_sets(sets: list[frozenset[int]]) -> list[tuple[int, ...]]:
    """Inclusion-minimal subsets of the union meeting every given set."""
    if not sets:
        return []
    universe = sorted(set().union(*sets))
    found: list[frozenset[int]] = []
    for size in range(1, len(universe) + 1):
        for cand in combinations(universe, size):
            cs = frozenset(cand)
            if any(f <= cs for f in found):
                continue
            if all(cs & s for s in sets):
                found.append(cs)
    return sorted(tuple(sorted(f)) for f in found)


def internal_cocircuit_ops(x: EdgeMatrix) -> OperatorFamily:
    """Operators generated by the internal bases under the reversed order.

    Internal bases are computed for the column-reversed matrix (their
    defining valuation depends on the order), mapped back to original column
    indices, and the minimal hitting sets of that family give the operator
    index sets.
    """
    m = x.ncols
    rev = x.reversed()
    internal_rev = activity.internal_bases(rev)
    sets = [frozenset(m + 1 - j for j in b.indices) for b in internal_rev]
    hitting = minimal_hitting_sets(sets)
    ops = tuple(_product_over(x, h) for h in hitting)
    return OperatorFamily("internal-cocircuit", ops)


# ----------------------------------------------------------------------
# graded components


def annihilator_kernel(family: OperatorFamily, degree: int) -> GradedComponent:
    """Homogeneous degree-d polynomials annihilated by the whole family.

    The stacked linear map sends the coefficient vector of a degree-d
    polynomial to the concatenated coefficient vectors of its images under
    each operator; the kernel is its exact nullspace.
    """
    if degree > DEGREE_LIMIT:
        raise ValueError(f"degree {degree} exceeds guard {DEGREE_LIMIT}")
    nv = family.nvars
    monos = monomials_of_degree(nv, degree)
    rows = []
    for op in family.ops:
        images = [op.apply_diff(MPoly.monomial(m)) for m in monos]
        targets = sorted({e for im in images for e in im.support()})
        for tm in targets:
            row = [im.coeff(tm) for im in images]
            if any(row):
                rows.append(row)
    null = linalg.nullspace(rows, len(monos))
    basis = tuple(from_coeff_vector(nv, vec, monos) for vec in null)
    return GradedComponent(degree, nv, basis)


def pspace_component(x: EdgeMatrix, degree: int) -> GradedComponent:
    """Row-reduced basis of span{p_R : |R| = degree, complement has full rank}."""
    if degree > DEGREE_LIMIT:
        raise ValueError(f"degree {degree} exceeds guard {DEGREE_LIMIT}")
    n = x.dimension
    monos = monomials_of_degree(n, degree)
    all_idx = range(1, x.ncols + 1)
    rows = []
    for R in combinations(all_idx, degree):
        rest = [j for j in all_idx if j not in R]
        if linalg.rank([list(x.column(j)) for j in rest], n) != n:
            continue
        rows.append(coeff_vector(_product_over(x, R), monos))
    basis_rows = linalg.rref(rows, len(monos))[0] if rows else []
    basis = tuple(from_coeff_vector(n, vec, monos) for vec in basis_rows)
    return GradedComponent(degree, n, basis)


def pspace_internal_component(x: EdgeMatrix, degree: int) -> GradedComponent:
    """Degree-d part of the intersection of all single-column-deletion spans."""
    n = x.dimension
    monos = monomials_of_degree(n, degree)
    current: list[list] | None = None
    for drop in range(1, x.ncols + 1):
        cols = [x.column(j) for j in range(1, x.ncols + 1) if j != drop]
        sub = EdgeMatrix(tuple(cols))
        if sub.rank != n:
            raise ValueError("single-column deletion loses rank; internal span undefined")
        comp = pspace_component(sub, degree)
        rows = [coeff_vector(b, monos) for b in comp.basis]
        if current is None:
            current = linalg.rref(rows, len(monos))[0]
        else:
            current = linalg.intersect_row_spaces(current, rows, len(monos))
        if not current:
            break
    basis = tuple(from_coeff_vector(n, vec, monos) for vec in (current or []))
    return GradedComponent(degree, n, basis)


def is_monomial_space(component: GradedComponent, candidate: set[Exponent]) -> bool:
    """Whether the degree-matching candidate monomials form a basis of the span."""
    matching = sorted(s for s in candidate if sum(s) == component.degree)
    if len(matching) != component.dim:
        return False
    return all(component.contains(MPoly.monomial(s)) for s in matching)


def monic_basis(
    x: EdgeMatrix,
    parking: list[tuple[int, ...]],
    internal: bool = False,
) -> dict[tuple[int, ...], MPoly]:
    """The unique s-monic kernel element for each parking function s.

    Solves, per degree, the square exact system pinning coefficient 1 on t^s
    and 0 on the other same-degree parking monomials.  Raises ValueError if
    the system is singular (wrong parking set or non-monomial dual span).
    """
    family = internal_cocircuit_ops(x) if internal else cocircuit_ideal_ops(x)
    by_degree: dict[int, list[tuple[int, ...]]] = {}
    for s in parking:
        by_degree.setdefault(sum(s), []).append(s)
    out: dict[tuple[int, ...], MPoly] = {}
    for d, group in sorted(by_degree.items()):
        group = sorted(group)
        comp = annihilator_kernel(family, d)
        if comp.dim != len(group):
            raise ValueError(
                f"degree {d}: kernel dimension {comp.dim} != parking count {len(group)}"
            )
        matrix = [[b.coeff(s) for b in comp.basis] for s in group]
        for idx, s in enumerate(group):
            rhs = [1 if i == idx else 0 for i in range(len(group))]
            sol = linalg.solve_unique(matrix, rhs)
            if sol is None:
                raise ValueError(f"singular monic system for parking function {s}")
            poly = MPoly.zero(x.dimension)
            for a, b in zip(sol, comp.basis):
                if a:
                    poly = poly + a * b
            out[s] = poly
    return out


def hilbert_series(x: EdgeMatrix, kind: str) -> tuple[int, ...]:
    """Graded dimensions 0..n of the central span or the internal kernel."""
    n = x.dimension
    if kind == "central":
        dims = tuple(pspace_component(x, j).dim for j in range(n + 1))
        expected = len(activity.enumerate_bases(x))
    elif kind == "internal":
        fam = internal_cocircuit_ops(x)
        dims = tuple(annihilator_kernel(fam, j).dim for j in range(n + 1))
        expected = len(activity.internal_bases(x))
    else:
        raise ValueError("kind must be 'central' or 'internal'")
    if sum(dims) != expected:
        raise AssertionError(f"{kind} dimensions {dims} do not sum to {expected}")
    return dims
