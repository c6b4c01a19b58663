"""Spanning-tree bases, activity valuations, Tutte polynomial, cocircuits.

Bases of an edge matrix are the n-subsets of columns with nonzero
determinant; they correspond to the spanning trees when the matrix comes
from a connected graph.  All independence and spanning tests run in exact
integer arithmetic.

The two valuations on a basis B (with respect to the column order) are:

    val(B)  = number of columns x outside B such that {x} together with the
              basis elements preceding x is independent
    val*(B) = number of elements b of B such that B minus b together with
              the non-basis columns after b still spans

The Tutte polynomial collects s^(n-val) t^(n-val*) over all bases.  A basis
is maximal when val = n and internal when val* = n.  Cocircuits are the
complements of the rank-(n-1) flats spanned by columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from . import linalg
from .graphs import EdgeMatrix

BASIS_COLUMN_LIMIT = 16


@dataclass(frozen=True)
class Basis:
    """Sorted 1-indexed column indices of an invertible square submatrix."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(self.indices)) != self.indices:
            raise ValueError("basis indices must be sorted")


@dataclass(frozen=True)
class Cocircuit:
    """Minimal set of columns meeting every basis (hyperplane complement)."""

    indices: tuple[int, ...]


@dataclass
class TuttePoly:
    """Bivariate polynomial with nonnegative integer coefficients."""

    n: int
    coeffs: dict[tuple[int, int], int]

    def eval_at(self, s, t):
        total = 0
        for (i, j), c in self.coeffs.items():
            total += c * s**i * t**j
        return total

    def is_symmetric(self) -> bool:
        return all(self.coeffs.get((j, i), 0) == c for (i, j), c in self.coeffs.items())

    def num_bases(self) -> int:
        return sum(self.coeffs.values())

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"s": i, "t": j, "c": self.coeffs[(i, j)]}
                for (i, j) in sorted(self.coeffs)
            ],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, TuttePoly):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs


def _check_enumerable(x: EdgeMatrix):
    if x.ncols > BASIS_COLUMN_LIMIT:
        raise ValueError(f"column count {x.ncols} exceeds guard {BASIS_COLUMN_LIMIT}")
    if x.rank != x.dimension:
        raise ValueError("matrix is rank deficient")


def enumerate_bases(x: EdgeMatrix) -> list[Basis]:
    """All bases in ascending lexicographic order of their index sets.

    Plain subset search with early-exit rank pruning: a partial selection is
    abandoned as soon as it goes dependent or can no longer reach n columns.
    """
    _check_enumerable(x)
    n = x.dimension
    m = x.ncols
    out: list[Basis] = []

    def extend(start: int, chosen: list[int], echelon: list[list[int]]):
        if len(chosen) == n:
            out.append(Basis(tuple(chosen)))
            return
        for j in range(start, m + 1):
            if len(chosen) + (m - j + 1) < n:
                break
            row = list(x.column(j))
            # reduce against the current echelon rows
            for er in echelon:
                lead = next(i for i, v in enumerate(er) if v)
                if row[lead]:
                    rv, ev = row[lead], er[lead]
                    g = gcd(rv, ev)
                    row = [a * (ev // g) - b * (rv // g) for a, b in zip(row, er)]
            if any(row):
                extend(j + 1, chosen + [j], echelon + [row])

    extend(1, [], [])
    return out


def is_basis(x: EdgeMatrix, b: Basis) -> bool:
    if len(b.indices) != x.dimension:
        return False
    cols = [list(x.column(j)) for j in b.indices]
    return linalg.det(cols) != 0


def _require_basis(x: EdgeMatrix, b: Basis):
    if not is_basis(x, b):
        raise ValueError(f"{b.indices} is not a basis of the matrix")


def val(x: EdgeMatrix, b: Basis) -> int:
    """Number of externally active non-basis columns with respect to b."""
    _require_basis(x, b)
    chosen = set(b.indices)
    count = 0
    for j in range(1, x.ncols + 1):
        if j in chosen:
            continue
        vectors = [list(x.column(j))] + [list(x.column(i)) for i in b.indices if i < j]
        if linalg.rank(vectors, x.dimension) == len(vectors):
            count += 1
    return count


def val_star(x: EdgeMatrix, b: Basis) -> int:
    """Number of basis elements whose removal is repaired by later columns."""
    _require_basis(x, b)
    chosen = set(b.indices)
    n = x.dimension
    count = 0
    for bi in b.indices:
        vectors = [list(x.column(i)) for i in b.indices if i != bi]
        vectors += [list(x.column(j)) for j in range(bi + 1, x.ncols + 1) if j not in chosen]
        if linalg.rank(vectors, n) == n:
            count += 1
    return count


def tutte(x: EdgeMatrix) -> TuttePoly:
    """Tutte polynomial from the basis activity valuations."""
    n = x.dimension
    coeffs: dict[tuple[int, int], int] = {}
    for b in enumerate_bases(x):
        key = (n - val(x, b), n - val_star(x, b))
        coeffs[key] = coeffs.get(key, 0) + 1
    return TuttePoly(n, coeffs)


def maximal_bases(x: EdgeMatrix) -> list[Basis]:
    """Bases with val = n."""
    n = x.dimension
    return [b for b in enumerate_bases(x) if val(x, b) == n]


def internal_bases(x: EdgeMatrix) -> list[Basis]:
    """Bases with val* = n."""
    n = x.dimension
    return [b for b in enumerate_bases(x) if val_star(x, b) == n]


def hilbert_from_bases(x: EdgeMatrix) -> tuple[int, ...]:
    """Histogram of val over all bases, indices 0..n."""
    n = x.dimension
    hist = [0] * (n + 1)
    for b in enumerate_bases(x):
        hist[val(x, b)] += 1
    return tuple(hist)


def cocircuits(x: EdgeMatrix) -> list[Cocircuit]:
    """Complements of the rank-(n-1) column flats, each verified minimal.

    Every rank-(n-1) flat is the closure of n-1 independent columns, so the
    flats are found by scanning (n-1)-subsets and closing them.
    """
    n = x.dimension
    if x.rank != n:
        raise ValueError("matrix is rank deficient")
    all_idx = range(1, x.ncols + 1)
    flats: set[frozenset[int]] = set()
    for comb in combinations(all_idx, n - 1):
        if x.submatrix_rank(comb) != n - 1:
            continue
        flat = frozenset(
            j for j in all_idx if x.submatrix_rank(tuple(comb) + (j,)) == n - 1
        )
        flats.add(flat)
    out = []
    full = set(all_idx)
    for flat in flats:
        comp = tuple(sorted(full - flat))
        # intersects every basis: the flat alone cannot span
        if x.submatrix_rank(tuple(flat)) == n:
            raise AssertionError("cocircuit complement spans; flat scan is wrong")
        # inclusion-minimal: restoring any removed column recovers full rank
        for j in comp:
            if x.submatrix_rank(tuple(flat) + (j,)) != n:
                raise AssertionError("cocircuit is not inclusion-minimal")
        out.append(Cocircuit(comp))
    out.sort(key=lambda c: c.indices)
    return out
