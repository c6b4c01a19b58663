"""Exact linear algebra over integers and rationals.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and reduced by cross-multiplication, so no Fraction arithmetic happens in the
inner loops.  Only the final reduced echelon form is expressed with Fraction
entries.  The pivot rule is fixed (leftmost nonzero column, topmost row), so
every echelon form, nullspace basis, and solution produced here is
deterministic bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _int_row(row) -> list[int]:
    """Clear denominators and divide out the content of a rational row."""
    fracs = [Fraction(x) for x in row]
    den = 1
    for x in fracs:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def det(rows) -> int:
    """Determinant of a square integer matrix (Bareiss, division-free pivots)."""
    a = [[int(x) for x in r] for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _echelon(rows, ncols: int):
    """Forward-eliminate to (unreduced) echelon form over the integers.

    Returns (echelon_rows, pivot_cols).  Input rows may be Fractions; they
    are converted to primitive integer rows first.
    """
    work = [_int_row(r) for r in rows]
    work = [r for r in work if any(r)]
    out: list[list[int]] = []
    pivots: list[int] = []
    col = 0
    while work and col < ncols:
        pivot_idx = None
        for i, r in enumerate(work):
            if r[col] != 0:
                pivot_idx = i
                break
        if pivot_idx is None:
            col += 1
            continue
        p = work.pop(pivot_idx)
        out.append(p)
        pivots.append(col)
        pv = p[col]
        reduced = []
        for r in work:
            if r[col] != 0:
                g = gcd(pv, r[col])
                mr, mp = pv // g, r[col] // g
                r = [x * mr - y * mp for x, y in zip(r, p)]
                g2 = 0
                for x in r:
                    g2 = gcd(g2, x)
                if g2 > 1:
                    r = [x // g2 for x in r]
            if any(r):
                reduced.append(r)
        work = reduced
        col += 1
    return out, pivots


def rank(rows, ncols: int | None = None) -> int:
    """Rank of a matrix with integer or rational entries."""
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(_echelon(rows, ncols)[1])


def rref(rows, ncols: int | None = None):
    """Reduced row echelon form.

    Returns (rref_rows, pivot_cols) where rref_rows are Fraction rows with
    unit pivots and zeros above and below each pivot.  Zero rows are dropped.
    """
    rows = list(rows)
    if not rows:
        return [], []
    if ncols is None:
        ncols = len(rows[0])
    ech, pivots = _echelon(rows, ncols)
    frows = [[Fraction(x) for x in r] for r in ech]
    for i in range(len(frows) - 1, -1, -1):
        pc = pivots[i]
        pv = frows[i][pc]
        frows[i] = [x / pv for x in frows[i]]
        for j in range(i):
            f = frows[j][pc]
            if f:
                frows[j] = [a - f * b for a, b in zip(frows[j], frows[i])]
    return frows, pivots


def row_space(rows, ncols: int | None = None):
    """Canonical (RREF) basis of the row space."""
    return rref(rows, ncols)[0]


def nullspace(rows, ncols: int):
    """Canonical basis of the right nullspace {v : A v = 0}.

    The basis is itself returned in reduced row echelon form, so equal
    subspaces always yield identical bases.
    """
    rref_rows, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, pc in zip(rref_rows, pivots):
            vec[pc] = -row[f]
        basis.append(vec)
    if not basis:
        return []
    return rref(basis, ncols)[0]


def reduce_against(rref_rows, pivots, vec):
    """Residual of vec after elimination by an RREF basis."""
    v = [Fraction(x) for x in vec]
    for row, pc in zip(rref_rows, pivots):
        f = v[pc]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def in_row_space(rref_rows, pivots, vec) -> bool:
    return not any(reduce_against(rref_rows, pivots, vec))


def solve_unique(rows, rhs):
    """Solve A x = b when the solution exists and is unique, else None."""
    rows = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) - 1
    rref_rows, pivots = rref(rows, ncols + 1)
    if ncols in pivots:
        return None  # inconsistent
    if len(pivots) < ncols:
        return None  # underdetermined
    x = [Fraction(0)] * ncols
    for row, pc in zip(rref_rows, pivots):
        x[pc] = row[-1]
    return x


def intersect_row_spaces(a_rows, b_rows, ncols: int):
    """Canonical basis of the intersection of two row spaces."""
    a = rref(a_rows, ncols)[0]
    b = rref(b_rows, ncols)[0]
    if not a or not b:
        return []
    # x in both spans  <=>  x = lam . A = mu . B; solve for (lam, -mu) in the
    # nullspace of the stacked transpose.
    stacked = [[(a[i][c] if i < len(a) else b[i - len(a)][c]) for i in range(len(a) + len(b))]
               for c in range(ncols)]
    null = nullspace(stacked, len(a) + len(b))
    vectors = []
    for coeffs in null:
        vec = [Fraction(0)] * ncols
        for lam, row in zip(coeffs[: len(a)], a):
            if lam:
                vec = [x + lam * y for x, y in zip(vec, row)]
        if any(vec):
            vectors.append(vec)
    if not vectors:
        return []
    return rref(vectors, ncols)[0]


def spaces_equal(a_rows, b_rows, ncols: int) -> bool:
    """Whether two row spans coincide (compares canonical RREF bases)."""
    return rref(a_rows, ncols)[0] == rref(b_rows, ncols)[0]
