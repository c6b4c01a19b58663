"""Basis enumeration, activity valuations, Tutte polynomial, cocircuits."""

import random

import pytest

from zonoforge import parking
from zonoforge.activity import (
    Basis,
    cocircuits,
    enumerate_bases,
    hilbert_from_bases,
    internal_bases,
    maximal_bases,
    tutte,
    val,
    val_star,
)
from zonoforge.graphs import (
    EdgeMatrix,
    Orientation,
    RootedTree,
    broken_wheel,
    edge_matrix,
    enumerate_orientations,
    gbw,
)

X1 = edge_matrix(broken_wheel(1))
X2 = edge_matrix(broken_wheel(2))
FORK = RootedTree(3, (0, 1, 1))


def test_enumerate_bases_x2():
    assert [b.indices for b in enumerate_bases(X2)] == [
        (1, 3),
        (1, 4),
        (2, 3),
        (2, 4),
        (3, 4),
    ]


def test_enumerate_bases_x1():
    assert [b.indices for b in enumerate_bases(X1)] == [(1,), (2,)]


def test_basis_count_matches_parking_count():
    x3 = edge_matrix(broken_wheel(3))
    assert len(enumerate_bases(x3)) == len(parking.enumerate_parking(broken_wheel(3)))


def test_val_hand_table():
    assert val(X2, Basis((3, 4))) == 2
    assert val(X2, Basis((1, 3))) == 0
    assert val(X2, Basis((2, 3))) == 1


def test_val_star_hand_table():
    assert val_star(X2, Basis((3, 4))) == 0
    assert val_star(X2, Basis((1, 3))) == 2
    assert val_star(X2, Basis((1, 4))) == 1


def test_val_rejects_non_basis():
    with pytest.raises(ValueError):
        val(X2, Basis((1, 2)))
    with pytest.raises(ValueError):
        val_star(X2, Basis((1, 2)))


def test_tutte_x2_exact():
    t = tutte(X2)
    assert t.coeffs == {(2, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1, (0, 2): 1}


def test_tutte_symmetry_and_counts():
    for n in (1, 2, 3, 4):
        t = tutte(edge_matrix(broken_wheel(n)))
        assert t.is_symmetric()
        assert t.eval_at(1, 0) == 2 ** (n - 1)
        assert t.eval_at(0, 1) == 2 ** (n - 1)
        assert t.num_bases() == len(enumerate_bases(edge_matrix(broken_wheel(n))))


def test_maximal_bases_product_structure():
    for n in (1, 2, 3, 4):
        x = edge_matrix(broken_wheel(n))
        expected = set()

        def build(i, chosen):
            if i == n:
                expected.add(tuple(sorted(chosen + [2 * n])))
                return
            for pick in (2 * i, 2 * i + 1):
                build(i + 1, chosen + [pick])

        build(1, [])
        assert {b.indices for b in maximal_bases(x)} == expected


def test_internal_bases_product_structure():
    for n in (1, 2, 3, 4):
        x = edge_matrix(broken_wheel(n))
        expected = set()

        def build(i, chosen):
            if i == n:
                expected.add(tuple(sorted(chosen + [2 * n - 1])))
                return
            for pick in (2 * i - 1, 2 * i):
                build(i + 1, chosen + [pick])

        build(1, [])
        assert {b.indices for b in internal_bases(x)} == expected
    assert [b.indices for b in internal_bases(X1)] == [(1,)]


def test_maximal_count_x5():
    assert len(maximal_bases(edge_matrix(broken_wheel(5)))) == 16


def test_cocircuits_examples():
    assert {c.indices for c in cocircuits(X2)} == {(3, 4), (1, 2, 3), (1, 2, 4)}
    assert [c.indices for c in cocircuits(X1)] == [(1, 2)]


def test_cocircuits_hit_every_basis_and_are_minimal():
    for k in enumerate_orientations(3):
        x = edge_matrix(gbw(FORK, k))
        bases = [set(b.indices) for b in enumerate_bases(x)]
        for c in cocircuits(x):
            cset = set(c.indices)
            assert all(cset & b for b in bases)
            for drop in c.indices:
                smaller = cset - {drop}
                assert any(not (smaller & b) for b in bases)


def test_tutte_specializations_order_invariant():
    rng = random.Random(4)
    for n in (2, 3, 4):
        x = edge_matrix(broken_wheel(n))
        base = tutte(x)
        cols = list(x.columns)
        for _ in range(20):
            rng.shuffle(cols)
            t = tutte(EdgeMatrix(tuple(cols)))
            for pt in ((1, 1), (1, 0), (0, 1), (2, 1)):
                assert t.eval_at(*pt) == base.eval_at(*pt)


def test_hilbert_from_bases():
    assert hilbert_from_bases(X2) == (1, 2, 2)
    for n in (1, 2, 3, 4):
        x = edge_matrix(broken_wheel(n))
        hist = [0] * (n + 1)
        for s in parking.enumerate_parking(broken_wheel(n)):
            hist[sum(s)] += 1
        assert hilbert_from_bases(x) == tuple(hist)
        assert hilbert_from_bases(x)[n] == 2 ** (n - 1)


def test_guards():
    deficient = EdgeMatrix(((1, 0), (1, 0)))
    with pytest.raises(ValueError):
        enumerate_bases(deficient)
    wide = EdgeMatrix(tuple((1, 0) for _ in range(17)))
    with pytest.raises(ValueError):
        enumerate_bases(wide)


def test_tutte_json():
    t = tutte(X2)
    d = t.to_json_dict()
    assert d["n"] == 2
    assert d["terms"][0] == {"s": 0, "t": 1, "c": 1}
    assert [(e["s"], e["t"]) for e in d["terms"]] == sorted(
        (e["s"], e["t"]) for e in d["terms"]
    )
