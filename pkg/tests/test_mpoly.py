"""Exact polynomial arithmetic: pinned examples, ring axioms, operator laws."""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zonoforge.mpoly import (
    MPoly,
    monomials_of_degree,
    normalized_monomial,
)


def q2():
    return MPoly(2, {(1, 1): 1, (0, 2): Fraction(1, 2)})


def test_add_examples():
    t1t2 = MPoly.monomial((1, 1))
    assert t1t2 + (-t1t2) == MPoly.zero(2)
    half_t2sq = MPoly(2, {(0, 2): Fraction(1, 2)})
    assert half_t2sq + t1t2 == q2()
    assert q2() + MPoly.zero(2) == q2()


def test_mul_examples():
    t1 = MPoly.variable(2, 1)
    t2 = MPoly.variable(2, 2)
    assert t1 * (t1 + t2) == MPoly(2, {(2, 0): 1, (1, 1): 1})
    one = MPoly.constant(2, 1)
    expanded = (one + t1) * (one + t1 + t2)
    assert expanded == MPoly(2, {(0, 0): 1, (1, 0): 2, (0, 1): 1, (2, 0): 1, (1, 1): 1})
    a = MPoly(2, {(3, 1): Fraction(7, 3), (0, 2): -2})
    assert a * one == a


def test_apply_diff_examples():
    t1 = MPoly.variable(2, 1)
    t2 = MPoly.variable(2, 2)
    assert (t2 * (t2 - t1)).apply_diff(q2()) == MPoly.zero(2)
    assert (t1 * t1).apply_diff(q2()) == MPoly.zero(2)
    assert MPoly.constant(2, 1).apply_diff(q2()) == q2()


def test_support_examples():
    assert q2().support() == {(1, 1), (0, 2)}
    assert MPoly.zero(3).support() == frozenset()
    p20 = MPoly.variable(2, 1) * (MPoly.variable(2, 1) + MPoly.variable(2, 2))
    assert p20.support() == {(2, 0), (1, 1)}


def test_normalized_monomial_examples():
    assert normalized_monomial((1, 1, 1)) == MPoly.monomial((1, 1, 1))
    assert normalized_monomial((0, 2)) == MPoly(2, {(0, 2): Fraction(1, 2)})
    assert normalized_monomial((0, 0, 3)) == MPoly(3, {(0, 0, 3): Fraction(1, 6)})


def test_eval_examples():
    assert q2().eval([1, 1]) == Fraction(3, 2)
    p = MPoly(2, {(0, 0): Fraction(5, 7), (3, 2): 4})
    assert p.eval([0, 0]) == Fraction(5, 7)
    q3 = MPoly(
        3,
        {
            (1, 1, 1): 1,
            (0, 2, 1): Fraction(1, 2),
            (1, 0, 2): Fraction(1, 2),
            (0, 1, 2): Fraction(1, 2),
            (0, 0, 3): Fraction(1, 6),
        },
    )
    assert q3.eval([1, 1, 1]) == Fraction(8, 3)


def test_coeff_examples():
    assert q2().coeff((1, 1)) == 1
    assert q2().coeff((0, 2)) == Fraction(1, 2)
    assert q2().coeff((5, 5)) == 0


def test_nvars_mismatch_raises():
    with pytest.raises(ValueError):
        MPoly.zero(2) + MPoly.zero(3)
    with pytest.raises(ValueError):
        MPoly.zero(2) * MPoly.zero(3)
    with pytest.raises(ValueError):
        MPoly.zero(2).apply_diff(MPoly.zero(3))
    with pytest.raises(ValueError):
        q2().eval([1])


def _random_poly(rng: random.Random, nvars: int, max_deg: int, max_terms: int) -> MPoly:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exp = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[exp] = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return MPoly(nvars, terms)


def test_ring_axioms_randomized():
    rng = random.Random(20240817)
    for _ in range(1000):
        nv = rng.randint(1, 4)
        a = _random_poly(rng, nv, 5, 4)
        b = _random_poly(rng, nv, 5, 4)
        c = _random_poly(rng, nv, 5, 4)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_diff_composition_is_multiplication():
    rng = random.Random(99)
    for _ in range(200):
        nv = rng.randint(1, 3)
        a = _random_poly(rng, nv, 3, 3)
        b = _random_poly(rng, nv, 3, 3)
        f = _random_poly(rng, nv, 6, 5)
        assert (a * b).apply_diff(f) == a.apply_diff(b.apply_diff(f))


def test_canonical_form_idempotent():
    rng = random.Random(5)
    for _ in range(100):
        p = _random_poly(rng, 3, 4, 5)
        rebuilt = MPoly(p.nvars, dict(p.items()))
        assert rebuilt == p
        assert list(rebuilt.items()) == list(p.items())


def test_normalized_monomial_support_sweep():
    for nv in (1, 2, 3):
        for d in range(0, 9):
            for s in monomials_of_degree(nv, d):
                assert normalized_monomial(s).support() == {s}


@given(st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_normalized_monomial_support_random(exp):
    s = tuple(exp)
    assert normalized_monomial(s).support() == {s}


def test_json_round_trip_and_canonical_order():
    p = MPoly(2, {(2, 0): Fraction(-3, 4), (0, 2): Fraction(1, 2), (1, 1): 5})
    d = p.to_json_dict()
    assert [t["exp"] for t in d["terms"]] == [[0, 2], [1, 1], [2, 0]]
    assert d["terms"][0] == {"exp": [0, 2], "num": "1", "den": "2"}
    assert d["terms"][2] == {"exp": [2, 0], "num": "-3", "den": "4"}
    assert MPoly.from_json_dict(json.loads(json.dumps(d))) == p


def test_immutability():
    p = q2()
    with pytest.raises(AttributeError):
        p.nvars = 3
