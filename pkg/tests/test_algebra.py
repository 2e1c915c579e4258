"""Polynomial ring and curve-class word algebra."""

import random

import pytest
from hypothesis import given, strategies as st

from pseudolinks.algebra import (
    A,
    A_inv,
    CurveClass,
    Poly,
    V,
    canonical_curve_word,
    curve_var,
    cyclic_reduce,
    delta,
    free_reduce,
    one,
    zero,
)

letters = st.integers(min_value=-3, max_value=3).filter(lambda x: x != 0)
words = st.lists(letters, max_size=8).map(tuple)


def test_free_reduce_examples():
    assert free_reduce(()) == ()
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, -1)) == ()
    assert free_reduce((1, 2, -2, 1)) == (1, 1)
    assert free_reduce((2, 1, -1)) == (2,)


def test_cyclic_reduce_examples():
    assert cyclic_reduce((1, 2, -1)) == (2,)
    assert cyclic_reduce((-1, 2, 1)) == (2,)
    assert cyclic_reduce((1, 2)) == (1, 2)


@given(words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r


@given(words)
def test_canonical_word_cyclic_invariance(w):
    w = free_reduce(w)
    for k in range(len(w)):
        rotated = w[k:] + w[:k]
        assert canonical_curve_word(rotated) == canonical_curve_word(w)


@given(words)
def test_canonical_word_inversion_invariance(w):
    inv = tuple(-x for x in reversed(w))
    assert canonical_curve_word(inv) == canonical_curve_word(w)


def test_curve_class_str():
    assert str(CurveClass.of((1,))) == "x1"
    assert str(CurveClass.of((1, 2))) == "x1 x2"
    assert str(CurveClass.of((1, -2))) in ("x1 x2^-1", "x2 x1^-1")


def test_poly_ring_axioms_spotcheck():
    x = A() + V
    y = A(-2) - 3
    z = curve_var(CurveClass.of((1,)))
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert x - x == zero
    assert x * one == x
    assert x * zero == zero
    assert (x + y) + z == x + (y + z)


def test_poly_powers_and_delta():
    assert A(3) * A(-3) == one
    assert A() ** 4 == A(4)
    assert delta == -A(2) - A(-2)
    assert A_inv == A(-1)
    assert (-A(-3)) ** 2 == A(-6)


def test_poly_int_interop():
    assert Poly.const(0) == 0
    assert Poly.const(2) + 3 == 5
    assert 1 - (one - one) == 1


def test_poly_str_deterministic():
    p = A(2) * V + curve_var(CurveClass.of((1,))) - 2
    assert str(p) == str(A(2) * V + curve_var(CurveClass.of((1,))) - 2)


@given(words, words)
def test_curve_vars_multiply_commutatively(u, v):
    su, sv = curve_var(CurveClass.of(u)), curve_var(CurveClass.of(v))
    assert su * sv == sv * su
