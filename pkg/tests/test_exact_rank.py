from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ex_a, ex_b, zero_pattern
from toeprank import FieldMatrix, FieldSpec, max_rank_random, rank
from toeprank.exact_rank import is_prime

FIELDS = [FieldSpec(2), FieldSpec(3), FieldSpec(65521), FieldSpec.rational()]


def leibniz_det(a, q):
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = Fraction(-1) ** inv
        for i, j in enumerate(perm):
            term *= a[i][j]
        total += term
    return total % q if q else total


def rank_by_minors(a, q=None):
    """Largest r with a nonzero r x r minor."""
    n = len(a)
    m = len(a[0]) if a else 0
    for r in range(min(n, m), 0, -1):
        for rs in combinations(range(n), r):
            for cs in combinations(range(m), r):
                sub = [[a[i][j] for j in cs] for i in rs]
                if leibniz_det(sub, q) != 0:
                    return r
    return 0


def as_matrix(a, field):
    rows = tuple(range(len(a)))
    cols = tuple(range(len(a[0]) if a else 0))
    return FieldMatrix(rows, cols, {(i, j): v for i, row in enumerate(a)
                                    for j, v in enumerate(row)}, field)


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
def test_subpermutation_rank_is_count(field):
    m = FieldMatrix(tuple(range(5)), tuple(range(6)), {(0, 3): 1, (2, 0): 1, (4, 5): 1}, field)
    assert rank(m) == 3


@pytest.mark.parametrize("field", FIELDS, ids=lambda f: f.name)
def test_zero_matrix(field):
    assert rank(FieldMatrix((0, 1), (0, 1, 2), {}, field)) == 0
    assert rank(FieldMatrix((), (), {}, field)) == 0


def test_all_ones_gf2():
    assert rank(as_matrix([[1, 1], [1, 1]], FieldSpec(2))) == 1


def test_field_dependence():
    a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    assert rank(as_matrix(a, FieldSpec(2))) == 2
    assert rank(as_matrix(a, FieldSpec.rational())) == 3


def test_rational_entries():
    a = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert rank(as_matrix(a, FieldSpec.rational())) == 1
    assert rank(as_matrix(a, FieldSpec(7))) == 1


def test_stored_entries_are_reduced():
    m = as_matrix([[4, 0], [7, Fraction(1, 3)]], FieldSpec(2))
    assert dict(m.entries) == {(1, 0): 1, (1, 1): 1}
    r = as_matrix([[Fraction(2, 4)]], FieldSpec.rational())
    assert r.entries[(0, 0)] == Fraction(1, 2)


def test_field_spec_validation_and_parse():
    assert FieldSpec.parse("gf2") == FieldSpec(2)
    assert FieldSpec.parse("gfP:65521").modulus == 65521
    assert FieldSpec.parse("rational").modulus is None
    assert FieldSpec(65521).name == "gfP:65521"
    for bad in ("gfP:65520", "gfP:1", "gf3", "gfP:x", f"gfP:{2**31 + 11}"):
        with pytest.raises(ValueError):
            FieldSpec.parse(bad)
    assert is_prime(2147483647) and not is_prime(2147483649)


matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m),
                           min_size=n, max_size=n)))


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 65521, None]))
def test_rank_matches_minor_oracle(a, q):
    field = FieldSpec(q)
    assert rank(as_matrix(a, field)) == rank_by_minors(a, q)


@settings(max_examples=60, deadline=None)
@given(matrices, st.randoms(use_true_random=False))
def test_rank_independent_of_ordering(a, rnd):
    field = FieldSpec.rational()
    m = as_matrix(a, field)
    rows, cols = list(m.rows), list(m.cols)
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    assert rank(FieldMatrix(tuple(rows), tuple(cols), m.entries, field)) == rank(m)


def test_max_rank_random_examples():
    f = FieldSpec(65521)
    assert max_rank_random(ex_a(), 2, f, trials=20, seed=1) == 2
    assert max_rank_random(ex_b(), 2, f, trials=20, seed=1) == 4
    assert max_rank_random(zero_pattern(), 3, f, trials=5, seed=1) == 0


def test_max_rank_random_deterministic_and_guarded():
    a = max_rank_random(ex_b(), 3, trials=4, seed=9)
    assert a == max_rank_random(ex_b(), 3, trials=4, seed=9)
    with pytest.raises(ValueError):
        max_rank_random(ex_a(), 2, trials=0)
    with pytest.raises(ValueError):
        max_rank_random(ex_a(), 2, FieldSpec.rational(), trials=3)
