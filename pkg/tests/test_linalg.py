import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflab.linalg import (
    AmbientDimensionMismatch,
    Echelon,
    SparseMat,
    Subspace,
    kernel,
    rref,
    solve,
)


def mat(rows, ncols):
    rows = [{c: Fraction(v) for c, v in row.items() if v} for row in rows]
    return SparseMat(len(rows), ncols, rows)


def test_rref_examples():
    rank, _ = rref(mat([{}, {}], 3))
    assert rank == 0
    rank, red = rref(mat([{0: 1}, {1: 1}, {2: 1}], 3))
    assert rank == 3
    rank, red = rref(mat([{0: 1, 1: 1}, {0: 1, 1: 1}], 2))
    assert rank == 1
    assert red.rows[0] == {0: 1, 1: 1}


def test_kernel_examples():
    assert kernel(mat([{}], 5)).dim == 5
    assert kernel(mat([{0: 1}, {1: 1}], 2)).dim == 0
    k = kernel(mat([{0: 1, 1: -1}], 2))
    assert k.dim == 1
    assert k.rows[0] == {0: Fraction(1), 1: Fraction(1)}


def _random_mat(rng, nrows, ncols, density=0.5):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                v = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                if v:
                    row[c] = v
        rows.append(row)
    return SparseMat(nrows, ncols, rows)


def test_kernel_annihilates_and_rank_nullity():
    rng = random.Random(7)
    for _ in range(25):
        m = _random_mat(rng, rng.randint(1, 6), rng.randint(1, 6))
        rank, _ = rref(m)
        ker = kernel(m)
        assert rank + ker.dim == m.ncols
        for v in ker.basis():
            assert not m.apply(v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**24 - 1), st.integers(2, 5), st.integers(1, 6))
def test_rref_canonical_under_row_shuffle(seed, ncols, nrows):
    rng = random.Random(seed)
    m = _random_mat(rng, nrows, ncols)
    rank1, red1 = rref(m)
    rows = list(m.rows)
    rng.shuffle(rows)
    rank2, red2 = rref(SparseMat(len(rows), ncols, rows))
    assert rank1 == rank2
    assert red1.rows == red2.rows


def test_rref_idempotent():
    rng = random.Random(3)
    m = _random_mat(rng, 5, 4)
    _, red = rref(m)
    _, again = rref(red)
    assert red.rows == again.rows


def _random_subspace(rng, ambient, k):
    vecs = []
    for _ in range(k):
        vecs.append({c: Fraction(rng.randint(-4, 4)) for c in range(ambient) if rng.random() < 0.6})
    return Subspace.from_vectors(vecs, ambient)


def test_subspace_calculus():
    rng = random.Random(11)
    for _ in range(20):
        ambient = rng.randint(2, 6)
        a = _random_subspace(rng, ambient, rng.randint(0, ambient))
        b = _random_subspace(rng, ambient, rng.randint(0, ambient))
        assert a.intersect(a) == a
        s = a.sum(b)
        i = a.intersect(b)
        assert s.dim + i.dim == a.dim + b.dim
        assert a.contains({})
        for v in i.basis():
            assert a.contains(v) and b.contains(v)
        for v in a.basis():
            assert s.contains(v)


def test_subspace_equality_is_mutual_membership():
    rng = random.Random(5)
    for _ in range(15):
        ambient = rng.randint(2, 5)
        a = _random_subspace(rng, ambient, rng.randint(1, ambient))
        # same space from scaled, permuted spanning set
        scaled = [{c: v * 3 for c, v in row.items()} for row in a.basis()]
        rng.shuffle(scaled)
        b = Subspace.from_vectors(scaled, ambient)
        assert a == b
        mutual = all(b.contains(v) for v in a.basis()) and all(a.contains(v) for v in b.basis())
        assert mutual


def test_ambient_mismatch():
    a = Subspace.from_vectors([{0: Fraction(1)}], 2)
    b = Subspace.from_vectors([{0: Fraction(1)}], 3)
    with pytest.raises(AmbientDimensionMismatch):
        a.sum(b)
    with pytest.raises(AmbientDimensionMismatch):
        a == b


def test_solve():
    # x0 + x1 = 3, x1 = 1 -> particular solution with zero free coords
    sol = solve([{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1)}], 2, {0: Fraction(3), 1: Fraction(1)})
    assert sol == {0: Fraction(2), 1: Fraction(1)}
    # inconsistent
    sol = solve([{0: Fraction(1)}, {0: Fraction(1)}], 1, {0: Fraction(1), 1: Fraction(2)})
    assert sol is None
    # underdetermined: free coordinate stays zero
    sol = solve([{0: Fraction(1), 1: Fraction(2)}], 2, {0: Fraction(4)})
    assert sol == {0: Fraction(4)}


def test_echelon_incremental_rank():
    ech = Echelon(3)
    assert ech.add_row({0: Fraction(1), 2: Fraction(1)}) == 0
    assert ech.add_row({0: Fraction(2), 2: Fraction(2)}) is None
    assert ech.add_row({1: Fraction(5)}) == 1
    assert ech.rank == 2
