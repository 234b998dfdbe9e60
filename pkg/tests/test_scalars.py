from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflab.scalars import (
    FieldSpec,
    MixedFieldSpec,
    OrderUnavailable,
    cyclotomic_polynomial,
    euler_phi,
    get_field,
    make_root,
    primitive_roots,
    scalar_morphism,
)

Q = get_field(FieldSpec("cyclotomic", order=1))
Q8 = get_field(FieldSpec("cyclotomic", order=8))
Q4 = get_field(FieldSpec("cyclotomic", order=4))
F97 = get_field(FieldSpec("prime", p=97))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert euler_phi(8) == 4 and euler_phi(12) == 4


def test_make_root_small_orders():
    assert make_root(Q, 1) == Q.one
    assert make_root(Q, 2) == -Q.one
    z8 = make_root(Q8, 8)
    assert z8**4 == -Q8.one
    assert z8**8 == Q8.one
    for d in (2, 4):
        assert z8 ** (8 // d * 1) != Q8.one or d == 1


def test_root_has_exact_order():
    for m in (2, 4, 8):
        z = make_root(Q8, m)
        assert z**m == Q8.one
        for d in range(1, m):
            if m % d == 0 and d < m:
                assert z**d != Q8.one


def test_make_root_in_odd_field_gets_even_orders():
    Q3 = get_field(FieldSpec("cyclotomic", order=3))
    m6 = make_root(Q3, 6)
    assert m6**6 == Q3.one and m6**3 == -Q3.one and m6**2 != Q3.one
    assert make_root(Q3, 2) == -Q3.one


def test_order_unavailable():
    with pytest.raises(OrderUnavailable):
        make_root(Q, 3)
    with pytest.raises(OrderUnavailable):
        make_root(Q8, 3)
    with pytest.raises(OrderUnavailable):
        make_root(F97, 5)  # 5 does not divide 96


def test_field_ops_examples():
    assert Q.one / Q.from_int(2) == Q.from_fraction(Fraction(1, 2))
    z = make_root(Q8, 8)
    assert z * z**7 == Q8.one
    # (1 + z4)(1 - z4) = 2, against a brute-force polynomial oracle mod Phi_4
    z4 = make_root(Q4, 4)
    lhs = (Q4.one + z4) * (Q4.one - z4)
    assert lhs == Q4.from_int(2)
    assert _poly_mult_oracle([1, 1], [1, -1], 4) == [2, 0]


def _poly_mult_oracle(a, b, order):
    """Multiply polynomials with Fraction coefficients, reduce mod Phi_order."""
    mod = list(cyclotomic_polynomial(order))
    deg = len(mod) - 1
    conv = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            conv[i + j] += Fraction(x) * Fraction(y)
    for k in range(len(conv) - 1, deg - 1, -1):
        c = conv[k]
        if c:
            for t in range(deg + 1):
                conv[k - deg + t] -= c * mod[t]
    out = conv[:deg]
    return [Fraction(x) for x in out]


def test_division_errors():
    with pytest.raises(ZeroDivisionError):
        Q8.one / Q8.zero
    with pytest.raises(ZeroDivisionError):
        F97.one / F97.zero


def test_mixed_field_error():
    z8 = make_root(Q8, 8)
    z4 = make_root(Q4, 4)
    with pytest.raises(MixedFieldSpec):
        z8 + z4


def test_primitive_roots():
    assert primitive_roots(Q, 2) == [-Q.one]
    roots8 = primitive_roots(Q8, 8)
    assert len(roots8) == 4
    assert all(r**4 == -Q8.one for r in roots8)
    assert len({repr(r) for r in roots8}) == 4
    roots4 = primitive_roots(Q4, 4)
    assert len(roots4) == 2
    assert all(r * r == -Q4.one for r in roots4)


scalars8 = st.builds(
    lambda nums, den: get_field(FieldSpec("cyclotomic", order=8)).from_coeffs(
        [Fraction(n, den) for n in nums]
    ),
    st.lists(st.integers(-30, 30), min_size=4, max_size=4),
    st.integers(1, 12),
)


@settings(max_examples=60, deadline=None)
@given(scalars8, scalars8, scalars8)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if a:
        assert a * a.inverse() == Q8.one


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=4, max_size=4))
def test_canonical_form_idempotent(coeffs):
    x = Q8.from_coeffs(coeffs)
    again = Q8.from_coeffs(x.coeffs)
    assert x == again
    assert x.nums == again.nums and x.den == again.den


@settings(max_examples=40, deadline=None)
@given(scalars8, scalars8)
def test_prime_field_morphism(a, b):
    phi = scalar_morphism(Q8, F97)
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(a * b) == phi(a) * phi(b)


def test_prime_field_roots():
    z8 = make_root(F97, 8)
    assert z8**8 == F97.one
    for d in (1, 2, 4):
        assert z8**d != F97.one
    assert len(primitive_roots(F97, 8)) == 4


def test_prime_field_fraction_embedding():
    half = F97.from_fraction(Fraction(1, 2))
    assert half + half == F97.one


def test_field_spec_parse():
    assert FieldSpec.parse("cyclotomic:8") == FieldSpec("cyclotomic", order=8)
    assert FieldSpec.parse("prime:97") == FieldSpec("prime", p=97)
    with pytest.raises(ValueError):
        FieldSpec.parse("octonion:3")
