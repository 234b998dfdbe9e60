import random
from fractions import Fraction

import pytest

from conftest import random_sparse_tensor
from hopflab.expressions import ExprError, format_elem, format_tensor, parse_element, parse_scalar
from hopflab.families import build
from hopflab.hopf import Elem, Tensor
from hopflab.scalars import FieldSpec, get_field


def test_tensor_separator(ac22):
    t = parse_element(ac22, "x (x) x*g")
    x, g = ac22.gen("x"), ac22.gen("g")
    assert t == x.tensor(x * g)


def test_zero(en2):
    v = parse_element(en2, "0")
    assert isinstance(v, Elem) and not v


def test_leading_group_term(en2):
    t = parse_element(en2, "1/2*(1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g)")
    g = en2.gen("g")
    one = en2.unit()
    half = en2.field.one / en2.field.from_int(2)
    expected = (one.tensor(one) + one.tensor(g) + g.tensor(one) - g.tensor(g)).scaled(half)
    assert t == expected


def test_three_slots(en1):
    t = parse_element(en1, "g (x) x1 (x) g")
    assert isinstance(t, Tensor) and t.legs == 3


def test_exponents_and_braces(en3, h2n2_3):
    assert parse_element(en3, "g^2") == en3.unit()
    assert parse_element(en3, "x{1,3}") == en3.gen("x1") * en3.gen("x3")
    assert parse_element(h2n2_3, "x^2*y*z") == (h2n2_3.gen("x") ** 2) * h2n2_3.gen("y") * h2n2_3.gen("z")


def test_scalar_literals(h8):
    z8 = h8.field.make_root(8)
    assert parse_element(h8, "z8^3") == h8.unit().scaled(z8**3)
    v = parse_element(h8, "-1/2*z8*x")
    expected = h8.gen("x").scaled(-(h8.field.one / h8.field.from_int(2)) * z8)
    assert v == expected


def test_unknown_generator(en2):
    with pytest.raises(ExprError) as err:
        parse_element(en2, "x7")
    assert "x7" in str(err.value)


def test_syntax_error_has_position(en2):
    with pytest.raises(ExprError) as err:
        parse_element(en2, "g + ")
    assert "position" in str(err.value)
    with pytest.raises(ExprError):
        parse_element(en2, "g (x) g (x) g (x) g")


def test_parse_scalar_forms():
    Q8 = get_field(FieldSpec("cyclotomic", order=8))
    assert parse_scalar(Q8, "3") == Q8.from_int(3)
    assert parse_scalar(Q8, "-1/2") == Q8.from_fraction(Fraction(-1, 2))
    z = Q8.make_root(8)
    assert parse_scalar(Q8, "z8^3") == z**3
    assert parse_scalar(Q8, "-1/2*z8") == -(Q8.one / Q8.from_int(2)) * z
    with pytest.raises(ExprError):
        parse_scalar(Q8, "")
    with pytest.raises(ExprError):
        parse_scalar(Q8, "2*")


def test_roundtrip_elems(en2, rng):
    for _ in range(25):
        coeffs = {}
        for _ in range(4):
            coeffs[rng.randrange(en2.dim)] = en2.field.from_fraction(
                Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            )
        e = Elem(en2, coeffs)
        assert parse_element(en2, format_elem(e)) == e


def test_roundtrip_tensors_over_families(rng):
    for fam in ("en:2", "ac2n:3", "h8", "radford:2,3", "ac4dual", "h2n2:3", "group:2,4"):
        h = build(fam)
        for _ in range(8):
            t = random_sparse_tensor(h, rng, legs=2, nnz=5)
            if not t:
                continue
            text = format_tensor(t)
            assert parse_element(h, text) == t, f"{fam}: {text}"


def test_roundtrip_cyclotomic_coefficients(h8, rng):
    z = h8.field.make_root(8)
    t = h8.gen("z").tensor(h8.gen("x")).scaled(z**3 - h8.field.from_int(2) * z)
    text = format_tensor(t)
    assert parse_element(h8, text) == t


def test_format_zero(en2):
    assert format_tensor(en2.zero_tensor(2)) == "0"
    assert format_elem(en2.zero_elem()) == "0"
    assert parse_element(en2, "0 (x) g") == en2.zero_tensor(2)
