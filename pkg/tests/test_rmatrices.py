from fractions import Fraction

import pytest

from conftest import pe
from hopflab.families import build
from hopflab.hopf import delta
from hopflab.rmatrices import (
    FamilyMismatch,
    NotInvertible,
    RSpec,
    apply_antipode_leg,
    build_r,
    build_r_h8_pm,
    conjugation_identities_h8,
    enumerate_group_rmatrices,
    is_triangular,
    r_inverse,
    rswap_identities_en,
    verify_qtr,
)


def test_rspec_parsing():
    assert RSpec.parse("en-a:[[0,1],[1,0]]").kind == "en_a"
    assert RSpec.parse("ac22:q=0,a=1") == RSpec("ac22", (0, "1"))
    assert RSpec.parse("h8pm:+1,-1") == RSpec("h8_pm", (1, -1))
    assert RSpec.parse("h8omega:z8").kind == "h8_omega"
    assert RSpec.parse("bichar:[[1,0],[0,1]]") == RSpec("bichar", (((1, 0), (0, 1)),))
    assert RSpec.parse("ac4dual").kind == "ac4dual"
    with pytest.raises(ValueError):
        RSpec.parse("mystery:1")


def test_en_r_with_zero_matrix_is_group_term(en2):
    r = build_r(en2, "en-a:[[0,0],[0,0]]")
    assert r == pe(en2, "1/2*(1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g)")


def test_en2_r_printed_blocks(en2):
    """The single-index blocks carry the matrix entries directly; the top
    block carries the sign the hexagon equations force."""
    al, be, ga, de = 1, 2, 3, 5
    r = build_r(en2, f"en-a:[[{al},{be}],[{ga},{de}]]")
    det = al * de - be * ga
    expected = pe(
        en2,
        "1/2*("
        "(1 (x) 1) + (1 (x) g) + (g (x) 1) - (g (x) g)"
        f" + {al}*((x{{1}} (x) x{{1}}) - (x{{1}} (x) g^1*x{{1}}) + (g^1*x{{1}} (x) x{{1}}) + (g^1*x{{1}} (x) g^1*x{{1}}))"
        f" + {be}*((x{{1}} (x) x{{2}}) - (x{{1}} (x) g^1*x{{2}}) + (g^1*x{{1}} (x) x{{2}}) + (g^1*x{{1}} (x) g^1*x{{2}}))"
        f" + {ga}*((x{{2}} (x) x{{1}}) - (x{{2}} (x) g^1*x{{1}}) + (g^1*x{{2}} (x) x{{1}}) + (g^1*x{{2}} (x) g^1*x{{1}}))"
        f" + {de}*((x{{2}} (x) x{{2}}) - (x{{2}} (x) g^1*x{{2}}) + (g^1*x{{2}} (x) x{{2}}) + (g^1*x{{2}} (x) g^1*x{{2}}))"
        f" - {det}*((x{{1,2}} (x) x{{1,2}}) + (x{{1,2}} (x) g^1*x{{1,2}}) + (g^1*x{{1,2}} (x) x{{1,2}}) - (g^1*x{{1,2}} (x) g^1*x{{1,2}}))"
        ")",
    )
    assert r == expected
    assert verify_qtr(en2, r).ok
    # the opposite sign on the top block fails the hexagons
    flipped_sign = r + pe(
        en2,
        f"{det}*((x{{1,2}} (x) x{{1,2}}) + (x{{1,2}} (x) g^1*x{{1,2}}) + (g^1*x{{1,2}} (x) x{{1,2}}) - (g^1*x{{1,2}} (x) g^1*x{{1,2}}))",
    )
    assert not verify_qtr(en2, flipped_sign).ok


def test_verify_qtr_en_various(en2, en3):
    for text in ("[[0,0],[0,0]]", "[[1,0],[0,1]]", "[[1,2],[3,5]]", "[[0,1],[-1,0]]"):
        assert verify_qtr(en2, build_r(en2, f"en-a:{text}")).ok
    assert verify_qtr(en3, build_r(en3, "en-a:[[1,2,0],[0,3,1],[5,0,7]]")).ok


def test_triangularity_iff_symmetric(en2):
    qtr_not_tri = build_r(en2, "en-a:[[0,1],[0,0]]")
    assert verify_qtr(en2, qtr_not_tri).ok
    assert not is_triangular(en2, qtr_not_tri)
    for text in ("[[0,0],[0,0]]", "[[1,2],[2,5]]", "[[0,1],[1,0]]"):
        assert is_triangular(en2, build_r(en2, f"en-a:{text}"))
    for text in ("[[0,1],[-1,0]]", "[[1,2],[3,1]]"):
        assert not is_triangular(en2, build_r(en2, f"en-a:{text}"))


def test_ac22_r_families(ac22):
    r_lambda = build_r(ac22, "ac22:q=0,a=1")
    printed = pe(
        ac22,
        "1/2*((1 (x) 1) + (1 (x) g) + (g (x) 1) - (g (x) g))"
        " + 1/2*((x (x) g*x) + (x (x) x) + (g*x (x) g*x) - (g*x (x) x))",
    )
    assert r_lambda == printed
    assert verify_qtr(ac22, r_lambda).ok
    assert is_triangular(ac22, r_lambda)
    r_nu = build_r(ac22, "ac22:q=1,a=1")
    assert verify_qtr(ac22, r_nu).ok
    assert is_triangular(ac22, r_nu)


def test_ac22_rq_is_self_inverse(ac22):
    for q in (0, 1):
        rq = build_r(ac22, f"ac22:q={q},a=0")
        assert r_inverse(ac22, rq) == rq
        assert rq.flip() == rq


def test_h8_all_eight_structures(h8):
    for a in (1, -1):
        for b in (1, -1):
            assert verify_qtr(h8, build_r(h8, f"h8pm:{a:+d},{b:+d}")).ok
    for k in (1, 3, 5, 7):
        assert verify_qtr(h8, build_r(h8, f"h8omega:z8^{k}")).ok


def test_h8_omega_requires_primitive_root(h8):
    with pytest.raises(Exception):
        build_r(h8, "h8omega:z8^2")  # order 4, not 8


def test_ac4dual_unique_r(ac4dual):
    r = build_r(ac4dual, "ac4dual")
    printed = pe(
        ac4dual,
        "1/2*((1 (x) 1) + (g^2 (x) 1) + (1 (x) g^2) - (g^2 (x) g^2))"
        " - (x (x) x) - (x (x) g^2*x) + (g^2*x (x) x) - (g^2*x (x) g^2*x)",
    )
    assert r == printed
    assert verify_qtr(ac4dual, r).ok


def test_r_inverse_examples(en2, h8):
    one2 = en2.unit_tensor(2)
    assert r_inverse(en2, one2) == one2
    r = build_r(h8, "h8omega:z8")
    rinv = r_inverse(h8, r)
    assert rinv == apply_antipode_leg(r, 0)
    with pytest.raises(NotInvertible):
        r_inverse(en2, en2.gen("x1").tensor(en2.gen("x1")))


def test_conjugation_identities(h8):
    for k in (1, 3, 5, 7):
        omega = h8.field.make_root(8) ** k
        rep = conjugation_identities_h8(h8, omega)
        assert rep.ok, rep.summary()


def test_rswap_identities(en1, en2):
    assert rswap_identities_en(en1, build_r(en1, "en-a:[[5]]")).ok
    r = build_r(en2, "en-a:[[1,2],[3,5]]")
    assert rswap_identities_en(en2, r).ok
    # consequence: R chi = -(g (x) g) chi R for chi = g x1 (x) x2
    chi = pe(en2, "g^1*x{1} (x) x{2}")
    gg = pe(en2, "g (x) g")
    assert r * chi == -(gg * chi * r)


def test_rswap_rejects_other_families(h8):
    with pytest.raises(FamilyMismatch):
        rswap_identities_en(h8, h8.unit_tensor(2))


def test_enumeration_h8_matches_pm_family(h8):
    survivors = enumerate_group_rmatrices(h8)
    assert len(survivors) == 4
    pm = [build_r_h8_pm(h8, a, b) for a in (1, -1) for b in (1, -1)]
    for r in survivors:
        assert any(r == p for p in pm)
    for p in pm:
        assert any(r == p for r in survivors)


def test_enumeration_h2n2_3(h2n2_3):
    survivors = enumerate_group_rmatrices(h2n2_3)
    assert survivors, "expected at least one group-supported structure"
    for r in survivors:
        assert verify_qtr(h2n2_3, r).ok


def test_enumeration_candidate_count():
    # n^4 candidate matrices before filtering
    n = 2
    count = sum(1 for a in range(n) for b in range(n) for c in range(n) for d in range(n))
    assert count == n**4


def test_family_mismatch(en2, h8):
    with pytest.raises(FamilyMismatch):
        build_r(h8, "en-a:[[0]]")
    with pytest.raises(FamilyMismatch):
        build_r(en2, "ac4dual")
