import dataclasses
from fractions import Fraction

import pytest

from almin.algebra import HermForm, QuatForm, QuatSecondKindForm, QuaternionAlgebra
from almin.minimal import (
    BlockEmbedding,
    CompositumTower,
    Minimal,
    NotApplicable,
    NotMinimal,
    PureQuaternionTower,
    SplitSO5,
    SubfieldElement,
    SubfieldRestriction,
    SubformIndices,
    UnsupportedVerdict,
    analyze,
    verify_witness,
)
from almin.numfield import QuadraticField, field_cert, quadratic_field_cert
from almin.quadform import QuadForm
from almin.qgroup import (
    Orthogonal,
    ResSL2,
    ResSU3,
    SpecialLinear,
    Symplectic,
    Unitary1,
    Unitary2,
    Unitary2Quat,
)


def _assert_verified(g, verdict):
    assert isinstance(verdict, NotMinimal), verdict
    report = verify_witness(g, verdict.witness)
    assert report.ok, [c for c in report.checks if not c.passed]
    return verdict.witness


# ---------------------------------------------------------------------------
# The four minimal shapes


def test_sl3_is_minimal():
    v = analyze(SpecialLinear(3))
    assert isinstance(v, Minimal) and v.matched_case == "i"
    assert v.conditions == ()


def test_isotropic_ternary_unitary_is_minimal():
    L = QuadraticField(2)
    v = analyze(Unitary2(HermForm.diagonal(L, [1, -1, -1])))
    assert isinstance(v, Minimal) and v.matched_case == "ii"


def test_res_su3_minimal_case():
    k = QuadraticField(-1)
    l4 = field_cert([2, 0, -2, 0, 1])  # x^4 - 2x^2 + 2: no real quadratic subfield
    v = analyze(ResSU3(k, l4))
    assert isinstance(v, Minimal) and v.matched_case == "iii"


def test_res_sl2_minimal_cases():
    v = analyze(ResSL2(quadratic_field_cert(2)))
    assert isinstance(v, Minimal) and v.matched_case == "iv"
    # quartic with only imaginary quadratic subfields
    v2 = analyze(ResSL2(field_cert([2, 0, -2, 0, 1])))
    assert isinstance(v2, Minimal) and v2.matched_case == "iv"


def test_so4_nonsquare_disc_converts_to_minimal_res_sl2():
    v = analyze(Orthogonal(QuadForm.diagonal([1, -1, -1, 2])))
    assert isinstance(v, Minimal) and v.matched_case == "iv"


# ---------------------------------------------------------------------------
# Non-minimal inputs with verified witnesses


def test_sl4_descends_by_block():
    v = analyze(SpecialLinear(4))
    w = _assert_verified(SpecialLinear(4), v)
    assert isinstance(w.embedding, BlockEmbedding)
    assert w.subgroup == SpecialLinear(3)


def test_sl2_division_algebra_descends_to_subfield():
    g = SpecialLinear(2, QuaternionAlgebra(2, 3))
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.embedding, SubfieldElement)
    assert isinstance(w.subgroup, ResSL2)


def test_symplectic_descends_to_split_so5():
    g = Symplectic(2)
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.embedding, SplitSO5)
    g3 = Symplectic(3)
    _assert_verified(g3, analyze(g3))


def test_orthogonal_descends_by_subform():
    g = Orthogonal(QuadForm.diagonal([1, -1, -1, 3, 5]))
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.embedding, SubformIndices)
    assert isinstance(w.subgroup, ResSL2)


def test_hermitian_unitary_descends():
    L = QuadraticField(2)
    g = Unitary2(HermForm.diagonal(L, [1, -1, -1, 3]))
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.embedding, SubformIndices)


def test_quaternion_hermitian_b2_descends():
    d = QuaternionAlgebra(-1, -1)
    g = Unitary1(
        QuatForm(d, "hermitian", (d.element(1), d.element(1)), hyperbolic_count=1)
    )
    # real rank of this group is 1: not applicable, so enlarge
    g2 = Unitary1(
        QuatForm(d, "hermitian", (d.element(1), d.element(1)), hyperbolic_count=2)
    )
    _assert_verified(g2, analyze(g2))


def test_skew_unitary_tower():
    d = QuaternionAlgebra(-1, -1)
    g = Unitary1(
        QuatForm(d, "skew_hermitian", (d.gen_i(), d.gen_j()), hyperbolic_count=1),
        assume_tail_anisotropic=True,
    )
    v = analyze(g)
    w = _assert_verified(g, v)
    assert isinstance(w.embedding, PureQuaternionTower)
    assert "conditional_on_assumed_tail_anisotropy" not in ()


def test_second_kind_rank2_descends_to_res_sl2():
    L = QuadraticField(17)
    d = QuaternionAlgebra(2, 3)
    g = Unitary2Quat(
        QuatSecondKindForm(L, d, d.one(), (), hyperbolic_count=1)
    )
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.embedding, CompositumTower)
    assert isinstance(w.subgroup, ResSL2)


def test_second_kind_rank3_descends_to_res_su3():
    L = QuadraticField(17)
    d = QuaternionAlgebra(2, 3)
    g = Unitary2Quat(
        QuatSecondKindForm(L, d, d.one(), (d.element(1),), hyperbolic_count=1)
    )
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.subgroup, ResSU3)


def test_res_sl2_with_real_quadratic_subfield_descends():
    v = analyze(ResSL2(field_cert([-2, 0, 0, 0, 1])))  # x^4 - 2 contains Q(sqrt2)
    w = _assert_verified(ResSL2(field_cert([-2, 0, 0, 0, 1])), v)
    assert isinstance(w.embedding, SubfieldRestriction)


def test_res_sl2_cubic_is_minimal():
    # x^3 - 2: the only proper subfield is Q, and the field has two
    # archimedean places, so the restriction of scalars is itself minimal
    cert = field_cert([-2, 0, 0, 1])
    v = analyze(ResSL2(cert))
    assert isinstance(v, Minimal) and v.matched_case == "iv"


def test_res_su3_with_real_quadratic_subfield_descends():
    k = QuadraticField(-1)
    l4 = field_cert([1, 0, 0, 0, 1])  # x^4 + 1 contains Q(sqrt 2)
    g = ResSU3(k, l4)
    w = _assert_verified(g, analyze(g))
    assert isinstance(w.embedding, SubfieldRestriction)


# ---------------------------------------------------------------------------
# Not-applicable and unsupported inputs


def test_low_rank_and_anisotropic_not_applicable():
    v = analyze(SpecialLinear(2))
    assert isinstance(v, NotApplicable) and "real_rank = 1" in v.reason
    v2 = analyze(Orthogonal(QuadForm.diagonal([1, 2, 3, 5, 7])))
    assert isinstance(v2, NotApplicable)
    v3 = analyze(ResSL2(quadratic_field_cert(-1)))
    assert isinstance(v3, NotApplicable)


def test_square_discriminant_so4_not_applicable():
    v = analyze(Orthogonal(QuadForm.diagonal([1, -1, 1, -1])))
    assert isinstance(v, NotApplicable)
    assert "not almost simple" in v.reason


def test_anisotropic_so4_unsupported():
    v = analyze(Orthogonal(QuadForm.diagonal([1, 1, 1, 2])))
    assert isinstance(v, UnsupportedVerdict)


def test_conditional_verdicts_are_flagged():
    d = QuaternionAlgebra(-1, -1)
    g = Unitary1(
        QuatForm(d, "skew_hermitian", (d.gen_i(), d.gen_j()), hyperbolic_count=1),
        assume_tail_anisotropic=True,
    )
    v = analyze(g)
    assert isinstance(v, NotMinimal)
    # uncertified subfield list yields a conditional minimality claim
    from almin.numfield import NumberFieldCert
    from almin import polys

    cert = NumberFieldCert(
        polys.poly([-2, 0, 0, 0, 1]), 4, (2, 1), (), subfields_complete=False
    )
    v2 = analyze(ResSL2(cert))
    assert isinstance(v2, Minimal)
    assert "conditional_on_certified_subfield_list" in v2.conditions


# ---------------------------------------------------------------------------
# Fault injection: corrupted witnesses must be rejected with the exact reason


def test_square_a_fault_rejected():
    g = Symplectic(2)
    v = analyze(g)
    assert isinstance(v, NotMinimal)
    emb = v.witness.embedding
    assert isinstance(emb, SplitSO5)
    bad_emb = dataclasses.replace(
        emb,
        a_value=Fraction(4),
        form_coeffs=emb.form_coeffs[:4] + (Fraction(4),),
    )
    bad = dataclasses.replace(v.witness, embedding=bad_emb)
    report = verify_witness(g, bad)
    assert not report.ok
    msgs = [c.detail for c in report.failures] + [c.name for c in report.failures]
    assert any(
        "a is a rational square => subgroup not almost simple" in m for m in msgs
    )


def test_quaternary_square_a_fault_rejected():
    g = Orthogonal(QuadForm.diagonal([1, -1, -1, 3, 5]))
    v = analyze(g)
    emb = v.witness.embedding
    # scale the represented value by a square-killing corruption: claim a = 9
    bad_emb = dataclasses.replace(emb, a_value=Fraction(9))
    bad = dataclasses.replace(v.witness, embedding=bad_emb)
    report = verify_witness(g, bad)
    assert not report.ok


def test_imaginary_field_fault_rejected():
    # a witness claiming descent to an imaginary quadratic SL2 restriction
    # must be rejected: such restrictions have real rank 1
    cert = field_cert([-2, 0, 0, 0, 1])  # x^4 - 2
    g = ResSL2(cert)
    v = analyze(g)
    w = v.witness
    bad_sub = ResSL2(quadratic_field_cert(-1))
    bad = dataclasses.replace(w, subgroup=bad_sub)
    report = verify_witness(g, bad)
    assert not report.ok
    assert any("real_rank = 1" in c.detail for c in report.failures)


def test_wrong_subgroup_shape_rejected():
    g = SpecialLinear(4)
    v = analyze(g)
    bad = dataclasses.replace(v.witness, subgroup=SpecialLinear(2))
    report = verify_witness(g, bad)
    assert not report.ok
