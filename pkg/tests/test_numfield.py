from fractions import Fraction

import pytest

from almin import polys
from almin.numfield import (
    InvalidCertificate,
    NotSquarefree,
    QuadraticField,
    SameField,
    SubfieldCert,
    compositum_quadratic,
    field_cert,
    is_square_in_quadfield,
    quadratic_field_cert,
    quadratic_subfields_of_quartic,
    sturm_signature,
    verify_subfield,
)


def test_quadratic_field_validation():
    QuadraticField(2)
    QuadraticField(-1)
    with pytest.raises(InvalidCertificate):
        QuadraticField(4)
    with pytest.raises(InvalidCertificate):
        QuadraticField(1)


def test_quad_element_arithmetic():
    F = QuadraticField(2)
    x = F.element(1, 1)  # 1 + sqrt(2)
    assert (x * x) == F.element(3, 2)
    assert (x * x.conj()) == F.element(-1)
    inv = x.inverse()
    assert x * inv == F.element(1)


def test_is_square_in_quadfield():
    F = QuadraticField(2)
    # 3 + 2*sqrt(2) = (1 + sqrt(2))^2
    assert is_square_in_quadfield(F.element(3, 2))
    assert is_square_in_quadfield(F.element(2, 0))  # 2 = (sqrt 2)^2
    assert not is_square_in_quadfield(F.element(3, 0))
    G = QuadraticField(-1)
    assert is_square_in_quadfield(G.element(0, 2))  # 2i = (1+i)^2
    assert not is_square_in_quadfield(G.element(3, 0))


def test_signatures():
    assert sturm_signature(polys.poly([-2, 0, 1])) == (2, 0)
    assert sturm_signature(polys.poly([1, 0, 1])) == (0, 1)
    assert sturm_signature(polys.poly([-2, 0, 0, 1])) == (1, 1)
    assert sturm_signature(polys.poly([-2, 0, 0, 0, 1])) == (2, 1)
    assert sturm_signature(polys.poly([2, 0, -2, 0, 1])) == (0, 2)


def test_field_cert_prime_degree_complete():
    c = field_cert([-2, 0, 0, 1])
    assert c.degree == 3 and c.subfields == () and c.subfields_complete


def test_quartic_subfields():
    subs = quadratic_subfields_of_quartic(polys.poly([1, 0, 0, 0, 1]))
    assert set(subs) == {-1, 2, -2}  # the eighth-cyclotomic field
    subs2 = quadratic_subfields_of_quartic(polys.poly([2, 0, -2, 0, 1]))
    assert set(subs2) == {-1}
    subs3 = quadratic_subfields_of_quartic(polys.poly([-2, 0, 0, 0, 1]))
    assert set(subs3) == {2}


def test_quartic_subfield_certs_verify():
    f = field_cert([1, 0, 0, 0, 1])
    assert len(f.subfields) == 3 and f.subfields_complete
    for cert in f.subfields:
        assert verify_subfield(f, cert)


def test_verify_subfield_rejects_garbage():
    f = field_cert([-2, 0, 0, 0, 1])
    good = f.subfields[0]
    bad = SubfieldCert(good.sub_poly, polys.poly([1, 1]))
    assert not verify_subfield(f, bad)
    # wrong polynomial entirely
    bad2 = SubfieldCert(polys.poly([-3, 0, 1]), good.embedding)
    assert not verify_subfield(f, bad2)
    # non-proper degrees are rejected
    bad3 = SubfieldCert(polys.poly([1, 1]), polys.poly([1]))
    assert not verify_subfield(f, bad3)


def test_compositum_quadratic():
    K = compositum_quadratic(QuadraticField(2), QuadraticField(-1))
    assert K.degree == 4
    ds = set()
    for cert in K.subfields:
        assert verify_subfield(K, cert)
        ds.add(int(-cert.sub_poly[0]))
    assert {2, -1, -2} <= ds
    with pytest.raises(SameField):
        compositum_quadratic(QuadraticField(2), QuadraticField(2))


def test_quadratic_field_cert():
    c = quadratic_field_cert(5)
    assert c.defining_poly == polys.poly([-5, 0, 1])
    assert c.signature == (2, 0)
    assert quadratic_field_cert(-5).signature == (0, 1)


def test_cert_validation():
    with pytest.raises(InvalidCertificate):
        field_cert([-4, 0, 1])  # reducible
    with pytest.raises(NotSquarefree):
        sturm_signature(polys.poly([1, 2, 1]))
